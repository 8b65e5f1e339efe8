//! The Artin action of `B_n` on the free group `F_n = <x_1, …, x_n>`.
//!
//! `σ_i` acts by `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i`, fixing the other
//! generators; `σ_i⁻¹` acts by the inverse substitution. A word acts letter by
//! letter from the left, so for words `u`, `v` the action of `u·v` is "first
//! `u`, then `v`": the images under `u·v` are the images under `u` with every
//! `x_m` replaced by its image under `v`.

use std::fmt;

use super::{same_strands, BraidWord, Sign};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeLetter {
    /// 1-based generator index.
    pub generator: u16,
    pub sign: Sign,
}

impl FreeLetter {
    fn inverse(self) -> Self {
        FreeLetter {
            generator: self.generator,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: FreeLetter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

/// A freely reduced word in the free group.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord(Vec<FreeLetter>);

impl FreeWord {
    pub fn generator(i: u16) -> Self {
        FreeWord(vec![FreeLetter {
            generator: i,
            sign: Sign::Pos,
        }])
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, l: FreeLetter) {
        match self.0.last() {
            Some(&top) if top.cancels(l) => {
                self.0.pop();
            }
            _ => self.0.push(l),
        }
    }

    fn extend(&mut self, other: &FreeWord) {
        for &l in &other.0 {
            self.push(l);
        }
    }

    fn extend_inverse(&mut self, other: &FreeWord) {
        for &l in other.0.iter().rev() {
            self.push(l.inverse());
        }
    }

    pub fn inverse(&self) -> FreeWord {
        let mut out = FreeWord::default();
        out.extend_inverse(self);
        out
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    /// Replaces every `x_m` by `images[m - 1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut out = FreeWord::default();
        for l in &self.0 {
            let img = &images[l.generator as usize - 1];
            match l.sign {
                Sign::Pos => out.extend(img),
                Sign::Neg => out.extend_inverse(img),
            }
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            match l.sign {
                Sign::Pos => write!(f, "x{}", l.generator)?,
                Sign::Neg => write!(f, "x{}^-1", l.generator)?,
            }
        }
        Ok(())
    }
}

/// Images of `x_1 … x_n` under the automorphism induced by `w`.
pub fn artin_action(w: &BraidWord) -> Vec<FreeWord> {
    let n = w.strands().as_usize();
    let mut images: Vec<FreeWord> = (1..=n as u16).map(FreeWord::generator).collect();
    // The total automorphism is φ_{l_k} ∘ … ∘ φ_{l_1}. Precomposing the
    // running table with one letter at a time, last letter first, only
    // touches two entries per step.
    for l in w.letters().iter().rev() {
        let i = l.index as usize - 1;
        let (a, b) = (images[i].clone(), images[i + 1].clone());
        match l.sign {
            Sign::Pos => {
                let mut conj = a.clone();
                conj.extend(&b);
                conj.extend_inverse(&a);
                images[i] = conj;
                images[i + 1] = a;
            }
            Sign::Neg => {
                let mut conj = b.inverse();
                conj.extend(&a);
                conj.extend(&b);
                images[i] = b;
                images[i + 1] = conj;
            }
        }
    }
    images
}

/// Braid equality decided by comparing free-group automorphisms.
pub fn equal_oracle(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    same_strands(u, v)?;
    Ok(artin_action(u) == artin_action(v))
}
