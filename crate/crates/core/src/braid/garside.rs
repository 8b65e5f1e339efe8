//! Left-greedy Garside normal form `Δ^p · A_1 ⋯ A_k` over permutation braids.
//!
//! A positive permutation braid ("simple element") is stored as its
//! [`Permutation`]. For a simple `A` with permutation `p`:
//!
//! * `σ_i` is a prefix of `A` iff `p[i-1] > p[i]` (starting set);
//! * `σ_i` is a suffix of `A` iff `p⁻¹[i-1] > p⁻¹[i]` (finishing set).
//!
//! A pair `(A, B)` is left-weighted iff the starting set of `B` is contained
//! in the finishing set of `A`.

use std::fmt::Write as _;

use super::{same_strands, ArtinLetter, BraidWord, Permutation, Sign, StrandCount};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    strands: StrandCount,
    delta_power: i64,
    factors: Vec<Permutation>,
}

impl NormalForm {
    pub fn strands(&self) -> StrandCount {
        self.strands
    }

    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    /// Number of non-Δ simple factors.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// Checks the defining invariants: no trivial or Δ factor, every adjacent
    /// pair left-weighted.
    pub fn is_well_formed(&self) -> bool {
        let n = self.strands.as_usize();
        let delta = Permutation::reversal(n);
        self.factors
            .iter()
            .all(|f| f.len() == n && !f.is_identity() && *f != delta)
            && self
                .factors
                .windows(2)
                .all(|pair| is_left_weighted(&pair[0], &pair[1]))
    }

    /// A word representing this braid: `Δ^p` followed by each factor written
    /// as a positive word. Freely reduced.
    pub fn to_word(&self) -> BraidWord {
        let n = self.strands;
        let delta = super::delta_word(n);
        let mut letters = Vec::new();
        if self.delta_power >= 0 {
            for _ in 0..self.delta_power {
                letters.extend_from_slice(delta.letters());
            }
        } else {
            let inv = super::inverse(&delta);
            for _ in 0..(-self.delta_power) {
                letters.extend_from_slice(inv.letters());
            }
        }
        for f in &self.factors {
            letters.extend(simple_letters(f));
        }
        BraidWord::from_letters_unchecked(n, letters).freely_reduced()
    }

    /// Stable text key: strand count, signed Δ-power, then each factor in
    /// 1-based one-line notation with fixed-width entries.
    pub fn key(&self) -> String {
        let n = self.strands.as_usize();
        let width = n.to_string().len();
        let mut key = format!("{}:{:+}", n, self.delta_power);
        for f in &self.factors {
            key.push('|');
            for img in f.one_line() {
                let _ = write!(key, "{img:0width$}");
            }
        }
        key
    }
}

fn in_starting_set(p: &Permutation, i: usize) -> bool {
    p.image(i) > p.image(i + 1)
}

fn is_left_weighted(a: &Permutation, b: &Permutation) -> bool {
    let qa = a.inverse();
    (0..a.len() - 1).all(|i| !in_starting_set(b, i) || qa.image(i) > qa.image(i + 1))
}

/// Moves letters from the front of `b` to the back of `a` until the pair is
/// left-weighted. Returns whether anything moved.
fn make_left_weighted(a: &mut Permutation, b: &mut Permutation) -> bool {
    let n = a.len();
    let mut qa = a.inverse();
    let mut changed = false;
    loop {
        let found =
            (0..n - 1).find(|&i| b.image(i) > b.image(i + 1) && qa.image(i) < qa.image(i + 1));
        let Some(i) = found else { break };
        // a ← a·σ: swap the values i, i+1 of a
        let (pi, pj) = (qa.image(i), qa.image(i + 1));
        a.images_mut()[pi] = (i + 1) as u16;
        a.images_mut()[pj] = i as u16;
        qa.images_mut().swap(i, i + 1);
        // b ← σ⁻¹·b: swap the entries i, i+1 of b
        b.images_mut().swap(i, i + 1);
        changed = true;
    }
    changed
}

/// `Δ A Δ⁻¹` for a simple `A`.
fn flip(p: &Permutation) -> Permutation {
    let n = p.len();
    let images = (0..n)
        .map(|k| (n - 1 - p.image(n - 1 - k)) as u16)
        .collect();
    Permutation::from_images(images).expect("conjugate of a permutation")
}

/// The simple element `Δ·σ_i⁻¹`.
fn delta_times_inverse(n: usize, i: u16) -> Permutation {
    Permutation::reversal(n).then(&Permutation::adjacent(n, i))
}

/// A positive word for a simple element, reading off starting-set letters.
fn simple_letters(p: &Permutation) -> Vec<ArtinLetter> {
    let mut p = p.clone();
    let mut letters = Vec::new();
    while let Some(i) = (0..p.len() - 1).find(|&i| in_starting_set(&p, i)) {
        letters.push(ArtinLetter::pos(i as u16 + 1));
        p.images_mut().swap(i, i + 1);
    }
    letters
}

fn push_simple(factors: &mut Vec<Permutation>, x: Permutation) {
    factors.push(x);
    let mut i = factors.len() - 1;
    while i > 0 {
        let (left, right) = factors.split_at_mut(i);
        if !make_left_weighted(&mut left[i - 1], &mut right[0]) {
            break;
        }
        i -= 1;
    }
}

pub fn normal_form(w: &BraidWord) -> NormalForm {
    let n = w.strands().as_usize();
    // σ_i⁻¹ = Δ⁻¹ · (Δσ_i⁻¹). Sliding every Δ⁻¹ to the front flips each
    // simple once per Δ⁻¹ it crosses.
    let mut simples = Vec::with_capacity(w.len());
    let mut negatives_after = 0usize;
    for l in w.letters().iter().rev() {
        let s = match l.sign {
            Sign::Pos => Permutation::adjacent(n, l.index),
            Sign::Neg => delta_times_inverse(n, l.index),
        };
        simples.push(if negatives_after % 2 == 1 {
            flip(&s)
        } else {
            s
        });
        if l.sign == Sign::Neg {
            negatives_after += 1;
        }
    }
    simples.reverse();

    let mut factors: Vec<Permutation> = Vec::with_capacity(simples.len());
    for s in simples {
        push_simple(&mut factors, s);
    }
    // the single sweeps above already give a left-weighted sequence; settle
    // anything left over so the result never depends on that argument
    loop {
        let mut changed = false;
        for i in 1..factors.len() {
            let (left, right) = factors.split_at_mut(i);
            changed |= make_left_weighted(&mut left[i - 1], &mut right[0]);
        }
        if !changed {
            break;
        }
    }

    let delta = Permutation::reversal(n);
    let leading = factors.iter().take_while(|f| **f == delta).count();
    factors.drain(..leading);
    let trivial_from = factors
        .iter()
        .position(|f| f.is_identity())
        .unwrap_or(factors.len());
    factors.truncate(trivial_from);

    NormalForm {
        strands: w.strands(),
        delta_power: leading as i64 - negatives_after as i64,
        factors,
    }
}

/// Braid equality by normal-form identity.
pub fn equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    same_strands(u, v)?;
    Ok(normal_form(u) == normal_form(v))
}

pub fn canonical_key(w: &BraidWord) -> String {
    normal_form(w).key()
}
