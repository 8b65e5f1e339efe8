//! Braid words over the Artin generators `σ_1 .. σ_{n-1}`.
//!
//! Words are read left to right: the first letter acts first. Two equality
//! procedures are provided and are kept independent of each other:
//! [`equal`] compares Garside normal forms, [`equal_oracle`] compares the
//! induced automorphisms of the free group.

mod free_group;
mod garside;
mod perm;

use std::fmt;

pub use free_group::{artin_action, equal_oracle, FreeLetter, FreeWord};
pub use garside::{canonical_key, equal, normal_form, NormalForm};
pub use perm::Permutation;

use crate::error::{Error, Result};

/// Number of strands (punctures). Always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StrandCount(u16);

impl StrandCount {
    pub fn new(n: u64) -> Result<Self> {
        if (2..=u16::MAX as u64).contains(&n) {
            Ok(StrandCount(n as u16))
        } else {
            Err(Error::InvalidStrands(n))
        }
    }

    pub fn get(self) -> u16 {
        self.0
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for StrandCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// `σ_index` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArtinLetter {
    pub index: u16,
    pub sign: Sign,
}

impl ArtinLetter {
    pub fn pos(index: u16) -> Self {
        ArtinLetter {
            index,
            sign: Sign::Pos,
        }
    }

    pub fn neg(index: u16) -> Self {
        ArtinLetter {
            index,
            sign: Sign::Neg,
        }
    }

    pub fn inverse(self) -> Self {
        ArtinLetter {
            index: self.index,
            sign: self.sign.flip(),
        }
    }

    pub fn to_int(self) -> i32 {
        self.index as i32 * self.sign.value() as i32
    }

    fn cancels(self, other: ArtinLetter) -> bool {
        self.index == other.index && self.sign != other.sign
    }
}

/// A word in the Artin generators of `B_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidWord {
    strands: StrandCount,
    letters: Vec<ArtinLetter>,
}

impl BraidWord {
    pub fn identity(strands: StrandCount) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn new(strands: StrandCount, letters: Vec<ArtinLetter>) -> Result<Self> {
        for l in &letters {
            if l.index == 0 || l.index >= strands.get() {
                return Err(Error::LetterOutOfRange {
                    index: l.index,
                    strands: strands.get(),
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// From signed integers: `k` is `σ_k`, `-k` is `σ_k⁻¹`.
    pub fn from_ints(strands: StrandCount, ints: &[i32]) -> Result<Self> {
        let letters = ints
            .iter()
            .map(|&k| match k {
                0 => Err(Error::Parse {
                    token: "0".into(),
                    reason: "zero is not a generator".into(),
                }),
                k if k > 0 => Ok(ArtinLetter::pos(k.min(u16::MAX as i32) as u16)),
                k => Ok(ArtinLetter::neg((-k).min(u16::MAX as i32) as u16)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    /// `σ_i` as a one-letter word.
    pub fn generator(strands: StrandCount, i: u16) -> Result<Self> {
        Self::new(strands, vec![ArtinLetter::pos(i)])
    }

    pub(crate) fn from_letters_unchecked(strands: StrandCount, letters: Vec<ArtinLetter>) -> Self {
        BraidWord { strands, letters }
    }

    pub fn strands(&self) -> StrandCount {
        self.strands
    }

    pub fn letters(&self) -> &[ArtinLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_ints(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.to_int()).collect()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.sign == Sign::Pos)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn freely_reduced(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: reduce(self.letters.iter().copied()),
        }
    }

    /// The word repeated `times` times, unreduced.
    pub fn power(&self, times: usize) -> BraidWord {
        let mut letters = Vec::with_capacity(self.len() * times);
        for _ in 0..times {
            letters.extend_from_slice(&self.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.value()).sum()
    }

    /// Image of the word in the symmetric group.
    pub fn underlying_permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands.as_usize());
        for l in &self.letters {
            // right-multiplying by a transposition of positions swaps values
            let i = l.index - 1;
            for img in p.images_mut() {
                if *img == i {
                    *img = i + 1;
                } else if *img == i + 1 {
                    *img = i;
                }
            }
        }
        p
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.to_int())?;
        }
        Ok(())
    }
}

fn reduce(letters: impl IntoIterator<Item = ArtinLetter>) -> Vec<ArtinLetter> {
    let mut out: Vec<ArtinLetter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

fn same_strands(u: &BraidWord, v: &BraidWord) -> Result<()> {
    if u.strands != v.strands {
        return Err(Error::StrandMismatch {
            left: u.strands.get(),
            right: v.strands.get(),
        });
    }
    Ok(())
}

/// Parses whitespace-separated nonzero integers; `k` is `σ_k`, `-k` is `σ_k⁻¹`.
pub fn parse_braid(text: &str, strands: StrandCount) -> Result<BraidWord> {
    let n = strands.get() as i64;
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let k: i64 = token.parse().map_err(|_| Error::Parse {
            token: token.to_string(),
            reason: "not an integer".into(),
        })?;
        if k == 0 {
            return Err(Error::Parse {
                token: token.to_string(),
                reason: "zero is not a generator".into(),
            });
        }
        if k.abs() >= n {
            return Err(Error::Parse {
                token: token.to_string(),
                reason: format!("index out of range for {n} strands"),
            });
        }
        letters.push(if k > 0 {
            ArtinLetter::pos(k as u16)
        } else {
            ArtinLetter::neg((-k) as u16)
        });
    }
    Ok(BraidWord { strands, letters })
}

/// Group product `u · v`, freely reduced.
pub fn compose(u: &BraidWord, v: &BraidWord) -> Result<BraidWord> {
    same_strands(u, v)?;
    Ok(BraidWord {
        strands: u.strands,
        letters: reduce(u.letters.iter().chain(v.letters.iter()).copied()),
    })
}

/// Product of a sequence of words sharing a strand count, freely reduced.
pub fn product<'a>(
    strands: StrandCount,
    words: impl IntoIterator<Item = &'a BraidWord>,
) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for w in words {
        if w.strands != strands {
            return Err(Error::StrandMismatch {
                left: strands.get(),
                right: w.strands.get(),
            });
        }
        letters.extend_from_slice(&w.letters);
    }
    Ok(BraidWord {
        strands,
        letters: reduce(letters),
    })
}

pub fn inverse(u: &BraidWord) -> BraidWord {
    BraidWord {
        strands: u.strands,
        letters: reduce(u.letters.iter().rev().map(|l| l.inverse())),
    }
}

/// `x[g] = g⁻¹ · x · g`, freely reduced.
///
/// With this direction a Hurwitz move `R_1` sends `(t_1, t_2)` to
/// `(t_2[t_1⁻¹], t_1)`.
pub fn conjugate(x: &BraidWord, g: &BraidWord) -> Result<BraidWord> {
    same_strands(x, g)?;
    let letters = g
        .letters
        .iter()
        .rev()
        .map(|l| l.inverse())
        .chain(x.letters.iter().copied())
        .chain(g.letters.iter().copied());
    Ok(BraidWord {
        strands: x.strands,
        letters: reduce(letters),
    })
}

/// The positive half twist `(σ1)(σ2σ1)⋯(σ_{n−1}⋯σ1)`.
pub fn delta_word(strands: StrandCount) -> BraidWord {
    let n = strands.get();
    let mut letters = Vec::new();
    for top in 1..n {
        letters.extend((1..=top).rev().map(ArtinLetter::pos));
    }
    BraidWord { strands, letters }
}

pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.exponent_sum()
}

pub fn underlying_permutation(w: &BraidWord) -> Permutation {
    w.underlying_permutation()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(k: u64) -> StrandCount {
        StrandCount::new(k).unwrap()
    }

    fn w(k: u64, ints: &[i32]) -> BraidWord {
        BraidWord::from_ints(n(k), ints).unwrap()
    }

    #[test]
    fn strand_count_bounds() {
        assert!(StrandCount::new(1).is_err());
        assert!(StrandCount::new(0).is_err());
        assert_eq!(StrandCount::new(2).unwrap().get(), 2);
    }

    #[test]
    fn parse_examples() {
        let word = parse_braid("1 2 -1", n(3)).unwrap();
        assert_eq!(
            word.letters(),
            &[
                ArtinLetter::pos(1),
                ArtinLetter::pos(2),
                ArtinLetter::neg(1)
            ]
        );
        assert!(parse_braid("", n(2)).unwrap().is_empty());
        assert!(parse_braid("  \n\t ", n(2)).unwrap().is_empty());
    }

    #[test]
    fn parse_errors_name_token() {
        match parse_braid("1 3", n(3)) {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "3"),
            other => panic!("{other:?}"),
        }
        match parse_braid("1 0", n(3)) {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "0"),
            other => panic!("{other:?}"),
        }
        match parse_braid("1 x2", n(3)) {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "x2"),
            other => panic!("{other:?}"),
        }
        assert!(parse_braid("-3", n(3)).is_err());
    }

    #[test]
    fn parse_does_not_reduce() {
        assert_eq!(parse_braid("1 -1", n(2)).unwrap().len(), 2);
    }

    #[test]
    fn compose_examples() {
        assert!(compose(&w(3, &[1]), &w(3, &[-1])).unwrap().is_empty());
        assert_eq!(
            compose(&w(3, &[1]), &w(3, &[2])).unwrap().to_ints(),
            vec![1, 2]
        );
        assert!(compose(&w(3, &[1, 2]), &w(3, &[-2, -1]))
            .unwrap()
            .is_empty());
        assert!(matches!(
            compose(&w(3, &[1]), &w(4, &[1])),
            Err(Error::StrandMismatch { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&w(3, &[1, 2])).to_ints(), vec![-2, -1]);
        assert!(inverse(&w(3, &[])).is_empty());
        assert_eq!(inverse(&w(3, &[-1])).to_ints(), vec![1]);
    }

    #[test]
    fn conjugate_direction() {
        let c = conjugate(&w(3, &[2]), &w(3, &[1])).unwrap();
        assert_eq!(c.to_ints(), vec![-1, 2, 1]);
        let x = w(4, &[1, -3, 2]);
        assert_eq!(conjugate(&x, &BraidWord::identity(n(4))).unwrap(), x);
    }

    #[test]
    fn delta_words() {
        assert_eq!(delta_word(n(2)).to_ints(), vec![1]);
        assert_eq!(delta_word(n(3)).to_ints(), vec![1, 2, 1]);
        assert_eq!(delta_word(n(4)).to_ints(), vec![1, 2, 1, 3, 2, 1]);
    }

    #[test]
    fn permutation_and_exponent() {
        assert_eq!(exponent_sum(&w(3, &[])), 0);
        assert_eq!(exponent_sum(&w(3, &[1, -2, 2, 2])), 2);
        let p = underlying_permutation(&w(3, &[1]));
        assert_eq!(p.one_line(), vec![2, 1, 3]);
        assert!(p.is_transposition());
        // σ1σ2 and σ2σ1 have different images
        assert_ne!(
            underlying_permutation(&w(3, &[1, 2])),
            underlying_permutation(&w(3, &[2, 1]))
        );
        // the half twist reverses the strands
        assert_eq!(
            underlying_permutation(&delta_word(n(5))),
            Permutation::reversal(5)
        );
    }

    #[test]
    fn display_roundtrip() {
        let word = w(5, &[1, -4, 3]);
        assert_eq!(word.to_string(), "1 -4 3");
        assert_eq!(parse_braid(&word.to_string(), n(5)).unwrap(), word);
    }
}
