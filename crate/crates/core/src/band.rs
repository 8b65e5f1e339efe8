//! Band generators `a_{t,s}` (`1 <= s < t <= n`) and the full-twist
//! factorizations built from them.
//!
//! `a_{t,s} = (σ_{t−1} ⋯ σ_{s+1}) σ_s (σ_{s+1}⁻¹ ⋯ σ_{t−1}⁻¹)`, so
//! `a_{t+1,t} = σ_t`. The relations are
//!
//! 1. `a_{t,s} a_{s,r} = a_{t,r} a_{t,s} = a_{s,r} a_{t,r}` for `r < s < t`;
//! 2. `a_{t,s} a_{r,q} = a_{r,q} a_{t,s}` if `(t−r)(t−q)(s−r)(s−q) > 0`.

use std::fmt;

use serde::Serialize;

use crate::braid::{conjugate, equal, product, ArtinLetter, BraidWord, StrandCount};
use crate::error::{Error, Result};
use crate::factorization::Factorization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BandGenerator {
    t: u16,
    s: u16,
    strands: StrandCount,
}

impl BandGenerator {
    pub fn new(t: u16, s: u16, strands: StrandCount) -> Result<Self> {
        if 1 <= s && s < t && t <= strands.get() {
            Ok(BandGenerator { t, s, strands })
        } else {
            Err(Error::InvalidBandGenerator {
                t,
                s,
                strands: strands.get(),
            })
        }
    }

    pub fn t(self) -> u16 {
        self.t
    }

    pub fn s(self) -> u16 {
        self.s
    }

    pub fn strands(self) -> StrandCount {
        self.strands
    }

    /// Parses `"t:s"`.
    pub fn parse(token: &str, strands: StrandCount) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            token: token.to_string(),
            reason: reason.to_string(),
        };
        let (t, s) = token.split_once(':').ok_or_else(|| bad("expected t:s"))?;
        let t: u16 = t.trim().parse().map_err(|_| bad("t is not an integer"))?;
        let s: u16 = s.trim().parse().map_err(|_| bad("s is not an integer"))?;
        Self::new(t, s, strands).map_err(|_| bad("need 1 <= s < t <= n"))
    }

    pub fn expand(self) -> BraidWord {
        expand(self)
    }
}

impl fmt::Display for BandGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.t, self.s)
    }
}

/// All `C(n,2)` band generators, ordered by `(t, s)`.
pub fn all_generators(strands: StrandCount) -> Vec<BandGenerator> {
    let n = strands.get();
    let mut out = Vec::new();
    for t in 2..=n {
        for s in 1..t {
            out.push(BandGenerator { t, s, strands });
        }
    }
    out
}

/// The frame generators `a_{2,1}, …, a_{n,n−1}`.
pub fn frame_generators(strands: StrandCount) -> Vec<BandGenerator> {
    (1..strands.get())
        .map(|s| BandGenerator {
            t: s + 1,
            s,
            strands,
        })
        .collect()
}

/// A positive word in band generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BandWord {
    strands: StrandCount,
    letters: Vec<BandGenerator>,
}

impl BandWord {
    pub fn new(strands: StrandCount, letters: Vec<BandGenerator>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|l| l.strands != strands) {
            return Err(Error::StrandMismatch {
                left: strands.get(),
                right: bad.strands.get(),
            });
        }
        Ok(BandWord { strands, letters })
    }

    /// Whitespace-separated `t:s` tokens.
    pub fn parse(text: &str, strands: StrandCount) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|tok| BandGenerator::parse(tok, strands))
            .collect::<Result<Vec<_>>>()?;
        Ok(BandWord { strands, letters })
    }

    /// Reads an Artin word whose letters are all positive as a band word
    /// via `σ_t = a_{t+1,t}`.
    pub fn from_positive_artin(w: &BraidWord) -> Option<Self> {
        let strands = w.strands();
        let letters = w
            .letters()
            .iter()
            .map(|l| {
                (l.sign == crate::braid::Sign::Pos).then_some(BandGenerator {
                    t: l.index + 1,
                    s: l.index,
                    strands,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(BandWord { strands, letters })
    }

    pub(crate) fn from_letters_unchecked(
        strands: StrandCount,
        letters: Vec<BandGenerator>,
    ) -> Self {
        BandWord { strands, letters }
    }

    pub fn strands(&self) -> StrandCount {
        self.strands
    }

    pub fn letters(&self) -> &[BandGenerator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The product of the letter expansions, freely reduced.
    pub fn expand(&self) -> BraidWord {
        let parts: Vec<BraidWord> = self.letters.iter().map(|l| l.expand()).collect();
        product(self.strands, &parts).expect("letters share the strand count")
    }

    /// One factor per letter, each the letter's expansion.
    pub fn to_factorization(&self) -> Factorization {
        Factorization::new(
            self.strands,
            self.letters.iter().map(|l| l.expand()).collect(),
        )
        .expect("letters share the strand count")
    }
}

impl fmt::Display for BandWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The relation that applies to an ordered adjacent pair of band generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PairClass {
    /// `(a_{t,s}, a_{s,r})`
    ChainA {
        t: u16,
        s: u16,
        r: u16,
    },
    /// `(a_{t,r}, a_{t,s})`
    ChainB {
        t: u16,
        s: u16,
        r: u16,
    },
    /// `(a_{s,r}, a_{t,r})`
    ChainC {
        t: u16,
        s: u16,
        r: u16,
    },
    Commuting,
    /// Neither relation applies.
    Interleaved,
}

fn commute_predicate(x: BandGenerator, y: BandGenerator) -> i64 {
    let (t, s, r, q) = (x.t as i64, x.s as i64, y.t as i64, y.s as i64);
    (t - r) * (t - q) * (s - r) * (s - q)
}

pub fn classify_pair(x: BandGenerator, y: BandGenerator) -> PairClass {
    // relation (1) pairs share an index, so they never satisfy the strict
    // inequality of relation (2)
    if x.s == y.t {
        return PairClass::ChainA {
            t: x.t,
            s: x.s,
            r: y.s,
        };
    }
    if x.t == y.t && x.s < y.s {
        return PairClass::ChainB {
            t: x.t,
            s: y.s,
            r: x.s,
        };
    }
    if x.s == y.s && x.t < y.t {
        return PairClass::ChainC {
            t: y.t,
            s: x.t,
            r: x.s,
        };
    }
    if commute_predicate(x, y) > 0 {
        PairClass::Commuting
    } else {
        PairClass::Interleaved
    }
}

/// Whether the chords `s–t` and `q–r` of points in convex position cross:
/// four distinct endpoints, exactly one of `q, r` strictly between `s` and `t`.
pub fn chords_cross(x: BandGenerator, y: BandGenerator) -> bool {
    let distinct = x.t != y.t && x.t != y.s && x.s != y.t && x.s != y.s;
    distinct && commute_predicate(x, y) < 0
}

/// Which of the three equal products of relation (1) a pair is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ChainForm {
    A,
    B,
    C,
}

/// The pair `(x, y)` of the given form for the triple `r < s < t`.
pub fn chain_pair(
    form: ChainForm,
    t: u16,
    s: u16,
    r: u16,
    strands: StrandCount,
) -> [BandGenerator; 2] {
    let g = |t, s| BandGenerator { t, s, strands };
    match form {
        ChainForm::A => [g(t, s), g(s, r)],
        ChainForm::B => [g(t, r), g(t, s)],
        ChainForm::C => [g(s, r), g(t, r)],
    }
}

pub fn expand(a: BandGenerator) -> BraidWord {
    let mut letters: Vec<ArtinLetter> = ((a.s + 1)..a.t).rev().map(ArtinLetter::pos).collect();
    letters.push(ArtinLetter::pos(a.s));
    letters.extend(((a.s + 1)..a.t).map(ArtinLetter::neg));
    BraidWord::new(a.strands, letters).expect("indices below t <= n")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub strands: u16,
    /// Triples `r < s < t`; each contributes two equalities.
    pub triples: usize,
    pub triple_equalities: usize,
    /// Unordered generator pairs satisfying the commutation predicate.
    pub commuting_pairs: usize,
    pub failures: Vec<String>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every instance of both relations on the Artin expansions.
pub fn band_relations_hold(strands: StrandCount) -> RelationReport {
    let n = strands.get();
    let prod = |pair: [BandGenerator; 2]| -> BraidWord {
        product(strands, &[pair[0].expand(), pair[1].expand()]).expect("same strands")
    };
    let mut failures = Vec::new();
    let mut triples = 0;
    for t in 3..=n {
        for s in 2..t {
            for r in 1..s {
                triples += 1;
                let a = prod(chain_pair(ChainForm::A, t, s, r, strands));
                let b = prod(chain_pair(ChainForm::B, t, s, r, strands));
                let c = prod(chain_pair(ChainForm::C, t, s, r, strands));
                if !equal(&a, &b).expect("same strands") {
                    failures.push(format!("a({t},{s})a({s},{r}) != a({t},{r})a({t},{s})"));
                }
                if !equal(&b, &c).expect("same strands") {
                    failures.push(format!("a({t},{r})a({t},{s}) != a({s},{r})a({t},{r})"));
                }
            }
        }
    }
    let gens = all_generators(strands);
    let mut commuting_pairs = 0;
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            if commute_predicate(x, y) > 0 {
                commuting_pairs += 1;
                if !equal(&prod([x, y]), &prod([y, x])).expect("same strands") {
                    failures.push(format!(
                        "a({},{}) and a({},{}) do not commute",
                        x.t, x.s, y.t, y.s
                    ));
                }
            }
        }
    }
    RelationReport {
        strands: n,
        triples,
        triple_equalities: 2 * triples,
        commuting_pairs,
        failures,
    }
}

/// `(σ1 ⋯ σ_{n−1})^n`, letter for letter.
pub fn delta_squared_word(strands: StrandCount) -> BraidWord {
    let row: Vec<ArtinLetter> = (1..strands.get()).map(ArtinLetter::pos).collect();
    BraidWord::new(strands, row)
        .expect("indices below n")
        .power(strands.as_usize())
}

/// `(a_{2,1} a_{3,2} ⋯ a_{n,n−1})^n` as a band word.
pub fn standard_band_word(strands: StrandCount) -> BandWord {
    let row = frame_generators(strands);
    let mut letters = Vec::with_capacity(row.len() * strands.as_usize());
    for _ in 0..strands.get() {
        letters.extend_from_slice(&row);
    }
    BandWord { strands, letters }
}

/// The `n(n−1)` single-generator factors `σ1, …, σ_{n−1}` repeated `n` times.
pub fn standard_factorization(strands: StrandCount) -> Factorization {
    conjugated_factorization(strands, &BraidWord::identity(strands))
        .expect("identity conjugator shares the strand count")
}

/// `(σ1[b], …, σ_{n−1}[b])` repeated `n` times, with `x[b] = b⁻¹ x b`.
pub fn conjugated_factorization(strands: StrandCount, b: &BraidWord) -> Result<Factorization> {
    if b.strands() != strands {
        return Err(Error::StrandMismatch {
            left: strands.get(),
            right: b.strands().get(),
        });
    }
    let row = (1..strands.get())
        .map(|i| conjugate(&BraidWord::generator(strands, i)?, b))
        .collect::<Result<Vec<_>>>()?;
    let mut factors = Vec::with_capacity(row.len() * strands.as_usize());
    for _ in 0..strands.get() {
        factors.extend(row.iter().cloned());
    }
    Factorization::new(strands, factors)
}

/// Whether `w` commutes with every `σ_i`.
pub fn is_central(w: &BraidWord) -> bool {
    let n = w.strands();
    (1..n.get()).all(|i| {
        let s = BraidWord::generator(n, i).expect("index below n");
        let ws = product(n, [w, &s]).expect("same strands");
        let sw = product(n, [&s, w]).expect("same strands");
        equal(&ws, &sw).expect("same strands")
    })
}

/// Necessary conditions for a half twist: exponent sum 1 and a
/// transposition as underlying permutation. Not sufficient in general.
pub fn is_half_twist_shape(w: &BraidWord) -> bool {
    w.exponent_sum() == 1 && w.underlying_permutation().is_transposition()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{canonical_key, equal_oracle, inverse};

    fn n(k: u64) -> StrandCount {
        StrandCount::new(k).unwrap()
    }

    fn a(t: u16, s: u16, k: u64) -> BandGenerator {
        BandGenerator::new(t, s, n(k)).unwrap()
    }

    fn w(k: u64, ints: &[i32]) -> BraidWord {
        BraidWord::from_ints(n(k), ints).unwrap()
    }

    #[test]
    fn generator_bounds() {
        assert!(BandGenerator::new(2, 2, n(3)).is_err());
        assert!(BandGenerator::new(4, 1, n(3)).is_err());
        assert!(BandGenerator::new(2, 0, n(3)).is_err());
        assert!(BandGenerator::new(3, 1, n(3)).is_ok());
        assert!(BandGenerator::parse("3:1", n(3)).is_ok());
        assert!(BandGenerator::parse("1:3", n(3)).is_err());
        assert!(BandGenerator::parse("31", n(3)).is_err());
    }

    #[test]
    fn expansions() {
        assert_eq!(a(2, 1, 2).expand().to_ints(), vec![1]);
        for k in 2..=6u64 {
            for t in 1..k as u16 {
                assert_eq!(a(t + 1, t, k).expand().to_ints(), vec![t as i32]);
            }
        }
        assert_eq!(a(3, 1, 3).expand().to_ints(), vec![2, 1, -2]);
        assert_eq!(a(4, 2, 4).expand().to_ints(), vec![3, 2, -3]);
        assert_eq!(a(5, 1, 5).expand().to_ints(), vec![4, 3, 2, 1, -2, -3, -4]);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_pair(a(3, 2, 3), a(2, 1, 3)),
            PairClass::ChainA { t: 3, s: 2, r: 1 }
        );
        assert_eq!(
            classify_pair(a(3, 1, 3), a(3, 2, 3)),
            PairClass::ChainB { t: 3, s: 2, r: 1 }
        );
        assert_eq!(
            classify_pair(a(2, 1, 3), a(3, 1, 3)),
            PairClass::ChainC { t: 3, s: 2, r: 1 }
        );
        assert_eq!(classify_pair(a(4, 3, 4), a(2, 1, 4)), PairClass::Commuting);
        assert_eq!(
            classify_pair(a(3, 1, 4), a(4, 2, 4)),
            PairClass::Interleaved
        );
        // shared index, wrong order for relation (1)
        assert_eq!(
            classify_pair(a(2, 1, 3), a(3, 2, 3)),
            PairClass::Interleaved
        );
        assert_eq!(
            classify_pair(a(3, 2, 3), a(3, 2, 3)),
            PairClass::Interleaved
        );
    }

    #[test]
    fn chain_pairs_classify_back() {
        let k = 5;
        for t in 3..=k as u16 {
            for s in 2..t {
                for r in 1..s {
                    let cases = [
                        (ChainForm::A, PairClass::ChainA { t, s, r }),
                        (ChainForm::B, PairClass::ChainB { t, s, r }),
                        (ChainForm::C, PairClass::ChainC { t, s, r }),
                    ];
                    for (form, class) in cases {
                        let [x, y] = chain_pair(form, t, s, r, n(k));
                        assert_eq!(classify_pair(x, y), class);
                    }
                }
            }
        }
    }

    #[test]
    fn crossing_chords() {
        assert!(chords_cross(a(3, 1, 4), a(4, 2, 4)));
        assert!(!chords_cross(a(4, 1, 4), a(3, 2, 4)));
        assert!(!chords_cross(a(2, 1, 4), a(4, 3, 4)));
        assert!(!chords_cross(a(3, 1, 4), a(3, 2, 4)));
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn relation_counts() {
        // a 4-subset of points on a circle has three matchings, two of them non-crossing
        for k in 3..=6usize {
            let report = band_relations_hold(n(k as u64));
            assert!(report.passed(), "{:?}", report.failures);
            assert_eq!(report.triples, binom(k, 3));
            assert_eq!(report.commuting_pairs, 2 * binom(k, 4));
        }
        let r3 = band_relations_hold(n(3));
        assert_eq!((r3.triples, r3.commuting_pairs), (1, 0));
    }

    #[test]
    fn delta_squared() {
        assert_eq!(delta_squared_word(n(2)).to_ints(), vec![1, 1]);
        assert_eq!(delta_squared_word(n(3)).to_ints(), vec![1, 2, 1, 2, 1, 2]);
        for k in 2..=6u64 {
            let d2 = delta_squared_word(n(k));
            assert_eq!(d2.exponent_sum(), (k * (k - 1)) as i64);
            let dd = crate::braid::delta_word(n(k)).power(2);
            assert!(equal_oracle(&d2, &dd).unwrap());
        }
    }

    #[test]
    fn standard_factorization_shape() {
        let f = standard_factorization(n(3));
        let ints: Vec<Vec<i32>> = f.factors().iter().map(|w| w.to_ints()).collect();
        assert_eq!(
            ints,
            vec![vec![1], vec![2], vec![1], vec![2], vec![1], vec![2]]
        );
        assert_eq!(f.product_key(), canonical_key(&delta_squared_word(n(3))));
        for k in 2..=6u64 {
            let f = standard_factorization(n(k));
            assert_eq!(f.len() as u64, k * (k - 1));
            assert!(f.factors().iter().all(is_half_twist_shape));
        }
    }

    #[test]
    fn conjugated_factorization_shape() {
        let id = conjugated_factorization(n(4), &w(4, &[])).unwrap();
        assert_eq!(id, standard_factorization(n(4)));
        let f = conjugated_factorization(n(3), &w(3, &[1])).unwrap();
        let ints: Vec<Vec<i32>> = f.factors().iter().map(|w| w.to_ints()).collect();
        assert_eq!(
            ints,
            vec![
                vec![1],
                vec![-1, 2, 1],
                vec![1],
                vec![-1, 2, 1],
                vec![1],
                vec![-1, 2, 1]
            ]
        );
        let g = conjugated_factorization(n(3), &w(3, &[1, 2])).unwrap();
        assert_eq!(g.product_key(), canonical_key(&delta_squared_word(n(3))));
        assert!(g.factors().iter().all(is_half_twist_shape));
        assert!(conjugated_factorization(n(3), &w(4, &[1])).is_err());
    }

    #[test]
    fn centrality() {
        for k in 3..=6u64 {
            assert!(is_central(&delta_squared_word(n(k))));
        }
        assert!(!is_central(&w(3, &[1])));
        assert!(is_central(&w(3, &[])));
        // Δ alone is not central for n >= 3
        assert!(!is_central(&crate::braid::delta_word(n(4))));
    }

    #[test]
    fn half_twist_shapes() {
        for k in 2..=6u64 {
            for g in all_generators(n(k)) {
                assert!(is_half_twist_shape(&g.expand()));
            }
        }
        let b = w(4, &[2, -3, 1, 1]);
        let c = conjugate(&w(4, &[1]), &b).unwrap();
        assert!(is_half_twist_shape(&c));
        assert!(!is_half_twist_shape(&w(3, &[1, 2])));
        assert!(!is_half_twist_shape(&inverse(&w(3, &[1]))));
    }

    #[test]
    fn conjugation_identity() {
        // a_{s,r}[a_{t,s}⁻¹] = a_{t,r}
        let x = a(2, 1, 3).expand();
        let g = inverse(&a(3, 2, 3).expand());
        let c = conjugate(&x, &g).unwrap();
        assert!(equal(&c, &a(3, 1, 3).expand()).unwrap());
    }

    #[test]
    fn band_word_text() {
        let bw = BandWord::parse("3:2 2:1", n(3)).unwrap();
        assert_eq!(bw.to_string(), "3:2 2:1");
        assert_eq!(bw.expand().to_ints(), vec![2, 1]);
        let std = standard_band_word(n(3));
        assert_eq!(std.to_string(), "2:1 3:2 2:1 3:2 2:1 3:2");
        assert_eq!(std.expand(), delta_squared_word(n(3)));
        assert_eq!(
            BandWord::from_positive_artin(&delta_squared_word(n(3))).unwrap(),
            std
        );
        assert!(BandWord::from_positive_artin(&w(3, &[-1])).is_none());
    }
}
