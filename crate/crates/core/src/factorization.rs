use serde::{Deserialize, Serialize};

use crate::braid::{canonical_key, normal_form, parse_braid, product, BraidWord, StrandCount};
use crate::error::{Error, Result};

/// Separator between factor keys in a tuple key.
pub const TUPLE_KEY_SEPARATOR: char = '/';

/// An ordered tuple of braids with cached canonical keys.
///
/// `product_key` is the canonical key of `f_1 f_2 ⋯ f_m`. Hurwitz moves carry
/// it over unchanged; [`Factorization::recompute_product_key`] recomputes it
/// from scratch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    strands: StrandCount,
    factors: Vec<BraidWord>,
    keys: Vec<String>,
    product_key: String,
}

/// On-disk form: `{"strands": n, "factors": ["1 2 -1", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationFile {
    pub strands: u16,
    pub factors: Vec<String>,
}

impl Factorization {
    pub fn new(strands: StrandCount, factors: Vec<BraidWord>) -> Result<Self> {
        for f in &factors {
            if f.strands() != strands {
                return Err(Error::StrandMismatch {
                    left: strands.get(),
                    right: f.strands().get(),
                });
            }
        }
        let factors: Vec<BraidWord> = factors.into_iter().map(|f| f.freely_reduced()).collect();
        let keys = factors.iter().map(canonical_key).collect();
        let product_key = canonical_key(&product(strands, &factors)?);
        Ok(Factorization {
            strands,
            factors,
            keys,
            product_key,
        })
    }

    pub(crate) fn with_replaced(&self, at: usize, pair: [(BraidWord, String); 2]) -> Factorization {
        let mut next = self.clone();
        let [(a, ka), (b, kb)] = pair;
        next.factors[at] = a;
        next.keys[at] = ka;
        next.factors[at + 1] = b;
        next.keys[at + 1] = kb;
        next
    }

    pub fn strands(&self) -> StrandCount {
        self.strands
    }

    pub fn factors(&self) -> &[BraidWord] {
        &self.factors
    }

    pub fn factor_keys(&self) -> &[String] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product_key(&self) -> &str {
        &self.product_key
    }

    pub fn product(&self) -> BraidWord {
        product(self.strands, &self.factors).expect("factors share the strand count")
    }

    pub fn recompute_product_key(&self) -> String {
        normal_form(&self.product()).key()
    }

    /// Per-factor canonical keys joined by [`TUPLE_KEY_SEPARATOR`].
    pub fn tuple_key(&self) -> String {
        self.keys.join(&TUPLE_KEY_SEPARATOR.to_string())
    }

    pub fn to_file(&self) -> FactorizationFile {
        FactorizationFile {
            strands: self.strands.get(),
            factors: self.factors.iter().map(|f| f.to_string()).collect(),
        }
    }

    pub fn from_file(file: &FactorizationFile) -> Result<Self> {
        let n = StrandCount::new(file.strands as u64)?;
        let factors = file
            .factors
            .iter()
            .map(|f| parse_braid(f, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, factors)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FactorizationFile =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("plain data serializes")
    }
}

/// Canonical tuple key of a factorization.
pub fn tuple_key(f: &Factorization) -> String {
    f.tuple_key()
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
    fn tuple_key_ignores_free_cancellation() {
        let a = Factorization::new(n(3), vec![w(3, &[1, -1, 2]), w(3, &[1])]).unwrap();
        let b = Factorization::new(n(3), vec![w(3, &[2]), w(3, &[1])]).unwrap();
        assert_eq!(tuple_key(&a), tuple_key(&b));
    }

    #[test]
    fn tuple_key_is_positional() {
        let a = Factorization::new(n(3), vec![w(3, &[1]), w(3, &[2])]).unwrap();
        let b = Factorization::new(n(3), vec![w(3, &[2]), w(3, &[1])]).unwrap();
        assert_ne!(tuple_key(&a), tuple_key(&b));
        assert_ne!(a.product_key(), b.product_key());
    }

    #[test]
    fn json_roundtrip() {
        let f = Factorization::new(n(4), vec![w(4, &[1, -3]), w(4, &[]), w(4, &[2, 2])]).unwrap();
        let text = f.to_json();
        assert_eq!(text, r#"{"strands":4,"factors":["1 -3","","2 2"]}"#);
        let back = Factorization::from_json(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.tuple_key(), f.tuple_key());
    }

    #[test]
    fn rejects_mixed_strands() {
        assert!(Factorization::new(n(3), vec![w(4, &[1])]).is_err());
        assert!(Factorization::from_json(r#"{"strands":3,"factors":["3"]}"#).is_err());
        assert!(Factorization::from_json(r#"{"strands":3}"#).is_err());
    }
}
