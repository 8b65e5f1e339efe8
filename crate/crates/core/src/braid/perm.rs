use std::fmt;

/// A permutation of strand positions.
///
/// `images[k]` is the final position of the strand that starts at position
/// `k` (both 0-based). Positions are printed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u16>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Permutation { images })
    }

    /// The transposition of positions `i` and `i + 1` (1-based generator index `i`).
    pub fn adjacent(n: usize, i: u16) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i as usize - 1, i as usize);
        p
    }

    /// The permutation of the half twist: position `k` goes to `n - 1 - k`.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (0..n as u16).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn image(&self, k: usize) -> usize {
        self.images[k] as usize
    }

    pub(crate) fn images_mut(&mut self) -> &mut [u16] {
        &mut self.images
    }

    /// Composition in word order: first `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&k| other.images[k as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.len()];
        for (k, &img) in self.images.iter().enumerate() {
            inv[img as usize] = k as u16;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, &i)| k == i as usize)
    }

    /// Cycle lengths in non-increasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut lengths = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn is_transposition(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .filter(|&(k, &i)| k != i as usize)
            .count()
            == 2
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.one_line().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}
