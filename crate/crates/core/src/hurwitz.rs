//! Hurwitz moves on factorizations.
//!
//! `R_k` replaces the adjacent factors `(t_k, t_{k+1})` by
//! `(t_k t_{k+1} t_k⁻¹, t_k)`; `R_k⁻¹` replaces them by
//! `(t_{k+1}, t_{k+1}⁻¹ t_k t_{k+1})`. Positions are 1-based. Both moves keep
//! the product, so the cached product key is carried over unchanged.

use std::collections::HashSet;
use std::fmt;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{compose, inverse, normal_form, BraidWord};
use crate::error::{Error, Result};
use crate::factorization::Factorization;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `R_k` or `R_k⁻¹`; serialized as `k` or `-k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub struct Move {
    pub position: usize,
    pub direction: Direction,
}

impl Move {
    pub fn forward(position: usize) -> Self {
        Move {
            position,
            direction: Direction::Forward,
        }
    }

    pub fn inverse(position: usize) -> Self {
        Move {
            position,
            direction: Direction::Inverse,
        }
    }

    pub fn inverted(self) -> Self {
        Move {
            position: self.position,
            direction: match self.direction {
                Direction::Forward => Direction::Inverse,
                Direction::Inverse => Direction::Forward,
            },
        }
    }

    pub fn to_int(self) -> i64 {
        match self.direction {
            Direction::Forward => self.position as i64,
            Direction::Inverse => -(self.position as i64),
        }
    }

    pub fn from_int(k: i64) -> Result<Self> {
        match k {
            0 => Err(Error::Input(
                "move 0 does not exist; moves are 1-based".into(),
            )),
            k if k > 0 => Ok(Move::forward(k as usize)),
            k => Ok(Move::inverse(k.unsigned_abs() as usize)),
        }
    }
}

impl From<Move> for i64 {
    fn from(m: Move) -> i64 {
        m.to_int()
    }
}

impl TryFrom<i64> for Move {
    type Error = Error;

    fn try_from(k: i64) -> Result<Self> {
        Move::from_int(k)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::Forward => write!(f, "R{}", self.position),
            Direction::Inverse => write!(f, "R{}^-1", self.position),
        }
    }
}

pub type MoveSequence = Vec<Move>;

/// Parses a JSON array of signed integers.
pub fn parse_moves(text: &str) -> Result<MoveSequence> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("move sequence: {e}")))
}

/// Word and key for a new factor, swapping in the normal-form word when it is
/// shorter. Conjugation otherwise lets words grow along long move sequences.
fn settle(word: BraidWord) -> (BraidWord, String) {
    let nf = normal_form(&word);
    let key = nf.key();
    let alt = nf.to_word();
    if alt.len() < word.len() {
        (alt, key)
    } else {
        (word, key)
    }
}

pub fn apply(f: &Factorization, m: Move) -> Result<Factorization> {
    if m.position == 0 || m.position >= f.len() {
        return Err(Error::MoveOutOfRange {
            position: m.position,
            len: f.len(),
        });
    }
    let i = m.position - 1;
    let (a, b) = (&f.factors()[i], &f.factors()[i + 1]);
    let (ka, kb) = (&f.factor_keys()[i], &f.factor_keys()[i + 1]);
    let pair = match m.direction {
        Direction::Forward => {
            let conj = compose(&compose(a, b)?, &inverse(a))?;
            [settle(conj), (a.clone(), ka.clone())]
        }
        Direction::Inverse => {
            let conj = compose(&compose(&inverse(b), a)?, b)?;
            [(b.clone(), kb.clone()), settle(conj)]
        }
    };
    Ok(f.with_replaced(i, pair))
}

pub fn apply_sequence(f: &Factorization, moves: &[Move]) -> Result<Factorization> {
    let mut cur = f.clone();
    for (index, &m) in moves.iter().enumerate() {
        cur = apply(&cur, m).map_err(|e| Error::SequenceMove {
            index,
            source: Box::new(e),
        })?;
    }
    Ok(cur)
}

/// Every applicable move in the fixed order `R_1, R_1⁻¹, R_2, R_2⁻¹, …`.
pub fn all_moves(len: usize) -> impl Iterator<Item = Move> {
    (1..len).flat_map(|k| [Move::forward(k), Move::inverse(k)])
}

fn expand_layer(layer: &[(usize, Factorization)]) -> Vec<(usize, Move, String, Factorization)> {
    layer
        .par_iter()
        .map(|(parent, f)| {
            all_moves(f.len())
                .map(|m| {
                    let g = apply(f, m).expect("move in range");
                    (*parent, m, g.tuple_key(), g)
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub visited: usize,
    /// Number of new tuples discovered at depth 0, 1, 2, …
    pub frontier_depths: Vec<usize>,
    pub truncated: bool,
    pub depth_cap: usize,
    pub size_cap: usize,
    /// Tuple keys of every visited factorization, sorted.
    pub keys: Vec<String>,
}

/// Breadth-first closure of `f` under all Hurwitz moves, deduplicated by
/// tuple key. `truncated` is set iff a cap kept an unseen tuple out.
pub fn orbit_explore(f: &Factorization, depth_cap: usize, size_cap: usize) -> OrbitReport {
    let mut report = OrbitReport {
        visited: 0,
        frontier_depths: Vec::new(),
        truncated: false,
        depth_cap,
        size_cap,
        keys: Vec::new(),
    };
    if size_cap == 0 {
        report.truncated = true;
        return report;
    }
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(f.tuple_key());
    report.frontier_depths.push(1);
    let mut layer = vec![(0usize, f.clone())];
    let mut depth = 0;
    'outer: while !layer.is_empty() {
        let mut next: Vec<(String, Factorization)> = Vec::new();
        for (_, _, key, g) in expand_layer(&layer) {
            if seen.contains(&key) {
                continue;
            }
            if depth >= depth_cap || seen.len() >= size_cap {
                report.truncated = true;
                if !next.is_empty() {
                    report.frontier_depths.push(next.len());
                }
                break 'outer;
            }
            seen.insert(key.clone());
            next.push((key, g));
        }
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        report.frontier_depths.push(next.len());
        layer = next.into_iter().map(|(_, g)| (0, g)).collect();
        depth += 1;
    }
    report.visited = seen.len();
    report.keys = seen.into_iter().collect();
    report.keys.sort();
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathResult {
    Found(MoveSequence),
    /// No path within the caps. `orbit_closed` is true when one side's
    /// orbit was enumerated completely, which rules a path out.
    NotFound {
        orbit_closed: bool,
    },
    /// The products differ, so no sequence of moves can connect them.
    NotComparable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathReport {
    pub result: PathResult,
    /// Tuples stored across both search directions.
    pub visited: usize,
    pub depth_cap: usize,
    pub size_cap: usize,
}

struct Side {
    // tuple key -> (parent index, move from parent)
    nodes: IndexMap<String, (usize, Option<Move>)>,
    layer: Vec<(usize, Factorization)>,
    depth: usize,
}

impl Side {
    fn new(f: &Factorization) -> Self {
        let mut nodes = IndexMap::new();
        nodes.insert(f.tuple_key(), (usize::MAX, None));
        Side {
            nodes,
            layer: vec![(0, f.clone())],
            depth: 0,
        }
    }

    /// Moves from the root to node `idx`.
    fn path_from_root(&self, mut idx: usize) -> Vec<Move> {
        let mut moves = Vec::new();
        while let Some((_, &(parent, Some(m)))) = self.nodes.get_index(idx) {
            moves.push(m);
            idx = parent;
        }
        moves.reverse();
        moves
    }
}

/// Bidirectional breadth-first search for a move sequence taking `source`
/// to `target` (position-wise key equality).
///
/// `depth_cap` bounds the path length and `size_cap` the number of stored
/// tuples. The smaller frontier is expanded one whole layer at a time, in
/// sorted key order, so results do not depend on thread scheduling.
pub fn search_path(
    source: &Factorization,
    target: &Factorization,
    depth_cap: usize,
    size_cap: usize,
) -> Result<PathReport> {
    if source.strands() != target.strands() {
        return Err(Error::StrandMismatch {
            left: source.strands().get(),
            right: target.strands().get(),
        });
    }
    if source.len() != target.len() {
        return Err(Error::LengthMismatch {
            left: source.len(),
            right: target.len(),
        });
    }
    let report = |result, visited| PathReport {
        result,
        visited,
        depth_cap,
        size_cap,
    };
    if source.product_key() != target.product_key() {
        return Ok(report(PathResult::NotComparable, 0));
    }
    if source.tuple_key() == target.tuple_key() {
        return Ok(report(PathResult::Found(Vec::new()), 1));
    }

    let mut sides = [Side::new(source), Side::new(target)];
    loop {
        let visited = sides[0].nodes.len() + sides[1].nodes.len();
        if sides[0].layer.is_empty() || sides[1].layer.is_empty() {
            return Ok(report(PathResult::NotFound { orbit_closed: true }, visited));
        }
        if sides[0].depth + sides[1].depth >= depth_cap {
            return Ok(report(
                PathResult::NotFound {
                    orbit_closed: false,
                },
                visited,
            ));
        }
        let which = if sides[0].layer.len() <= sides[1].layer.len() {
            0
        } else {
            1
        };
        let expanded = expand_layer(&sides[which].layer);
        let mut next: Vec<(String, usize, Factorization)> = Vec::new();
        for (parent, m, key, g) in expanded {
            if sides[which].nodes.contains_key(&key) {
                continue;
            }
            if sides[0].nodes.len() + sides[1].nodes.len() >= size_cap {
                let visited = sides[0].nodes.len() + sides[1].nodes.len();
                return Ok(report(
                    PathResult::NotFound {
                        orbit_closed: false,
                    },
                    visited,
                ));
            }
            let (idx, _) = sides[which]
                .nodes
                .insert_full(key.clone(), (parent, Some(m)));
            if let Some(other_idx) = sides[1 - which].nodes.get_index_of(&key) {
                let (fwd_idx, bwd_idx) = if which == 0 {
                    (idx, other_idx)
                } else {
                    (other_idx, idx)
                };
                let mut moves = sides[0].path_from_root(fwd_idx);
                moves.extend(
                    sides[1]
                        .path_from_root(bwd_idx)
                        .into_iter()
                        .rev()
                        .map(Move::inverted),
                );
                let end = apply_sequence(source, &moves)?;
                if end.tuple_key() != target.tuple_key() {
                    return Err(Error::ReplayMismatch(
                        moves
                            .iter()
                            .map(|m| m.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                    ));
                }
                let visited = sides[0].nodes.len() + sides[1].nodes.len();
                return Ok(report(PathResult::Found(moves), visited));
            }
            next.push((key, idx, g));
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        let side = &mut sides[which];
        side.layer = next.into_iter().map(|(_, idx, g)| (idx, g)).collect();
        side.depth += 1;
    }
}

pub fn find_path(
    source: &Factorization,
    target: &Factorization,
    depth_cap: usize,
    size_cap: usize,
) -> Result<PathResult> {
    search_path(source, target, depth_cap, size_cap).map(|r| r.result)
}
