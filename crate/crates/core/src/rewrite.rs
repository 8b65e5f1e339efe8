//! Rewriting positive band words by single relation applications, and the
//! translation of such rewrites into Hurwitz moves.
//!
//! Relation (1) says three products are equal:
//! `A = a_{t,s} a_{s,r}`, `B = a_{t,r} a_{t,s}`, `C = a_{s,r} a_{t,r}`.
//! On the factorization of expanded letters, `R_k` carries the pair at
//! position `k` from A to B, from B to C and from C to A; `R_k⁻¹` goes the
//! other way round the cycle. A commuting swap is `R_k`, since
//! `x y x⁻¹ = y` when `x` and `y` commute.

use std::collections::{HashMap, HashSet};
use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;

use crate::band::{chain_pair, classify_pair, BandWord, ChainForm, PairClass};
use crate::error::{Error, Result};
use crate::hurwitz::{apply, Move, MoveSequence};

/// Which rewrite turns the pair at a position into another form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    #[serde(rename = "A->B")]
    AtoB,
    #[serde(rename = "B->C")]
    BtoC,
    #[serde(rename = "C->A")]
    CtoA,
    #[serde(rename = "B->A")]
    BtoA,
    #[serde(rename = "C->B")]
    CtoB,
    #[serde(rename = "A->C")]
    AtoC,
    #[serde(rename = "Comm")]
    Comm,
}

impl Rule {
    fn chain(self) -> Option<(ChainForm, ChainForm)> {
        use ChainForm::*;
        Some(match self {
            Rule::AtoB => (A, B),
            Rule::BtoC => (B, C),
            Rule::CtoA => (C, A),
            Rule::BtoA => (B, A),
            Rule::CtoB => (C, B),
            Rule::AtoC => (A, C),
            Rule::Comm => return None,
        })
    }

    fn between(from: ChainForm, to: ChainForm) -> Rule {
        use ChainForm::*;
        match (from, to) {
            (A, B) => Rule::AtoB,
            (B, C) => Rule::BtoC,
            (C, A) => Rule::CtoA,
            (B, A) => Rule::BtoA,
            (C, B) => Rule::CtoB,
            (A, C) => Rule::AtoC,
            _ => unreachable!("a chain rewrite changes the form"),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::AtoB => "A->B",
            Rule::BtoC => "B->C",
            Rule::CtoA => "C->A",
            Rule::BtoA => "B->A",
            Rule::CtoB => "C->B",
            Rule::AtoC => "A->C",
            Rule::Comm => "Comm",
        };
        f.write_str(s)
    }
}

/// A single relation applied to the adjacent letters at `position` and
/// `position + 1` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RelationStep {
    pub position: usize,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewritePath {
    pub start: BandWord,
    pub end: BandWord,
    pub steps: Vec<RelationStep>,
}

impl RewritePath {
    /// Every word along the path, `start` first and `end` last.
    pub fn words(&self) -> Result<Vec<BandWord>> {
        let mut words = vec![self.start.clone()];
        for &step in &self.steps {
            let next = apply_step(words.last().expect("non-empty"), step)?;
            words.push(next);
        }
        Ok(words)
    }
}

fn chain_form(class: PairClass) -> Option<(ChainForm, u16, u16, u16)> {
    match class {
        PairClass::ChainA { t, s, r } => Some((ChainForm::A, t, s, r)),
        PairClass::ChainB { t, s, r } => Some((ChainForm::B, t, s, r)),
        PairClass::ChainC { t, s, r } => Some((ChainForm::C, t, s, r)),
        PairClass::Commuting | PairClass::Interleaved => None,
    }
}

fn bad_step(step: RelationStep, w: &BandWord) -> Error {
    Error::Input(format!(
        "rule {} does not apply at position {} of {w}",
        step.rule, step.position
    ))
}

/// Applies one relation step, checking that it fits the pair at its position.
pub fn apply_step(w: &BandWord, step: RelationStep) -> Result<BandWord> {
    let k = step.position;
    if k == 0 || k >= w.len() {
        return Err(bad_step(step, w));
    }
    let (x, y) = (w.letters()[k - 1], w.letters()[k]);
    let class = classify_pair(x, y);
    let replacement = match (step.rule.chain(), chain_form(class)) {
        (None, None) if class == PairClass::Commuting => [y, x],
        (Some((from, to)), Some((form, t, s, r))) if from == form => {
            chain_pair(to, t, s, r, w.strands())
        }
        _ => return Err(bad_step(step, w)),
    };
    let mut letters = w.letters().to_vec();
    letters[k - 1] = replacement[0];
    letters[k] = replacement[1];
    Ok(BandWord::from_letters_unchecked(w.strands(), letters))
}

/// All words one relation application away, by position and then rule.
pub fn neighbors(w: &BandWord) -> Vec<(BandWord, RelationStep)> {
    let mut out = Vec::new();
    for k in 1..w.len() {
        let (x, y) = (w.letters()[k - 1], w.letters()[k]);
        let class = classify_pair(x, y);
        let targets: Vec<(Rule, [crate::band::BandGenerator; 2])> = match chain_form(class) {
            Some((form, t, s, r)) => {
                let others = match form {
                    ChainForm::A => [ChainForm::B, ChainForm::C],
                    ChainForm::B => [ChainForm::C, ChainForm::A],
                    ChainForm::C => [ChainForm::A, ChainForm::B],
                };
                others
                    .iter()
                    .map(|&to| {
                        (
                            Rule::between(form, to),
                            chain_pair(to, t, s, r, w.strands()),
                        )
                    })
                    .collect()
            }
            None if class == PairClass::Commuting => vec![(Rule::Comm, [y, x])],
            None => Vec::new(),
        };
        for (rule, pair) in targets {
            let mut letters = w.letters().to_vec();
            letters[k - 1] = pair[0];
            letters[k] = pair[1];
            out.push((
                BandWord::from_letters_unchecked(w.strands(), letters),
                RelationStep { position: k, rule },
            ));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    /// Sorted lexicographically.
    pub words: Vec<BandWord>,
    pub truncated: bool,
}

/// Breadth-first closure of `w` under [`neighbors`], holding at most
/// `size_cap` words.
pub fn equivalence_class(w: &BandWord, size_cap: usize) -> ClassReport {
    let mut seen: HashSet<BandWord> = HashSet::new();
    seen.insert(w.clone());
    let mut layer = vec![w.clone()];
    let mut truncated = false;
    'outer: while !layer.is_empty() {
        let mut next = Vec::new();
        for u in &layer {
            for (v, _) in neighbors(u) {
                if seen.contains(&v) {
                    continue;
                }
                if seen.len() >= size_cap {
                    truncated = true;
                    break 'outer;
                }
                seen.insert(v.clone());
                next.push(v);
            }
        }
        next.sort();
        layer = next;
    }
    let mut words: Vec<BandWord> = seen.into_iter().collect();
    words.sort();
    ClassReport { words, truncated }
}

/// Bounds for the rewriting searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchCaps {
    pub depth: usize,
    pub size: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            depth: usize::MAX,
            size: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationOutcome {
    Found(RewritePath),
    /// The closure of the first word was enumerated completely without
    /// reaching the second.
    NotEqual,
    /// A cap fired before the question was settled.
    Truncated,
}

/// Shortest rewrite path from `w1` to `w2` through positive words.
///
/// Layers are expanded in lexicographic order and the first discovery of a
/// word fixes its parent, so ties between shortest paths are broken the same
/// way on every run.
pub fn relation_path(w1: &BandWord, w2: &BandWord, caps: SearchCaps) -> Result<RelationOutcome> {
    if w1.strands() != w2.strands() {
        return Err(Error::StrandMismatch {
            left: w1.strands().get(),
            right: w2.strands().get(),
        });
    }
    if w1.len() != w2.len() {
        return Ok(RelationOutcome::NotEqual);
    }
    let found = |nodes: &IndexMap<BandWord, (usize, Option<RelationStep>)>, mut idx: usize| {
        let mut steps = Vec::new();
        while let Some((_, &(parent, Some(step)))) = nodes.get_index(idx) {
            steps.push(step);
            idx = parent;
        }
        steps.reverse();
        RelationOutcome::Found(RewritePath {
            start: w1.clone(),
            end: w2.clone(),
            steps,
        })
    };
    let mut nodes: IndexMap<BandWord, (usize, Option<RelationStep>)> = IndexMap::new();
    nodes.insert(w1.clone(), (usize::MAX, None));
    if w1 == w2 {
        return Ok(found(&nodes, 0));
    }
    let mut layer = vec![0usize];
    let mut depth = 0;
    while !layer.is_empty() {
        let mut next: Vec<usize> = Vec::new();
        for &idx in &layer {
            let (u, _) = nodes.get_index(idx).expect("stored");
            for (v, step) in neighbors(&u.clone()) {
                if nodes.contains_key(&v) {
                    continue;
                }
                if depth >= caps.depth || nodes.len() >= caps.size {
                    return Ok(RelationOutcome::Truncated);
                }
                let is_target = v == *w2;
                let (vi, _) = nodes.insert_full(v, (idx, Some(step)));
                if is_target {
                    return Ok(found(&nodes, vi));
                }
                next.push(vi);
            }
        }
        next.sort_by(|&a, &b| {
            nodes
                .get_index(a)
                .unwrap()
                .0
                .cmp(nodes.get_index(b).unwrap().0)
        });
        layer = next;
        depth += 1;
    }
    Ok(RelationOutcome::NotEqual)
}

/// The Hurwitz move realizing a relation step on expanded factorizations.
pub fn step_to_move(step: RelationStep) -> Move {
    match step.rule {
        Rule::AtoB | Rule::BtoC | Rule::CtoA | Rule::Comm => Move::forward(step.position),
        Rule::BtoA | Rule::CtoB | Rule::AtoC => Move::inverse(step.position),
    }
}

pub fn compile(path: &RewritePath) -> MoveSequence {
    path.steps.iter().map(|&s| step_to_move(s)).collect()
}

/// Replays compiled moves on the factorization of expanded letters of
/// `path.start`, checking after every move that the tuple equals the
/// expansion of the corresponding rewritten word position by position, and
/// that the product key is unchanged.
pub fn verify_compiled(path: &RewritePath, moves: &[Move]) -> Result<()> {
    if moves.len() != path.steps.len() {
        return Err(Error::ReplayMismatch(format!(
            "{} moves for {} steps",
            moves.len(),
            path.steps.len()
        )));
    }
    let words = path.words()?;
    if words.last() != Some(&path.end) {
        return Err(Error::ReplayMismatch(format!(
            "rewrite steps end at {}, not {}",
            words.last().expect("non-empty"),
            path.end
        )));
    }
    let mut f = path.start.to_factorization();
    let product_key = f.product_key().to_string();
    for (i, (&m, word)) in moves.iter().zip(&words[1..]).enumerate() {
        f = apply(&f, m)?;
        if f.tuple_key() != word.to_factorization().tuple_key() {
            return Err(Error::ReplayMismatch(format!(
                "after move {} ({m}) the tuple differs from {word}",
                i + 1
            )));
        }
        if f.recompute_product_key() != product_key {
            return Err(Error::ReplayMismatch(format!(
                "product changed at move {}",
                i + 1
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositiveOutcome {
    Found {
        rewrite: RewritePath,
        moves: MoveSequence,
    },
    NotEqual,
    Truncated,
}

/// Hurwitz moves between the letter factorizations of two equal positive
/// band words, compiled from the shortest rewrite path and replay-checked.
pub fn hurwitz_path_positive(
    w1: &BandWord,
    w2: &BandWord,
    caps: SearchCaps,
) -> Result<PositiveOutcome> {
    match relation_path(w1, w2, caps)? {
        RelationOutcome::Found(rewrite) => {
            let moves = compile(&rewrite);
            verify_compiled(&rewrite, &moves)?;
            Ok(PositiveOutcome::Found { rewrite, moves })
        }
        RelationOutcome::NotEqual => Ok(PositiveOutcome::NotEqual),
        RelationOutcome::Truncated => Ok(PositiveOutcome::Truncated),
    }
}

/// Splits all positive band words of a given length into rewrite classes.
/// Returned as a map from each word to the index of its class.
pub fn partition_by_closure(
    words: &[BandWord],
    size_cap: usize,
) -> (HashMap<BandWord, usize>, bool) {
    let mut class_of: HashMap<BandWord, usize> = HashMap::new();
    let mut truncated = false;
    let mut next_class = 0;
    for w in words {
        if class_of.contains_key(w) {
            continue;
        }
        let report = equivalence_class(w, size_cap);
        truncated |= report.truncated;
        for member in report.words {
            class_of.insert(member, next_class);
        }
        next_class += 1;
    }
    (class_of, truncated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::{all_generators, BandGenerator};
    use crate::braid::{conjugate, equal, equal_oracle, inverse, StrandCount};
    use crate::factorization::Factorization;

    fn n(k: u64) -> StrandCount {
        StrandCount::new(k).unwrap()
    }

    fn bw(text: &str, k: u64) -> BandWord {
        BandWord::parse(text, n(k)).unwrap()
    }

    #[test]
    fn neighbor_examples() {
        let got = neighbors(&bw("3:2 2:1", 3));
        assert_eq!(
            got,
            vec![
                (
                    bw("3:1 3:2", 3),
                    RelationStep {
                        position: 1,
                        rule: Rule::AtoB
                    }
                ),
                (
                    bw("2:1 3:1", 3),
                    RelationStep {
                        position: 1,
                        rule: Rule::AtoC
                    }
                ),
            ]
        );
        assert_eq!(
            neighbors(&bw("4:3 2:1", 4)),
            vec![(
                bw("2:1 4:3", 4),
                RelationStep {
                    position: 1,
                    rule: Rule::Comm
                }
            )]
        );
        assert!(neighbors(&bw("3:1 4:2", 4)).is_empty());
        assert!(neighbors(&bw("3:1", 4)).is_empty());
    }

    #[test]
    fn neighbors_are_braid_equal() {
        let gens = all_generators(n(5));
        for &x in &gens {
            for &y in &gens {
                for &z in &gens {
                    let w = BandWord::new(n(5), vec![x, y, z]).unwrap();
                    for (v, step) in neighbors(&w) {
                        assert_eq!(v.len(), 3);
                        assert!(equal_oracle(&w.expand(), &v.expand()).unwrap());
                        assert_eq!(apply_step(&w, step).unwrap(), v);
                    }
                }
            }
        }
    }

    #[test]
    fn apply_step_rejects_mismatched_rule() {
        let w = bw("3:2 2:1", 3);
        assert!(apply_step(
            &w,
            RelationStep {
                position: 1,
                rule: Rule::BtoC
            }
        )
        .is_err());
        assert!(apply_step(
            &w,
            RelationStep {
                position: 1,
                rule: Rule::Comm
            }
        )
        .is_err());
        assert!(apply_step(
            &w,
            RelationStep {
                position: 2,
                rule: Rule::AtoB
            }
        )
        .is_err());
    }

    #[test]
    fn class_examples() {
        let c = equivalence_class(&bw("3:2 2:1", 3), 100);
        assert!(!c.truncated);
        assert_eq!(
            c.words,
            vec![bw("2:1 3:1", 3), bw("3:1 3:2", 3), bw("3:2 2:1", 3)]
        );
        let single = equivalence_class(&bw("4:2", 4), 100);
        assert_eq!(single.words, vec![bw("4:2", 4)]);
        let capped = equivalence_class(&bw("3:2 2:1", 3), 2);
        assert!(capped.truncated);
        assert_eq!(capped.words.len(), 2);
    }

    #[test]
    fn relation_path_examples() {
        let caps = SearchCaps::default();
        let w = bw("3:2 2:1", 3);
        match relation_path(&w, &w, caps).unwrap() {
            RelationOutcome::Found(p) => assert!(p.steps.is_empty()),
            other => panic!("{other:?}"),
        }
        match relation_path(&w, &bw("2:1 3:1", 3), caps).unwrap() {
            RelationOutcome::Found(p) => {
                assert_eq!(
                    p.steps,
                    vec![RelationStep {
                        position: 1,
                        rule: Rule::AtoC
                    }]
                )
            }
            other => panic!("{other:?}"),
        }
        let a = bw("2:1 3:2", 3);
        assert!(!equal_oracle(&a.expand(), &w.expand()).unwrap());
        assert_eq!(
            relation_path(&a, &w, caps).unwrap(),
            RelationOutcome::NotEqual
        );
        assert_eq!(
            relation_path(&a, &bw("2:1", 3), caps).unwrap(),
            RelationOutcome::NotEqual
        );
        let tight = SearchCaps {
            depth: usize::MAX,
            size: 1,
        };
        assert_eq!(
            relation_path(&w, &bw("2:1 3:1", 3), tight).unwrap(),
            RelationOutcome::Truncated
        );
    }

    #[test]
    fn move_table() {
        let at = |rule| step_to_move(RelationStep { position: 1, rule });
        assert_eq!(at(Rule::AtoB), Move::forward(1));
        assert_eq!(at(Rule::AtoC), Move::inverse(1));
        assert_eq!(
            step_to_move(RelationStep {
                position: 4,
                rule: Rule::Comm
            }),
            Move::forward(4)
        );
    }

    /// The table, checked against conjugation on every triple for n = 5.
    #[test]
    fn move_table_matches_conjugation() {
        let k = n(5);
        for t in 3..=5u16 {
            for s in 2..t {
                for r in 1..s {
                    for (from, to) in [
                        (ChainForm::A, ChainForm::B),
                        (ChainForm::B, ChainForm::C),
                        (ChainForm::C, ChainForm::A),
                        (ChainForm::B, ChainForm::A),
                        (ChainForm::C, ChainForm::B),
                        (ChainForm::A, ChainForm::C),
                    ] {
                        let [x, y] = chain_pair(from, t, s, r, k);
                        let [p, q] = chain_pair(to, t, s, r, k);
                        let (xe, ye) = (x.expand(), y.expand());
                        let m = step_to_move(RelationStep {
                            position: 1,
                            rule: Rule::between(from, to),
                        });
                        // R: (x, y) -> (y[x⁻¹], x); R⁻¹: (x, y) -> (y, x[y])
                        let (first, second) = match m.direction {
                            crate::hurwitz::Direction::Forward => {
                                (conjugate(&ye, &inverse(&xe)).unwrap(), xe.clone())
                            }
                            crate::hurwitz::Direction::Inverse => {
                                (ye.clone(), conjugate(&xe, &ye).unwrap())
                            }
                        };
                        assert!(
                            equal(&first, &p.expand()).unwrap(),
                            "{from:?}->{to:?} ({t},{s},{r})"
                        );
                        assert!(
                            equal(&second, &q.expand()).unwrap(),
                            "{from:?}->{to:?} ({t},{s},{r})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn positive_path_single_move() {
        let out =
            hurwitz_path_positive(&bw("3:2 2:1", 3), &bw("3:1 3:2", 3), SearchCaps::default())
                .unwrap();
        match out {
            PositiveOutcome::Found { moves, .. } => assert_eq!(moves, vec![Move::forward(1)]),
            other => panic!("{other:?}"),
        }
        let w = bw("3:2 2:1 4:1", 4);
        match hurwitz_path_positive(&w, &w, SearchCaps::default()).unwrap() {
            PositiveOutcome::Found { moves, .. } => assert!(moves.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn compiled_path_replays_on_longer_word() {
        let w1 = bw("4:3 3:2 2:1 4:1", 4);
        let class = equivalence_class(&w1, 10_000);
        assert!(!class.truncated);
        for w2 in &class.words {
            match hurwitz_path_positive(&w1, w2, SearchCaps::default()).unwrap() {
                PositiveOutcome::Found { rewrite, moves } => {
                    verify_compiled(&rewrite, &moves).unwrap();
                    let end =
                        crate::hurwitz::apply_sequence(&w1.to_factorization(), &moves).unwrap();
                    assert_eq!(end.tuple_key(), w2.to_factorization().tuple_key());
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn verify_rejects_wrong_moves() {
        let path = RewritePath {
            start: bw("3:2 2:1", 3),
            end: bw("3:1 3:2", 3),
            steps: vec![RelationStep {
                position: 1,
                rule: Rule::AtoB,
            }],
        };
        assert!(verify_compiled(&path, &[Move::inverse(1)]).is_err());
        assert!(verify_compiled(&path, &[]).is_err());
        assert!(verify_compiled(&path, &[Move::forward(1)]).is_ok());
    }

    #[test]
    fn commuting_swap_is_a_forward_move() {
        let x = BandGenerator::new(5, 4, n(5)).unwrap();
        let y = BandGenerator::new(3, 1, n(5)).unwrap();
        let f = Factorization::new(n(5), vec![x.expand(), y.expand()]).unwrap();
        let g = apply(&f, Move::forward(1)).unwrap();
        let swapped = Factorization::new(n(5), vec![y.expand(), x.expand()]).unwrap();
        assert_eq!(g.tuple_key(), swapped.tuple_key());
    }
}
