//! Self-check suites run by `braidkit verify`.
//!
//! Every suite is deterministic for a given seed and reports the number of
//! checks made, the failures found, and a few suite-specific counts.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::band::{
    all_generators, band_relations_hold, conjugated_factorization, delta_squared_word, is_central,
    standard_band_word, standard_factorization, BandWord,
};
use crate::braid::{artin_action, ArtinLetter, BraidWord, FreeWord, StrandCount};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::hurwitz::{apply, apply_sequence, find_path, Move, PathResult};
use crate::rewrite::{
    compile, equivalence_class, hurwitz_path_positive, neighbors, partition_by_closure,
    verify_compiled, PositiveOutcome, RewritePath, SearchCaps,
};

pub const DEFAULT_SEED: u64 = 0x5eed_b4a1d;

/// A verification suite; [`Suite::name`] is its command-line name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Centrality,
    CompiledRewrites,
    Embedding,
    FullTwistClosure,
    ConjugatedPaths,
    ActionAxioms,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Relations,
        Suite::Centrality,
        Suite::CompiledRewrites,
        Suite::Embedding,
        Suite::FullTwistClosure,
        Suite::ConjugatedPaths,
        Suite::ActionAxioms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Centrality => "centrality",
            Suite::CompiledRewrites => "lemma32",
            Suite::Embedding => "embedding",
            Suite::FullTwistClosure => "cor35",
            Suite::ConjugatedPaths => "thm37",
            Suite::ActionAxioms => "action-axioms",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse {
                token: s.to_string(),
                reason: format!(
                    "unknown suite (expected one of {})",
                    Suite::ALL.map(Suite::name).join(", ")
                ),
            })
    }
}

/// Knobs shared by the suites. `None` picks the suite's default.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub strands: StrandCount,
    pub seed: u64,
    pub depth_cap: Option<usize>,
    pub size_cap: Option<usize>,
    /// Number of random samples (pairs, trials).
    pub samples: Option<usize>,
    /// Word length for the rewriting suites.
    pub length: Option<usize>,
}

impl VerifyOptions {
    pub fn new(strands: StrandCount) -> Self {
        VerifyOptions {
            strands,
            seed: DEFAULT_SEED,
            depth_cap: None,
            size_cap: None,
            samples: None,
            length: None,
        }
    }

    fn caps(&self) -> SearchCaps {
        let d = SearchCaps::default();
        SearchCaps {
            depth: self.depth_cap.unwrap_or(d.depth),
            size: self.size_cap.unwrap_or(d.size),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub strands: u16,
    pub seed: u64,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub details: BTreeMap<String, Value>,
}

struct Tally {
    checks: usize,
    failures: Vec<String>,
    details: BTreeMap<String, Value>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn detail(&mut self, key: &str, value: Value) {
        self.details.insert(key.to_string(), value);
    }

    fn finish(self, suite: Suite, opts: &VerifyOptions) -> SuiteReport {
        SuiteReport {
            suite,
            strands: opts.strands.get(),
            seed: opts.seed,
            passed: self.failures.is_empty(),
            checks: self.checks,
            failures: self.failures,
            details: self.details,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    match suite {
        Suite::Relations => relations(opts, &mut tally),
        Suite::Centrality => centrality(opts, &mut tally),
        Suite::CompiledRewrites => compiled_rewrites(opts, &mut tally)?,
        Suite::Embedding => embedding(opts, &mut tally)?,
        Suite::FullTwistClosure => full_twist_closure(opts, &mut tally)?,
        Suite::ConjugatedPaths => conjugated_paths(opts, &mut tally)?,
        Suite::ActionAxioms => action_axioms(opts, &mut tally)?,
    }
    Ok(tally.finish(suite, opts))
}

fn relations(opts: &VerifyOptions, tally: &mut Tally) {
    if opts.strands.get() < 3 {
        tally.detail("note", json!("no relations below 3 strands"));
        return;
    }
    let report = band_relations_hold(opts.strands);
    tally.checks += 2 * report.triples + report.commuting_pairs;
    tally.failures.extend(report.failures.iter().cloned());
    tally.detail("triples", json!(report.triples));
    tally.detail("triple_equalities", json!(report.triple_equalities));
    tally.detail("commuting_pairs", json!(report.commuting_pairs));
}

fn centrality(opts: &VerifyOptions, tally: &mut Tally) {
    let n = opts.strands.get() as i64;
    let d2 = delta_squared_word(opts.strands);
    tally.check(is_central(&d2), || "full twist is not central".to_string());
    let sum = d2.exponent_sum();
    tally.check(sum == n * (n - 1), || {
        format!("exponent sum {sum}, expected {}", n * (n - 1))
    });
    tally.detail("exponent_sum", json!(sum));
    tally.detail("length", json!(d2.len()));
}

fn random_band_word(rng: &mut ChaCha8Rng, strands: StrandCount, len: usize) -> BandWord {
    let gens = all_generators(strands);
    let letters = (0..len)
        .map(|_| *gens.choose(rng).expect("at least one generator"))
        .collect();
    BandWord::new(strands, letters).expect("generators share the strand count")
}

/// A random walk of relation steps, kept as a rewrite path.
fn random_rewrite(rng: &mut ChaCha8Rng, start: BandWord, steps: usize) -> RewritePath {
    let mut path = RewritePath {
        start: start.clone(),
        end: start,
        steps: Vec::new(),
    };
    for _ in 0..steps {
        let options = neighbors(&path.end);
        let Some((next, step)) = options.choose(rng).cloned() else {
            break;
        };
        path.end = next;
        path.steps.push(step);
    }
    path
}

fn compiled_rewrites(opts: &VerifyOptions, tally: &mut Tally) -> Result<()> {
    let pairs = opts.samples.unwrap_or(100);
    let len = opts.length.unwrap_or(6);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut total_moves = 0;
    for i in 0..pairs {
        let w = random_band_word(&mut rng, opts.strands, len);
        let walk = random_rewrite(&mut rng, w.clone(), 2 * len);
        let walk_moves = compile(&walk);
        let replayed = verify_compiled(&walk, &walk_moves);
        tally.check(replayed.is_ok(), || {
            format!("pair {i}: random walk replay: {:?}", replayed)
        });
        match hurwitz_path_positive(&walk.start, &walk.end, opts.caps())? {
            PositiveOutcome::Found { moves, .. } => {
                total_moves += moves.len();
                let end = apply_sequence(&walk.start.to_factorization(), &moves)?;
                let target = walk.end.to_factorization();
                tally.check(end.tuple_key() == target.tuple_key(), || {
                    format!("pair {i}: moves do not reach {}", walk.end)
                });
            }
            other => tally.check(false, || {
                format!("pair {i}: {} -> {}: {:?}", walk.start, walk.end, other)
            }),
        }
    }
    tally.detail("pairs", json!(pairs));
    tally.detail("length", json!(len));
    tally.detail("shortest_moves_total", json!(total_moves));
    Ok(())
}

fn all_band_words(strands: StrandCount, len: usize) -> Vec<BandWord> {
    let gens = all_generators(strands);
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                gens.iter().map(move |&g| {
                    let mut next = w.clone();
                    next.push(g);
                    next
                })
            })
            .collect();
    }
    words
        .into_iter()
        .map(|letters| BandWord::new(strands, letters).expect("valid generators"))
        .collect()
}

fn embedding(opts: &VerifyOptions, tally: &mut Tally) -> Result<()> {
    let max_len = opts.length.unwrap_or(4);
    let size_cap = opts.size_cap.unwrap_or(SearchCaps::default().size);
    let mut class_counts = Vec::new();
    for len in 1..=max_len {
        let words = all_band_words(opts.strands, len);
        let (class_of, truncated) = partition_by_closure(&words, size_cap);
        tally.check(!truncated, || format!("length {len}: closure truncated"));
        // Two words are equal in the group iff their Artin actions agree.
        let mut by_image: HashMap<Vec<FreeWord>, usize> = HashMap::new();
        let mut pairs_seen: HashSet<(usize, usize)> = HashSet::new();
        for w in &words {
            let fresh = by_image.len();
            let image_class = *by_image.entry(artin_action(&w.expand())).or_insert(fresh);
            pairs_seen.insert((class_of[w], image_class));
        }
        let closures: HashSet<usize> = class_of.values().copied().collect();
        tally.check(pairs_seen.len() == closures.len(), || {
            format!("length {len}: some closure holds words with different products")
        });
        tally.check(pairs_seen.len() == by_image.len(), || {
            format!("length {len}: some product is split across several closures")
        });
        class_counts.push(json!({"length": len, "words": words.len(), "classes": closures.len()}));
    }
    tally.detail("lengths", Value::Array(class_counts));
    if opts.strands.get() >= 3 {
        let w = BandWord::parse("3:2 2:1", opts.strands)?;
        let size = equivalence_class(&w, size_cap).words.len();
        tally.check(size == 3, || {
            format!("closure of 3:2 2:1 has {size} words, expected 3")
        });
    }
    Ok(())
}

fn full_twist_closure(opts: &VerifyOptions, tally: &mut Tally) -> Result<()> {
    let caps = opts.caps();
    let standard = standard_band_word(opts.strands);
    let target = standard_factorization(opts.strands).tuple_key();
    let class = equivalence_class(&standard, caps.size);
    tally.check(!class.truncated, || "closure truncated".to_string());
    tally.detail("closure_size", json!(class.words.len()));
    let mut longest = 0;
    for member in &class.words {
        match hurwitz_path_positive(member, &standard, caps)? {
            PositiveOutcome::Found { moves, .. } => {
                longest = longest.max(moves.len());
                let end = apply_sequence(&member.to_factorization(), &moves)?;
                tally.check(end.tuple_key() == target, || {
                    format!("{member}: replay misses")
                });
            }
            other => tally.check(false, || format!("{member}: {other:?}")),
        }
    }
    tally.detail("longest_path", json!(longest));
    Ok(())
}

pub const CONJUGATED_PATH_DEPTH_CAP: usize = 6;
pub const CONJUGATED_PATH_SIZE_CAP: usize = 2_000_000;

fn conjugated_paths(opts: &VerifyOptions, tally: &mut Tally) -> Result<()> {
    let depth_cap = opts.depth_cap.unwrap_or(CONJUGATED_PATH_DEPTH_CAP);
    let size_cap = opts.size_cap.unwrap_or(CONJUGATED_PATH_SIZE_CAP);
    let standard = standard_factorization(opts.strands);
    let mut lengths = BTreeMap::new();
    for i in 1..opts.strands.get() {
        let b = BraidWord::generator(opts.strands, i)?;
        let target = conjugated_factorization(opts.strands, &b)?;
        match find_path(&standard, &target, depth_cap, size_cap)? {
            PathResult::Found(moves) => {
                let end = apply_sequence(&standard, &moves)?;
                tally.check(end.tuple_key() == target.tuple_key(), || {
                    format!("b = {b}: replay misses")
                });
                lengths.insert(format!("sigma{i}"), json!(moves.len()));
            }
            other => tally.check(false, || format!("b = {b}: {other:?}")),
        }
    }
    tally.detail("path_lengths", json!(lengths));
    tally.detail("depth_cap", json!(depth_cap));
    tally.detail("size_cap", json!(size_cap));
    Ok(())
}

fn random_word(rng: &mut ChaCha8Rng, strands: StrandCount, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands.get());
            if rng.gen() {
                ArtinLetter::pos(i)
            } else {
                ArtinLetter::neg(i)
            }
        })
        .collect();
    BraidWord::new(strands, letters).expect("indices in range")
}

fn random_tuple(rng: &mut ChaCha8Rng, strands: StrandCount, len: usize) -> Factorization {
    let factors = (0..len).map(|_| random_word(rng, strands, 4)).collect();
    Factorization::new(strands, factors).expect("same strands")
}

fn run_moves(f: &Factorization, moves: &[Move]) -> Result<String> {
    Ok(apply_sequence(f, moves)?.tuple_key())
}

fn action_axioms(opts: &VerifyOptions, tally: &mut Tally) -> Result<()> {
    let trials = opts.samples.unwrap_or(1000);
    let strands = opts.strands;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for trial in 0..trials {
        let len = rng.gen_range(3..=5);
        let f = random_tuple(&mut rng, strands, len);
        let key = f.tuple_key();
        let k = rng.gen_range(1..len);
        let there_and_back = run_moves(&f, &[Move::forward(k), Move::inverse(k)])?;
        let back_and_there = run_moves(&f, &[Move::inverse(k), Move::forward(k)])?;
        tally.check(there_and_back == key && back_and_there == key, || {
            format!("trial {trial}: R{k} and its inverse do not cancel on {key}")
        });
        let k = rng.gen_range(1..len - 1);
        let (a, b) = (Move::forward(k), Move::forward(k + 1));
        tally.check(
            run_moves(&f, &[a, b, a])? == run_moves(&f, &[b, a, b])?,
            || {
                format!(
                    "trial {trial}: braid relation of R{k}, R{} fails on {key}",
                    k + 1
                )
            },
        );
        if len >= 4 {
            let j = rng.gen_range(1..len - 2);
            let k = rng.gen_range(j + 2..len);
            let (a, b) = (Move::forward(j), Move::forward(k));
            tally.check(run_moves(&f, &[a, b])? == run_moves(&f, &[b, a])?, || {
                format!("trial {trial}: R{j} and R{k} do not commute on {key}")
            });
        }
    }
    for trial in 0..trials {
        let len = rng.gen_range(2..=5);
        let mut f = random_tuple(&mut rng, strands, len);
        let product = f.product_key().to_string();
        let mut ok = true;
        for _ in 0..10 {
            let k = rng.gen_range(1..len);
            let m = if rng.gen() {
                Move::forward(k)
            } else {
                Move::inverse(k)
            };
            f = apply(&f, m)?;
            ok &= f.recompute_product_key() == product;
        }
        tally.check(ok, || format!("sequence trial {trial}: product changed"));
    }
    tally.detail("trials", json!(trials));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(k: u64) -> VerifyOptions {
        VerifyOptions::new(StrandCount::new(k).unwrap())
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("lemma".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for suite in [Suite::Relations, Suite::Centrality, Suite::ConjugatedPaths] {
            let r = run_suite(suite, &opts(3)).unwrap();
            assert!(r.passed, "{suite}: {:?}", r.failures);
        }
        let mut o = opts(4);
        o.samples = Some(20);
        assert!(run_suite(Suite::ActionAxioms, &o).unwrap().passed);
        o.samples = Some(5);
        o.length = Some(4);
        assert!(run_suite(Suite::CompiledRewrites, &o).unwrap().passed);
    }

    #[test]
    fn embedding_small() {
        let mut o = opts(3);
        o.length = Some(3);
        let r = run_suite(Suite::Embedding, &o).unwrap();
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn reports_are_reproducible() {
        let mut o = opts(4);
        o.samples = Some(10);
        let a = serde_json::to_string(&run_suite(Suite::ActionAxioms, &o).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::ActionAxioms, &o).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
