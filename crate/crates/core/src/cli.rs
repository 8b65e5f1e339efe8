//! Command-line interface. [`run`] parses arguments and returns the exit
//! code with the rendered output, so the binary is a thin wrapper.
//!
//! Exit codes: 0 success (equal, found, accept), 1 a conclusive negative
//! answer, 2 inconclusive because a cap was hit, 3 malformed input.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::band::{conjugated_factorization, standard_factorization, BandGenerator, BandWord};
use crate::braid::{canonical_key, conjugate, equal, normal_form, parse_braid, StrandCount};
use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::hurwitz::{apply_sequence, orbit_explore, parse_moves, search_path, PathResult};
use crate::rewrite::{equivalence_class, hurwitz_path_positive, PositiveOutcome, SearchCaps};
use crate::semiframe::{band_subgraph_map, check_semiframe, CombMap, Mode};
use crate::verify::{run_suite, Suite, VerifyOptions, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

const DEFAULT_PATH_DEPTH_CAP: usize = 12;
const DEFAULT_PATH_SIZE_CAP: usize = 2_000_000;
const DEFAULT_ORBIT_SIZE_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "braidkit", version, about = "Braid group toolkit")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Number of strands.
    #[arg(long, global = true)]
    strands: Option<u64>,
    /// Maximum search depth.
    #[arg(long, global = true)]
    depth_cap: Option<usize>,
    /// Maximum number of stored states.
    #[arg(long, global = true)]
    size_cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Garside normal form of a braid word.
    Nf {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Decide whether two braid words are equal.
    Eq {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Conjugate x by g, giving g^-1 x g.
    Conj {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Expand a band word ("t:s" tokens) into Artin generators.
    BandExpand { band_word: String },
    /// The standard factorization of the full twist, optionally conjugated.
    Delta2 {
        #[arg(long, allow_hyphen_values = true)]
        conjugate: Option<String>,
    },
    /// Apply Hurwitz moves to a factorization file.
    HurwitzApply {
        file: PathBuf,
        /// JSON array of signed move indices, e.g. "[1,-2]".
        #[arg(long, allow_hyphen_values = true)]
        moves: String,
    },
    /// Search for Hurwitz moves between two factorization files.
    HurwitzPath { source: PathBuf, target: PathBuf },
    /// Explore the Hurwitz orbit of a factorization file.
    Orbit {
        file: PathBuf,
        /// Include every visited tuple key.
        #[arg(long)]
        keys: bool,
    },
    /// Closure of a positive band word under single relation rewrites.
    RewriteClass { band_word: String },
    /// Hurwitz moves between two equal positive band words.
    PositivePath { left: String, right: String },
    /// Check the semi-frame criterion on a map file or a set of band chords.
    Semiframe {
        file: Option<PathBuf>,
        /// Band generators drawn as chords, e.g. "3:1 4:2".
        #[arg(long, conflicts_with = "file")]
        band: Option<String>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Include the map in the output.
        #[arg(long)]
        emit_map: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        length: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Fixed,
    Free,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub payload: Value,
    /// What the binary prints on standard output.
    pub output: String,
}

/// Runs one command line (the first item is the program name).
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        // help and version requests
        Err(e) if !e.use_stderr() => {
            return CommandResult {
                exit_code: EXIT_OK,
                payload: Value::Null,
                output: e.render().to_string(),
            };
        }
        Err(e) => {
            let payload = json!({ "error": e.render().to_string().trim_end() });
            return CommandResult {
                exit_code: EXIT_INPUT,
                output: render(&payload, Format::Json),
                payload,
            };
        }
    };
    let format = cli.common.format;
    let outcome = match cli.common.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Input(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli),
    };
    let (exit_code, payload) = match outcome {
        Ok(pair) => pair,
        Err(e) => (EXIT_INPUT, json!({ "error": e.to_string() })),
    };
    let output = render(&payload, format);
    CommandResult {
        exit_code,
        payload,
        output,
    }
}

/// JSON on one line, or one `key: value` line per top-level field.
pub fn render(payload: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(payload).expect("values serialize"),
        Format::Text => match payload {
            Value::Object(map) => map
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}: {s}"),
                    other => format!("{k}: {other}"),
                })
                .collect::<Vec<_>>()
                .join("\n"),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        },
    }
}

fn strands(common: &Common) -> Result<StrandCount> {
    match common.strands {
        Some(n) => StrandCount::new(n),
        None => Err(Error::Input("--strands is required".to_string())),
    }
}

fn read_input(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Input(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn read_factorization(path: &PathBuf, common: &Common) -> Result<Factorization> {
    let f = Factorization::from_json(&read_input(path)?)?;
    if let Some(n) = common.strands {
        if n != f.strands().get() as u64 {
            return Err(Error::StrandMismatch {
                left: n.min(u16::MAX as u64) as u16,
                right: f.strands().get(),
            });
        }
    }
    Ok(f)
}

fn factorization_value(f: &Factorization) -> Value {
    serde_json::to_value(f.to_file()).expect("plain data serializes")
}

fn dispatch(cli: &Cli) -> Result<(i32, Value)> {
    let common = &cli.common;
    match &cli.command {
        Command::Nf { word } => {
            let n = strands(common)?;
            let w = parse_braid(word, n)?;
            let nf = normal_form(&w);
            let factors: Vec<String> = nf.factors().iter().map(|p| p.to_string()).collect();
            Ok((
                EXIT_OK,
                json!({
                    "strands": n.get(),
                    "delta_power": nf.delta_power(),
                    "factors": factors,
                    "canonical_length": nf.canonical_length(),
                    "word": nf.to_word().to_string(),
                    "key": nf.key(),
                }),
            ))
        }
        Command::Eq { left, right } => {
            let n = strands(common)?;
            let (u, v) = (parse_braid(left, n)?, parse_braid(right, n)?);
            let same = equal(&u, &v)?;
            Ok((
                if same { EXIT_OK } else { EXIT_NO },
                json!({
                    "equal": same,
                    "left_key": canonical_key(&u),
                    "right_key": canonical_key(&v),
                }),
            ))
        }
        Command::Conj { x, g } => {
            let n = strands(common)?;
            let c = conjugate(&parse_braid(x, n)?, &parse_braid(g, n)?)?;
            Ok((
                EXIT_OK,
                json!({ "word": c.to_string(), "key": canonical_key(&c) }),
            ))
        }
        Command::BandExpand { band_word } => {
            let n = strands(common)?;
            let w = BandWord::parse(band_word, n)?;
            Ok((
                EXIT_OK,
                json!({ "band_word": w.to_string(), "word": w.expand().to_string() }),
            ))
        }
        Command::Delta2 { conjugate } => {
            let n = strands(common)?;
            let f = match conjugate {
                Some(b) => conjugated_factorization(n, &parse_braid(b, n)?)?,
                None => standard_factorization(n),
            };
            Ok((EXIT_OK, factorization_value(&f)))
        }
        Command::HurwitzApply { file, moves } => {
            let f = read_factorization(file, common)?;
            let moves = parse_moves(moves)?;
            Ok((EXIT_OK, factorization_value(&apply_sequence(&f, &moves)?)))
        }
        Command::HurwitzPath { source, target } => {
            let f1 = read_factorization(source, common)?;
            let f2 = read_factorization(target, common)?;
            let depth_cap = common.depth_cap.unwrap_or(DEFAULT_PATH_DEPTH_CAP);
            let size_cap = common.size_cap.unwrap_or(DEFAULT_PATH_SIZE_CAP);
            let report = search_path(&f1, &f2, depth_cap, size_cap)?;
            let mut out = Map::new();
            let code = match &report.result {
                PathResult::Found(moves) => {
                    out.insert("result".into(), json!("found"));
                    out.insert("length".into(), json!(moves.len()));
                    out.insert("moves".into(), json!(moves));
                    EXIT_OK
                }
                PathResult::NotFound { orbit_closed } => {
                    out.insert("result".into(), json!("not_found"));
                    out.insert("orbit_closed".into(), json!(orbit_closed));
                    if *orbit_closed {
                        EXIT_NO
                    } else {
                        EXIT_INCONCLUSIVE
                    }
                }
                PathResult::NotComparable => {
                    out.insert("result".into(), json!("different_products"));
                    EXIT_NO
                }
            };
            out.insert("visited".into(), json!(report.visited));
            out.insert("depth_cap".into(), json!(depth_cap));
            out.insert("size_cap".into(), json!(size_cap));
            Ok((code, Value::Object(out)))
        }
        Command::Orbit { file, keys } => {
            let f = read_factorization(file, common)?;
            let depth_cap = common.depth_cap.unwrap_or(usize::MAX);
            let size_cap = common.size_cap.unwrap_or(DEFAULT_ORBIT_SIZE_CAP);
            let report = orbit_explore(&f, depth_cap, size_cap);
            let mut value = serde_json::to_value(&report).expect("plain data serializes");
            if !keys {
                value.as_object_mut().expect("struct").remove("keys");
            }
            let code = if report.truncated {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Ok((code, value))
        }
        Command::RewriteClass { band_word } => {
            let n = strands(common)?;
            let w = BandWord::parse(band_word, n)?;
            let size_cap = common.size_cap.unwrap_or(SearchCaps::default().size);
            let report = equivalence_class(&w, size_cap);
            let words: Vec<String> = report.words.iter().map(|w| w.to_string()).collect();
            let code = if report.truncated {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Ok((
                code,
                json!({ "size": words.len(), "truncated": report.truncated, "words": words }),
            ))
        }
        Command::PositivePath { left, right } => {
            let n = strands(common)?;
            let (w1, w2) = (BandWord::parse(left, n)?, BandWord::parse(right, n)?);
            let d = SearchCaps::default();
            let caps = SearchCaps {
                depth: common.depth_cap.unwrap_or(d.depth),
                size: common.size_cap.unwrap_or(d.size),
            };
            Ok(match hurwitz_path_positive(&w1, &w2, caps)? {
                PositiveOutcome::Found { rewrite, moves } => {
                    let words: Vec<String> =
                        rewrite.words()?.iter().map(|w| w.to_string()).collect();
                    (
                        EXIT_OK,
                        json!({
                            "result": "found",
                            "steps": rewrite.steps,
                            "words": words,
                            "moves": moves,
                        }),
                    )
                }
                PositiveOutcome::NotEqual => (EXIT_NO, json!({ "result": "not_equal" })),
                PositiveOutcome::Truncated => (EXIT_INCONCLUSIVE, json!({ "result": "truncated" })),
            })
        }
        Command::Semiframe {
            file,
            band,
            mode,
            emit_map,
        } => {
            let mut map: CombMap = match (file, band) {
                (Some(path), None) => serde_json::from_str(&read_input(path)?)
                    .map_err(|e| Error::Input(format!("map: {e}")))?,
                (None, Some(text)) => {
                    let n = strands(common)?;
                    let set = text
                        .split_whitespace()
                        .map(|tok| BandGenerator::parse(tok, n))
                        .collect::<Result<Vec<_>>>()?;
                    band_subgraph_map(n, &set)?
                }
                _ => return Err(Error::Input("give a map file or --band".to_string())),
            };
            match mode {
                Some(ModeArg::Fixed) => map.mode = Mode::Fixed,
                Some(ModeArg::Free) => map.mode = Mode::Free,
                None => {}
            }
            let verdict = check_semiframe(&map)?;
            let code = if verdict.is_accept() {
                EXIT_OK
            } else {
                EXIT_NO
            };
            let mut value = serde_json::to_value(&verdict).expect("plain data serializes");
            if *emit_map {
                value.as_object_mut().expect("tagged enum").insert(
                    "map".into(),
                    serde_json::to_value(&map).expect("plain data serializes"),
                );
            }
            Ok((code, value))
        }
        Command::Verify {
            suite,
            samples,
            length,
        } => {
            let suite: Suite = suite.parse()?;
            let mut opts = VerifyOptions::new(strands(common)?);
            opts.seed = common.seed;
            opts.depth_cap = common.depth_cap;
            opts.size_cap = common.size_cap;
            opts.samples = *samples;
            opts.length = *length;
            let report = run_suite(suite, &opts)?;
            let code = if report.passed { EXIT_OK } else { EXIT_NO };
            Ok((
                code,
                serde_json::to_value(&report).expect("plain data serializes"),
            ))
        }
    }
}
