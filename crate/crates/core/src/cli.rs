//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 input error, 3 resource
//! error (index overflow). With `--json` every command prints a [`RunReport`].

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homs::{expand_from, verify_cube, verify_trapezoid, DiagramReport};
use crate::limits::{chi, conjugator_census, eq_pants, push, spanier_witness, ConjugateFactorization, ConjugatorCensus, PantsElement};
use crate::rewrite::{reduce, ReducedWord};
use crate::words::{Index, Letter, Word};

pub const SCHEMA: &str = "pants-calculus/1";
pub const DEFAULT_SAMPLES: u64 = 200;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "pants", version, about = "Word calculus for the Hawaiian pants alphabets")]
pub struct Cli {
    /// Print a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Diagram {
    Trapezoid,
    Cube,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximally cancel a word.
    Reduce { word: String },
    /// Apply D_{n+depth-1} ∘ ⋯ ∘ D_n.
    Expand {
        word: String,
        #[arg(long)]
        depth: u64,
        /// Level of the input word.
        #[arg(long, default_value_t = 1)]
        n: Index,
    },
    /// χ_m of a finite word at a level.
    Chi { level: Index, word: String, m: Index },
    /// Equality of two leveled words in the direct limit.
    Eq {
        level_a: Index,
        word_a: String,
        level_b: Index,
        word_b: String,
    },
    /// Factor a loop word into conjugates of loops of index ≥ threshold.
    Witness {
        word: String,
        #[arg(long)]
        threshold: Index,
    },
    /// Letter census, or with --depth the conjugator census of the witness.
    Census {
        word: String,
        #[arg(long)]
        depth: Option<u64>,
    },
    /// Check a diagram on random words.
    Verify {
        #[arg(value_enum)]
        diagram: Diagram,
        #[arg(long)]
        n: Index,
        #[arg(long)]
        k: Index,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: u64,
    },
    /// Witnesses succeed while χ stays nonempty, for each depth up to --depth.
    DemoNotinj {
        #[arg(long)]
        depth: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub result: Value,
    pub status: Status,
    pub seed: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceResult {
    pub input: Word,
    pub reduced: ReducedWord,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandResult {
    pub word: Word,
    pub level: Index,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiResult {
    pub m: Index,
    pub chi: Word,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqResult {
    pub equal: bool,
    pub level: Index,
    pub a: ReducedWord,
    pub b: ReducedWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterCensus {
    pub length: u64,
    pub signed: BTreeMap<String, u64>,
    pub unsigned: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemoRow {
    pub n: u64,
    pub threshold: Index,
    pub factors: u64,
    pub min_loop_index: Index,
    pub length: u64,
    pub witness_ok: bool,
    pub chi_length: u64,
    pub chi_nonempty: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemoResult {
    pub rows: Vec<DemoRow>,
    pub all_ok: bool,
}

struct Outcome {
    result: Value,
    status: Status,
    text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payloads serialize")
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn parse(text: &str) -> Result<Word> {
    Word::parse(text)
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Reduce { .. } => "reduce",
            Command::Expand { .. } => "expand",
            Command::Chi { .. } => "chi",
            Command::Eq { .. } => "eq",
            Command::Witness { .. } => "witness",
            Command::Census { .. } => "census",
            Command::Verify { .. } => "verify",
            Command::DemoNotinj { .. } => "demo-notinj",
        }
    }

    fn parameters(&self, seed: u64) -> BTreeMap<String, Value> {
        let v = match self {
            Command::Reduce { word } => json!({ "word": word }),
            Command::Expand { word, depth, n } => json!({ "word": word, "depth": depth, "n": n }),
            Command::Chi { level, word, m } => json!({ "level": level, "word": word, "m": m }),
            Command::Eq { level_a, word_a, level_b, word_b } => {
                json!({ "level_a": level_a, "word_a": word_a, "level_b": level_b, "word_b": word_b })
            }
            Command::Witness { word, threshold } => json!({ "word": word, "threshold": threshold }),
            Command::Census { word, depth } => json!({ "word": word, "depth": depth }),
            Command::Verify { diagram, n, k, samples } => json!({
                "diagram": format!("{diagram:?}").to_lowercase(),
                "n": n, "k": k, "samples": samples, "seed": seed,
            }),
            Command::DemoNotinj { depth } => json!({ "depth": depth }),
        };
        serde_json::from_value(v).expect("parameters are an object")
    }

    fn execute(&self, seed: u64) -> Result<Outcome> {
        match self {
            Command::Reduce { word } => {
                let input = parse(word)?;
                let reduced = reduce(&input);
                let text = reduced.to_string();
                let length = reduced.len() as u64;
                Ok(pass(to_value(&ReduceResult { input, reduced, length }), text))
            }
            Command::Expand { word, depth, n } => {
                let w = expand_from(&parse(word)?, *n, *depth)?;
                let text = w.to_string();
                let length = w.len();
                Ok(pass(to_value(&ExpandResult { word: w, level: n + depth, length }), text))
            }
            Command::Chi { level, word, m } => {
                let x = PantsElement::finite(*level, &parse(word)?)?;
                let c = chi(&x, *m)?;
                let text = c.to_string();
                let length = c.len();
                Ok(pass(to_value(&ChiResult { m: *m, chi: c, length }), text))
            }
            Command::Eq { level_a, word_a, level_b, word_b } => {
                let a = PantsElement::finite(*level_a, &parse(word_a)?)?;
                let b = PantsElement::finite(*level_b, &parse(word_b)?)?;
                let equal = eq_pants(&a, &b)?;
                let level = a.level.max(b.level);
                let (pa, pb) = (push(&a, level)?, push(&b, level)?);
                let result = EqResult {
                    equal,
                    level,
                    a: pa.word().cloned().unwrap_or_default(),
                    b: pb.word().cloned().unwrap_or_default(),
                };
                Ok(pass(to_value(&result), equal.to_string()))
            }
            Command::Witness { word, threshold } => {
                let w = reduce(&parse(word)?);
                let fac: ConjugateFactorization = spanier_witness(&w, *threshold)?;
                let v = to_value(&fac);
                Ok(pass(v.clone(), pretty(&v)))
            }
            Command::Census { word, depth } => {
                let w = parse(word)?;
                match depth {
                    Some(d) => {
                        let c: ConjugatorCensus = conjugator_census(&reduce(&w), *d)?;
                        let v = to_value(&c);
                        Ok(pass(v.clone(), pretty(&v)))
                    }
                    None => {
                        let census = w.census();
                        let result = LetterCensus {
                            length: w.len(),
                            signed: census.iter().map(|(l, c)| (l.to_string(), c)).collect(),
                            unsigned: census.unsigned().into_iter().map(|(g, c)| (g.to_string(), c)).collect(),
                        };
                        let v = to_value(&result);
                        Ok(pass(v.clone(), pretty(&v)))
                    }
                }
            }
            Command::Verify { diagram, n, k, samples } => {
                let report: DiagramReport = match diagram {
                    Diagram::Trapezoid => verify_trapezoid(*n, *k, *samples, seed)?,
                    Diagram::Cube => verify_cube(*n, *k, *samples, seed)?,
                };
                let status = if report.passed() { Status::Pass } else { Status::Fail };
                let v = to_value(&report);
                Ok(Outcome {
                    text: pretty(&v),
                    result: v,
                    status,
                })
            }
            Command::DemoNotinj { depth } => {
                let demo = demo_notinj(*depth)?;
                let mut text = String::new();
                for row in &demo.rows {
                    text.push_str(&format!(
                        "n = {:>2}: ℓ1 = product of {} conjugates of loops of index ≥ {} (length {}); witness {}, chi_{} has {} letters, chi {}\n",
                        row.n,
                        row.factors,
                        row.min_loop_index,
                        row.length,
                        if row.witness_ok { "ok" } else { "FAILED" },
                        row.n,
                        row.chi_length,
                        if row.chi_nonempty { "nonempty" } else { "EMPTY" },
                    ));
                }
                text.push_str(if demo.all_ok {
                    "[ℓ1] lies in every Spanier group level checked, yet its χ image is never trivial."
                } else {
                    "demonstration FAILED"
                });
                let status = if demo.all_ok { Status::Pass } else { Status::Fail };
                Ok(Outcome {
                    result: to_value(&demo),
                    status,
                    text,
                })
            }
        }
    }
}

fn pass(result: Value, text: String) -> Outcome {
    Outcome {
        result,
        status: Status::Pass,
        text,
    }
}

/// For each `n` in `1..=depth`: the witness for `ℓ₁` at threshold `n + 1`
/// has the closed-form shape, and `χ_n(ℓ₁)` is nonempty.
pub fn demo_notinj(depth: u64) -> Result<DemoResult> {
    let l1 = ReducedWord::new(Word::single(Letter::ell(1))).expect("single letters are reduced");
    let x = PantsElement::finite(1, l1.word())?;
    let mut rows = Vec::new();
    for n in 1..=depth {
        let threshold = n + 1;
        let fac = spanier_witness(&l1, threshold)?;
        let expanded_length = crate::homs::expand(l1.word(), n)?.len();
        let min_loop_index = fac.min_core_index().unwrap_or(0);
        let witness_ok = fac.factors.len() as u64 == n + 1
            && min_loop_index == threshold
            && expanded_length == 5 * n + 1;
        let c = chi(&x, n)?;
        rows.push(DemoRow {
            n,
            threshold,
            factors: fac.factors.len() as u64,
            min_loop_index,
            length: expanded_length,
            witness_ok,
            chi_length: c.len(),
            chi_nonempty: !c.is_empty(),
        });
    }
    let all_ok = rows.iter().all(|r| r.witness_ok && r.chi_nonempty);
    Ok(DemoResult { rows, all_ok })
}

fn exit_code(status: Status) -> u8 {
    match status {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Error => EXIT_INPUT,
    }
}

fn error_code(e: &Error) -> u8 {
    if e.is_resource() {
        EXIT_RESOURCE
    } else {
        EXIT_INPUT
    }
}

/// Runs one command, writing its output to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut impl Write) -> u8 {
    let start = Instant::now();
    let outcome = cli.command.execute(cli.seed);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let report = |result: Value, status: Status| RunReport {
        schema: SCHEMA.to_string(),
        command: cli.command.name().to_string(),
        parameters: cli.command.parameters(cli.seed),
        result,
        status,
        seed: cli.seed,
        elapsed_ms,
    };
    match outcome {
        Ok(o) => {
            let printed = if cli.json {
                writeln!(out, "{}", pretty(&to_value(&report(o.result, o.status))))
            } else {
                writeln!(out, "{}", o.text)
            };
            if printed.is_err() {
                return EXIT_RESOURCE;
            }
            exit_code(o.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.json {
                let result = json!({ "error": e.to_string() });
                let _ = writeln!(out, "{}", pretty(&to_value(&report(result, Status::Error))));
            }
            error_code(&e)
        }
    }
}
