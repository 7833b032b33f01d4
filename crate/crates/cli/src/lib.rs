//! The `vt` command line.
//!
//! [`run`] parses arguments and returns the exit code together with
//! everything that would be written to stdout and stderr, so the binary is a
//! thin wrapper and tests can call commands in-process.
//!
//! Exit codes: 0 success, 1 empty decode list or failed check, 2 usage error.

pub mod channel;
pub mod simulate;
pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use vtlist::bounds::{
    evaluate, radius_curves, sweep, BoundReport, CodeParams, CurvePoint, SweepGrid,
};
use vtlist::list_decoder::{deletions_only_list_decode, list_decode_general, list_decode_tau2};
use vtlist::sequences::{deletion_ball, insertion_ball, insertion_ball_size, levenshtein_ball};
use vtlist::{Error, VtCode, VtDecodeTrace, Word};

use crate::simulate::{SimulationConfig, SimulationError};
use crate::verify::MAX_VERIFY_N;

#[derive(Debug, Parser)]
#[command(
    name = "vt",
    version,
    about = "Varshamov-Tenengolts codes: encoding, unique and list decoding, list-size bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BallKind {
    /// Words within indel distance `radius`.
    Levenshtein,
    /// Subsequences of length at least `|word| - radius`.
    Deletion,
    /// Supersequences of length at most `|word| + radius`.
    Insertion,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Codeword number INDEX of VT_a(n) in lexicographic order.
    Encode {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long)]
        index: u128,
    },
    /// Unique decoding of at most one insertion or deletion.
    Decode {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, value_parser = parse_word)]
        word: Word,
    },
    /// All codewords within indel distance TAU, as a JSON array sorted by
    /// (distance, codeword).
    ListDecode {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, value_parser = parse_word)]
        word: Word,
        #[arg(long, default_value_t = 2)]
        tau: usize,
        /// Only deletions occurred: list every codeword containing WORD.
        #[arg(long, conflicts_with = "tau")]
        deletions_only: bool,
    },
    /// Every codeword of VT_a(n), one per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        /// Print only the number of codewords, as JSON.
        #[arg(long)]
        count: bool,
    },
    /// Johnson-like radii and list-size bounds at one parameter point, as JSON.
    Bounds {
        #[arg(long)]
        n: usize,
        /// Received length.
        #[arg(long = "N")]
        received_len: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long)]
        tau: usize,
    },
    /// Bounds over a parameter grid as CSV. Grid points with an invalid
    /// combination are skipped.
    Sweep {
        #[arg(long, value_delimiter = ',', required_unless_present = "curves")]
        n: Vec<usize>,
        /// Values of N - n.
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            default_value = "0"
        )]
        shift: Vec<i64>,
        #[arg(long, value_delimiter = ',', default_value = "4")]
        d: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        tau: Vec<usize>,
        /// Emit the normalised radius curves over d/2n instead: alphabet-free
        /// for N - n in {-n/2, 0, n}, and binary for N = n.
        #[arg(long, conflicts_with_all = ["n", "shift", "d", "q", "tau"])]
        curves: bool,
        /// Number of steps over d/2n in [0, 1] for --curves.
        #[arg(long, default_value_t = 100, requires = "curves")]
        steps: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive checks of decoders and bounds for code lengths up to N_MAX.
    Verify {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(4..=MAX_VERIFY_N as u64))]
        n_max: u64,
    },
    /// Monte-Carlo channel simulation.
    ///
    /// Each trial draws a uniform codeword, deletes DEL distinct uniformly
    /// chosen symbols, then inserts INS uniform symbols at uniform gaps
    /// (for radius guarantees the order does not matter). Randomness is
    /// ChaCha8 seeded with SEED + trial index, so results are independent
    /// of thread count.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "del", default_value_t = 0)]
        deletions: usize,
        #[arg(long = "ins", default_value_t = 0)]
        insertions: usize,
        /// List-decoding radius.
        #[arg(long, default_value_t = 2)]
        tau: usize,
    },
    /// Size of an error ball around a word, optionally with a membership test.
    Ball {
        #[arg(long, value_parser = parse_word)]
        word: Word,
        #[arg(long)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = BallKind::Levenshtein)]
        kind: BallKind,
        #[arg(long, value_parser = parse_word)]
        member: Option<Word>,
        /// Include every word of the ball in the output.
        #[arg(long)]
        list: bool,
    },
}

fn parse_word(s: &str) -> Result<Word, String> {
    Word::parse(s, 2).map_err(|e| e.to_string())
}

/// Result of one command-line invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Failed { stdout: String, message: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotDecodable => Failure::Failed {
                stdout: String::new(),
                message: e.to_string(),
            },
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serialises");
    s.push('\n');
    s
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match execute(cli.command) {
        Ok(stdout) => Outcome::ok(stdout),
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Failed { stdout, message }) => Outcome {
            code: 1,
            stdout,
            stderr: format!("{message}\n"),
        },
    }
}

#[derive(Serialize)]
struct Encoded<'a> {
    n: usize,
    a: usize,
    index: u128,
    codeword: &'a Word,
}

#[derive(Serialize)]
struct Decoded<'a> {
    received: &'a Word,
    codeword: Word,
    /// `deletion`, `insertion` or `none`.
    error: &'static str,
    trace: Option<VtDecodeTrace>,
}

#[derive(Serialize)]
struct Cardinality {
    n: usize,
    a: usize,
    cardinality: u128,
}

#[derive(Serialize)]
struct BallReport {
    center: Word,
    radius: usize,
    kind: &'static str,
    size: usize,
    /// Closed-form size, for insertion balls.
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    member: Option<Word>,
    #[serde(skip_serializing_if = "Option::is_none")]
    contains: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    words: Option<Vec<Word>>,
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Encode { n, a, index } => {
            let code = VtCode::new(n, a)?;
            let codeword = code.encode(index)?;
            Ok(json_line(&Encoded {
                n,
                a,
                index,
                codeword: &codeword,
            }))
        }
        Command::Decode { n, a, word } => {
            let code = VtCode::new(n, a)?;
            let decoded = match word.len() {
                len if len + 1 == n => {
                    let (codeword, trace) = code.decode_single_deletion(&word)?;
                    Decoded {
                        received: &word,
                        codeword,
                        error: "deletion",
                        trace: Some(trace),
                    }
                }
                len if len == n + 1 => {
                    let codeword = code.decode_single_insertion(&word)?;
                    Decoded {
                        received: &word,
                        codeword,
                        error: "insertion",
                        trace: None,
                    }
                }
                len if len == n => {
                    if !code.contains(&word) {
                        return Err(Error::NotDecodable.into());
                    }
                    Decoded {
                        received: &word,
                        codeword: word.clone(),
                        error: "none",
                        trace: None,
                    }
                }
                len => {
                    return Err(Failure::Usage(format!(
                        "received length {len} is not within one of n={n}"
                    )))
                }
            };
            Ok(json_line(&decoded))
        }
        Command::ListDecode {
            n,
            a,
            word,
            tau,
            deletions_only,
        } => {
            let code = VtCode::new(n, a)?;
            let list = if deletions_only {
                let delta = n.checked_sub(word.len()).ok_or_else(|| {
                    Failure::Usage(format!("received length {} exceeds n={n}", word.len()))
                })?;
                deletions_only_list_decode(&code, &word, delta)?
            } else if tau == 2 {
                list_decode_tau2(&code, &word)?
            } else {
                list_decode_general(&code, &word, tau)?
            };
            let stdout = json_line(&list.entries());
            if list.is_empty() {
                return Err(Failure::Failed {
                    stdout,
                    message: "no codeword within radius".into(),
                });
            }
            Ok(stdout)
        }
        Command::Enumerate { n, a, count } => {
            let code = VtCode::new(n, a)?;
            if count {
                return Ok(json_line(&Cardinality {
                    n,
                    a,
                    cardinality: code.cardinality()?,
                }));
            }
            let mut out = String::new();
            for c in code.enumerate()? {
                writeln!(out, "{c}").expect("writing to a String");
            }
            Ok(out)
        }
        Command::Bounds {
            n,
            received_len,
            d,
            q,
            tau,
        } => {
            let p = CodeParams::new(n, received_len, d, q, tau)?;
            Ok(json_line(&evaluate(&p)))
        }
        Command::Sweep {
            n,
            shift,
            d,
            q,
            tau,
            curves,
            steps,
            out,
        } => {
            let csv = if curves {
                if steps == 0 {
                    return Err(Failure::Usage("--steps must be positive".into()));
                }
                csv_table(
                    CurvePoint::CSV_HEADER,
                    radius_curves(steps).iter().map(CurvePoint::to_csv_row),
                )
            } else {
                let grid = SweepGrid {
                    n,
                    shift,
                    d,
                    q,
                    tau,
                };
                let rows = sweep(&grid.points());
                csv_table(
                    BoundReport::CSV_HEADER,
                    rows.iter().map(BoundReport::to_csv_row),
                )
            };
            match out {
                None => Ok(csv),
                Some(path) => match std::fs::write(&path, csv) {
                    Ok(()) => Ok(String::new()),
                    Err(e) => Err(Failure::Failed {
                        stdout: String::new(),
                        message: format!("cannot write {}: {e}", path.display()),
                    }),
                },
            }
        }
        Command::Verify { n_max } => {
            let results = verify::verify(n_max as usize);
            let mut out = String::new();
            for r in &results {
                writeln!(out, "{}", r.line()).expect("writing to a String");
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Failure::Failed {
                    stdout: out,
                    message: format!("{failed} suite(s) failed"),
                });
            }
            Ok(out)
        }
        Command::Simulate {
            n,
            a,
            trials,
            seed,
            deletions,
            insertions,
            tau,
        } => {
            let cfg = SimulationConfig {
                n,
                a,
                trials,
                seed,
                deletions,
                insertions,
                tau,
            };
            match simulate::simulate(&cfg) {
                Ok(report) => Ok(json_line(&report)),
                Err(SimulationError::Params(e)) => Err(Failure::Usage(e.to_string())),
                Err(e @ SimulationError::Violation { .. }) => Err(Failure::Failed {
                    stdout: String::new(),
                    message: e.to_string(),
                }),
            }
        }
        Command::Ball {
            word,
            radius,
            kind,
            member,
            list,
        } => {
            let (name, ball, formula) = match kind {
                BallKind::Levenshtein => ("levenshtein", levenshtein_ball(&word, radius), None),
                BallKind::Deletion => ("deletion", deletion_ball(&word, radius)?, None),
                BallKind::Insertion => (
                    "insertion",
                    insertion_ball(&word, radius),
                    Some(insertion_ball_size(word.len(), radius, 2)?),
                ),
            };
            let contains = member.as_ref().map(|m| ball.contains(m));
            Ok(json_line(&BallReport {
                center: word,
                radius,
                kind: name,
                size: ball.len(),
                formula,
                member,
                contains,
                words: list.then(|| ball.into_iter().collect()),
            }))
        }
    }
}

fn csv_table(header: &str, rows: impl Iterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}
