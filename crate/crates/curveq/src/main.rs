//! Command-line front end. Exit codes: 0 for success / positive verdicts,
//! 1 for negative verdicts (refutation, inequivalence, failed battery),
//! 2 for usage or parse errors.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use curveq::heights::{self, parse_points};
use curveq::homology::{GeneratorImageMap, HomologyVector};
use curveq::pants::{arc_tuple, si_equivalent_in_pants, BoundaryConvention};
use curveq::pit::pit_trace_equiv;
use curveq::sl2::SamplerConfig;
use curveq::verify::run_paper_battery;
use curveq::word::{are_conjugate, cyclic_reduce, Generator, Word};
use curveq::{trace_polynomial, trace_square_equivalent};

#[derive(Parser)]
#[command(name = "curveq", version, about = "Equivalence tests for closed curves on surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the trace character of a rank-2 word as a polynomial in
    /// x = tr(a), y = tr(b), z = tr(ab)
    TracePoly {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide (rank 2) or randomly refute (higher rank) trace-square
    /// equivalence of two words
    TraceEquiv {
        w1: String,
        w2: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 64)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Test conjugacy of two words in the free group
    Conjugate {
        w1: String,
        w2: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        allow_inverse: bool,
        #[arg(long)]
        json: bool,
    },
    /// Intersection numbers of a pants curve with the six essential arcs
    PantsArcs {
        word: String,
        #[arg(long)]
        json: bool,
    },
    /// Simple-intersection equivalence of two curves in the pair of pants
    SiEquiv {
        w1: String,
        w2: String,
        #[arg(long)]
        json: bool,
    },
    /// Homology class of a word under declared generator images
    Homology {
        word: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Generator images, e.g. --map a=1,0 b=0,1 (default: rank-2 standard)
        #[arg(long, num_args = 1.., value_name = "GEN=COORDS")]
        map: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Equality of homology classes up to orientation
    HomologyEquiv {
        w1: String,
        w2: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, num_args = 1.., value_name = "GEN=COORDS")]
        map: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Breakpoints, jumps, and reconstructed length of a height sweep
    Heights {
        /// Point list as "re,im;re,im;..."
        #[arg(long)]
        points: String,
        /// Cross-check each jump with a finite-difference estimate
        #[arg(long)]
        check_fd: bool,
        #[arg(long)]
        json: bool,
    },
    /// Replay the built-in example battery against its recorded fixtures
    VerifyPaper {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Debug override of the third boundary class convention
        #[arg(long, value_enum, default_value_t = ConventionArg::AInverseB, hide = true)]
        pants_convention: ConventionArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    /// c = a b^-1 (calibrated default)
    AInverseB,
    /// c = (a b)^-1 (known to break the recorded six-tuples)
    AbInverse,
}

impl From<ConventionArg> for BoundaryConvention {
    fn from(value: ConventionArg) -> BoundaryConvention {
        match value {
            ConventionArg::AInverseB => BoundaryConvention::AInverseB,
            ConventionArg::AbInverse => BoundaryConvention::AbInverse,
        }
    }
}

/// A usage-level failure; prints to stderr and exits 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> UsageError {
        UsageError(e.to_string())
    }
}

fn parse_word(text: &str, rank: usize) -> Result<Word, UsageError> {
    Word::parse(text, rank).map_err(|e| UsageError(format!("cannot parse '{text}': {e}")))
}

fn parse_map(entries: &[String]) -> Result<GeneratorImageMap, UsageError> {
    if entries.is_empty() {
        return Ok(GeneratorImageMap::standard_rank2());
    }
    let mut images = BTreeMap::new();
    let mut dimension = None;
    for entry in entries {
        let (symbol, coords) = entry
            .split_once('=')
            .ok_or_else(|| UsageError(format!("expected GEN=COORDS but got '{entry}'")))?;
        let symbol = symbol.trim();
        let mut chars = symbol.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(UsageError(format!("'{symbol}' is not a single generator letter")));
        };
        if !c.is_ascii_lowercase() {
            return Err(UsageError(format!("'{symbol}' is not a lowercase generator letter")));
        }
        let vector: Vec<i64> = coords
            .split(',')
            .map(|v| v.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| UsageError(format!("invalid coordinates '{coords}'")))?;
        dimension.get_or_insert(vector.len());
        images.insert(
            Generator::new(c as usize - 'a' as usize),
            HomologyVector(vector),
        );
    }
    let dimension = dimension.unwrap();
    GeneratorImageMap::new(images, dimension).map_err(UsageError::from)
}

fn emit(json_mode: bool, value: serde_json::Value, human: String) {
    if json_mode {
        println!("{value}");
    } else {
        println!("{human}");
    }
}

fn verdict_code(positive: bool) -> ExitCode {
    if positive {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    match cli.command {
        Command::TracePoly { word, json } => {
            let w = parse_word(&word, 2)?;
            let p = trace_polynomial(&w)?;
            emit(
                json,
                json!({ "word": word, "polynomial": p.to_string(), "terms": p.to_json() }),
                format!("{p}"),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::TraceEquiv { w1, w2, rank, samples, seed, json } => {
            let a = parse_word(&w1, rank)?;
            let b = parse_word(&w2, rank)?;
            if rank == 2 {
                let (equivalent, difference) = trace_square_equivalent(&a, &b)?;
                emit(
                    json,
                    json!({
                        "equivalent": equivalent,
                        "method": "fricke",
                        "difference": difference.to_string(),
                    }),
                    if equivalent {
                        "trace equivalent (character squares agree identically)".into()
                    } else {
                        format!("not trace equivalent; character square difference: {difference}")
                    },
                );
                Ok(verdict_code(equivalent))
            } else {
                let config = SamplerConfig::with_seed(seed);
                let verdict = pit_trace_equiv(&a, &b, rank, samples, &config)?;
                let mut value = verdict.to_json();
                value["method"] = json!("pit");
                let refuted = verdict.is_refuted();
                emit(
                    json,
                    value,
                    if refuted {
                        format!(
                            "refuted at sample {}: witness trace squares differ",
                            verdict.witness.as_ref().unwrap().sample_index
                        )
                    } else {
                        format!("no refutation in {} samples (evidence only)", verdict.samples_used)
                    },
                );
                Ok(verdict_code(!refuted))
            }
        }
        Command::Conjugate { w1, w2, rank, allow_inverse, json } => {
            let a = parse_word(&w1, rank)?;
            let b = parse_word(&w2, rank)?;
            let conjugate = are_conjugate(&a, &b, allow_inverse)?;
            emit(
                json,
                json!({ "conjugate": conjugate, "allow_inverse": allow_inverse }),
                format!("{}", if conjugate { "conjugate" } else { "not conjugate" }),
            );
            Ok(verdict_code(conjugate))
        }
        Command::PantsArcs { word, json } => {
            let w = parse_word(&word, 2)?;
            let tuple = arc_tuple(&cyclic_reduce(&w)?)?;
            emit(
                json,
                tuple.to_json(),
                format!("l = {:?}, w = {:?}", tuple.l(), tuple.w()),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::SiEquiv { w1, w2, json } => {
            let a = cyclic_reduce(&parse_word(&w1, 2)?)?;
            let b = cyclic_reduce(&parse_word(&w2, 2)?)?;
            let t1 = arc_tuple(&a)?;
            let t2 = arc_tuple(&b)?;
            let equivalent = si_equivalent_in_pants(&a, &b)?;
            emit(
                json,
                json!({ "tuple1": t1.to_json(), "tuple2": t2.to_json(), "equivalent": equivalent }),
                format!(
                    "{:?}/{:?} vs {:?}/{:?}: {}",
                    t1.l(),
                    t1.w(),
                    t2.l(),
                    t2.w(),
                    if equivalent { "si-equivalent" } else { "not si-equivalent" }
                ),
            );
            Ok(verdict_code(equivalent))
        }
        Command::Homology { word, rank, map, json } => {
            let w = parse_word(&word, rank)?;
            let m = parse_map(&map)?;
            let class = curveq::homology_class(&w, &m)?;
            emit(json, json!({ "class": class.0 }), format!("{:?}", class.0));
            Ok(ExitCode::SUCCESS)
        }
        Command::HomologyEquiv { w1, w2, rank, map, json } => {
            let a = parse_word(&w1, rank)?;
            let b = parse_word(&w2, rank)?;
            let m = parse_map(&map)?;
            let c1 = curveq::homology_class(&a, &m)?;
            let c2 = curveq::homology_class(&b, &m)?;
            let equal = curveq::plus_minus_equal(&c1, &c2)?;
            emit(
                json,
                json!({ "class1": c1.0, "class2": c2.0, "plus_minus_equal": equal }),
                format!(
                    "{:?} vs {:?}: {}",
                    c1.0,
                    c2.0,
                    if equal { "equal up to orientation" } else { "distinct up to orientation" }
                ),
            );
            Ok(verdict_code(equal))
        }
        Command::Heights { points, check_fd, json } => {
            let list = parse_points(&points)?;
            let report = heights::breakpoints_and_jumps(&list)?;
            let mut value = report.to_json();
            let mut fd_lines = String::new();
            if check_fd {
                let estimates: Vec<f64> = report
                    .breakpoints
                    .iter()
                    .map(|b| {
                        heights::finite_difference_jump(&list, b.theta, 1e-6)
                            .expect("positive step")
                    })
                    .collect();
                for (b, fd) in report.breakpoints.iter().zip(&estimates) {
                    fd_lines.push_str(&format!(
                        "\n  fd check at theta={:.6}: jump {:.6} vs estimate {:.6}",
                        b.theta, b.jump, fd
                    ));
                }
                value["fd_estimates"] = json!(estimates);
            }
            let human = format!(
                "{} breakpoint(s), reconstructed length {}{}",
                report.breakpoints.len(),
                report.reconstructed_length,
                fd_lines
            );
            emit(json, value, human);
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper { seed, json, pants_convention } => {
            let report = run_paper_battery(seed, pants_convention.into());
            if json {
                println!("{}", report.to_json());
            } else {
                for check in &report.checks {
                    println!(
                        "{} {}",
                        if check.pass { "PASS" } else { "FAIL" },
                        check.name
                    );
                    if !check.pass {
                        println!("  expected: {}", check.expected);
                        println!("  computed: {}", check.computed);
                    }
                }
                println!("{}", if report.pass { "all checks passed" } else { "FAILURES present" });
            }
            Ok(verdict_code(report.pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
