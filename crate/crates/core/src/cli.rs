//! Command-line front end.
//!
//! Exit codes: 0 when the expected verdict is obtained, 1 on an unexpected
//! verdict, 2 on usage, parse or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::induction::{
    build_big_step, check_instance, emit_benchmarks, replicate_big_step_failure, replicate_right_cancellation_failure,
    replicate_right_decomposition_failure, BenchmarkFormat, CheckConfig, InstanceVerdict, Verdict,
};
use crate::logic::{parse_assignment, parse_formula, Var};
use crate::models::{check_axioms, Axiom, Model};
use crate::ordinal::expr;

pub const EXIT_EXPECTED: i32 = 0;
pub const EXIT_UNEXPECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "listind", version, about = "Countermodels for quantifier-free list induction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an ordinal expression (`+`, `-`, `*`, `divmod(a, b)`).
    Ord { expr: String },
    /// Evaluate an open formula in a model under an assignment.
    Eval {
        /// `m1:<step>` or `m2`.
        model: Model,
        formula: String,
        /// Bindings such as `Y=N(0); X=rep(N(0))`.
        #[arg(default_value = "")]
        assignment: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check axioms, an induction instance, or a counterexample certificate.
    Check {
        model: Model,
        #[command(subcommand)]
        target: Target,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write big-step benchmark problems for the predicate A.
    Emit {
        format: FormatArg,
        /// Step sizes: `3`, `1..5` or `1,2,4`.
        #[arg(long = "m", value_parser = parse_steps)]
        steps: Steps,
        out_dir: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum Target {
    /// Sample the list axioms the model interprets.
    Axioms,
    /// Check the big-step induction instance of an open formula.
    Induction {
        formula: String,
        /// Induction variable.
        #[arg(long, default_value = "X")]
        var: String,
        #[arg(long = "m", default_value_t = 1)]
        step: u64,
    },
    /// Replicate one of the exact counterexamples.
    Counterexample { name: CounterexampleName },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CounterexampleName {
    BigStep,
    RightCancellation,
    RightDecomposition,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Smtlib2,
    Tptp,
}

#[derive(Debug, Clone, Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Maximum assignments per universal check.
    #[arg(long, default_value_t = CheckConfig::default().budget, global = true)]
    budget: usize,
    #[arg(long, default_value_t = CheckConfig::default().alphabet_bound, global = true)]
    alphabet_bound: usize,
    /// Random samples for axiom and certificate checks.
    #[arg(long, default_value_t = 10_000, global = true)]
    samples: usize,
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone)]
struct Steps(Vec<u64>);

fn parse_steps(s: &str) -> Result<Steps, String> {
    let bad = || format!("invalid step list `{s}`");
    let steps: Vec<u64> = if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        (a..=b).collect()
    } else {
        s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if steps.is_empty() || steps.contains(&0) {
        return Err(bad());
    }
    Ok(Steps(steps))
}

/// Failure that ends the command with the usage exit code.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<(), Usage> {
        writeln!(self.out, "{}", s.as_ref())?;
        Ok(())
    }

    /// Prints the text lines or the JSON document, and writes JSON to `--out`.
    fn report<T: Serialize>(&mut self, run: &RunArgs, value: &T, text: Vec<String>) -> Result<(), Usage> {
        let json = serde_json::to_string_pretty(value)?;
        if run.json {
            self.line(&json)?;
        } else {
            for l in text {
                self.line(l)?;
            }
        }
        if let Some(path) = &run.out {
            std::fs::write(path, format!("{json}\n")).map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(())
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if code == 0 { EXIT_EXPECTED } else { EXIT_USAGE };
        }
    };
    let mut io = Io { out };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32, Usage> {
    match command {
        Command::Ord { expr: text } => {
            io.line(expr::evaluate(&text)?.to_string())?;
            Ok(EXIT_EXPECTED)
        }
        Command::Eval { model, formula, assignment, run } => {
            let phi = parse_formula(&formula, &model.signature())?;
            let sigma = parse_assignment(&assignment)?;
            let value = model.eval_formula(&phi, &sigma)?;
            #[derive(Serialize)]
            struct EvalReport {
                model: String,
                formula: String,
                assignment: crate::logic::Assignment,
                value: bool,
            }
            let report = EvalReport { model: model.to_string(), formula: phi.to_string(), assignment: sigma, value };
            io.report(&run, &report, vec![value.to_string()])?;
            Ok(EXIT_EXPECTED)
        }
        Command::Check { model, target, run } => check(model, target, &run, io),
        Command::Emit { format, steps, out_dir } => {
            let format = match format {
                FormatArg::Smtlib2 => BenchmarkFormat::SmtLib2,
                FormatArg::Tptp => BenchmarkFormat::Tptp,
            };
            for path in emit_benchmarks(&steps.0, format, &out_dir)? {
                io.line(path.display().to_string())?;
            }
            Ok(EXIT_EXPECTED)
        }
    }
}

fn expected(ok: bool) -> i32 {
    if ok {
        EXIT_EXPECTED
    } else {
        EXIT_UNEXPECTED
    }
}

fn verdict_line(label: &str, formula: &str, v: &Verdict) -> String {
    match v {
        Verdict::Falsified { witness } => format!("{label}: falsified by {witness}: {formula}"),
        Verdict::NoCounterexampleFound { bound, checked, exhaustive } => {
            let how = if *exhaustive { "exhaustive" } else { "sampled" };
            format!("{label}: no counterexample ({checked} assignments, {how}, bound {bound}): {formula}")
        }
    }
}

fn check(model: Model, target: Target, run: &RunArgs, io: &mut Io<'_>) -> Result<i32, Usage> {
    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
    match target {
        Target::Axioms => {
            let report = check_axioms(&model, &Axiom::applicable(&model), &mut rng, run.samples)?;
            let text = report
                .results
                .iter()
                .map(|r| match &r.counterexample {
                    None => format!("{}: pass ({} samples)", r.axiom, r.samples),
                    Some(c) => format!("{}: FAIL at {c}", r.axiom),
                })
                .collect();
            io.report(run, &report, text)?;
            Ok(expected(report.all_passed()))
        }
        Target::Induction { formula, var, step } => {
            let phi = parse_formula(&formula, &model.signature())?;
            if !phi.is_open() {
                return Err(Usage(format!("`{phi}` is not quantifier-free")));
            }
            let inst = build_big_step(&phi, &Var::new(var), step)?;
            let cfg = CheckConfig { alphabet_bound: run.alphabet_bound, budget: run.budget, seed: run.seed };
            let report = check_instance(&model, &inst, &cfg)?;
            let mut text: Vec<String> = report
                .premises
                .iter()
                .enumerate()
                .map(|(i, p)| verdict_line(&format!("premise {i}"), &p.formula, &p.verdict))
                .collect();
            text.push(verdict_line("conclusion", &report.conclusion.formula, &report.conclusion.verdict));
            text.push(format!("overall: {}", serde_json::to_value(report.overall)?.as_str().unwrap_or_default()));
            io.report(run, &report, text)?;
            // both structures satisfy open m-step induction, M1 with step k only for m < k
            let satisfied = match model {
                Model::M2 => true,
                Model::M1 { step: k } => step < k,
            };
            Ok(expected(!(satisfied && report.overall == InstanceVerdict::AxiomInstanceFalsified)))
        }
        Target::Counterexample { name } => match (name, model) {
            (CounterexampleName::BigStep, Model::M1 { step }) => {
                let cert = replicate_big_step_failure(step, run.samples, &mut rng)?;
                let mut text = vec![format!("{}: conclusion fails at X = {}", cert.conclusion, cert.witness)];
                text.extend(cert.base.iter().chain(&cert.step).map(|c| format!("[{}] {}", mark(c.holds), c.claim)));
                text.push(format!("sampled premises: {} samples, {} violations", cert.sampled.samples, cert.sampled.violations));
                io.report(run, &cert, text)?;
                Ok(expected(cert.verified()))
            }
            (CounterexampleName::RightCancellation, Model::M2) => {
                let cert = replicate_right_cancellation_failure();
                let text = vec![
                    format!("{} fails at {}", cert.formula, cert.witness),
                    format!("[{}] Y ++ X = {} equals X", mark(cert.equation_holds), cert.left_side),
                    format!("[{}] Y != nil", mark(cert.y_nonempty)),
                    format!("word probes: {} samples, {} violations", cert.word_probes.samples, cert.word_probes.violations),
                ];
                io.report(run, &cert, text)?;
                Ok(expected(cert.verified()))
            }
            (CounterexampleName::RightDecomposition, Model::M2) => {
                let cert = replicate_right_decomposition_failure();
                let text = vec![
                    format!("{} fails at X = {}", cert.formula, cert.witness),
                    format!("[{}] {} has no last element", mark(cert.last_decomposition.is_none()), cert.witness),
                ];
                io.report(run, &cert, text)?;
                Ok(expected(cert.verified()))
            }
            (CounterexampleName::BigStep, _) => Err(Usage("the big-step counterexample lives in m1:<step>".into())),
            (_, _) => Err(Usage("append counterexamples live in m2".into())),
        },
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}
