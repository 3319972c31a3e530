//! Argument handling and output formatting for the `tri` binary.
//!
//! [`run`] never prints; it returns the exit code together with the text for
//! stdout and stderr so the whole pipeline can be exercised in tests.

use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tri_core::definability::{verify_nondefinability, Variant};
use tri_core::operators::{
    apply_semantic, check_cells, check_characterization, check_ci_postulates,
    check_ci_postulates_on, sweep_all_operators, CiReport, OperatorTable,
};
use tri_core::ranking::{
    capture_set, capture_valuation, formula_of_ranking, ranking_count, ranking_of_formula,
    Ranking,
};
use tri_core::semantics::{classify, eval, render_truth_table, Interpretation};
use tri_core::syntax::Formula;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn verdict(holds: bool, stdout: String) -> Self {
        Outcome {
            code: if holds { EXIT_OK } else { EXIT_VIOLATION },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tri", version, about = "Three-valued modal logic, rankings and belief change")]
struct Cli {
    /// Line-oriented machine-readable output
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Vars {
    /// Number of variables x0..x(n-1)
    #[arg(short = 'n', value_name = "INT")]
    n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula at one interpretation
    Eval {
        #[command(flatten)]
        vars: Vars,
        formula: String,
        /// Interpretation literal, e.g. `u` or `1,0,u`
        #[arg(long, value_name = "INTERP")]
        at: String,
    },
    /// Print the truth table of a formula
    Table {
        #[command(flatten)]
        vars: Vars,
        formula: String,
    },
    /// List models, quasi-models and countermodels
    Classify {
        #[command(flatten)]
        vars: Vars,
        formula: String,
    },
    /// Formula whose models are exactly the given interpretations
    Capture {
        #[arg(short = 'n', value_name = "INT")]
        n: Option<usize>,
        #[arg(long, value_name = "INTERP", required = true)]
        at: Vec<String>,
    },
    /// Formula whose ranking is read from a ranking file (`-` for stdin)
    EncodeRanking {
        #[arg(value_name = "FILE")]
        path: String,
    },
    /// Apply an operator table to two formulas and print the resulting ranking
    Revise {
        #[command(flatten)]
        vars: Vars,
        #[arg(long, value_name = "TABLE")]
        op: String,
        prior: String,
        input: String,
    },
    /// Exhaustive property checks
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
    /// Closure of the ranking of x0 under one modality, against its forbidden family
    Closure {
        #[arg(long, value_name = "box1|box2")]
        variant: String,
        #[arg(long)]
        include_bot: bool,
    },
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// Cautious-improvement postulates (exhaustive at n=1, sampled above)
    Ci {
        #[command(flatten)]
        vars: Vars,
        /// Number of random ranking pairs when n > 1
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Postulate characterization of one operator table
    Charac {
        #[command(flatten)]
        vars: Vars,
        #[arg(long, value_name = "TABLE")]
        op: String,
    },
    /// Postulate characterization of every operator table
    AllOperators {
        #[command(flatten)]
        vars: Vars,
    },
}

/// Parses `argv` (including the program name) and runs the selected command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(e.to_string()),
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("invalid arguments");
                    Outcome {
                        code: EXIT_USAGE,
                        stdout: String::new(),
                        stderr: format!("{first}\n"),
                    }
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(outcome) => outcome,
        Err(msg) => Outcome::usage(msg),
    }
}

type CmdResult = Result<Outcome, String>;

/// Largest `-n` accepted; commands enumerate all `3^n` interpretations.
pub const MAX_VARS: usize = 12;

fn parse_formula(text: &str, n: usize) -> Result<Formula, String> {
    if n > MAX_VARS {
        return Err(format!("-n {n} is too large, at most {MAX_VARS} variables are supported"));
    }
    let f: Formula = text.parse().map_err(|e| format!("{e}"))?;
    if let Some(index) = f.max_var().filter(|i| *i >= n) {
        return Err(format!("variable x{index} is out of range for {n} variable(s)"));
    }
    Ok(f)
}

fn parse_interpretation(text: &str, n: Option<usize>) -> Result<Interpretation, String> {
    let w: Interpretation = text.parse().map_err(|e| format!("{e}"))?;
    match n {
        Some(n) if w.len() != n => Err(format!("interpretation {text:?} does not have {n} value(s)")),
        _ => Ok(w),
    }
}

fn parse_table(text: &str) -> Result<OperatorTable, String> {
    text.parse().map_err(|e| format!("{e}"))
}

fn need_one_variable(n: usize) -> Result<(), String> {
    if n != 1 {
        return Err(format!("exhaustive characterization is only supported for -n 1, got {n}"));
    }
    Ok(())
}

fn join_interpretations(ws: &[Interpretation]) -> String {
    ws.iter().map(|w| format!(" {w}")).collect()
}

fn dispatch(cli: Cli) -> CmdResult {
    let machine = cli.machine;
    match cli.command {
        Command::Eval { vars, formula, at } => {
            let f = parse_formula(&formula, vars.n)?;
            let w = parse_interpretation(&at, Some(vars.n))?;
            let v = eval(&f, &w).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(format!("{v}\n")))
        }
        Command::Table { vars, formula } => {
            let f = parse_formula(&formula, vars.n)?;
            Ok(Outcome::ok(render_truth_table(&f, vars.n).map_err(|e| e.to_string())?))
        }
        Command::Classify { vars, formula } => {
            let f = parse_formula(&formula, vars.n)?;
            let c = classify(&f, vars.n).map_err(|e| e.to_string())?;
            let mut out = String::new();
            if machine {
                for (tag, ws) in [("M", &c.models), ("Q", &c.quasi_models), ("C", &c.countermodels)] {
                    for w in ws {
                        out.push_str(&format!("{w} {tag}\n"));
                    }
                }
            } else {
                out.push_str(&format!("models:{}\n", join_interpretations(&c.models)));
                out.push_str(&format!("quasi-models:{}\n", join_interpretations(&c.quasi_models)));
                out.push_str(&format!("countermodels:{}\n", join_interpretations(&c.countermodels)));
                if c.is_contradiction() {
                    out.push_str("contradiction\n");
                }
            }
            Ok(Outcome::ok(out))
        }
        Command::Capture { n, at } => {
            let ws = at
                .iter()
                .map(|lit| parse_interpretation(lit, n))
                .collect::<Result<Vec<_>, _>>()?;
            let n = n.unwrap_or(ws[0].len());
            let f = match ws.as_slice() {
                [w] if w.len() == n => capture_valuation(w),
                _ => capture_set(&ws, n),
            }
            .map_err(|e| e.to_string())?;
            Ok(Outcome::ok(format!("{f}\n")))
        }
        Command::EncodeRanking { path } => {
            let text = if path == "-" {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf).map_err(|e| format!("stdin: {e}"))?;
                buf
            } else {
                fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?
            };
            let r = Ranking::from_file_str(&text).map_err(|e| e.to_string())?;
            let f = formula_of_ranking(&r).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(format!("{f}\n")))
        }
        Command::Revise { vars, op, prior, input } => {
            let t = parse_table(&op)?;
            let f = parse_formula(&prior, vars.n)?;
            let g = parse_formula(&input, vars.n)?;
            let rf = ranking_of_formula(&f, vars.n).map_err(|e| e.to_string())?;
            let rg = ranking_of_formula(&g, vars.n).map_err(|e| e.to_string())?;
            let out = apply_semantic(&t, &rf, &rg).map_err(|e| e.to_string())?;
            let mut text = out.to_file_string();
            if !machine {
                let h = formula_of_ranking(&out).map_err(|e| e.to_string())?;
                text.push_str(&format!("# formula: {h}\n"));
            }
            Ok(Outcome::ok(text))
        }
        Command::Check { which } => check(which, machine),
        Command::Closure { variant, include_bot } => {
            let variant: Variant = variant.parse()?;
            let report = verify_nondefinability(variant, include_bot);
            let text = if machine { report.render_machine() } else { report.render_text() };
            Ok(Outcome::verdict(report.disjoint(), text))
        }
    }
}

fn random_pairs(n: usize, samples: usize, seed: u64) -> Result<Vec<(Ranking, Ranking)>, String> {
    let count = ranking_count(n).ok_or_else(|| format!("too many variables: {n}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..samples)
        .map(|_| {
            (
                Ranking::from_index(n, rng.gen_range(0..count)),
                Ranking::from_index(n, rng.gen_range(0..count)),
            )
        })
        .collect())
}

fn render_ci_report(report: &CiReport, machine: bool) -> String {
    let mut out = String::new();
    for r in &report.results {
        match &r.witness {
            None if machine => out.push_str(&format!("{} PASS\n", r.name)),
            None => out.push_str(&format!("PASS {} ({} pairs)\n", r.name, r.checked)),
            Some((a, b)) if machine => out.push_str(&format!("{} FAIL {a} {b}\n", r.name)),
            Some((a, b)) => out.push_str(&format!("FAIL {} (prior {a}, input {b})\n", r.name)),
        }
    }
    match &report.ci1_prime_table_counterexample {
        Some((a, b, w)) if machine => out.push_str(&format!("CI1'-equiv FAIL {a} {b} {w}\n")),
        Some((a, b, w)) => out.push_str(&format!(
            "NOTE CI1' holds for models only: truth tables differ at {w} (prior {a}, input {b})\n"
        )),
        None if machine => out.push_str("CI1'-equiv PASS\n"),
        None => out.push_str("NOTE CI1' also holds as truth-table equivalence on these pairs\n"),
    }
    out
}

fn check(which: CheckCommand, machine: bool) -> CmdResult {
    match which {
        CheckCommand::Ci { vars, samples, seed } => {
            if vars.n == 0 {
                return Err("check ci needs at least one variable".into());
            }
            let report = if vars.n == 1 {
                check_ci_postulates(1)
            } else {
                check_ci_postulates_on(random_pairs(vars.n, samples, seed)?, vars.n)
            }
            .map_err(|e| e.to_string())?;
            Ok(Outcome::verdict(report.all_hold(), render_ci_report(&report, machine)))
        }
        CheckCommand::Charac { vars, op } => {
            let t = parse_table(&op)?;
            need_one_variable(vars.n)?;
            let result = check_cells(&t).and_then(|()| check_characterization(&t, vars.n));
            let text = match (&result, machine) {
                (Ok(()), true) => format!("{t} PASS\n"),
                (Ok(()), false) => format!("PASS {t}: postulates characterize the operator at n={}\n", vars.n),
                (Err(e), true) => format!("{t} FAIL {e}\n"),
                (Err(e), false) => format!("FAIL {t}: {e}\n"),
            };
            Ok(Outcome::verdict(result.is_ok(), text))
        }
        CheckCommand::AllOperators { vars } => {
            need_one_variable(vars.n)?;
            let report = sweep_all_operators(vars.n);
            let mut text = String::new();
            for (t, e) in &report.failures {
                text.push_str(&format!("FAIL {t}: {e}\n"));
            }
            text.push_str(&format!(
                "{} tables checked, {} passed, {} failed\n",
                report.checked,
                report.checked - report.failures.len(),
                report.failures.len()
            ));
            Ok(Outcome::verdict(report.failures.is_empty(), text))
        }
    }
}
