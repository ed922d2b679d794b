//! Command-line surface: series generation, projections, splittings,
//! Kashiwara-Vergne odd solutions, formal traces and the verification
//! suites. Output is deterministic for a fixed invocation; exit codes are
//! 0 (success), 1 (verification failure), 2 (usage or parse error).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use liedsw::bchgen::{bch, BchMethod};
use liedsw::freealg::Alphabet;
use liedsw::kv::{kv_solution_to_json, solve_odd, verify_kv_conditions, verify_lemma_oddkv, KvVariant};
use liedsw::lieops::{dsw_central, dsw_project, BracketSide, WeightAssignment};
use liedsw::parse::{parse_poly_or_tree, parse_lie_tree, poly_to_json};
use liedsw::splitting::{
    delta_l, delta_l_weighted, split_monomial, splitting_display, splitting_to_json, Splitting,
};
use liedsw::suites::{run_suite, SUITE_NAMES};
use liedsw::{LieError, NcPoly, Rational};

#[derive(Parser)]
#[command(name = "liedsw", version, about = "Exact free Lie algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Read the expression from a file.
    #[arg(long, conflicts_with = "expr")]
    input: Option<PathBuf>,
    /// Inline expression (polynomial or bracketed Lie tree).
    #[arg(long)]
    expr: Option<String>,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    vars: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the Baker-Campbell-Hausdorff series.
    Bch {
        /// Truncation degree.
        #[arg(short = 'n', long)]
        degree: usize,
        /// One of: log, dynkin, variant, resolvent.
        #[arg(long, default_value = "log")]
        method: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Apply the (weighted or central) Dynkin-Specht-Wever projection.
    Dsw {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated rational weights, one per generator.
        #[arg(long)]
        weights: Option<String>,
        /// Use the centrally bracketed projection instead.
        #[arg(long)]
        central: bool,
        /// Bracketing side: left or right.
        #[arg(long, default_value = "left")]
        side: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Split a Lie element into generator-tensor-cofactor parts.
    Split {
        #[command(flatten)]
        input: InputArgs,
        /// One of: plain, extended, weighted:<gen>.
        #[arg(long, default_value = "plain")]
        mode: String,
        /// Cross-check the monomial fast path against the expansion route.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Solve the odd part of the Kashiwara-Vergne problem.
    KvOdd {
        /// Degree up to which the reconstruction identity holds.
        #[arg(short = 'n', long)]
        degree: usize,
        /// One of: X, Y, symm.
        #[arg(long, default_value = "symm")]
        variant: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run a named verification suite.
    Verify {
        /// One of: all, dsw, uea, split, resolvent, bch, kv, trace.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "max-degree", default_value_t = 6)]
        max_degree: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Compute the formal trace of a polynomial.
    Trace {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

enum CliError {
    Usage(String),
    Failed,
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// `LIEDSW_MAX_DEGREE` caps every degree argument defensively.
fn cap_degree(n: usize) -> Result<usize, CliError> {
    let cap = match std::env::var("LIEDSW_MAX_DEGREE") {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("bad LIEDSW_MAX_DEGREE value {v:?}")))?,
        Err(_) => 64,
    };
    if n > cap {
        return Err(CliError::Usage(format!(
            "degree {n} exceeds the cap {cap} (LIEDSW_MAX_DEGREE)"
        )));
    }
    if n == 0 {
        return Err(CliError::Usage("degree must be at least 1".into()));
    }
    Ok(n)
}

fn check_format(format: &str) -> Result<bool, CliError> {
    match format {
        "text" => Ok(false),
        "json" => Ok(true),
        other => Err(CliError::Usage(format!(
            "unknown format {other:?} (expected text or json)"
        ))),
    }
}

impl InputArgs {
    fn source(&self) -> Result<String, CliError> {
        match (&self.input, &self.expr) {
            (Some(path), None) => std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display()))),
            (None, Some(expr)) => Ok(expr.clone()),
            _ => Err(CliError::Usage(
                "provide exactly one of --input or --expr".into(),
            )),
        }
    }

    /// Numbered names whenever the source spells them out, otherwise the
    /// X/Y pair for two generators.
    fn alphabet(&self, src: &str) -> Result<Alphabet, CliError> {
        if self.vars == 0 {
            return Err(CliError::Usage("--vars must be at least 1".into()));
        }
        if self.vars > 64 {
            return Err(CliError::Usage("--vars is limited to 64".into()));
        }
        if self.vars == 2 && !src.contains("X1") && !src.contains("X2") {
            return Ok(Alphabet::new(2));
        }
        Ok(Alphabet::with_names(
            (1..=self.vars).map(|i| format!("X{i}")).collect(),
        )?)
    }
}

fn parse_weights(spec: &str, vars: usize) -> Result<WeightAssignment, CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != vars {
        return Err(CliError::Usage(format!(
            "expected {vars} weights, got {}",
            parts.len()
        )));
    }
    let mut weights = Vec::with_capacity(vars);
    for p in parts {
        weights.push(p.trim().parse::<Rational>().map_err(LieError::from)?);
    }
    Ok(WeightAssignment::new(weights))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bch {
            degree,
            method,
            format,
        } => cmd_bch(degree, &method, &format),
        Command::Dsw {
            input,
            weights,
            central,
            side,
            format,
        } => cmd_dsw(input, weights.as_deref(), central, &side, &format),
        Command::Split {
            input,
            mode,
            check,
            format,
        } => cmd_split(input, &mode, check, &format),
        Command::KvOdd {
            degree,
            variant,
            format,
        } => cmd_kv_odd(degree, &variant, &format),
        Command::Verify {
            suite,
            max_degree,
            seed,
        } => cmd_verify(&suite, max_degree, seed),
        Command::Trace { input, format } => cmd_trace(input, &format),
    }
}

fn cmd_bch(degree: usize, method: &str, format: &str) -> Result<(), CliError> {
    let n = cap_degree(degree)?;
    let json = check_format(format)?;
    let method = match method {
        "variant" | "dynkin-variant" => BchMethod::DynkinVariant,
        other => BchMethod::from_name(other)
            .ok_or_else(|| CliError::Usage(format!("unknown method {other:?}")))?,
    };
    let series = bch(n, method)?;
    if json {
        println!(
            "{}",
            serde_json::json!({
                "degree": n,
                "series": poly_to_json(&series.to_poly(), 2),
            })
        );
    } else {
        println!("{}", series.display(&Alphabet::xy()));
    }
    Ok(())
}

fn cmd_dsw(
    input: InputArgs,
    weights: Option<&str>,
    central: bool,
    side: &str,
    format: &str,
) -> Result<(), CliError> {
    let json = check_format(format)?;
    let side = match side {
        "left" => BracketSide::Left,
        "right" => BracketSide::Right,
        other => return Err(CliError::Usage(format!("unknown side {other:?}"))),
    };
    let src = input.source()?;
    let alpha = input.alphabet(&src)?;
    let p = parse_poly_or_tree(&src, &alpha)?;
    let result = if central {
        dsw_central(&p)
    } else {
        let w = match weights {
            Some(spec) => parse_weights(spec, input.vars)?,
            None => WeightAssignment::unit(input.vars),
        };
        dsw_project(&p, &w, side)
    };
    if json {
        println!("{}", poly_to_json(&result, input.vars));
    } else {
        if central && p.is_homogeneous().is_none() && !p.is_zero() {
            println!("# applied per homogeneous degree");
        }
        println!("{}", result.display(&alpha));
    }
    Ok(())
}

enum SplitMode {
    Plain,
    Extended,
    Weighted(WeightAssignment),
}

fn cmd_split(input: InputArgs, mode: &str, check: bool, format: &str) -> Result<(), CliError> {
    let json = check_format(format)?;
    let src = input.source()?;
    let alpha = input.alphabet(&src)?;
    let mode = if mode == "plain" {
        SplitMode::Plain
    } else if mode == "extended" {
        SplitMode::Extended
    } else if let Some(gen_name) = mode.strip_prefix("weighted:") {
        let g = alpha
            .resolve(gen_name)
            .ok_or_else(|| CliError::Usage(format!("unknown generator {gen_name:?}")))?;
        SplitMode::Weighted(WeightAssignment::indicator(g, input.vars))
    } else {
        return Err(CliError::Usage(format!("unknown mode {mode:?}")));
    };

    // monomial fast path for multiplicity-free bracketed input
    let trimmed = src.trim();
    let tree = if trimmed.starts_with(['[', '-', '−']) {
        parse_lie_tree(trimmed, &alpha).ok()
    } else {
        None
    };
    let p = match &tree {
        Some(t) => t.expand(),
        None => parse_poly_or_tree(trimmed, &alpha)?,
    };

    let expansion_route = |p: &NcPoly| -> Result<Splitting, LieError> {
        match &mode {
            SplitMode::Plain => delta_l(p, false),
            SplitMode::Extended => delta_l(p, true),
            SplitMode::Weighted(w) => delta_l_weighted(p, w),
        }
    };

    let fast = match (&tree, &mode) {
        (Some(t), SplitMode::Plain) => split_monomial(t, None).ok(),
        (Some(t), SplitMode::Weighted(w)) => split_monomial(t, Some(w)).ok(),
        _ => None,
    };
    let splitting = match fast {
        Some(s) => {
            if check && expansion_route(&p)? != s {
                eprintln!("check failed: fast path disagrees with the expansion route");
                return Err(CliError::Failed);
            }
            s
        }
        None => expansion_route(&p)?,
    };
    if json {
        println!("{}", splitting_to_json(&splitting, input.vars));
    } else {
        println!("{}", splitting_display(&splitting, &alpha));
    }
    Ok(())
}

fn cmd_kv_odd(degree: usize, variant: &str, format: &str) -> Result<(), CliError> {
    let n = cap_degree(degree)?;
    let json = check_format(format)?;
    let variant = KvVariant::from_name(variant)
        .ok_or_else(|| CliError::Usage(format!("unknown variant {variant:?}")))?;
    // the identity is reconstructed up to `n`; A and B go up to `n - 1`
    let cutoff = n.saturating_sub(1);
    let sol = solve_odd(cutoff, variant)?;
    let mut report = verify_lemma_oddkv(cutoff.max(1))?;
    report.merge(verify_kv_conditions(cutoff.max(1))?);
    if json {
        println!(
            "{}",
            serde_json::json!({
                "solution": kv_solution_to_json(&sol),
                "report": report
                    .items
                    .iter()
                    .map(|i| serde_json::json!({
                        "name": i.name,
                        "pass": i.pass,
                        "detail": i.detail,
                    }))
                    .collect::<Vec<_>>(),
            })
        );
    } else {
        let alpha = Alphabet::xy();
        println!("A = {}", sol.a.display(&alpha));
        println!("B = {}", sol.b.display(&alpha));
        print!("{report}");
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn cmd_verify(suite: &str, max_degree: usize, seed: u64) -> Result<(), CliError> {
    let n = cap_degree(max_degree)?;
    if !SUITE_NAMES.contains(&suite) {
        return Err(CliError::Usage(format!(
            "unknown suite {suite:?} (expected one of {})",
            SUITE_NAMES.join(", ")
        )));
    }
    let report = run_suite(suite, n, seed)?;
    print!("{report}");
    if report.all_pass() {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}

fn cmd_trace(input: InputArgs, format: &str) -> Result<(), CliError> {
    let json = check_format(format)?;
    let src = input.source()?;
    let alpha = input.alphabet(&src)?;
    let p = parse_poly_or_tree(&src, &alpha)?;
    let t = p.formal_trace();
    if json {
        let terms: Vec<serde_json::Value> = t
            .terms()
            .map(|(w, c)| {
                serde_json::json!({
                    "c": c.to_string(),
                    "w": w.0.iter().map(|&g| g as usize + 1).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::json!({ "vars": input.vars, "terms": terms })
        );
    } else {
        println!("{}", t.display(&alpha));
    }
    Ok(())
}
