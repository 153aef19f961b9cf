//! `dsbo`: construct the symmetry-breaking differential operators in exact
//! arithmetic and run the verification suites.
//!
//! Exit codes: 0 all checks pass, 1 at least one check fails, 2 usage error.

use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use dsbo_core::affine::AffineForm;
use dsbo_core::latex::{latex_ratfun, latex_weyl};
use dsbo_core::params::InductionParams;
use dsbo_core::report::Suite;
use dsbo_core::scalar::Rat;
use dsbo_core::covariant::Context;
use dsbo_core::weyl::{build_d, build_f, build_l, WeylElement};
use dsbo_cli::output::{print_text, suites_to_json};
use dsbo_cli::suites::{
    all_suites, suite_algebra_axioms, suite_bernstein_sato, suite_expansion, suite_n2_classify,
    suite_residue_scalar, suite_restriction, Mode,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "dsbo", about = "exact workbench for symmetry-breaking differential operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    D,
    F,
    L,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteName {
    Restriction,
    #[value(name = "bernstein-sato")]
    BernsteinSato,
    Expansion,
    #[value(name = "residue-scalar")]
    ResidueScalar,
    #[value(name = "n2-classify")]
    N2Classify,
    #[value(name = "algebra-axioms")]
    AlgebraAxioms,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Build one operator in exact normal-ordered form.
    Construct {
        /// Rank of the smaller group.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Operator family: a raising factor, a lowering factor, or the
        /// full composite at a support index.
        #[arg(long, value_enum)]
        op: OpName,
        /// Factor index (families d and f).
        #[arg(long)]
        i: Option<usize>,
        /// Support index (family l).
        #[arg(long)]
        k: Option<usize>,
        /// Composition powers for family l, comma separated, length n.
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<u32>>,
        /// Exponent vector λ, comma separated rationals; symbolic if omitted.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
    },
    /// Run a verification suite and report one line per check.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "numeric")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        output: Output,
        /// Optional single-instance classification: support index.
        #[arg(long)]
        k: Option<usize>,
        /// Optional single-instance classification: λ, comma separated.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<String>>,
        /// Optional single-instance classification: ν, comma separated.
        #[arg(long, value_delimiter = ',')]
        nu: Option<Vec<String>>,
        /// Optional parity bits ξ, comma separated.
        #[arg(long, value_delimiter = ',')]
        xi: Option<Vec<u8>>,
        /// Optional parity bits η, comma separated.
        #[arg(long, value_delimiter = ',')]
        eta: Option<Vec<u8>>,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_rats(raw: &[String]) -> Result<Vec<Rat>, String> {
    raw.iter()
        .map(|s| Rat::from_str(s.trim()).map_err(|e| format!("bad rational '{s}': {e}")))
        .collect()
}

fn symbolic_lambda(n: usize) -> Vec<AffineForm> {
    (1..=n + 1).map(|i| AffineForm::var(&format!("l{i}"))).collect()
}

fn render_weyl(ctx: &Context, w: &WeylElement, output: Output, label: &str) {
    match output {
        Output::Text => println!("{label} = {w}"),
        Output::Latex => println!("{}", latex_weyl(ctx, w)),
        Output::Json => {
            let terms: Vec<_> = w
                .terms()
                .map(|((g, d), c)| {
                    json!({
                        "g_exponents": g,
                        "d_exponents": d,
                        "coefficient": format!("{c}"),
                        "coefficient_latex": latex_ratfun(c),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({"operator": label, "terms": terms}))
                    .expect("serialization")
            );
        }
    }
}

fn run_construct(
    n: usize,
    op: OpName,
    i: Option<usize>,
    k: Option<usize>,
    alpha: Option<Vec<u32>>,
    lambda_raw: Option<Vec<String>>,
    output: Output,
) -> ExitCode {
    if !(1..=4).contains(&n) {
        return usage_error("index out of range: supported ranks are 1 <= n <= 4");
    }
    let ctx = Context::new(n);
    let lambda = match lambda_raw {
        None => symbolic_lambda(n),
        Some(raw) => match parse_rats(&raw) {
            Ok(v) if v.len() == n + 1 => v.into_iter().map(AffineForm::constant).collect(),
            Ok(v) => {
                return usage_error(&format!("lambda needs {} entries, got {}", n + 1, v.len()))
            }
            Err(e) => return usage_error(&e),
        },
    };
    match op {
        OpName::D | OpName::F => {
            let Some(i) = i else {
                return usage_error("--i is required for factor operators");
            };
            if i < 1 || i > n + 1 {
                return usage_error("index out of range");
            }
            let (w, label) = match op {
                OpName::D => (build_d(&ctx, i, &lambda), format!("D_{i}")),
                OpName::F => (build_f(&ctx, i, &lambda), format!("F_{i}")),
                OpName::L => unreachable!(),
            };
            render_weyl(&ctx, &w, output, &label);
            ExitCode::SUCCESS
        }
        OpName::L => {
            let Some(k) = k else {
                return usage_error("--k is required for the composite operator");
            };
            if k > n {
                return usage_error("index out of range");
            }
            let alpha = alpha.unwrap_or_else(|| vec![1; n]);
            if alpha.len() != n {
                return usage_error(&format!("alpha needs {n} entries"));
            }
            let w = build_l(&ctx, k, &alpha, &lambda);
            render_weyl(&ctx, &w, output, &format!("L_{k}^{alpha:?}"));
            ExitCode::SUCCESS
        }
    }
}

/// A one-off classification report for explicitly given parameters.
fn classify_instance(
    k: usize,
    lambda: Vec<Rat>,
    nu: Vec<Rat>,
    xi: Option<Vec<u8>>,
    eta: Option<Vec<u8>>,
) -> Result<Suite, String> {
    use dsbo_core::delta::solve_kernels;
    use dsbo_core::params::classify_generic;
    use dsbo_core::report::CheckReport;

    if lambda.len() != 3 || nu.len() != 2 {
        return Err(String::from("single-instance classification needs 3 lambda and 2 nu entries"));
    }
    if k > 2 {
        return Err(String::from("index out of range"));
    }
    let mut p = InductionParams::numeric(2, &lambda, &nu);
    if let (Some(xi), Some(eta)) = (xi, eta) {
        if xi.len() != 3 || eta.len() != 2 || xi.iter().chain(&eta).any(|b| *b > 1) {
            return Err(String::from("parity vectors need 3 and 2 bits"));
        }
        p = p.with_parities(xi, eta);
    }
    let hint = classify_generic(&p, k);
    let (_, dim) = solve_kernels(&p, k);
    let mut suite = Suite::new("n2-classify");
    suite.push(CheckReport::new(
        &format!("kernel dimension at the given point (k={k})"),
        "classify/instance",
        true,
        format!(
            "solver dimension {dim}; membership: {} ({})",
            hint.member_of_l_k,
            hint.reason.unwrap_or_else(|| String::from("member"))
        ),
    ));
    Ok(suite)
}

fn run_verify(
    suite: SuiteName,
    seed: u64,
    mode: ModeArg,
    output: Output,
    k: Option<usize>,
    lambda: Option<Vec<String>>,
    nu: Option<Vec<String>>,
    xi: Option<Vec<u8>>,
    eta: Option<Vec<u8>>,
) -> ExitCode {
    let mode = match mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Numeric => Mode::Numeric,
    };
    let started = Instant::now();
    let suites: Vec<Suite> = match (suite, k, lambda, nu) {
        (SuiteName::N2Classify, Some(k), Some(l), Some(v)) => {
            let parsed = parse_rats(&l).and_then(|l| parse_rats(&v).map(|v| (l, v)));
            match parsed.and_then(|(l, v)| classify_instance(k, l, v, xi, eta)) {
                Ok(s) => vec![s],
                Err(e) => return usage_error(&e),
            }
        }
        (SuiteName::Restriction, ..) => vec![suite_restriction()],
        (SuiteName::BernsteinSato, ..) => vec![suite_bernstein_sato(seed, mode)],
        (SuiteName::Expansion, ..) => vec![suite_expansion()],
        (SuiteName::ResidueScalar, ..) => vec![suite_residue_scalar(seed, mode)],
        (SuiteName::N2Classify, ..) => vec![suite_n2_classify()],
        (SuiteName::AlgebraAxioms, ..) => vec![suite_algebra_axioms(seed)],
        (SuiteName::All, ..) => all_suites(seed, mode),
    };
    eprintln!("wall time: {} ms", started.elapsed().as_millis());

    match output {
        Output::Json => println!(
            "{}",
            serde_json::to_string_pretty(&suites_to_json(&suites)).expect("serialization")
        ),
        _ => print_text(&suites),
    }
    if suites.iter().all(Suite::overall_pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Construct { n, op, i, k, alpha, lambda, output } => {
            run_construct(n, op, i, k, alpha, lambda, output)
        }
        Command::Verify { suite, seed, mode, output, k, lambda, nu, xi, eta } => {
            run_verify(suite, seed, mode, output, k, lambda, nu, xi, eta)
        }
    }
}
