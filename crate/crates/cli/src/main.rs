use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use afe_core::archimedean::{lemma2_sweep, lemma3_deviation, lemma3_slope, Archimedean};
use afe_core::cutoff::{decay_report, default_sigma, ContourSpec};
use afe_core::evaluator::{
    central_value_thm2, critical_line_value, truncation_length, TruncationPolicy,
};
use afe_core::fixtures::{builtin, BUILTIN_NAMES};
use afe_core::io::{parse_instance_with_bound, parse_x_grid, result_json, serialize_instance, write_f_table};
use afe_core::kernel::KernelParams;
use afe_core::model::{coefficient_growth_diagnostic, AdmissibilityBound, LFunctionInstance};
use afe_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

/// Central values of L-functions from smoothed approximate functional
/// equations.
#[derive(Parser)]
#[command(name = "afe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate L(1/2 + it) and print a JSON result.
    Eval(EvalArgs),
    /// Tabulate the cutoff function f on an x grid as CSV.
    TabulateF(TabulateArgs),
    /// Check the growth and small-t bounds of the gamma-factor ratio.
    CheckBounds(CheckArgs),
    /// Print derived constants and coefficient diagnostics.
    Diagnose(InstanceArgs),
    /// Built-in fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance JSON file, `-` for stdin, or `builtin:NAME`.
    #[arg(long)]
    instance: String,
    /// Validate against the tempered bound Re mu_j >= 0.
    #[arg(long)]
    tempered: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Thm1,
    Thm2,
}

#[derive(Clone, Copy, ValueEnum)]
enum TruncationArg {
    Corollary1,
    Fixed,
    Adaptive,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "thm1")]
    method: MethodArg,
    /// Exponent slack in the truncation length C^{1/2 + eps}.
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
    /// Shift along the critical line.
    #[arg(long, default_value_t = 0.0)]
    t: f64,
    /// Gaussian kernel width a in H(s) = exp(a s^2).
    #[arg(long, default_value_t = 0.25)]
    kernel_a: f64,
    /// Number of terms; implies fixed truncation.
    #[arg(long)]
    terms: Option<usize>,
    /// Truncation rule; defaults to fixed with --terms, adaptive otherwise.
    #[arg(long, value_enum)]
    truncation: Option<TruncationArg>,
    /// Target absolute error; exit status 2 when it is not met.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Constant c in the explicit-formula bound c eta^{-1} C^{1/4 + eps}.
    #[arg(long, default_value_t = 5.0)]
    bound_constant: f64,
}

#[derive(Args)]
struct TabulateArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Grid `lo:hi:log|lin:n` or a comma-separated list.
    #[arg(long)]
    x: String,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0.25)]
    kernel_a: f64,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Ceiling for the normalized growth ratio.
    #[arg(long, default_value_t = 3.0)]
    ceiling: f64,
    /// Constant c in the small-t bound c |t| eta^{-1} C^eps.
    #[arg(long, default_value_t = 10.0)]
    c: f64,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 200.0)]
    t_max: f64,
}

#[derive(Subcommand)]
enum FixturesAction {
    /// Write every built-in fixture as an instance document.
    Export {
        #[arg(long)]
        dir: PathBuf,
        /// Coefficient count for each fixture (fixture default if absent).
        #[arg(long)]
        length: Option<usize>,
    },
}

enum Failure {
    Validation(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Numerical(e.to_string())
        }
    }
}

type CliResult = Result<(), Failure>;

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Validation(format!("{}: {e}", path.display()))
}

fn load(args: &InstanceArgs) -> Result<LFunctionInstance, Failure> {
    let bound = if args.tempered {
        AdmissibilityBound::Tempered
    } else {
        AdmissibilityBound::Unconditional
    };
    if let Some(name) = args.instance.strip_prefix("builtin:") {
        return Ok(builtin(name, None)?.with_bound(bound)?);
    }
    let bytes = if args.instance == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf)
            .map_err(|e| Failure::Validation(format!("stdin: {e}")))?;
        buf
    } else {
        let path = Path::new(&args.instance);
        fs::read(path).map_err(|e| io_failure(path, e))?
    };
    Ok(parse_instance_with_bound(&bytes, bound)?)
}

fn emit(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize"));
}

fn complex(z: Complex64) -> serde_json::Value {
    json!({ "re": z.re, "im": z.im })
}

fn eval(args: EvalArgs) -> CliResult {
    let inst = load(&args.instance)?;
    let kp = KernelParams::new(args.kernel_a)?;
    let mode = args
        .truncation
        .unwrap_or(if args.terms.is_some() { TruncationArg::Fixed } else { TruncationArg::Adaptive });
    let tp = match mode {
        TruncationArg::Corollary1 => TruncationPolicy::corollary1(args.eps),
        TruncationArg::Adaptive => TruncationPolicy::adaptive(args.eps, args.tol),
        TruncationArg::Fixed => {
            let m = args
                .terms
                .ok_or_else(|| Failure::Validation("--truncation fixed needs --terms".into()))?;
            TruncationPolicy { eps: args.eps, ..TruncationPolicy::fixed_length(m) }
        }
    };
    let result = match args.method {
        MethodArg::Thm1 => {
            let cs = ContourSpec::default_for(&inst, &kp)?;
            critical_line_value(&inst, args.t, &kp, &cs, &tp)?
        }
        MethodArg::Thm2 => {
            let shifted = if args.t == 0.0 { inst } else { afe_core::model::twist(&inst, args.t)? };
            central_value_thm2(&shifted, &kp, &tp, args.bound_constant)?
        }
    };
    println!("{}", result_json(&result));
    let achieved = match args.method {
        MethodArg::Thm1 => result.error_estimate,
        MethodArg::Thm2 => result.tail_estimate,
    };
    if !(achieved <= args.tol) {
        return Err(Failure::Numerical(format!(
            "tolerance not met: estimated error {achieved:e} exceeds {:e}",
            args.tol
        )));
    }
    Ok(())
}

fn tabulate(args: TabulateArgs) -> CliResult {
    let inst = load(&args.instance)?;
    let kp = KernelParams::new(args.kernel_a)?;
    let grid = parse_x_grid(&args.x)?;
    let rows = decay_report(&inst, &kp, &grid)?;
    let file = fs::File::create(&args.out).map_err(|e| io_failure(&args.out, e))?;
    write_f_table(std::io::BufWriter::new(file), &rows)?;
    let worst = rows.iter().map(|r| r.quad_error).fold(0.0, f64::max);
    emit(json!({
        "rows": rows.len(),
        "out": args.out.display().to_string(),
        "max_quad_error": worst,
    }));
    Ok(())
}

fn check_bounds(args: CheckArgs) -> CliResult {
    let inst = load(&args.instance)?;
    let arch = Archimedean::new(&inst)?;
    let strip = arch.strip();
    let mut ok = true;
    let mut growth = Vec::new();
    for sigma in [-0.15, 0.0, 0.15] {
        if !strip.contains(sigma) {
            continue;
        }
        let r = lemma2_sweep(&inst, sigma, args.t_max, 4001)?;
        let pass = r.max_normalized <= args.ceiling
            && (sigma != 0.0 || (r.max_normalized - 1.0).abs() <= 1e-12);
        ok &= pass;
        growth.push(json!({
            "sigma": sigma,
            "max_normalized": r.max_normalized,
            "argmax_t": r.argmax_t,
            "ok": pass,
        }));
    }
    let window = arch.eta().min(arch.analytic_conductor().powf(args.eps));
    let mut small_t = Vec::new();
    for frac in [-0.5, -0.1, -0.01, 0.01, 0.1, 0.5] {
        let r = lemma3_deviation(&inst, frac * window, args.c, args.eps)?;
        let pass = r.deviation <= r.bound;
        ok &= pass;
        small_t.push(json!({ "t": r.t, "deviation": r.deviation, "bound": r.bound, "ok": pass }));
    }
    emit(json!({
        "label": inst.label,
        "growth_ceiling": args.ceiling,
        "growth": growth,
        "small_t": small_t,
        "small_t_slope": lemma3_slope(&inst)?,
        "ok": ok,
    }));
    if ok {
        Ok(())
    } else {
        Err(Failure::Numerical("a bound check failed".into()))
    }
}

fn diagnose(args: InstanceArgs) -> CliResult {
    let inst = load(&args)?;
    let arch = Archimedean::new(&inst)?;
    let strip = arch.strip();
    let len = inst.coefficients.declared_length();
    let growth = coefficient_growth_diagnostic(&inst.coefficients, len.min(1000), 0.1)?;
    let c = arch.analytic_conductor();
    emit(json!({
        "label": inst.label,
        "m": inst.m,
        "d": inst.d,
        "N": inst.conductor,
        "twist": inst.twist,
        "C": c,
        "eta": arch.eta(),
        "lambda": complex(arch.lambda()),
        "kappa_lambda": complex(inst.root_number * arch.lambda()),
        "strip": { "sigma_min": strip.sigma_min, "sigma_max": strip.sigma_max },
        "default_sigma": default_sigma(&inst),
        "truncation_length": truncation_length(c, 0.25),
        "coefficients": {
            "declared": len,
            "growth_window": len.min(1000),
            "growth_ratio": growth.ratio,
            "leading_not_one": growth.leading_not_one,
        },
    }));
    Ok(())
}

fn export(dir: &Path, length: Option<usize>) -> CliResult {
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    let mut written = Vec::new();
    for name in BUILTIN_NAMES {
        let inst = builtin(name, if name == "trivial" { None } else { length })?;
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, serialize_instance(&inst) + "\n").map_err(|e| io_failure(&path, e))?;
        written.push(path.display().to_string());
    }
    emit(json!({ "written": written }));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Eval(args) => eval(args),
        Command::TabulateF(args) => tabulate(args),
        Command::CheckBounds(args) => check_bounds(args),
        Command::Diagnose(args) => diagnose(args),
        Command::Fixtures { action: FixturesAction::Export { dir, length } } => export(&dir, length),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
