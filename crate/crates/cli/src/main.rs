use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use mcsynth::analysis::{precision_audit, scaling_report, Family};
use mcsynth::lower::lower_to_basis;
use mcsynth::qasm::{from_qasm, to_qasm};
use mcsynth::sim::EquivMode;
use mcsynth::synth::{
    incrementor, incrementor_ladder, mcu_clean, mcu_dirty, mcx_clean, mcx_dirty, mcx_no_ancilla, SplitPolicy,
};
use mcsynth::verify::{parse_op_spec, verify, CheckMode, TargetSpec, VerifyOptions};
use mcsynth::{Circuit, QubitRole};

const SCHEMA: u32 = 1;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Synth(#[from] mcsynth::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(name = "mcsynth", version, about = "Synthesize, verify and audit multi-controlled gate circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a circuit family and write it as OpenQASM.
    Synth(SynthArgs),
    /// Check a circuit file against a reference operator.
    Verify(VerifyArgs),
    /// Resource counts and precision audit of a circuit file, as JSON.
    Report(ReportArgs),
    /// Resource table over n = n_min, 2·n_min, … up to n_max, as JSON.
    Scaling(ScalingArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthFamily {
    Mcx,
    Mcu,
    Incr,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AncillaArg {
    Clean,
    Dirty,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Dense,
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseArg {
    Exact,
    Global,
}

#[derive(clap::Args)]
struct PolicyArgs {
    /// Fraction of the incrementor register kept in the low part.
    #[arg(long, default_value = "9/10", value_parser = parse_fraction)]
    split: (u32, u32),
    /// Largest control count emitted as a single gate (4 or 5).
    #[arg(long, default_value_t = 5)]
    base_threshold: usize,
}

impl PolicyArgs {
    fn policy(&self) -> Result<SplitPolicy, CliError> {
        SplitPolicy::new(self.split, self.base_threshold).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(clap::Args)]
struct SynthArgs {
    family: SynthFamily,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "clean")]
    ancilla: AncillaArg,
    /// Target operator for `mcu`: x, h, phase:p/q or matrix:<8 reals>.
    #[arg(long)]
    u: Option<String>,
    #[command(flatten)]
    policy: PolicyArgs,
    /// Emit the circuit lowered to single-qubit gates and CX.
    #[arg(long)]
    lower: bool,
    /// Output path; the circuit goes to stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    path: PathBuf,
    /// mcx:N, mcu:N:U or incr:N.
    #[arg(long)]
    target: String,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "exact")]
    phase: PhaseArg,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Random inputs for classical checks, besides the structured ones.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(clap::Args)]
struct ReportArgs {
    path: PathBuf,
    /// Largest denominator counted as low precision; defaults to 2^(n−1) for n input qubits.
    #[arg(long)]
    threshold: Option<BigInt>,
    /// Include the per-gate determinant phases.
    #[arg(long)]
    per_gate: bool,
}

#[derive(clap::Args)]
struct ScalingArgs {
    #[arg(value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[command(flatten)]
    policy: PolicyArgs,
}

fn parse_fraction(s: &str) -> Result<(u32, u32), String> {
    let (p, q) = s.split_once('/').ok_or("expected p/q")?;
    let p: u32 = p.parse().map_err(|_| format!("bad numerator `{p}`"))?;
    let q: u32 = q.parse().map_err(|_| format!("bad denominator `{q}`"))?;
    if p == 0 || p >= q {
        return Err(format!("{s} must lie strictly between 0 and 1"));
    }
    Ok((p, q))
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: mcsynth::Error| e.to_string())
}

fn read_circuit(path: &PathBuf) -> Result<Circuit, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    Ok(from_qasm(&text)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn synth(args: &SynthArgs) -> Result<ExitCode, CliError> {
    let policy = args.policy.policy()?;
    if args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let op = match (&args.u, args.family) {
        (Some(u), SynthFamily::Mcu) => Some(parse_op_spec(u).map_err(|e| CliError::Usage(e.to_string()))?),
        (None, SynthFamily::Mcu) => return Err(CliError::Usage("mcu needs --u".into())),
        (Some(_), _) => return Err(CliError::Usage("--u only applies to mcu".into())),
        (None, _) => None,
    };
    let n = args.n;
    let circuit = match (args.family, args.ancilla) {
        (SynthFamily::Mcx, AncillaArg::Clean) => mcx_clean(n, &policy),
        (SynthFamily::Mcx, AncillaArg::Dirty) => mcx_dirty(n, &policy),
        (SynthFamily::Mcx, AncillaArg::None) => mcx_no_ancilla(n, &policy),
        (SynthFamily::Mcu, AncillaArg::Clean) => mcu_clean(n, op.as_ref().unwrap(), &policy),
        (SynthFamily::Mcu, AncillaArg::Dirty) => match mcu_dirty(n, op.as_ref().unwrap(), &policy) {
            Err(mcsynth::Error::NotInvolution) => {
                return Err(CliError::Usage("a dirty ancilla needs an operator with U² = I".into()))
            }
            r => r,
        },
        (SynthFamily::Incr, AncillaArg::Clean) => incrementor(n, &policy),
        (SynthFamily::Incr, AncillaArg::None) => incrementor_ladder(n),
        (SynthFamily::Mcu, AncillaArg::None) | (SynthFamily::Incr, AncillaArg::Dirty) => {
            return Err(CliError::Usage("unsupported family and ancilla combination".into()))
        }
    }?;
    let circuit = if args.lower { lower_to_basis(&circuit)? } else { circuit };
    let text = to_qasm(&circuit);
    let summary = json!({ "schema": SCHEMA, "level": circuit.level().as_str(), "width": circuit.width(), "report": circuit.report() });
    match &args.output {
        Some(path) => {
            fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source })?;
            print_json(&summary);
        }
        None => {
            print!("{text}");
            eprintln!("{}", serde_json::to_string(&summary).expect("json values serialize"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let spec: TargetSpec = args.target.parse().map_err(|e: mcsynth::Error| CliError::Usage(e.to_string()))?;
    let c = read_circuit(&args.path)?;
    let opts = VerifyOptions {
        mode: match args.mode {
            ModeArg::Auto => CheckMode::Auto,
            ModeArg::Dense => CheckMode::Dense,
            ModeArg::Classical => CheckMode::Classical,
        },
        phase: match args.phase {
            PhaseArg::Exact => EquivMode::Exact,
            PhaseArg::Global => EquivMode::GlobalPhase,
        },
        tol: args.tol,
        samples: args.samples,
        seed: args.seed,
    };
    let verdict = verify(&c, &spec, &opts)?;
    let ok = verdict.equivalent;
    print_json(&json!({ "schema": SCHEMA, "target": args.target, "verdict": verdict }));
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn report(args: &ReportArgs) -> Result<ExitCode, CliError> {
    let c = read_circuit(&args.path)?;
    let audit = precision_audit(&c);
    let inputs = c.qubits_with_role(QubitRole::Input).len();
    let threshold = args.threshold.clone().unwrap_or_else(|| BigInt::from(1) << inputs.saturating_sub(1));
    let mut out = json!({
        "schema": SCHEMA,
        "level": c.level().as_str(),
        "width": c.width(),
        "report": c.report(),
        "audit": {
            "max_denominator": audit.max_denominator.as_ref().map(|q| q.to_string()),
            "det_phase": audit.total_phase.pi_fraction_string(),
            "threshold": threshold.to_string(),
            "low_precision": audit.is_low_precision(&threshold),
        },
    });
    if args.per_gate {
        out["audit"]["per_gate"] = audit
            .per_gate
            .iter()
            .map(|g| json!({ "index": g.index, "det_phase": g.det_phase.pi_fraction_string() }))
            .collect();
    }
    print_json(&out);
    Ok(ExitCode::SUCCESS)
}

fn scaling(args: &ScalingArgs) -> Result<ExitCode, CliError> {
    let policy = args.policy.policy()?;
    if args.n_min == 0 || args.n_min > args.n_max {
        return Err(CliError::Usage(format!("invalid range {}..{}", args.n_min, args.n_max)));
    }
    let ns: Vec<usize> =
        std::iter::successors(Some(args.n_min), |&n| n.checked_mul(2)).take_while(|&n| n <= args.n_max).collect();
    let table = scaling_report(args.family, &ns, &policy)?;
    let mut out = serde_json::to_value(&table).expect("reports serialize");
    out.as_object_mut().expect("report is an object").insert("schema".into(), json!(SCHEMA));
    print_json(&out);
    Ok(ExitCode::SUCCESS)
}

fn init_threads() {
    let Ok(v) = std::env::var("MCSYNTH_THREADS") else { return };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring MCSYNTH_THREADS={v}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let result = match &cli.command {
        Command::Synth(a) => synth(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Report(a) => report(a),
        Command::Scaling(a) => scaling(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("9/10"), Ok((9, 10)));
        for bad in ["1/1", "0/3", "3/2", "1", "a/b"] {
            assert!(parse_fraction(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn arguments_are_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
