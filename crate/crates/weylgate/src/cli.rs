//! Command-line front end: generator export, identity verification, closure
//! analysis, unitary compilation, and processor runs, all emitting versioned
//! JSON reports.
//!
//! Exit code contract: 0 on success, 1 when a checked identity or contract
//! fails, 2 on usage errors. Identical configuration and seed produce
//! byte-identical reports.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::{
    clifford_generators, jordan_wigner, locality, square_root_identity_check,
    two_gate_universal_set,
};
use crate::closure::{lie_closure, GeneratorSet, UniversalityMode};
use crate::matrix::{random_unit_disc, ComplexMatrix, ComplexVector};
use crate::processor::{flatten, parse_program, superposition_malfunction, GateTableFile};
use crate::synthesis::{compile_unitary, CompilationReport, DEFAULT_MAX_STEPS};
use crate::weyl::{
    dth_root_identity_check, hermitian_generator_set, pairwise_products, qudit_generators,
    weyl_pair,
};

/// Report schema version stamped into every JSON report.
pub const REPORT_SCHEMA: u32 = 1;

/// Default residual tolerance for the verify suite.
pub const VERIFY_TOL: f64 = 1e-9;

/// Random coefficient draws per randomized identity check.
const RANDOM_DRAWS: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn input(err: impl std::fmt::Display) -> CliError {
    CliError::Input(err.to_string())
}

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(name = "weylgate", version, about = "Universal-gate algebra toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Export a generator family as JSON.
    Gens(FamilyArgs),
    /// Run the defining-identity suite for a family.
    Verify(FamilyArgs),
    /// Compute the Lie closure of a generator set and decide universality.
    Closure(FamilyArgs),
    /// Compile a target unitary into a gate sequence.
    Compile(CompileArgs),
    /// Processor simulator commands.
    #[command(subcommand)]
    Processor(ProcessorCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Clifford,
    Weyl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetChoice {
    /// The raw generator family.
    Raw,
    /// Anti-Hermitian combinations t+ = i(t + t†), t- = t - t† (weyl only).
    Tpm,
    /// The two-gate universal family.
    TwoGate,
}

impl SetChoice {
    fn name(self) -> &'static str {
        match self {
            SetChoice::Raw => "raw",
            SetChoice::Tpm => "tpm",
            SetChoice::TwoGate => "two-gate",
        }
    }
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Generator family.
    #[arg(long, value_enum)]
    pub family: Family,
    /// Qudit level count d (weyl family only).
    #[arg(long)]
    pub d: Option<usize>,
    /// Number of tensor factors.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Which generator set to use.
    #[arg(long = "use", value_enum, default_value_t = SetChoice::Raw)]
    pub set: SetChoice,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Residual tolerance override.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the report to this path as well as stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompileArgs {
    /// Path to the target unitary, JSON {"dim": N, "re": [...], "im": [...]}.
    #[arg(long)]
    pub target: PathBuf,
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Generator set (defaults to a universal choice for the family).
    #[arg(long = "use", value_enum)]
    pub set: Option<SetChoice>,
    /// Target up-to-phase distance.
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Cap on primitive exponentials before giving up.
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum ProcessorCommand {
    /// Run a program tape against a gate table.
    Run(ProcessorRunArgs),
}

#[derive(Args, Debug)]
pub struct ProcessorRunArgs {
    /// Program text file.
    #[arg(long)]
    pub program: PathBuf,
    /// Gate table JSON {"gates": {"U5": {dim, re, im}, ...}}.
    #[arg(long)]
    pub table: PathBuf,
    /// Input data-bus state JSON {"dim": D, "re": [...], "im": [...]}.
    #[arg(long)]
    pub input: PathBuf,
    /// Also report the malfunction entropy for a superposed program pair,
    /// as `j,k,alpha,beta` with complex literals like `0.5+0.5i`.
    #[arg(long)]
    pub superpose: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of executing one command: the JSON report plus whether every
/// checked identity or contract held.
#[derive(Debug)]
pub struct Outcome {
    pub report: String,
    pub pass: bool,
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CheckEntry {
    relation: String,
    detail: String,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    schema: u32,
    command: &'static str,
    family: String,
    d: Option<usize>,
    n: usize,
    seed: u64,
    checks: Vec<CheckEntry>,
    pass: bool,
}

#[derive(Serialize)]
struct GeneratorEntry {
    label: String,
    locality: Vec<usize>,
    matrix: ComplexMatrix,
}

#[derive(Serialize)]
struct GensReport {
    schema: u32,
    command: &'static str,
    family: String,
    d: Option<usize>,
    n: usize,
    r#use: String,
    generators: Vec<GeneratorEntry>,
}

#[derive(Serialize)]
struct ClosureReport {
    schema: u32,
    command: &'static str,
    family: String,
    d: Option<usize>,
    n: usize,
    r#use: String,
    dimension: usize,
    target: usize,
    universal: bool,
    mode: &'static str,
    depth: usize,
    residual_tol: f64,
    orthonormality_defect: f64,
    closure_defect: f64,
    certificates: Vec<String>,
    pass: bool,
}

#[derive(Serialize)]
struct CompileReportJson {
    schema: u32,
    command: &'static str,
    family: String,
    d: Option<usize>,
    n: usize,
    r#use: String,
    #[serde(flatten)]
    report: CompilationReport,
}

#[derive(Serialize)]
struct ProcessorReport {
    schema: u32,
    command: &'static str,
    tape_length: usize,
    final_state: ComplexVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    entropy_bits: Option<f64>,
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

/// Execute a parsed command line; the caller maps the outcome to exit codes.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Gens(args) => cmd_gens(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Closure(args) => cmd_closure(args),
        Command::Compile(args) => cmd_compile(args),
        Command::Processor(ProcessorCommand::Run(args)) => cmd_processor_run(args),
    }
}

/// Write the report to `--out` when requested.
pub fn persist(outcome: &Outcome, out: Option<&PathBuf>) -> Result<(), CliError> {
    if let Some(path) = out {
        fs::write(path, &outcome.report)
            .map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn family_name(family: Family) -> String {
    match family {
        Family::Clifford => "clifford".to_string(),
        Family::Weyl => "weyl".to_string(),
    }
}

fn weyl_d(args_d: Option<usize>) -> Result<usize, CliError> {
    args_d.ok_or_else(|| usage("the weyl family requires --d"))
}

/// Build the anti-Hermitian generator set selected by --family/--use.
fn select_set(
    family: Family,
    d: Option<usize>,
    n: usize,
    set: SetChoice,
) -> Result<GeneratorSet, CliError> {
    match (family, set) {
        (Family::Clifford, SetChoice::Raw) => {
            clifford_generators(n).map_err(input)?.generator_set().map_err(input)
        }
        (Family::Clifford, SetChoice::TwoGate) => two_gate_universal_set(n).map_err(input),
        (Family::Clifford, SetChoice::Tpm) => {
            Err(usage("--use tpm applies to the weyl family; clifford generators are already anti-Hermitian"))
        }
        (Family::Weyl, SetChoice::Raw) => Err(usage(
            "raw weyl generators are unitary but not anti-Hermitian; use --use tpm or --use two-gate",
        )),
        (Family::Weyl, SetChoice::Tpm) => {
            let gens = qudit_generators(weyl_d(d)?, n).map_err(input)?;
            hermitian_generator_set(&gens).map_err(input)
        }
        (Family::Weyl, SetChoice::TwoGate) => {
            let gens = qudit_generators(weyl_d(d)?, n).map_err(input)?;
            pairwise_products(&gens).map_err(input)
        }
    }
}

fn render_report<T: Serialize>(report: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(report).map_err(input)?;
    text.push('\n');
    Ok(text)
}

fn cmd_gens(args: &FamilyArgs) -> Result<Outcome, CliError> {
    let generators: Vec<GeneratorEntry> = match (args.family, args.set) {
        (Family::Weyl, SetChoice::Raw) => {
            // Raw t_k are unitary, not anti-Hermitian; export them directly.
            let d = weyl_d(args.d)?;
            let gens = qudit_generators(d, args.n).map_err(input)?;
            let dims = vec![d; args.n];
            gens.labels()
                .iter()
                .zip(gens.generators())
                .map(|(label, m)| {
                    Ok(GeneratorEntry {
                        label: label.clone(),
                        locality: support_vec(m, &dims)?,
                        matrix: m.clone(),
                    })
                })
                .collect::<Result<_, CliError>>()?
        }
        _ => {
            let set = select_set(args.family, args.d, args.n, args.set)?;
            (0..set.len())
                .map(|i| GeneratorEntry {
                    label: set.labels()[i].clone(),
                    locality: set.locality(i).map(btree_vec).unwrap_or_default(),
                    matrix: set.elements()[i].clone(),
                })
                .collect()
        }
    };
    let report = GensReport {
        schema: REPORT_SCHEMA,
        command: "gens",
        family: family_name(args.family),
        d: args.d,
        n: args.n,
        r#use: args.set.name().to_string(),
        generators,
    };
    let outcome = Outcome {
        report: render_report(&report)?,
        pass: true,
    };
    persist(&outcome, args.out.as_ref())?;
    Ok(outcome)
}

fn support_vec(m: &ComplexMatrix, dims: &[usize]) -> Result<Vec<usize>, CliError> {
    Ok(btree_vec(&locality(m, dims).map_err(input)?))
}

fn btree_vec(set: &BTreeSet<usize>) -> Vec<usize> {
    set.iter().copied().collect()
}

fn cmd_verify(args: &FamilyArgs) -> Result<Outcome, CliError> {
    let tol = args.tol.unwrap_or(VERIFY_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut checks = Vec::new();
    let mut push = |relation: &str, detail: String, residual: f64| {
        checks.push(CheckEntry {
            relation: relation.to_string(),
            detail,
            residual,
            tolerance: tol,
            pass: residual <= tol,
        });
    };

    match args.family {
        Family::Clifford => {
            let gens = clifford_generators(args.n).map_err(input)?;
            push(
                "eCl",
                "e_j e_k + e_k e_j = -2 delta_jk (anti-Hermitian convention)".to_string(),
                gens.anticommutation_residual(),
            );
            let mut worst: f64 = 0.0;
            for _ in 0..RANDOM_DRAWS {
                let coeffs: Vec<C64> = (0..gens.len())
                    .map(|_| random_unit_disc(&mut rng))
                    .collect();
                worst = worst.max(square_root_identity_check(&coeffs, &gens).map_err(input)?);
            }
            push(
                "ClRoot",
                format!("(sum c_k e_k)^2 = sum c_k^2 over {RANDOM_DRAWS} random draws"),
                worst,
            );
            let ferm = jordan_wigner(args.n).map_err(input)?;
            push(
                "fermcom",
                "{a_j, a_k} = {a_j+, a_k+} = 0, {a_j+, a_k} = delta_jk".to_string(),
                ferm.relations_residual(),
            );
        }
        Family::Weyl => {
            let d = weyl_d(args.d)?;
            let pair = weyl_pair(d).map_err(input)?;
            push(
                "UVcom",
                "U V = zeta V U with unitary U, V of order d".to_string(),
                pair.relations_residual(),
            );
            let gens = qudit_generators(d, args.n).map_err(input)?;
            push(
                "taucom",
                "tau_x tau_y = zeta tau_y tau_x (cyclic) and tau_mu^d = 1".to_string(),
                gens.tau_relations_residual(),
            );
            let (s, residual) = gens.commutation_exponent();
            let order = gens.order_residual();
            push(
                "TorDef",
                format!("t_j t_k = zeta^{s} t_k t_j for all j < k, and t_k^d = 1"),
                residual.max(order),
            );
            let mut worst: f64 = 0.0;
            for _ in 0..RANDOM_DRAWS {
                let coeffs: Vec<C64> = (0..gens.len())
                    .map(|_| random_unit_disc(&mut rng))
                    .collect();
                worst = worst.max(dth_root_identity_check(&coeffs, &gens).map_err(input)?);
            }
            push(
                "dRoot",
                format!("(sum c_k t_k)^d = (sum c_k^d) over {RANDOM_DRAWS} random draws"),
                worst,
            );
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    let report = VerifyReport {
        schema: REPORT_SCHEMA,
        command: "verify",
        family: family_name(args.family),
        d: args.d,
        n: args.n,
        seed: args.seed,
        checks,
        pass,
    };
    let outcome = Outcome {
        report: render_report(&report)?,
        pass,
    };
    persist(&outcome, args.out.as_ref())?;
    Ok(outcome)
}

fn cmd_closure(args: &FamilyArgs) -> Result<Outcome, CliError> {
    let set = select_set(args.family, args.d, args.n, args.set)?;
    let tol = args.tol.unwrap_or(crate::closure::CLOSURE_RESIDUAL_TOL);
    let result = lie_closure(&set, tol, None).map_err(input)?;
    let target = UniversalityMode::Projective.target(set.dim());
    let orthonormality_defect = result.orthonormality_defect();
    let closure_defect = result.closure_defect();
    let pass = orthonormality_defect < 1e-8 && closure_defect < 1e-7;
    let report = ClosureReport {
        schema: REPORT_SCHEMA,
        command: "closure",
        family: family_name(args.family),
        d: args.d,
        n: args.n,
        r#use: args.set.name().to_string(),
        dimension: result.dimension(),
        target,
        universal: result.dimension() >= target,
        mode: "projective",
        depth: result.depth(),
        residual_tol: tol,
        orthonormality_defect,
        closure_defect,
        certificates: result.certificates(),
        pass,
    };
    let outcome = Outcome {
        report: render_report(&report)?,
        pass,
    };
    persist(&outcome, args.out.as_ref())?;
    Ok(outcome)
}

fn cmd_compile(args: &CompileArgs) -> Result<Outcome, CliError> {
    let set_choice = args.set.unwrap_or(match args.family {
        Family::Clifford => SetChoice::TwoGate,
        Family::Weyl => SetChoice::Tpm,
    });
    let set = select_set(args.family, args.d, args.n, set_choice)?;
    let text = fs::read_to_string(&args.target)
        .map_err(|e| input(format!("cannot read {}: {e}", args.target.display())))?;
    let target: ComplexMatrix =
        serde_json::from_str(&text).map_err(|e| input(format!("bad target matrix: {e}")))?;
    let tol = args.tol.unwrap_or(crate::closure::CLOSURE_RESIDUAL_TOL);
    let closure = lie_closure(&set, tol, None).map_err(input)?;
    let report =
        compile_unitary(&target, &set, &closure, args.epsilon, args.max_steps).map_err(input)?;
    let pass = report.converged;
    let wrapped = CompileReportJson {
        schema: REPORT_SCHEMA,
        command: "compile",
        family: family_name(args.family),
        d: args.d,
        n: args.n,
        r#use: set_choice.name().to_string(),
        report,
    };
    let outcome = Outcome {
        report: render_report(&wrapped)?,
        pass,
    };
    persist(&outcome, args.out.as_ref())?;
    Ok(outcome)
}

/// Parse a complex literal: `1.5`, `-2i`, `0.5+0.5i`, `1e-3-2e-4i`.
pub fn parse_complex(text: &str) -> Result<C64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty complex literal".to_string());
    }
    if let Some(body) = s.strip_suffix('i') {
        // Find the split between real and imaginary parts: the last +/- that
        // is not a leading sign and not part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
                split = Some(i);
                break;
            }
        }
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let re: f64 = re_part
            .trim()
            .parse()
            .map_err(|e| format!("bad real part: {e}"))?;
        let im: f64 = match im_part.trim() {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other
                .parse()
                .map_err(|e| format!("bad imaginary part: {e}"))?,
        };
        Ok(C64::new(re, im))
    } else {
        let re: f64 = s.parse().map_err(|e| format!("bad real literal: {e}"))?;
        Ok(C64::new(re, 0.0))
    }
}

fn parse_superpose(text: &str) -> Result<(usize, usize, C64, C64), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(usage("--superpose expects j,k,alpha,beta"));
    }
    let j: usize = parts[0]
        .trim()
        .parse()
        .map_err(|e| usage(format!("bad j: {e}")))?;
    let k: usize = parts[1]
        .trim()
        .parse()
        .map_err(|e| usage(format!("bad k: {e}")))?;
    let alpha = parse_complex(parts[2]).map_err(|e| usage(format!("bad alpha: {e}")))?;
    let beta = parse_complex(parts[3]).map_err(|e| usage(format!("bad beta: {e}")))?;
    Ok((j, k, alpha, beta))
}

fn cmd_processor_run(args: &ProcessorRunArgs) -> Result<Outcome, CliError> {
    let program_text = fs::read_to_string(&args.program)
        .map_err(|e| input(format!("cannot read {}: {e}", args.program.display())))?;
    let program =
        parse_program(&program_text).map_err(|e| input(format!("program syntax error at {e}")))?;
    let table_text = fs::read_to_string(&args.table)
        .map_err(|e| input(format!("cannot read {}: {e}", args.table.display())))?;
    let table_file: GateTableFile =
        serde_json::from_str(&table_text).map_err(|e| input(format!("bad gate table: {e}")))?;
    let table = table_file.into_table().map_err(input)?;
    let state_text = fs::read_to_string(&args.input)
        .map_err(|e| input(format!("cannot read {}: {e}", args.input.display())))?;
    let data_in: ComplexVector =
        serde_json::from_str(&state_text).map_err(|e| input(format!("bad input state: {e}")))?;

    let tape_length = flatten(&program).map_err(input)?.len();
    let final_state = crate::processor::run(&program, &table, &data_in).map_err(input)?;
    let entropy_bits = match &args.superpose {
        Some(arg) => {
            let (j, k, alpha, beta) = parse_superpose(arg)?;
            Some(superposition_malfunction(&table, j, k, alpha, beta, &data_in).map_err(input)?)
        }
        None => None,
    };

    let report = ProcessorReport {
        schema: REPORT_SCHEMA,
        command: "processor-run",
        tape_length,
        final_state,
        entropy_bits,
    };
    let outcome = Outcome {
        report: render_report(&report)?,
        pass: true,
    };
    persist(&outcome, args.out.as_ref())?;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family_args(family: Family, d: Option<usize>, n: usize, set: SetChoice) -> FamilyArgs {
        FamilyArgs {
            family,
            d,
            n,
            set,
            seed: 0,
            tol: None,
            out: None,
        }
    }

    #[test]
    fn verify_clifford_passes() {
        let outcome = cmd_verify(&family_args(Family::Clifford, None, 2, SetChoice::Raw)).unwrap();
        assert!(outcome.pass);
        let value: serde_json::Value = serde_json::from_str(&outcome.report).unwrap();
        assert_eq!(value["schema"], 1);
        let relations: Vec<&str> = value["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["relation"].as_str().unwrap())
            .collect();
        assert_eq!(relations, ["eCl", "ClRoot", "fermcom"]);
    }

    #[test]
    fn verify_weyl_passes() {
        let outcome = cmd_verify(&family_args(Family::Weyl, Some(3), 2, SetChoice::Raw)).unwrap();
        assert!(outcome.pass);
        let value: serde_json::Value = serde_json::from_str(&outcome.report).unwrap();
        let relations: Vec<&str> = value["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["relation"].as_str().unwrap())
            .collect();
        assert_eq!(relations, ["UVcom", "taucom", "TorDef", "dRoot"]);
    }

    #[test]
    fn closure_reports_match_known_dimensions() {
        let outcome = cmd_closure(&family_args(Family::Clifford, None, 2, SetChoice::Raw)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&outcome.report).unwrap();
        assert_eq!(value["dimension"], 10);
        assert_eq!(value["universal"], false);

        let outcome = cmd_closure(&family_args(Family::Weyl, Some(3), 1, SetChoice::Tpm)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&outcome.report).unwrap();
        assert_eq!(value["dimension"], 8);
        assert_eq!(value["universal"], true);
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let a = cmd_verify(&family_args(Family::Weyl, Some(3), 1, SetChoice::Raw)).unwrap();
        let b = cmd_verify(&family_args(Family::Weyl, Some(3), 1, SetChoice::Raw)).unwrap();
        assert_eq!(a.report, b.report);
        let a = cmd_closure(&family_args(Family::Clifford, None, 2, SetChoice::TwoGate)).unwrap();
        let b = cmd_closure(&family_args(Family::Clifford, None, 2, SetChoice::TwoGate)).unwrap();
        assert_eq!(a.report, b.report);
    }

    #[test]
    fn weyl_without_d_is_usage_error() {
        let err = cmd_closure(&family_args(Family::Weyl, None, 1, SetChoice::Tpm)).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
        let err = cmd_closure(&family_args(Family::Weyl, Some(3), 1, SetChoice::Raw)).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
    }

    #[test]
    fn gens_exports_labelled_matrices() {
        let outcome = cmd_gens(&family_args(Family::Clifford, None, 2, SetChoice::Raw)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&outcome.report).unwrap();
        let gens = value["generators"].as_array().unwrap();
        assert_eq!(gens.len(), 4);
        assert_eq!(gens[0]["label"], "e0");
        assert_eq!(gens[0]["matrix"]["dim"], 4);
        // Raw weyl export works even though the t_k are not anti-Hermitian.
        let outcome = cmd_gens(&family_args(Family::Weyl, Some(3), 1, SetChoice::Raw)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&outcome.report).unwrap();
        assert_eq!(value["generators"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5").unwrap(), C64::new(1.5, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), C64::new(0.0, -2.0));
        assert_eq!(parse_complex("0.5+0.5i").unwrap(), C64::new(0.5, 0.5));
        assert_eq!(parse_complex("1e-3-2e-4i").unwrap(), C64::new(1e-3, -2e-4));
        assert_eq!(parse_complex("i").unwrap(), C64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), C64::new(0.0, -1.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("2+").is_err());
    }
}
