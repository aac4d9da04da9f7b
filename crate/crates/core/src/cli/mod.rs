//! Command-line front end.
//!
//! Exit codes: `0` success or feasible, `1` a verification or self-test
//! failure, `2` no answer exists (infeasible system, singular matrix),
//! `64` usage error, `65` malformed input, `66` instance too large for the
//! brute-force oracle.

mod instance;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use instance::{Instance, ParseError};

use crate::error::Error;
use crate::lifting::GeneratingSet;
use crate::matrix::{MatModK, VecModK};
use crate::oracle::{
    brute_force_solve, determinant_by_permutations, subgroup_closure, ENUMERATION_LIMIT,
};
use crate::residue_ring::Modulus;
use crate::solver::{feasible, nullspace, solve, SolveOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_NO_ANSWER: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_TOO_LARGE: i32 = 66;

#[derive(Parser, Debug)]
#[command(
    name = "lincong",
    version,
    about = "Linear congruences and nullspaces modulo k"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether A x = y (mod k) has a solution
    Feasible(InstanceArgs),
    /// Produce a solution of A x = y (mod k), or report infeasibility
    Solve(InstanceArgs),
    /// Generating set for {x : A x = 0 (mod k)}
    Nullspace(InstanceArgs),
    /// Determinant of A modulo k
    Det(InstanceArgs),
    /// Inverse of A modulo k
    Inverse(InstanceArgs),
    /// Cross-check every operation against brute force on random instances
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct InstanceArgs {
    /// Modulus; overrides the one in the instance file
    #[arg(short = 'k', long = "modulus")]
    modulus: Option<u64>,
    /// Instance file, or `-` for stdin
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also check the answer against exhaustive enumeration
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances per modulus
    #[arg(long, default_value_t = 100)]
    cases: usize,
    /// Test only this modulus instead of the default set
    #[arg(short = 'k', long = "modulus")]
    modulus: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// JSON shape shared by every instance subcommand; absent fields are omitted.
#[derive(Serialize, Debug, Default)]
pub struct Report {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<Vec<u64>>>,
}

const FEASIBLE: &str = "feasible";
const INFEASIBLE: &str = "infeasible";

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge(_) => EXIT_TOO_LARGE,
            _ => EXIT_DATA,
        };
        Self::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::new(EXIT_FAILURE, e.to_string())
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let target: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Selftest(args) => run_selftest(&args, out),
        Command::Feasible(args) => with_instance(&args, stdin, out, err, cmd_feasible),
        Command::Solve(args) => with_instance(&args, stdin, out, err, cmd_solve),
        Command::Nullspace(args) => with_instance(&args, stdin, out, err, cmd_nullspace),
        Command::Det(args) => with_instance(&args, stdin, out, err, cmd_det),
        Command::Inverse(args) => with_instance(&args, stdin, out, err, cmd_inverse),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// A loaded instance with its effective modulus.
struct Loaded {
    modulus: Modulus,
    a: MatModK,
    y: Option<VecModK>,
}

impl Loaded {
    fn rhs(&self) -> Result<&VecModK, Failure> {
        self.y
            .as_ref()
            .ok_or_else(|| Failure::new(EXIT_DATA, "instance has no right-hand side y"))
    }
}

type Handler = fn(&Loaded, &InstanceArgs, &mut dyn Write, &mut dyn Write) -> Result<i32, Failure>;

fn with_instance(
    args: &InstanceArgs,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
    handler: Handler,
) -> Result<i32, Failure> {
    let text = if args.input.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&args.input).map_err(|e| {
            Failure::new(
                EXIT_USAGE,
                format!("cannot read {}: {e}", args.input.display()),
            )
        })?
    };
    let inst = Instance::parse(&text).map_err(|e| Failure::new(EXIT_DATA, e.to_string()))?;
    let k = args.modulus.unwrap_or(inst.k);
    let modulus = Modulus::new(k).map_err(|e| {
        let code = if args.modulus.is_some() {
            EXIT_USAGE
        } else {
            EXIT_DATA
        };
        Failure::new(code, e.to_string())
    })?;
    let loaded = Loaded {
        a: inst.matrix(&modulus)?,
        y: inst.rhs(&modulus),
        modulus,
    };
    handler(&loaded, args, out, err)
}

fn emit(
    args: &InstanceArgs,
    out: &mut dyn Write,
    report: &Report,
    text: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), Failure> {
    match args.format {
        Format::Json => {
            let json = serde_json::to_string(report).expect("report serializes");
            writeln!(out, "{json}")?;
        }
        Format::Text => text(out)?,
    }
    Ok(())
}

fn line(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn verified(err: &mut dyn Write, what: &str) -> Result<(), Failure> {
    writeln!(err, "verified {what} against brute force")?;
    Ok(())
}

fn mismatch(what: &str) -> Failure {
    Failure::new(EXIT_FAILURE, format!("verification failed: {what}"))
}

fn cmd_feasible(
    inst: &Loaded,
    args: &InstanceArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let y = inst.rhs()?;
    let ok = feasible(&inst.a, y)?;
    if args.verify {
        if brute_force_solve(&inst.a, y)?.is_empty() == ok {
            return Err(mismatch("feasibility"));
        }
        verified(err, "feasibility")?;
    }
    let status = if ok { FEASIBLE } else { INFEASIBLE };
    let report = Report {
        status,
        ..Report::default()
    };
    emit(args, out, &report, |o| writeln!(o, "{status}"))?;
    Ok(if ok { EXIT_OK } else { EXIT_NO_ANSWER })
}

fn cmd_solve(
    inst: &Loaded,
    args: &InstanceArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let y = inst.rhs()?;
    let outcome = solve(&inst.a, y)?;
    if args.verify {
        let truth = brute_force_solve(&inst.a, y)?;
        let agrees = match &outcome {
            SolveOutcome::Solution(x) => truth.contains(x),
            SolveOutcome::Infeasible => truth.is_empty(),
        };
        if !agrees {
            return Err(mismatch("solution"));
        }
        verified(err, "solution")?;
    }
    match outcome {
        SolveOutcome::Solution(x) => {
            let report = Report {
                status: FEASIBLE,
                solution: Some(x.entries().to_vec()),
                ..Report::default()
            };
            emit(args, out, &report, |o| {
                writeln!(o, "{FEASIBLE}")?;
                writeln!(o, "{}", line(x.entries()))
            })?;
            Ok(EXIT_OK)
        }
        SolveOutcome::Infeasible => {
            let report = Report {
                status: INFEASIBLE,
                ..Report::default()
            };
            emit(args, out, &report, |o| writeln!(o, "{INFEASIBLE}"))?;
            Ok(EXIT_NO_ANSWER)
        }
    }
}

fn cmd_nullspace(
    inst: &Loaded,
    args: &InstanceArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let gens = nullspace(&inst.a)?;
    if args.verify {
        let zero = VecModK::zeros(inst.a.rows(), &inst.modulus);
        let truth = brute_force_solve(&inst.a, &zero)?;
        if subgroup_closure(&gens)? != truth {
            return Err(mismatch("nullspace span"));
        }
        verified(err, "nullspace span")?;
    }
    let report = Report {
        status: FEASIBLE,
        generators: Some(gens.as_rows()),
        ..Report::default()
    };
    emit(args, out, &report, |o| {
        for g in gens.iter() {
            writeln!(o, "{}", line(g.entries()))?;
        }
        Ok(())
    })?;
    Ok(EXIT_OK)
}

fn cmd_det(
    inst: &Loaded,
    args: &InstanceArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let det = inst.a.determinant_mod_k()?;
    if args.verify {
        if determinant_by_permutations(&inst.a)? != det {
            return Err(mismatch("determinant"));
        }
        verified(err, "determinant")?;
    }
    let report = Report {
        status: FEASIBLE,
        determinant: Some(det.value()),
        ..Report::default()
    };
    emit(args, out, &report, |o| writeln!(o, "{det}"))?;
    Ok(EXIT_OK)
}

fn cmd_inverse(
    inst: &Loaded,
    args: &InstanceArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    match inst.a.inverse_mod_k() {
        Ok(inv) => {
            if args.verify {
                let id = MatModK::identity(inst.a.rows(), &inst.modulus)?;
                if inst.a.mat_mul(&inv)? != id || inv.mat_mul(&inst.a)? != id {
                    return Err(mismatch("inverse"));
                }
                verified(err, "inverse")?;
            }
            let report = Report {
                status: FEASIBLE,
                inverse: Some(inv.to_rows()),
                ..Report::default()
            };
            emit(args, out, &report, |o| {
                for r in inv.to_rows() {
                    writeln!(o, "{}", line(&r))?;
                }
                Ok(())
            })?;
            Ok(EXIT_OK)
        }
        Err(Error::NotInvertible { det, modulus }) => {
            let report = Report {
                status: INFEASIBLE,
                determinant: Some(det),
                ..Report::default()
            };
            emit(args, out, &report, |o| {
                writeln!(
                    o,
                    "not invertible: determinant {det} is not a unit mod {modulus}"
                )
            })?;
            Ok(EXIT_NO_ANSWER)
        }
        Err(e) => Err(e.into()),
    }
}

const DEFAULT_MODULI: [u64; 9] = [2, 3, 4, 5, 6, 8, 9, 12, 30];

fn run_selftest(args: &SelftestArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let moduli = match args.modulus {
        Some(k) => vec![k],
        None => DEFAULT_MODULI.to_vec(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut failures = 0;
    for k in moduli {
        let modulus = Modulus::new(k).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
        let stats = selftest_modulus(&modulus, args.cases, &mut rng)?;
        failures += stats.failures;
        writeln!(
            out,
            "{} k={k} cases={} solved={} infeasible={} failures={}",
            if stats.failures == 0 { "ok  " } else { "FAIL" },
            args.cases,
            stats.solved,
            stats.infeasible,
            stats.failures
        )?;
    }
    writeln!(
        out,
        "{}",
        if failures == 0 {
            "selftest passed"
        } else {
            "selftest FAILED"
        }
    )?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_FAILURE })
}

#[derive(Default)]
struct SelftestStats {
    solved: usize,
    infeasible: usize,
    failures: usize,
}

/// Largest `n <= 3` with `k^n` under the enumeration limit.
fn max_dim(k: u64) -> Option<usize> {
    (1..=3usize).rev().find(|&n| {
        k.checked_pow(n as u32)
            .is_some_and(|s| s <= ENUMERATION_LIMIT)
    })
}

fn selftest_modulus(
    modulus: &Modulus,
    cases: usize,
    rng: &mut ChaCha8Rng,
) -> Result<SelftestStats, Failure> {
    let k = modulus.k();
    let top = max_dim(k).ok_or_else(|| {
        Failure::new(
            EXIT_TOO_LARGE,
            format!("modulus {k} is too large for exhaustive cross-checks"),
        )
    })?;
    let mut stats = SelftestStats::default();
    for _ in 0..cases {
        let n = rng.random_range(1..=top);
        let data: Vec<u64> = (0..n * n).map(|_| rng.random_range(0..k)).collect();
        let rhs: Vec<u64> = (0..n).map(|_| rng.random_range(0..k)).collect();
        let a = MatModK::from_u64(n, n, &data, modulus)?;
        let y = VecModK::from_u64(&rhs, modulus);

        let truth = brute_force_solve(&a, &y)?;
        let solve_ok = match solve(&a, &y)? {
            SolveOutcome::Solution(x) => {
                stats.solved += 1;
                truth.contains(&x)
            }
            SolveOutcome::Infeasible => {
                stats.infeasible += 1;
                truth.is_empty()
            }
        };
        let null_ok = null_matches(&a)?;
        let det = a.determinant_mod_k()?;
        let det_ok = n > 8 || determinant_by_permutations(&a)? == det;
        let inv_ok = match a.inverse_mod_k() {
            Ok(inv) => det.is_unit() && a.mat_mul(&inv)? == MatModK::identity(n, modulus)?,
            Err(Error::NotInvertible { .. }) => !det.is_unit(),
            Err(e) => return Err(e.into()),
        };
        if !(solve_ok && null_ok && det_ok && inv_ok) {
            stats.failures += 1;
        }
    }
    Ok(stats)
}

fn null_matches(a: &MatModK) -> Result<bool, Failure> {
    let gens: GeneratingSet = nullspace(a)?;
    let zero = VecModK::zeros(a.rows(), a.modulus());
    Ok(subgroup_closure(&gens)? == brute_force_solve(a, &zero)?)
}
