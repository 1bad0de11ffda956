//! Command-line front end: parses points, cylinders and systems, runs the
//! witness generators and oracles, re-verifies every witness independently,
//! and prints one JSON document per invocation.
//!
//! Exit codes: 0 when verified (or the report is clean), 1 on verification
//! failure or discrepancy, 2 on usage or parse errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use cantor_core::odometer::remark_demos;
use cantor_core::sensitivity::{sensitivity_witness, verify_sensitive, SensitivityConfig};
use cantor_core::uniformity::{hausdorff_check, uns_axioms_check, AxiomReport, CoordinateUniformity, SampleSpec};
use cantor_core::witness::{
    periodic_witness, shared_orbit_witness, transitivity_witness, verify_periodic, verify_shared_orbit,
    verify_transitivity,
};
use cantor_core::{Cylinder, Error, FiberLabel, OracleReport, Point, SftSystem};
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

pub use cantor_core::text::{parse_value, Value, ValueKind};

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cantor", version, about = "Chaos witnesses for the shift on {0,1}^A")]
pub struct Cli {
    /// Seed for every sampled check. Echoed in the output.
    #[arg(long, global = true, env = "CANTOR_SEED", default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Witness σ^k(U) ∩ V ≠ ∅ with an explicit cylinder W ⊆ U.
    WitnessTransitivity(PairArgs),
    /// A periodic point inside U.
    WitnessPeriodic(SingleArgs),
    /// A periodic point whose orbit meets both U and V.
    WitnessSharedOrbit(PairArgs),
    /// A sensitive-dependence witness for x inside a neighborhood.
    WitnessSensitivity(SensitivityArgs),
    /// Sampled checks of the uniformity and neighborhood-system axioms.
    VerifyUns(UnsArgs),
    /// Oracle report for one subshift of finite type.
    SftCheck(SftCheckArgs),
    /// Oracle reports for every binary system forbidding words of one length.
    SftSweep(SweepArgs),
    /// Dense-without-transitive and transitive-without-periodic demos.
    RemarkDemos(RemarkArgs),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub u: Cylinder,
    #[arg(long)]
    pub v: Cylinder,
    /// Anchor fiber used when a cylinder is the whole space.
    #[arg(long, default_value = "a")]
    pub fiber: FiberLabel,
    /// Verify the witness in this JSON file instead of generating one.
    #[arg(long)]
    pub check: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SingleArgs {
    #[arg(long)]
    pub u: Cylinder,
    #[arg(long, default_value = "a")]
    pub fiber: FiberLabel,
    #[arg(long)]
    pub check: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SensitivityArgs {
    #[arg(long)]
    pub x: Point,
    #[arg(long)]
    pub nbhd: Cylinder,
    /// Fiber carrying the alternating reference orbit.
    #[arg(long, default_value = "a")]
    pub fiber: FiberLabel,
    #[arg(long)]
    pub check: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UnsArgs {
    #[arg(long, default_value_t = 1000)]
    pub instances: usize,
    #[arg(long, default_value_t = 500)]
    pub hausdorff_samples: usize,
}

#[derive(Debug, Args)]
pub struct SftCheckArgs {
    /// e.g. "alphabet=2; forbid=11"
    #[arg(long)]
    pub system: SftSystem,
    #[arg(long, default_value_t = 5)]
    pub depth: usize,
    #[arg(long, default_value_t = 10)]
    pub period_bound: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub max_forbidden_len: u8,
    #[arg(long, default_value_t = 5)]
    pub depth: usize,
    #[arg(long, default_value_t = 10)]
    pub period_bound: usize,
}

#[derive(Debug, Args)]
pub struct RemarkArgs {
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=16))]
    pub depth: u8,
    #[arg(long, default_value_t = 12)]
    pub period_bound: usize,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Payload<T> {
    Witness(T),
    Report(T),
}

#[derive(Debug, Serialize)]
struct Envelope<T> {
    command: &'static str,
    inputs: BTreeMap<&'static str, String>,
    #[serde(flatten)]
    payload: Payload<T>,
    verified: bool,
    seed: u64,
}

/// Result of one invocation: what to print and how to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message.into(),
        }
    }
}

#[derive(Debug, Serialize)]
struct UnsReport {
    axioms: Vec<AxiomReport>,
}

#[derive(Debug, Serialize)]
struct SweepReport {
    systems: usize,
    discrepancies: usize,
    reports: Vec<OracleReport>,
}

fn emit<T: Serialize>(
    command: &'static str,
    inputs: BTreeMap<&'static str, String>,
    payload: Payload<T>,
    verified: bool,
    seed: u64,
) -> Outcome {
    let envelope = Envelope {
        command,
        inputs,
        payload,
        verified,
        seed,
    };
    let mut stdout = serde_json::to_string_pretty(&envelope).expect("report types serialize");
    stdout.push('\n');
    Outcome {
        code: if verified { EXIT_VERIFIED } else { EXIT_REFUTED },
        stdout,
        stderr: String::new(),
    }
}

/// Reads a witness from `path`. Accepts either a bare witness object or a
/// whole output document, whose `witness` field is then used.
fn load_witness<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let inner = match value.get("witness") {
        Some(w) => w.clone(),
        None => value,
    };
    serde_json::from_value(inner).map_err(|e| format!("{}: {e}", path.display()))
}

/// Loads `check` if given, otherwise generates.
fn obtain<T: DeserializeOwned>(check: &Option<PathBuf>, generate: impl FnOnce() -> Result<T, Error>) -> Result<T, Outcome> {
    match check {
        Some(path) => load_witness(path).map_err(Outcome::usage),
        None => generate().map_err(|e| match e {
            Error::Invariant(_) => Outcome {
                code: EXIT_REFUTED,
                stdout: String::new(),
                stderr: e.to_string(),
            },
            other => Outcome::usage(other.to_string()),
        }),
    }
}

pub fn execute(cli: Cli) -> Outcome {
    let seed = cli.seed;
    match cli.command {
        Command::WitnessTransitivity(args) => {
            let w = match obtain(&args.check, || Ok(transitivity_witness(&args.u, &args.v, &args.fiber))) {
                Ok(w) => w,
                Err(o) => return o,
            };
            let verified = verify_transitivity(&args.u, &args.v, &w);
            let inputs = BTreeMap::from([
                ("u", args.u.to_string()),
                ("v", args.v.to_string()),
                ("fiber", args.fiber.to_string()),
            ]);
            emit("witness-transitivity", inputs, Payload::Witness(w), verified, seed)
        }
        Command::WitnessPeriodic(args) => {
            let w = match obtain(&args.check, || Ok(periodic_witness(&args.u, &args.fiber))) {
                Ok(w) => w,
                Err(o) => return o,
            };
            let verified = verify_periodic(&args.u, &w);
            let inputs = BTreeMap::from([("u", args.u.to_string()), ("fiber", args.fiber.to_string())]);
            emit("witness-periodic", inputs, Payload::Witness(w), verified, seed)
        }
        Command::WitnessSharedOrbit(args) => {
            let w = match obtain(&args.check, || shared_orbit_witness(&args.u, &args.v, &args.fiber)) {
                Ok(w) => w,
                Err(o) => return o,
            };
            let verified = verify_shared_orbit(&args.u, &args.v, &w);
            let inputs = BTreeMap::from([
                ("u", args.u.to_string()),
                ("v", args.v.to_string()),
                ("fiber", args.fiber.to_string()),
            ]);
            emit("witness-shared-orbit", inputs, Payload::Witness(w), verified, seed)
        }
        Command::WitnessSensitivity(args) => {
            let cfg = SensitivityConfig {
                designated: args.fiber.clone(),
            };
            let w = match obtain(&args.check, || sensitivity_witness(&args.x, &args.nbhd, &cfg)) {
                Ok(w) => w,
                Err(o) => return o,
            };
            let verified = verify_sensitive(&args.x, &w, &args.nbhd);
            let inputs = BTreeMap::from([
                ("x", args.x.to_string()),
                ("nbhd", args.nbhd.to_string()),
                ("fiber", args.fiber.to_string()),
            ]);
            emit("witness-sensitivity", inputs, Payload::Witness(w), verified, seed)
        }
        Command::VerifyUns(args) => {
            let spec = SampleSpec {
                instances: args.instances,
                seed,
            };
            let mut axioms = uns_axioms_check(&CoordinateUniformity, spec);
            axioms.push(hausdorff_check(args.hausdorff_samples, seed));
            let verified = axioms.iter().all(AxiomReport::passed);
            let inputs = BTreeMap::from([
                ("instances", args.instances.to_string()),
                ("hausdorff_samples", args.hausdorff_samples.to_string()),
            ]);
            emit("verify-uns", inputs, Payload::Report(UnsReport { axioms }), verified, seed)
        }
        Command::SftCheck(args) => {
            let report = args.system.proposition_crosscheck(args.depth, args.period_bound);
            let verified = report.equivalence_holds;
            let inputs = BTreeMap::from([
                ("system", args.system.to_string()),
                ("depth", args.depth.to_string()),
                ("period_bound", args.period_bound.to_string()),
            ]);
            emit("sft-check", inputs, Payload::Report(report), verified, seed)
        }
        Command::SftSweep(args) => {
            let reports: Vec<OracleReport> = SftSystem::binary_family(usize::from(args.max_forbidden_len))
                .iter()
                .map(|s| s.proposition_crosscheck(args.depth, args.period_bound))
                .collect();
            let discrepancies = reports.iter().filter(|r| !r.equivalence_holds).count();
            let inputs = BTreeMap::from([
                ("max_forbidden_len", args.max_forbidden_len.to_string()),
                ("depth", args.depth.to_string()),
                ("period_bound", args.period_bound.to_string()),
            ]);
            let report = SweepReport {
                systems: reports.len(),
                discrepancies,
                reports,
            };
            emit("sft-sweep", inputs, Payload::Report(report), discrepancies == 0, seed)
        }
        Command::RemarkDemos(args) => {
            let report = remark_demos(usize::from(args.depth), args.period_bound, args.samples, seed);
            let verified = report.clean;
            let inputs = BTreeMap::from([
                ("depth", args.depth.to_string()),
                ("period_bound", args.period_bound.to_string()),
                ("samples", args.samples.to_string()),
            ]);
            emit("remark-demos", inputs, Payload::Report(report), verified, seed)
        }
    }
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome::usage(rendered)
            } else {
                Outcome {
                    code: EXIT_VERIFIED,
                    stdout: rendered,
                    stderr: String::new(),
                }
            }
        }
    }
}
