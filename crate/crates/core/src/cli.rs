//! The `dqir` command line: a file-based pipeline over JSON job files.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::circuit::emit_product_formula;
use crate::dqir::OperatorPoly;
use crate::encoding::{lower, restricted_deviation, CodeSpec, EncodingAssignment};
use crate::error::{Error, Result};
use crate::mixer::{gdpm, gdpm_search, Library, leakage_circuit, ppm_construct, verify_criteria, CriteriaKind, DesignKind, MixerDesign};
use crate::pauli::PauliPoly;
use crate::penalties::{effective_cost, CostOperand, PenaltySpec};
use crate::problems::ProblemInstance;
use crate::report::{run_report, to_csv, ReportOperator, ReportSpec};
use crate::sim::exp_check_diagonal;

/// Seed for the random angles drawn by `verify`.
pub const VERIFY_SEED: u64 = 0xD41;

#[derive(Debug, Parser)]
#[command(name = "dqir", version, about = "Discrete-variable operator compiler")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct JobArgs {
    /// JSON job file.
    pub job: PathBuf,
    /// Write here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cost plus operator-level penalties, as operator JSON.
    Problem(JobArgs),
    /// Qubit layout of the job's encoding.
    Encode(JobArgs),
    /// Lowered Pauli polynomial.
    Lower(JobArgs),
    /// Product-formula circuit for `exp(-i beta H)`.
    Circuit {
        #[command(flatten)]
        args: JobArgs,
        /// Overrides the job's `beta`.
        #[arg(long)]
        beta: Option<f64>,
        /// Keep Pauli-exponential macros instead of compiling to CNOT + rotations.
        #[arg(long)]
        macros: bool,
    },
    /// Depth sweep over encodings and dimensions, as CSV.
    Report {
        #[arg(long, default_value = "eq")]
        operator: ReportOperator,
        #[arg(long, value_delimiter = ',', default_value = "sb,gray,unary,bu3_gray")]
        codes: Vec<String>,
        #[arg(long, default_value_t = 3)]
        d_min: usize,
        #[arg(long, default_value_t = 16)]
        d_max: usize,
        /// Omit the leading timestamp comment.
        #[arg(long)]
        no_timestamp: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Strict mixer synthesis.
    Mixer {
        #[command(subcommand)]
        command: MixerCommand,
    },
    /// Check a job's lowering and circuit, or a mixer design.
    Verify {
        job: Option<PathBuf>,
        #[arg(long, conflicts_with = "job")]
        design: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MixerKind {
    Single,
    Ppm,
}

#[derive(Debug, Subcommand)]
pub enum MixerCommand {
    Design {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        code: String,
        #[arg(long, value_enum, default_value = "single")]
        kind: MixerKind,
        /// Restrict the controlled-rotation library to at most this many controls.
        #[arg(long)]
        max_controls: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn default_beta() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
pub struct JobFile {
    #[serde(default = "crate::default_schema_version")]
    pub schema_version: u32,
    pub problem: ProblemInstance,
    #[serde(default)]
    pub penalties: Vec<PenaltySpec>,
    #[serde(default)]
    pub encoding: Option<Value>,
    #[serde(default = "default_beta")]
    pub beta: f64,
    /// Informational; the subcommand decides what is written.
    #[serde(default)]
    pub outputs: Vec<String>,
}

/// A job resolved into operators.
pub struct Pipeline {
    pub job: JobFile,
    pub operator: OperatorPoly,
    pub assignment: Option<EncodingAssignment>,
    penalties: Vec<(f64, CostOperand)>,
}

impl Pipeline {
    pub fn load(path: &Path) -> Result<Self> {
        Self::from_str(&std::fs::read_to_string(path)?)
    }

    pub fn from_str(text: &str) -> Result<Self> {
        let job: JobFile = serde_json::from_str(text)?;
        if job.schema_version != crate::SCHEMA_VERSION {
            return Err(Error::InvalidInstance(format!("unsupported schema_version {}", job.schema_version)));
        }
        job.problem.validate()?;
        let domain = job.problem.domain()?;
        let assignment = job.encoding.as_ref().map(|e| EncodingAssignment::from_json(&domain, e)).transpose()?;
        let penalties = job.penalties.iter().map(|p| Ok((p.weight, p.build(&domain, assignment.as_ref())?))).collect::<Result<Vec<_>>>()?;
        let dq: Vec<(f64, CostOperand)> = penalties.iter().filter(|(_, p)| matches!(p, CostOperand::Dqir(_))).cloned().collect();
        let operator = match effective_cost(&job.problem.minimization_cost()?, &dq, None)? {
            CostOperand::Dqir(o) => o,
            CostOperand::Qubit(_) => unreachable!("operator-level penalties only"),
        };
        Ok(Pipeline { job, operator, assignment, penalties })
    }

    pub fn assignment(&self) -> Result<&EncodingAssignment> {
        self.assignment.as_ref().ok_or_else(|| Error::Unassigned(self.operator.domain().vars()[0].id.clone()))
    }

    /// Full qubit Hamiltonian, qubit-level penalties included.
    pub fn lowered(&self) -> Result<PauliPoly> {
        let asg = self.assignment()?;
        match effective_cost(&self.operator, &self.qubit_penalties(), Some(asg))? {
            CostOperand::Qubit(p) => Ok(p),
            CostOperand::Dqir(o) => lower(&o, asg),
        }
    }

    fn qubit_penalties(&self) -> Vec<(f64, CostOperand)> {
        self.penalties.iter().filter(|(_, p)| matches!(p, CostOperand::Qubit(_))).cloned().collect()
    }
}

fn emit(output: &Option<PathBuf>, text: &str, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::LibraryInsufficient { .. } => 3,
        Error::DimensionCap { .. } => 4,
        _ => 2,
    }
}

/// Parse `args` (program name first) and run. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(err, "{}", json!({"error": "usage", "message": e.to_string().trim()}));
            return 2;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", json!({"error": e.kind(), "message": e.to_string()}));
            exit_code(&e)
        }
    }
}

/// Entry point for the binary.
pub fn main() -> std::process::ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::ExitCode::from(code as u8)
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Problem(a) => {
            let p = Pipeline::load(&a.job)?;
            emit(&a.output, &(p.operator.to_json_string() + "\n"), out)?;
        }
        Command::Encode(a) => {
            let p = Pipeline::load(&a.job)?;
            emit(&a.output, &pretty(&p.assignment()?.layout_json()), out)?;
        }
        Command::Lower(a) => {
            let p = Pipeline::load(&a.job)?;
            emit(&a.output, &pretty(&p.lowered()?.to_json()), out)?;
        }
        Command::Circuit { args, beta, macros } => {
            let p = Pipeline::load(&args.job)?;
            let c = emit_product_formula(&p.lowered()?, beta.unwrap_or(p.job.beta))?;
            let c = if *macros { c } else { c.compile() };
            emit(&args.output, &pretty(&c.to_json()), out)?;
        }
        Command::Report { operator, codes, d_min, d_max, no_timestamp, output } => {
            let codes = codes.iter().map(|s| CodeSpec::parse_short(s.trim())).collect::<Result<Vec<_>>>()?;
            let spec = ReportSpec { operator: *operator, codes, ds: (*d_min..=*d_max).collect() };
            let rows = run_report(&spec)?;
            let stamp = (!no_timestamp).then(|| format!("unix:{}", SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)));
            emit(output, &to_csv(&rows, stamp.as_deref()), out)?;
        }
        Command::Mixer { command: MixerCommand::Design { d, code, kind, max_controls, output } } => {
            let code = CodeSpec::parse_short(code)?;
            let design = match (kind, max_controls) {
                (MixerKind::Single, None) => gdpm(*d, code)?,
                (MixerKind::Single, Some(k)) => {
                    if !matches!(code, CodeSpec::Sb | CodeSpec::Gray | CodeSpec::DomainWall) {
                        return Err(Error::Unsupported(format!("--max-controls with {code}")));
                    }
                    code.check(*d)?;
                    let qubits: Vec<usize> = (0..code.n_qubits(*d)).collect();
                    gdpm_search(*d, code, &Library::controlled_ry(&qubits, 0, *k))?
                }
                (MixerKind::Ppm, _) => ppm_construct(*d, code)?,
            };
            emit(output, &pretty(&design.to_json()), out)?;
        }
        Command::Verify { job, design, output } => {
            let rows = match (job, design) {
                (_, Some(path)) => verify_design(&MixerDesign::from_json(&serde_json::from_str(&std::fs::read_to_string(path)?)?)?)?,
                (Some(path), None) => verify_job(&Pipeline::load(path)?)?,
                (None, None) => return Err(Error::InvalidInstance("verify needs a job file or --design".into())),
            };
            let mut text = String::from("check\tresult\tdetail\n");
            for (name, ok, detail) in &rows {
                text.push_str(&format!("{name}\t{}\t{detail}\n", if *ok { "pass" } else { "FAIL" }));
            }
            emit(output, &text, out)?;
            return Ok(if rows.iter().all(|r| r.1) { 0 } else { 1 });
        }
    }
    Ok(0)
}

type Row = (String, bool, String);

/// Hermiticity, restricted equivalence of the lowering, and exactness of the
/// diagonal exponential.
pub fn verify_job(p: &Pipeline) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let herm = p.operator.hermiticity_error();
    rows.push(("hermitian".into(), herm <= crate::BOOL_TOL, format!("{herm:e}")));
    let asg = p.assignment()?;
    let lowered = p.lowered()?;
    let dev = restricted_deviation(&p.operator, &lowered, asg)?;
    rows.push(("restricted_equiv".into(), dev <= 1e-9, format!("max deviation {dev:e}")));
    if lowered.is_diagonal() {
        let c = emit_product_formula(&lowered, p.job.beta)?;
        let err = exp_check_diagonal(&lowered, &c, p.job.beta)?;
        rows.push(("exact_exponential".into(), err <= 1e-9, format!("beta {} max deviation {err:e}", p.job.beta)));
    }
    Ok(rows)
}

/// Criteria and sampled leakage of a mixer design.
pub fn verify_design(d: &MixerDesign) -> Result<Vec<Row>> {
    let kinds: &[CriteriaKind] = match d.kind {
        DesignKind::SingleVar => &[CriteriaKind::SingleVar, CriteriaKind::FullMixer],
        DesignKind::Ppm => &[CriteriaKind::Ppm],
    };
    let mut rows = Vec::new();
    for &k in kinds {
        for c in verify_criteria(d, k)?.checks {
            rows.push((c.name, c.passed, c.detail));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED);
    let mask = d.feasible_mask();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let angles: Vec<f64> = (0..d.n_params()).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect();
        let c = d.circuit(&angles)?;
        for s in d.feasible_states() {
            worst = worst.max(leakage_circuit(&c, &mask, &crate::sim::basis_state(d.n_qubits, s))?);
        }
    }
    rows.push(("leakage".into(), worst <= 1e-10, format!("max {worst:e} over 100 angle draws")));
    Ok(rows)
}
