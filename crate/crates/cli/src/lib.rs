//! Command-line front end: spec files in, dual reports and sweep tables out.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when the oracle disagrees
//! with a closed-form dual.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use tracedual_core::dual::{self, DualReport, Theorem};
use tracedual_core::sweep::{run_sweep, SweepConfig};
use tracedual_core::{
    build_code, decompose, verify_dual, Code, FieldCtx, Form, FqPoly, Rn, RnElem, Variant,
};

pub mod specfile;

use specfile::{format_poly, format_spec, GeneratorFile, SpecFile};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed or invalid input (exit 1).
    Input(String),
    /// A dual failed verification (exit 2).
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tracedual_core::Error> for CliError {
    fn from(e: tracedual_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "tracedual", version, about = "Trace duals of F_q-linear (skew) cyclic F_{q^2}-codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the trace dual of the code described by a spec file.
    Dual(DualArgs),
    /// Recover the standard-form spec of the module generated by a generators file.
    Canonicalize {
        /// File with a `variant`/`q`/`n` header and `c=…; d=…` generator lines.
        file: PathBuf,
    },
    /// Compare closed-form duals with the oracle over all factorizations.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Te,
    Th,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::Te => Form::TraceEuclidean,
            FormArg::Th => Form::TraceHermitian,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Auto,
    CyclicSpecial,
    CyclicWq,
    CyclicGeneral,
    SkewSpecial,
    SkewGeneral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Cyclic,
    Skew,
}

#[derive(clap::Args, Debug)]
pub struct DualArgs {
    /// Spec file.
    pub spec: PathBuf,
    /// Inner product; overrides the spec file's `form` (default te).
    #[arg(long, value_enum)]
    pub form: Option<FormArg>,
    /// Construction to use; `auto` picks one from the spec.
    #[arg(long, value_enum, default_value = "auto")]
    pub theorem: TheoremArg,
    /// Skip the brute-force check.
    #[arg(long)]
    pub no_verify: bool,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Also print generators in infix notation.
    #[arg(long)]
    pub pretty: bool,
    /// Negative control: add 1 to one coefficient of a dual generator before
    /// verifying, e.g. `gen1_c:0`.
    #[arg(long, value_name = "PART:INDEX")]
    pub bump: Option<String>,
}

#[derive(clap::Args, Debug)]
pub struct SweepArgs {
    /// Base field order, as p, p^e or a prime power.
    #[arg(long)]
    pub q: String,
    /// Comma-separated coefficients of the base field modulus (e > 1).
    #[arg(long)]
    pub modulus: Option<String>,
    /// Largest length, at most 64.
    #[arg(long)]
    pub nmax: usize,
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[arg(long, value_enum)]
    pub form: FormArg,
    /// Seed for the mixing polynomials.
    #[arg(long, env = "TRACEDUAL_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Mixing polynomials per factorization, the first being zero.
    #[arg(long, default_value_t = 5)]
    pub choices: usize,
    /// Write one row per spec to this CSV file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Coefficients of a polynomial: residues over a prime field, digit
/// vectors over an extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeffs {
    Prime(Vec<u32>),
    Ext(Vec<Vec<u32>>),
}

impl Coeffs {
    pub fn of(k: &FieldCtx, p: &FqPoly) -> Coeffs {
        if k.degree() == 1 {
            Coeffs::Prime(p.coeffs().iter().map(|c| c.index()).collect())
        } else {
            Coeffs::Ext(p.coeffs().iter().map(|&c| k.digits(c)).collect())
        }
    }
}

/// Machine-readable dual report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualJson {
    pub theorem: String,
    pub form: String,
    pub variant: String,
    pub q: String,
    pub n: usize,
    pub h: Option<Coeffs>,
    pub k: Option<Coeffs>,
    pub cprime: Option<Coeffs>,
    pub dprime: Option<Coeffs>,
    pub dual_gen1_c: Coeffs,
    pub dual_gen1_d: Coeffs,
    pub dual_gen2_c: Coeffs,
    pub dual_gen2_d: Coeffs,
    pub dim_code: usize,
    pub dim_dual: usize,
    pub verified: Option<bool>,
    pub warnings: Vec<String>,
}

/// CSV row of a sweep; the field order is the header.
#[derive(Debug, Serialize)]
struct CsvRow {
    n: usize,
    deg_w: usize,
    deg_l: usize,
    deg_f: usize,
    deg_g: usize,
    deg_q: i64,
    dim_code: usize,
    dim_dual: usize,
    verified: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Dual(args) => cmd_dual(args, out, err),
        Command::Canonicalize { file } => cmd_canonicalize(file, out),
        Command::Sweep(args) => cmd_sweep(args, out, err),
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn theorem_of(arg: TheoremArg) -> Option<Theorem> {
    match arg {
        TheoremArg::Auto => None,
        TheoremArg::CyclicSpecial => Some(Theorem::CyclicSpecial),
        TheoremArg::CyclicWq => Some(Theorem::CyclicWMultiplied),
        TheoremArg::CyclicGeneral => Some(Theorem::CyclicGeneral),
        TheoremArg::SkewSpecial => Some(Theorem::SkewSpecial),
        TheoremArg::SkewGeneral => Some(Theorem::SkewGeneral),
    }
}

/// Adds 1 to coefficient `index` of the named generator part.
fn bump(rn: &Rn<'_>, report: &mut DualReport, target: &str) -> Result<(), CliError> {
    let bad = || CliError::Input(format!("--bump expects gen1_c|gen1_d|gen2_c|gen2_d:INDEX, got `{target}`"));
    let (part, index) = target.split_once(':').ok_or_else(bad)?;
    let index: usize = index.parse().map_err(|_| bad())?;
    if index >= rn.n() {
        return Err(CliError::Input(format!("--bump index {index} is not below n = {}", rn.n())));
    }
    let r = rn.polys();
    let unit = FqPoly::x_pow(index);
    let bumped = |g: &RnElem, c_part: bool| {
        if c_part {
            rn.elem(&r.add(g.c(), &unit), g.d())
        } else {
            rn.elem(g.c(), &r.add(g.d(), &unit))
        }
    };
    match part {
        "gen1_c" => report.gen1 = bumped(&report.gen1, true),
        "gen1_d" => report.gen1 = bumped(&report.gen1, false),
        "gen2_c" => report.gen2 = bumped(&report.gen2, true),
        "gen2_d" => report.gen2 = bumped(&report.gen2, false),
        _ => return Err(bad()),
    }
    report.dual = Code::module(rn, &[report.gen1.clone(), report.gen2.clone()])?;
    report.dim_dual = report.dual.dim();
    Ok(())
}

pub fn cmd_dual(args: &DualArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let parsed = SpecFile::parse(&read(&args.spec)?)?;
    let k = &parsed.field;
    let spec = &parsed.spec;
    let form = args.form.map(Form::from).or(parsed.form).unwrap_or(Form::TraceEuclidean);
    let mut report = match theorem_of(args.theorem) {
        None => dual::dual(k, spec, form, false)?,
        Some(t) => dual::dual_with(k, spec, form, t, false)?,
    };
    let rn = Rn::new(k, spec.n, spec.variant)?;
    if let Some(target) = &args.bump {
        bump(&rn, &mut report, target)?;
    }
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let mut failure = None;
    if !args.no_verify {
        let code = build_code(k, spec)?;
        report.dim_code = code.dim();
        let check = verify_dual(k, &code, &report.dual, form)?;
        report.verified = Some(check.equal);
        if !check.equal {
            failure = Some(check.to_string());
        }
    }

    if args.json {
        let json = dual_json(k, spec.variant, spec.n, &report);
        let text = serde_json::to_string_pretty(&json).expect("report serializes");
        writeln!(out, "{text}").map_err(io_err)?;
    } else {
        write_text(k, &report, args.pretty, out).map_err(io_err)?;
    }
    match failure {
        Some(detail) => Err(CliError::Verification(detail)),
        None => Ok(()),
    }
}

pub fn dual_json(k: &FieldCtx, variant: Variant, n: usize, r: &DualReport) -> DualJson {
    let opt = |p: &Option<FqPoly>| p.as_ref().map(|p| Coeffs::of(k, p));
    DualJson {
        theorem: r.theorem.to_string(),
        form: r.form.to_string(),
        variant: variant.to_string(),
        q: specfile::format_order(k),
        n,
        h: opt(&r.witness.h),
        k: opt(&r.witness.k),
        cprime: opt(&r.witness.cprime),
        dprime: opt(&r.witness.dprime),
        dual_gen1_c: Coeffs::of(k, r.gen1.c()),
        dual_gen1_d: Coeffs::of(k, r.gen1.d()),
        dual_gen2_c: Coeffs::of(k, r.gen2.c()),
        dual_gen2_d: Coeffs::of(k, r.gen2.d()),
        dim_code: r.dim_code,
        dim_dual: r.dim_dual,
        verified: r.verified,
        warnings: r.warnings.clone(),
    }
}

fn write_text(k: &FieldCtx, r: &DualReport, pretty: bool, out: &mut dyn Write) -> std::io::Result<()> {
    let opt = |p: &Option<FqPoly>| p.as_ref().map_or("-".to_string(), |p| format_poly(k, p));
    writeln!(out, "theorem: {}", r.theorem)?;
    writeln!(out, "form: {}", r.form)?;
    writeln!(out, "h: {}", opt(&r.witness.h))?;
    writeln!(out, "k: {}", opt(&r.witness.k))?;
    writeln!(out, "cprime: {}", opt(&r.witness.cprime))?;
    writeln!(out, "dprime: {}", opt(&r.witness.dprime))?;
    let parts = [
        ("dual_gen1_c", r.gen1.c()),
        ("dual_gen1_d", r.gen1.d()),
        ("dual_gen2_c", r.gen2.c()),
        ("dual_gen2_d", r.gen2.d()),
    ];
    for (name, p) in parts {
        writeln!(out, "{name}: {}", format_poly(k, p))?;
    }
    if pretty {
        let polys = k.polys();
        for (name, p) in parts {
            writeln!(out, "# {name} = {}", polys.display(p))?;
        }
    }
    writeln!(out, "dim_code: {}", r.dim_code)?;
    writeln!(out, "dim_dual: {}", r.dim_dual)?;
    let verified = match r.verified {
        Some(true) => "true",
        Some(false) => "false",
        None => "skipped",
    };
    writeln!(out, "verified: {verified}")
}

pub fn cmd_canonicalize(file: &PathBuf, out: &mut dyn Write) -> Result<(), CliError> {
    let g = GeneratorFile::parse(&read(file)?)?;
    let rn = Rn::new(&g.field, g.n, g.variant)?;
    let code = Code::module(&rn, &g.generators)?;
    let spec = decompose(&g.field, &code)?;
    out.write_all(format_spec(&g.field, &spec).as_bytes()).map_err(io_err)
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    if args.nmax == 0 || args.nmax > 64 {
        return Err(CliError::Input(format!("--nmax must be between 1 and 64, got {}", args.nmax)));
    }
    if args.choices == 0 {
        return Err(CliError::Input("--choices must be positive".into()));
    }
    let k = specfile::field_from(&args.q, args.modulus.as_deref()).map_err(CliError::Input)?;
    let variant = match args.variant {
        VariantArg::Cyclic => Variant::Cyclic,
        VariantArg::Skew => Variant::Skew,
    };
    let mut cfg = SweepConfig::new(args.nmax, variant, vec![args.form.into()], args.seed);
    cfg.choices = args.choices;
    let rows = run_sweep(&k, &cfg)?;

    if let Some(path) = &args.csv {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_path(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        for row in &rows {
            w.serialize(CsvRow {
                n: row.n,
                deg_w: row.deg_w,
                deg_l: row.deg_l,
                deg_f: row.deg_f,
                deg_g: row.deg_g,
                deg_q: row.deg_q,
                dim_code: row.dim_code,
                dim_dual: row.dim_dual,
                verified: row.passed(),
            })
            .map_err(|e| CliError::Input(e.to_string()))?;
        }
        w.flush().map_err(io_err)?;
    }

    let failed: Vec<_> = rows.iter().filter(|r| !r.passed()).collect();
    writeln!(out, "specs: {}", rows.len()).map_err(io_err)?;
    writeln!(out, "passed: {}", rows.len() - failed.len()).map_err(io_err)?;
    writeln!(out, "failed: {}", failed.len()).map_err(io_err)?;
    for row in failed.iter().take(10) {
        let _ = writeln!(err, "failed: {row:?}");
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{} of {} specs", failed.len(), rows.len())))
    }
}
