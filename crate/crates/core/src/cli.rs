//! Command-line driver: argument parsing, subcommand dispatch and output
//! rendering. `main` only forwards to [`run`].

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::kernel::{solve_kernel, DegreeBound};
use crate::ops::Sign;
use crate::report::{
    assemble, build_report, sweep_weights, Report, VerifyOptions, WeightReport, REGISTRY,
};
use crate::systems::{build_indicator_a, build_indicator_b, Algebra, BasisForm, HighestWeight};
use crate::tableaux::{enumerate_b_tableaux, gl_tableaux_for, weyl_dim, RootSystem};

#[derive(Debug, Parser)]
#[command(name = "gtz", version, about = "Exact checks of Gelfand-Tsetlin-Zhelobenko bases for o(2n+1) restricted to o(2n-1)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel basis of the indicator system for one weight.
    Solve(Common),
    /// Enumerate the tableaux of one weight.
    Tableaux(Common),
    /// Weyl dimension bookkeeping over the tableaux.
    Branch(Common),
    /// Run the check registry for a weight or a weight range.
    Verify(Common),
    /// Aggregate report over a weight range (JSON by default).
    Report(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    B,
    Gl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Paper,
    Plain,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "b")]
    pub algebra: AlgebraArg,
    /// Rank; inferred from --weight when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    /// Highest weight, e.g. "1,0" or "1/2,1/2".
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Sweep every dominant weight of rank --n with entries up to this value.
    #[arg(long, conflicts_with = "weight")]
    pub max_weight: Option<i64>,
    #[arg(long, value_enum, default_value = "both")]
    pub sign: SignArg,
    #[arg(long, value_enum, default_value = "both")]
    pub basis_form: FormArg,
    /// Pair degree bound for the kernel search (at least the default).
    #[arg(long)]
    pub bound: Option<u32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Check id to show, or "all".
    #[arg(long, default_value = "all")]
    pub check: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] crate::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl From<crate::kernel::KernelError> for CliError {
    fn from(e: crate::kernel::KernelError) -> Self {
        CliError::Compute(e.into())
    }
}

impl From<crate::systems::WeightError> for CliError {
    fn from(e: crate::systems::WeightError) -> Self {
        CliError::Compute(e.into())
    }
}

impl From<crate::tableaux::TableauError> for CliError {
    fn from(e: crate::tableaux::TableauError) -> Self {
        CliError::Compute(e.into())
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Parses `args` (including the program name), runs the command and writes
/// its output to `out`. Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn algebra(arg: AlgebraArg) -> Algebra {
    match arg {
        AlgebraArg::B => Algebra::B,
        AlgebraArg::Gl => Algebra::A,
    }
}

impl Common {
    fn weights(&self) -> Result<Vec<HighestWeight>, CliError> {
        let alg = algebra(self.algebra);
        match (&self.weight, self.max_weight) {
            (Some(text), None) => {
                let w = HighestWeight::parse(alg, text)?;
                if let Some(n) = self.n {
                    if n != w.n() {
                        return Err(CliError::Usage(format!("--n {n} does not match weight {text} of rank {}", w.n())));
                    }
                }
                Ok(vec![w])
            }
            (None, Some(max)) => {
                let n = self.n.ok_or_else(|| CliError::Usage("--max-weight needs --n".into()))?;
                if n < 2 {
                    return Err(CliError::Usage("--n must be at least 2".into()));
                }
                if max < 0 {
                    return Err(CliError::Usage("--max-weight must be non-negative".into()));
                }
                Ok(sweep_weights(alg, n, max))
            }
            _ => Err(CliError::Usage("give exactly one of --weight or --max-weight".into())),
        }
    }

    fn single_weight(&self) -> Result<HighestWeight, CliError> {
        let mut ws = self.weights()?;
        if ws.len() != 1 || self.max_weight.is_some() {
            return Err(CliError::Usage("this command takes a single --weight".into()));
        }
        Ok(ws.remove(0))
    }

    fn signs(&self) -> Vec<Sign> {
        match self.sign {
            SignArg::Plus => vec![Sign::Plus],
            SignArg::Minus => vec![Sign::Minus],
            SignArg::Both => vec![Sign::Plus, Sign::Minus],
        }
    }

    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            signs: self.signs(),
            basis_forms: match self.basis_form {
                FormArg::Paper => vec![BasisForm::Paper],
                FormArg::Plain => vec![BasisForm::Plain],
                FormArg::Both => vec![BasisForm::Paper, BasisForm::Plain],
            },
            bound_pair: self.bound,
        }
    }

    fn checks(&self) -> Result<Option<Vec<String>>, CliError> {
        if self.check == "all" {
            return Ok(None);
        }
        let ids: Vec<String> = self.check.split(',').map(|s| s.trim().to_string()).collect();
        for id in &ids {
            if !REGISTRY.iter().any(|(r, _)| r == id) {
                return Err(CliError::Usage(format!("unknown check id {id:?}")));
            }
        }
        Ok(Some(ids))
    }
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<bool, CliError> {
    match command {
        Command::Solve(c) => solve(c, out),
        Command::Tableaux(c) => tableaux(c, out),
        Command::Branch(c) => branch(c, out),
        Command::Verify(c) => verify(c, c.format.unwrap_or(Format::Text), out),
        Command::Report(c) => verify(c, c.format.unwrap_or(Format::Json), out),
    }
}

fn solve(c: &Common, out: &mut dyn Write) -> Result<bool, CliError> {
    let weight = c.single_weight()?;
    let systems = match weight.algebra() {
        Algebra::B => c
            .signs()
            .into_iter()
            .map(|s| build_indicator_b(&weight, s))
            .collect::<Result<Vec<_>, _>>()?,
        Algebra::A => vec![build_indicator_a(&weight)?],
    };
    let mut entries = Vec::new();
    for system in &systems {
        let bound = c.bound.map(|p| {
            let d = DegreeBound::default_for(system);
            d.with_pair(p)
        });
        let kernel = solve_kernel(system, bound)?;
        entries.push(json!({
            "sign": system.sign,
            "dimension": kernel.dimension,
            "stabilized": kernel.stabilized,
            "bound": kernel.bound_used,
            "basis": kernel.basis.iter().zip(&kernel.weights).map(|(f, w)| json!({
                "weight_doubled": w,
                "vector": f.to_string(),
            })).collect::<Vec<_>>(),
        }));
    }
    let doc = json!({ "weight": weight_json(&weight), "kernels": entries });
    match c.format.unwrap_or(Format::Text) {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["weight", "sign", "index", "weight_doubled", "vector"])?;
            for k in doc["kernels"].as_array().unwrap() {
                for (i, b) in k["basis"].as_array().unwrap().iter().enumerate() {
                    w.write_record([
                        weight.render(),
                        sign_text(&k["sign"]),
                        i.to_string(),
                        b["weight_doubled"].to_string(),
                        b["vector"].as_str().unwrap().to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Text => {
            for k in doc["kernels"].as_array().unwrap() {
                writeln!(
                    out,
                    "{weight} sign={} dim={} stabilized={} bound={}",
                    sign_text(&k["sign"]),
                    k["dimension"],
                    k["stabilized"],
                    k["bound"]
                )?;
                for b in k["basis"].as_array().unwrap() {
                    writeln!(out, "  {} {}", b["weight_doubled"], b["vector"].as_str().unwrap())?;
                }
            }
        }
    }
    Ok(true)
}

fn sign_text(v: &Value) -> String {
    v.as_str().unwrap_or("none").to_string()
}

fn weight_json(w: &HighestWeight) -> Value {
    json!({
        "algebra": w.algebra(),
        "doubled": w.entries2(),
        "parity": if w.is_half_integral() { "half-integer" } else { "integer" },
    })
}

fn tableaux(c: &Common, out: &mut dyn Write) -> Result<bool, CliError> {
    let weight = c.single_weight()?;
    let rows: Vec<Value> = match weight.algebra() {
        Algebra::B => enumerate_b_tableaux(&weight)
            .iter()
            .map(|t| serde_json::to_value(t).unwrap())
            .collect(),
        Algebra::A => gl_tableaux_for(&weight)
            .iter()
            .map(|t| serde_json::to_value(t).unwrap())
            .collect(),
    };
    match c.format.unwrap_or(Format::Text) {
        Format::Json => {
            let doc = json!({ "weight": weight_json(&weight), "count": rows.len(), "tableaux": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["top", "middle", "bottom", "sigma"])?;
            for r in &rows {
                w.write_record([
                    r["top"].to_string(),
                    r["middle"].to_string(),
                    r["bottom"].to_string(),
                    r.get("sigma").map(|s| s.to_string()).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(out, "{weight}: {} tableaux (doubled entries)", rows.len())?;
            for r in &rows {
                write!(out, "  top={} middle={} bottom={}", r["top"], r["middle"], r["bottom"])?;
                match r.get("sigma") {
                    Some(s) => writeln!(out, " sigma={s}")?,
                    None => writeln!(out)?,
                }
            }
        }
    }
    Ok(true)
}

struct BranchRow {
    weight: HighestWeight,
    parts: Vec<u64>,
    dimension: u64,
}

fn branch(c: &Common, out: &mut dyn Write) -> Result<bool, CliError> {
    let mut rows = Vec::new();
    for weight in c.weights()? {
        let n = weight.n();
        let (parts, dimension) = match weight.algebra() {
            Algebra::B => {
                let parts = enumerate_b_tableaux(&weight)
                    .iter()
                    .map(|t| weyl_dim(RootSystem::B(n - 1), &t.bottom))
                    .collect::<Result<Vec<_>, _>>()?;
                (parts, weyl_dim(RootSystem::B(n), weight.entries2())?)
            }
            Algebra::A => {
                let parts = gl_tableaux_for(&weight)
                    .iter()
                    .map(|t| weyl_dim(RootSystem::A(n - 2), &t.bottom))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut top = weight.entries2().to_vec();
                top.push(0);
                (parts, weyl_dim(RootSystem::A(n), &top)?)
            }
        };
        rows.push(BranchRow { weight, parts, dimension });
    }
    let ok = rows.iter().all(|r| r.parts.iter().sum::<u64>() == r.dimension);
    match c.format.unwrap_or(Format::Text) {
        Format::Json => {
            let doc: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "weight": weight_json(&r.weight),
                        "parts": r.parts,
                        "sum": r.parts.iter().sum::<u64>(),
                        "dimension": r.dimension,
                        "pass": r.parts.iter().sum::<u64>() == r.dimension,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["algebra", "weight", "tableaux", "sum", "dimension", "status"])?;
            for r in &rows {
                let sum: u64 = r.parts.iter().sum();
                w.write_record([
                    r.weight.algebra().to_string(),
                    r.weight.render(),
                    r.parts.len().to_string(),
                    sum.to_string(),
                    r.dimension.to_string(),
                    if sum == r.dimension { "PASS" } else { "FAIL" }.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in &rows {
                let sum: u64 = r.parts.iter().sum();
                let terms: Vec<String> = r.parts.iter().map(u64::to_string).collect();
                writeln!(
                    out,
                    "{}: {} = {} dimension {} {}",
                    r.weight,
                    terms.join(" + "),
                    sum,
                    r.dimension,
                    if sum == r.dimension { "PASS" } else { "FAIL" }
                )?;
            }
        }
    }
    Ok(ok)
}

fn verify(c: &Common, format: Format, out: &mut dyn Write) -> Result<bool, CliError> {
    let weights = c.weights()?;
    let ids = c.checks()?;
    let opts = c.options();
    if opts.signs.is_empty() {
        return Err(CliError::Compute(crate::Error::NoSign));
    }
    let report = build_report(&weights, &opts)?;
    let report = match ids {
        None => report,
        Some(ids) => {
            let mut ws = report.weights;
            ws.iter_mut().for_each(|w| w.retain_checks(&ids));
            assemble(ws, &opts)
        }
    };
    render_report(&report, format, out)?;
    Ok(report.passed())
}

/// Renders a report in the chosen format.
pub fn render_report(report: &Report, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "algebra", "n", "weight_doubled", "parity", "kernel_dim", "tableau_count", "check", "status",
                "expected", "details",
            ])?;
            for wr in &report.weights {
                for chk in &wr.checks {
                    w.write_record([
                        wr.algebra.to_string(),
                        wr.n.to_string(),
                        serde_json::to_string(&wr.weight.doubled).unwrap(),
                        wr.weight.parity.clone(),
                        wr.kernel_dim.to_string(),
                        wr.tableau_count.to_string(),
                        chk.id.clone(),
                        chk.status.as_str().to_string(),
                        serde_json::to_string(&chk.expected).unwrap().trim_matches('"').to_string(),
                        chk.details.to_string(),
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Text => {
            for wr in &report.weights {
                render_weight_text(wr, out)?;
            }
            let s = &report.summary;
            writeln!(
                out,
                "summary: {} weights, {} checks, {} failures",
                s.weights,
                s.checks,
                s.failures.len()
            )?;
            for f in &s.failures {
                writeln!(out, "  FAILED {f}")?;
            }
        }
    }
    Ok(())
}

fn render_weight_text(wr: &WeightReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{}: kernel_dim={} tableaux={} stabilized={}",
        wr.label(),
        wr.kernel_dim,
        wr.tableau_count,
        wr.stabilized
    )?;
    for chk in &wr.checks {
        let expected = serde_json::to_string(&chk.expected).unwrap();
        writeln!(
            out,
            "  {:<16} {:<14} [{}] {}",
            chk.id,
            chk.status.as_str(),
            expected.trim_matches('"'),
            chk.details
        )?;
    }
    Ok(())
}
