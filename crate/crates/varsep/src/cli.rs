//! `varsep` command-line front-end.
//!
//! Exit codes: 0 separable/success, 1 not separable (`check`, `separate`),
//! 2 parse or usage error, 3 degenerate input, 4 internal verification
//! failure.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Args, Parser, Subcommand, ValueEnum};

use varsep_core::exact::{
    additive_separability, anomalous_precheck, coeff_criterion_total, finest_partition, separate_by_partition,
    separate_total, SepError, SeparationResult, Verdict,
};
use varsep_core::expr::{self, ExprError};
use varsep_core::numeric::{numeric_factor_samples, numeric_finest_partition, NumericError, Strategy};
use varsep_core::{Partition, PolyError, Polynomial};

use crate::grid::{build_grid, GridSpec, GridSpecError};
use crate::json::{
    emit_json, numeric_kind_name, polynomial_from_json, AdditiveDoc, CheckDoc, JsonError, NumericDoc,
    PartitionDoc, SeparationDoc, SCHEMA,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    NotSeparable = 1,
    Usage = 2,
    Degenerate = 3,
    Internal = 4,
}

#[derive(Debug, Parser)]
#[command(name = "varsep", version, about = "Decide and perform multiplicative variable separation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Total separability by the coefficient criterion and the M_ij test.
    Check(ExactArgs),
    /// Constant and monic factors over the finest (or a given) partition.
    Separate {
        #[command(flatten)]
        exact: ExactArgs,
        /// Blocks as comma-separated names joined by `;`, e.g. "x,y;z".
        #[arg(long)]
        partition: Option<String>,
    },
    /// Finest separating partition of a polynomial.
    Partition(ExactArgs),
    /// Sampled separability test for arbitrary expressions.
    Numeric(NumericArgs),
    /// Whether a polynomial is a sum of univariate terms.
    Additive(ExactArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    /// Expression text.
    Expr,
    /// Polynomial JSON form {"vars": [...], "terms": [...]}.
    Json,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Expression text, or `-` to read standard input.
    #[arg(allow_hyphen_values = true)]
    expr: String,
    /// Variable order (comma-separated); defaults to order of first occurrence.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Output format; `separate` defaults to json, the rest to text.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long, value_enum, default_value = "expr")]
    input: InputKind,
}

#[derive(Debug, Args)]
struct NumericArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Relative residual tolerance.
    #[arg(long, default_value_t = varsep_core::numeric::DEFAULT_TOLERANCE)]
    tol: f64,
    /// Per-variable grid, `var=start:stop:count`. Repeatable.
    #[arg(long)]
    grid: Vec<GridSpec>,
    /// Test this many random points in total, split across variable pairs,
    /// instead of every point of each pair grid.
    #[arg(long)]
    budget: Option<usize>,
    /// Seed for `--budget` sampling.
    #[arg(long, requires = "budget")]
    seed: Option<u64>,
    /// Also emit sampled factor tables.
    #[arg(long)]
    factors: bool,
}

struct Failure {
    code: Exit,
    message: String,
}

impl Failure {
    fn new(code: Exit, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        Failure::new(Exit::Usage, e.to_string())
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        let code = match e {
            PolyError::ZeroPolynomial => Exit::Degenerate,
            _ => Exit::Usage,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        Failure::new(Exit::Usage, e.to_string())
    }
}

impl From<GridSpecError> for Failure {
    fn from(e: GridSpecError) -> Self {
        Failure::new(Exit::Usage, e.to_string())
    }
}

impl From<SepError> for Failure {
    fn from(e: SepError) -> Self {
        let code = match &e {
            SepError::ZeroPolynomial => Exit::Degenerate,
            SepError::NotSeparable(_) | SepError::NotCoarsening => Exit::NotSeparable,
            SepError::Partition(_) | SepError::PartitionSize { .. } => Exit::Usage,
            SepError::Poly(PolyError::ZeroPolynomial) => Exit::Degenerate,
            SepError::Poly(_) => Exit::Usage,
            SepError::DiagonalEntry(_) | SepError::AnchorExhausted | SepError::VerificationFailed => Exit::Internal,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<NumericError> for Failure {
    fn from(e: NumericError) -> Self {
        let code = match &e {
            NumericError::Expr(_) | NumericError::InvalidGrid(_) => Exit::Usage,
            NumericError::DegenerateAnchor(_)
            | NumericError::NoUsableAnchor
            | NumericError::TooManyDomainErrors { .. } => Exit::Degenerate,
            NumericError::IncompatiblePartition | NumericError::PartitionSize { .. } => Exit::Internal,
        };
        Failure::new(code, e.to_string())
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                Exit::Usage as i32
            } else {
                let _ = write!(out, "{text}");
                Exit::Success as i32
            };
        }
    };
    let result = catch_unwind(AssertUnwindSafe(|| dispatch(cli.command, stdin, out)));
    match result {
        Ok(Ok(code)) => code as i32,
        Ok(Err(failure)) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code as i32
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal failure");
            Exit::Internal as i32
        }
    }
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<Exit, Failure> {
    match command {
        Command::Check(args) => check(&args, stdin, out),
        Command::Separate { exact, partition } => separate(&exact, partition.as_deref(), stdin, out),
        Command::Partition(args) => partition(&args, stdin, out),
        Command::Numeric(args) => numeric(&args, stdin, out),
        Command::Additive(args) => additive(&args, stdin, out),
    }
}

fn source_text(expr: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    if expr != "-" {
        return Ok(expr.to_string());
    }
    let mut text = String::new();
    stdin
        .read_to_string(&mut text)
        .map_err(|e| Failure::new(Exit::Usage, format!("cannot read standard input: {e}")))?;
    Ok(text.trim().to_string())
}

fn load_polynomial(args: &ExactArgs, stdin: &mut dyn Read) -> Result<Polynomial, Failure> {
    let text = source_text(&args.common.expr, stdin)?;
    match args.input {
        InputKind::Expr => {
            let e = expr::parse(&text)?;
            let vars = args.common.vars.clone().unwrap_or_else(|| e.variables());
            Ok(expr::lower_to_polynomial(&e, &vars)?)
        }
        InputKind::Json => {
            let p = polynomial_from_json(&text)?;
            match &args.common.vars {
                Some(vars) => Ok(p.embed(vars)?),
                None => Ok(p),
            }
        }
    }
}

fn nonzero(p: Polynomial) -> Result<Polynomial, Failure> {
    if p.is_zero() {
        Err(Failure::new(Exit::Degenerate, "the zero polynomial is degenerate input"))
    } else {
        Ok(p)
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::new(Exit::Internal, format!("cannot write output: {e}")))
}

fn blocks_text(blocks: &[Vec<String>]) -> String {
    blocks
        .iter()
        .map(|b| format!("{{{}}}", b.join(", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn check(args: &ExactArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<Exit, Failure> {
    let f = nonzero(load_polynomial(args, stdin)?)?;
    let precheck = anomalous_precheck(&f)?;
    let criterion = coeff_criterion_total(&f)?;
    let report = finest_partition(&f)?;
    let doc = CheckDoc::new(f.vars(), precheck, &criterion, &report.partition);
    match args.common.format.unwrap_or(Format::Text) {
        Format::Json => write_out(out, &emit_json(&doc))?,
        Format::Text => {
            let mut text = String::from(if doc.separable { "separable" } else { "not separable" });
            let lead = if precheck == Verdict::NotSeparable { "absent" } else { "present" };
            text.push_str(&format!("\n  leading product monomial: {lead}"));
            text.push_str(&format!("\n  coefficient criterion: {criterion}"));
            text.push_str(&format!("\n  finest partition: {}", blocks_text(&doc.blocks)));
            write_out(out, &text)?;
        }
    }
    if !doc.routes_agree {
        return Err(Failure::new(
            Exit::Internal,
            "coefficient criterion and M_ij test disagree",
        ));
    }
    Ok(if doc.separable { Exit::Success } else { Exit::NotSeparable })
}

fn parse_partition(spec: &str, vars: &[String]) -> Result<Partition, Failure> {
    let blocks = spec
        .split(';')
        .map(|block| {
            block
                .split(',')
                .map(|name| {
                    let name = name.trim();
                    vars.iter()
                        .position(|v| v == name)
                        .ok_or_else(|| Failure::new(Exit::Usage, format!("unknown variable `{name}` in partition")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(vars.len(), blocks).map_err(|e| Failure::new(Exit::Usage, format!("invalid partition: {e}")))
}

fn separate(
    args: &ExactArgs,
    partition: Option<&str>,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<Exit, Failure> {
    let f = nonzero(load_polynomial(args, stdin)?)?;
    let n = f.nvars();
    let (result, separable): (SeparationResult, bool) = match partition {
        Some(spec) => {
            let p = parse_partition(spec, f.vars())?;
            (separate_by_partition(&f, &p)?, true)
        }
        None => {
            let finest = finest_partition(&f)?.partition;
            if finest.is_singletons() {
                let r = separate_total(&f).map_err(|e| match e {
                    SepError::NotSeparable(v) => {
                        Failure::new(Exit::Internal, format!("M_ij test separates but coefficient criterion fails: {v}"))
                    }
                    other => other.into(),
                })?;
                (r, true)
            } else {
                (separate_by_partition(&f, &finest)?, finest.len() > 1 || n <= 1)
            }
        }
    };
    let doc = SeparationDoc::new(&result, f.vars());
    match args.common.format.unwrap_or(Format::Json) {
        Format::Json => write_out(out, &emit_json(&doc))?,
        Format::Text => {
            let mut text = format!("constant: {}", doc.constant);
            for (block, factor) in doc.blocks.iter().zip(&doc.factors) {
                text.push_str(&format!("\n{{{}}}: {factor}", block.join(", ")));
            }
            if !separable {
                text.push_str("\nnot separable");
            }
            write_out(out, &text)?;
        }
    }
    Ok(if separable { Exit::Success } else { Exit::NotSeparable })
}

fn partition(args: &ExactArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<Exit, Failure> {
    let f = nonzero(load_polynomial(args, stdin)?)?;
    let report = finest_partition(&f)?;
    let doc = PartitionDoc::new(&report, f.vars());
    match args.common.format.unwrap_or(Format::Text) {
        Format::Json => write_out(out, &emit_json(&doc))?,
        Format::Text => write_out(out, &blocks_text(&doc.blocks))?,
    }
    Ok(Exit::Success)
}

fn additive(args: &ExactArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<Exit, Failure> {
    let f = load_polynomial(args, stdin)?;
    let additive = additive_separability(&f) == Verdict::Separable;
    let doc = AdditiveDoc { schema: SCHEMA.into(), vars: f.vars().to_vec(), additive };
    match args.common.format.unwrap_or(Format::Text) {
        Format::Json => write_out(out, &emit_json(&doc))?,
        Format::Text => write_out(
            out,
            if additive { "additively separable" } else { "not additively separable" },
        )?,
    }
    Ok(Exit::Success)
}

fn numeric(args: &NumericArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<Exit, Failure> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(Failure::new(Exit::Usage, "tolerance must be a positive number"));
    }
    let text = source_text(&args.common.expr, stdin)?;
    let e = expr::parse(&text)?;
    let vars = args.common.vars.clone().unwrap_or_else(|| e.variables());
    let strategy = match args.budget {
        Some(budget) => Strategy::RandomPairs { seed: args.seed.unwrap_or(0), budget },
        None => Strategy::Cartesian,
    };
    let grid = build_grid(&vars, &args.grid, strategy)?;
    let verdict = numeric_finest_partition(&e, &vars, &grid, args.tol)?;
    let tables = if args.factors {
        Some(numeric_factor_samples(&e, &vars, &grid, &verdict.partition, &verdict)?)
    } else {
        None
    };
    let doc = NumericDoc::new(&verdict, &vars, tables.as_deref());
    match args.common.format.unwrap_or(Format::Text) {
        Format::Json => write_out(out, &emit_json(&doc))?,
        Format::Text => {
            let mut text = format!("{}\n  blocks: {}", numeric_kind_name(verdict.kind), blocks_text(&doc.blocks));
            text.push_str(&format!(
                "\n  max residual: {:.3e} (tolerance {:e})",
                doc.max_residual, doc.tolerance
            ));
            let anchor: Vec<String> = vars.iter().zip(&doc.anchor).map(|(v, a)| format!("{v}={a}")).collect();
            text.push_str(&format!("\n  anchor: {} (value {:e})", anchor.join(", "), doc.anchor_value));
            for i in 0..vars.len() {
                for j in (i + 1)..vars.len() {
                    text.push_str(&format!("\n  residual {}~{}: {:.3e}", vars[i], vars[j], doc.residuals[i][j]));
                }
            }
            if doc.skipped > 0 {
                text.push_str(&format!("\n  skipped {} of {} evaluations", doc.skipped, doc.evaluations));
            }
            if let Some(tables) = &doc.factors {
                for t in tables {
                    text.push_str(&format!("\n  factor {{{}}}:", t.block.join(", ")));
                    for (p, v) in t.points.iter().zip(&t.values) {
                        let coords: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                        match v {
                            Some(v) => text.push_str(&format!("\n    ({}) -> {v}", coords.join(", "))),
                            None => text.push_str(&format!("\n    ({}) -> undefined", coords.join(", "))),
                        }
                    }
                }
            }
            write_out(out, &text)?;
        }
    }
    Ok(Exit::Success)
}
