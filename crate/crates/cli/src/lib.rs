//! Command-line front end for `maxclass-core`: dimension tables, explicit
//! cocycles, closedness checks, cup products and oracle cross-runs, with a
//! byte-stable JSON record format and an on-disk result cache.

pub mod cache;
pub mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use maxclass_core::census::{
    adjoint_cocycle, census_adjoint, census_scalar, quotient_oracle, scalar_cocycle, truncation_oracle, CensusResult,
};
use maxclass_core::cochain::{cohomology_dim, d_scalar, is_closed_mod_filtration, BlockSpec};
use maxclass_core::operators::{cup_product, TildeCache};
use maxclass_core::{AlgebraSpec, Cochain, CocycleLabel, Family, Mode};

use cache::{Cache, CacheKey, Lookup};
use record::{BasisEntry, Dimension, ResultRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

const DEFAULT_CAP: u32 = 30;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, labels or out-of-domain requests.
    Validation(String),
    /// A computed result contradicts another one.
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Inconsistent(_) => EXIT_INCONSISTENT,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "error: {m}"),
            CliError::Inconsistent(m) => write!(f, "inconsistency: {m}"),
        }
    }
}

impl From<maxclass_core::Error> for CliError {
    fn from(e: maxclass_core::Error) -> Self {
        match e {
            maxclass_core::Error::Inconsistent(_) => CliError::Inconsistent(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coefficients {
    Trivial,
    Adjoint,
}

impl From<Coefficients> for Mode {
    fn from(c: Coefficients) -> Mode {
        match c {
            Coefficients::Trivial => Mode::Trivial,
            Coefficients::Adjoint => Mode::Adjoint,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Omega,
    W,
    Psi,
    Phi,
}

#[derive(Debug, Parser)]
#[command(name = "maxclass", version, about = "Exact cohomology of the Lie algebras of maximal class m0 and m2")]
pub struct Cli {
    /// Directory for cached records (overridden by MAXCLASS_CACHE).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[arg(long, global = true)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Block {
    /// m0, m2, l1, m0:n or m2:n
    #[arg(long, default_value = "m0", value_parser = parse_algebra)]
    algebra: AlgebraSpec,
    #[arg(long, value_enum, default_value = "trivial")]
    coefficients: Coefficients,
    #[arg(long)]
    degree: usize,
    /// Weight λ (trivial) or grade k (adjoint).
    #[arg(long, allow_hyphen_values = true)]
    grade: i64,
    /// Module-index cap for adjoint coefficients.
    #[arg(long)]
    cap: Option<u32>,
}

#[derive(Debug, clap::Args)]
struct LabelArgs {
    #[arg(long, value_parser = parse_algebra)]
    algebra: Option<AlgebraSpec>,
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// Comma-separated tuple, e.g. 5,6,7
    #[arg(long, value_delimiter = ',', required = true)]
    index: Vec<u32>,
    /// Target module index r of Psi / Phi.
    #[arg(long)]
    target: Option<u32>,
    #[arg(long)]
    cap: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension and basis of one homogeneous component.
    Dims(Block),
    /// Expansion of a named cocycle.
    Cocycle(LabelArgs),
    /// Exact closedness check (modulo the module-index filtration for Psi / Phi).
    Verify(LabelArgs),
    /// Dimension table over a range of grades.
    Census {
        #[command(flatten)]
        block: Block,
        /// Last grade of the range (defaults to --grade).
        #[arg(long, allow_hyphen_values = true)]
        grade_max: Option<i64>,
    },
    /// Cup product of two scalar classes, reduced modulo coboundaries.
    Cup {
        #[arg(long, value_parser = parse_algebra)]
        algebra: Option<AlgebraSpec>,
        /// e.g. omega[2,3]
        #[arg(long)]
        left: CocycleLabel,
        #[arg(long)]
        right: CocycleLabel,
        /// Report whether the product is cohomologous to this class.
        #[arg(long)]
        expect: Option<CocycleLabel>,
    },
    /// Census against brute-force linear algebra on a grid of blocks.
    Oracle {
        #[command(flatten)]
        block: Block,
        #[arg(long)]
        degree_max: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        grade_max: Option<i64>,
        /// Extra module indices a cocycle must extend through.
        #[arg(long, default_value_t = 5)]
        margin: u32,
        /// Compare trivial coefficients against the quotient of this dimension
        /// instead of the block of the infinite algebra.
        #[arg(long)]
        quotient: Option<u32>,
        /// Exit with status 3 on any mismatch.
        #[arg(long)]
        check: bool,
    },
}

fn parse_algebra(s: &str) -> Result<AlgebraSpec, String> {
    s.parse()
}

/// Runs one invocation; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Context {
        cache: Cache::resolve(cli.cache_dir.as_deref()),
        tilde: TildeCache::new(),
        err,
    };
    match execute(&cli, &mut ctx) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(ctx.err, "{e}");
            e.exit_code()
        }
    }
}

struct Context<'a> {
    cache: Option<Cache>,
    tilde: TildeCache,
    err: &'a mut dyn Write,
}

fn execute(cli: &Cli, ctx: &mut Context) -> CliResult<(String, i32)> {
    match &cli.command {
        Command::Dims(b) => {
            let record = cached_block(ctx, "dims", b, b.grade)?;
            Ok((emit_records(&[record], cli.format.unwrap_or(Format::Json)), EXIT_OK))
        }
        Command::Census { block, grade_max } => {
            let last = grade_max.unwrap_or(block.grade);
            if last < block.grade {
                return Err(CliError::Validation(format!("--grade-max {last} is below --grade {}", block.grade)));
            }
            let records = (block.grade..=last)
                .map(|g| cached_block(ctx, "dims", block, g))
                .collect::<CliResult<Vec<_>>>()?;
            Ok((emit_records(&records, cli.format.unwrap_or(Format::Csv)), EXIT_OK))
        }
        Command::Cocycle(args) => {
            let named = named_cocycle(args, &ctx.tilde)?;
            Ok((emit_cocycle(&named, cli.format.unwrap_or(Format::Text)), EXIT_OK))
        }
        Command::Verify(args) => {
            let named = named_cocycle(args, &ctx.tilde)?;
            let closed = match &named.cochain {
                Cochain::Scalar(f) => d_scalar(&named.algebra, f).is_zero(),
                Cochain::Adjoint(x) => is_closed_mod_filtration(&named.algebra, x, named.cap.unwrap_or(DEFAULT_CAP))?,
            };
            let text = match cli.format.unwrap_or(Format::Text) {
                Format::Json => format!("{{\"label\":\"{}\",\"closed\":{closed}}}\n", named.label),
                _ if named.cap.is_some() => format!("closed mod filtration: {closed}\n"),
                _ => format!("closed: {closed}\n"),
            };
            Ok((text, if closed { EXIT_OK } else { EXIT_INCONSISTENT }))
        }
        Command::Cup { algebra, left, right, expect } => {
            cup(algebra.as_ref(), left, right, expect.as_ref(), cli.format.unwrap_or(Format::Text))
        }
        Command::Oracle {
            block,
            degree_max,
            grade_max,
            margin,
            quotient,
            check,
        } => oracle(
            block,
            (*degree_max, *grade_max),
            *margin,
            *quotient,
            *check,
            cli.format.unwrap_or(Format::Text),
        ),
    }
}

fn cap_of(b: &Block) -> Option<u32> {
    match b.coefficients {
        Coefficients::Trivial => None,
        Coefficients::Adjoint => Some(b.algebra.dimension().unwrap_or(b.cap.unwrap_or(DEFAULT_CAP))),
    }
}

fn cached_block(ctx: &mut Context, command: &str, b: &Block, grade: i64) -> CliResult<ResultRecord> {
    let key = CacheKey {
        command,
        algebra: b.algebra.to_string(),
        mode: Mode::from(b.coefficients).to_string(),
        degree: b.degree,
        grade,
        cap: cap_of(b),
    };
    if let Some(cache) = &ctx.cache {
        match cache.load(&key) {
            Lookup::Hit(r) => return Ok(r),
            Lookup::Miss => {}
            Lookup::Corrupt(why) => {
                let _ = writeln!(
                    ctx.err,
                    "warning: corrupt cache entry {} ({why}); recomputing",
                    cache.path(&key).display()
                );
            }
        }
    }
    let record = block_record(b, grade, &ctx.tilde)?;
    if let Some(cache) = &ctx.cache {
        if let Err(e) = cache.store(&key, &record) {
            let _ = writeln!(ctx.err, "warning: could not write cache entry: {e}");
        }
    }
    Ok(record)
}

fn block_record(b: &Block, grade: i64, tilde: &TildeCache) -> CliResult<ResultRecord> {
    let alg = b.algebra;
    let mode = Mode::from(b.coefficients);
    let cap = cap_of(b);
    let named = alg == AlgebraSpec::M0 || alg == AlgebraSpec::M2;
    let (dimension, basis) = if named && b.degree > 0 {
        let census: CensusResult = match mode {
            Mode::Trivial => census_scalar(&alg, b.degree, grade)?,
            Mode::Adjoint => census_adjoint(&alg, b.degree, grade, cap.unwrap_or(DEFAULT_CAP))?,
        };
        let mut basis = Vec::with_capacity(census.labels.len());
        for label in &census.labels {
            let c = match mode {
                Mode::Trivial => Cochain::Scalar(scalar_cocycle(label)?),
                Mode::Adjoint => Cochain::Adjoint(adjoint_cocycle(label, cap.unwrap_or(DEFAULT_CAP), tilde)?),
            };
            basis.push(BasisEntry::new(label.to_string(), &c));
        }
        let dim = if census.unbounded { Dimension::infinite() } else { Dimension::Finite(census.dimension) };
        (dim, basis)
    } else {
        if mode == Mode::Adjoint && alg.dimension().is_none() {
            return Err(CliError::Validation(format!(
                "adjoint coefficients over {alg} are only available for m0, m2 and finite quotients"
            )));
        }
        let spec = BlockSpec {
            alg,
            mode,
            degree: b.degree,
            grade,
            cap,
        };
        let h = cohomology_dim(&spec)?;
        let basis = h
            .representatives
            .iter()
            .enumerate()
            .map(|(i, c)| BasisEntry::new(format!("class{}", i + 1), c))
            .collect();
        (Dimension::Finite(h.dimension), basis)
    };
    Ok(ResultRecord {
        algebra: alg.to_string(),
        mode: mode.to_string(),
        degree: b.degree,
        grade,
        cap,
        dimension,
        basis,
    })
}

fn emit_records(records: &[ResultRecord], format: Format) -> String {
    match format {
        Format::Json => {
            if let [r] = records {
                r.to_json() + "\n"
            } else {
                serde_json::to_string_pretty(records).expect("records serialize") + "\n"
            }
        }
        Format::Csv => {
            let mut s = String::from(ResultRecord::csv_header());
            s.push('\n');
            for r in records {
                s.push_str(&r.to_csv_rows());
            }
            s
        }
        Format::Latex => records.iter().map(ResultRecord::to_latex).collect(),
        Format::Text => records.iter().map(text_summary).collect(),
    }
}

fn text_summary(r: &ResultRecord) -> String {
    let cap = r.cap.map_or(String::new(), |c| format!(" cap {c}"));
    let mut s = format!(
        "{} {} degree {} grade {}{cap}: dimension {}\n",
        r.algebra,
        r.mode,
        r.degree,
        r.grade,
        r.dimension_text()
    );
    for b in &r.basis {
        let body = b.cochain().map_or_else(|| "?".into(), |c| c.to_text());
        s.push_str(&format!("  {} = {body}\n", b.label));
    }
    s
}

struct Named {
    algebra: AlgebraSpec,
    label: CocycleLabel,
    cochain: Cochain,
    /// Present for truncated formal series.
    cap: Option<u32>,
}

fn label_of(args: &LabelArgs) -> CliResult<CocycleLabel> {
    let need_target = || {
        args.target
            .ok_or_else(|| CliError::Validation("--target is required for psi and phi".into()))
    };
    let label = match args.family {
        FamilyArg::Omega => CocycleLabel::omega(&args.index)?,
        FamilyArg::W => CocycleLabel::w(&args.index)?,
        FamilyArg::Psi => CocycleLabel::psi(&args.index, need_target()?)?,
        FamilyArg::Phi => CocycleLabel::phi(&args.index, need_target()?)?,
    };
    if args.target.is_some() && matches!(args.family, FamilyArg::Omega | FamilyArg::W) {
        return Err(CliError::Validation("--target only applies to psi and phi".into()));
    }
    Ok(label)
}

fn default_algebra(family: Family) -> AlgebraSpec {
    match family {
        Family::W | Family::Phi | Family::PhiSpecial => AlgebraSpec::M2,
        _ => AlgebraSpec::M0,
    }
}

fn named_cocycle(args: &LabelArgs, tilde: &TildeCache) -> CliResult<Named> {
    let label = label_of(args)?;
    let algebra = args.algebra.unwrap_or_else(|| default_algebra(label.family));
    if label.family.is_adjoint() {
        let expected = default_algebra(label.family);
        if algebra != expected {
            return Err(CliError::Validation(format!("{label} is a cocycle of {expected}, not {algebra}")));
        }
        let cap = args.cap.unwrap_or(DEFAULT_CAP);
        let x = adjoint_cocycle(&label, cap, tilde)?;
        Ok(Named {
            algebra,
            label,
            cochain: Cochain::Adjoint(x),
            cap: Some(cap),
        })
    } else {
        Ok(Named {
            algebra,
            cochain: Cochain::Scalar(scalar_cocycle(&label)?),
            label,
            cap: None,
        })
    }
}

fn emit_cocycle(n: &Named, format: Format) -> String {
    match format {
        Format::Text => format!("{} = {}\n", n.label, n.cochain.to_text()),
        Format::Latex => format!("{} = {}\n", n.label.to_latex(), n.cochain.to_latex()),
        Format::Json | Format::Csv => {
            let record = ResultRecord {
                algebra: n.algebra.to_string(),
                mode: if n.cap.is_some() { Mode::Adjoint } else { Mode::Trivial }.to_string(),
                degree: n.label.degree(),
                grade: n.label.weight(),
                cap: n.cap,
                dimension: Dimension::Finite(1),
                basis: vec![BasisEntry::new(n.label.to_string(), &n.cochain)],
            };
            emit_records(&[record], format)
        }
    }
}

fn cup(
    algebra: Option<&AlgebraSpec>,
    left: &CocycleLabel,
    right: &CocycleLabel,
    expect: Option<&CocycleLabel>,
    format: Format,
) -> CliResult<(String, i32)> {
    let alg = algebra.copied().unwrap_or_else(|| default_algebra(left.family));
    let a = scalar_cocycle(left)?;
    let b = scalar_cocycle(right)?;
    let product = cup_product(&alg, &a, &b)?;
    let name = format!("{left}^{right}");
    let degree = left.degree() + right.degree();
    let grade = left.weight() + right.weight();
    let mut text = match format {
        Format::Json | Format::Csv => {
            let dim = if product.is_zero_class() { 0 } else { 1 };
            let basis = if product.is_zero_class() {
                Vec::new()
            } else {
                vec![BasisEntry::new(name.clone(), &Cochain::Scalar(product.normal_form.clone()))]
            };
            let record = ResultRecord {
                algebra: alg.to_string(),
                mode: Mode::Trivial.to_string(),
                degree,
                grade,
                cap: None,
                dimension: Dimension::Finite(dim),
                basis,
            };
            emit_records(&[record], format)
        }
        Format::Latex => format!(
            "[{}]\\wedge[{}] \\equiv {}\n",
            left.to_latex(),
            right.to_latex(),
            product.normal_form.to_latex()
        ),
        Format::Text => format!(
            "{name} = {}\nclass: {}\n",
            product.product.to_text(),
            if product.is_zero_class() { "0".to_string() } else { product.normal_form.to_text() }
        ),
    };
    if let Some(target) = expect {
        let c = scalar_cocycle(target)?;
        let same = maxclass_core::operators::cup::cohomologous(&alg, &product.product, &c)?;
        if format == Format::Text {
            text.push_str(&format!("cohomologous to {target}: {same}\n"));
        }
        if !same {
            return Ok((text, EXIT_INCONSISTENT));
        }
    }
    Ok((text, EXIT_OK))
}

#[derive(serde::Serialize)]
struct OracleRow {
    degree: usize,
    grade: i64,
    census: usize,
    oracle: usize,
    ok: bool,
}

fn oracle(
    b: &Block,
    (degree_max, grade_max): (Option<usize>, Option<i64>),
    margin: u32,
    quotient: Option<u32>,
    check: bool,
    format: Format,
) -> CliResult<(String, i32)> {
    let alg = b.algebra;
    if alg != AlgebraSpec::M0 && alg != AlgebraSpec::M2 {
        return Err(CliError::Validation(format!("the census exists for m0 and m2, not {alg}")));
    }
    let mode = Mode::from(b.coefficients);
    let cap = b.cap.unwrap_or(DEFAULT_CAP);
    let quotient = match quotient {
        None => None,
        Some(_) if mode == Mode::Adjoint => {
            return Err(CliError::Validation("--quotient applies to trivial coefficients".into()));
        }
        Some(n) => {
            let small = || CliError::Validation(format!("quotient dimension {n} is too small"));
            Some(if alg == AlgebraSpec::M0 { AlgebraSpec::m0_quotient(n) } else { AlgebraSpec::m2_quotient(n) }.ok_or_else(small)?)
        }
    };
    let mut rows = Vec::new();
    for q in b.degree.max(1)..=degree_max.unwrap_or(b.degree).max(1) {
        for g in b.grade..=grade_max.unwrap_or(b.grade) {
            let (census, oracle) = match mode {
                Mode::Trivial => (
                    census_scalar(&alg, q, g)?.dimension,
                    match &quotient {
                        Some(small) => quotient_oracle(small, Mode::Trivial, q, g)?,
                        None => cohomology_dim(&BlockSpec::trivial(alg, q, g))?.dimension,
                    },
                ),
                Mode::Adjoint => (census_adjoint(&alg, q, g, cap)?.dimension, truncation_oracle(&alg, q, g, cap, margin)?),
            };
            rows.push(OracleRow {
                degree: q,
                grade: g,
                census,
                oracle,
                ok: census == oracle,
            });
        }
    }
    let mismatches = rows.iter().filter(|r| !r.ok).count();
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
        _ => {
            let mut s = String::from("degree,grade,census,oracle,status\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.degree,
                    r.grade,
                    r.census,
                    r.oracle,
                    if r.ok { "ok" } else { "MISMATCH" }
                ));
            }
            s.push_str(&format!("{} blocks, {mismatches} mismatches\n", rows.len()));
            s
        }
    };
    let code = if check && mismatches > 0 { EXIT_INCONSISTENT } else { EXIT_OK };
    Ok((text, code))
}
