use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use mirrorcat::acceptance::Suite;
use mirrorcat::arith::QSeries;
use mirrorcat::coset::{
    build_extension_table, build_summary, extract_commutant_characters, identity_map, verify_induction_monoidal,
    verify_mirror, TableJson, TableKind,
};
use mirrorcat::emit::{self, Table};
use mirrorcat::fusion::{sl2_fusion, FusionRing, RingJson};
use mirrorcat::ribbon::fixtures::{parse_category, SHIPPED};
use mirrorcat::ribbon::verify_category;
use mirrorcat::virasoro::{simple_character_neg_side, CharacterTable, Sign};

#[derive(Parser)]
#[command(name = "mirrorcat", version, about = "Exact checks for fusion, ribbon, Virasoro and coset data")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args)]
struct Opts {
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    p: u32,
    #[arg(long, global = true, value_enum, default_value_t = SideArg::Minus)]
    side: SideArg,
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    r: Option<u32>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    rp: Option<u32>,
    #[arg(long, global = true, default_value_t = 10)]
    trunc: u32,
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    rmax: u32,
    /// Machine format; human-readable text when absent.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    fixture: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Fusion products of the sl2-type ring, or the table of a ring file.
    Fusion {
        #[arg(long)]
        sl2: bool,
    },
    /// Characters of the h_{r,1} simple modules.
    Char,
    /// Pentagon, hexagon, rigidity, balancing and dimension checks.
    VerifyCategory,
    /// Mirror and induction checks between the two sides at --p.
    VerifyMirror,
    /// Recovers the minus-side characters from the bigraded character.
    CosetExtract,
    /// Extension tables.
    Tables {
        #[arg(long, value_enum, default_value_t = KindArg::Ik)]
        kind: KindArg,
    },
    /// Runs the acceptance suite.
    Selftest {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Plus,
    Minus,
}

impl From<SideArg> for Sign {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Plus => Sign::Plus,
            SideArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ik,
    Wminus,
    Mminus,
}

impl From<KindArg> for TableKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Ik => TableKind::Ik,
            KindArg::Wminus => TableKind::Wminus,
            KindArg::Mminus => TableKind::Mminus,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Tex,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Failed(_) => 1,
            Self::Input(_) => 2,
            Self::Internal(_) => 3,
        }
    }
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

type Run = Result<(), CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

/// Writes machine output to `--out` or stdout.
fn emit_text(opts: &Opts, text: &str) -> Run {
    match &opts.out {
        Some(path) => fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Internal(e.to_string()))
        }
    }
}

fn emit_table(opts: &Opts, table: &Table, format: Format) -> Run {
    let text = match format {
        Format::Json => pretty(&table.to_json())?,
        Format::Csv => table.to_csv().map_err(|e| CliError::Internal(e.to_string()))?,
        Format::Tex => table.to_tex(),
    };
    emit_text(opts, &text)
}

fn pretty(v: &impl serde::Serialize) -> Result<String, CliError> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn single_fixture(opts: &Opts) -> Result<Option<&PathBuf>, CliError> {
    match opts.fixture.as_slice() {
        [] => Ok(None),
        [one] => Ok(Some(one)),
        _ => Err(input("this verb takes one --fixture")),
    }
}

fn fusion(opts: &Opts, sl2: bool) -> Run {
    if let Some(path) = single_fixture(opts)? {
        let text = read(path)?;
        let ring = match parse_category(&text) {
            Ok(cat) => cat.ring().clone(),
            Err(cat_err) => {
                let json: RingJson =
                    serde_json::from_str(&text).map_err(|e| input(format!("neither a category ({cat_err}) nor a ring ({e})")))?;
                FusionRing::try_from(&json).map_err(input)?
            }
        };
        let table = emit::ring_table(&ring);
        return match opts.format {
            Some(f) => emit_table(opts, &table, f),
            None => {
                let mut s = String::new();
                for i in 0..ring.len() {
                    for j in 0..ring.len() {
                        let prod = ring.product(i, j).unwrap_or_default();
                        let terms: Vec<String> = prod
                            .iter()
                            .map(|&(k, m)| if m == 1 { ring.label(k).to_string() } else { format!("{m}·{}", ring.label(k)) })
                            .collect();
                        let rhs = if terms.is_empty() { "0".into() } else { terms.join(" ⊕ ") };
                        s.push_str(&format!("{}⊗{} = {rhs}\n", ring.label(i), ring.label(j)));
                    }
                }
                emit_text(opts, &s)
            }
        };
    }
    if !sl2 {
        return Err(input("fusion needs --sl2 or --fixture"));
    }
    let pairs: Vec<(u32, u32)> = match (opts.r, opts.rp) {
        (Some(r), Some(rp)) => vec![(r, rp)],
        (None, None) => (1..=opts.rmax).flat_map(|r| (1..=opts.rmax).map(move |rp| (r, rp))).collect(),
        _ => return Err(input("give both --r and --rp, or neither")),
    };
    match opts.format {
        Some(f) => emit_table(opts, &emit::fusion_table(&pairs), f),
        None => {
            let mut s = String::new();
            for (r, rp) in pairs {
                s.push_str(&format!("{r}⊗{rp} = {}\n", sl2_fusion(r, rp).map_err(input)?));
            }
            emit_text(opts, &s)
        }
    }
}

fn human_series(q: &QSeries) -> String {
    let coeffs: Vec<String> = q.coeffs().iter().map(|c| c.to_string()).collect();
    format!("offset {} coeffs {}", q.offset(), coeffs.join(","))
}

fn character(opts: &Opts) -> Run {
    let sign = Sign::from(opts.side);
    let table = match opts.r {
        Some(r) => {
            let mut t = CharacterTable::build(opts.p, sign, r, opts.trunc).map_err(failed_or_input)?;
            t.entries.retain(|e| e.r == r);
            t
        }
        None => CharacterTable::build(opts.p, sign, opts.rmax, opts.trunc).map_err(failed_or_input)?,
    };
    match opts.format {
        Some(f) => emit_table(opts, &emit::character_table(&table), f),
        None => {
            let mut s = String::new();
            for e in &table.entries {
                s.push_str(&format!("r={} h={} {}\n", e.r, e.h, human_series(&e.character)));
            }
            emit_text(opts, &s)
        }
    }
}

fn failed_or_input(e: mirrorcat::virasoro::VirasoroError) -> CliError {
    use mirrorcat::virasoro::VirasoroError as V;
    match e {
        V::OracleMismatch { .. } => CliError::Failed(e.to_string()),
        _ => input(e),
    }
}

fn verify_categories(opts: &Opts) -> Run {
    let mut cats = Vec::new();
    if opts.fixture.is_empty() {
        for (name, text) in SHIPPED {
            cats.push((name.to_string(), parse_category(text).map_err(|e| CliError::Internal(e.to_string()))?));
        }
    } else {
        for path in &opts.fixture {
            let cat = parse_category(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
            cats.push((path.display().to_string(), cat));
        }
    }
    let mut reports = Vec::new();
    let mut human = String::new();
    let mut all_ok = true;
    for (name, cat) in &cats {
        let rep = verify_category(cat);
        all_ok &= rep.is_valid();
        let failures = rep.failures();
        human.push_str(&format!("{name}: {}\n", if rep.is_valid() { "ok" } else { "FAILED" }));
        for (a, (d, t)) in rep.dimensions.iter().zip(&rep.twists).enumerate() {
            human.push_str(&format!("  {}: dim {d}, twist {t}\n", cat.label_name(a)));
        }
        for f in &failures {
            human.push_str(&format!("  {f}\n"));
        }
        reports.push(json!({
            "name": name,
            "valid": rep.is_valid(),
            "dimensions": rep.dimensions,
            "twists": rep.twists,
            "failures": failures,
        }));
    }
    match opts.format {
        Some(Format::Json) => emit_text(opts, &pretty(&reports)?)?,
        Some(_) => return Err(input("verify-category emits json only")),
        None => emit_text(opts, &human)?,
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Failed("category checks failed".into()))
    }
}

fn verify_mirror_verb(opts: &Opts) -> Run {
    let n = opts.rmax as usize;
    let su = build_summary(opts.p, Sign::Plus, opts.rmax).map_err(input)?;
    let sv = build_summary(opts.p, Sign::Minus, opts.rmax).map_err(input)?;
    let tau = identity_map(n);
    let mirror = verify_mirror(&su, &sv, &tau);
    let all: BTreeSet<usize> = (0..n).collect();
    let induction = verify_induction_monoidal(&su, &sv, &tau, &all, n).map_err(input)?;
    let pass = mirror.is_pass() && induction.is_pass();
    let failures: Vec<String> = mirror.failures.iter().chain(&induction.failures).map(|f| f.to_string()).collect();
    let skipped: Vec<&String> = mirror.skipped.iter().chain(&induction.skipped).collect();
    match opts.format {
        Some(Format::Json) => emit_text(
            opts,
            &pretty(&json!({ "p": opts.p, "rmax": opts.rmax, "pass": pass, "failures": failures, "skipped": skipped }))?,
        )?,
        Some(_) => return Err(input("verify-mirror emits json only")),
        None => {
            let mut s = format!("mirror p={} rmax={}: {}\n", opts.p, opts.rmax, if pass { "ok" } else { "FAILED" });
            for f in &failures {
                s.push_str(&format!("  {f}\n"));
            }
            for k in &skipped {
                s.push_str(&format!("  skipped: {k}\n"));
            }
            emit_text(opts, &s)?;
        }
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::Failed("mirror checks failed".into()))
    }
}

fn coset_extract(opts: &Opts) -> Run {
    let table = match single_fixture(opts)? {
        Some(path) => {
            let json: TableJson = serde_json::from_str(&read(path)?).map_err(input)?;
            json.to_table().map_err(input)?
        }
        None => build_extension_table(TableKind::Ik, opts.p, opts.rmax, opts.trunc).map_err(input)?,
    };
    let bigraded = table
        .bigraded
        .as_ref()
        .ok_or_else(|| input("table has no bigraded character"))?;
    let u: Vec<QSeries> = table
        .rows
        .iter()
        .map(|r| r.u_char.clone().ok_or_else(|| input(format!("row {} has no U character", r.label))))
        .collect::<Result<_, _>>()?;
    let v = extract_commutant_characters(bigraded, &u).map_err(|e| CliError::Failed(e.to_string()))?;
    let mut mismatches = Vec::new();
    if table.kind == TableKind::Ik {
        for (row, got) in table.rows.iter().zip(&v) {
            let want = simple_character_neg_side(row.label, table.p, got.trunc() as u32).map_err(failed_or_input)?;
            if got.offset() != want.offset() || got.coeffs() != want.coeffs() {
                mismatches.push(format!("r={}: extracted {got}, expected {want}", row.label));
            }
        }
    }
    let mut out = Table::new(&[
        ("label", emit::CellKind::Int),
        ("h", emit::CellKind::Rational),
        ("coeffs", emit::CellKind::List),
    ]);
    for (row, got) in table.rows.iter().zip(&v) {
        out.push(vec![
            emit::Cell::Int(row.label.into()),
            emit::Cell::Rational(got.offset().clone()),
            emit::Cell::List(got.coeffs().to_vec()),
        ]);
    }
    match opts.format {
        Some(f) => emit_table(opts, &out, f)?,
        None => {
            let mut s = String::new();
            for (row, got) in table.rows.iter().zip(&v) {
                s.push_str(&format!("r={} {}\n", row.label, human_series(got)));
            }
            for m in &mismatches {
                s.push_str(&format!("MISMATCH {m}\n"));
            }
            emit_text(opts, &s)?;
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} extracted characters disagree", mismatches.len())))
    }
}

fn tables(opts: &Opts, kind: KindArg) -> Run {
    let table = build_extension_table(kind.into(), opts.p, opts.rmax, opts.trunc).map_err(input)?;
    match opts.format {
        Some(Format::Json) => emit_text(opts, &pretty(&TableJson::from_table(&table))?),
        Some(f) => emit_table(opts, &emit::extension_table(&table), f),
        None => {
            let mut s = format!("{} p={} trunc={}\n", table.kind, table.p, table.trunc);
            for row in &table.rows {
                s.push_str(&format!(
                    "r={} hU={} hV={} mult={} {}\n",
                    row.label,
                    row.h_u,
                    row.h_v,
                    row.mult,
                    human_series(&row.v_char)
                ));
            }
            emit_text(opts, &s)
        }
    }
}

fn selftest(opts: &Opts, inject_fault: bool) -> Run {
    let mut suite = Suite::new().map_err(|e| CliError::Internal(e.to_string()))?;
    for path in &opts.fixture {
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| input(format!("{}: no file name", path.display())))?;
        suite = suite.with_fixture(name, &read(path)?).map_err(input)?;
    }
    let results = suite.with_injected_fault(inject_fault).run();
    let mut s = String::new();
    for r in &results {
        s.push_str(&format!("{r}\n"));
    }
    emit_text(opts, &s)?;
    if results.iter().any(|r| matches!(r.outcome, mirrorcat::acceptance::Outcome::Internal(_))) {
        return Err(CliError::Internal("a criterion could not be evaluated".into()));
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{failed} criteria failed")))
    }
}

fn configure_threads() -> Run {
    let Ok(v) = std::env::var("MIRRORCAT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| input(format!("MIRRORCAT_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn run(cli: Cli) -> Run {
    configure_threads()?;
    let opts = &cli.opts;
    match cli.verb {
        Verb::Fusion { sl2 } => fusion(opts, sl2),
        Verb::Char => character(opts),
        Verb::VerifyCategory => verify_categories(opts),
        Verb::VerifyMirror => verify_mirror_verb(opts),
        Verb::CosetExtract => coset_extract(opts),
        Verb::Tables { kind } => tables(opts, kind),
        Verb::Selftest { inject_fault } => selftest(opts, inject_fault),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = catch_unwind(AssertUnwindSafe(|| run(cli)))
        .unwrap_or_else(|_| Err(CliError::Internal("panic".into())));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mirrorcat: {e}");
            ExitCode::from(e.code())
        }
    }
}
