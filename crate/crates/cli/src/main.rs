//! `ww` — batch front end for the coloured-partition verification engine.
//!
//! Three subcommands:
//!
//! - `ww verify <target>` replays an identity family or theorem and exits
//!   0 (all pass), 1 (any fail) or 2 (inconclusive / over budget);
//! - `ww counts <target>` dumps a count table;
//! - `ww series <target>` dumps a truncated series.
//!
//! All output is deterministic: the same invocation produces byte-identical
//! bytes. Unknown targets exit 64, I/O failures 74.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use weighted_words::colored::ColoredInt;
use weighted_words::dilation::{
    dilated_d_series, verify_classical, verify_dilated_theorem, Classical, DilatedTheorem,
};
use weighted_words::enumerate::{enumerate_d, enumerate_dk, enumerate_ek};
use weighted_words::ladder::{
    verify_eqd, verify_initials, verify_keyprop, verify_product_limit, verify_proof_steps,
    verify_qdiff, GLadder, TableCache,
};
use weighted_words::report::{exit_code, summarize, ReplayReport};
use weighted_words::rules::{enumerate_distinct_odd, enumerate_two_residue_distinct};
use weighted_words::series::{two_color_product, two_residue_product, Caps, DilationSpec, TriSeries};
use weighted_words::table::CountTable;

const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "ww", version, about = "Verify coloured-partition identities on exact truncated series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a verification target: initials, qdiff, keyprop, proof-steps,
    /// product-limit, refdilat, comp, newschur, refinement, schur,
    /// schur-product, rr
    Verify(VerifyArgs),
    /// Dump a count table: D, dk, ek, distinct-odd, two-residue,
    /// refdilat-c/-d, comp-c/-d, newschur-c/-d, refinement-a/-b
    Counts(CountsArgs),
    /// Dump a series: G, product, schur-product, D, dilated-D
    Series(SeriesArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Maximum retained q-exponent
    #[arg(long = "N")]
    n: Option<u32>,
    /// Maximum retained a-exponent (defaults to N)
    #[arg(long = "U")]
    u: Option<u32>,
    /// Maximum retained b-exponent (defaults to N)
    #[arg(long = "V")]
    v: Option<u32>,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Memory budget in MB (default: WW_BUDGET_MB or 512); estimated
    /// requirements beyond it are refused with exit status 2
    #[arg(long = "budget-mb")]
    budget_mb: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    target: String,
    /// Block index or inclusive range, e.g. 3 or 1..4
    #[arg(long)]
    k: Option<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CountsArgs {
    target: String,
    /// Coloured bound for dk / ek, e.g. 2_b
    #[arg(long)]
    k: Option<String>,
    /// Modulus for two-residue
    #[arg(long)]
    modulus: Option<u32>,
    /// First residue class (counts toward u)
    #[arg(long)]
    ra: Option<u32>,
    /// Second residue class (counts toward v)
    #[arg(long)]
    rb: Option<u32>,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SeriesArgs {
    target: String,
    /// Coloured bound for G, e.g. 2_b
    #[arg(long)]
    k: Option<String>,
    /// Dilation for dilated-D as M,m_a,m_b
    #[arg(long)]
    dilation: Option<String>,
    #[arg(long, value_enum, default_value_t = SeriesFormat::Poly)]
    format: SeriesFormat,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFormat {
    Poly,
    Text,
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.print().ok();
                return ExitCode::SUCCESS;
            }
            e.print().ok();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Counts(args) => run_counts(args),
        Command::Series(args) => run_series(args),
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("ww: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn caps_of(common: &CommonArgs, default_n: u32) -> Caps {
    let n = common.n.unwrap_or(default_n);
    Caps::new(common.u.unwrap_or(n), common.v.unwrap_or(n), n)
}

fn budget_mb(common: &CommonArgs) -> u64 {
    common
        .budget_mb
        .or_else(|| std::env::var("WW_BUDGET_MB").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(512)
}

/// Coarse memory estimate: number of monomials below the simplex cap times
/// bytes per term times the number of live series/tables for the target.
fn estimate_mb(caps: Caps, live_series: u64) -> u64 {
    let n = caps.n as u128;
    let terms = (n + 1) * (n + 2) * (n + 3) / 6;
    let bytes = terms.saturating_mul(96).saturating_mul(live_series as u128);
    (bytes / 1_000_000).min(u64::MAX as u128) as u64
}

fn check_budget(common: &CommonArgs, caps: Caps, live_series: u64) -> Option<ExitCode> {
    let budget = budget_mb(common);
    let estimate = estimate_mb(caps, live_series);
    if estimate > budget {
        eprintln!(
            "ww: refusing caps {caps}: estimated {estimate} MB exceeds the {budget} MB budget; \
             lower --N or raise --budget-mb"
        );
        return Some(ExitCode::from(EXIT_INCONCLUSIVE));
    }
    None
}

fn emit(common: &CommonArgs, content: &str) -> ExitCode {
    match &common.out {
        None => {
            print!("{content}");
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::write(path, content) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("ww: cannot write {}: {e}", path.display());
                ExitCode::from(EXIT_IO)
            }
        },
    }
}

fn emit_reports(args: &VerifyArgs, reports: &[ReplayReport]) -> ExitCode {
    let content = match args.format {
        ReportFormat::Text => summarize(reports),
        ReportFormat::Json => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&r.to_json_line());
                s.push('\n');
            }
            s
        }
    };
    let io = emit(&args.common, &content);
    if io != ExitCode::SUCCESS {
        return io;
    }
    ExitCode::from(exit_code(reports) as u8)
}

fn parse_k_range(spec: Option<&str>, default: (u32, u32)) -> Result<(u32, u32), String> {
    let Some(spec) = spec else { return Ok(default) };
    let parse_one = |s: &str| s.trim().parse::<u32>().map_err(|_| format!("bad k value {s:?}"));
    if let Some((lo, hi)) = spec.split_once("..") {
        let (lo, hi) = (parse_one(lo)?, parse_one(hi.trim_start_matches('='))?);
        if lo == 0 || hi < lo {
            return Err(format!("bad k range {spec:?}"));
        }
        Ok((lo, hi))
    } else {
        let k = parse_one(spec)?;
        if k == 0 {
            return Err("k must be at least 1".into());
        }
        Ok((k, k))
    }
}

fn run_verify(args: VerifyArgs) -> ExitCode {
    let (k_lo, k_hi) = match parse_k_range(args.k.as_deref(), (1, 4)) {
        Ok(r) => r,
        Err(e) => return usage(&e),
    };
    // the substitution-based replays need square exponent caps
    if matches!(args.target.as_str(), "initials" | "qdiff" | "keyprop" | "proof-steps") {
        let caps = caps_of(&args.common, 1);
        if caps.u != caps.v {
            return usage("this target needs square exponent caps (--U equal to --V)");
        }
    }
    let reports: Vec<ReplayReport> = match args.target.as_str() {
        "initials" => {
            let caps = caps_of(&args.common, 10);
            if let Some(code) = check_budget(&args.common, caps, 16) {
                return code;
            }
            let mut cache = TableCache::new(caps);
            verify_initials(&mut cache)
        }
        "qdiff" => {
            let caps = caps_of(&args.common, 20);
            if let Some(code) = check_budget(&args.common, caps, 16 * (k_hi as u64 + 2)) {
                return code;
            }
            let mut cache = TableCache::new(caps);
            (k_lo..=k_hi).flat_map(|k| verify_qdiff(k, &mut cache)).collect()
        }
        "keyprop" => {
            let caps = caps_of(&args.common, 20);
            if let Some(code) = check_budget(&args.common, caps, 16 * (k_hi as u64 + 2)) {
                return code;
            }
            let top = match ColoredInt::new(2 * k_hi + 2, weighted_words::Color::Ab) {
                Ok(x) => x.rank(),
                Err(_) => return usage("k range out of bounds"),
            };
            let ladder = GLadder::build(top, caps);
            let mut reports = Vec::new();
            for k in k_lo..=k_hi {
                match verify_keyprop(k, &ladder) {
                    Ok(r) => reports.extend(r),
                    Err(e) => return usage(&e.to_string()),
                }
            }
            reports
        }
        "proof-steps" => {
            let caps = caps_of(&args.common, 20);
            if let Some(code) = check_budget(&args.common, caps, 32 * (k_hi as u64 + 2)) {
                return code;
            }
            let mut cache = TableCache::new(caps);
            (k_lo..=k_hi)
                .flat_map(|k| {
                    let mut r = verify_eqd(k, &mut cache);
                    r.extend(verify_proof_steps(k, &mut cache));
                    r
                })
                .collect()
        }
        "product-limit" => {
            let caps = caps_of(&args.common, 25);
            if let Some(code) = check_budget(&args.common, caps, 3) {
                return code;
            }
            vec![verify_product_limit(caps)]
        }
        "refdilat" | "comp" | "newschur" | "refinement" => {
            let theorem = match args.target.as_str() {
                "refdilat" => DilatedTheorem::Refdilat,
                "comp" => DilatedTheorem::Comp,
                "newschur" => DilatedTheorem::Newschur,
                _ => DilatedTheorem::Refinement,
            };
            let default_n = if theorem == DilatedTheorem::Newschur { 30 } else { 40 };
            let caps = caps_of(&args.common, default_n);
            if let Some(code) = check_budget(&args.common, caps, 4) {
                return code;
            }
            verify_dilated_theorem(theorem, caps.n)
        }
        "schur" => {
            let caps = caps_of(&args.common, 40);
            if let Some(code) = check_budget(&args.common, caps, 2) {
                return code;
            }
            vec![verify_classical(Classical::Schur, caps.n)]
        }
        "schur-product" => {
            let caps = caps_of(&args.common, 40);
            if let Some(code) = check_budget(&args.common, caps, 3) {
                return code;
            }
            vec![verify_classical(Classical::SchurProduct, caps.n)]
        }
        "rr" => {
            let caps = caps_of(&args.common, 40);
            if let Some(code) = check_budget(&args.common, caps, 2) {
                return code;
            }
            vec![
                verify_classical(Classical::Rr0, caps.n),
                verify_classical(Classical::Rr1, caps.n),
            ]
        }
        other => return usage(&format!("unknown verify target {other:?}")),
    };
    emit_reports(&args, &reports)
}

fn parse_colored(k: Option<&str>) -> Result<ColoredInt, String> {
    let Some(k) = k else { return Err("this target needs --k <value>_<colour>".into()) };
    ColoredInt::from_str(k).map_err(|e| e.to_string())
}

fn run_counts(args: CountsArgs) -> ExitCode {
    let caps = caps_of(&args.common, 20);
    if let Some(code) = check_budget(&args.common, caps, 3) {
        return code;
    }
    let table: CountTable = match args.target.as_str() {
        "D" => enumerate_d(caps),
        "dk" => match parse_colored(args.k.as_deref()) {
            Ok(k) => enumerate_dk(k, caps),
            Err(e) => return usage(&e),
        },
        "ek" => match parse_colored(args.k.as_deref()) {
            Ok(k) => enumerate_ek(k, caps),
            Err(e) => return usage(&e),
        },
        "distinct-odd" => enumerate_distinct_odd(caps),
        "two-residue" => {
            let (Some(m), Some(ra), Some(rb)) = (args.modulus, args.ra, args.rb) else {
                return usage("two-residue needs --modulus, --ra and --rb");
            };
            if m == 0 || ra >= m || rb >= m || ra == rb {
                return usage("two-residue needs distinct residues below the modulus");
            }
            enumerate_two_residue_distinct(m, ra, rb, caps)
        }
        "refdilat-c" => DilatedTheorem::Refdilat.c_side(caps),
        "refdilat-d" => DilatedTheorem::Refdilat.d_side(caps),
        "comp-c" => DilatedTheorem::Comp.c_side(caps),
        "comp-d" => DilatedTheorem::Comp.d_side(caps),
        "newschur-c" => DilatedTheorem::Newschur.c_side(caps),
        "newschur-d" => DilatedTheorem::Newschur.d_side(caps),
        "refinement-a" => DilatedTheorem::Refinement.c_side(caps),
        "refinement-b" => DilatedTheorem::Refinement.d_side(caps),
        other => return usage(&format!("unknown counts target {other:?}")),
    };
    let content = match args.format {
        TableFormat::Text => table.to_text(),
        TableFormat::Csv => table.to_csv(),
        TableFormat::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
    };
    emit(&args.common, &content)
}

fn run_series(args: SeriesArgs) -> ExitCode {
    let caps = caps_of(&args.common, 20);
    if let Some(code) = check_budget(&args.common, caps, 3) {
        return code;
    }
    let series: TriSeries = match args.target.as_str() {
        "G" => match parse_colored(args.k.as_deref()) {
            Ok(k) => {
                let ladder = GLadder::build(k.rank(), caps);
                ladder.series_for(k).expect("built through this rank").clone()
            }
            Err(e) => return usage(&e),
        },
        "product" => two_color_product(caps),
        "schur-product" => two_residue_product(caps, 3, 1, 2),
        "D" => enumerate_d(caps).to_series(),
        "dilated-D" => {
            let Some(spec) = args.dilation.as_deref() else {
                return usage("dilated-D needs --dilation M,m_a,m_b");
            };
            let spec: DilationSpec = match spec.parse() {
                Ok(s) => s,
                Err(e) => return usage(&format!("{e}")),
            };
            match dilated_d_series(spec, caps) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("ww: {e}");
                    return ExitCode::from(EXIT_INCONCLUSIVE);
                }
            }
        }
        other => return usage(&format!("unknown series target {other:?}")),
    };
    let content = match args.format {
        SeriesFormat::Poly => {
            let mut s = series.to_polynomial_string();
            s.push('\n');
            s
        }
        SeriesFormat::Text => series.to_text(),
        SeriesFormat::Csv => {
            let mut s = String::from("u,v,n,coefficient\n");
            for (&(u, v, n), c) in series.iter() {
                s.push_str(&format!("{u},{v},{n},{c}\n"));
            }
            s
        }
        SeriesFormat::Json => {
            let mut s = series.to_json();
            s.push('\n');
            s
        }
    };
    emit(&args.common, &content)
}
