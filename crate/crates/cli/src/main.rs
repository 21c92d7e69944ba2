//! Command-line surface: computes gap sets and pure gap sets for explicit
//! curves y^m = prod (x - alpha_i)^(lambda_i), designs codes from the
//! cataloged curve families, and cross-checks the algorithms against
//! brute force. Data goes to stdout, diagnostics to stderr.

mod output;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kummer_gaps::codes::{
    catalog, construction1, construction2, construction3, table_rows, CodeDesign, FamilySpec,
    TableRow,
};
use kummer_gaps::gaps::gap_set;
use kummer_gaps::puregaps::{
    bottom_pure_gaps, bottom_pure_gaps_by_scan, full_pure_gap_set, full_pure_gap_set_by_scan,
    is_pure_gap_oracle, GapTuple,
};
use kummer_gaps::{Error, KummerCurve, PlaceRef};
use serde_json::json;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 2;
const EXIT_CURVE: u8 = 3;
const EXIT_SELECTION: u8 = 4;
const EXIT_PARAMETER: u8 = 5;
const EXIT_MISMATCH: u8 = 6;

const LONG_ABOUT: &str = "\
Computes Weierstrass gap sets and pure gap sets at totally ramified places
of curves y^m = prod (x - alpha_i)^(lambda_i), and designs differential
codes from consecutive pure gaps.

Places are named by tokens: `inf` for the infinite place and 1-based
indices for the finite branch places. Output rows are deterministic and
sorted; data goes to stdout, notes and diagnostics to stderr. The worker
thread count can be pinned with RAYON_NUM_THREADS without changing any
output byte.

Exit codes:
  0  success
  2  usage error (unparseable flags or tokens)
  3  invalid curve parameters
  4  invalid place selection
  5  invalid family, construction, box, or table parameters
  6  verification mismatch";

#[derive(Parser)]
#[command(
    name = "kummer",
    version,
    about = "Gap sets, pure gap sets, and code designs on Kummer curves",
    long_about = LONG_ABOUT
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gap set at one totally ramified place
    Gaps(GapsArgs),
    /// Pure gap set at one or more totally ramified places
    Puregaps(PuregapsArgs),
    /// Code designs and parameter tables from the cataloged families
    Codes(CodesArgs),
    /// Randomized cross-checks of the algorithms against brute force
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Depth {
    None,
    Oracle,
}

#[derive(Args)]
struct FormatArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Prepend a header row to tabular csv/text output
    #[arg(long)]
    header: bool,
}

#[derive(Args)]
struct GapsArgs {
    /// Kummer exponent m
    #[arg(long)]
    m: i64,
    /// Comma-separated multiplicities lambda_1,...,lambda_r
    #[arg(long)]
    lambdas: String,
    /// Place token: `inf` or a 1-based index
    #[arg(long)]
    place: String,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args)]
struct PuregapsArgs {
    /// Kummer exponent m
    #[arg(long)]
    m: i64,
    /// Comma-separated multiplicities lambda_1,...,lambda_r
    #[arg(long)]
    lambdas: String,
    /// Comma-separated place tokens, e.g. `inf,1,2`
    #[arg(long)]
    places: String,
    /// Report only the part of the set inside [1, m-1]^s
    #[arg(long)]
    bottom_only: bool,
    /// Recheck every tuple by brute force and rescan the bounding box
    #[arg(long, value_enum, default_value_t = Depth::None)]
    verify: Depth,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args)]
struct CodesArgs {
    /// Reproduce stored parameter table 1-4
    #[arg(
        long,
        conflicts_with_all = ["family", "q", "t", "m", "construction", "s", "k", "c", "n"]
    )]
    table: Option<u8>,
    /// Family id: qt, hq, or f3
    #[arg(long)]
    family: Option<String>,
    /// Field parameter q of the family
    #[arg(long)]
    q: Option<i64>,
    /// Extension degree t (family qt only)
    #[arg(long)]
    t: Option<i64>,
    /// Kummer exponent m (families qt and hq)
    #[arg(long)]
    m: Option<i64>,
    /// Construction number: 1, 2, or 3
    #[arg(long)]
    construction: Option<u8>,
    /// Number of finite places carrying the divisor
    #[arg(long)]
    s: Option<i64>,
    /// Shift parameter of constructions 1 and 2
    #[arg(long)]
    k: Option<i64>,
    /// Shift parameter of construction 3
    #[arg(long)]
    c: Option<i64>,
    /// Code length override; defaults to every rational place off the divisor
    #[arg(long)]
    n: Option<i64>,
    #[command(flatten)]
    fmt: FormatArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest Kummer exponent sampled
    #[arg(long, default_value_t = 5)]
    max_m: i64,
    /// Largest branch place count sampled
    #[arg(long, default_value_t = 5)]
    max_r: i64,
    /// Largest s: selections use up to s+1 places
    #[arg(long, default_value_t = 2)]
    max_s: usize,
    /// Largest absolute multiplicity sampled
    #[arg(long, default_value_t = 9)]
    max_lambda: i64,
    /// Number of random curves to sample
    #[arg(long, default_value_t = 200)]
    curves: usize,
    /// Sampling seed; a fixed seed gives byte-identical reports
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Corrupt one verdict on purpose to prove mismatches are caught
    #[arg(long)]
    inject_fault: bool,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    tag: &'static str,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, tag: "E_USAGE", msg: msg.into() }
}

fn lift(err: Error) -> Failure {
    let (code, tag) = match err {
        Error::ExponentTooSmall(_)
        | Error::NoMultiplicities
        | Error::ZeroMultiplicity(_)
        | Error::NowhereTotallyRamified
        | Error::Overflow
        | Error::NotInvertible { .. } => (EXIT_CURVE, "E_CURVE"),
        Error::PlaceOutOfRange { .. }
        | Error::NotTotallyRamified(_)
        | Error::DuplicatePlace(_)
        | Error::EmptySelection
        | Error::SelectionTooLarge { .. }
        | Error::SelectionCurveMismatch { .. }
        | Error::TupleLengthMismatch { .. }
        | Error::NegativeCoordinate { .. }
        | Error::CandidateOutOfRange { .. } => (EXIT_SELECTION, "E_SELECTION"),
        Error::ShapeMismatch(_)
        | Error::ParameterRange(_)
        | Error::InvalidBox(_)
        | Error::FamilyConstraint(_)
        | Error::WindowViolation { .. }
        | Error::UnknownTable(_) => (EXIT_PARAMETER, "E_PARAM"),
    };
    Failure { code, tag, msg: err.to_string() }
}

fn parse_lambdas(raw: &str) -> Result<Vec<i64>, Failure> {
    raw.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("multiplicity `{}` is not an integer", tok.trim())))
        })
        .collect()
}

fn parse_place(tok: &str) -> Result<PlaceRef, Failure> {
    let tok = tok.trim();
    if tok.eq_ignore_ascii_case("inf") {
        return Ok(PlaceRef::Infinity);
    }
    tok.parse::<usize>()
        .map(PlaceRef::Finite)
        .map_err(|_| usage(format!("place token `{tok}` is neither `inf` nor an index")))
}

fn build_curve(m: i64, lambdas: &str) -> Result<KummerCurve, Failure> {
    KummerCurve::new(m, parse_lambdas(lambdas)?).map_err(lift)
}

fn curve_json(c: &KummerCurve) -> serde_json::Value {
    json!({ "m": c.m(), "lambdas": c.lambdas() })
}

fn cmd_gaps(args: GapsArgs) -> Result<(), Failure> {
    let curve = build_curve(args.m, &args.lambdas)?;
    let place = parse_place(&args.place)?;
    let set = gap_set(&curve, place).map_err(lift)?;
    let genus = curve.genus();
    let count_ok = set.len() as i64 == genus;
    match args.fmt.format {
        Format::Json => {
            let value = json!({
                "curve": curve_json(&curve),
                "place": place.to_string(),
                "gaps": set.members,
                "genus": genus,
                "count_matches_genus": count_ok,
            });
            println!("{value}");
        }
        Format::Csv => {
            if !set.members.is_empty() {
                println!("{}", output::csv_row(&output::int_row(&set.members)));
            }
            report_gap_count(set.members.len(), genus, count_ok);
        }
        Format::Text => {
            for gap in &set.members {
                println!("{gap}");
            }
            report_gap_count(set.members.len(), genus, count_ok);
        }
    }
    Ok(())
}

fn report_gap_count(count: usize, genus: i64, count_ok: bool) {
    let verdict = if count_ok { "count matches genus" } else { "COUNT DOES NOT MATCH GENUS" };
    eprintln!("genus {genus}; {count} gaps ({verdict})");
}

fn cmd_puregaps(args: PuregapsArgs) -> Result<(), Failure> {
    let curve = build_curve(args.m, &args.lambdas)?;
    let places = args.places.split(',').map(parse_place).collect::<Result<Vec<_>, _>>()?;
    let sel = curve.select(places).map_err(lift)?;
    let tuples: Vec<GapTuple> = if args.bottom_only {
        bottom_pure_gaps(&curve, &sel).map_err(lift)?.tuples().cloned().collect()
    } else {
        full_pure_gap_set(&curve, &sel).map_err(lift)?
    };
    if args.verify == Depth::Oracle {
        for tuple in &tuples {
            if !is_pure_gap_oracle(&curve, &sel, tuple).map_err(lift)? {
                return Err(Failure {
                    code: EXIT_MISMATCH,
                    tag: "E_VERIFY",
                    msg: format!("tuple {tuple:?} fails the brute-force recheck"),
                });
            }
        }
        let rescan = if args.bottom_only {
            bottom_pure_gaps_by_scan(&curve, &sel)
        } else {
            full_pure_gap_set_by_scan(&curve, &sel)
        }
        .map_err(lift)?;
        if rescan != tuples {
            return Err(Failure {
                code: EXIT_MISMATCH,
                tag: "E_VERIFY",
                msg: format!(
                    "exhaustive scan found {} tuples, the algorithm reported {}",
                    rescan.len(),
                    tuples.len()
                ),
            });
        }
        eprintln!("verify: {} tuples rechecked by brute force; exhaustive scan agrees", tuples.len());
    }
    let tokens: Vec<String> = sel.places().map(|p| format!("{p}")).collect();
    match args.fmt.format {
        Format::Json => {
            let value = json!({
                "curve": curve_json(&curve),
                "places": tokens,
                "tuples": tuples,
            });
            println!("{value}");
        }
        Format::Csv => {
            if args.fmt.header {
                let head: Vec<String> = tokens.iter().map(|t| format!("Q{t}")).collect();
                println!("{}", output::csv_row(&head));
            }
            for tuple in &tuples {
                println!("{}", output::csv_row(&output::int_row(tuple)));
            }
        }
        Format::Text => {
            let mut rows: Vec<Vec<String>> = Vec::new();
            if args.fmt.header {
                rows.push(tokens.iter().map(|t| format!("Q{t}")).collect());
            }
            rows.extend(tuples.iter().map(|t| output::int_row(t)));
            for line in output::aligned_rows(&rows) {
                println!("{line}");
            }
        }
    }
    Ok(())
}

const TABLE_COLUMNS: [&str; 9] =
    ["q", "t", "m", "s", "k", "n", "k_dim", "d_lower", "quoted_improvement"];

fn table_fields(row: &TableRow) -> Vec<String> {
    vec![
        row.q.to_string(),
        row.t.map(|t| t.to_string()).unwrap_or_default(),
        row.m.to_string(),
        row.s.to_string(),
        row.k.to_string(),
        row.design.n.to_string(),
        row.design.k_dim.to_string(),
        row.design.d_lower.to_string(),
        row.improvement.to_string(),
    ]
}

fn design_places(design: &CodeDesign) -> Vec<String> {
    design.selection.places().map(|p| format!("{p}")).collect()
}

fn print_table(table: u8, rows: &[TableRow], fmt: &FormatArgs) {
    match fmt.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "q": row.q,
                        "t": row.t,
                        "m": row.m,
                        "s": row.s,
                        "k": row.k,
                        "n": row.design.n,
                        "k_dim": row.design.k_dim,
                        "d_lower": row.design.d_lower,
                        "g_coefficients": row.design.g_coeffs,
                        "places": design_places(&row.design),
                        "quoted_improvement": row.improvement,
                    })
                })
                .collect();
            println!("{}", json!({ "table": table, "rows": rows }));
        }
        Format::Csv => {
            if fmt.header {
                let head: Vec<String> = TABLE_COLUMNS.iter().map(|s| s.to_string()).collect();
                println!("{}", output::csv_row(&head));
            }
            for row in rows {
                println!("{}", output::csv_row(&table_fields(row)));
            }
        }
        Format::Text => {
            let mut grid: Vec<Vec<String>> = Vec::new();
            if fmt.header {
                grid.push(TABLE_COLUMNS.iter().map(|s| s.to_string()).collect());
            }
            grid.extend(rows.iter().map(table_fields));
            for line in output::aligned_rows(&grid) {
                println!("{line}");
            }
        }
    }
}

fn print_design(design: &CodeDesign, construction: u8, fmt: &FormatArgs) {
    match fmt.format {
        Format::Json => {
            let fam = &design.family;
            let value = json!({
                "construction": construction,
                "family": {
                    "label": fam.label,
                    "m": fam.curve.m(),
                    "lambdas": fam.curve.lambdas(),
                    "genus": fam.genus,
                    "n_rational": fam.n_rational,
                },
                "places": design_places(design),
                "g_coefficients": design.g_coeffs,
                "deg_g": design.deg_g(),
                "n": design.n,
                "k_dim": design.k_dim,
                "d_lower": design.d_lower,
            });
            println!("{value}");
        }
        Format::Csv => {
            if fmt.header {
                println!("n,k_dim,d_lower");
            }
            println!("{},{},{}", design.n, design.k_dim, design.d_lower);
        }
        Format::Text => {
            let mut grid: Vec<Vec<String>> = Vec::new();
            if fmt.header {
                grid.push(vec!["n".into(), "k_dim".into(), "d_lower".into()]);
            }
            grid.push(output::int_row(&[design.n, design.k_dim, design.d_lower]));
            for line in output::aligned_rows(&grid) {
                println!("{line}");
            }
        }
    }
}

fn cmd_codes(args: CodesArgs) -> Result<(), Failure> {
    if let Some(table) = args.table {
        let rows = table_rows(table).map_err(lift)?;
        print_table(table, &rows, &args.fmt);
        return Ok(());
    }
    let family_id =
        args.family.as_deref().ok_or_else(|| usage("pass --table N or --family <qt|hq|f3>"))?;
    let q = args.q.ok_or_else(|| usage("--q is required with --family"))?;
    let spec = match family_id {
        "qt" => FamilySpec::One {
            q,
            t: args.t.ok_or_else(|| usage("--t is required for family qt"))?,
            m: args.m.ok_or_else(|| usage("--m is required for family qt"))?,
        },
        "hq" => FamilySpec::Two {
            q,
            m: args.m.ok_or_else(|| usage("--m is required for family hq"))?,
        },
        "f3" => {
            if args.t.is_some() || args.m.is_some() {
                return Err(usage("family f3 takes only --q"));
            }
            FamilySpec::Three { q }
        }
        other => return Err(usage(format!("unknown family `{other}`; known ids: qt, hq, f3"))),
    };
    let fam = catalog(spec).map_err(lift)?;
    for note in &fam.notes {
        eprintln!("note: {note}");
    }
    let s = args.s.ok_or_else(|| usage("--s is required with --family"))?;
    let construction =
        args.construction.ok_or_else(|| usage("--construction is required with --family"))?;
    let design = match construction {
        1 => construction1(
            &fam,
            s,
            args.k.ok_or_else(|| usage("--k is required for construction 1"))?,
            args.n,
        ),
        2 => construction2(
            &fam,
            s,
            args.k.ok_or_else(|| usage("--k is required for construction 2"))?,
            args.n,
        ),
        3 => construction3(
            &fam,
            s,
            args.c.ok_or_else(|| usage("--c is required for construction 3"))?,
            args.n,
        ),
        other => return Err(usage(format!("unknown construction {other}; known: 1, 2, 3"))),
    }
    .map_err(lift)?;
    print_design(&design, construction, &args.fmt);
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let cfg = verify::VerifyConfig {
        max_m: args.max_m,
        max_r: args.max_r,
        max_s: args.max_s,
        max_lambda: args.max_lambda,
        curves: args.curves,
        seed: args.seed,
        inject_fault: args.inject_fault,
    };
    if cfg.max_m < 2 || cfg.max_r < 1 {
        return Err(usage("need --max-m >= 2 and --max-r >= 1"));
    }
    let outcome = verify::run(&cfg);
    for line in &outcome.lines {
        println!("{line}");
    }
    for mismatch in &outcome.mismatches {
        println!("{mismatch}");
    }
    if outcome.passed() {
        println!("result: PASS");
        Ok(())
    } else {
        println!("result: FAIL");
        Err(Failure {
            code: EXIT_MISMATCH,
            tag: "E_VERIFY",
            msg: outcome.mismatches[0].clone(),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gaps(args) => cmd_gaps(args),
        Command::Puregaps(args) => cmd_puregaps(args),
        Command::Codes(args) => cmd_codes(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error[{}]: {}", failure.tag, failure.msg);
            ExitCode::from(failure.code)
        }
    }
}
