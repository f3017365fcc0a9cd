mod parse;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rsk_core::scan::{run_scan, ClassChoice, ScanSpec};
use rsk_core::{
    certify_big_anticanonical, growth_classify_with, h0_class_interval, min_destabilizing_e,
    volume, BlowupScenario, Curve, GrowthMode, NumClass, RuledSurface, SplitBundle,
};

// Aliases keep clap from treating a parsed list as repeated occurrences.
type IntList<T> = Vec<T>;
type RangeList = Vec<std::ops::RangeInclusive<i64>>;

#[derive(Parser)]
#[command(
    name = "rsk",
    version,
    about = "Bigness, nefness and volumes on projective bundles over curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Slope data and big/nef/pseudoeffective verdicts for one class (default -K).
    Classify(ClassifyArgs),
    /// Compare the slope criterion with the section-counting oracle over a grid.
    Scan(ScanArgs),
    /// Certify bigness of -K after the blow-ups described in a scenario file.
    Blowup(BlowupArgs),
    /// Section-count bounds for m·class, and optionally the growth verdict.
    H0(H0Args),
    /// Frobenius pull-back and the least destabilizing exponent.
    Frobenius(FrobeniusArgs),
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long)]
    genus: u32,
    #[arg(long = "char", default_value_t = 0)]
    characteristic: u64,
    /// Comma separated summand degrees, e.g. 3,0
    #[arg(long, allow_hyphen_values = true, value_parser = parse::int_list::<i64>)]
    degrees: IntList<i64>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Class a,b meaning a·ξ + b·f
    #[arg(long, allow_hyphen_values = true, value_parser = parse::class)]
    class: Option<NumClass>,
}

#[derive(Args)]
struct ScanArgs {
    /// Genus range, e.g. 1..3
    #[arg(long, value_parser = parse::range::<u32>)]
    genus: std::ops::RangeInclusive<u32>,
    /// Characteristics, e.g. 0,2,3
    #[arg(long = "char", default_value = "0", value_parser = parse::int_list::<u64>)]
    characteristics: IntList<u64>,
    /// One range per summand, e.g. -3..6,-3..6
    #[arg(long, allow_hyphen_values = true, value_parser = parse::range_list::<i64>)]
    degrees: RangeList,
    /// Class ranges a,b, e.g. 0..3,-4..4; -K when omitted
    #[arg(long, allow_hyphen_values = true, value_parser = parse::range_list::<i64>)]
    class: Option<RangeList>,
    #[arg(long = "m-max", default_value_t = 32)]
    m_max: u64,
    /// Write the TSV table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BlowupArgs {
    scenario: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Volume,
    Ladder,
}

#[derive(Args)]
struct H0Args {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long, allow_hyphen_values = true, value_parser = parse::class)]
    class: Option<NumClass>,
    #[arg(long, default_value_t = 1)]
    m: i64,
    /// Also sample the doubling ladder up to this multiple and classify growth
    #[arg(long = "m-max")]
    m_max: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Volume)]
    mode: ModeArg,
}

#[derive(Args)]
struct FrobeniusArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    #[arg(long, default_value_t = 1)]
    e: u32,
}

enum Failure {
    Disagreement(String),
    Validation(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Disagreement(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Disagreement(m) | Failure::Validation(m) | Failure::Io(m) => m,
        }
    }
}

impl From<rsk_core::Error> for Failure {
    fn from(e: rsk_core::Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

fn build_surface(args: &SurfaceArgs) -> Result<RuledSurface, Failure> {
    let curve = Curve::new(args.genus, args.characteristic)?;
    let bundle = SplitBundle::new(args.degrees.clone())?;
    Ok(RuledSurface::new(curve, bundle)?)
}

fn class_label(surface: &RuledSurface, class: Option<NumClass>) -> (NumClass, String) {
    match class {
        Some(c) => (c, c.to_string()),
        None => {
            let c = surface.anticanonical_class();
            (c, format!("{c} (-K)"))
        }
    }
}

fn classify(args: &ClassifyArgs) -> Result<String, Failure> {
    let s = build_surface(&args.surface)?;
    let bundle = s.bundle();
    let hn = bundle.hn_data();
    let (class, label) = class_label(&s, args.class);
    let mut out = String::new();
    writeln!(out, "genus: {}", s.curve().genus()).unwrap();
    writeln!(out, "characteristic: {}", s.curve().characteristic()).unwrap();
    writeln!(out, "degrees: {bundle}").unwrap();
    writeln!(out, "rank: {}", bundle.rank()).unwrap();
    writeln!(out, "slope: {}", bundle.slope()).unwrap();
    writeln!(out, "hn_blocks: {hn}").unwrap();
    writeln!(out, "semistable: {}", hn.is_semistable()).unwrap();
    writeln!(out, "mu_max: {}", hn.mu_max()).unwrap();
    writeln!(out, "mu_min: {}", hn.mu_min()).unwrap();
    writeln!(out, "canonical_class: {}", s.canonical_class()).unwrap();
    writeln!(out, "class: {label}").unwrap();
    writeln!(out, "big: {}", s.big_test(class)).unwrap();
    writeln!(out, "pseudoeffective: {}", s.pseff_test(class)).unwrap();
    match s.nef_test(class) {
        Ok(nef) => writeln!(out, "nef: {nef}").unwrap(),
        Err(_) => writeln!(out, "nef: unsupported for rank {}", s.rank()).unwrap(),
    }
    writeln!(out, "volume: {}", volume(&s, class)).unwrap();
    if s.curve().characteristic() > 0 && s.rank() == 2 {
        let e = min_destabilizing_e(s.curve(), bundle)?;
        writeln!(out, "min_destabilizing_e: {}", fmt_min_e(e)).unwrap();
    }
    Ok(out)
}

fn fmt_min_e(e: Option<u32>) -> String {
    e.map_or_else(|| "none".to_string(), |e| e.to_string())
}

fn scan(args: &ScanArgs) -> Result<String, Failure> {
    let class = match &args.class {
        None => ClassChoice::Anticanonical,
        Some(ranges) => match ranges.as_slice() {
            [a, b] => ClassChoice::Grid {
                a: a.clone(),
                b: b.clone(),
            },
            _ => return Err(Failure::Validation("--class needs two ranges a,b".into())),
        },
    };
    let spec = ScanSpec {
        genus: args.genus.clone(),
        characteristics: args.characteristics.clone(),
        degree_ranges: args.degrees.clone(),
        class,
        m_max: args.m_max,
        out: args.out.clone(),
    };
    let table = run_scan(&spec)?;
    let tsv = table.to_tsv();
    let out = match &spec.out {
        Some(path) => {
            fs::write(path, &tsv).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            String::new()
        }
        None => tsv,
    };
    let bad = table.disagreements();
    if bad > 0 {
        if !out.is_empty() {
            print!("{out}");
        }
        return Err(Failure::Disagreement(format!(
            "{bad} of {} rows disagree with the oracle",
            table.rows.len()
        )));
    }
    Ok(out)
}

fn blowup(args: &BlowupArgs) -> Result<String, Failure> {
    let text = fs::read_to_string(&args.scenario)
        .map_err(|e| Failure::Io(format!("{}: {e}", args.scenario.display())))?;
    let scenario = BlowupScenario::from_json(&text)?;
    let cert = certify_big_anticanonical(&scenario)?;
    let w = &cert.witness;
    let n = scenario.steps().len();
    let mut out = String::new();
    writeln!(out, "base: {}", scenario.base()).unwrap();
    writeln!(out, "budget_class: {}", scenario.budget_class()).unwrap();
    writeln!(
        out,
        "steps: {n} ({} on strict transform)",
        n - w.off_budget_steps.len()
    )
    .unwrap();
    writeln!(
        out,
        "big_part: -K - D = {} big: {}",
        w.big_part, w.big_part_is_big
    )
    .unwrap();
    writeln!(out, "effective_part: {}", w.effective_part).unwrap();
    writeln!(out, "anticanonical: {}", w.anticanonical).unwrap();
    if !w.off_budget_steps.is_empty() {
        let steps: Vec<String> = w
            .off_budget_steps
            .iter()
            .map(|i| (i + 1).to_string())
            .collect();
        writeln!(out, "off_budget_steps: {}", steps.join(",")).unwrap();
    }
    let squares: Vec<String> = w.canonical_squares.iter().map(|k| k.to_string()).collect();
    writeln!(out, "k_squared: {}", squares.join(" ")).unwrap();
    writeln!(
        out,
        "result: {}",
        if cert.certified {
            "certified"
        } else {
            "not certified"
        }
    )
    .unwrap();
    Ok(out)
}

fn h0(args: &H0Args) -> Result<String, Failure> {
    let s = build_surface(&args.surface)?;
    let (class, label) = class_label(&s, args.class);
    if args.m <= 0 {
        return Err(Failure::Validation(format!(
            "--m must be positive, got {}",
            args.m
        )));
    }
    let mut out = String::new();
    writeln!(out, "class: {label}").unwrap();
    writeln!(out, "m: {}", args.m).unwrap();
    writeln!(out, "h0: {}", h0_class_interval(&s, class.scale(args.m))).unwrap();
    if let Some(m_max) = args.m_max {
        let mode = match args.mode {
            ModeArg::Volume => GrowthMode::Volume,
            ModeArg::Ladder => GrowthMode::Ladder,
        };
        let report = growth_classify_with(&s, class, m_max, mode)?;
        writeln!(out, "m\tlo\thi").unwrap();
        for (m, iv) in &report.samples {
            writeln!(out, "{m}\t{}\t{}", iv.lo, iv.hi).unwrap();
        }
        writeln!(out, "leading_coefficient: {}", report.leading_coefficient).unwrap();
        writeln!(out, "volume: {}", report.volume).unwrap();
        writeln!(out, "verdict: {}", report.verdict).unwrap();
    }
    Ok(out)
}

fn frobenius(args: &FrobeniusArgs) -> Result<String, Failure> {
    let s = build_surface(&args.surface)?;
    let curve = s.curve();
    let pulled = s.bundle().frobenius_pullback(curve, args.e)?;
    let mut out = String::new();
    writeln!(out, "e: {}", args.e).unwrap();
    writeln!(out, "pullback: {pulled}").unwrap();
    if s.rank() == 2 {
        writeln!(
            out,
            "min_destabilizing_e: {}",
            fmt_min_e(min_destabilizing_e(curve, s.bundle())?)
        )
        .unwrap();
    }
    Ok(out)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("RSK_THREADS") else {
        return Ok(());
    };
    let n: usize = value.trim().parse().map_err(|_| {
        Failure::Validation(format!(
            "RSK_THREADS must be a non-negative integer, got `{value}`"
        ))
    })?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Validation(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Classify(a) => classify(a),
        Command::Scan(a) => scan(a),
        Command::Blowup(a) => blowup(a),
        Command::H0(a) => h0(a),
        Command::Frobenius(a) => frobenius(a),
    });
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
