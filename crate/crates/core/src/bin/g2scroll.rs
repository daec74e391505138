use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use genus2_scrolls::instance::{build_instance, Instance, InstanceSpec};
use genus2_scrolls::scroll::{cone_instance, scroll_type, Ruling};
use genus2_scrolls::series::{embed_eff, rr_space_eff};
use genus2_scrolls::suite::{parse_range, run_suite, write_csv, CsvRow, SuiteConfig};
use genus2_scrolls::verify::{canonical_series, classify_s, classify_v, trisecant_scan, verify_timed};
use genus2_scrolls::{Curve, Error};

#[derive(Parser)]
#[command(name = "g2scroll", version, about = "Scrolls of genus-2 curves and the quadric ideal identity I_S + I_V = I_C")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Types of the g12- and g13-scrolls.
    ScrollType(InstanceArgs),
    /// Predicted vs computed scroll types.
    Classify(InstanceArgs),
    /// Check I_S + I_V = I_C in degree 2.
    Verify(InstanceArgs),
    /// Count collinear triples among random points of the curve.
    Trisecant {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Run a grid of seeded instances.
    Suite(SuiteArgs),
    /// A g13-scroll that is a cone over a g12-scroll of type (e1, e2).
    Cone {
        #[arg(long)]
        e1: i64,
        #[arg(long)]
        e2: i64,
        #[arg(long, default_value_t = 10007)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args)]
struct InstanceArgs {
    /// JSON instance file; flags given explicitly override its fields.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long)]
    p: Option<u64>,
    /// Coefficients c0,...,c5 of f.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    f: Option<Vec<i64>>,
    #[arg(long)]
    d: Option<usize>,
    /// Divisor expression for H, e.g. "3*K + inf".
    #[arg(long)]
    hc: Option<String>,
    /// Divisor expression for D, or "random".
    #[arg(long)]
    dd: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Reject an explicit D whose scroll contains the g12-scroll.
    #[arg(long)]
    require_admissible: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Zero out timings for byte-reproducible output.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct SuiteArgs {
    /// Degrees, e.g. 6..10 or 6,8,10.
    #[arg(long, default_value = "6..10")]
    d: String,
    #[arg(long, default_value = "0..4")]
    seeds: String,
    #[arg(long, default_value = "10007,7919")]
    p: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    no_timing: bool,
}

enum Failure {
    Mismatch,
    Input(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() || e == Error::PreconditionViolated {
            Failure::Input(e.to_string())
        } else {
            Failure::Other(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn spec_from(args: &InstanceArgs) -> Result<InstanceSpec, Failure> {
    let mut spec = match &args.instance {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        None => {
            let d = args.d.ok_or_else(|| Failure::Input("--d is required without --instance".into()))?;
            InstanceSpec::new(10007, d, 0)
        }
    };
    if let Some(p) = args.p {
        spec.p = p;
    }
    if let Some(f) = &args.f {
        if f.len() != 6 {
            return Err(Failure::Input(format!("--f needs 6 coefficients, got {}", f.len())));
        }
        spec.f = f.clone();
    }
    if let Some(d) = args.d {
        spec.d = d;
    }
    if let Some(h) = &args.hc {
        spec.h = Some(h.clone());
    }
    if let Some(dd) = &args.dd {
        spec.d_expr = dd.clone();
    }
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    spec.require_admissible |= args.require_admissible;
    Ok(spec)
}

fn load(args: &InstanceArgs) -> Result<(Instance, f64), Failure> {
    let spec = spec_from(args)?;
    let start = Instant::now();
    let inst = build_instance(&spec)?;
    let ms = if args.no_timing { 0.0 } else { start.elapsed().as_secs_f64() * 1e3 };
    Ok((inst, ms))
}

fn print_json(v: &serde_json::Value) {
    use io::Write;
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    // a closed pipe (e.g. `| head`) is not an error
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::ScrollType(args) => {
            let (inst, _) = load(&args)?;
            let k = canonical_series(&inst.curve)?;
            print_json(&json!({
                "spec": inst.resolved_spec(),
                "stype_S": scroll_type(&inst.emb, &k),
                "stype_V": scroll_type(&inst.emb, &inst.pencil),
                "contains": inst.contains_s(),
            }));
            Ok(())
        }
        Cmd::Classify(args) => {
            let (inst, _) = load(&args)?;
            let s = classify_s(&inst);
            let v = classify_v(&inst)?;
            let ok = s.matched && v.matched;
            print_json(&json!({ "spec": inst.resolved_spec(), "S": s, "V": v }));
            if ok { Ok(()) } else { Err(Failure::Mismatch) }
        }
        Cmd::Verify(args) => {
            let (inst, build_ms) = load(&args)?;
            let mut report = verify_timed(&inst, build_ms)?;
            if args.no_timing {
                report.timings = Default::default();
            }
            match args.format {
                Format::Json => print_json(&serde_json::to_value(&report).expect("report serializes")),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(io::stdout());
                    let row = CsvRow {
                        p: report.spec.p,
                        d: report.spec.d,
                        seed: report.spec.seed,
                        stype_s: report.stype_s.to_string(),
                        stype_v: report.stype_v.to_string(),
                        q_s: Some(report.dims.q_s),
                        q_v: Some(report.dims.q_v),
                        q_overlap: Some(report.dims.q_overlap),
                        q_c: Some(report.dims.q_c),
                        q_sum: Some(report.dims.q_sum),
                        holds: report.theorem_holds,
                        ms: format!("{:.1}", report.timings.total_ms()),
                    };
                    w.serialize(row).map_err(|e| Failure::Other(e.to_string()))?;
                    w.flush()?;
                }
            }
            if report.theorem_holds { Ok(()) } else { Err(Failure::Mismatch) }
        }
        Cmd::Trisecant { inst: args, trials } => {
            if trials == 0 {
                return Err(Failure::Input("--trials must be at least 1".into()));
            }
            let (inst, _) = load(&args)?;
            let mut rng = inst.spec.rng(2);
            let violations = trisecant_scan(&inst, trials, &mut rng)?;
            print_json(&json!({ "spec": inst.resolved_spec(), "trials": trials, "collinear": violations }));
            if violations == 0 { Ok(()) } else { Err(Failure::Mismatch) }
        }
        Cmd::Suite(args) => {
            let to_usize = |v: Vec<u64>| v.into_iter().map(|x| x as usize).collect();
            let cfg = SuiteConfig {
                degrees: to_usize(parse_range(&args.d)?),
                seeds: parse_range(&args.seeds)?,
                primes: parse_range(&args.p)?,
                no_timing: args.no_timing,
            };
            let cells = run_suite(&cfg)?;
            for c in cells.iter().filter(|c| c.error.is_some()) {
                eprintln!("p={} d={} seed={}: {}", c.p, c.d, c.seed, c.error.as_deref().unwrap_or(""));
            }
            match args.format {
                Format::Csv => write_csv(&cells, io::stdout())?,
                Format::Json => print_json(&serde_json::to_value(&cells).expect("cells serialize")),
            }
            if cells.iter().any(|c| c.input_error) {
                Err(Failure::Input("some cells had invalid input".into()))
            } else if cells.iter().all(|c| c.pass()) {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Cmd::Cone { e1, e2, p, seed } => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let curve = Curve::default_for(p)?;
            let ci = cone_instance(&curve, e1, e2, &mut rng)?;
            let emb = embed_eff(&curve, &ci.h)?;
            let pencil = rr_space_eff(&curve, &ci.d);
            let stype = scroll_type(&emb, &pencil);
            let geometric = Ruling::new(&emb, &pencil)?.geometric_type(&mut rng)?;
            let expected = genus2_scrolls::scroll::ScrollType::new(vec![e1, e2, 0]);
            let ok = stype == expected && geometric == expected;
            print_json(&json!({
                "p": p,
                "d": ci.h.degree(),
                "vertex": ci.p.to_string(),
                "stype_V": stype,
                "geometric": geometric,
                "match": ok,
            }));
            if ok { Ok(()) } else { Err(Failure::Mismatch) }
        }
    }
}
