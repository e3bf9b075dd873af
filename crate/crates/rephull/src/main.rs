//! Command-line surface: closed-form extremal points, the convexity check,
//! SVG cloud renderings, and the seeded verification suites.
//!
//! Exit codes: 0 success (and "convex" for check-convex), 1 verification
//! failure, 2 invalid configuration or I/O error, 3 "not convex".

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rephull::render::{csv_table, fmt_sig, svg_scene, Json};
use rephull::verify;
use rephull::{
    closed_form_vertices, cloud, convexity_report, lambda_hull, Alphabet, Base, Point, Tolerance,
};

#[derive(Parser)]
#[command(
    name = "rephull",
    version,
    about = "Convex hulls of numbers representable in a complex base p·e^(2πi/n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BaseArgs {
    /// Rotation order n of the base q = p·e^(2πi/n)
    #[arg(long)]
    n: u32,
    /// Modulus p > 1; accepts a plain number or the literal form "2^(1/n)"
    /// (with n the --n value) or "2^(1/K)" for integer K
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Comma-separated strictly increasing real digits, e.g. "0,1"
    #[arg(long, default_value = "0,1", allow_hyphen_values = true)]
    alphabet: String,
    /// Comparison tolerance (both angular and relative coordinate)
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for any randomized grid
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the extremal points of the representable-set hull with their
    /// generating digit words
    Extremals {
        #[command(flatten)]
        base: BaseArgs,
        /// Output format: json or csv
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Evaluate the gap criterion for convexity of the representable set
    CheckConvex {
        #[command(flatten)]
        base: BaseArgs,
    },
    /// Render the depth-d cloud and the hull overlay as SVG
    Render {
        #[command(flatten)]
        base: BaseArgs,
        /// Expansion depth
        #[arg(long, default_value_t = 14)]
        depth: u32,
        /// Output format; only svg is supported
        #[arg(long, default_value = "svg")]
        format: String,
    },
    /// Run the seeded verification suites
    Verify {
        /// Seed for the randomized grids
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comparison tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

struct Config {
    base: Base,
    alphabet: Alphabet,
    tol: Tolerance,
    out: Option<String>,
}

fn parse_modulus(text: &str, n: u32) -> Result<f64, String> {
    let t = text.trim();
    if t == "2^(1/n)" {
        return Ok((std::f64::consts::LN_2 / n as f64).exp());
    }
    if let Some(rest) = t.strip_prefix("2^(1/") {
        if let Some(k) = rest.strip_suffix(')') {
            let k: u32 = k
                .parse()
                .map_err(|_| format!("bad exponent denominator in {t:?}"))?;
            if k == 0 {
                return Err("exponent denominator must be positive".into());
            }
            return Ok((std::f64::consts::LN_2 / k as f64).exp());
        }
    }
    t.parse::<f64>()
        .map_err(|_| format!("cannot parse modulus {t:?}"))
}

fn parse_config(args: &BaseArgs) -> Result<Config, String> {
    let p = parse_modulus(&args.p, args.n)?;
    let base = Base::new(args.n, p).map_err(|e| e.to_string())?;
    let digits: Result<Vec<f64>, _> = args
        .alphabet
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect();
    let digits = digits.map_err(|_| format!("cannot parse alphabet {:?}", args.alphabet))?;
    let alphabet = Alphabet::new(digits).map_err(|e| e.to_string())?;
    let tol = Tolerance::new(args.tol, args.tol).map_err(|e| e.to_string())?;
    Ok(Config {
        base,
        alphabet,
        tol,
        out: args.out.clone(),
    })
}

fn emit(out: &Option<String>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, content).map_err(|e| format!("cannot write {path}: {e}"))
        }
        None => std::io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

/// The hull vertices with word tags: every family contributes its high word,
/// and for odd n also its low word (for even n the two coincide).
fn tagged_vertices(cfg: &Config) -> Vec<(Point, String, &'static str, u32)> {
    let base = &cfg.base;
    let n = base.n();
    let denom = base.p_pow_n() - 1.0;
    let (scale, shift) = if cfg.alphabet.len() == 1 {
        (0.0, lambda_hull(base, &cfg.alphabet).vertices()[0])
    } else {
        let scale = (cfg.alphabet.max() - cfg.alphabet.min()) / denom;
        let geo = (0..n).fold(Point::ZERO, |acc, k| acc + base.q_pow(k));
        (scale, geo.scale(cfg.alphabet.min() / denom))
    };
    let mut rows = Vec::new();
    for f in closed_form_vertices(base) {
        if n % 2 == 1 {
            rows.push((
                f.low_vertex.scale(scale) + shift,
                f.low_word.to_string(),
                "low",
                f.h,
            ));
        }
        rows.push((
            f.high_vertex.scale(scale) + shift,
            f.high_word.to_string(),
            "high",
            f.h,
        ));
    }
    rows
}

fn cmd_extremals(cfg: &Config, format: &str) -> Result<(), String> {
    let rows = tagged_vertices(cfg);
    match format {
        "json" => {
            let vertices: Vec<Json> = rows
                .iter()
                .map(|(v, word, family, h)| {
                    Json::Obj(vec![
                        ("re", Json::Num(v.re)),
                        ("im", Json::Num(v.im)),
                        ("word", Json::Str(word.clone())),
                        ("shift", Json::Int(*h as i64)),
                        ("family", Json::Str(family.to_string())),
                        ("method", Json::Str("closed_form".into())),
                    ])
                })
                .collect();
            let doc = Json::Obj(vec![
                ("n", Json::Int(cfg.base.n() as i64)),
                ("p", Json::Num(cfg.base.p())),
                (
                    "alphabet",
                    Json::Arr(
                        cfg.alphabet
                            .digits()
                            .iter()
                            .map(|&d| Json::Num(d))
                            .collect(),
                    ),
                ),
                ("vertices", Json::Arr(vertices)),
            ]);
            emit(&cfg.out, &(doc.render() + "\n"))
        }
        "csv" => {
            let table: Vec<(Point, String, &str)> = rows
                .into_iter()
                .map(|(v, word, _, _)| (v, word, "vertex"))
                .collect();
            emit(&cfg.out, &csv_table(&table))
        }
        other => Err(format!(
            "unsupported format {other:?} (expected json or csv)"
        )),
    }
}

fn cmd_check_convex(cfg: &Config) -> Result<bool, String> {
    if cfg.alphabet.len() < 2 {
        return Err("the convexity check needs at least two digits".into());
    }
    let report = convexity_report(&cfg.base, &cfg.alphabet);
    let doc = Json::Obj(vec![
        ("is_convex", Json::Bool(report.is_convex)),
        ("max_gap", Json::Num(report.max_gap)),
        ("threshold", Json::Num(report.threshold)),
        (
            "witness_gap_index",
            report
                .witness_gap_index
                .map_or(Json::Null, |i| Json::Int(i as i64)),
        ),
    ]);
    emit(&cfg.out, &(doc.render() + "\n"))?;
    Ok(report.is_convex)
}

fn cmd_render(cfg: &Config, depth: u32, format: &str) -> Result<(), String> {
    if format != "svg" {
        return Err(format!(
            "unsupported render format {format:?} (expected svg)"
        ));
    }
    let c = cloud(&cfg.base, &cfg.alphabet, depth, false, &cfg.tol).map_err(|e| e.to_string())?;
    let hull = lambda_hull(&cfg.base, &cfg.alphabet);
    let digit_list: Vec<String> = cfg.alphabet.digits().iter().map(|&d| fmt_sig(d)).collect();
    let title = format!(
        "n={} p={} A={{{}}} depth={}",
        cfg.base.n(),
        fmt_sig(cfg.base.p()),
        digit_list.join(","),
        depth
    );
    emit(&cfg.out, &svg_scene(&c.points, &hull, &cfg.tol, &title))
}

fn cmd_verify(seed: u64, tol: f64) -> Result<bool, String> {
    let tol = Tolerance::new(tol, tol).map_err(|e| e.to_string())?;
    let outcomes = verify::run_all(seed, &tol);
    let mut all_pass = true;
    for o in &outcomes {
        println!("{}", o.summary());
        all_pass &= o.passed;
    }
    Ok(all_pass)
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Extremals { base, format } => {
            let cfg = parse_config(&base)?;
            cmd_extremals(&cfg, &format)?;
            Ok(0)
        }
        Command::CheckConvex { base } => {
            let cfg = parse_config(&base)?;
            Ok(if cmd_check_convex(&cfg)? { 0 } else { 3 })
        }
        Command::Render {
            base,
            depth,
            format,
        } => {
            let cfg = parse_config(&base)?;
            cmd_render(&cfg, depth, &format)?;
            Ok(0)
        }
        Command::Verify { seed, tol } => Ok(if cmd_verify(seed, tol)? { 0 } else { 1 }),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
