//! `kleinian`: verify compression-body structures, compute cusp shapes and
//! slope censuses, hunt pinched words, model belted sums, and render
//! fundamental-region figures. JSON goes to stdout, diagnostics to stderr;
//! exit 0 on success/verified, 2 on checked-and-rejected, 1 on bad input.

mod config;
mod cplx;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use kleinian_core::limitset::RenderStyle;
use kleinian_core::{
    build_rep, cusp_shape, enumerate_pinched, figure_packing, max_pinched_example, pinch_report,
    render_svg_to_path, short_slopes, teich_distance, verify_structure, CompressionBodyRep,
    FlatTorus, GeneratorRep, GroupWord, TorusShape,
};

use config::Config;
use cplx::parse_complex;

#[derive(Parser)]
#[command(
    name = "kleinian",
    version,
    about = "Hyperbolic structures on (1;n+1)-compression bodies: verification, cusp shapes, slopes, pinched words, figures"
)]
struct Cli {
    /// Config file with one [section] per subcommand; flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the isometric-sphere disjointness hypotheses; print the
    /// certificate. Exit 0 when verified, 2 when rejected.
    Verify {
        /// Number of 1-handles.
        #[arg(long)]
        n: Option<usize>,
        /// Cusp translation a (complex literal, e.g. 5 or -1+1.7320508i).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Cusp translation b.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Margin tolerance.
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
    },
    /// Cusp shape of the lattice (a, b), optionally with the distance to a
    /// target modulus.
    Shape {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Target modulus in the upper half-plane.
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
    /// Census of primitive slopes of bounded length on the flat torus
    /// spanned by u and v.
    Slopes {
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Length bound.
        #[arg(long = "L", allow_hyphen_values = true)]
        max_len: Option<f64>,
    },
    /// Render a fundamental-region figure to SVG.
    Render {
        #[command(flatten)]
        rep: RepSpec,
        /// Orbit word-length budget.
        #[arg(long)]
        max_len: Option<usize>,
        /// Add the dual circle of each tangency triangle.
        #[arg(long)]
        dual: bool,
        /// Output SVG path.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        stroke_width: Option<f64>,
        #[arg(long)]
        circle_color: Option<String>,
        #[arg(long)]
        domain_color: Option<String>,
    },
    /// Trace reports for given words, or exhaustive pinched-word
    /// enumeration.
    Pinch {
        #[command(flatten)]
        rep: RepSpec,
        /// A word over "a A b B g1 G1 ..." (repeatable).
        #[arg(long = "word", allow_hyphen_values = true)]
        words: Vec<String>,
        /// Enumerate all pinched words up to this letter length.
        #[arg(long, value_name = "MAX_LEN", conflicts_with = "words")]
        enumerate: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
    },
    /// Belted-sum cusp bookkeeping for the augmented (2n+1)-chain link.
    Beltsum {
        /// Number of belted-sum stages (n = 1 is the 3-chain link).
        #[arg(long)]
        n: Option<usize>,
        /// Meridian length contributed by the 3-chain augmentation cusp.
        #[arg(long, allow_hyphen_values = true)]
        m3: Option<f64>,
        /// Meridian length contributed by each 2-chain augmentation cusp.
        #[arg(long, allow_hyphen_values = true)]
        m2: Option<f64>,
    },
}

#[derive(Args)]
struct RepSpec {
    /// Built-in representation (`max-pinched`).
    #[arg(long, conflicts_with_all = ["n", "a", "b"])]
    example: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn init_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("KLEINIAN_THREADS") {
        let threads: usize = raw
            .parse()
            .with_context(|| format!("KLEINIAN_THREADS must be a positive integer, got '{raw}'"))?;
        if threads == 0 {
            bail!("KLEINIAN_THREADS must be positive");
        }
        // A second initialization (e.g. in tests) is harmless.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(())
}

/// Flag value if given, else the config entry for (section, key).
fn merged<'a>(flag: &'a Option<String>, cfg: &'a Config, section: &str, key: &str) -> Option<&'a str> {
    flag.as_deref().or_else(|| cfg.get(section, key))
}

fn required<'a>(
    flag: &'a Option<String>,
    cfg: &'a Config,
    section: &str,
    key: &str,
) -> Result<&'a str> {
    merged(flag, cfg, section, key)
        .with_context(|| format!("missing --{key} (or [{section}] {key} in the config file)"))
}

fn merged_parse<T: std::str::FromStr>(
    flag: Option<T>,
    cfg: &Config,
    section: &str,
    key: &str,
) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    if flag.is_some() {
        return Ok(flag);
    }
    match cfg.get(section, key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|e| anyhow::anyhow!("config [{section}] {key} = '{raw}': {e}")),
    }
}

fn complex_arg(flag: &Option<String>, cfg: &Config, section: &str, key: &str) -> Result<Complex64> {
    parse_complex(required(flag, cfg, section, key)?)
}

fn resolve_rep(spec: &RepSpec, cfg: &Config, section: &str) -> Result<CompressionBodyRep> {
    if let Some(name) = merged(&spec.example, cfg, section, "example") {
        return match name {
            "max-pinched" => Ok(max_pinched_example()),
            other => bail!("unknown example '{other}' (available: max-pinched)"),
        };
    }
    let n = merged_parse(spec.n, cfg, section, "n")?
        .with_context(|| format!("missing --n (or --example) for {section}"))?;
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let a = complex_arg(&spec.a, cfg, section, "a")?;
    let b = complex_arg(&spec.b, cfg, section, "b")?;
    build_rep(n, a, b).map_err(Into::into)
}

#[derive(Serialize)]
struct ShapeOut {
    tau: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<f64>,
}

#[derive(Serialize)]
struct RenderOut {
    path: String,
    circles: usize,
    duals: usize,
}

#[derive(Serialize)]
struct BeltsumOut {
    n: usize,
    shape: TauOut,
    meridian: f64,
}

#[derive(Serialize)]
struct TauOut {
    tau: [f64; 2],
}

fn run(cli: Cli) -> Result<u8> {
    init_threads()?;
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };

    match cli.command {
        Command::Verify { n, a, b, tol } => {
            let n = merged_parse(n, &cfg, "verify", "n")?.context("missing --n")?;
            if n == 0 {
                bail!("--n must be at least 1");
            }
            let a = complex_arg(&a, &cfg, "verify", "a")?;
            let b = complex_arg(&b, &cfg, "verify", "b")?;
            let tol = merged_parse(tol, &cfg, "verify", "tol")?.unwrap_or(1e-9);
            if tol < 0.0 {
                bail!("--tol must be nonnegative");
            }
            let rep = build_rep(n, a, b)?;
            let cert = verify_structure(&rep, tol);
            println!("{}", cert.to_json());
            Ok(if cert.is_verified() { 0 } else { 2 })
        }
        Command::Shape { a, b, target } => {
            let a = complex_arg(&a, &cfg, "shape", "a")?;
            let b = complex_arg(&b, &cfg, "shape", "b")?;
            let shape = cusp_shape(a, b)?;
            let distance = match merged(&target, &cfg, "shape", "target") {
                Some(raw) => {
                    let tau = parse_complex(raw)?;
                    let target_shape = TorusShape::new(tau)
                        .map_err(|e| anyhow::anyhow!("--target: {e}"))?;
                    Some(teich_distance(&shape, &target_shape))
                }
                None => None,
            };
            let out = ShapeOut {
                tau: [shape.tau().re, shape.tau().im],
                distance,
            };
            println!("{}", serde_json::to_string(&out)?);
            Ok(0)
        }
        Command::Slopes { u, v, max_len } => {
            let u = complex_arg(&u, &cfg, "slopes", "u")?;
            let v = complex_arg(&v, &cfg, "slopes", "v")?;
            let max_len = merged_parse(max_len, &cfg, "slopes", "L")?.context("missing --L")?;
            if max_len < 0.0 {
                bail!("--L must be nonnegative");
            }
            let torus = FlatTorus::new(u, v)?;
            let census = short_slopes(&torus, max_len);
            println!("{}", serde_json::to_string(&census)?);
            Ok(0)
        }
        Command::Render {
            rep,
            max_len,
            dual,
            out,
            stroke_width,
            circle_color,
            domain_color,
        } => {
            let body = resolve_rep(&rep, &cfg, "render")?;
            let max_len = merged_parse(max_len, &cfg, "render", "max-len")?.unwrap_or(1);
            let dual = dual
                || matches!(cfg.get("render", "dual"), Some("true") | Some("1") | Some("yes"));
            let out_path = match out {
                Some(p) => p,
                None => PathBuf::from(
                    cfg.get("render", "out")
                        .context("missing --out (-o) output path")?,
                ),
            };
            let mut style = RenderStyle::default();
            if let Some(w) = merged_parse(stroke_width, &cfg, "render", "stroke-width")? {
                if w <= 0.0 {
                    bail!("--stroke-width must be positive");
                }
                style.stroke_width = w;
            }
            if let Some(c) = merged(&circle_color, &cfg, "render", "circle-color") {
                style.circle_color = c.to_string();
            }
            if let Some(c) = merged(&domain_color, &cfg, "render", "domain-color") {
                style.domain_color = c.to_string();
            }
            let figure = figure_packing(&body, max_len, dual)?;
            render_svg_to_path(&figure.packing, Some(&figure.domain), &style, &out_path)?;
            eprintln!("wrote {}", out_path.display());
            let summary = RenderOut {
                path: out_path.display().to_string(),
                circles: figure.packing.circles().len(),
                duals: figure.packing.circles().len() - figure.orbit_count,
            };
            println!("{}", serde_json::to_string(&summary)?);
            Ok(0)
        }
        Command::Pinch {
            rep,
            words,
            enumerate,
            tol,
        } => {
            let body = resolve_rep(&rep, &cfg, "pinch")?;
            let gens: GeneratorRep = (&body).into();
            let tol = merged_parse(tol, &cfg, "pinch", "tol")?.unwrap_or(1e-9);
            let enumerate = merged_parse(enumerate, &cfg, "pinch", "enumerate")?;
            let mut word_list: Vec<String> = words;
            if word_list.is_empty() {
                if let Some(raw) = cfg.get("pinch", "word") {
                    word_list = raw.split(';').map(|w| w.trim().to_string()).collect();
                }
            }
            let reports = match (word_list.is_empty(), enumerate) {
                (false, None) => {
                    let mut out = Vec::new();
                    for raw in &word_list {
                        let word: GroupWord = raw.parse()?;
                        out.push(pinch_report(&gens, &word, tol)?);
                    }
                    out
                }
                (true, Some(max_len)) => enumerate_pinched(&gens, max_len, tol)?,
                (true, None) => bail!("need --word or --enumerate"),
                (false, Some(_)) => bail!("--word and --enumerate are mutually exclusive"),
            };
            println!("{}", serde_json::to_string(&reports)?);
            Ok(0)
        }
        Command::Beltsum { n, m3, m2 } => {
            let n = merged_parse(n, &cfg, "beltsum", "n")?.context("missing --n")?;
            if n == 0 {
                bail!("--n must be at least 1");
            }
            let m3 = merged_parse(m3, &cfg, "beltsum", "m3")?.unwrap_or(1.0);
            let m2 = merged_parse(m2, &cfg, "beltsum", "m2")?.unwrap_or(1.0);
            if m3 <= 0.0 || m2 <= 0.0 {
                bail!("meridian lengths must be positive");
            }
            let shape = kleinian_core::chain_cusp_shape(n);
            let out = BeltsumOut {
                n,
                shape: TauOut {
                    tau: [shape.tau().re, shape.tau().im],
                },
                meridian: kleinian_core::augmentation_meridian(n, m3, m2),
            };
            println!("{}", serde_json::to_string(&out)?);
            Ok(0)
        }
    }
}
