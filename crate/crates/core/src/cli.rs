// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: `inscribe`, `trace` and `verify`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use log::{error, info};

use crate::approx::{inscribe_limit, ApproximationSchedule};
use crate::error::{Error, Result};
use crate::io::{load_curve, load_quad, svg_overlay, trace_csv, Layer, ResultFile, Target};
use crate::quad::Vertex;
use crate::solver::{trace_locus, InscriptionResult, SolverConfig, Status, MIN_TRACE_SAMPLES};
use crate::verify::{run_suite, Suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "quadpeg", version, about = "Inscribe cyclic quadrilaterals in convex curves")]
pub struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Find a similar copy of a quadrilateral with all vertices on a curve.
    Inscribe(InscribeArgs),
    /// Write the locus of the free vertex as CSV.
    Trace(TraceArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct Inputs {
    /// Curve spec (JSON file) or preset: circle:R, ellipse:A,B, unit-square, figure1-triangle.
    #[arg(long)]
    pub curve: String,
    /// Quadrilateral spec (JSON file) or preset: square, rectangle:ASPECT, kite-figure1.
    #[arg(long)]
    pub quad: String,
    /// Free vertex: a, b, c, d or auto.
    #[arg(long, default_value = "auto")]
    pub free: String,
}

impl Inputs {
    fn free_vertex(&self) -> Result<Option<Vertex>> {
        match self.free.as_str() {
            "auto" => Ok(None),
            s => s.parse().map(Some).map_err(|_| Error::spec("free", format!("expected a, b, c, d or auto, got {s:?}"))),
        }
    }
}

#[derive(Args, Debug)]
pub struct InscribeArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Rotation samples per free vertex.
    #[arg(long, default_value_t = 720)]
    pub samples: usize,
    /// Acceptance tolerance relative to the diameter.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Seed for perturbation retries.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Result JSON path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// SVG of the curve and the inscribed quadrilateral.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Rotation samples.
    #[arg(long, default_value_t = 720)]
    pub samples: usize,
    /// CSV path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// SVG of the curve and the locus.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// area-identity, lemma4, oracle-agreement or figure1.
    pub suite: String,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Locus samples for area-identity.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Report JSON path (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Run the inscription and return the result with its exit code.
pub fn cmd_inscribe(args: &InscribeArgs) -> Result<(ResultFile, i32)> {
    let target = load_curve(&args.inputs.curve)?;
    let quad = load_quad(&args.inputs.quad)?;
    if args.samples < MIN_TRACE_SAMPLES {
        return Err(Error::spec("samples", format!("need at least {MIN_TRACE_SAMPLES}, got {}", args.samples)));
    }
    if !(args.tol > 0.0) {
        return Err(Error::spec("tol", "must be positive"));
    }
    let cfg = SolverConfig {
        grid: args.samples,
        accept_tol: args.tol,
        perturbation_seed: args.seed,
        free: args.inputs.free_vertex()?,
        ..SolverConfig::default()
    };
    let result: InscriptionResult = match &target {
        Target::Curve(curve) => crate::solver::inscribe_with(curve, &quad, &cfg)?,
        Target::Polygon(poly) => {
            let sched = ApproximationSchedule::for_diameter(poly.diameter());
            inscribe_limit(poly, &quad, &sched, &cfg)?.result
        }
    };
    let file = ResultFile::from(&result);
    emit(args.out.as_ref(), &file.to_json())?;
    if let Some(svg) = &args.svg {
        let outline = target.outline();
        let mut layers = vec![Layer { points: &outline, closed: true, color: "black" }];
        let verts = file.vertices;
        if let Some(v) = verts.as_ref() {
            layers.push(Layer { points: v, closed: true, color: "crimson" });
        }
        std::fs::write(svg, svg_overlay(&layers))?;
    }
    let code = if result.status == Status::Found { EXIT_OK } else { EXIT_NOT_FOUND };
    info!("inscribe finished with status {:?}", result.status);
    Ok((file, code))
}

pub fn cmd_trace(args: &TraceArgs) -> Result<()> {
    let Target::Curve(curve) = load_curve(&args.inputs.curve)? else {
        return Err(Error::spec("curve", "tracing needs a smooth curve; polygons have no locus"));
    };
    let quad = load_quad(&args.inputs.quad)?;
    let free = args.inputs.free_vertex()?.unwrap_or(quad.free_vertex_order()[0]);
    let trace = trace_locus(&curve, &quad, free, args.samples)?;
    emit(args.out.as_ref(), &trace_csv(&trace))?;
    if let Some(svg) = &args.svg {
        let outline = curve.sample_by_normal(720);
        let locus = trace.free_points();
        let layers = [
            Layer { points: &outline, closed: true, color: "black" },
            Layer { points: &locus, closed: true, color: "royalblue" },
        ];
        std::fs::write(svg, svg_overlay(&layers))?;
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let suite: Suite = args.suite.parse()?;
    let mut opts = SuiteOptions::new(args.seed);
    if let Some(n) = args.samples {
        opts.samples = n;
    }
    let report = run_suite(suite, &opts)?;
    let text = serde_json::to_string_pretty(&report)? + "\n";
    emit(args.out.as_ref(), &text)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_NOT_FOUND })
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            error!("could not configure {k} threads: {e}");
        }
    }
    let outcome = match &cli.command {
        Command::Inscribe(a) => cmd_inscribe(a).map(|(_, code)| code),
        Command::Trace(a) => cmd_trace(a).map(|_| EXIT_OK),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

/// Initialize logging from `PEG_LOG` (error, info or debug).
pub fn init_logging() {
    let env = env_logger::Env::new().filter_or("PEG_LOG", "error");
    let _ = env_logger::Builder::from_env(env).format_timestamp(None).try_init();
}
