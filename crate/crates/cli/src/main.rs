use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use hexweb_core::geom::Point;
use hexweb_core::hexagon::Execution;
use hexweb_core::render::{render_svg, RenderSpec};
use hexweb_core::verify::{scan_experimental, verify, Problem, VerifyOptions};
use hexweb_core::webs::{catalog, preset, preset_keys, WebConfig};

/// Hexagonal 3-webs of circles: build, render and verify.
#[derive(Parser)]
#[command(name = "hexweb", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List catalog webs and presets.
    Catalog,
    /// Print a preset config.
    Preset {
        key: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a web as SVG.
    Render {
        /// Config file, or `preset:<key>`.
        config: String,
        #[arg(long)]
        out: PathBuf,
        /// Closure hexagon overlay: Ox,Oy,A1x,A1y.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_hexagon)]
        hexagon: Option<[f64; 4]>,
        /// Leaves per foliation.
        #[arg(long, default_value_t = 9)]
        leaves: usize,
        #[arg(long, default_value_t = 600)]
        pixels: u32,
    },
    /// Closure scan and chart check; exits nonzero when a check fails.
    Verify {
        config: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
    /// Defect statistics for an open problem and its control.
    ScanExperimental {
        problem: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_hexagon(s: &str) -> Result<[f64; 4], String> {
    let v: Vec<f64> = s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    <[f64; 4]>::try_from(v).map_err(|_| "expected Ox,Oy,A1x,A1y".to_string())
}

fn load_config(arg: &str) -> Result<WebConfig> {
    if let Some(key) = arg.strip_prefix("preset:") {
        return Ok(preset(key)?);
    }
    WebConfig::load(Path::new(arg)).with_context(|| format!("loading {arg}"))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Catalog => {
            for e in catalog() {
                let tag = if e.experimental { " [experimental]" } else { "" };
                println!("{}{tag}\n    {}\n    params: {}", e.key, e.description, e.params);
            }
            println!("\npresets: {}", preset_keys().join(", "));
        }
        Cmd::Preset { key, out } => emit(&preset(&key)?.to_toml()?, out.as_deref())?,
        Cmd::Render { config, out, hexagon, leaves, pixels } => {
            let w = load_config(&config)?.build()?;
            let mut spec = RenderSpec { leaves: [leaves; 3], pixels, ..RenderSpec::for_web(&w) };
            if let Some(h) = hexagon {
                spec.hexagon = Some((Point::new(h[0], h[1]), Point::new(h[2], h[3])));
            }
            emit(&render_svg(&w, &spec)?, Some(&out))?;
        }
        Cmd::Verify { config, samples, seed, tol, out, sequential } => {
            let cfg = load_config(&config)?;
            let execution = if sequential { Execution::Sequential } else { Execution::Parallel };
            let report = verify(&cfg, &VerifyOptions { samples, seed, tol, execution })?;
            emit(&report.to_toml()?, out.as_deref())?;
            eprintln!("{}: {}", report.web, if report.pass { "PASS" } else { "FAIL" });
            return Ok(report.pass);
        }
        Cmd::ScanExperimental { problem, out, samples, seed } => {
            let p: Problem = problem.parse()?;
            if samples == 0 {
                bail!("samples must be positive");
            }
            let report = scan_experimental(p, samples, seed, Execution::Parallel)?;
            emit(&report.to_toml()?, out.as_deref())?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
