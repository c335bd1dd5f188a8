//! Command-line front end for the beam bending-vibration solver.
//!
//! Subcommands: `modes`, `evolve`, `compare`, `verify`. Set `BEAMSPEC_LOG`
//! (e.g. `BEAMSPEC_LOG=info`) to control verbosity.

mod cmd_compare;
mod cmd_evolve;
mod cmd_modes;
mod cmd_verify;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use beamspec::MaterialParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "beamspec",
    version,
    about = "Spectral solver for free bending vibrations of a beam, with a finite-difference verification oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MaterialArgs {
    /// Material constant sigma = sqrt(E I / (rho A))
    #[arg(long)]
    sigma: Option<f64>,
    /// Elasticity modulus
    #[arg(long = "E")]
    elasticity: Option<f64>,
    /// Second area moment of the cross-section
    #[arg(long = "I")]
    area_moment: Option<f64>,
    /// Mass density per unit length
    #[arg(long)]
    rho: Option<f64>,
    /// Cross-sectional area
    #[arg(long)]
    area: Option<f64>,
}

impl MaterialArgs {
    fn resolve(&self) -> Result<Option<MaterialParams>, String> {
        let spec = config::MaterialSpec {
            sigma: self.sigma,
            e: self.elasticity,
            i: self.area_moment,
            rho: self.rho,
            area: self.area,
        };
        if spec.sigma.is_none()
            && spec.e.is_none()
            && spec.i.is_none()
            && spec.rho.is_none()
            && spec.area.is_none()
        {
            return Ok(None);
        }
        spec.resolve().map(Some).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalue and mode-shape table for one support case
    Modes {
        /// Support case: aa, ab, ac, bb, bc, cc, add1, add2, add3, ba, ca, cb
        #[arg(long)]
        support: String,
        /// Beam length
        #[arg(long, default_value_t = 1.0)]
        length: f64,
        /// Number of modes (at most 25)
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[command(flatten)]
        material: MaterialArgs,
        /// Output file (stdout when omitted, CSV only)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Evolve an initial state from a JSON config and write frames
    Evolve {
        /// Run configuration (JSON)
        #[arg(long)]
        config: PathBuf,
        /// Frames output file; an energy sidecar is written next to it
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Override the projection quadrature panel count
        #[arg(long)]
        quad_panels: Option<usize>,
        /// Override the Gauss-Legendre nodes per panel
        #[arg(long)]
        quad_nodes: Option<usize>,
    },
    /// String-versus-beam dispersion table and traveling-wave split
    Compare {
        #[arg(long, default_value_t = 1.0)]
        length: f64,
        /// String wave speed c
        #[arg(long)]
        wave_speed: f64,
        /// Beam material constant sigma
        #[arg(long)]
        sigma: f64,
        /// Number of modes in both tables
        #[arg(long, default_value_t = 8)]
        count: usize,
        /// Spatial sample points of the decomposition trace
        #[arg(long, default_value_t = 65)]
        points: usize,
        /// Trace frames in [0, t1]
        #[arg(long, default_value_t = 5)]
        frames: usize,
        /// Trace end time (default: one string traversal, length / c)
        #[arg(long)]
        t1: Option<f64>,
        /// Optional run config supplying the initial profiles
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output prefix; writes <out>.dispersion.csv and
        /// <out>.decomposition.csv (dispersion to stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the Fourier quadrature panel count
        #[arg(long)]
        quad_panels: Option<usize>,
        /// Override the Gauss-Legendre nodes per panel
        #[arg(long)]
        quad_nodes: Option<usize>,
    },
    /// Cross-check spectral eigenvalues against the finite-difference oracle
    Verify {
        /// Support case token, or `all`
        #[arg(long)]
        support: String,
        /// Comma-separated interior node counts, e.g. 50,100,200
        #[arg(long, default_value = "100")]
        grid: String,
        /// Number of positive eigenvalues to compare
        #[arg(long, default_value_t = 3)]
        modes: usize,
        /// Optional CSV report
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn override_quadrature(
    base: beamspec::QuadratureSettings,
    panels: Option<usize>,
    nodes: Option<usize>,
) -> Result<beamspec::QuadratureSettings, Box<dyn std::error::Error>> {
    if panels.is_none() && nodes.is_none() {
        return Ok(base);
    }
    Ok(beamspec::QuadratureSettings::new(
        panels.unwrap_or(base.panels),
        nodes.unwrap_or(base.nodes_per_panel),
    )?)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("BEAMSPEC_LOG")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Modes {
            support,
            length,
            count,
            material,
            out,
            format,
        } => {
            let material = material.resolve()?;
            cmd_modes::run(&support, length, count, material, out, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Evolve {
            config,
            out,
            format,
            quad_panels,
            quad_nodes,
        } => {
            let raw = config::RunConfig::from_path(&config)?;
            let mut resolved = raw.resolve()?;
            resolved.quadrature =
                override_quadrature(resolved.quadrature, quad_panels, quad_nodes)?;
            cmd_evolve::run(&resolved, &raw.support, &out, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare {
            length,
            wave_speed,
            sigma,
            count,
            points,
            frames,
            t1,
            config,
            out,
            quad_panels,
            quad_nodes,
        } => {
            let initial = match config {
                Some(path) => {
                    let raw = config::RunConfig::from_path(&path)?;
                    Some((raw.initial.u0, raw.initial.v0))
                }
                None => None,
            };
            let quadrature = override_quadrature(
                beamspec::QuadratureSettings::for_mode_count(count),
                quad_panels,
                quad_nodes,
            )?;
            cmd_compare::run(&cmd_compare::CompareOptions {
                length,
                wave_speed,
                sigma,
                count,
                points,
                frames,
                t1,
                initial,
                out,
                quadrature,
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            support,
            grid,
            modes,
            out,
        } => {
            let grids: Vec<usize> = grid
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| format!("invalid --grid list `{grid}`: {e}"))?;
            if grids.is_empty() {
                return Err("--grid needs at least one size".into());
            }
            let ok = cmd_verify::run(&cmd_verify::VerifyOptions {
                support,
                grids,
                modes,
                out,
            })?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
