//! `compare` subcommand: string-versus-beam dispersion table and the
//! per-mode traveling-wave split with its reconstruction residual.

use std::error::Error;
use std::path::PathBuf;

use beamspec::{
    dispersion_table, fourier_coefficients, ModeSpeed, Profile, QuadratureSettings, StringConfig,
};

use crate::output::{fmt_float, CsvWriter};

pub struct CompareOptions {
    pub length: f64,
    pub wave_speed: f64,
    pub sigma: f64,
    pub count: usize,
    pub points: usize,
    pub frames: usize,
    pub t1: Option<f64>,
    pub initial: Option<(Profile, Profile)>,
    pub out: Option<PathBuf>,
    pub quadrature: QuadratureSettings,
}

pub fn run(opts: &CompareOptions) -> Result<(), Box<dyn Error>> {
    let cfg = StringConfig::new(opts.length, opts.wave_speed)?;
    let rows = dispersion_table(&cfg, opts.sigma, opts.count);

    let (u0, v0) = opts.initial.clone().unwrap_or((
        Profile::Pluck {
            position: opts.length / 2.0,
            height: 1.0,
        },
        Profile::Zero,
    ));
    let fc = fourier_coefficients(&u0, &v0, &cfg, &opts.quadrature, opts.count)?;

    let t_end = opts.t1.unwrap_or(opts.length / opts.wave_speed);
    let times: Vec<f64> = if opts.frames <= 1 {
        vec![0.0]
    } else {
        (0..opts.frames)
            .map(|i| t_end * i as f64 / (opts.frames - 1) as f64)
            .collect()
    };
    let grid: Vec<f64> = (0..opts.points)
        .map(|i| opts.length * i as f64 / (opts.points - 1) as f64)
        .collect();

    let dispersion_columns = ["n", "omega_wave", "wave_speed", "omega_beam", "beam_speed"];
    let write_dispersion = |w: &mut CsvWriter| -> std::io::Result<()> {
        w.header(&dispersion_columns)?;
        for r in &rows {
            w.row(&[
                r.n.to_string(),
                fmt_float(r.omega_wave),
                fmt_float(r.wave_speed),
                fmt_float(r.omega_beam),
                fmt_float(r.beam_speed),
            ])?;
        }
        Ok(())
    };

    // Traveling split of each string mode; `standing` is the n-th term of
    // the separated solution and `residual` the reconstruction defect.
    let pi = std::f64::consts::PI;
    let standing_term = |n: usize, x: f64, t: f64| -> f64 {
        let w = cfg.omega(n);
        let (s, c) = (w * t).sin_cos();
        (fc.s[n - 1] * c + fc.s_dot[n - 1] / w * s) * (n as f64 * pi * x / opts.length).sin()
    };
    let write_split = |w: &mut CsvWriter| -> Result<(), Box<dyn Error>> {
        w.header(&["n", "x", "t", "left", "right", "standing", "residual"])?;
        for n in 1..=opts.count {
            for &t in &times {
                for &x in &grid {
                    let (l, r) = beamspec::traveling_decomposition(
                        n,
                        &fc,
                        opts.length,
                        ModeSpeed::Uniform(opts.wave_speed),
                        x,
                        t,
                    )?;
                    let standing = standing_term(n, x, t);
                    w.row(&[
                        n.to_string(),
                        fmt_float(x),
                        fmt_float(t),
                        fmt_float(l),
                        fmt_float(r),
                        fmt_float(standing),
                        fmt_float((l + r - standing).abs()),
                    ])?;
                }
            }
        }
        Ok(())
    };

    match &opts.out {
        Some(prefix) => {
            let disp_path = prefix.with_extension("dispersion.csv");
            let split_path = prefix.with_extension("decomposition.csv");
            let mut w = CsvWriter::create(&disp_path)?;
            write_dispersion(&mut w)?;
            w.finish()?;
            let mut w = CsvWriter::create(&split_path)?;
            write_split(&mut w)?;
            w.finish()?;
            log::info!("wrote {} and {}", disp_path.display(), split_path.display());
        }
        None => {
            let mut w = CsvWriter::stdout();
            write_dispersion(&mut w)?;
            w.finish()?;
        }
    }
    Ok(())
}
