//! `modes` subcommand: eigenvalue/mode-shape tables.

use std::error::Error;
use std::path::PathBuf;

use serde::Serialize;

use beamspec::{build_modes, BeamGeometry, EigenMode, MaterialParams, ShapeForm, TrigKind};

use crate::output::{fmt_float, write_json, CsvWriter};
use crate::OutputFormat;

#[derive(Serialize)]
struct ModeRow {
    n: usize,
    kappa: f64,
    eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<f64>,
    bv_residual: f64,
    shape: &'static str,
    coefficients: [f64; 4],
}

fn shape_columns(mode: &EigenMode) -> (&'static str, [f64; 4]) {
    match mode.shape.form {
        ShapeForm::Trig {
            kind,
            wavenumber,
            amplitude,
        } => {
            let name = match kind {
                TrigKind::Sine => "sine",
                TrigKind::Cosine => "cosine",
            };
            (name, [amplitude, wavenumber, 0.0, 0.0])
        }
        ShapeForm::General { coefficients, .. } => ("general", coefficients),
        ShapeForm::Polynomial { a, b } => ("polynomial", [a, b, 0.0, 0.0]),
    }
}

pub fn run(
    support: &str,
    length: f64,
    count: usize,
    material: Option<MaterialParams>,
    out: Option<PathBuf>,
    format: OutputFormat,
) -> Result<(), Box<dyn Error>> {
    let case = beamspec::parse_case(support)?;
    let geom = BeamGeometry::new(length)?;
    log::info!("building {count} modes for support {support} on length {length}");
    let modes = build_modes(case, &geom, count)?;

    let rows: Vec<ModeRow> = modes
        .iter()
        .map(|m| {
            let (shape, coefficients) = shape_columns(m);
            ModeRow {
                n: m.record.index,
                kappa: m.record.kappa,
                eigenvalue: m.record.eigenvalue,
                omega: material.as_ref().map(|mt| mt.omega(m.record.kappa)),
                bv_residual: m.bv_residual(),
                shape,
                coefficients,
            }
        })
        .collect();

    match format {
        OutputFormat::Json => {
            let path = out.ok_or("--out is required with --format json")?;
            write_json(&path, &rows)?;
        }
        OutputFormat::Csv => {
            let mut columns = vec!["n", "kappa", "eigenvalue"];
            if material.is_some() {
                columns.push("omega");
            }
            columns.extend_from_slice(&["bv_residual", "shape", "c1", "c2", "c3", "c4"]);
            let emit = |w: &mut CsvWriter| -> std::io::Result<()> {
                w.header(&columns)?;
                for r in &rows {
                    let mut cells = vec![
                        r.n.to_string(),
                        fmt_float(r.kappa),
                        fmt_float(r.eigenvalue),
                    ];
                    if let Some(w) = r.omega {
                        cells.push(fmt_float(w));
                    }
                    cells.push(fmt_float(r.bv_residual));
                    cells.push(r.shape.to_string());
                    cells.extend(r.coefficients.iter().map(|c| fmt_float(*c)));
                    w.row(&cells)?;
                }
                Ok(())
            };
            match out {
                Some(path) => {
                    let mut w = CsvWriter::create(&path)?;
                    emit(&mut w)?;
                    w.finish()?;
                }
                None => {
                    let mut w = CsvWriter::stdout();
                    emit(&mut w)?;
                    w.finish()?;
                }
            }
        }
    }
    Ok(())
}
