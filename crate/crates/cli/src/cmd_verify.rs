//! `verify` subcommand: cross-check spectral eigenvalues against the
//! finite-difference oracle and report kernel counts, adjoint identities,
//! and convergence orders. Exit status is nonzero when any check misses its
//! threshold.

use std::error::Error;
use std::path::PathBuf;

use beamspec::{
    adjoint_identity_check, assemble_operator, spectrum, BeamGeometry, Origin, StaggeredGrid,
    SupportCase,
};

use crate::output::{fmt_float, CsvWriter};

pub struct VerifyOptions {
    pub support: String,
    pub grids: Vec<usize>,
    pub modes: usize,
    pub out: Option<PathBuf>,
}

/// Relative eigenvalue tolerance at one grid size.
fn tolerance(m: usize) -> f64 {
    if m >= 200 {
        0.01
    } else {
        0.02
    }
}

const ORDER_THRESHOLD: f64 = 1.8;

pub fn run(opts: &VerifyOptions) -> Result<bool, Box<dyn Error>> {
    let cases: Vec<beamspec::ResolvedCase> = if opts.support.eq_ignore_ascii_case("all") {
        SupportCase::ALL
            .iter()
            .map(|c| beamspec::ResolvedCase::canonical(*c))
            .collect()
    } else {
        vec![beamspec::parse_case(&opts.support)?]
    };

    let geom = BeamGeometry::new(1.0)?;
    let mut all_ok = true;
    let mut csv_rows: Vec<[String; 6]> = Vec::new();

    for resolved in cases {
        let case = resolved.case;
        let kernel_expected = case.kernel_dimension();
        let reference: Vec<f64> = spectrum(case, &geom, kernel_expected + opts.modes)?
            .iter()
            .filter(|r| r.origin != Origin::RigidBody)
            .map(|r| r.eigenvalue)
            .collect();

        println!("support {case}:");
        let mut first_errors = Vec::new();
        for &m in &opts.grids {
            let grid = StaggeredGrid::new(1.0, m)?;
            let adjoint = adjoint_identity_check(&grid);
            let op = assemble_operator(resolved, &grid);
            let kernel = op.kernel_count();
            let eigen = op.lowest_eigenvalues(kernel_expected + opts.modes)?;
            let positive = &eigen[kernel_expected.min(eigen.len())..];

            let adjoint_ok = adjoint == 0.0;
            let kernel_ok = kernel == kernel_expected;
            all_ok &= adjoint_ok && kernel_ok;
            println!(
                "  m = {m}: adjoint identity deviation {adjoint:.1e} [{}], kernel {kernel} (expected {kernel_expected}) [{}]",
                if adjoint_ok { "ok" } else { "FAIL" },
                if kernel_ok { "ok" } else { "FAIL" },
            );
            for (i, (got, want)) in positive.iter().zip(&reference).enumerate() {
                let rel = ((got - want) / want).abs();
                let ok = rel < tolerance(m);
                all_ok &= ok;
                if i == 0 {
                    first_errors.push(rel);
                }
                println!(
                    "    a_{}: spectral {want:.9e}  fd {got:.9e}  rel {rel:.3e} [{}]",
                    i + 1,
                    if ok { "ok" } else { "FAIL" },
                );
                csv_rows.push([
                    case.token().to_string(),
                    m.to_string(),
                    (i + 1).to_string(),
                    fmt_float(*want),
                    fmt_float(*got),
                    fmt_float(rel),
                ]);
            }
        }
        if first_errors.len() >= 3 {
            let n = first_errors.len();
            let span = (opts.grids[n - 1] as f64 / opts.grids[0] as f64).ln();
            let order = (first_errors[0] / first_errors[n - 1]).ln() / span;
            let ok = order >= ORDER_THRESHOLD;
            all_ok &= ok;
            println!(
                "  observed convergence order of a_1: {order:.2} (threshold {ORDER_THRESHOLD}) [{}]",
                if ok { "ok" } else { "FAIL" },
            );
        }
    }

    if let Some(path) = &opts.out {
        let mut w = CsvWriter::create(path)?;
        w.header(&["case", "m", "n", "a_spectral", "a_fd", "rel_error"])?;
        for row in &csv_rows {
            w.row(row.as_slice())?;
        }
        w.finish()?;
    }

    println!("verify: {}", if all_ok { "all checks passed" } else { "CHECKS FAILED" });
    Ok(all_ok)
}
