//! Construction, normalization, and evaluation of eigenfunctions.
//!
//! Group I shapes are plain sines/cosines; numeric-group shapes are null
//! vectors of the scaled boundary matrix expanded in the bounded basis
//! {e^(-kx), e^(k(x-l)), cos(kx), sin(kx)}; rigid-body shapes are the
//! orthonormal polynomials a + b*x.

use nalgebra::DMatrix;

use crate::error::{BeamError, Result};
use crate::quadrature::{self, QuadratureSettings};
use crate::spectrum::{
    basis, characteristic_matrix, null_vector_rank3, spectrum, zero_modes, BeamGeometry,
    EigenvalueRecord, Origin,
};
use crate::supports::{ResolvedCase, SupportCase};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Sine,
    Cosine,
}

/// The analytic form of one mode shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeForm {
    /// amplitude * sin(w x) or amplitude * cos(w x)
    Trig {
        kind: TrigKind,
        wavenumber: f64,
        amplitude: f64,
    },
    /// Coefficients of the bounded basis
    /// {e^(-kx), e^(k(x-l)), cos(kx), sin(kx)} at this kappa.
    General { coefficients: [f64; 4], kappa: f64 },
    /// a + b*x rigid-body shape.
    Polynomial { a: f64, b: f64 },
}

/// A shape plus the reflection flag; reflection evaluates at length - x and
/// negates odd derivative orders (used for the mirrored cases ba, ca, cb).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeShape {
    pub form: ShapeForm,
    pub reflected: bool,
}

/// One normalized eigenmode of a support case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenMode {
    pub record: EigenvalueRecord,
    pub shape: ModeShape,
    pub geometry: BeamGeometry,
    pub support: SupportCase,
}

/// Boundary-residual rejection threshold; grows with the mode index as the
/// hyperbolic cancellation in the null vector accumulates.
pub fn residual_tolerance(index: usize) -> f64 {
    match index {
        0..=4 => 1e-8,
        5..=12 => 1e-6,
        _ => 1e-5,
    }
}

/// Build the normalized mode for one eigenvalue record of the case.
pub fn build_mode(
    resolved: ResolvedCase,
    record: &EigenvalueRecord,
    geom: &BeamGeometry,
) -> Result<EigenMode> {
    let case = resolved.case;
    let form = match record.origin {
        Origin::RigidBody => {
            let shapes = zero_modes(case, geom);
            let shape = shapes
                .get(record.index - 1)
                .expect("rigid-body records precede all positive eigenvalues");
            ShapeForm::Polynomial {
                a: shape.a,
                b: shape.b,
            }
        }
        Origin::ClosedForm => closed_form_shape(case, record, geom),
        Origin::DeterminantRoot => {
            let m = characteristic_matrix(case, record.kappa, geom)?;
            let coefficients = null_vector_rank3(&m, record.kappa)?;
            ShapeForm::General {
                coefficients,
                kappa: record.kappa,
            }
        }
    };
    let mut mode = EigenMode {
        record: *record,
        shape: ModeShape {
            form,
            reflected: false,
        },
        geometry: *geom,
        support: case,
    };
    if let ShapeForm::General { .. } = mode.shape.form {
        normalize(&mut mode);
    }
    fix_sign(&mut mode);
    mode.shape.reflected = resolved.reflected;

    let residual = mode.bv_residual();
    let tolerance = residual_tolerance(record.index);
    if residual > tolerance {
        return Err(BeamError::ResidualTooLarge {
            index: record.index,
            residual,
            tolerance,
        });
    }
    Ok(mode)
}

/// Spectrum plus shape construction for the first `count` modes.
pub fn build_modes(
    resolved: ResolvedCase,
    geom: &BeamGeometry,
    count: usize,
) -> Result<Vec<EigenMode>> {
    spectrum(resolved.case, geom, count)?
        .iter()
        .map(|r| build_mode(resolved, r, geom))
        .collect()
}

fn closed_form_shape(case: SupportCase, record: &EigenvalueRecord, geom: &BeamGeometry) -> ShapeForm {
    let amplitude = (2.0 / geom.length()).sqrt();
    let kind = match case {
        SupportCase::Aa | SupportCase::Add2 => TrigKind::Sine,
        SupportCase::Add1 | SupportCase::Add3 => TrigKind::Cosine,
        _ => unreachable!("closed forms exist only for the analytic group"),
    };
    ShapeForm::Trig {
        kind,
        wavenumber: record.kappa,
        amplitude,
    }
}

fn normalize(mode: &mut EigenMode) {
    let settings = QuadratureSettings::for_mode_count(mode.record.index);
    let norm2 = quadrature::integrate(
        |x| {
            let v = mode.evaluate_unreflected(x, 0);
            v * v
        },
        &mode.geometry,
        &settings,
    );
    let scale = 1.0 / norm2.sqrt();
    if let ShapeForm::General {
        ref mut coefficients,
        ..
    } = mode.shape.form
    {
        for c in coefficients.iter_mut() {
            *c *= scale;
        }
    }
}

/// Deterministic sign: make the first clearly nonvanishing kappa-scaled
/// boundary value at x = 0 positive, checking the slope first so the
/// rigid-body shape of the free-free beam keeps its positive slope.
fn fix_sign(mode: &mut EigenMode) {
    let kappa = mode.record.kappa;
    let scaled = |order: u8| {
        mode.evaluate_unreflected(0.0, order) / 1.0f64.max(kappa.powi(order as i32))
    };
    let candidates = [scaled(1), scaled(0), scaled(2), scaled(3)];
    let magnitude = candidates.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let leading = candidates
        .iter()
        .find(|v| v.abs() > 1e-3 * magnitude)
        .copied()
        .unwrap_or(1.0);
    if leading < 0.0 {
        match mode.shape.form {
            ShapeForm::Trig {
                ref mut amplitude, ..
            } => *amplitude = -*amplitude,
            ShapeForm::General {
                ref mut coefficients,
                ..
            } => {
                for c in coefficients.iter_mut() {
                    *c = -*c;
                }
            }
            ShapeForm::Polynomial {
                ref mut a,
                ref mut b,
            } => {
                *a = -*a;
                *b = -*b;
            }
        }
    }
}

impl EigenMode {
    /// psi^(order)(x), reflection applied when the mode carries the flag.
    pub fn evaluate(&self, x: f64, order: u8) -> Result<f64> {
        let l = self.geometry.length();
        if !(0.0..=l).contains(&x) {
            return Err(BeamError::OutOfDomain { x, length: l });
        }
        if order > 4 {
            return Err(BeamError::BadDerivativeOrder(order));
        }
        if self.shape.reflected {
            let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
            Ok(sign * self.evaluate_unreflected(l - x, order))
        } else {
            Ok(self.evaluate_unreflected(x, order))
        }
    }

    fn evaluate_unreflected(&self, x: f64, order: u8) -> f64 {
        let l = self.geometry.length();
        match self.shape.form {
            ShapeForm::Trig {
                kind,
                wavenumber,
                amplitude,
            } => {
                let z = wavenumber * x;
                let phase = match kind {
                    TrigKind::Sine => match order % 4 {
                        0 => z.sin(),
                        1 => z.cos(),
                        2 => -z.sin(),
                        _ => -z.cos(),
                    },
                    TrigKind::Cosine => match order % 4 {
                        0 => z.cos(),
                        1 => -z.sin(),
                        2 => -z.cos(),
                        _ => z.sin(),
                    },
                };
                amplitude * wavenumber.powi(order as i32) * phase
            }
            ShapeForm::General {
                coefficients,
                kappa,
            } => {
                let mut v = 0.0;
                for (j, c) in coefficients.iter().enumerate() {
                    v += c * basis::scaled_derivative(j, order, kappa, x, l);
                }
                kappa.powi(order as i32) * v
            }
            ShapeForm::Polynomial { a, b } => match order {
                0 => a + b * x,
                1 => b,
                _ => 0.0,
            },
        }
    }

    /// Kappa-scaled worst violation of the four boundary constraints.
    pub fn bv_residual(&self) -> f64 {
        let kappa = self.record.kappa;
        let mut worst = 0.0f64;
        for c in self.support.constraints() {
            let c = if self.shape.reflected { c.mirrored() } else { c };
            let x = c.end.position(self.geometry.length());
            let v = self
                .evaluate(x, c.order)
                .expect("constraint endpoints are inside the domain");
            worst = worst.max(v.abs() / 1.0f64.max(kappa.powi(c.order as i32)));
        }
        worst
    }
}

/// Gram matrix of the modes under the given quadrature rule; expected to be
/// the identity for modes of one case.
pub fn gram_matrix(modes: &[EigenMode], settings: &QuadratureSettings) -> Result<DMatrix<f64>> {
    if let Some(first) = modes.first() {
        for m in modes {
            if m.support != first.support
                || m.geometry != first.geometry
                || m.shape.reflected != first.shape.reflected
            {
                return Err(BeamError::MixedModes);
            }
        }
    }
    let n = modes.len();
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = quadrature::integrate(
                |x| {
                    modes[i].evaluate(x, 0).expect("quadrature stays in domain")
                        * modes[j].evaluate(x, 0).expect("quadrature stays in domain")
                },
                &modes[0].geometry,
                settings,
            );
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    Ok(g)
}
