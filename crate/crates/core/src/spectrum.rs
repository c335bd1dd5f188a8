//! Eigenvalues a_n = kappa_n^4 of the fourth-order beam operator.
//!
//! Group I supports (aa, add1, add2, add3) have closed-form spectra: the
//! operator is the square of a Laplacian, so kappa_n is a multiple of pi over
//! the length. For the remaining supports the eigenvalue condition is a
//! vanishing 4x4 determinant, scanned and bisected numerically. The zero
//! eigenvalue never comes out of the scan; it is handled separately through
//! the rigid-body shapes.

use serde::{Deserialize, Serialize};

use crate::error::{BeamError, Result};
use crate::supports::{SpectrumGroup, SupportCase};

/// Highest mode index served in double precision. Beyond this the scaled
/// determinant loses too much accuracy to certify roots.
pub const MAX_MODE_COUNT: usize = 25;

/// Scan parameters for the dimensionless root search in z = kappa * length.
const SCAN_START: f64 = 1e-4;
const SCAN_STEP: f64 = std::f64::consts::PI / 8.0;
/// Determinant magnitudes below this are treated as sign-indeterminate while
/// scanning; the scaled matrix entries are O(1), so anything smaller is
/// rounding noise rather than a trustworthy sign.
const DET_NOISE_FLOOR: f64 = 1e-13;
/// Bisection stops when the bracket's relative width drops below this.
const BISECT_REL_WIDTH: f64 = 1e-13;
/// A root is accepted only if the scaled matrix has numerical rank 3 there.
const RANK_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamGeometry {
    length: f64,
}

impl BeamGeometry {
    pub fn new(length: f64) -> Result<Self> {
        if length <= 0.0 || !length.is_finite() {
            return Err(BeamError::InvalidLength(length));
        }
        Ok(Self { length })
    }

    pub fn unit() -> Self {
        Self { length: 1.0 }
    }

    pub fn length(&self) -> f64 {
        self.length
    }
}

/// How an eigenvalue record was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    ClosedForm,
    DeterminantRoot,
    RigidBody,
}

/// One eigenpair entry: a_n = kappa_n^4 with its 1-based index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueRecord {
    pub index: usize,
    pub kappa: f64,
    pub eigenvalue: f64,
    pub origin: Origin,
}

impl EigenvalueRecord {
    fn new(index: usize, kappa: f64, origin: Origin) -> Self {
        Self {
            index,
            kappa,
            eigenvalue: kappa.powi(4),
            origin,
        }
    }
}

/// A rigid-body shape a + b*x with zero eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearShape {
    pub a: f64,
    pub b: f64,
}

impl LinearShape {
    pub fn evaluate(&self, x: f64) -> f64 {
        self.a + self.b * x
    }
}

/// Scaled values of the four basis functions of psi'''' = kappa^4 psi.
///
/// The hyperbolic pair cosh(kx), sinh(kx) is replaced by the equivalent
/// decaying pair e^(-kx), e^(k(x-l)), which spans the same solutions but
/// keeps all boundary values in [-1, 1] with no cancellation at large kappa
/// (the cosh/sinh columns become numerically parallel there and lose the
/// determinant's significance long before mode 12).
///
/// Basis order: e^(-kx), e^(k(x-l)), cos(kx), sin(kx).
/// `scaled_derivative(j, d, ..)` returns the d-th derivative of basis j at x
/// divided by kappa^d, which is bounded for all kappa.
pub(crate) mod basis {
    /// e^(-kappa x), the component decaying away from the left end.
    pub fn decay_left(kappa: f64, x: f64) -> f64 {
        (-kappa * x).exp()
    }

    /// e^(kappa (x - length)), decaying away from the right end.
    pub fn decay_right(kappa: f64, x: f64, length: f64) -> f64 {
        (kappa * (x - length)).exp()
    }

    pub fn scaled_derivative(j: usize, d: u8, kappa: f64, x: f64, length: f64) -> f64 {
        let z = kappa * x;
        match j {
            0 => {
                let sign = if d.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * decay_left(kappa, x)
            }
            1 => decay_right(kappa, x, length),
            2 => match d % 4 {
                0 => z.cos(),
                1 => -z.sin(),
                2 => -z.cos(),
                _ => z.sin(),
            },
            3 => match d % 4 {
                0 => z.sin(),
                1 => z.cos(),
                2 => -z.sin(),
                _ => -z.cos(),
            },
            _ => unreachable!("basis index out of range"),
        }
    }
}

/// The 4x4 boundary matrix of the case at the given kappa, scaled so every
/// entry stays in [-1, 1]: row r applies constraint r to the four basis
/// functions of [`basis`], divided by kappa^order. Its null space matches the
/// textbook cosh/sinh boundary matrix up to the invertible change of the two
/// hyperbolic coordinates.
pub fn characteristic_matrix(
    case: SupportCase,
    kappa: f64,
    geom: &BeamGeometry,
) -> Result<[[f64; 4]; 4]> {
    if kappa <= 0.0 || !kappa.is_finite() {
        return Err(BeamError::NonPositiveKappa(kappa));
    }
    let mut m = [[0.0; 4]; 4];
    for (r, c) in case.constraints().into_iter().enumerate() {
        let x = c.end.position(geom.length());
        for (j, entry) in m[r].iter_mut().enumerate() {
            *entry = basis::scaled_derivative(j, c.order, kappa, x, geom.length());
        }
    }
    Ok(m)
}

/// Determinant of the scaled boundary matrix; zero exactly at the nonzero
/// eigenvalues of the case.
pub fn characteristic_function(case: SupportCase, kappa: f64, geom: &BeamGeometry) -> Result<f64> {
    Ok(det4(&characteristic_matrix(case, kappa, geom)?))
}

/// 4x4 determinant by Laplace expansion over two-row minors.
pub(crate) fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let minor_top = |i: usize, j: usize| m[0][i] * m[1][j] - m[0][j] * m[1][i];
    let minor_bot = |i: usize, j: usize| m[2][i] * m[3][j] - m[2][j] * m[3][i];
    minor_top(0, 1) * minor_bot(2, 3) - minor_top(0, 2) * minor_bot(1, 3)
        + minor_top(0, 3) * minor_bot(1, 2)
        + minor_top(1, 2) * minor_bot(0, 3)
        - minor_top(1, 3) * minor_bot(0, 2)
        + minor_top(2, 3) * minor_bot(0, 1)
}

/// Full-pivot Gaussian elimination of a 4x4 matrix. Returns the pivot
/// magnitudes in elimination order and the column permutation together with
/// the reduced upper-triangular rows, for rank checks and null vectors.
pub(crate) struct Eliminated {
    pub rows: [[f64; 4]; 4],
    pub col_perm: [usize; 4],
    pub pivots: [f64; 4],
}

#[allow(clippy::needless_range_loop)] // row/column indices are coupled
pub(crate) fn eliminate_full_pivot(m: &[[f64; 4]; 4]) -> Eliminated {
    let mut a = *m;
    let mut col_perm = [0usize, 1, 2, 3];
    let mut pivots = [0.0f64; 4];
    for step in 0..4 {
        let (mut pr, mut pc, mut best) = (step, step, -1.0f64);
        for (r, row) in a.iter().enumerate().skip(step) {
            for c in step..4 {
                if row[c].abs() > best {
                    best = row[c].abs();
                    pr = r;
                    pc = c;
                }
            }
        }
        a.swap(step, pr);
        for row in &mut a {
            row.swap(step, pc);
        }
        col_perm.swap(step, pc);
        pivots[step] = a[step][step].abs();
        if a[step][step] != 0.0 {
            for r in (step + 1)..4 {
                let f = a[r][step] / a[step][step];
                for c in step..4 {
                    a[r][c] -= f * a[step][c];
                }
            }
        }
    }
    Eliminated {
        rows: a,
        col_perm,
        pivots,
    }
}

/// Null vector of a numerically rank-3 matrix, in the original column order.
/// Errors when the matrix does not look rank 3 (pivot ratios against
/// `RANK_TOL`).
#[allow(clippy::needless_range_loop)] // back-substitution indices are coupled
pub(crate) fn null_vector_rank3(m: &[[f64; 4]; 4], kappa: f64) -> Result<[f64; 4]> {
    let e = eliminate_full_pivot(m);
    let largest = e.pivots[0].max(f64::MIN_POSITIVE);
    let rank = e.pivots.iter().filter(|p| **p > RANK_TOL * largest).count();
    if rank != 3 {
        return Err(BeamError::DegenerateRoot { kappa, rank });
    }
    let mut y = [0.0f64; 4];
    y[3] = 1.0;
    for k in (0..3).rev() {
        let mut s = 0.0;
        for j in (k + 1)..4 {
            s += e.rows[k][j] * y[j];
        }
        y[k] = -s / e.rows[k][k];
    }
    let mut x = [0.0f64; 4];
    for (slot, value) in e.col_perm.iter().zip(y) {
        x[*slot] = value;
    }
    Ok(x)
}

/// Dimensionless characteristic value f(z) with z = kappa * length.
fn char_dimensionless(case: SupportCase, z: f64) -> f64 {
    characteristic_function(case, z, &BeamGeometry::unit())
        .expect("z > 0 inside the scan")
}

/// The first `count` strictly positive roots of the characteristic function,
/// strictly increasing, for a numeric-group case. Zero eigenvalues are never
/// reported here; see [`zero_modes`].
pub fn find_kappas(case: SupportCase, geom: &BeamGeometry, count: usize) -> Result<Vec<f64>> {
    if case.group() != SpectrumGroup::NumericII {
        return Err(BeamError::AnalyticCase { case: case.token() });
    }
    check_count(count)?;
    let roots = scan_dimensionless_roots(case, count)?;
    Ok(roots.into_iter().map(|z| z / geom.length()).collect())
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(BeamError::EmptySpectrum);
    }
    if count > MAX_MODE_COUNT {
        return Err(BeamError::TooManyModes {
            requested: count,
            max: MAX_MODE_COUNT,
        });
    }
    Ok(())
}

/// Scan f(z) on a pi/8 grid from SCAN_START, bisect every sign change between
/// sign-trustworthy samples, and verify rank 3 at each accepted root.
fn scan_dimensionless_roots(case: SupportCase, count: usize) -> Result<Vec<f64>> {
    let ceiling = (count as f64 + 6.0) * std::f64::consts::PI;
    let mut roots = Vec::with_capacity(count);
    let mut z = SCAN_START;
    let mut last_solid: Option<(f64, f64)> = None;
    while roots.len() < count && z <= ceiling {
        let f = char_dimensionless(case, z);
        if f.abs() >= DET_NOISE_FLOOR {
            if let Some((za, fa)) = last_solid {
                if fa.signum() != f.signum() {
                    let root = bisect(case, za, z, fa);
                    // Guard against an accidentally degenerate root.
                    let m = characteristic_matrix(case, root, &BeamGeometry::unit())?;
                    null_vector_rank3(&m, root)?;
                    roots.push(root);
                }
            }
            last_solid = Some((z, f));
        }
        z += SCAN_STEP;
    }
    if roots.len() < count {
        return Err(BeamError::RootScanExhausted {
            ceiling,
            found: roots.len(),
            requested: count,
        });
    }
    Ok(roots)
}

fn bisect(case: SupportCase, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    while hi - lo > BISECT_REL_WIDTH * hi {
        let mid = 0.5 * (lo + hi);
        let fmid = char_dimensionless(case, mid);
        if fmid == 0.0 {
            return mid;
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Closed-form spectrum for the analytic group (aa, add1, add2, add3).
pub fn analytic_spectrum(
    case: SupportCase,
    geom: &BeamGeometry,
    count: usize,
) -> Result<Vec<EigenvalueRecord>> {
    if case.group() != SpectrumGroup::AnalyticI {
        return Err(BeamError::NumericCase { case: case.token() });
    }
    check_count(count)?;
    let pi = std::f64::consts::PI;
    let l = geom.length();
    let records = (1..=count)
        .map(|n| match case {
            SupportCase::Aa => {
                EigenvalueRecord::new(n, n as f64 * pi / l, Origin::ClosedForm)
            }
            SupportCase::Add1 => {
                if n == 1 {
                    EigenvalueRecord::new(1, 0.0, Origin::RigidBody)
                } else {
                    EigenvalueRecord::new(n, (n as f64 - 1.0) * pi / l, Origin::ClosedForm)
                }
            }
            SupportCase::Add2 | SupportCase::Add3 => {
                EigenvalueRecord::new(n, (2.0 * n as f64 - 1.0) * pi / (2.0 * l), Origin::ClosedForm)
            }
            _ => unreachable!("group checked above"),
        })
        .collect();
    Ok(records)
}

/// Unified spectrum for any case: rigid-body zeros first (as many as the
/// kernel dimension), then the strictly positive eigenvalues in increasing
/// order.
pub fn spectrum(case: SupportCase, geom: &BeamGeometry, count: usize) -> Result<Vec<EigenvalueRecord>> {
    check_count(count)?;
    if case.group() == SpectrumGroup::AnalyticI {
        return analytic_spectrum(case, geom, count);
    }
    let zeros = case.kernel_dimension().min(count);
    let mut records: Vec<EigenvalueRecord> = (1..=zeros)
        .map(|n| EigenvalueRecord::new(n, 0.0, Origin::RigidBody))
        .collect();
    if count > zeros {
        let kappas = find_kappas(case, geom, count - zeros)?;
        records.extend(
            kappas
                .into_iter()
                .enumerate()
                .map(|(i, k)| EigenvalueRecord::new(zeros + i + 1, k, Origin::DeterminantRoot)),
        );
    }
    Ok(records)
}

/// Orthonormal rigid-body shapes of the case: the polynomials a + b*x that
/// satisfy the essential constraints, Gram-Schmidt orthonormalized with exact
/// integrals.
pub fn zero_modes(case: SupportCase, geom: &BeamGeometry) -> Vec<LinearShape> {
    let l = geom.length();
    match case.kernel_dimension() {
        0 => Vec::new(),
        1 => {
            if case == SupportCase::Ac {
                // Essential constraint is xi(0) = 0, so the shape is x,
                // normalized by the exact integral of x^2.
                vec![LinearShape {
                    a: 0.0,
                    b: (3.0 / l.powi(3)).sqrt(),
                }]
            } else {
                // add1: no order-0 essential constraint; constant shape.
                vec![LinearShape {
                    a: 1.0 / l.sqrt(),
                    b: 0.0,
                }]
            }
        }
        _ => {
            // cc: both constants and slopes survive; orthonormalize {1, x}.
            let slope = (12.0 / l.powi(3)).sqrt();
            vec![
                LinearShape {
                    a: 1.0 / l.sqrt(),
                    b: 0.0,
                },
                LinearShape {
                    a: -slope * l / 2.0,
                    b: slope,
                },
            ]
        }
    }
}
