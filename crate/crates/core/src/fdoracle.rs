//! Staggered-grid finite-difference oracle.
//!
//! Independent cross-check for the spectral machinery: the fourth-order
//! operator is assembled as A_h = G^T G where G chains two first-order
//! difference matrices mirroring the operator factorization of the support
//! case. Boundary conditions enter only through deleted node columns and
//! zero-padded phantom values, so A_h is symmetric positive semidefinite by
//! construction and the discrete adjoint identities are exact.
//!
//! Ends whose constraints are not the pinned pair {value, curvature} behave
//! like half-cell-staggered boundaries, so the assembly calibrates the grid
//! spacing with a half-cell overhang per such end; that keeps the eigenvalue
//! error at second order in the spacing for every support case.

use nalgebra::{DMatrix, DVector};

use crate::error::{BeamError, Result};
use crate::supports::{EndPoint, ResolvedCase, SupportCase};

pub const MIN_INTERIOR_NODES: usize = 8;

/// Uniform grid with nodes at j*h (j = 0..m+1, h = length/(m+1)) and edges at
/// the midpoints in between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaggeredGrid {
    length: f64,
    interior: usize,
}

impl StaggeredGrid {
    pub fn new(length: f64, interior: usize) -> Result<Self> {
        if length <= 0.0 || !length.is_finite() {
            return Err(BeamError::InvalidLength(length));
        }
        if interior < MIN_INTERIOR_NODES {
            return Err(BeamError::GridTooCoarse {
                min: MIN_INTERIOR_NODES,
                got: interior,
            });
        }
        Ok(Self { length, interior })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn interior(&self) -> usize {
        self.interior
    }

    pub fn spacing(&self) -> f64 {
        self.length / (self.interior as f64 + 1.0)
    }

    pub fn node_count(&self) -> usize {
        self.interior + 2
    }

    pub fn edge_count(&self) -> usize {
        self.interior + 1
    }
}

/// Forward-difference matrix from node values to edge values; entries are
/// only +-1/h, and a constrained end deletes that node's column.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceMatrix {
    pub matrix: DMatrix<f64>,
    pub left_bv: bool,
    pub right_bv: bool,
}

pub fn difference_matrix(left_bv: bool, right_bv: bool, grid: &StaggeredGrid) -> DifferenceMatrix {
    DifferenceMatrix {
        matrix: forward_difference(grid.interior, grid.spacing(), left_bv, right_bv),
        left_bv,
        right_bv,
    }
}

fn forward_difference(m: usize, h: f64, left_bv: bool, right_bv: bool) -> DMatrix<f64> {
    let nodes: Vec<usize> = (0..m + 2)
        .filter(|&j| !(left_bv && j == 0) && !(right_bv && j == m + 1))
        .collect();
    let inv_h = 1.0 / h;
    let mut d = DMatrix::zeros(m + 1, nodes.len());
    for (col, &node) in nodes.iter().enumerate() {
        // Edge j differences nodes j and j+1.
        if node >= 1 {
            d[(node - 1, col)] = inv_h;
        }
        if node <= m {
            d[(node, col)] = -inv_h;
        }
    }
    d
}

/// Difference from edge values back to node values: the dual realization of
/// the same four operators. A constrained end contributes a phantom zero edge
/// beyond the boundary and therefore a difference row at that boundary node.
fn dual_difference(m: usize, h: f64, left_bv: bool, right_bv: bool) -> DMatrix<f64> {
    let mut nodes: Vec<usize> = (1..=m).collect();
    if left_bv {
        nodes.insert(0, 0);
    }
    if right_bv {
        nodes.push(m + 1);
    }
    let inv_h = 1.0 / h;
    let mut b = DMatrix::zeros(nodes.len(), m + 1);
    for (row, &node) in nodes.iter().enumerate() {
        if node >= 1 {
            b[(row, node - 1)] = -inv_h;
        }
        if node <= m {
            b[(row, node)] = inv_h;
        }
    }
    b
}

/// Exact discrete counterpart of the first-order adjoint identities: the
/// transpose of each node-to-edge matrix is the negated dual difference with
/// the constraint flags swapped. Returns the worst entry deviation, which is
/// exactly zero for a correct assembly.
pub fn adjoint_identity_check(grid: &StaggeredGrid) -> f64 {
    let mut worst = 0.0f64;
    for (lp, rp) in [(true, true), (true, false), (false, true), (false, false)] {
        let d = forward_difference(grid.interior, grid.spacing(), lp, rp);
        let b = dual_difference(grid.interior, grid.spacing(), !lp, !rp);
        let sum = d.transpose() + b;
        worst = worst.max(sum.amax());
    }
    worst
}

/// The assembled discrete operator A_h = G^T G for one support case.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    pub case: SupportCase,
    pub reflected: bool,
    /// Calibrated spacing including the half-cell overhang of non-pinned ends.
    pub spacing: f64,
    /// Physical coordinates of the degrees of freedom.
    pub positions: Vec<f64>,
    pub g: DMatrix<f64>,
    pub a: DMatrix<f64>,
}

/// Half-cell overhang of one end: zero when the end carries the pinned
/// constraint pair {order 0, order 2}, half a cell otherwise.
fn end_overhang(case: SupportCase, end: EndPoint) -> f64 {
    let mut orders: Vec<u8> = case
        .constraints()
        .into_iter()
        .filter(|c| c.end == end)
        .map(|c| c.order)
        .collect();
    orders.sort_unstable();
    if orders == [0, 2] {
        0.0
    } else {
        0.5
    }
}

/// Assemble A_h = G^T G with G the discrete version of the two rightmost
/// factors of the case's operator factorization.
pub fn assemble_operator(resolved: ResolvedCase, grid: &StaggeredGrid) -> DiscreteOperator {
    let case = resolved.case;
    let m = grid.interior;
    let overhang_left = end_overhang(case, EndPoint::Left);
    let overhang_right = end_overhang(case, EndPoint::Right);
    let h = grid.length / (m as f64 + 1.0 + overhang_left + overhang_right);

    let tags = case.factorization();
    let inner = tags[3]; // applied first: nodes -> edges
    let outer = tags[2]; // edges -> nodes
    let d = forward_difference(m, h, inner.left_constrained(), inner.right_constrained());
    let b = dual_difference(m, h, outer.left_constrained(), outer.right_constrained());
    let g = &b * &d;
    let a = g.transpose() * &g;

    let positions = (0..m + 2)
        .filter(|&j| {
            !(inner.left_constrained() && j == 0) && !(inner.right_constrained() && j == m + 1)
        })
        .map(|j| {
            let x = (j as f64 + overhang_left) * h;
            if resolved.reflected {
                grid.length - x
            } else {
                x
            }
        })
        .collect();

    DiscreteOperator {
        case,
        reflected: resolved.reflected,
        spacing: h,
        positions,
        g,
        a,
    }
}

impl DiscreteOperator {
    pub fn dof_count(&self) -> usize {
        self.a.nrows()
    }

    /// All eigenvalues of A_h in increasing order, computed as squared
    /// singular values of the factor G; the column surplus of a wide G
    /// contributes exact structural zeros. Going through G keeps the small
    /// eigenvalues far more accurate than eigensolving the squared matrix.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut values: Vec<f64> = self
            .g
            .clone()
            .svd(false, false)
            .singular_values
            .iter()
            .map(|s| s * s)
            .collect();
        let structural = self.g.ncols().saturating_sub(self.g.nrows());
        values.extend(std::iter::repeat_n(0.0, structural));
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values
    }

    /// The k smallest eigenvalues of A_h.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        if k > self.dof_count() {
            return Err(BeamError::DimensionMismatch {
                expected: self.dof_count(),
                got: k,
            });
        }
        let mut values = self.eigenvalues();
        values.truncate(k);
        Ok(values)
    }

    /// Number of near-zero eigenvalues, counted against 1e-8 times the first
    /// clearly nonzero eigenvalue.
    pub fn kernel_count(&self) -> usize {
        let values = self.eigenvalues();
        let largest = values.last().copied().unwrap_or(0.0);
        let reference = values
            .iter()
            .find(|v| **v > 1e-12 * largest)
            .copied()
            .unwrap_or(largest);
        values.iter().filter(|v| **v < 1e-8 * reference).count()
    }

    /// Gershgorin upper bound for the largest eigenvalue; tight for these
    /// banded operators and cheap enough for the stability check.
    pub fn lambda_max_bound(&self) -> f64 {
        self.a
            .row_iter()
            .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Discrete energy 1/2 h (|v|^2 + sigma^2 u^T A u).
    pub fn energy(&self, u: &DVector<f64>, v: &DVector<f64>, sigma: f64) -> f64 {
        0.5 * self.spacing * (v.norm_squared() + sigma * sigma * (u.transpose() * &self.a * u)[0])
    }
}

/// Trajectory frames from the time-stepping oracle.
#[derive(Debug, Clone)]
pub struct OracleTrajectory {
    pub times: Vec<f64>,
    pub displacements: Vec<DVector<f64>>,
    pub velocities: Vec<DVector<f64>>,
}

/// Stoermer-Verlet integration of u'' = -sigma^2 A_h u from the sampled
/// initial state, recording every `record_every`-th step plus the final one.
/// The requested step is validated against 1.9 / (sigma sqrt(lambda_max)) and
/// then shortened so an integer number of steps lands exactly on t_final.
pub fn leapfrog_evolve(
    op: &DiscreteOperator,
    u0: &[f64],
    v0: &[f64],
    sigma: f64,
    dt: f64,
    t_final: f64,
    record_every: usize,
) -> Result<OracleTrajectory> {
    let n = op.dof_count();
    if u0.len() != n {
        return Err(BeamError::DimensionMismatch {
            expected: n,
            got: u0.len(),
        });
    }
    if v0.len() != n {
        return Err(BeamError::DimensionMismatch {
            expected: n,
            got: v0.len(),
        });
    }
    let bound = 1.9 / (sigma * op.lambda_max_bound().sqrt());
    if dt > bound {
        return Err(BeamError::UnstableTimeStep { dt, bound });
    }
    let steps = (t_final / dt).ceil().max(1.0) as usize;
    let dt = t_final / steps as f64;
    let every = record_every.max(1);

    let mut u = DVector::from_column_slice(u0);
    let mut v = DVector::from_column_slice(v0);
    let mut accel = -(sigma * sigma) * (&op.a * &u);
    let mut traj = OracleTrajectory {
        times: vec![0.0],
        displacements: vec![u.clone()],
        velocities: vec![v.clone()],
    };
    for step in 1..=steps {
        u += dt * &v + (0.5 * dt * dt) * &accel;
        let accel_next = -(sigma * sigma) * (&op.a * &u);
        v += (0.5 * dt) * (&accel + &accel_next);
        accel = accel_next;
        if step.is_multiple_of(every) || step == steps {
            traj.times.push(step as f64 * dt);
            traj.displacements.push(u.clone());
            traj.velocities.push(v.clone());
        }
    }
    Ok(traj)
}
