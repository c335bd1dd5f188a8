//! Composite Gauss-Legendre quadrature on the beam interval.
//!
//! Normalization integrals, Gram matrices, and initial-data projections all
//! go through here. Integrands are smooth or piecewise linear, so a fixed
//! composite rule is enough; there is no adaptive path.

use serde::{Deserialize, Serialize};

use crate::error::{BeamError, Result};
use crate::spectrum::BeamGeometry;

pub const MIN_NODES: usize = 2;
pub const MAX_NODES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    pub panels: usize,
    pub nodes_per_panel: usize,
}

impl QuadratureSettings {
    pub fn new(panels: usize, nodes_per_panel: usize) -> Result<Self> {
        if panels < 1 {
            return Err(BeamError::BadQuadrature("panels must be >= 1".into()));
        }
        if !(MIN_NODES..=MAX_NODES).contains(&nodes_per_panel) {
            return Err(BeamError::BadQuadrature(format!(
                "nodes_per_panel must lie in [{MIN_NODES}, {MAX_NODES}], got {nodes_per_panel}"
            )));
        }
        Ok(Self {
            panels,
            nodes_per_panel,
        })
    }

    /// Default rule when the highest mode index in play is `n_max`:
    /// at least 8 panels per oscillation wavelength, 8 nodes each.
    pub fn for_mode_count(n_max: usize) -> Self {
        Self {
            panels: 16.max(4 * n_max),
            nodes_per_panel: 8,
        }
    }
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self::for_mode_count(0)
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!((MIN_NODES..=MAX_NODES).contains(&n));
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss-Legendre approximation of the integral of `f` over
/// [0, length].
pub fn integrate(f: impl Fn(f64) -> f64, geom: &BeamGeometry, settings: &QuadratureSettings) -> f64 {
    let width = geom.length() / settings.panels as f64;
    let breaks: Vec<f64> = (0..=settings.panels)
        .map(|i| i as f64 * width)
        .collect();
    integrate_over_segments(f, &breaks, settings.nodes_per_panel)
}

/// Composite rule with panel boundaries at the given breakpoints. Used for
/// sampled initial data so panels align with the sample grid.
pub fn integrate_over_segments(
    f: impl Fn(f64) -> f64,
    breakpoints: &[f64],
    nodes_per_panel: usize,
) -> f64 {
    let (nodes, weights) = gauss_legendre(nodes_per_panel);
    let mut total = 0.0;
    for pair in breakpoints.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut panel = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            panel += w * f(mid + half * x);
        }
        total += half * panel;
    }
    total
}

/// Real inner product <f, g> on [0, length].
pub fn inner_product(
    f: impl Fn(f64) -> f64,
    g: impl Fn(f64) -> f64,
    geom: &BeamGeometry,
    settings: &QuadratureSettings,
) -> f64 {
    integrate(|x| f(x) * g(x), geom, settings)
}
