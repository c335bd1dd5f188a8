//! Exact-in-time modal evolution of the bending initial-value problem.
//!
//! Projection of the initial data onto the eigenmodes happens once; every
//! frame afterwards is a closed-form cosine/sine combination per mode, so
//! there is no time stepping and no accumulation of error. Zero eigenvalues
//! evolve linearly in time.

use serde::{Deserialize, Serialize};

use crate::error::{BeamError, Result};
use crate::modes::EigenMode;
use crate::quadrature::{self, QuadratureSettings};
use crate::spectrum::BeamGeometry;

/// Material constant sigma = sqrt(E I / (rho A)) converting spatial
/// eigenvalues to circular frequencies omega = sigma * kappa^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    sigma: f64,
}

impl MaterialParams {
    pub fn from_sigma(sigma: f64) -> Result<Self> {
        if sigma <= 0.0 || !sigma.is_finite() {
            return Err(BeamError::BadMaterial(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        Ok(Self { sigma })
    }

    /// From elasticity modulus, second area moment, mass density per unit
    /// length, and cross-sectional area.
    pub fn from_properties(e: f64, i: f64, rho: f64, area: f64) -> Result<Self> {
        for (name, v) in [("E", e), ("I", i), ("rho", rho), ("area", area)] {
            if v <= 0.0 || !v.is_finite() {
                return Err(BeamError::BadMaterial(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Self::from_sigma((e * i / (rho * area)).sqrt())
    }

    /// Accepts both forms and rejects an inconsistent pair.
    pub fn from_both(sigma: f64, e: f64, i: f64, rho: f64, area: f64) -> Result<Self> {
        let direct = Self::from_sigma(sigma)?;
        let derived = Self::from_properties(e, i, rho, area)?;
        if (direct.sigma - derived.sigma).abs() > 1e-12 * derived.sigma {
            return Err(BeamError::BadMaterial(format!(
                "sigma {} disagrees with sqrt(EI/(rho A)) = {}",
                direct.sigma, derived.sigma
            )));
        }
        Ok(derived)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn omega(&self, kappa: f64) -> f64 {
        self.sigma * kappa * kappa
    }
}

/// An initial displacement or velocity profile on [0, length].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Profile {
    Zero,
    /// amplitude * sin(k pi x / length)
    Sine { k: u32, amplitude: f64 },
    /// Triangle of the given height, zero at both ends, peak at `position`.
    Pluck { position: f64, height: f64 },
    /// amplitude * exp(-(x - center)^2 / (2 width^2))
    Gaussian {
        center: f64,
        width: f64,
        amplitude: f64,
    },
    /// The n-th built eigenmode itself (1-based).
    Mode { n: usize },
    /// Piecewise-linear samples spanning [0, length].
    Samples { xs: Vec<f64>, values: Vec<f64> },
}

impl Profile {
    pub fn validate(&self, geom: &BeamGeometry, modes_available: usize) -> Result<()> {
        let l = geom.length();
        match self {
            Profile::Zero => Ok(()),
            Profile::Sine { k, .. } => {
                if *k == 0 {
                    return Err(BeamError::BadProfile("sine index k must be >= 1".into()));
                }
                Ok(())
            }
            Profile::Pluck { position, .. } => {
                let inside = *position > 0.0 && *position < l;
                if !inside {
                    return Err(BeamError::BadProfile(format!(
                        "pluck position {position} must lie strictly inside (0, {l})"
                    )));
                }
                Ok(())
            }
            Profile::Gaussian { width, center, .. } => {
                let positive = *width > 0.0;
                if !positive {
                    return Err(BeamError::BadProfile("gaussian width must be positive".into()));
                }
                if !(0.0..=l).contains(center) {
                    return Err(BeamError::BadProfile(format!(
                        "gaussian center {center} outside [0, {l}]"
                    )));
                }
                Ok(())
            }
            Profile::Mode { n } => {
                if *n == 0 || *n > modes_available {
                    return Err(BeamError::BadProfile(format!(
                        "mode preset n = {n} outside the built range 1..={modes_available}"
                    )));
                }
                Ok(())
            }
            Profile::Samples { xs, values } => {
                if xs.len() < 2 || xs.len() != values.len() {
                    return Err(BeamError::BadProfile(
                        "samples need >= 2 points and matching value count".into(),
                    ));
                }
                if xs.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(BeamError::BadProfile(
                        "sample x-values must be strictly increasing".into(),
                    ));
                }
                let tol = 1e-9 * l.max(1.0);
                if xs[0].abs() > tol || (xs[xs.len() - 1] - l).abs() > tol {
                    return Err(BeamError::BadProfile(format!(
                        "samples must span [0, {l}], got [{}, {}]",
                        xs[0],
                        xs[xs.len() - 1]
                    )));
                }
                Ok(())
            }
        }
    }

    /// Point evaluation; `modes` supplies the shapes for the Mode preset.
    pub fn evaluate(&self, x: f64, geom: &BeamGeometry, modes: &[EigenMode]) -> f64 {
        let l = geom.length();
        match self {
            Profile::Zero => 0.0,
            Profile::Sine { k, amplitude } => {
                amplitude * (*k as f64 * std::f64::consts::PI * x / l).sin()
            }
            Profile::Pluck { position, height } => {
                if x <= *position {
                    height * x / position
                } else {
                    height * (l - x) / (l - position)
                }
            }
            Profile::Gaussian {
                center,
                width,
                amplitude,
            } => amplitude * (-(x - center).powi(2) / (2.0 * width * width)).exp(),
            Profile::Mode { n } => modes[n - 1]
                .evaluate(x, 0)
                .expect("projection quadrature stays inside the domain"),
            Profile::Samples { xs, values } => {
                let i = match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
                    Ok(i) => return values[i],
                    Err(0) => 0,
                    Err(i) if i >= xs.len() => xs.len() - 2,
                    Err(i) => i - 1,
                };
                let t = (x - xs[i]) / (xs[i + 1] - xs[i]);
                values[i] * (1.0 - t) + values[i + 1] * t
            }
        }
    }

    /// Interior breakpoints where the profile is not smooth; quadrature
    /// panels are aligned with these.
    fn breakpoints(&self, _geom: &BeamGeometry) -> Vec<f64> {
        match self {
            Profile::Pluck { position, .. } => vec![*position],
            Profile::Samples { xs, .. } => xs[1..xs.len() - 1].to_vec(),
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitialState {
    pub u0: Profile,
    pub v0: Profile,
}

/// Modal projections p_n = <psi_n, u0> and q_n = <psi_n, v0>.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalCoefficients {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
}

impl ModalCoefficients {
    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Magnitude of the last two coefficient pairs; a cheap truncation
    /// diagnostic for the chosen mode count.
    pub fn tail_indicator(&self) -> f64 {
        let n = self.len();
        self.p
            .iter()
            .zip(&self.q)
            .skip(n.saturating_sub(2))
            .map(|(p, q)| p * p + q * q)
            .sum()
    }
}

/// Panel edges: the uniform rule refined with the profile's breakpoints.
pub(crate) fn aligned_breaks(
    profile: &Profile,
    geom: &BeamGeometry,
    settings: &QuadratureSettings,
) -> Vec<f64> {
    let l = geom.length();
    let mut breaks: Vec<f64> = (0..=settings.panels)
        .map(|i| l * i as f64 / settings.panels as f64)
        .collect();
    breaks.extend(profile.breakpoints(geom));
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14 * l.max(1.0));
    breaks
}

/// Project the initial state onto the given normalized modes.
pub fn project(
    initial: &InitialState,
    modes: &[EigenMode],
    settings: &QuadratureSettings,
) -> Result<ModalCoefficients> {
    let geom = match modes.first() {
        Some(m) => m.geometry,
        None => return Err(BeamError::EmptySpectrum),
    };
    initial.u0.validate(&geom, modes.len())?;
    initial.v0.validate(&geom, modes.len())?;

    let project_one = |profile: &Profile| -> Vec<f64> {
        let breaks = aligned_breaks(profile, &geom, settings);
        modes
            .iter()
            .map(|m| {
                quadrature::integrate_over_segments(
                    |x| {
                        m.evaluate(x, 0).expect("quadrature stays in domain")
                            * profile.evaluate(x, &geom, modes)
                    },
                    &breaks,
                    settings.nodes_per_panel,
                )
            })
            .collect()
    };
    Ok(ModalCoefficients {
        p: project_one(&initial.u0),
        q: project_one(&initial.v0),
    })
}

/// Displacement and velocity coefficients of every mode at time t:
/// c_n(t) = cos(w t) p_n + sin(w t)/w q_n for positive eigenvalues and
/// c_n(t) = p_n + t q_n on the kernel.
pub fn coefficients_at(
    coeffs: &ModalCoefficients,
    modes: &[EigenMode],
    material: &MaterialParams,
    t: f64,
) -> Result<Vec<(f64, f64)>> {
    if coeffs.len() != modes.len() {
        return Err(BeamError::DimensionMismatch {
            expected: modes.len(),
            got: coeffs.len(),
        });
    }
    Ok(modes
        .iter()
        .zip(coeffs.p.iter().zip(&coeffs.q))
        .map(|(m, (&p, &q))| {
            if m.record.eigenvalue == 0.0 {
                (p + t * q, q)
            } else {
                let w = material.omega(m.record.kappa);
                let (s, c) = (w * t).sin_cos();
                (c * p + s / w * q, -w * s * p + c * q)
            }
        })
        .collect())
}

/// One spatial snapshot of the truncated solution.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionFrame {
    pub time: f64,
    pub positions: Vec<f64>,
    pub displacement: Vec<f64>,
    pub velocity: Vec<f64>,
}

/// Evaluate the truncated expansion on a spatial grid at time t.
pub fn evaluate_solution(
    coeffs: &ModalCoefficients,
    modes: &[EigenMode],
    material: &MaterialParams,
    grid: &[f64],
    t: f64,
) -> Result<SolutionFrame> {
    let geom = match modes.first() {
        Some(m) => m.geometry,
        None => return Err(BeamError::EmptySpectrum),
    };
    for &x in grid {
        if !(0.0..=geom.length()).contains(&x) {
            return Err(BeamError::OutOfDomain {
                x,
                length: geom.length(),
            });
        }
    }
    let cs = coefficients_at(coeffs, modes, material, t)?;
    let mut displacement = vec![0.0; grid.len()];
    let mut velocity = vec![0.0; grid.len()];
    for (m, (c, c_dot)) in modes.iter().zip(&cs) {
        for (j, &x) in grid.iter().enumerate() {
            let psi = m.evaluate(x, 0)?;
            displacement[j] += c * psi;
            velocity[j] += c_dot * psi;
        }
    }
    Ok(SolutionFrame {
        time: t,
        positions: grid.to_vec(),
        displacement,
        velocity,
    })
}

/// Total modal energy E(t) = 1/2 sum(c_dot^2 + w^2 c^2); constant in time,
/// with kernel modes contributing the constant 1/2 q^2.
pub fn modal_energy(
    coeffs: &ModalCoefficients,
    modes: &[EigenMode],
    material: &MaterialParams,
    t: f64,
) -> Result<f64> {
    let cs = coefficients_at(coeffs, modes, material, t)?;
    Ok(modes
        .iter()
        .zip(&cs)
        .map(|(m, (c, c_dot))| {
            let w = material.omega(m.record.kappa);
            0.5 * (c_dot * c_dot + w * w * c * c)
        })
        .sum())
}

/// Largest deviation of the per-mode complex modulus |c_n + i c_dot_n / w|
/// from its t = 0 value; zero-frequency modes are excluded.
pub fn unitary_phase_check(
    coeffs: &ModalCoefficients,
    modes: &[EigenMode],
    material: &MaterialParams,
    t: f64,
) -> Result<f64> {
    let now = coefficients_at(coeffs, modes, material, t)?;
    let mut worst = 0.0f64;
    for (m, ((c, c_dot), (&p, &q))) in modes
        .iter()
        .zip(now.iter().zip(coeffs.p.iter().zip(&coeffs.q)))
    {
        if m.record.eigenvalue == 0.0 {
            continue;
        }
        let w = material.omega(m.record.kappa);
        let modulus_now = (c * c + (c_dot / w) * (c_dot / w)).sqrt();
        let modulus_start = (p * p + (q / w) * (q / w)).sqrt();
        worst = worst.max((modulus_now - modulus_start).abs());
    }
    Ok(worst)
}
