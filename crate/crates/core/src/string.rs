//! The vibrating-string comparison: Dirichlet wave equation on the same
//! interval, sine Fourier synthesis, dispersion tables, and the left/right
//! traveling-wave split of each standing mode.
//!
//! The string and the pinned-pinned beam share the same normalized
//! eigenfunctions; only the dispersion relation differs (omega linear in n
//! for the string, quadratic for the beam).

use crate::error::{BeamError, Result};
use crate::evolution::Profile;
use crate::quadrature::{self, QuadratureSettings};
use crate::spectrum::BeamGeometry;

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StringConfig {
    length: f64,
    wave_speed: f64,
}

impl StringConfig {
    pub fn new(length: f64, wave_speed: f64) -> Result<Self> {
        if length <= 0.0 || !length.is_finite() {
            return Err(BeamError::InvalidLength(length));
        }
        if wave_speed <= 0.0 || !wave_speed.is_finite() {
            return Err(BeamError::BadMaterial(format!(
                "wave speed must be positive, got {wave_speed}"
            )));
        }
        Ok(Self { length, wave_speed })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn wave_speed(&self) -> f64 {
        self.wave_speed
    }

    pub fn omega(&self, n: usize) -> f64 {
        n as f64 * PI * self.wave_speed / self.length
    }
}

/// One Dirichlet-Laplacian eigenpair: a_n = (n pi / l)^2 with the normalized
/// shape sqrt(2/l) sin(n pi x / l).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StringMode {
    pub index: usize,
    pub eigenvalue: f64,
}

impl StringMode {
    pub fn evaluate(&self, x: f64, cfg: &StringConfig) -> f64 {
        (2.0 / cfg.length).sqrt() * (self.index as f64 * PI * x / cfg.length).sin()
    }
}

/// First `count` eigenpairs of the Dirichlet string.
pub fn string_spectrum(cfg: &StringConfig, count: usize) -> Vec<StringMode> {
    (1..=count)
        .map(|n| StringMode {
            index: n,
            eigenvalue: (n as f64 * PI / cfg.length).powi(2),
        })
        .collect()
}

/// Sine Fourier coefficients S_n, S_dot_n of the initial data. Note the
/// normalized-mode projections are sqrt(l/2) * S_n.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    pub s: Vec<f64>,
    pub s_dot: Vec<f64>,
}

impl FourierCoefficients {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

fn profile_value(profile: &Profile, x: f64, cfg: &StringConfig) -> f64 {
    let geom = BeamGeometry::new(cfg.length).expect("validated in constructor");
    match profile {
        // On the string, the mode preset means the string's own normalized
        // eigenfunction.
        Profile::Mode { n } => StringMode {
            index: *n,
            eigenvalue: 0.0,
        }
        .evaluate(x, cfg),
        other => other.evaluate(x, &geom, &[]),
    }
}

/// S_n = (2/l) integral of u0(x) sin(n pi x / l), and likewise for the
/// velocity profile. Quadrature panels align with the profile's breakpoints,
/// the same way the beam projection integrates.
pub fn fourier_coefficients(
    u0: &Profile,
    v0: &Profile,
    cfg: &StringConfig,
    settings: &QuadratureSettings,
    count: usize,
) -> Result<FourierCoefficients> {
    let geom = BeamGeometry::new(cfg.length)?;
    u0.validate(&geom, count)?;
    v0.validate(&geom, count)?;
    let one = |profile: &Profile| -> Vec<f64> {
        let breaks = crate::evolution::aligned_breaks(profile, &geom, settings);
        (1..=count)
            .map(|n| {
                let integral = quadrature::integrate_over_segments(
                    |x| {
                        profile_value(profile, x, cfg)
                            * (n as f64 * PI * x / cfg.length).sin()
                    },
                    &breaks,
                    settings.nodes_per_panel,
                );
                2.0 / cfg.length * integral
            })
            .collect()
    };
    Ok(FourierCoefficients {
        s: one(u0),
        s_dot: one(v0),
    })
}

/// Truncated standing-wave synthesis
/// u(x, t) = sum [S_n cos(w_n t) + S_dot_n / w_n sin(w_n t)] sin(n pi x / l).
pub fn string_solution(coeffs: &FourierCoefficients, cfg: &StringConfig, x: f64, t: f64) -> f64 {
    let mut u = 0.0;
    for (i, (s, s_dot)) in coeffs.s.iter().zip(&coeffs.s_dot).enumerate() {
        let n = i + 1;
        let w = cfg.omega(n);
        let (sin_wt, cos_wt) = (w * t).sin_cos();
        u += (s * cos_wt + s_dot / w * sin_wt) * (n as f64 * PI * x / cfg.length).sin();
    }
    u
}

/// Which propagation speed the n-th mode uses in the traveling split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeSpeed {
    /// The string: every mode travels at the same c.
    Uniform(f64),
    /// The beam: mode n travels at c_n = n pi sigma / l.
    Dispersive { sigma: f64 },
}

impl ModeSpeed {
    pub fn speed(&self, n: usize, length: f64) -> f64 {
        match self {
            ModeSpeed::Uniform(c) => *c,
            ModeSpeed::Dispersive { sigma } => n as f64 * PI * sigma / length,
        }
    }
}

/// Split the n-th standing-mode term into its left- and right-running parts:
/// left  = 1/2 [A sin(k(x + ct)) - B cos(k(x + ct))],
/// right = 1/2 [A sin(k(x - ct)) + B cos(k(x - ct))],
/// with A = S_n, B = S_dot_n / w_n and k = n pi / l. Their sum equals the
/// standing term exactly.
pub fn traveling_decomposition(
    n: usize,
    coeffs: &FourierCoefficients,
    length: f64,
    speed: ModeSpeed,
    x: f64,
    t: f64,
) -> Result<(f64, f64)> {
    if n == 0 || n > coeffs.len() {
        return Err(BeamError::DimensionMismatch {
            expected: coeffs.len(),
            got: n,
        });
    }
    let k = n as f64 * PI / length;
    let c = speed.speed(n, length);
    let w = k * c;
    let a = coeffs.s[n - 1];
    let b = coeffs.s_dot[n - 1] / w;
    let left_phase = k * (x + c * t);
    let right_phase = k * (x - c * t);
    let left = 0.5 * (a * left_phase.sin() - b * left_phase.cos());
    let right = 0.5 * (a * right_phase.sin() + b * right_phase.cos());
    Ok((left, right))
}

/// One row of the string-versus-beam dispersion comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionRow {
    pub n: usize,
    pub omega_wave: f64,
    pub wave_speed: f64,
    pub omega_beam: f64,
    pub beam_speed: f64,
}

/// omega_wave = n pi c / l, omega_beam = (n pi / l)^2 sigma, and the modal
/// beam speed c_n = n pi sigma / l.
pub fn dispersion_table(cfg: &StringConfig, sigma: f64, count: usize) -> Vec<DispersionRow> {
    (1..=count)
        .map(|n| {
            let k = n as f64 * PI / cfg.length;
            DispersionRow {
                n,
                omega_wave: k * cfg.wave_speed,
                wave_speed: cfg.wave_speed,
                omega_beam: k * k * sigma,
                beam_speed: k * sigma,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{project, InitialState};
    use crate::modes::build_modes;
    use crate::supports::{ResolvedCase, SupportCase};

    fn cfg(l: f64, c: f64) -> StringConfig {
        StringConfig::new(l, c).unwrap()
    }

    #[test]
    fn spectrum_closed_forms() {
        let s = string_spectrum(&cfg(1.0, 1.0), 3);
        assert!((s[0].eigenvalue - PI * PI).abs() < 1e-12 * PI * PI);
        let s2 = string_spectrum(&cfg(2.0, 1.0), 3);
        assert!((s2[2].eigenvalue - (3.0 * PI / 2.0).powi(2)).abs() < 1e-12);
        let v = s[1].evaluate(0.25, &cfg(1.0, 1.0));
        assert!((v - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn fourier_of_plain_sine_is_a_unit_vector() {
        let c = cfg(1.0, 1.0);
        let s = QuadratureSettings::for_mode_count(4);
        let fc = fourier_coefficients(
            &Profile::Sine { k: 1, amplitude: 1.0 },
            &Profile::Zero,
            &c,
            &s,
            4,
        )
        .unwrap();
        assert!((fc.s[0] - 1.0).abs() < 1e-12);
        for v in &fc.s[1..] {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn fourier_of_normalized_mode_matches_projection_scaling() {
        let c = cfg(2.0, 1.0);
        let s = QuadratureSettings::for_mode_count(3);
        let fc =
            fourier_coefficients(&Profile::Mode { n: 1 }, &Profile::Zero, &c, &s, 3).unwrap();
        assert!((fc.s[0] - (2.0 / 2.0f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn fourier_of_center_pluck() {
        let c = cfg(1.0, 1.0);
        let s = QuadratureSettings::for_mode_count(8);
        let fc = fourier_coefficients(
            &Profile::Pluck {
                position: 0.5,
                height: 1.0,
            },
            &Profile::Zero,
            &c,
            &s,
            8,
        )
        .unwrap();
        for (i, v) in fc.s.iter().enumerate() {
            let n = (i + 1) as f64;
            let exact = 8.0 / (PI * PI * n * n) * (n * PI / 2.0).sin();
            assert!((v - exact).abs() < 1e-8, "n = {}: {v} vs {exact}", i + 1);
        }
    }

    #[test]
    fn solution_at_zero_synthesizes_initial_data() {
        let c = cfg(1.0, 1.0);
        let coeffs = FourierCoefficients {
            s: vec![1.0, 0.0, 0.25],
            s_dot: vec![0.0; 3],
        };
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            let want = (PI * x).sin() + 0.25 * (3.0 * PI * x).sin();
            assert!((string_solution(&coeffs, &c, x, 0.0) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn half_period_is_the_reflected_negative() {
        let c = cfg(1.0, 2.0);
        let coeffs = FourierCoefficients {
            s: vec![1.0],
            s_dot: vec![0.0],
        };
        let t_half = c.length() / c.wave_speed();
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            let now = string_solution(&coeffs, &c, x, t_half);
            let want = -string_solution(&coeffs, &c, 1.0 - x, 0.0);
            assert!((now - want).abs() < 1e-12);
            assert!((now + (PI * x).sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn traveling_split_reconstructs_standing_terms() {
        let c = cfg(1.0, 1.3);
        let coeffs = FourierCoefficients {
            s: vec![0.9, -0.4, 0.2],
            s_dot: vec![0.3, 0.1, -0.2],
        };
        for i in 0..50 {
            let x = (i as f64 + 0.5) / 50.0;
            let t = 0.37 + 0.11 * i as f64;
            let mut sum = 0.0;
            for n in 1..=3 {
                let (l, r) = traveling_decomposition(
                    n,
                    &coeffs,
                    c.length(),
                    ModeSpeed::Uniform(c.wave_speed()),
                    x,
                    t,
                )
                .unwrap();
                sum += l + r;
            }
            let standing = string_solution(&coeffs, &c, x, t);
            assert!((sum - standing).abs() < 1e-12);
        }
    }

    #[test]
    fn beam_mode_translates_at_its_own_speed() {
        // For the dispersive split the n = 2 component moves at c_2 = 2 pi.
        let coeffs = FourierCoefficients {
            s: vec![0.0, 1.0],
            s_dot: vec![0.0, 0.5],
        };
        let speed = ModeSpeed::Dispersive { sigma: 1.0 };
        let c2 = speed.speed(2, 1.0);
        assert!((c2 - 2.0 * PI).abs() < 1e-14);
        let (x, t, dt) = (0.31, 0.9, 0.07);
        let (l1, _) = traveling_decomposition(2, &coeffs, 1.0, speed, x, t).unwrap();
        let (l2, _) =
            traveling_decomposition(2, &coeffs, 1.0, speed, x + c2 * dt, t - dt).unwrap();
        assert!((l1 - l2).abs() < 1e-10);
    }

    #[test]
    fn dispersion_rows_match_closed_forms() {
        let rows = dispersion_table(&cfg(1.0, 1.0), 1.0, 3);
        assert!((rows[0].omega_wave - PI).abs() < 1e-14);
        assert!((rows[0].wave_speed - 1.0).abs() < 1e-14);
        assert!((rows[0].omega_beam - PI * PI).abs() < 1e-12);
        assert!((rows[0].beam_speed - PI).abs() < 1e-14);
        // Frequency ratios: linear for the string, quadratic for the beam.
        assert!((rows[1].omega_wave / rows[0].omega_wave - 2.0).abs() < 1e-14);
        assert!((rows[1].omega_beam / rows[0].omega_beam - 4.0).abs() < 1e-13);
        assert!((rows[2].beam_speed / rows[0].beam_speed - 3.0).abs() < 1e-14);
    }

    #[test]
    fn string_and_pinned_beam_share_projections() {
        // Identical initial data projected on the string modes and on the
        // pinned-pinned beam modes must agree through <psi_n, u0> =
        // sqrt(l/2) S_n.
        let l = 1.0;
        let c = cfg(l, 1.0);
        let settings = QuadratureSettings::for_mode_count(6);
        let u0 = Profile::Pluck {
            position: 0.4,
            height: 1.0,
        };
        let fc = fourier_coefficients(&u0, &Profile::Zero, &c, &settings, 6).unwrap();
        let modes = build_modes(
            ResolvedCase::canonical(SupportCase::Aa),
            &BeamGeometry::new(l).unwrap(),
            6,
        )
        .unwrap();
        let state = InitialState {
            u0,
            v0: Profile::Zero,
        };
        let pc = project(&state, &modes, &settings).unwrap();
        for (p, s) in pc.p.iter().zip(&fc.s) {
            assert!(
                (p - (l / 2.0f64).sqrt() * s).abs() < 1e-12,
                "{p} vs {}",
                (l / 2.0f64).sqrt() * s
            );
        }
    }

    #[test]
    fn config_validation() {
        assert!(StringConfig::new(0.0, 1.0).is_err());
        assert!(StringConfig::new(1.0, 0.0).is_err());
        let coeffs = FourierCoefficients {
            s: vec![1.0],
            s_dot: vec![0.0],
        };
        assert!(traveling_decomposition(2, &coeffs, 1.0, ModeSpeed::Uniform(1.0), 0.5, 0.0)
            .is_err());
    }
}
