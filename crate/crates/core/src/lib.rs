//! Spectral solver for free bending vibrations of a slender beam on (0, l).
//!
//! The library covers nine support configurations of the beam ends. Four of
//! them have closed-form spectra; the rest are solved by scanning the scaled
//! characteristic determinant. Normalized eigenmodes feed an exact-in-time
//! modal evolution of the initial-value problem, a vibrating-string
//! comparison lives alongside, and a staggered-grid finite-difference oracle
//! cross-checks eigenvalues, kernel dimensions, and time-domain solutions.

pub mod error;
pub mod evolution;
pub mod fdoracle;
pub mod modes;
pub mod quadrature;
pub mod spectrum;
pub mod string;
pub mod supports;

pub use error::{BeamError, Result};
pub use evolution::{
    coefficients_at, evaluate_solution, modal_energy, project, unitary_phase_check, InitialState,
    MaterialParams, ModalCoefficients, Profile, SolutionFrame,
};
pub use fdoracle::{
    adjoint_identity_check, assemble_operator, difference_matrix, leapfrog_evolve,
    DifferenceMatrix, DiscreteOperator, OracleTrajectory, StaggeredGrid,
};
pub use modes::{build_mode, build_modes, gram_matrix, EigenMode, ModeShape, ShapeForm, TrigKind};
pub use quadrature::QuadratureSettings;
pub use spectrum::{
    analytic_spectrum, characteristic_function, characteristic_matrix, find_kappas, spectrum,
    zero_modes, BeamGeometry, EigenvalueRecord, LinearShape, Origin, MAX_MODE_COUNT,
};
pub use string::{
    dispersion_table, fourier_coefficients, string_solution, string_spectrum,
    traveling_decomposition, DispersionRow, FourierCoefficients, ModeSpeed, StringConfig,
    StringMode,
};
pub use supports::{
    mirror, parse_case, BoundaryConstraint, EndPoint, FactorTag, ResolvedCase, SpectrumGroup,
    SupportCase,
};
