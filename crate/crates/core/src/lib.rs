//! Numerical library for a two-dimensional three-body system of two
//! heavy particles exchanging one light particle near a p-wave two-body
//! resonance: modified Bessel functions, effective-range two-body
//! scattering, adiabatic light-particle binding curves, a truncated
//! linear-system determinant oracle, heavy-pair bound spectra (WKB and
//! Numerov), and atom-molecule scattering observables.
//!
//! Units throughout: hbar = 1, reduced mass mu = 1, p-wave length scale
//! r1 = 1. Lengths in r1, the p-wave scattering area a1 in r1^2,
//! energies in hbar^2/(mu r1^2), and beta = M/mu for a heavy mass M.

// validation guards are written `!(x > 0.0)` on purpose: the negation
// rejects NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adiabatic;
pub mod error;
pub mod heavy;
pub mod linalg;
pub mod potential;
pub mod quad;
pub mod roots;
pub mod scattering;
pub mod specfun;
pub mod truncated;
pub mod twobody;

pub use adiabatic::{
    branch1_residual, branch2_residual, default_xi_max, range_r1_scale, solve_branch, v_asympt,
    v_i0_asympt, v_ii0_asympt, xi1_asympt, xi2_asympt, Branch, BranchRoot, BranchSign, R1Scale,
};
pub use error::{Error, Result};
pub use heavy::{
    fit_spectrum_model, n0_estimate, numerov_integrate, numerov_spectrum, turning_point,
    wkb_phase_closed, wkb_phase_quadrature, wkb_spectrum, BoundSpectrum, InnerBc, Level,
    NumerovConfig, RadialSolution, SpectrumFit, SpectrumMethod, WkbPotentialKind,
};
pub use potential::{
    AsymptI0, AsymptII0, AsymptV, Clamped, CurveKind, GridSpec, Potential, PotentialCurve,
    SquareWell, Truncated, CURVE_XI_MAX,
};
pub use scattering::{
    atom_molecule_length, cross_section, observables, resonance_positions, resonance_scan,
    wavenumber_from_energy, ResonancePosition, ResonanceScanPoint, ScatteringObservables,
    K_VALIDITY_LIMIT,
};
pub use specfun::{bessel_k, bessel_k_scaled, bessel_k_scaled_upto, BesselEval, EULER_GAMMA};
pub use truncated::{
    build_determinant, build_determinant_scaled, find_det_roots, hankel_imag_as_k, DetRoot,
    DeterminantGrid, Sector,
};
pub use twobody::{
    epsilon1_asymptotic, inv_t0, inv_t1, p_wave_pole, r0_lower_bound, t_matrix, ModelParams,
    PWaveBoundState,
};
