//! Large-k asymptotics of the critical-line norms and the verification harness
//! for the two main expansions.

pub mod equilibrium;
pub mod mrs;
pub mod qk;
pub mod reference;
pub mod rows;
pub mod stadium;
pub mod theorems;
pub mod vanlessen;

pub use equilibrium::{
    closed_form_checks, lagrange_multiplier, lk_eval, lk_expansion, EquilibriumDensity, LagrangeMultiplier,
};
pub use mrs::{ak_eval, bk_expansion, f_b_eps, gamma_k, solve_bk, v_k, v_k_prime};
pub use qk::{qk_eval, QRoute, QkEvaluator};
pub use reference::{ref_asymptotics_ferro, ref_free_energy_disordered, FerroAsymptotics};
pub use stadium::Stadium;
pub use theorems::{
    quarter_octave_grid, theorem1_report, theorem2_fit, ReportRow, Theorem2Fit, Theorem2Row, TheoremReport,
};
pub use vanlessen::{h_vanlessen, ln_norm_expansion, vanlessen_from, MrsSolution, VanlessenEstimate};
