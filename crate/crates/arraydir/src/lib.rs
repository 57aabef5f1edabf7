//! Directivity evaluation and element-placement optimization for 3-D
//! antenna arrays with `sin^u(θ)cos^v(θ)` element patterns.
//!
//! The crate provides:
//!
//! * closed-form directivity with an independent quadrature oracle
//!   ([`directivity`]),
//! * the plane-constrained placement objective for omnidirectional
//!   elements and its sharp lower bound ([`omni`]),
//! * a deterministic grid design built on a first-minimum line search
//!   ([`oupa`]),
//! * genetic refinement of element coordinates ([`ga`]),
//! * steered linear/circular references and hexagonal lattices
//!   ([`baselines`]),
//! * a batch CLI with JSON/CSV output ([`cli`]).
//!
//! Run `cargo run --release -p arraydir -- --help` for the command-line
//! surface, or see the `examples/` directory for library usage.

pub mod baselines;
pub mod cli;
pub mod directivity;
pub mod error;
pub mod ga;
pub mod geometry;
pub mod kernel;
pub mod omni;
pub mod oupa;
pub mod quad;
pub mod report;
pub mod spec_file;

pub use directivity::{
    array_factor, beta_fn, directivity_analytic, directivity_quadrature, radiation_intensity,
    DirectivityReport, ElementPattern,
};
pub use error::{Error, Result};
pub use ga::{
    ga_marginal, ga_optimize, ga_stall, hyperparameter_select, GaConfig, GaProblem, GaRunReport,
    GaVariant,
};
pub use geometry::{
    convex_hull_area, lift_to_plane, pairwise_differences, plane_constraint_z, rotation_matrix,
    unit_observation_vector, ArrayLayout, DirectionSpec, Mat3, Vec3,
};
pub use kernel::sinc_kernel_derivative;
pub use omni::{
    directivity_from_planar, f1_omni, f2_omni, objective_g, pair_kernel_f, CoordBox,
    ObjectiveValue, PlanarSolution,
};
pub use oupa::{
    oupa, psi_indices, quasi_square_factors, sev, upa_layout, upa_pair_distance, upa_z_mn,
    OupaResult, SevConfig, UpaSpec,
};
pub use baselines::{dmin_sweep, uca_steered, uhpa_layout, ula_steered, GeometryKind, SteeredArray};
