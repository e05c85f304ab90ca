//! Exact slope bounds for hyperelliptic fibrations with positive relative
//! irregularity.
//!
//! * [`bounds`]: the sharp bound λ_{g,q_f}, the conjectured bound
//!   `4(g-1)/(g-q_f)` and the coefficient system behind the bound.
//! * [`indices`]: relative invariants `K_f²`, `χ_f`, `e_f` from singularity
//!   indices.
//! * [`cone`]: the index cone as an exact linear program, with dual
//!   certificates and a brute-force vertex oracle.
//! * [`resolution`]: singularity forests, index extraction and the direct
//!   double-cover computation.
//! * [`families`]: the families attaining the bound.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod bounds;
pub mod cone;
pub mod error;
pub mod families;
pub mod indices;
pub mod linear_form;
pub mod profile;
pub mod rational;
pub mod resolution;

pub use bounds::{bound_difference, bound_gap, conjecture_bound, lambda_bound, proof_coefficients, CoefficientSet};
pub use cone::{
    build_constraint, build_program, extremal_ray, minimize, verify_sharpness, ConeProgram, ConstraintId,
    OptimizationResult, SharpnessReport,
};
pub use error::{Error, Result};
pub use families::{
    build_product_quotient, build_ruled_cover, hirzebruch_intersection, ExampleReport, ProductQuotientParams,
    RuledCoverParams,
};
pub use indices::{
    n_from_indices, relative_invariants, slope, xiao_coefficients, RelativeInvariants, SingularityIndexVector,
};
pub use linear_form::LinearForm;
pub use profile::{validate_profile, GenusProfile};
pub use rational::Rational;
pub use resolution::{
    classify_indices, compare_paths, minus_one_count, resolve_invariants, s2_from_n, validate_forest, Fiber,
    SingularityForest, SingularityNode, Strictness,
};
