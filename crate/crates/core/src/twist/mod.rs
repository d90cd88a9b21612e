pub mod associator;
pub mod build;
pub mod gauge;
pub mod json;
pub mod lemmas;

pub use associator::{
    adapt_form, builtin_phi, detect_form_scaling, hc_associator, pentagon_residual,
    satisfies_theta_constraint, twist_conjugate, validate_associator, Associator, Invariance,
};
pub use build::{
    build_relative_twist, deviation_xi, is_hc_normalized, is_theta_symmetric, ladder_chain,
    twist_residual, BuildOptions, BuildReport, Ladder, Twist,
};
pub use gauge::{gauge_transform, gauge_witness, random_witness, GaugeOptions, GaugeWitness};
