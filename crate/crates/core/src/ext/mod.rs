pub mod cohomology;
pub mod element;
pub mod json;
pub mod schouten;
pub mod solve;
pub mod star;

pub use cohomology::{cohomology_dims, predicted_dims};
pub use element::{ad_ext, contract, derivation_ext, ext_mul, ExtElement};
pub use schouten::{levi_r, relative_r, schouten, standard_r, yb_map};
pub use solve::{solve_schouten_coboundary, solve_schouten_coboundary_in};
pub use star::{PerturbedDifferential, StarAlgebra};
