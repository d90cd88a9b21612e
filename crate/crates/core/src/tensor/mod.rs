pub mod element;
pub mod env;
pub mod hc;
pub mod invariants;
pub mod json;
pub mod mono;
pub mod series;

pub use element::TensorElement;
pub use env::Enveloping;
pub use hc::{hc_project, HcVariant};
pub use invariants::{
    invariant_subspace_basis, solve_hochschild_coboundary, solve_hochschild_coboundary_in, Group,
    PivotOrder,
};
pub use mono::{SlotMono, TensorMono};
pub use series::HbarSeries;
