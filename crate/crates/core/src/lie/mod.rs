pub mod algebra;
pub mod cartan;
pub mod levi;
pub mod realization;

pub use algebra::{AlgElement, Generator, LieAlgebra};
pub use cartan::{CartanType, Series, SimpleType};
pub use levi::{LeviDecomposition, Subdiagram};
