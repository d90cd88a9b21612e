pub mod error;
pub mod ext;
pub mod lie;
pub mod linalg;
pub mod rational;
pub mod tensor;
pub mod twist;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rat;
