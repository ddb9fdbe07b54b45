//! Finite topological spaces, epi-reflective subcategories, closure operators
//! and the codensity-style monads they induce.

pub mod canon;
pub mod cat;
pub mod closure;
pub mod error;
pub mod hom;
pub mod inject;
pub mod map;
pub mod monad;
pub mod space;
pub mod workbench;

pub use error::{Error, Result};
pub use map::CMap;
pub use space::{FinSpace, PointSet, Space};
