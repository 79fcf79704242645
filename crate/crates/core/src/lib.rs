//! Exact computations in the Hopf algebra of planar decorated rooted trees.

pub mod algebra;
pub mod cm;
pub mod error;
pub mod forest;
pub mod frabetti;
pub mod hopf;
pub mod liealg;
pub mod matrix;
pub mod nonplanar;
pub mod pairing;
pub mod selfcheck;
pub mod series;
pub mod shuffle;

pub use algebra::{Coeff, Element, ForestTensor, LinComb, Monomial, Tensor};
pub use error::{Error, Result};
pub use forest::{Decoration, DecorationSet, Forest, PlanarTree, VertexRef};
