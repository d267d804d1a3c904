//! Alexander polynomials of oriented link diagrams computed as weighted
//! perfect-matching sums, together with checks of how those sums split
//! along a Murasugi decomposition.

pub mod dimer;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod laurent;
pub mod linkdiag;
pub mod murasugi;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use linkdiag::LinkDiagram;
