//! Exact computer algebra and a numeric q-series engine for Hecke
//! vector-forms: construct the hauptbuch G_U, the vector-form F_U, and the
//! transfer matrix of a quasiautomorphic form, then verify the
//! transformation laws under the group generators both symbolically (exact
//! rational arithmetic) and numerically (μ = 3 q-expansions).

pub mod combinatorics;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod qseries;
pub mod vectorform;

pub use error::{Error, Result};
pub use poly::{LaurentPoly, Monomial, Rational, RingHom, Symbol};
