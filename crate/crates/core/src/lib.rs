//! Exact construction and verification of quasimap J-function series for
//! complete intersections in the Grassmannian `Gr(2, n)`.

pub mod algebra;
pub mod cohomology;
pub mod error;
pub mod hypergeometric;
pub mod operator;
pub mod residue;
pub mod scalar;
pub mod verifier;

pub use algebra::frat::FRat;
pub use algebra::laurent::Laurent;
pub use algebra::linrat::LinRat;
pub use algebra::poly::{Monomial, SparsePoly, Vars};
pub use algebra::ratfunc::{Poly, RatFunc};
pub use algebra::series::QSeries;
pub use algebra::unipoly::UniPoly;
pub use algebra::urat::URat;
pub use error::{Error, Result};
pub use scalar::{Field, Ring, Q};

/// Fixed-point values: rational functions of `h` over the rationals.
pub type HRat = LinRat<Q>;
/// Laurent expansions in `h^-1` over the rationals.
pub type HLaurent = Laurent<Q>;
