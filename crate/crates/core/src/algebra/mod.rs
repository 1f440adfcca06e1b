//! Exact arithmetic substrate.

pub mod frat;
pub mod laurent;
pub mod linalg;
pub mod linrat;
pub mod poly;
pub mod ratfunc;
pub mod series;
pub mod unipoly;
pub mod urat;
pub mod xexpand;
