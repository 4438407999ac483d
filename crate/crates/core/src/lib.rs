//! Exact computations with bands: the band zoo, null-set calculus, spectra,
//! monomial band models of embedded affine varieties, tropicalization through
//! 𝕋- and ℝ𝕋-points, and finite diagrams of embeddings.

pub mod algebra;
pub mod arith;
pub mod band;
pub mod cli;
pub mod limits;
pub mod poly;
pub mod report;
pub mod spectra;
pub mod tropical;
pub mod zoo;
