//! Exact homological algebra for sparse bigraded complexes.

pub mod complex;
pub mod homology;
pub mod matrix;
pub mod simplify;

pub use complex::{BigradedFreeComplex, GradedPiece, PieceGen, SparseCol};
pub use homology::{
    bockstein, homology, homology_at, homology_fp, homology_z, homology_zmod, induced_fp,
    induced_z, AtHomology, FpHomology, HomCoeffs, HomologyError, Presentation, ZHomology,
};
pub use matrix::{smith_normal_form, FpMat, IntMat, Snf};
pub use simplify::{simplify, verify_equivalence, TrackedEquivalence};
