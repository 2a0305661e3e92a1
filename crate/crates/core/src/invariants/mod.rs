//! Numerical invariants of local even-odd triples.

pub mod localized;
