//! Exact computation of even, odd, and Bar-Natan Khovanov complexes of
//! knots, local even-odd triples, and the associated family of
//! concordance-style invariants.

pub mod coef;
pub mod diagrams;
pub mod homalg;
pub mod jones;
pub mod khovanov;
pub mod leo;
pub mod invariants;

pub use coef::Coef;
pub use diagrams::{PlanarDiagram, Resolution};
pub use homalg::{BigradedFreeComplex, TrackedEquivalence};
pub use ring::{BaseRing, CoefficientSpec, Mono};

pub mod ring;
