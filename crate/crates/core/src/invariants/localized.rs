//! The stable localized target of a triple's deformed side.
//!
//! Below every generator the quantum-grading pieces of a complex over
//! `Z[h]` or the Bar-Natan ring repeat under multiplication by `h`, which
//! realizes the localization concretely: the target of the maps
//! `i: H^{0,q}(D) -> H^{0,q}(h^{-1}D)` is the piece at a certified stable
//! grading `q0`, and `i` itself is multiplication by the appropriate power
//! of `h`.

use thiserror::Error;

use crate::homalg::complex::{BigradedFreeComplex, PieceGen};
use crate::homalg::matrix::IntMat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LocalizedError {
    #[error("no generators in homological degrees -1..=1")]
    Empty,
    #[error("stability certificate failed: piece bases at q0 and q0-2 do not match")]
    Unstable,
    #[error("stable homology is not free of rank {expected} in degree 0 (found rank {found}, torsion {torsion})")]
    WrongStableGroup {
        expected: usize,
        found: usize,
        torsion: usize,
    },
    #[error("stable homology does not vanish in homological degree {0}")]
    NotConcentrated(i32),
    #[error("stable quantum grading {0} has the wrong parity")]
    Parity(i32),
}

/// Certified stable data of the deformed side `D`.
pub struct LocalizedTarget {
    /// Stable quantum grading; `h: piece(q+2) -> piece(q)` is a chain
    /// isomorphism for every `q <= q0`.
    pub q0: i32,
    /// Rank of the stable degree-0 homology over the base (2 for
    /// unreduced triples, 1 for reduced ones).
    pub rank: usize,
}

/// The stable grading: two below the smallest effective generator grading
/// near homological degree zero, adjusted to `parity`.
pub fn stable_q0(d: &BigradedFreeComplex, parity: i32) -> Result<i32, LocalizedError> {
    let min_q = d
        .gens
        .iter()
        .filter(|g| (-1..=1).contains(&g.0))
        .map(|g| g.1)
        .min()
        .ok_or(LocalizedError::Empty)?;
    let mut q0 = min_q - 2;
    if (q0 - parity).rem_euclid(2) != 0 {
        q0 -= 1;
    }
    Ok(q0)
}

/// Check that multiplication by `h` identifies the pieces at `q0` and
/// `q0 - 2` basis by basis (they are then chain isomorphic, since the
/// differential is `h`-linear).
pub fn certify_stability(d: &BigradedFreeComplex, q0: i32) -> Result<(), LocalizedError> {
    let lo = d.graded_piece(q0 - 2, None);
    let hi = d.graded_piece(q0, None);
    let r = d.h_range();
    for i in *r.start()..=*r.end() {
        let bh = hi.basis_at(i);
        let bl = lo.basis_at(i);
        if bh.len() != bl.len() {
            return Err(LocalizedError::Unstable);
        }
        for pg in bh {
            let shifted = PieceGen {
                gen: pg.gen,
                hpow: pg.hpow + 1,
                xpart: pg.xpart,
            };
            if !bl.contains(&shifted) {
                return Err(LocalizedError::Unstable);
            }
        }
    }
    Ok(())
}

/// Matrix of multiplication by `h^pow` from the piece of `d` at `q` to the
/// piece at `q - 2 pow`, in homological degree `i`.
pub fn h_power_matrix(d: &BigradedFreeComplex, q: i32, pow: u16, i: i32) -> IntMat {
    let src = d.graded_piece(q, Some(i..=i));
    let dst = d.graded_piece(q - 2 * pow as i32, Some(i..=i));
    let sb = src.basis_at(i);
    let db = dst.basis_at(i);
    let mut m = IntMat::zero(db.len(), sb.len());
    for (j, pg) in sb.iter().enumerate() {
        let t = PieceGen {
            gen: pg.gen,
            hpow: pg.hpow + pow,
            xpart: pg.xpart,
        };
        let r = db.iter().position(|x| *x == t).expect("h-multiple in piece");
        m[(r, j)] = crate::coef::Coef::ONE;
    }
    m
}

/// Validate the localized condition of Definition-style triples: the
/// stable homology is free of rank `expected_rank` concentrated in
/// homological degree 0 at gradings of parity `parity`.
pub fn localized_target(
    d: &BigradedFreeComplex,
    parity: i32,
    expected_rank: usize,
) -> Result<LocalizedTarget, LocalizedError> {
    use crate::homalg::{homology_at, HomCoeffs, Presentation};
    let q0 = stable_q0(d, parity)?;
    certify_stability(d, q0)?;
    let with = match d.coeffs.base() {
        crate::ring::BaseRing::Int => HomCoeffs::Z,
        crate::ring::BaseRing::Fp(p) => HomCoeffs::Fp(p),
    };
    let h0 = homology_at(d, 0, q0, with).pres;
    let (found, torsion) = match &h0 {
        Presentation::Z(z) => (z.free_rank(), z.torsion().len()),
        Presentation::Fp(f) => (f.dim(), 0),
    };
    if found != expected_rank || torsion != 0 {
        return Err(LocalizedError::WrongStableGroup {
            expected: expected_rank,
            found,
            torsion,
        });
    }
    let r = d.h_range();
    for i in *r.start() - 1..=*r.end() + 1 {
        if i == 0 {
            continue;
        }
        let hi = homology_at(d, i, q0, with).pres;
        if !hi.is_zero() {
            return Err(LocalizedError::NotConcentrated(i));
        }
    }
    Ok(LocalizedTarget {
        q0,
        rank: expected_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BaseRing, CoefficientSpec};

    const BN: CoefficientSpec = CoefficientSpec::BarNatanRing(BaseRing::Int);
    const ZH: CoefficientSpec = CoefficientSpec::PolyH(BaseRing::Int);

    #[test]
    fn trivial_triple_targets() {
        let d = BigradedFreeComplex::free_rank_one(BN, 1);
        let t = localized_target(&d, 1, 2).unwrap();
        assert_eq!(t.q0, -1);
        let dr = BigradedFreeComplex::free_rank_one(ZH, 0);
        let t = localized_target(&dr, 0, 1).unwrap();
        assert_eq!(t.q0, -2);
    }

    #[test]
    fn wrong_rank_is_rejected() {
        let d = BigradedFreeComplex::free_rank_one(ZH, 0);
        assert!(matches!(
            localized_target(&d, 0, 2),
            Err(LocalizedError::WrongStableGroup { .. })
        ));
    }

    #[test]
    fn h_power_matrix_is_square_iso_in_stable_range() {
        let d = BigradedFreeComplex::free_rank_one(BN, 1);
        let m = h_power_matrix(&d, -1, 2, 0);
        assert_eq!((m.rows, m.cols), (2, 2));
    }
}
