//! Structural chain maps on the cube complexes: the basepoint action, the
//! conjugation involution `I`, the divided map `T` with `id + e_q I = hT`,
//! and the acyclic differential `nu` on the even complex mod 2.

use std::collections::BTreeMap;

use crate::coef::Coef;
use crate::homalg::complex::{BigradedFreeComplex, PieceGen, SparseCol};
use crate::homalg::matrix::{FpMat, IntMat};
use crate::ring::Mono;

use super::cube::{CubeData, BN_RING};

/// Images of the Bar-Natan module generators under the conjugation
/// involution: `I(v,S) = (-1)^{Split(v)} sum_{T<=S} (-1)^{|T|} h^{|S|-|T|} (v,T)`.
pub fn involution_cols(cube: &CubeData) -> Vec<SparseCol> {
    let mut cols = Vec::with_capacity(cube.rank);
    for v in 0..cube.verts.len() {
        let split = cube.verts[v].resolution.split_count;
        let vsign = if split % 2 == 0 { 1i64 } else { -1 };
        for mask in 0..cube.vertex_rank(v) as u32 {
            let s = mask.count_ones() as u16;
            let mut col: SparseCol = vec![];
            // enumerate submasks of mask
            let mut t = mask;
            loop {
                let tl = t.count_ones() as u16;
                let sign = if tl % 2 == 0 { vsign } else { -vsign };
                col.push((
                    cube.gen_index(v, t) as u32,
                    Mono::h_pow(Coef::from_i64(sign), s - tl),
                ));
                if t == 0 {
                    break;
                }
                t = (t - 1) & mask;
            }
            col.sort_by_key(|e| e.0);
            cols.push(col);
        }
    }
    cols
}

/// The sign `e_q` with `x + e_q I(x)` divisible by `h` for every `x` of
/// quantum grading `q`; it is `-(-1)^{|S| + Split(v)}`, which depends only
/// on `q`.
pub fn eps_q(cube: &CubeData, q: i32) -> i64 {
    for v in 0..cube.verts.len() {
        for mask in 0..cube.vertex_rank(v) as u32 {
            if cube.grading(v, mask).1 == q {
                let parity =
                    (mask.count_ones() as usize + cube.verts[v].resolution.split_count) % 2;
                return if parity == 0 { -1 } else { 1 };
            }
        }
    }
    // below every generator the parity continues the alternation
    let (v, mask) = (0, 0);
    let base_q = cube.grading(v, mask).1;
    let parity = (cube.verts[v].resolution.split_count) % 2;
    let base = if parity == 0 { -1i64 } else { 1 };
    if (base_q - q) % 4 == 0 {
        base
    } else {
        -base
    }
}

/// Decompose a module-coefficient vector into a graded-piece basis.
fn decompose(
    basis: &[PieceGen],
    vec: &BTreeMap<u32, Mono>,
) -> Vec<Coef> {
    let index: BTreeMap<PieceGen, usize> = basis
        .iter()
        .copied()
        .enumerate()
        .map(|(i, b)| (b, i))
        .collect();
    let mut out = vec![Coef::ZERO; basis.len()];
    for (g, m) in vec {
        if !m.c.is_zero() {
            let pg = PieceGen {
                gen: *g,
                hpow: m.k,
                xpart: false,
            };
            out[index[&pg]] = out[index[&pg]].add(&m.c);
        }
        if !m.x.is_zero() {
            let pg = PieceGen {
                gen: *g,
                hpow: m.k - 1,
                xpart: true,
            };
            out[index[&pg]] = out[index[&pg]].add(&m.x);
        }
    }
    out
}

/// Piece-level matrix of the conjugate-linear operator with the given
/// module columns (the involution `I`): `f(m g) = conj(m) f(g)`.
pub fn conj_op_matrix(
    c: &BigradedFreeComplex,
    cols: &[SparseCol],
    q: i32,
    i: i32,
) -> IntMat {
    let piece = c.graded_piece(q, Some(i..=i));
    let basis = piece.basis_at(i);
    let mut m = IntMat::zero(basis.len(), basis.len());
    for (j, pg) in basis.iter().enumerate() {
        let factor = if pg.xpart {
            Mono::x_h_pow(Coef::ONE, pg.hpow + 1)
        } else {
            Mono::h_pow(Coef::ONE, pg.hpow)
        };
        let mut acc: BTreeMap<u32, Mono> = BTreeMap::new();
        for (g, mm) in &cols[pg.gen as usize] {
            let term = factor.conj_x().mul(mm, BN_RING);
            if term.is_zero() {
                continue;
            }
            let e = acc.entry(*g).or_insert(Mono::ZERO);
            *e = e.add(&term, BN_RING);
        }
        acc.retain(|_, mm| !mm.is_zero());
        for (r, v) in decompose(basis, &acc).into_iter().enumerate() {
            m[(r, j)] = v;
        }
    }
    m
}

/// Matrix of `T = (id + e_q I)/h` from the piece at `q` to the piece at
/// `q + 2`, in homological degree `i`.
pub fn chain_t_matrix(
    c: &BigradedFreeComplex,
    cols: &[SparseCol],
    cube: &CubeData,
    q: i32,
    i: i32,
) -> IntMat {
    let eps = eps_q(cube, q);
    let src = c.graded_piece(q, Some(i..=i));
    let dst = c.graded_piece(q + 2, Some(i..=i));
    let sb = src.basis_at(i);
    let db = dst.basis_at(i);
    let conj = conj_op_matrix(c, cols, q, i);
    let dst_index: BTreeMap<PieceGen, usize> = db
        .iter()
        .copied()
        .enumerate()
        .map(|(k, b)| (b, k))
        .collect();
    let mut m = IntMat::zero(db.len(), sb.len());
    for (j, _) in sb.iter().enumerate() {
        for (r, pg) in sb.iter().enumerate() {
            let mut v = conj[(r, j)].mul(&Coef::from_i64(eps));
            if r == j {
                v = v.add(&Coef::ONE);
            }
            if v.is_zero() {
                continue;
            }
            // divide h^hpow (X h^{hpow}) by h
            assert!(pg.hpow >= 1, "x + e_q I(x) must be divisible by h");
            let t = PieceGen {
                gen: pg.gen,
                hpow: pg.hpow - 1,
                xpart: pg.xpart,
            };
            let k = dst_index[&t];
            m[(k, j)] = m[(k, j)].add(&v);
        }
    }
    m
}

/// Piece-level matrix of multiplication by `X` (bidegree `(0,-2)`), for a
/// complex over the exterior or Bar-Natan ring.
pub fn x_action_matrix(c: &BigradedFreeComplex, q: i32, i: i32) -> IntMat {
    let src = c.graded_piece(q, Some(i..=i));
    let dst = c.graded_piece(q - 2, Some(i..=i));
    let sb = src.basis_at(i);
    let db = dst.basis_at(i);
    let dst_index: BTreeMap<PieceGen, usize> = db
        .iter()
        .copied()
        .enumerate()
        .map(|(k, b)| (b, k))
        .collect();
    let has_h = c.coeffs.has_h();
    let mut m = IntMat::zero(db.len(), sb.len());
    for (j, pg) in sb.iter().enumerate() {
        let t = if !pg.xpart {
            Some(PieceGen {
                gen: pg.gen,
                hpow: pg.hpow,
                xpart: true,
            })
        } else if has_h {
            // X * X h^k = X h^{k+1}
            Some(PieceGen {
                gen: pg.gen,
                hpow: pg.hpow + 1,
                xpart: true,
            })
        } else {
            None // X^2 = 0 in the exterior ring
        };
        if let Some(t) = t {
            m[(dst_index[&t], j)] = Coef::ONE;
        }
    }
    m
}

/// Shumakovitch's map on the even complex mod 2: replace one `X` label by
/// `1`, summed over all `X` labels. Matrix from the piece at `q` to the
/// piece at `q + 2` in degree `i`.
pub fn nu_matrix(even: &BigradedFreeComplex, cube: &CubeData, q: i32, i: i32) -> FpMat {
    let src = even.graded_piece(q, Some(i..=i));
    let dst = even.graded_piece(q + 2, Some(i..=i));
    let sb = src.basis_at(i);
    let db = dst.basis_at(i);
    let dst_index: BTreeMap<PieceGen, usize> = db
        .iter()
        .copied()
        .enumerate()
        .map(|(k, b)| (b, k))
        .collect();
    let mut m = FpMat::zero(2, db.len(), sb.len());
    for (j, pg) in sb.iter().enumerate() {
        let (v, mask) = cube.gen_at(pg.gen as usize);
        // nu(g) = sum over set bits of the module mask
        let mut add = |t: PieceGen| {
            let r = dst_index[&t];
            m[(r, j)] = (m[(r, j)] + 1) % 2;
        };
        for t in 0..cube.verts[v].free_circles.len() {
            if mask >> t & 1 == 1 {
                let g2 = cube.gen_index(v, mask & !(1 << t)) as u32;
                add(PieceGen {
                    gen: g2,
                    hpow: 0,
                    xpart: pg.xpart,
                });
            }
        }
        if pg.xpart {
            // nu(X g) = g + X nu(g)
            add(PieceGen {
                gen: pg.gen,
                hpow: 0,
                xpart: false,
            });
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{PlanarDiagram, FIGURE_EIGHT_PD, TREFOIL_PD};
    use crate::khovanov::cube::barnatan_complex;
    use crate::khovanov::{build, KhovanovPackage};

    fn piece_d(c: &BigradedFreeComplex, q: i32, i: i32) -> IntMat {
        let p = c.graded_piece(q, Some(i..=i + 1));
        p.matrix(c, i)
    }

    fn check_ranges(pkg: &KhovanovPackage) -> (Vec<i32>, Vec<i32>) {
        let qs: Vec<i32> = {
            let lo = *pkg.barnatan.q_range().start() - 6;
            let hi = *pkg.barnatan.q_range().end() + 2;
            (lo..=hi).collect()
        };
        let is: Vec<i32> = {
            let r = pkg.barnatan.h_range();
            (*r.start() - 1..=*r.end() + 1).collect()
        };
        (qs, is)
    }

    #[test]
    fn unknot_involution() {
        let d = PlanarDiagram::unknot();
        let pkg = build(&d);
        let cols = involution_cols(&pkg.cube);
        // I(1) = 1; on the full basis I(X) = h - X
        assert_eq!(cols.len(), 1);
        assert_eq!(cols[0], vec![(0, Mono::one())]);
        let m = conj_op_matrix(&pkg.barnatan, &cols, -1, 0);
        // basis at q = -1: {h*1, X*1}; I(h) = h = h*1, I(X) = h - X
        assert_eq!(m[(0, 0)], Coef::ONE);
        assert_eq!(m[(1, 0)], Coef::ZERO);
        assert_eq!(m[(0, 1)], Coef::ONE);
        assert_eq!(m[(1, 1)], Coef::from_i64(-1));
    }

    #[test]
    fn involution_is_a_chain_involution() {
        for pd in [TREFOIL_PD, FIGURE_EIGHT_PD] {
            let d = PlanarDiagram::parse_pd(pd).unwrap();
            let pkg = build(&d);
            let cols = involution_cols(&pkg.cube);
            let (qs, is) = check_ranges(&pkg);
            for &q in &qs {
                for &i in &is {
                    let a = conj_op_matrix(&pkg.barnatan, &cols, q, i);
                    // I * I = id
                    let sq = a.mul(&a);
                    assert_eq!(sq, IntMat::identity(sq.rows), "I^2 at ({i},{q})");
                    // I d = d I
                    let b = conj_op_matrix(&pkg.barnatan, &cols, q, i + 1);
                    let dd = piece_d(&pkg.barnatan, q, i);
                    assert_eq!(b.mul(&dd), dd.mul(&a), "I chain map at ({i},{q})");
                }
            }
        }
    }

    #[test]
    fn t_satisfies_defining_identity_and_is_chain() {
        for pd in [TREFOIL_PD, FIGURE_EIGHT_PD] {
            let d = PlanarDiagram::parse_pd(pd).unwrap();
            let pkg = build(&d);
            let cols = involution_cols(&pkg.cube);
            let (qs, is) = check_ranges(&pkg);
            for &q in &qs {
                for &i in &is {
                    // h T = id + e_q I, checked through the h-multiplication
                    // embedding of pieces: T is built by exact division, so
                    // the identity holds by construction; check chain map
                    let t1 = chain_t_matrix(&pkg.barnatan, &cols, &pkg.cube, q, i + 1);
                    let t0 = chain_t_matrix(&pkg.barnatan, &cols, &pkg.cube, q, i);
                    let d_src = piece_d(&pkg.barnatan, q, i);
                    let d_dst = piece_d(&pkg.barnatan, q + 2, i);
                    assert_eq!(
                        t1.mul(&d_src),
                        d_dst.mul(&t0),
                        "T chain map at ({i},{q}) for {pd}"
                    );
                }
            }
        }
    }

    #[test]
    fn t_reduces_to_nu_mod_two_and_nu_relations() {
        for pd in [TREFOIL_PD, FIGURE_EIGHT_PD] {
            let d = PlanarDiagram::parse_pd(pd).unwrap();
            let pkg = build(&d);
            let cols = involution_cols(&pkg.cube);
            let even2 = pkg.even.mod_p(2);
            let (qs, is) = check_ranges(&pkg);
            for &q in &qs {
                for &i in &is {
                    let nu = nu_matrix(&even2, &pkg.cube, q, i);
                    // nu^2 = 0
                    let nu2 = nu_matrix(&even2, &pkg.cube, q + 2, i);
                    let z = nu2.mul(&nu);
                    assert!(
                        (0..z.rows).all(|r| (0..z.cols).all(|c| z[(r, c)] == 0)),
                        "nu^2 = 0 at ({i},{q})"
                    );
                    // X nu + nu X = id
                    let x_hi = FpMat::from_int(&x_action_matrix(&even2, q + 2, i), 2);
                    let x_lo = FpMat::from_int(&x_action_matrix(&even2, q, i), 2);
                    let nu_lo = nu_matrix(&even2, &pkg.cube, q - 2, i);
                    let lhs = x_hi.mul(&nu).err_add(&nu_lo.mul(&x_lo));
                    let idm = FpMat::identity(2, lhs.rows);
                    assert!(
                        (0..lhs.rows).all(|r| (0..lhs.cols).all(|c| lhs[(r, c)] == idm[(r, c)])),
                        "X nu + nu X = id at ({i},{q})"
                    );
                    // nu chain map mod 2
                    let dd = FpMat::from_int(&piece_d(&pkg.even, q, i), 2);
                    let dd_hi = FpMat::from_int(&piece_d(&pkg.even, q + 2, i), 2);
                    let nu_next = nu_matrix(&even2, &pkg.cube, q, i + 1);
                    assert_eq!(
                        mat_eq(&nu_next.mul(&dd), &dd_hi.mul(&nu)),
                        true,
                        "nu chain map at ({i},{q})"
                    );
                    // T mod (2, h-structure) equals nu: compare on the
                    // scalar part of the piece bases
                    let t = chain_t_matrix(&pkg.barnatan, &cols, &pkg.cube, q, i);
                    let tf = FpMat::from_int(&t, 2);
                    assert!(t_matches_nu(&pkg, &even2, &tf, &nu, q, i));
                }
            }
        }
    }

    fn mat_eq(a: &FpMat, b: &FpMat) -> bool {
        a.rows == b.rows
            && a.cols == b.cols
            && (0..a.rows).all(|r| (0..a.cols).all(|c| a[(r, c)] == b[(r, c)]))
    }

    /// Rows/columns of the Bar-Natan piece with `hpow = 0` map onto the
    /// even piece mod h; on those, T agrees with nu mod 2.
    fn t_matches_nu(
        pkg: &KhovanovPackage,
        even2: &BigradedFreeComplex,
        t: &FpMat,
        nu: &FpMat,
        q: i32,
        i: i32,
    ) -> bool {
        let bn_src = pkg.barnatan.graded_piece(q, Some(i..=i));
        let bn_dst = pkg.barnatan.graded_piece(q + 2, Some(i..=i));
        let ev_src = even2.graded_piece(q, Some(i..=i));
        let ev_dst = even2.graded_piece(q + 2, Some(i..=i));
        let sb = bn_src.basis_at(i);
        let db = bn_dst.basis_at(i);
        let esb = ev_src.basis_at(i);
        let edb = ev_dst.basis_at(i);
        for (js, pgs) in esb.iter().enumerate() {
            let Some(jb) = sb.iter().position(|b| b == pgs) else {
                return false;
            };
            for (rs, pgd) in edb.iter().enumerate() {
                let Some(rb) = db.iter().position(|b| b == pgd) else {
                    return false;
                };
                if nu[(rs, js)] != t[(rb, jb)] {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn x_action_commutes_with_differential() {
        let d = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap();
        let cube = CubeData::new(&d);
        let bn = barnatan_complex(&d, &cube);
        for q in bn.q_range().clone().rev().take(8) {
            for i in bn.h_range() {
                let x_src = x_action_matrix(&bn, q, i);
                let x_dst = x_action_matrix(&bn, q, i + 1);
                let d_hi = piece_d(&bn, q, i);
                let d_lo = piece_d(&bn, q - 2, i);
                assert_eq!(x_dst.mul(&d_hi), d_lo.mul(&x_src), "X chain at ({i},{q})");
            }
        }
    }
}

impl FpMat {
    fn err_add(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = FpMat::zero(self.p, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = (self[(r, c)] + other[(r, c)]) % self.p;
            }
        }
        out
    }
}
