//! Finitely generated free bigraded cochain complexes.
//!
//! Generators carry a homological and a quantum grading; the differential
//! raises the homological grading by one, preserves the quantum grading,
//! and its entries are homogeneous ring elements ([`Mono`]). Over `Z[h]`
//! and the Bar-Natan ring the generators are module generators, so the
//! underlying abelian group of the complex is recovered through
//! [`BigradedFreeComplex::graded_piece`].

use std::collections::BTreeMap;

use crate::coef::Coef;
use crate::ring::{BaseRing, CoefficientSpec, Mono};

pub type SparseCol = Vec<(u32, Mono)>;

#[derive(Clone, Debug)]
pub struct BigradedFreeComplex {
    pub coeffs: CoefficientSpec,
    /// (homological grading, quantum grading) per module generator.
    pub gens: Vec<(i32, i32)>,
    /// Differential columns: `d[g]` lists `(target, entry)` sorted by target.
    pub d: Vec<SparseCol>,
    /// Optional generator names (algebraic inputs, tests).
    pub labels: Option<Vec<String>>,
}

impl BigradedFreeComplex {
    pub fn new(coeffs: CoefficientSpec, gens: Vec<(i32, i32)>, d: Vec<SparseCol>) -> Self {
        let c = BigradedFreeComplex {
            coeffs,
            gens,
            d,
            labels: None,
        };
        c.assert_valid();
        c
    }

    /// A rank-one complex concentrated in bidegree `(0, q)`.
    pub fn free_rank_one(coeffs: CoefficientSpec, q: i32) -> Self {
        Self::new(coeffs, vec![(0, q)], vec![vec![]])
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn h_range(&self) -> std::ops::RangeInclusive<i32> {
        let lo = self.gens.iter().map(|g| g.0).min().unwrap_or(0);
        let hi = self.gens.iter().map(|g| g.0).max().unwrap_or(0);
        lo..=hi
    }

    pub fn q_range(&self) -> std::ops::RangeInclusive<i32> {
        let lo = self.gens.iter().map(|g| g.1).min().unwrap_or(0);
        let hi = self.gens.iter().map(|g| g.1).max().unwrap_or(0);
        lo..=hi
    }

    pub fn assert_valid(&self) {
        assert_eq!(self.gens.len(), self.d.len());
        for (g, col) in self.d.iter().enumerate() {
            for (t, m) in col {
                let (sh, sq) = self.gens[g];
                let (th, tq) = self.gens[*t as usize];
                assert_eq!(th, sh + 1, "differential must raise degree by 1");
                assert!(!m.is_zero());
                assert_eq!(
                    m.grade(),
                    sq - tq,
                    "entry {m} from q={sq} to q={tq} is not grading-preserving"
                );
                if !self.coeffs.has_h() {
                    assert!(m.k == 0 || (m.k == 1 && m.c.is_zero()));
                }
                if !self.coeffs.has_x() {
                    assert!(m.x.is_zero());
                }
            }
        }
        debug_assert!(self.d_squared_is_zero());
    }

    pub fn d_squared_is_zero(&self) -> bool {
        for g in 0..self.gens.len() {
            let mut acc: BTreeMap<u32, Mono> = BTreeMap::new();
            for (t, m) in &self.d[g] {
                for (t2, m2) in &self.d[*t as usize] {
                    let prod = m.mul(m2, self.coeffs);
                    let e = acc.entry(*t2).or_insert(Mono::ZERO);
                    *e = e.add(&prod, self.coeffs);
                }
            }
            if acc.values().any(|m| !m.is_zero()) {
                return false;
            }
        }
        true
    }

    pub fn shift_q(&self, n: i32) -> Self {
        let mut c = self.clone();
        for g in &mut c.gens {
            g.1 += n;
        }
        c
    }

    /// Entries with `h = 0`, over the reduced ring.
    pub fn set_h_zero(&self) -> Self {
        let coeffs = self.coeffs.mod_h();
        let d = self
            .d
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(t, m)| {
                        let r = m.set_h_zero();
                        (!r.is_zero()).then(|| (*t, r))
                    })
                    .collect()
            })
            .collect();
        BigradedFreeComplex {
            coeffs,
            gens: self.gens.clone(),
            d,
            labels: self.labels.clone(),
        }
    }

    /// Kill the X-action: the reduced complex over the h-only ring, with no
    /// quantum shift (shifts are applied by callers).
    pub fn kill_x(&self) -> Self {
        let coeffs = match self.coeffs {
            CoefficientSpec::BarNatanRing(b) => CoefficientSpec::PolyH(b),
            CoefficientSpec::Exterior(BaseRing::Int) => CoefficientSpec::Integers,
            CoefficientSpec::Exterior(BaseRing::Fp(p)) => CoefficientSpec::PrimeField(p),
            other => other,
        };
        let d = self
            .d
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(t, m)| {
                        if m.c.is_zero() {
                            None
                        } else {
                            Some((*t, Mono::h_pow(m.c.clone(), m.k)))
                        }
                    })
                    .collect()
            })
            .collect();
        BigradedFreeComplex {
            coeffs,
            gens: self.gens.clone(),
            d,
            labels: self.labels.clone(),
        }
    }

    /// Reduce the base ring to `F_p`.
    pub fn mod_p(&self, p: u64) -> Self {
        let coeffs = match self.coeffs {
            CoefficientSpec::Integers | CoefficientSpec::Rationals => CoefficientSpec::PrimeField(p),
            CoefficientSpec::IntegersMod(m) => {
                assert_eq!(m % p, 0);
                CoefficientSpec::PrimeField(p)
            }
            CoefficientSpec::PrimeField(q) => {
                assert_eq!(p, q);
                CoefficientSpec::PrimeField(p)
            }
            CoefficientSpec::PolyH(_) => CoefficientSpec::PolyH(BaseRing::Fp(p)),
            CoefficientSpec::Exterior(_) => CoefficientSpec::Exterior(BaseRing::Fp(p)),
            CoefficientSpec::BarNatanRing(_) => CoefficientSpec::BarNatanRing(BaseRing::Fp(p)),
        };
        let d = self
            .d
            .iter()
            .map(|col| {
                col.iter()
                    .filter_map(|(t, m)| {
                        let r = m.mod_p(p);
                        (!r.is_zero()).then(|| (*t, r))
                    })
                    .collect()
            })
            .collect();
        BigradedFreeComplex {
            coeffs,
            gens: self.gens.clone(),
            d,
            labels: self.labels.clone(),
        }
    }

    /// Tensor product over the common coefficient ring, with the Koszul
    /// sign `(-1)^{gr_h}` on the second factor's differential.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs, other.coeffs, "mismatched rings");
        let ring = self.coeffs;
        let n2 = other.gens.len() as u32;
        let pair = |i: u32, j: u32| i * n2 + j;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for &(h1, q1) in &self.gens {
            for &(h2, q2) in &other.gens {
                gens.push((h1 + h2, q1 + q2));
            }
        }
        let mut d: Vec<SparseCol> = vec![vec![]; gens.len()];
        for i in 0..self.gens.len() as u32 {
            let (h1, _) = self.gens[i as usize];
            let sign_second = h1 % 2 != 0;
            for j in 0..n2 {
                let src = pair(i, j) as usize;
                let mut col: Vec<(u32, Mono)> = vec![];
                for (t, m) in &self.d[i as usize] {
                    col.push((pair(*t, j), m.clone()));
                }
                for (t, m) in &other.d[j as usize] {
                    let m = if sign_second { m.neg() } else { m.clone() };
                    col.push((pair(i, *t), m));
                }
                col.sort_by_key(|e| e.0);
                d[src] = col;
            }
        }
        let c = BigradedFreeComplex {
            coeffs: ring,
            gens,
            d,
            labels: None,
        };
        c.assert_valid();
        c
    }

    /// The dual complex: gradings negated, differential the signed
    /// transpose `d(f) = (-1)^{gr_h(f)+1} f o d`.
    pub fn dual(&self) -> Self {
        let gens: Vec<(i32, i32)> = self.gens.iter().map(|&(h, q)| (-h, -q)).collect();
        let mut d: Vec<SparseCol> = vec![vec![]; gens.len()];
        for (g, col) in self.d.iter().enumerate() {
            for (t, m) in col {
                // entry g -> t in the original gives entry t* -> g* in the dual
                let fh = gens[*t as usize].0; // gr_h of the dual generator t*
                let m = if (fh + 1) % 2 != 0 { m.neg() } else { m.clone() };
                d[*t as usize].push((g as u32, m));
            }
        }
        for col in &mut d {
            col.sort_by_key(|e| e.0);
        }
        let c = BigradedFreeComplex {
            coeffs: self.coeffs,
            gens,
            d,
            labels: None,
        };
        c.assert_valid();
        c
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.coeffs, other.coeffs);
        let ofs = self.gens.len() as u32;
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        let mut d = self.d.clone();
        d.extend(other.d.iter().map(|col| {
            col.iter().map(|(t, m)| (t + ofs, m.clone())).collect()
        }));
        BigradedFreeComplex {
            coeffs: self.coeffs,
            gens,
            d,
            labels: None,
        }
    }

    /// The finite scalar complex underlying the quantum-grading-`q` piece.
    pub fn graded_piece(&self, q: i32, window: Option<std::ops::RangeInclusive<i32>>) -> GradedPiece {
        let scalar = match self.coeffs {
            CoefficientSpec::PolyH(b) | CoefficientSpec::Exterior(b) | CoefficientSpec::BarNatanRing(b) => {
                match b {
                    BaseRing::Int => CoefficientSpec::Integers,
                    BaseRing::Fp(p) => CoefficientSpec::PrimeField(p),
                }
            }
            s => s,
        };
        let in_window = |h: i32| window.as_ref().map_or(true, |w| w.contains(&h));
        let mut basis: BTreeMap<i32, Vec<PieceGen>> = BTreeMap::new();
        for (g, &(h, gq)) in self.gens.iter().enumerate() {
            if !in_window(h) {
                continue;
            }
            let diff = gq - q;
            if diff < 0 || diff % 2 != 0 {
                continue;
            }
            let k = (diff / 2) as u16;
            let has_h = self.coeffs.has_h();
            let has_x = self.coeffs.has_x();
            if k == 0 || has_h {
                basis.entry(h).or_default().push(PieceGen {
                    gen: g as u32,
                    hpow: k,
                    xpart: false,
                });
            }
            if has_x && k >= 1 && (has_h || k == 1) {
                basis.entry(h).or_default().push(PieceGen {
                    gen: g as u32,
                    hpow: k - 1,
                    xpart: true,
                });
            }
        }
        GradedPiece {
            ring: scalar,
            src: self.coeffs,
            q,
            basis,
        }
    }

    /// The number of generators of the underlying full basis mod `(2,h)`:
    /// twice the module rank over an X-ring, the module rank otherwise.
    pub fn full_rank(&self) -> usize {
        if self.coeffs.has_x() {
            2 * self.rank()
        } else {
            self.rank()
        }
    }

    /// Grading of a full-basis element (indices `>= rank()` are the
    /// X-multiples of the module generators).
    pub fn full_grading(&self, idx: usize) -> (i32, i32) {
        let r = self.rank();
        if idx < r {
            self.gens[idx]
        } else {
            let (h, q) = self.gens[idx - r];
            (h, q - 2)
        }
    }

    /// The full scalar complex over `F_2` obtained by reducing mod `(2,h)`
    /// and expanding the X-multiples of the module basis. Generators are
    /// ordered `[g_0.., X g_0..]`.
    pub fn full_mod2(&self) -> BigradedFreeComplex {
        let r = self.rank();
        let gens: Vec<(i32, i32)> = (0..self.full_rank()).map(|i| self.full_grading(i)).collect();
        let mut d: Vec<SparseCol> = vec![vec![]; gens.len()];
        for (g, col) in self.d.iter().enumerate() {
            for (t, m) in col {
                let c2 = m.c.rem_u64(2);
                let x2 = m.x.rem_u64(2);
                // scalar part survives mod (2,h) when k = 0 and acts
                // X-linearly; the X part survives when k = 1 and kills the
                // X-multiple of the source (X^2 = 0 mod h)
                if m.k == 0 && c2 == 1 {
                    d[g].push((*t, Mono::one()));
                    if self.coeffs.has_x() {
                        d[r + g].push((*t + r as u32, Mono::one()));
                    }
                }
                if m.k == 1 && x2 == 1 {
                    d[g].push((*t + r as u32, Mono::one()));
                }
            }
        }
        for col in &mut d {
            col.sort_by_key(|e| e.0);
        }
        BigradedFreeComplex::new(CoefficientSpec::PrimeField(2), gens, d)
    }

    /// Apply the differential to a sparse vector of module generators.
    pub fn apply_d(&self, v: &SparseCol) -> SparseCol {
        let mut acc: BTreeMap<u32, Mono> = BTreeMap::new();
        for (g, m) in v {
            for (t, e) in &self.d[*g as usize] {
                let prod = m.mul(e, self.coeffs);
                if prod.is_zero() {
                    continue;
                }
                let slot = acc.entry(*t).or_insert(Mono::ZERO);
                *slot = slot.add(&prod, self.coeffs);
            }
        }
        acc.into_iter().filter(|(_, m)| !m.is_zero()).collect()
    }
}

/// A scalar basis element `h^hpow * (X?) * gen` of a graded piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PieceGen {
    pub gen: u32,
    pub hpow: u16,
    pub xpart: bool,
}

/// The quantum-grading-`q` piece of a complex: a finite free complex over
/// the scalar base ring, one basis per homological degree.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub ring: CoefficientSpec,
    src: CoefficientSpec,
    pub q: i32,
    pub basis: BTreeMap<i32, Vec<PieceGen>>,
}

impl GradedPiece {
    pub fn basis_at(&self, h: i32) -> &[PieceGen] {
        self.basis.get(&h).map_or(&[], |v| v.as_slice())
    }

    pub fn index_of(&self, h: i32, pg: &PieceGen) -> Option<usize> {
        self.basis_at(h).iter().position(|x| x == pg)
    }

    /// Matrix of the differential from degree `h` to `h+1` of the ambient
    /// complex `c` (which must be the complex the piece was built from).
    pub fn matrix(&self, c: &BigradedFreeComplex, h: i32) -> crate::homalg::matrix::IntMat {
        use crate::homalg::matrix::IntMat;
        let src = self.basis_at(h);
        let dst = self.basis_at(h + 1);
        let dst_index: BTreeMap<PieceGen, usize> =
            dst.iter().copied().enumerate().map(|(i, x)| (x, i)).collect();
        let mut m = IntMat::zero(dst.len(), src.len());
        for (j, pg) in src.iter().enumerate() {
            for (t, e) in &c.d[pg.gen as usize] {
                // multiply the basis monomial into the entry
                let factor = if pg.xpart {
                    Mono::x_h_pow(Coef::ONE, pg.hpow + 1)
                } else {
                    Mono::h_pow(Coef::ONE, pg.hpow)
                };
                let prod = factor.mul(e, self.src);
                if prod.is_zero() {
                    continue;
                }
                // prod = c h^k + x X h^(k-1) on generator t
                if !prod.c.is_zero() {
                    let tg = PieceGen {
                        gen: *t,
                        hpow: prod.k,
                        xpart: false,
                    };
                    let i = dst_index[&tg];
                    m[(i, j)] = m[(i, j)].add(&prod.c);
                }
                if !prod.x.is_zero() {
                    let tg = PieceGen {
                        gen: *t,
                        hpow: prod.k - 1,
                        xpart: true,
                    };
                    let i = dst_index[&tg];
                    m[(i, j)] = m[(i, j)].add(&prod.x);
                }
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BN: CoefficientSpec = CoefficientSpec::BarNatanRing(BaseRing::Int);
    const ZH: CoefficientSpec = CoefficientSpec::PolyH(BaseRing::Int);

    fn trivial_bn() -> BigradedFreeComplex {
        // the rank-one Bar-Natan module generated in quantum grading 1
        BigradedFreeComplex::free_rank_one(BN, 1)
    }

    #[test]
    fn trivial_piece_ranks() {
        let c = trivial_bn();
        // q = -3: basis {h^2, X h}
        let p = c.graded_piece(-3, None);
        assert_eq!(p.basis_at(0).len(), 2);
        // q = 1: basis {1}
        let p = c.graded_piece(1, None);
        assert_eq!(p.basis_at(0).len(), 1);
        // q = 3: empty
        let p = c.graded_piece(3, None);
        assert_eq!(p.basis_at(0).len(), 0);
        // q = 0 has wrong parity relative to the generator
        let p = c.graded_piece(0, None);
        assert_eq!(p.basis_at(0).len(), 0);
    }

    #[test]
    fn piece_rank_matches_enumeration() {
        // rank of the piece at q counts (g, k) solutions
        let gens = vec![(0, 1), (0, 3), (1, 1)];
        let c = BigradedFreeComplex::new(ZH, gens, vec![vec![], vec![], vec![]]);
        let p = c.graded_piece(-1, None);
        assert_eq!(p.basis_at(0).len(), 2); // h*g0, h^2*g1
        assert_eq!(p.basis_at(1).len(), 1); // h*g2
    }

    #[test]
    fn tensor_and_dual_preserve_d_squared() {
        // D^{-1} = R{-1} -> D^0 = R{1} + R{3}, d = (X - h, h^2)
        let gens = vec![(-1, -1), (0, 1), (0, 3)];
        let d = vec![
            vec![
                (1, Mono {
                    c: Coef::from_i64(-1),
                    x: Coef::from_i64(1),
                    k: 1,
                }),
                (2, Mono::h_pow(Coef::ONE, 2)),
            ],
            vec![],
            vec![],
        ];
        let c = BigradedFreeComplex::new(BN, gens, d);
        let t = c.tensor(&c);
        assert!(t.d_squared_is_zero());
        assert_eq!(t.rank(), 9);
        let dd = c.dual().dual();
        assert!(dd.d_squared_is_zero());
        // double dual is the original up to the canonical isomorphism
        // g -> (-1)^{gr_h(g)} g, under which every entry flips sign
        assert_eq!(dd.gens, c.gens);
        for (col, orig) in dd.d.iter().zip(&c.d) {
            let negated: Vec<_> = orig.iter().map(|(t, m)| (*t, m.neg())).collect();
            assert_eq!(*col, negated);
        }
    }

    #[test]
    fn rank_one_tensor_is_grading_shift() {
        let c = trivial_bn();
        let unit = BigradedFreeComplex::free_rank_one(BN, -2);
        let t = c.tensor(&unit);
        assert_eq!(t.gens, vec![(0, -1)]);
    }
}
