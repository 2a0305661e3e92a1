//! Local even-odd triples: an odd-type complex `C`, a deformed complex
//! `D`, and an identification `f` of their mod-(2,h) reductions, in three
//! flavors (unreduced, reduced, two-reduced), with the group operations
//! and validation of the defining conditions.

use serde::Deserialize;
use thiserror::Error;

use crate::coef::Coef;
use crate::diagrams::PlanarDiagram;
use crate::homalg::complex::{BigradedFreeComplex, SparseCol};
use crate::homalg::matrix::FpMat;
use crate::homalg::{homology_at, induced_fp, simplify, HomCoeffs, Presentation, TrackedEquivalence};
use crate::invariants::localized::{localized_target, LocalizedError};
use crate::khovanov::{build, KhovanovPackage, Which};
use crate::ring::{BaseRing, CoefficientSpec, Mono};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    Unreduced,
    Reduced,
    TwoReduced,
}

impl Flavor {
    /// Parity of the quantum gradings supporting the localized target.
    pub fn parity(self) -> i32 {
        match self {
            Flavor::Unreduced => 1,
            _ => 0,
        }
    }

    /// Rank of the stable degree-0 homology of `D` over its base.
    pub fn stable_rank(self) -> usize {
        match self {
            Flavor::Unreduced => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Provenance {
    Knot(String),
    Algebraic,
}

/// The identification `f: C (x) Z/2 -> D (x) R/(2,h)`, stored on the full
/// mod-2 bases of both sides (module generators followed by their
/// X-multiples, for X-rings).
#[derive(Clone, Debug)]
pub struct FMap {
    /// `cols[src]` lists the target full indices hit with coefficient 1.
    pub cols: Vec<Vec<u32>>,
}

impl FMap {
    pub fn identity(n: usize) -> Self {
        FMap {
            cols: (0..n as u32).map(|i| vec![i]).collect(),
        }
    }

    pub fn matrix(&self, rows: usize) -> FpMat {
        let mut m = FpMat::zero(2, rows, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for t in col {
                m[(*t as usize, j)] = (m[(*t as usize, j)] + 1) % 2;
            }
        }
        m
    }

    fn from_matrix(m: &FpMat) -> Self {
        let cols = (0..m.cols)
            .map(|j| {
                (0..m.rows)
                    .filter(|&r| m[(r, j)] == 1)
                    .map(|r| r as u32)
                    .collect()
            })
            .collect();
        FMap { cols }
    }
}

#[derive(Clone, Debug)]
pub struct LeoTriple {
    pub flavor: Flavor,
    pub c: BigradedFreeComplex,
    pub d: BigradedFreeComplex,
    pub f: FMap,
    pub provenance: Provenance,
}

#[derive(Debug, Error)]
pub enum TripleError {
    #[error("the identification is not a chain map at full index {0}")]
    NotChainMap(usize),
    #[error("the identification is not a quasi-isomorphism at ({0},{1})")]
    NotEquivalence(i32, i32),
    #[error("localized condition fails: {0}")]
    Localized(#[from] LocalizedError),
    #[error("flavor mismatch")]
    FlavorMismatch,
    #[error("quantum shifts of triples must be even")]
    OddShift,
    #[error("ring mismatch: C over {0}, expected {1}")]
    WrongRingC(CoefficientSpec, CoefficientSpec),
    #[error("ring mismatch: D over {0}, expected {1}")]
    WrongRingD(CoefficientSpec, CoefficientSpec),
    #[error("d^2 != 0 in the {0} complex")]
    NotAComplex(&'static str),
    #[error("triviality of unreduced triples is only decided for knots")]
    NeedsKnot,
    #[error(transparent)]
    Diagram(#[from] crate::diagrams::DiagramError),
    #[error("bad algebraic input: {0}")]
    BadInput(String),
}

impl LeoTriple {
    pub fn expected_rings(flavor: Flavor) -> (CoefficientSpec, CoefficientSpec) {
        match flavor {
            Flavor::Unreduced => (
                CoefficientSpec::Exterior(BaseRing::Int),
                CoefficientSpec::BarNatanRing(BaseRing::Int),
            ),
            Flavor::Reduced => (
                CoefficientSpec::Integers,
                CoefficientSpec::PolyH(BaseRing::Int),
            ),
            Flavor::TwoReduced => (
                CoefficientSpec::Integers,
                CoefficientSpec::PolyH(BaseRing::Fp(2)),
            ),
        }
    }

    /// Validate every defining condition. Construction paths call this;
    /// it is also the entry point for user-supplied algebraic data.
    pub fn validate(&self) -> Result<(), TripleError> {
        let (rc, rd) = Self::expected_rings(self.flavor);
        if self.c.coeffs != rc {
            return Err(TripleError::WrongRingC(self.c.coeffs, rc));
        }
        if self.d.coeffs != rd {
            return Err(TripleError::WrongRingD(self.d.coeffs, rd));
        }
        if !self.c.d_squared_is_zero() {
            return Err(TripleError::NotAComplex("C"));
        }
        if !self.d.d_squared_is_zero() {
            return Err(TripleError::NotAComplex("D"));
        }
        let cf = self.c.full_mod2();
        let df = self.d.full_mod2();
        // f is a chain map on the full mod-2 bases
        let fm = self.f.matrix(df.rank());
        for g in 0..cf.rank() {
            let mut lhs: Vec<u32> = vec![];
            for (t, _) in &cf.d[g] {
                for x in &self.f.cols[*t as usize] {
                    toggle(&mut lhs, *x);
                }
            }
            let mut rhs: Vec<u32> = vec![];
            for x in &self.f.cols[g] {
                for (t, _) in &df.d[*x as usize] {
                    toggle(&mut rhs, *t);
                }
            }
            lhs.sort_unstable();
            rhs.sort_unstable();
            if lhs != rhs {
                return Err(TripleError::NotChainMap(g));
            }
        }
        // f is a quasi-isomorphism in every bigrading
        let (qlo, qhi) = (
            cf.q_range().start().min(df.q_range().start()) - 2,
            *cf.q_range().end().max(df.q_range().end()),
        );
        let (hlo, hhi) = (
            *cf.h_range().start().min(df.h_range().start()),
            *cf.h_range().end().max(df.h_range().end()),
        );
        for q in (qlo..=qhi).filter(|q| (q - qlo) % 2 == 0) {
            for i in hlo..=hhi {
                let hc = homology_at(&cf, i, q, HomCoeffs::Fp(2)).pres;
                let hd = homology_at(&df, i, q, HomCoeffs::Fp(2)).pres;
                let (Presentation::Fp(hc), Presentation::Fp(hd)) = (hc, hd) else {
                    unreachable!()
                };
                if hc.dim() != hd.dim() {
                    return Err(TripleError::NotEquivalence(i, q));
                }
                if hc.dim() == 0 {
                    continue;
                }
                let fm_piece = piece_map(&cf, &df, &fm, q, i);
                let ind = induced_fp(&fm_piece, &hc, &hd)
                    .map_err(|_| TripleError::NotEquivalence(i, q))?;
                if ind.rank() != hc.dim() {
                    return Err(TripleError::NotEquivalence(i, q));
                }
            }
        }
        localized_target(&self.d, self.flavor.parity(), self.flavor.stable_rank())?;
        Ok(())
    }

    /// Quantum shift of the whole triple by an even integer.
    pub fn shift(&self, n: i32) -> Result<LeoTriple, TripleError> {
        if n % 2 != 0 {
            return Err(TripleError::OddShift);
        }
        Ok(LeoTriple {
            flavor: self.flavor,
            c: self.c.shift_q(n),
            d: self.d.shift_q(n),
            f: self.f.clone(),
            provenance: self.provenance.clone(),
        })
    }

    /// Pass to the reduced triple (kill the X-action, shift by `{-1}`).
    pub fn reduce(&self) -> Result<LeoTriple, TripleError> {
        assert_eq!(self.flavor, Flavor::Unreduced);
        let c = self.c.kill_x().shift_q(-1);
        let d = self.d.kill_x().shift_q(-1);
        // f restricted to the module-generator block
        let r = self.c.rank();
        let cols = self
            .f
            .cols
            .iter()
            .take(r)
            .map(|col| {
                col.iter()
                    .copied()
                    .filter(|t| (*t as usize) < self.d.rank())
                    .collect()
            })
            .collect();
        let t = LeoTriple {
            flavor: Flavor::Reduced,
            c,
            d,
            f: FMap { cols },
            provenance: self.provenance.clone(),
        };
        t.validate()?;
        Ok(t)
    }

    /// Pass from a reduced to a two-reduced triple (`D` over `F_2[h]`).
    pub fn two_reduce(&self) -> Result<LeoTriple, TripleError> {
        assert_eq!(self.flavor, Flavor::Reduced);
        let t = LeoTriple {
            flavor: Flavor::TwoReduced,
            c: self.c.clone(),
            d: self.d.mod_p(2),
            f: self.f.clone(),
            provenance: self.provenance.clone(),
        };
        t.validate()?;
        Ok(t)
    }

    /// Tensor product of triples of the same flavor; quantum shift `{-1}`
    /// in the unreduced case. Both sides are simplified and `f` is
    /// transported through the simplifications.
    pub fn tensor(&self, other: &LeoTriple) -> Result<LeoTriple, TripleError> {
        if self.flavor != other.flavor {
            return Err(TripleError::FlavorMismatch);
        }
        let shift = if self.flavor == Flavor::Unreduced { -1 } else { 0 };
        let c_big = self.c.tensor(&other.c).shift_q(shift);
        let d_big = self.d.tensor(&other.d).shift_q(shift);
        // f1 (x) f2 on full bases of the tensor complexes
        let n2c = other.c.rank();
        let n2d = other.d.rank() as u32;
        let rc = c_big.rank();
        let rd = d_big.rank() as u32;
        let mut cols: Vec<Vec<u32>> = vec![vec![]; c_big.full_rank()];
        let split_c = |full: usize, rank: usize| -> (usize, bool) {
            if full < rank {
                (full, false)
            } else {
                (full - rank, true)
            }
        };
        for src in 0..c_big.full_rank() {
            let (pair, src_x) = split_c(src, rc);
            let (g1, g2) = (pair / n2c, pair % n2c);
            // expand f1(g1) (x) f2(g2) with an optional outer X
            let parts1 = &self.f.cols[g1];
            let parts2 = &other.f.cols[g2];
            for t1 in parts1 {
                let (d1, x1) = split_c(*t1 as usize, self.d.rank());
                for t2 in parts2 {
                    let (d2, x2) = split_c(*t2 as usize, other.d.rank());
                    let total_x = (x1 as u8) + (x2 as u8) + (src_x as u8);
                    if total_x >= 2 {
                        continue; // X^2 = 0 mod (2,h)
                    }
                    let tgt = d1 as u32 * n2d + d2 as u32 + if total_x == 1 { rd } else { 0 };
                    toggle(&mut cols[src], tgt);
                }
            }
        }
        for col in &mut cols {
            col.sort_unstable();
        }
        let t = LeoTriple {
            flavor: self.flavor,
            c: c_big,
            d: d_big,
            f: FMap { cols },
            provenance: Provenance::Algebraic,
        }
        .simplified();
        t.validate()?;
        Ok(t)
    }

    /// The dual triple (the inverse in the local equivalence group);
    /// quantum shift `{2}` in the unreduced case.
    pub fn dual(&self) -> Result<LeoTriple, TripleError> {
        let shift = if self.flavor == Flavor::Unreduced { 2 } else { 0 };
        let c = self.c.dual().shift_q(shift);
        let d = self.d.dual().shift_q(shift);
        // transpose of a homotopy inverse of f, through the swap of the
        // X-flag that identifies full(C*) with the dual basis of full(C)
        let g = self.homotopy_inverse_of_f();
        let rc = self.c.rank();
        let rd = self.d.rank();
        let flip = |idx: usize, rank: usize, has_x: bool| -> usize {
            if !has_x {
                idx
            } else if idx < rank {
                idx + rank
            } else {
                idx - rank
            }
        };
        let cx = self.c.coeffs.has_x();
        let dx = self.d.coeffs.has_x();
        let mut cols: Vec<Vec<u32>> = vec![vec![]; self.c.full_rank()];
        for (dsrc, col) in g.cols.iter().enumerate() {
            for t in col {
                // g: D0 -> C0 sends dsrc to t; transpose: t* -> dsrc*
                let srcstar = flip(*t as usize, rc, cx);
                let tgtstar = flip(dsrc, rd, dx) as u32;
                toggle(&mut cols[srcstar], tgtstar);
            }
        }
        for col in &mut cols {
            col.sort_unstable();
        }
        let t = LeoTriple {
            flavor: self.flavor,
            c,
            d,
            f: FMap { cols },
            provenance: Provenance::Algebraic,
        };
        t.validate()?;
        Ok(t)
    }

    /// A chain-level homotopy inverse `g: D0 -> C0` of `f`, built by fully
    /// simplifying both full mod-2 complexes (over a field the minimal
    /// model has zero differential) and inverting the induced map.
    fn homotopy_inverse_of_f(&self) -> FMap {
        let cf = self.c.full_mod2();
        let df = self.d.full_mod2();
        let (cmin, ceq) = simplify(&cf);
        let (dmin, deq) = simplify(&df);
        assert!(cmin.d.iter().all(|c| c.is_empty()));
        assert!(dmin.d.iter().all(|c| c.is_empty()));
        // induced map on minimal models
        let mut phi = FpMat::zero(2, dmin.rank(), cmin.rank());
        for j in 0..cmin.rank() as u32 {
            let back = ceq.backward(&vec![(j, Mono::one())]);
            let mut img: Vec<u32> = vec![];
            for (g, m) in &back {
                if m.c.rem_u64(2) == 1 {
                    for t in &self.f.cols[*g as usize] {
                        toggle(&mut img, *t);
                    }
                }
            }
            let v: SparseCol = img.into_iter().map(|t| (t, Mono::one())).collect();
            for (t, m) in deq.forward(&v) {
                if m.c.rem_u64(2) == 1 {
                    phi[(t as usize, j as usize)] = 1;
                }
            }
        }
        let phi_inv = invert_f2(&phi);
        // g = B_C o phi^{-1} o F_D
        let mut cols: Vec<Vec<u32>> = vec![vec![]; df.rank()];
        for dsrc in 0..df.rank() as u32 {
            let fwd = deq.forward(&vec![(dsrc, Mono::one())]);
            let mut acc: Vec<u32> = vec![];
            for (t, m) in &fwd {
                if m.c.rem_u64(2) == 1 {
                    for r in 0..phi_inv.rows {
                        if phi_inv[(r, *t as usize)] == 1 {
                            toggle(&mut acc, r as u32);
                        }
                    }
                }
            }
            let v: SparseCol = acc.into_iter().map(|t| (t, Mono::one())).collect();
            let back = ceq.backward(&v);
            cols[dsrc as usize] = back
                .into_iter()
                .filter(|(_, m)| m.c.rem_u64(2) == 1)
                .map(|(g, _)| g)
                .collect();
        }
        FMap { cols }
    }

    /// Simplify both complexes and transport `f`.
    pub fn simplified(&self) -> LeoTriple {
        let (cs, ceq) = simplify(&self.c);
        let (ds, deq) = simplify(&self.d);
        let f = transport_f(&self.c, &self.f, &cs, &ceq, &ds, &deq);
        LeoTriple {
            flavor: self.flavor,
            c: cs,
            d: ds,
            f,
            provenance: self.provenance.clone(),
        }
    }
}

fn toggle(v: &mut Vec<u32>, x: u32) {
    if let Some(p) = v.iter().position(|&y| y == x) {
        v.swap_remove(p);
    } else {
        v.push(x);
    }
}

fn invert_f2(m: &FpMat) -> FpMat {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = m.hcat(&FpMat::identity(2, n));
    let piv = aug.rref();
    assert_eq!(piv.len(), n, "identification is not invertible");
    let mut inv = FpMat::zero(2, n, n);
    for r in 0..n {
        for c in 0..n {
            inv[(r, c)] = aug[(r, n + c)];
        }
    }
    inv
}

/// Piece-level matrix of an `f`-style full-basis map between the graded
/// pieces of two scalar mod-2 complexes.
fn piece_map(
    cf: &BigradedFreeComplex,
    df: &BigradedFreeComplex,
    fm: &FpMat,
    q: i32,
    i: i32,
) -> FpMat {
    let ps = cf.graded_piece(q, Some(i..=i));
    let pd = df.graded_piece(q, Some(i..=i));
    let sb = ps.basis_at(i);
    let db = pd.basis_at(i);
    let mut m = FpMat::zero(2, db.len(), sb.len());
    for (j, pg) in sb.iter().enumerate() {
        debug_assert_eq!(pg.hpow, 0);
        for (r, tg) in db.iter().enumerate() {
            m[(r, j)] = fm[(tg.gen as usize, pg.gen as usize)];
        }
    }
    m
}

/// Transport `f` through simplifications of its two sides: the new map is
/// `F_D o f o B_C` on full mod-2 bases.
fn transport_f(
    c_orig: &BigradedFreeComplex,
    f: &FMap,
    cs: &BigradedFreeComplex,
    ceq: &TrackedEquivalence,
    ds: &BigradedFreeComplex,
    deq: &TrackedEquivalence,
) -> FMap {
    let rc_orig = c_orig.rank();
    let rcs = cs.rank();
    let rds = ds.rank() as u32;
    let mut cols: Vec<Vec<u32>> = vec![vec![]; cs.full_rank()];
    let mod2 = |m: &Mono| m.mod_p(2);
    let ring2 = match c_orig.coeffs {
        CoefficientSpec::Exterior(_) => CoefficientSpec::Exterior(BaseRing::Fp(2)),
        CoefficientSpec::BarNatanRing(_) => CoefficientSpec::BarNatanRing(BaseRing::Fp(2)),
        CoefficientSpec::PolyH(_) => CoefficientSpec::PolyH(BaseRing::Fp(2)),
        _ => CoefficientSpec::PrimeField(2),
    };
    for src in 0..cs.full_rank() {
        let (g, src_x) = if src < rcs {
            (src, false)
        } else {
            (src - rcs, true)
        };
        // back to the original module basis, reduced mod (2,h), then
        // multiplied by X when the source is an X-multiple
        let back = ceq.backward(&vec![(g as u32, Mono::one())]);
        let mut full_vec: Vec<u32> = vec![];
        for (og, m) in &back {
            let m2 = mod2(m);
            let scalar = m2.k == 0 && m2.c.rem_u64(2) == 1;
            let xpart = m2.k == 1 && m2.x.rem_u64(2) == 1;
            if src_x {
                // X * scalar -> X og; X * X og -> 0
                if scalar {
                    toggle(&mut full_vec, og + rc_orig as u32);
                }
            } else {
                if scalar {
                    toggle(&mut full_vec, *og);
                }
                if xpart {
                    toggle(&mut full_vec, og + rc_orig as u32);
                }
            }
        }
        // apply f
        let mut fx: Vec<u32> = vec![];
        for idx in &full_vec {
            for t in &f.cols[*idx as usize] {
                toggle(&mut fx, *t);
            }
        }
        // forward through the D-side simplification, in module form
        let rd_mod = deq.orig_rank() as u32;
        let mut module_vec: SparseCol = vec![];
        for idx in fx {
            let (dg, dx) = if idx < rd_mod {
                (idx, false)
            } else {
                (idx - rd_mod, true)
            };
            let mono = if dx {
                Mono::x_h_pow(Coef::ONE, 1)
            } else {
                Mono::one()
            };
            crate::khovanov::cube::push_term(&mut module_vec, dg, mono, ring2);
        }
        let out = deq.forward_reduced(&module_vec, |m| m.set_h_zero().mod_p(2), ring2);
        let mut col: Vec<u32> = vec![];
        for (t, m) in out {
            if m.k == 0 && m.c.rem_u64(2) == 1 {
                toggle(&mut col, t);
            }
            if m.k == 1 && m.x.rem_u64(2) == 1 {
                toggle(&mut col, t + rds);
            }
        }
        col.sort_unstable();
        cols[src] = col;
    }
    FMap { cols }
}

/// The triple of a knot: `C` the odd complex, `D` the Bar-Natan complex,
/// `f` the cube identity, all simplified with `f` transported.
pub fn leo_of_knot(d: &PlanarDiagram) -> Result<LeoTriple, TripleError> {
    let pkg = build(d);
    triple_from_package(&pkg, Which::Odd)
}

/// The even-side variant: `C` the even complex.
pub fn lee_of_knot(d: &PlanarDiagram) -> Result<LeoTriple, TripleError> {
    let pkg = build(d);
    triple_from_package(&pkg, Which::Even)
}

/// Both triples of one knot, sharing the package and the Bar-Natan
/// simplification.
pub fn triples_of_knot(d: &PlanarDiagram) -> Result<(LeoTriple, LeoTriple), TripleError> {
    let pkg = build(d);
    let leo = triple_from_package(&pkg, Which::Odd)?;
    let lee = triple_from_package(&pkg, Which::Even)?;
    Ok((leo, lee))
}

pub fn triple_from_package(pkg: &KhovanovPackage, which: Which) -> Result<LeoTriple, TripleError> {
    assert!(matches!(which, Which::Odd | Which::Even));
    let name = pkg.diagram.to_pd_string();
    let raw = LeoTriple {
        flavor: Flavor::Unreduced,
        c: pkg.complex(which).clone(),
        d: pkg.barnatan.clone(),
        f: FMap::identity(pkg.complex(which).full_rank()),
        provenance: Provenance::Knot(name),
    };
    let t = raw.simplified();
    t.validate()?;
    Ok(t)
}

/// JSON input for algebraic triples.
///
/// ```json
/// {
///   "flavor": "reduced",
///   "generators": [{"label": "a", "i": -1, "q": 0}, ...],
///   "dC": [["a", "b", "2"], ...],
///   "dD": [["a", "b", "h"], ["a", "c", "X*h^2"], ...],
///   "f": [["a", "a"], ...]        // omitted = identity
/// }
/// ```
/// Coefficients are integers times optional `X` and `h^k` factors. `f` is
/// a mod-2 matrix on module generators, extended X-linearly.
#[derive(Deserialize)]
struct AlgebraicInput {
    flavor: String,
    generators: Vec<GenInput>,
    #[serde(rename = "dC")]
    d_c: Vec<(String, String, String)>,
    #[serde(rename = "dD")]
    d_d: Vec<(String, String, String)>,
    #[serde(default)]
    f: Option<Vec<(String, String)>>,
}

#[derive(Deserialize)]
struct GenInput {
    label: String,
    i: i32,
    q: i32,
}

pub fn from_algebraic_json(text: &str) -> Result<LeoTriple, TripleError> {
    let input: AlgebraicInput =
        serde_json::from_str(text).map_err(|e| TripleError::BadInput(e.to_string()))?;
    let flavor = match input.flavor.as_str() {
        "unreduced" => Flavor::Unreduced,
        "reduced" => Flavor::Reduced,
        "two-reduced" | "two_reduced" => Flavor::TwoReduced,
        other => return Err(TripleError::BadInput(format!("unknown flavor `{other}`"))),
    };
    let (rc, rd) = LeoTriple::expected_rings(flavor);
    let index = |label: &str| -> Result<u32, TripleError> {
        input
            .generators
            .iter()
            .position(|g| g.label == label)
            .map(|i| i as u32)
            .ok_or_else(|| TripleError::BadInput(format!("unknown generator `{label}`")))
    };
    let gens: Vec<(i32, i32)> = input.generators.iter().map(|g| (g.i, g.q)).collect();
    let build_complex = |entries: &[(String, String, String)],
                         ring: CoefficientSpec|
     -> Result<BigradedFreeComplex, TripleError> {
        let mut d: Vec<SparseCol> = vec![vec![]; gens.len()];
        for (from, to, coeff) in entries {
            let s = index(from)? as usize;
            let t = index(to)?;
            let m = parse_mono(coeff)
                .ok_or_else(|| TripleError::BadInput(format!("bad coefficient `{coeff}`")))?;
            crate::khovanov::cube::push_term(&mut d[s], t, m, ring);
        }
        for col in &mut d {
            col.sort_by_key(|e| e.0);
        }
        let mut c = BigradedFreeComplex {
            coeffs: ring,
            gens: gens.clone(),
            d,
            labels: Some(input.generators.iter().map(|g| g.label.clone()).collect()),
        };
        if !c.d_squared_is_zero() {
            return Err(TripleError::NotAComplex("input"));
        }
        c.assert_valid();
        if matches!(ring, CoefficientSpec::PolyH(BaseRing::Fp(2))) {
            c = c.mod_p(2);
        }
        Ok(c)
    };
    let c = build_complex(&input.d_c, rc)?;
    let d = build_complex(&input.d_d, rd)?;
    let f = match &input.f {
        None => FMap::identity(c.full_rank()),
        Some(pairs) => {
            let mut cols: Vec<Vec<u32>> = vec![vec![]; c.full_rank()];
            let rcn = c.rank() as u32;
            let rdn = d.rank() as u32;
            for (from, to) in pairs {
                let s = index(from)?;
                let t = index(to)?;
                toggle(&mut cols[s as usize], t);
                // extend X-linearly on the full basis
                if c.coeffs.has_x() && d.coeffs.has_x() {
                    toggle(&mut cols[(s + rcn) as usize], t + rdn);
                }
            }
            for col in &mut cols {
                col.sort_unstable();
            }
            FMap { cols }
        }
    };
    let t = LeoTriple {
        flavor,
        c,
        d,
        f,
        provenance: Provenance::Algebraic,
    };
    t.validate()?;
    Ok(t)
}

/// Parse `c`, `c*h^k`, `c*X`, `c*X*h^k` (integer `c`, `h` optional).
fn parse_mono(s: &str) -> Option<Mono> {
    let mut c: i64 = 1;
    let mut seen_num = false;
    let mut x = false;
    let mut hpow: u16 = 0;
    for part in s.split('*') {
        let part = part.trim();
        if part == "X" {
            x = true;
        } else if part == "h" {
            hpow += 1;
        } else if let Some(rest) = part.strip_prefix("h^") {
            hpow += rest.parse::<u16>().ok()?;
        } else if part == "-" {
            c = -c;
        } else {
            c = c.checked_mul(part.parse::<i64>().ok()?)?;
            seen_num = true;
        }
    }
    let _ = seen_num;
    Some(if x {
        Mono::x_h_pow(Coef::from_i64(c), hpow + 1)
    } else {
        Mono::h_pow(Coef::from_i64(c), hpow)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::TREFOIL_PD;

    #[test]
    fn trivial_triple_is_valid() {
        let t = leo_of_knot(&PlanarDiagram::unknot()).unwrap();
        assert_eq!(t.c.rank(), 1);
        assert_eq!(t.d.rank(), 1);
        assert_eq!(t.c.gens, vec![(0, 1)]);
        let red = t.reduce().unwrap();
        assert_eq!(red.c.gens, vec![(0, 0)]);
        let two = red.two_reduce().unwrap();
        assert_eq!(two.d.coeffs, CoefficientSpec::PolyH(BaseRing::Fp(2)));
    }

    #[test]
    fn trefoil_triples_validate() {
        let d = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap();
        let (leo, lee) = triples_of_knot(&d).unwrap();
        assert!(leo.validate().is_ok());
        assert!(lee.validate().is_ok());
        let red = leo.reduce().unwrap();
        let _two = red.two_reduce().unwrap();
    }

    #[test]
    fn dual_and_tensor_of_trivial() {
        let t = leo_of_knot(&PlanarDiagram::unknot()).unwrap();
        let dual = t.dual().unwrap();
        assert_eq!(dual.c.gens, vec![(0, 1)]);
        let prod = t.tensor(&t).unwrap();
        assert_eq!(prod.c.gens, vec![(0, 1)]);
    }

    #[test]
    fn zero_f_is_rejected() {
        let json = r#"{
            "flavor": "reduced",
            "generators": [{"label": "a", "i": 0, "q": 0}],
            "dC": [],
            "dD": [],
            "f": []
        }"#;
        let err = from_algebraic_json(json).unwrap_err();
        assert!(matches!(err, TripleError::NotEquivalence(_, _)));
    }

    #[test]
    fn drifting_complex_is_a_valid_triple() {
        // D^{-1} = R{-1} -> D^0 = R{1} + R{-1+2k}, d = (X - h, h^k), with
        // C its mod-h reduction and f the identity
        let json = r#"{
            "flavor": "unreduced",
            "generators": [
                {"label": "w", "i": -1, "q": -1},
                {"label": "e1", "i": 0, "q": 1},
                {"label": "e2", "i": 0, "q": 3}
            ],
            "dC": [["w", "e1", "X"]],
            "dD": [["w", "e1", "X"], ["w", "e1", "-1*h"], ["w", "e2", "h^2"]]
        }"#;
        let t = from_algebraic_json(json).unwrap();
        assert_eq!(t.flavor, Flavor::Unreduced);
        let dual = t.dual().unwrap();
        dual.validate().unwrap();
    }
}
