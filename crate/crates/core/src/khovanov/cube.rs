//! The cube of resolutions and its even / Bar-Natan differentials.
//!
//! Complexes are stored on module bases: a generator is `(vertex, mask)`
//! where the mask selects the circles labeled `X` (even/Bar-Natan) or the
//! circles in the wedge (odd), and the basepoint circle is never in the
//! mask. Labelings with `X` on the basepoint circle are `X` times a module
//! generator, which is what the `X`-part of a [`Mono`] records.

use crate::coef::Coef;
use crate::diagrams::{PlanarDiagram, Resolution};
use crate::homalg::complex::{BigradedFreeComplex, SparseCol};
use crate::ring::{BaseRing, CoefficientSpec, Mono};

pub const BN_RING: CoefficientSpec = CoefficientSpec::BarNatanRing(BaseRing::Int);
pub const EXT_RING: CoefficientSpec = CoefficientSpec::Exterior(BaseRing::Int);

#[derive(Clone, Debug)]
pub struct VertexData {
    pub resolution: Resolution,
    /// Global index of the first module generator over this vertex.
    pub offset: usize,
    /// Circle indices other than the basepoint circle, in order; bit `t`
    /// of a generator mask refers to `free_circles[t]`.
    pub free_circles: Vec<usize>,
    pub weight: u32,
    /// Circle index per arc rank.
    arc_circle: Vec<usize>,
}

impl VertexData {
    pub fn circle_of(&self, rank: usize) -> usize {
        self.arc_circle[rank]
    }
}

pub struct CubeData {
    pub n: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    pub verts: Vec<VertexData>,
    pub rank: usize,
    arc_rank: std::collections::BTreeMap<u32, usize>,
}

impl CubeData {
    pub fn new(d: &PlanarDiagram) -> Self {
        let n = d.n_crossings();
        let arc_rank: std::collections::BTreeMap<u32, usize> = d
            .arcs()
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i))
            .collect();
        let mut verts = Vec::with_capacity(1 << n);
        let mut offset = 0usize;
        for v in 0..(1u32 << n) {
            let bits: Vec<bool> = (0..n).map(|i| v >> i & 1 == 1).collect();
            let resolution = d.resolve(&bits);
            let free_circles: Vec<usize> = (0..resolution.circles.len())
                .filter(|&c| c != resolution.basepoint_circle)
                .collect();
            let mut arc_circle = vec![usize::MAX; d.arcs().len()];
            for (ci, c) in resolution.circles.iter().enumerate() {
                for a in &c.arcs {
                    arc_circle[arc_rank[a]] = ci;
                }
            }
            let rank = 1usize << free_circles.len();
            verts.push(VertexData {
                resolution,
                offset,
                free_circles,
                weight: v.count_ones(),
                arc_circle,
            });
            offset += rank;
        }
        CubeData {
            n,
            n_plus: d.n_plus(),
            n_minus: d.n_minus(),
            verts,
            rank: offset,
            arc_rank,
        }
    }

    pub fn circle_at(&self, v: usize, arc: u32) -> usize {
        self.verts[v].arc_circle[self.arc_rank[&arc]]
    }

    pub fn vertex_rank(&self, v: usize) -> usize {
        1 << self.verts[v].free_circles.len()
    }

    /// Bigradings of the module generator `(v, mask)`.
    pub fn grading(&self, v: usize, mask: u32) -> (i32, i32) {
        let vd = &self.verts[v];
        let c = vd.resolution.circles.len() as i32;
        let s = mask.count_ones() as i32;
        let w = vd.weight as i32;
        let h = w - self.n_minus as i32;
        let q = w + (c - s) - s + self.n_plus as i32 - 2 * self.n_minus as i32;
        (h, q)
    }

    pub fn gen_index(&self, v: usize, mask: u32) -> usize {
        self.verts[v].offset + mask as usize
    }

    /// Decompose a global index into `(vertex, mask)`.
    pub fn gen_at(&self, idx: usize) -> (usize, u32) {
        let v = match self.verts.binary_search_by(|vd| vd.offset.cmp(&idx)) {
            Ok(v) => v,
            Err(v) => v - 1,
        };
        (v, (idx - self.verts[v].offset) as u32)
    }

    pub fn gens(&self) -> Vec<(i32, i32)> {
        let mut gens = Vec::with_capacity(self.rank);
        for v in 0..self.verts.len() {
            for mask in 0..self.vertex_rank(v) as u32 {
                gens.push(self.grading(v, mask));
            }
        }
        gens
    }

    /// Circle-mask (over all circles of `v`) of a generator mask.
    pub fn full_mask(&self, v: usize, mask: u32) -> u32 {
        let vd = &self.verts[v];
        let mut out = 0u32;
        for (t, &c) in vd.free_circles.iter().enumerate() {
            if mask >> t & 1 == 1 {
                out |= 1 << c;
            }
        }
        out
    }

    /// Inverse of `full_mask`; returns `(module mask, x_part)` where
    /// `x_part` records whether the basepoint circle was in the set.
    pub fn module_mask(&self, v: usize, full: u32) -> (u32, bool) {
        let vd = &self.verts[v];
        let bp = vd.resolution.basepoint_circle;
        let x_part = full >> bp & 1 == 1;
        let mut mask = 0u32;
        for (t, &c) in vd.free_circles.iter().enumerate() {
            if full >> c & 1 == 1 {
                mask |= 1 << t;
            }
        }
        (mask, x_part)
    }
}

/// What the resolution change at one cube edge does to the circles.
pub enum EdgeKind {
    /// Circles `z1 != z2` at `v` merge into `w` at `v'`.
    Merge { z1: usize, z2: usize, w: usize },
    /// Circle `z` splits into `a` (through the crossing's `(a,b)`
    /// smoothing arc) and `b` (through `(c,d)`).
    Split { z: usize, a: usize, b: usize },
}

pub struct EdgeData {
    pub kind: EdgeKind,
    /// `map[c]` is the circle of `v'` a surviving circle `c` of `v` goes
    /// to; merged/split circles are included where well-defined.
    pub map: Vec<usize>,
}

pub fn edge_data(d: &PlanarDiagram, cube: &CubeData, v: usize, i: usize) -> EdgeData {
    let vd = &cube.verts[v];
    let v2 = v | (1 << i);
    let arcs = d.crossings()[i].arcs;
    let z1 = cube.circle_at(v, arcs[0]);
    let z2 = cube.circle_at(v, arcs[1]);
    let mut map = vec![usize::MAX; vd.resolution.circles.len()];
    // untouched circles match by their minimal arc
    for (ci, c) in vd.resolution.circles.iter().enumerate() {
        if ci == z1 || ci == z2 {
            continue;
        }
        map[ci] = cube.circle_at(v2, c.arcs[0]);
    }
    let kind = if z1 != z2 {
        let w = cube.circle_at(v2, arcs[0]);
        map[z1] = w;
        map[z2] = w;
        EdgeKind::Merge { z1, z2, w }
    } else {
        // the 1-smoothing joins (a,b) and (c,d)
        let a = cube.circle_at(v2, arcs[0]);
        let b = cube.circle_at(v2, arcs[2]);
        debug_assert_ne!(a, b);
        EdgeKind::Split { z: z1, a, b }
    };
    EdgeData { kind, map }
}

/// Standard even-cube edge sign `(-1)^{#{j < i : v_j = 1}}`.
pub fn even_sign(v: usize, i: usize) -> i64 {
    let below = (v as u32) & ((1u32 << i) - 1);
    if below.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Build the Bar-Natan complex of the cube (even Khovanov is `h = 0`).
pub fn barnatan_complex(d: &PlanarDiagram, cube: &CubeData) -> BigradedFreeComplex {
    let mut cols: Vec<SparseCol> = vec![vec![]; cube.rank];
    for v in 0..cube.verts.len() {
        for i in 0..cube.n {
            if v >> i & 1 == 1 {
                continue;
            }
            let ed = edge_data(d, cube, v, i);
            let v2 = v | (1 << i);
            let sign = even_sign(v, i);
            for mask in 0..cube.vertex_rank(v) as u32 {
                let src = cube.gen_index(v, mask);
                let full = cube.full_mask(v, mask);
                for (tfull, mono) in bn_edge_image(cube, &ed, v, full) {
                    let m = mono.mul(&Mono::scalar(Coef::from_i64(sign)), BN_RING);
                    if m.is_zero() {
                        continue;
                    }
                    let (tmask, xp) = cube.module_mask(v2, tfull);
                    let m = if xp {
                        m.mul(&Mono::x_h_pow(Coef::ONE, 1), BN_RING)
                    } else {
                        m
                    };
                    push_term(&mut cols[src], cube.gen_index(v2, tmask) as u32, m, BN_RING);
                }
            }
        }
    }
    for col in &mut cols {
        col.sort_by_key(|e| e.0);
    }
    BigradedFreeComplex::new(BN_RING, cube.gens(), cols)
}

/// Unsigned Bar-Natan TQFT edge map on a full circle mask. Returns
/// `(target full mask, coefficient)` pairs.
fn bn_edge_image(cube: &CubeData, ed: &EdgeData, v: usize, full: u32) -> Vec<(u32, Mono)> {
    let vd = &cube.verts[v];
    let carry = |full: u32, skip1: usize, skip2: usize| -> u32 {
        let mut out = 0u32;
        for c in 0..vd.resolution.circles.len() {
            if c == skip1 || c == skip2 {
                continue;
            }
            if full >> c & 1 == 1 {
                out |= 1 << ed.map[c];
            }
        }
        out
    };
    match ed.kind {
        EdgeKind::Merge { z1, z2, w } => {
            let rest = carry(full, z1, z2);
            let x1 = full >> z1 & 1 == 1;
            let x2 = full >> z2 & 1 == 1;
            match (x1, x2) {
                (false, false) => vec![(rest, Mono::one())],
                (true, false) | (false, true) => vec![(rest | 1 << w, Mono::one())],
                // X*X = h*X
                (true, true) => vec![(rest | 1 << w, Mono::h_pow(Coef::ONE, 1))],
            }
        }
        EdgeKind::Split { z, a, b } => {
            let rest = carry(full, z, usize::MAX);
            if full >> z & 1 == 1 {
                // Delta(X) = X (x) X
                vec![(rest | 1 << a | 1 << b, Mono::one())]
            } else {
                // Delta(1) = 1 (x) X + X (x) 1 - h 1 (x) 1
                vec![
                    (rest | 1 << b, Mono::one()),
                    (rest | 1 << a, Mono::one()),
                    (rest, Mono::h_pow(Coef::from_i64(-1), 1)),
                ]
            }
        }
    }
}

pub fn push_term(col: &mut SparseCol, t: u32, m: Mono, ring: CoefficientSpec) {
    if let Some(e) = col.iter_mut().find(|(x, _)| *x == t) {
        e.1 = e.1.add(&m, ring);
        if e.1.is_zero() {
            col.retain(|(_, mm)| !mm.is_zero());
        }
    } else {
        col.push((t, m));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{FIGURE_EIGHT_PD, TREFOIL_PD};

    #[test]
    fn unknot_cube() {
        let d = PlanarDiagram::unknot();
        let cube = CubeData::new(&d);
        assert_eq!(cube.rank, 1);
        let bn = barnatan_complex(&d, &cube);
        assert_eq!(bn.gens, vec![(0, 1)]);
    }

    #[test]
    fn total_generator_count() {
        // full rank is sum over vertices of 2^{#circles}
        for pd in [TREFOIL_PD, FIGURE_EIGHT_PD] {
            let d = PlanarDiagram::parse_pd(pd).unwrap();
            let cube = CubeData::new(&d);
            let full: usize = cube
                .verts
                .iter()
                .map(|vd| 1usize << vd.resolution.circles.len())
                .sum();
            assert_eq!(2 * cube.rank, full);
        }
    }

    #[test]
    fn barnatan_cube_d_squared() {
        for pd in [TREFOIL_PD, FIGURE_EIGHT_PD] {
            let d = PlanarDiagram::parse_pd(pd).unwrap();
            let cube = CubeData::new(&d);
            let bn = barnatan_complex(&d, &cube);
            assert!(bn.d_squared_is_zero(), "d^2 != 0 for {pd}");
            let even = bn.set_h_zero();
            assert!(even.d_squared_is_zero());
        }
    }

    #[test]
    fn trefoil_gradings() {
        let d = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap();
        let cube = CubeData::new(&d);
        let bn = barnatan_complex(&d, &cube);
        let hs = bn.h_range();
        assert_eq!(hs, 0..=3);
        // all quantum gradings odd
        assert!(bn.gens.iter().all(|g| g.1 % 2 != 0));
    }
}
