//! Oriented knot diagrams from PD codes, and their resolutions.
//!
//! A crossing `X(a,b,c,d)` lists the four arcs counterclockwise starting
//! from the incoming under-strand. The under-strand runs `a -> c`; the
//! over-strand occupies `b` and `d`, and its direction is recovered by a
//! global orientation trace. A crossing is positive exactly when the
//! over-strand enters at `b`.
//!
//! Worked example: `X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)` is a trefoil whose
//! three crossings are all positive (`n+ = 3`), the chirality with
//! `s = +2`; its mirror `X(4,1,5,2);X(6,3,1,4);X(2,5,3,6)` has `s = -2`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed PD code near `{0}`")]
    Syntax(String),
    #[error("arc {0} occurs {1} times, expected exactly 2")]
    ArcCount(u32, usize),
    #[error("diagram has more than one component")]
    MultipleComponents,
    #[error("orientation constraints are inconsistent at arc {0}")]
    Orientation(u32),
    #[error("basepoint arc {0} does not occur in the diagram")]
    BadBasepoint(u32),
}

/// One crossing, arcs listed counterclockwise from the incoming
/// under-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub arcs: [u32; 4],
    /// +1 if the over-strand enters at position 1 (`b`), -1 if at `d`.
    pub sign: i8,
}

impl Crossing {
    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }
}

#[derive(Clone, Debug)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    arcs: Vec<u32>,
    n_plus: usize,
    n_minus: usize,
    basepoint: u32,
}

/// Occurrence of an arc at a crossing position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Occ {
    crossing: usize,
    pos: usize,
}

impl PlanarDiagram {
    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        PlanarDiagram {
            crossings: vec![],
            arcs: vec![0],
            n_plus: 0,
            n_minus: 0,
            basepoint: 0,
        }
    }

    /// Build and validate a diagram from raw crossing tuples.
    pub fn from_tuples(tuples: &[[u32; 4]]) -> Result<Self, DiagramError> {
        if tuples.is_empty() {
            return Ok(Self::unknot());
        }
        let occs = arc_occurrences(tuples)?;
        let over_in = orient(tuples, &occs)?;
        let crossings: Vec<Crossing> = tuples
            .iter()
            .zip(&over_in)
            .map(|(t, &oi)| Crossing {
                arcs: *t,
                sign: if oi == 1 { 1 } else { -1 },
            })
            .collect();
        let diagram = PlanarDiagram {
            n_plus: crossings.iter().filter(|c| c.sign > 0).count(),
            n_minus: crossings.iter().filter(|c| c.sign < 0).count(),
            arcs: occs.keys().copied().collect(),
            basepoint: *occs.keys().next().unwrap(),
            crossings,
        };
        diagram.check_single_component(&occs)?;
        Ok(diagram)
    }

    /// Parse a PD-code string: `X(a,b,c,d)` atoms joined by `;`. The empty
    /// string and the token `U` denote the 0-crossing unknot.
    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let t = text.trim();
        if t.is_empty() || t == "U" {
            return Ok(Self::unknot());
        }
        let mut tuples = vec![];
        for atom in t.split(';') {
            let atom = atom.trim();
            let inner = atom
                .strip_prefix("X(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| DiagramError::Syntax(atom.to_string()))?;
            let nums: Result<Vec<u32>, _> =
                inner.split(',').map(|s| s.trim().parse::<u32>()).collect();
            let nums = nums.map_err(|_| DiagramError::Syntax(atom.to_string()))?;
            if nums.len() != 4 || nums.iter().any(|&n| n == 0) {
                return Err(DiagramError::Syntax(atom.to_string()));
            }
            tuples.push([nums[0], nums[1], nums[2], nums[3]]);
        }
        Self::from_tuples(&tuples)
    }

    pub fn to_pd_string(&self) -> String {
        if self.crossings.is_empty() {
            return "U".to_string();
        }
        self.crossings
            .iter()
            .map(|c| format!("X({},{},{},{})", c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3]))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn arcs(&self) -> &[u32] {
        &self.arcs
    }

    pub fn basepoint(&self) -> u32 {
        self.basepoint
    }

    pub fn with_basepoint(mut self, arc: u32) -> Result<Self, DiagramError> {
        if !self.arcs.contains(&arc) {
            return Err(DiagramError::BadBasepoint(arc));
        }
        self.basepoint = arc;
        Ok(self)
    }

    /// Every arc meets one under- and one over-position.
    pub fn is_alternating(&self) -> bool {
        if self.crossings.is_empty() {
            return true;
        }
        let mut under: BTreeMap<u32, usize> = BTreeMap::new();
        for c in &self.crossings {
            for (pos, &a) in c.arcs.iter().enumerate() {
                if pos % 2 == 0 {
                    *under.entry(a).or_default() += 1;
                }
            }
        }
        under.values().all(|&k| k == 1)
    }

    /// The mirror image: same projection, all crossings switched.
    pub fn mirror(&self) -> Self {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.arcs;
                // the old over-incoming arc becomes the under-incoming one;
                // the planar cyclic order is unchanged
                if c.sign > 0 {
                    [b, cc, d, a]
                } else {
                    [d, a, b, cc]
                }
            })
            .collect();
        let mut m = Self::from_tuples(&tuples).expect("mirror of a valid diagram is valid");
        m.basepoint = self.basepoint;
        m
    }

    /// Connected sum at the basepoints, with the basepoint of the result on
    /// the joining arc coming from `self`.
    pub fn connected_sum(&self, other: &PlanarDiagram) -> Self {
        if self.crossings.is_empty() {
            let mut r = other.clone();
            r.basepoint = other.basepoint;
            return r;
        }
        if other.crossings.is_empty() {
            return self.clone();
        }
        let offset = self.arcs.iter().max().unwrap() + 1;
        let mut tuples: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.arcs).collect();
        tuples.extend(other.crossings.iter().map(|c| {
            let mut t = c.arcs;
            for a in &mut t {
                *a += offset;
            }
            t
        }));

        let occs = arc_occurrences(&tuples).unwrap();
        let heads = head_occurrences(self, other, offset);
        let p1 = self.basepoint;
        let p2 = other.basepoint + offset;
        let fresh1 = offset + other.arcs.iter().max().unwrap() + 1;
        let fresh2 = fresh1 + 1;

        // cut both basepoint arcs; the outgoing half of p1 flows into the
        // head half of p2 (label fresh1), and the outgoing half of p2 flows
        // back into the head half of p1 (label fresh2)
        let relabel = |tuples: &mut Vec<[u32; 4]>, occ: Occ, label: u32| {
            tuples[occ.crossing][occ.pos] = label;
        };
        let (p1_head, p1_tail) = split_occ(&occs, &heads, p1);
        let (p2_head, p2_tail) = split_occ(&occs, &heads, p2);
        relabel(&mut tuples, p1_tail, fresh1);
        relabel(&mut tuples, p2_head, fresh1);
        relabel(&mut tuples, p2_tail, fresh2);
        relabel(&mut tuples, p1_head, fresh2);

        let mut d = Self::from_tuples(&tuples).expect("connected sum of valid diagrams is valid");
        d.basepoint = fresh1;
        d
    }

    /// Resolve the diagram at a cube vertex.
    pub fn resolve(&self, v: &[bool]) -> Resolution {
        assert_eq!(v.len(), self.crossings.len());
        let circles = trace_circles(self, v);
        let zero = if v.iter().any(|&b| b) {
            trace_circles(self, &vec![false; v.len()]).len()
        } else {
            circles.len()
        };
        let weight = v.iter().filter(|&&b| b).count();
        let diff = circles.len() as i64 - zero as i64 + weight as i64;
        debug_assert!(diff >= 0 && diff % 2 == 0);
        let basepoint_circle = circles
            .iter()
            .position(|c| c.arcs.contains(&self.basepoint))
            .expect("basepoint arc lies on some circle");
        Resolution {
            vertex: v.to_vec(),
            circles,
            basepoint_circle,
            split_count: (diff / 2) as usize,
        }
    }

    fn check_single_component(&self, occs: &BTreeMap<u32, Vec<Occ>>) -> Result<(), DiagramError> {
        // successor through each crossing: under a -> c, over in -> out
        let mut succ: BTreeMap<u32, u32> = BTreeMap::new();
        for c in &self.crossings {
            succ.insert(c.arcs[0], c.arcs[2]);
            if c.sign > 0 {
                succ.insert(c.arcs[1], c.arcs[3]);
            } else {
                succ.insert(c.arcs[3], c.arcs[1]);
            }
        }
        let start = *occs.keys().next().unwrap();
        let mut seen = 1;
        let mut cur = succ[&start];
        while cur != start {
            cur = succ[&cur];
            seen += 1;
            if seen > occs.len() {
                return Err(DiagramError::MultipleComponents);
            }
        }
        if seen != occs.len() {
            return Err(DiagramError::MultipleComponents);
        }
        Ok(())
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pd_string())
    }
}

fn arc_occurrences(tuples: &[[u32; 4]]) -> Result<BTreeMap<u32, Vec<Occ>>, DiagramError> {
    let mut occs: BTreeMap<u32, Vec<Occ>> = BTreeMap::new();
    for (ci, t) in tuples.iter().enumerate() {
        for (pos, &a) in t.iter().enumerate() {
            occs.entry(a).or_default().push(Occ { crossing: ci, pos });
        }
    }
    for (&a, v) in &occs {
        if v.len() != 2 {
            return Err(DiagramError::ArcCount(a, v.len()));
        }
    }
    Ok(occs)
}

/// Determine, for each crossing, whether the over-strand enters at position
/// 1 or 3, by propagating head/tail roles of arc occurrences.
fn orient(tuples: &[[u32; 4]], occs: &BTreeMap<u32, Vec<Occ>>) -> Result<Vec<usize>, DiagramError> {
    // role of an occurrence: true = the arc ends here (head)
    let mut role: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut queue: Vec<((usize, usize), bool)> = vec![];
    for (ci, _) in tuples.iter().enumerate() {
        queue.push(((ci, 0), true));
        queue.push(((ci, 2), false));
    }
    while let Some((key, r)) = queue.pop() {
        if let Some(&prev) = role.get(&key) {
            if prev != r {
                return Err(DiagramError::Orientation(tuples[key.0][key.1]));
            }
            continue;
        }
        role.insert(key, r);
        // the arc's other occurrence has the opposite role
        let arc = tuples[key.0][key.1];
        for o in &occs[&arc] {
            let okey = (o.crossing, o.pos);
            if okey != key {
                queue.push((okey, !r));
            }
        }
        // over positions 1 and 3 at a crossing have opposite roles
        if key.1 == 1 || key.1 == 3 {
            let partner = (key.0, 4 - key.1);
            queue.push((partner, !r));
        }
    }
    let mut over_in = vec![0usize; tuples.len()];
    for (ci, t) in tuples.iter().enumerate() {
        let r1 = role
            .get(&(ci, 1))
            .copied()
            .ok_or(DiagramError::Orientation(t[1]))?;
        over_in[ci] = if r1 { 1 } else { 3 };
    }
    Ok(over_in)
}

fn head_occurrences(
    d1: &PlanarDiagram,
    d2: &PlanarDiagram,
    offset: u32,
) -> BTreeMap<u32, (usize, usize)> {
    // head occurrence per arc of the concatenated tuple list
    let mut heads = BTreeMap::new();
    let mut add = |crossings: &[Crossing], cofs: usize, aofs: u32| {
        for (ci, c) in crossings.iter().enumerate() {
            let over_in = if c.sign > 0 { 1 } else { 3 };
            heads.insert(c.arcs[0] + aofs, (ci + cofs, 0));
            heads.insert(c.arcs[over_in] + aofs, (ci + cofs, over_in));
        }
    };
    add(&d1.crossings, 0, 0);
    add(&d2.crossings, d1.crossings.len(), offset);
    heads
}

fn split_occ(
    occs: &BTreeMap<u32, Vec<Occ>>,
    heads: &BTreeMap<u32, (usize, usize)>,
    arc: u32,
) -> (Occ, Occ) {
    let (hc, hp) = heads[&arc];
    let pair = &occs[&arc];
    let head = Occ {
        crossing: hc,
        pos: hp,
    };
    let tail = if pair[0] == head { pair[1] } else { pair[0] };
    (head, tail)
}

/// A traversal of one smoothing arc at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    /// Entry position of the traversal (the smoothing arc is `{entry, exit}`).
    pub entry: usize,
    pub exit: usize,
}

/// One circle of a complete resolution: its arcs and its cyclic sequence of
/// crossing passages.
#[derive(Clone, Debug)]
pub struct Circle {
    pub arcs: Vec<u32>,
    pub passages: Vec<Passage>,
}

/// A complete resolution of the diagram.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub vertex: Vec<bool>,
    pub circles: Vec<Circle>,
    pub basepoint_circle: usize,
    pub split_count: usize,
}

impl Resolution {
    pub fn n_circles(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_of_arc(&self, arc: u32) -> usize {
        self.circles
            .iter()
            .position(|c| c.arcs.contains(&arc))
            .expect("arc lies on some circle")
    }
}

/// Smoothing pairing of the four positions of a crossing. The 0-resolution
/// joins `(a,d)` and `(b,c)`; the 1-resolution joins `(a,b)` and `(c,d)`.
pub fn smoothing_partner(pos: usize, one_resolution: bool) -> usize {
    if one_resolution {
        [1, 0, 3, 2][pos]
    } else {
        [3, 2, 1, 0][pos]
    }
}

fn trace_circles(d: &PlanarDiagram, v: &[bool]) -> Vec<Circle> {
    if d.crossings.is_empty() {
        return vec![Circle {
            arcs: vec![d.basepoint],
            passages: vec![],
        }];
    }
    // endpoints of each arc, in deterministic order
    let mut ends: BTreeMap<u32, Vec<Occ>> = BTreeMap::new();
    for (ci, c) in d.crossings.iter().enumerate() {
        for (pos, &a) in c.arcs.iter().enumerate() {
            ends.entry(a).or_default().push(Occ { crossing: ci, pos });
        }
    }
    let mut visited: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    let mut circles = vec![];
    let keys: Vec<Occ> = ends.values().flatten().copied().collect();
    for start in keys {
        if visited.contains_key(&(start.crossing, start.pos)) {
            continue;
        }
        let mut arcs = vec![];
        let mut passages = vec![];
        // walk: at an occurrence, pass through the smoothing arc, then along
        // the next diagram arc to its other end
        let mut cur = start;
        loop {
            visited.insert((cur.crossing, cur.pos), true);
            let exit = smoothing_partner(cur.pos, v[cur.crossing]);
            visited.insert((cur.crossing, exit), true);
            passages.push(Passage {
                crossing: cur.crossing,
                entry: cur.pos,
                exit,
            });
            let arc = d.crossings[cur.crossing].arcs[exit];
            arcs.push(arc);
            let pair = &ends[&arc];
            let here = Occ {
                crossing: cur.crossing,
                pos: exit,
            };
            cur = if pair[0] == here { pair[1] } else { pair[0] };
            if cur == start {
                break;
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        circles.push(Circle { arcs, passages });
    }
    circles
}

/// One line of a knot table: `name<TAB>pdcode[<TAB>signature]`.
pub struct TableRow {
    pub name: String,
    pub diagram: PlanarDiagram,
    pub signature: Option<i64>,
}

/// Parse a batch knot-table line. Lines starting with `#` and blank lines
/// yield `None`.
pub fn parse_batch_line(line: &str) -> Result<Option<TableRow>, DiagramError> {
    let line = line.trim_end();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let mut parts = line.split('\t');
    let name = parts
        .next()
        .ok_or_else(|| DiagramError::Syntax(line.to_string()))?
        .to_string();
    let pd = parts
        .next()
        .ok_or_else(|| DiagramError::Syntax(line.to_string()))?;
    let diagram = PlanarDiagram::parse_pd(pd)?;
    let signature = match parts.next() {
        Some(s) => Some(
            s.trim()
                .parse::<i64>()
                .map_err(|_| DiagramError::Syntax(s.to_string()))?,
        ),
        None => None,
    };
    Ok(Some(TableRow {
        name,
        diagram,
        signature,
    }))
}

/// Closure of a braid word on `strands` strands. Letters are `+-k` for
/// the crossing between strands `k-1` and `k` (1-based `k`); positive
/// letters give positive crossings in this crate's sign convention.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PlanarDiagram, DiagramError> {
    assert!(strands >= 2);
    if word.is_empty() {
        return Ok(PlanarDiagram::unknot());
    }
    let mut next = strands as u32 + 1;
    let initial: Vec<u32> = (1..=strands as u32).collect();
    let mut current = initial.clone();
    let mut tuples: Vec<[u32; 4]> = vec![];
    for &letter in word {
        let k = (letter.unsigned_abs() as usize) - 1;
        assert!(k + 1 < strands, "letter out of range");
        let (l, r) = (current[k], current[k + 1]);
        let (t1, t2) = (next, next + 1);
        next += 2;
        if letter > 0 {
            // under runs left-bottom to right-top, over enters at `b`
            tuples.push([l, r, t2, t1]);
            current[k] = t1;
            current[k + 1] = t2;
        } else {
            tuples.push([r, t2, t1, l]);
            current[k] = t1;
            current[k + 1] = t2;
        }
    }
    // close the braid: identify the top labels with the bottom ones
    for t in &mut tuples {
        for a in t.iter_mut() {
            if let Some(pos) = current.iter().position(|&c| c == *a) {
                *a = initial[pos];
            }
        }
    }
    PlanarDiagram::from_tuples(&tuples)
}

pub const TREFOIL_PD: &str = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)";
pub const FIGURE_EIGHT_PD: &str = "X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_sentinel_parse_to_unknot() {
        for text in ["", "U", "  "] {
            let d = PlanarDiagram::parse_pd(text).unwrap();
            assert_eq!(d.n_crossings(), 0);
        }
    }

    #[test]
    fn trefoil_signs_via_orientation_trace() {
        let d = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap();
        assert_eq!(d.n_crossings(), 3);
        assert_eq!((d.n_plus(), d.n_minus()), (3, 0));
        assert!(d.is_alternating());
    }

    #[test]
    fn figure_eight_is_balanced() {
        let d = PlanarDiagram::parse_pd(FIGURE_EIGHT_PD).unwrap();
        assert_eq!(d.n_crossings(), 4);
        assert_eq!(d.n_plus() + d.n_minus(), 4);
        assert_eq!(d.writhe(), 0);
        assert!(d.is_alternating());
    }

    #[test]
    fn two_component_input_is_rejected() {
        // truncated trefoil: arcs 2, 5, 3, 6 occur once
        assert!(PlanarDiagram::parse_pd("X(1,4,2,5);X(3,6,4,1)").is_err());
        // Hopf link: arc counts fine, two components
        let err = PlanarDiagram::parse_pd("X(1,3,2,4);X(3,1,4,2)").unwrap_err();
        assert_eq!(err, DiagramError::MultipleComponents);
    }

    #[test]
    fn arc_count_is_validated() {
        let err = PlanarDiagram::parse_pd("X(1,2,3,4)").unwrap_err();
        assert!(matches!(err, DiagramError::ArcCount(_, 1)));
    }

    #[test]
    fn mirror_swaps_signs_and_is_involutive() {
        let d = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap();
        let m = d.mirror();
        assert_eq!((m.n_plus(), m.n_minus()), (0, 3));
        let mm = m.mirror();
        assert_eq!((mm.n_plus(), mm.n_minus()), (3, 0));
        assert_eq!(mm.n_crossings(), d.n_crossings());
    }

    #[test]
    fn resolve_counts_circles_on_the_trefoil() {
        let d = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap();
        let r000 = d.resolve(&[false, false, false]);
        assert_eq!(r000.n_circles(), 2);
        assert_eq!(r000.split_count, 0);
        let r111 = d.resolve(&[true, true, true]);
        assert_eq!(r111.n_circles(), 3);
        // Split(111) = (3 - 2 + 3)/2 = 2
        assert_eq!(r111.split_count, 2);
    }

    #[test]
    fn unknot_resolution() {
        let d = PlanarDiagram::unknot();
        let r = d.resolve(&[]);
        assert_eq!(r.n_circles(), 1);
        assert_eq!(r.split_count, 0);
        assert_eq!(r.basepoint_circle, 0);
    }

    #[test]
    fn cube_edges_merge_or_split() {
        // |circles| changes by exactly one along every cube edge
        for pd in [TREFOIL_PD, FIGURE_EIGHT_PD] {
            let d = PlanarDiagram::parse_pd(pd).unwrap();
            let n = d.n_crossings();
            for v in 0..(1u32 << n) {
                let bits: Vec<bool> = (0..n).map(|i| v >> i & 1 == 1).collect();
                let c = d.resolve(&bits).n_circles() as i64;
                for i in 0..n {
                    if v >> i & 1 == 0 {
                        let mut b2 = bits.clone();
                        b2[i] = true;
                        let c2 = d.resolve(&b2).n_circles() as i64;
                        assert_eq!((c2 - c).abs(), 1);
                        let s = d.resolve(&bits).split_count;
                        let s2 = d.resolve(&b2).split_count;
                        assert!(s2 == s || s2 == s + 1);
                        assert_eq!(s2 == s + 1, c2 == c + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn connected_sum_adds_crossings() {
        let d = PlanarDiagram::parse_pd(TREFOIL_PD).unwrap();
        let s = d.connected_sum(&d);
        assert_eq!(s.n_crossings(), 6);
        assert_eq!((s.n_plus(), s.n_minus()), (6, 0));
        let u = d.connected_sum(&PlanarDiagram::unknot());
        assert_eq!(u.n_crossings(), 3);
    }

    #[test]
    fn circle_tracing_matches_union_find_oracle() {
        // independent circle count: union-find over arcs joined by smoothings
        fn circles_uf(d: &PlanarDiagram, v: &[bool]) -> usize {
            let arcs = d.arcs();
            let idx = |a: u32| arcs.iter().position(|&x| x == a).unwrap();
            let mut parent: Vec<usize> = (0..arcs.len()).collect();
            fn find(p: &mut Vec<usize>, i: usize) -> usize {
                if p[i] != i {
                    let r = find(p, p[i]);
                    p[i] = r;
                }
                p[i]
            }
            for (ci, c) in d.crossings().iter().enumerate() {
                let pairs = if v[ci] { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
                for (p, q) in pairs {
                    let (i, j) = (idx(c.arcs[p]), idx(c.arcs[q]));
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
            let mut roots: Vec<usize> = (0..arcs.len()).map(|i| find(&mut parent, i)).collect();
            roots.sort_unstable();
            roots.dedup();
            roots.len()
        }
        for pd in [TREFOIL_PD, FIGURE_EIGHT_PD] {
            let d = PlanarDiagram::parse_pd(pd).unwrap();
            let n = d.n_crossings();
            for v in 0..(1u32 << n) {
                let bits: Vec<bool> = (0..n).map(|i| v >> i & 1 == 1).collect();
                assert_eq!(d.resolve(&bits).n_circles(), circles_uf(&d, &bits));
            }
        }
    }

    #[test]
    fn batch_line_parsing() {
        let row = parse_batch_line("3_1\tX(1,4,2,5);X(3,6,4,1);X(5,2,6,3)\t-2")
            .unwrap()
            .unwrap();
        assert_eq!(row.name, "3_1");
        assert_eq!(row.signature, Some(-2));
        assert!(parse_batch_line("# comment").unwrap().is_none());
        assert!(parse_batch_line("").unwrap().is_none());
    }
}
