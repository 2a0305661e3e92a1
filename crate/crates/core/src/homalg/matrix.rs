//! Dense exact matrices over `Z` and `F_p`, with Smith normal form.
//!
//! Everything downstream of Gaussian simplification is small (tens to a few
//! hundred generators per bigrading), so dense arithmetic with
//! arbitrary-precision entries is the simple and safe choice.

use crate::coef::Coef;
use crate::ring::mod_inv;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    a: Vec<Coef>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            a: vec![Coef::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Coef::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Coef::from_i64(v);
            }
        }
        m
    }

    pub fn from_cols(ambient: usize, cols: &[Vec<Coef>]) -> Self {
        let mut m = Self::zero(ambient, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<Coef> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let t = self[(i, k)].mul(&other[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Coef]) -> Vec<Coef> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Coef::ZERO;
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        s = s.add(&self[(i, j)].mul(&v[j]));
                    }
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut out = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn hcat(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn max_bits(&self) -> u64 {
        self.a.iter().map(|v| v.bits()).max().unwrap_or(0)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.a.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.a.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    /// row[i] += f * row[j]
    fn add_row(&mut self, i: usize, j: usize, f: &Coef) {
        if f.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let t = self[(j, k)].mul(f);
            self[(i, k)] = self[(i, k)].add(&t);
        }
    }

    /// col[i] += f * col[j]
    fn add_col(&mut self, i: usize, j: usize, f: &Coef) {
        if f.is_zero() {
            return;
        }
        for k in 0..self.rows {
            let t = self[(k, j)].mul(f);
            self[(k, i)] = self[(k, i)].add(&t);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            self[(i, k)] = self[(i, k)].neg();
        }
    }

    fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            self[(k, j)] = self[(k, j)].neg();
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = Coef;
    fn index(&self, (i, j): (usize, usize)) -> &Coef {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Coef {
        &mut self.a[i * self.cols + j]
    }
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            writeln!(
                f,
                "[{}]",
                (0..self.cols)
                    .map(|j| format!("{}", self[(i, j)]))
                    .collect::<Vec<_>>()
                    .join(", ")
            )?;
        }
        Ok(())
    }
}

/// `u * m * v = s` with `s` diagonal, nonnegative, `d_i | d_{i+1}`, and
/// `u`, `v` unimodular. Inverses are tracked so systems can be solved.
pub struct Snf {
    pub s: IntMat,
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

impl Snf {
    pub fn rank(&self) -> usize {
        let n = self.s.rows.min(self.s.cols);
        (0..n).filter(|&i| !self.s[(i, i)].is_zero()).count()
    }

    pub fn divisors(&self) -> Vec<Coef> {
        let n = self.s.rows.min(self.s.cols);
        (0..n)
            .map(|i| self.s[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    /// Basis of the integer kernel of `m` (columns of `v` past the rank).
    pub fn kernel_basis(&self) -> Vec<Vec<Coef>> {
        let r = self.rank();
        (r..self.s.cols).map(|j| self.v.col(j)).collect()
    }

    /// Solve `m * x = b` over the integers.
    pub fn solve(&self, b: &[Coef]) -> Option<Vec<Coef>> {
        let ub = self.u.mul_vec(b);
        let n = self.s.cols;
        let mut y = vec![Coef::ZERO; n];
        for i in 0..self.s.rows {
            let d = if i < n { self.s[(i, i)].clone() } else { Coef::ZERO };
            if d.is_zero() {
                if !ub[i].is_zero() {
                    return None;
                }
            } else {
                if !d.divides(&ub[i]) {
                    return None;
                }
                y[i] = ub[i].div_exact(&d);
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

/// Smith normal form with smallest-pivot selection.
pub fn smith_normal_form(m: &IntMat) -> Snf {
    let mut s = m.clone();
    let (rows, cols) = (s.rows, s.cols);
    let mut u = IntMat::identity(rows);
    let mut u_inv = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut v_inv = IntMat::identity(cols);

    // row op on s mirrors on u, inverse op on u_inv (columns)
    macro_rules! row_add {
        ($i:expr, $j:expr, $f:expr) => {{
            let f = $f;
            s.add_row($i, $j, &f);
            u.add_row($i, $j, &f);
            u_inv.add_col($j, $i, &f.neg());
        }};
    }
    macro_rules! col_add {
        ($i:expr, $j:expr, $f:expr) => {{
            let f = $f;
            s.add_col($i, $j, &f);
            v.add_col($i, $j, &f);
            v_inv.add_row($j, $i, &f.neg());
        }};
    }

    let n = rows.min(cols);
    let mut k = 0;
    while k < n {
        // smallest nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if s[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if s[(i, j)].abs() < s[(bi, bj)].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(k, pi);
        u.swap_rows(k, pi);
        u_inv.swap_cols(k, pi);
        s.swap_cols(k, pj);
        v.swap_cols(k, pj);
        v_inv.swap_rows(k, pj);

        // clear row and column k by Euclidean steps
        let mut again = true;
        while again {
            again = false;
            for i in k + 1..rows {
                if s[(i, k)].is_zero() {
                    continue;
                }
                let (q, r) = s[(i, k)].div_rem(&s[(k, k)]);
                row_add!(i, k, q.neg());
                if !r.is_zero() {
                    s.swap_rows(k, i);
                    u.swap_rows(k, i);
                    u_inv.swap_cols(k, i);
                    again = true;
                }
            }
            for j in k + 1..cols {
                if s[(k, j)].is_zero() {
                    continue;
                }
                let (q, r) = s[(k, j)].div_rem(&s[(k, k)]);
                col_add!(j, k, q.neg());
                if !r.is_zero() {
                    s.swap_cols(k, j);
                    v.swap_cols(k, j);
                    v_inv.swap_rows(k, j);
                    again = true;
                }
            }
        }

        // divisibility: fold any non-multiple into position k and redo
        let mut redo = false;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !s[(k, k)].divides(&s[(i, j)]) {
                    row_add!(k, i, Coef::ONE);
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }
        if s[(k, k)].is_negative() {
            s.negate_row(k);
            u.negate_row(k);
            u_inv.negate_col(k);
        }
        k += 1;
    }
    debug_assert!({
        let chk = u.mul(m).mul(&v);
        chk == s
    });
    Snf {
        s,
        u,
        u_inv,
        v,
        v_inv,
    }
}

/// Dense matrix over `F_p`.
#[derive(Clone, Debug)]
pub struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    a: Vec<u64>,
}

impl FpMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMat {
            p,
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_int(m: &IntMat, p: u64) -> Self {
        let mut out = Self::zero(p, m.rows, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                out[(i, j)] = m[(i, j)].rem_u64(p);
            }
        }
        out
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = FpMat::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let s = self[(i, k)];
                if s == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = (out[(i, j)] + s * other[(k, j)]) % self.p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for j in 0..self.cols {
                    s = (s + self[(i, j)] * (v[j] % self.p)) % self.p;
                }
                s
            })
            .collect()
    }

    pub fn hcat(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.rows, other.rows);
        let mut out = FpMat::zero(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = vec![];
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self[(i, c)] != 0) else {
                continue;
            };
            for k in 0..self.cols {
                self.a.swap(r * self.cols + k, pr * self.cols + k);
            }
            let inv = mod_inv(self[(r, c)], self.p);
            for k in 0..self.cols {
                self[(r, k)] = self[(r, k)] * inv % self.p;
            }
            for i in 0..self.rows {
                if i != r && self[(i, c)] != 0 {
                    let f = self[(i, c)];
                    for k in 0..self.cols {
                        let t = (self.p - f * self[(r, k)] % self.p) % self.p;
                        self[(i, k)] = (self[(i, k)] + t) % self.p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.sort_unstable();
        let mut out = vec![];
        for &fc in &free {
            let mut v = vec![0u64; self.cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (self.p - m[(r, fc)]) % self.p;
            }
            out.push(v);
        }
        out
    }

    /// Solve `m x = b`, if possible.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let bm = FpMat {
            p: self.p,
            rows: self.rows,
            cols: 1,
            a: b.iter().map(|x| x % self.p).collect(),
        };
        let mut aug = self.hcat(&bm);
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)];
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for FpMat {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FpMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.a[i * self.cols + j]
    }
}
