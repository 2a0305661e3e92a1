//! Coefficient specifications and homogeneous ring elements.
//!
//! All complexes in this crate are free modules over one of a small family
//! of graded rings: `Z`, `Z/m`, `F_p`, `Q`, the polynomial ring `base[h]`,
//! the exterior ring `base[X]/(X^2)`, and the deformed Frobenius ring
//! `base[X,h]/(X^2 - hX)`. Both `h` and `X` sit in quantum grading `-2`, so
//! a homogeneous element of grading `-2k` has the form
//! `c*h^k + x*X*h^(k-1)`, which is what [`Mono`] stores.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coef::Coef;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BaseRing {
    Int,
    Fp(u64),
}

impl BaseRing {
    pub fn reduce(&self, c: &Coef) -> Coef {
        match self {
            BaseRing::Int => c.clone(),
            BaseRing::Fp(p) => Coef::from_i64(c.rem_u64(*p) as i64),
        }
    }

    pub fn is_unit(&self, c: &Coef) -> bool {
        match self {
            BaseRing::Int => c.is_unit(),
            BaseRing::Fp(p) => c.rem_u64(*p) != 0,
        }
    }

    /// Inverse of a unit scalar.
    pub fn inv(&self, c: &Coef) -> Coef {
        match self {
            BaseRing::Int => {
                assert!(c.is_unit());
                c.clone()
            }
            BaseRing::Fp(p) => {
                let a = c.rem_u64(*p);
                Coef::from_i64(mod_inv(a, *p) as i64)
            }
        }
    }
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid; p is prime and a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

/// The coefficient specification of a complex.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CoefficientSpec {
    Integers,
    IntegersMod(u64),
    PrimeField(u64),
    Rationals,
    /// `base[h]`, `h` of quantum grading -2.
    PolyH(BaseRing),
    /// `base[X]/(X^2)`, `X` of quantum grading -2.
    Exterior(BaseRing),
    /// `base[X,h]/(X^2 - hX)`, both generators of quantum grading -2.
    BarNatanRing(BaseRing),
}

impl CoefficientSpec {
    pub fn base(&self) -> BaseRing {
        match self {
            CoefficientSpec::Integers | CoefficientSpec::Rationals => BaseRing::Int,
            CoefficientSpec::IntegersMod(_) => BaseRing::Int,
            CoefficientSpec::PrimeField(p) => BaseRing::Fp(*p),
            CoefficientSpec::PolyH(b)
            | CoefficientSpec::Exterior(b)
            | CoefficientSpec::BarNatanRing(b) => *b,
        }
    }

    pub fn has_h(&self) -> bool {
        matches!(
            self,
            CoefficientSpec::PolyH(_) | CoefficientSpec::BarNatanRing(_)
        )
    }

    pub fn has_x(&self) -> bool {
        matches!(
            self,
            CoefficientSpec::Exterior(_) | CoefficientSpec::BarNatanRing(_)
        )
    }

    /// Scalar rings admit direct homology computations.
    pub fn is_scalar(&self) -> bool {
        matches!(
            self,
            CoefficientSpec::Integers
                | CoefficientSpec::IntegersMod(_)
                | CoefficientSpec::PrimeField(_)
                | CoefficientSpec::Rationals
        )
    }

    /// The ring obtained by setting `h = 0`.
    pub fn mod_h(&self) -> CoefficientSpec {
        match self {
            CoefficientSpec::PolyH(BaseRing::Int) => CoefficientSpec::Integers,
            CoefficientSpec::PolyH(BaseRing::Fp(p)) => CoefficientSpec::PrimeField(*p),
            CoefficientSpec::BarNatanRing(b) => CoefficientSpec::Exterior(*b),
            other => *other,
        }
    }
}

impl fmt::Display for CoefficientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientSpec::Integers => write!(f, "Z"),
            CoefficientSpec::IntegersMod(m) => write!(f, "Z/{m}"),
            CoefficientSpec::PrimeField(p) => write!(f, "F{p}"),
            CoefficientSpec::Rationals => write!(f, "Q"),
            CoefficientSpec::PolyH(BaseRing::Int) => write!(f, "Z[h]"),
            CoefficientSpec::PolyH(BaseRing::Fp(p)) => write!(f, "F{p}[h]"),
            CoefficientSpec::Exterior(BaseRing::Int) => write!(f, "Z[X]/(X^2)"),
            CoefficientSpec::Exterior(BaseRing::Fp(p)) => write!(f, "F{p}[X]/(X^2)"),
            CoefficientSpec::BarNatanRing(BaseRing::Int) => write!(f, "Z[X,h]/(X^2-hX)"),
            CoefficientSpec::BarNatanRing(BaseRing::Fp(p)) => write!(f, "F{p}[X,h]/(X^2-hX)"),
        }
    }
}

/// A homogeneous ring element `c*h^k + x*X*h^(k-1)` of quantum grading `-2k`.
///
/// In the exterior ring the `h` power is formal: `k = 0` is the scalar part
/// and `k = 1` with `c = 0` is a multiple of `X`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mono {
    pub c: Coef,
    pub x: Coef,
    pub k: u16,
}

impl Mono {
    pub const ZERO: Mono = Mono {
        c: Coef::ZERO,
        x: Coef::ZERO,
        k: 0,
    };

    pub fn scalar(c: Coef) -> Mono {
        Mono {
            c,
            x: Coef::ZERO,
            k: 0,
        }
    }

    pub fn one() -> Mono {
        Mono::scalar(Coef::ONE)
    }

    pub fn h_pow(c: Coef, k: u16) -> Mono {
        Mono {
            c,
            x: Coef::ZERO,
            k,
        }
    }

    /// `x * X * h^(k-1)`; the element has quantum grading `-2k`.
    pub fn x_h_pow(x: Coef, k: u16) -> Mono {
        assert!(k >= 1);
        Mono {
            c: Coef::ZERO,
            x,
            k,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.x.is_zero()
    }

    /// Quantum grading, `-2k` (zero elements report grading 0 when `k = 0`).
    pub fn grade(&self) -> i32 {
        -2 * self.k as i32
    }

    pub fn normalize(mut self, ring: CoefficientSpec) -> Mono {
        match ring {
            CoefficientSpec::IntegersMod(m) => {
                self.c = Coef::from_i64(self.c.rem_u64(m) as i64);
            }
            _ => {
                let b = ring.base();
                self.c = b.reduce(&self.c);
                self.x = b.reduce(&self.x);
            }
        }
        if self.c.is_zero() && self.x.is_zero() {
            self.k = 0;
        }
        self
    }

    pub fn neg(&self) -> Mono {
        Mono {
            c: self.c.neg(),
            x: self.x.neg(),
            k: self.k,
        }
    }

    /// Sum of homogeneous elements of the same grading.
    pub fn add(&self, other: &Mono, ring: CoefficientSpec) -> Mono {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        debug_assert_eq!(self.k, other.k, "adding monomials of different grade");
        Mono {
            c: self.c.add(&other.c),
            x: self.x.add(&other.x),
            k: self.k,
        }
        .normalize(ring)
    }

    pub fn mul(&self, other: &Mono, ring: CoefficientSpec) -> Mono {
        if self.is_zero() || other.is_zero() {
            return Mono::ZERO;
        }
        let k = self.k + other.k;
        let c = self.c.mul(&other.c);
        // X^2 = hX in the Bar-Natan ring, X^2 = 0 in the exterior ring.
        let mut x = self.c.mul(&other.x).add(&self.x.mul(&other.c));
        if matches!(ring, CoefficientSpec::BarNatanRing(_)) {
            x = x.add(&self.x.mul(&other.x));
        }
        Mono { c, x, k }.normalize(ring)
    }

    /// Is this a unit of the graded ring? Homogeneous units are the
    /// grade-zero scalars that are invertible in the base.
    pub fn is_unit(&self, ring: CoefficientSpec) -> bool {
        if self.k != 0 || !self.x.is_zero() {
            return false;
        }
        match ring {
            CoefficientSpec::IntegersMod(m) => {
                let r = self.c.rem_u64(m);
                r != 0 && num_integer::gcd(r, m) == 1
            }
            CoefficientSpec::Rationals => !self.c.is_zero(),
            _ => ring.base().is_unit(&self.c),
        }
    }

    pub fn unit_inverse(&self, ring: CoefficientSpec) -> Mono {
        assert!(self.is_unit(ring));
        match ring {
            CoefficientSpec::PolyH(BaseRing::Fp(p))
            | CoefficientSpec::Exterior(BaseRing::Fp(p))
            | CoefficientSpec::BarNatanRing(BaseRing::Fp(p))
            | CoefficientSpec::PrimeField(p) => {
                Mono::scalar(Coef::from_i64(mod_inv(self.c.rem_u64(p), p) as i64))
            }
            CoefficientSpec::IntegersMod(m) => {
                Mono::scalar(Coef::from_i64(mod_inv(self.c.rem_u64(m), m) as i64))
            }
            _ => Mono::scalar(self.c.clone()), // +/-1 over Z
        }
    }

    /// Conjugation of the Bar-Natan ring: `h` fixed, `X -> h - X`.
    pub fn conj_x(&self) -> Mono {
        Mono {
            c: self.c.add(&self.x),
            x: self.x.neg(),
            k: self.k,
        }
    }

    /// Image under `h = 0`, landing in `ring.mod_h()`.
    pub fn set_h_zero(&self) -> Mono {
        match self.k {
            0 => Mono::scalar(self.c.clone()),
            1 => {
                if self.x.is_zero() {
                    Mono::ZERO
                } else {
                    Mono::x_h_pow(self.x.clone(), 1)
                }
            }
            _ => Mono::ZERO,
        }
    }

    /// Coefficient reduction to `F_p` (keeps the h/X structure).
    pub fn mod_p(&self, p: u64) -> Mono {
        let m = Mono {
            c: Coef::from_i64(self.c.rem_u64(p) as i64),
            x: Coef::from_i64(self.x.rem_u64(p) as i64),
            k: self.k,
        };
        if m.c.is_zero() && m.x.is_zero() {
            Mono::ZERO
        } else {
            m
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        if !self.c.is_zero() {
            match self.k {
                0 => parts.push(format!("{}", self.c)),
                1 => parts.push(format!("{}*h", self.c)),
                k => parts.push(format!("{}*h^{}", self.c, k)),
            }
        }
        if !self.x.is_zero() {
            match self.k {
                1 => parts.push(format!("{}*X", self.x)),
                k => parts.push(format!("{}*X*h^{}", self.x, k - 1)),
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}
