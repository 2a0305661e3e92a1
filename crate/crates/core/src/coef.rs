//! Exact integer coefficients.
//!
//! `Coef` is an arbitrary-precision integer that stays inline (a single
//! `i64`) until arithmetic overflows, at which point it promotes itself to a
//! heap-allocated big integer. Elimination and Smith normal form run over
//! millions of small entries, so the inline fast path matters; overflow
//! promotion keeps every result exact.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coef {
    Small(i64),
    Big(Box<BigInt>),
}

use Coef::{Big, Small};

impl Coef {
    pub const ZERO: Coef = Small(0);
    pub const ONE: Coef = Small(1);

    pub fn from_i64(v: i64) -> Self {
        Small(v)
    }

    pub fn from_big(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => Small(s),
            None => Big(Box::new(v)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Small(v) => BigInt::from(*v),
            Big(v) => (**v).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Small(v) => Some(*v),
            Big(v) => v.to_i64(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Small(v) => *v == 0,
            Big(v) => v.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Small(1))
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Small(1) | Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Small(v) => *v < 0,
            Big(v) => v.is_negative(),
        }
    }

    pub fn abs(&self) -> Coef {
        match self {
            Small(v) => match v.checked_abs() {
                Some(a) => Small(a),
                None => Coef::from_big(BigInt::from(*v).abs()),
            },
            Big(v) => Coef::from_big(v.abs()),
        }
    }

    pub fn neg(&self) -> Coef {
        match self {
            Small(v) => match v.checked_neg() {
                Some(n) => Small(n),
                None => Coef::from_big(-BigInt::from(*v)),
            },
            Big(v) => Coef::from_big(-(**v).clone()),
        }
    }

    pub fn add(&self, other: &Coef) -> Coef {
        if let (Small(a), Small(b)) = (self, other) {
            if let Some(s) = a.checked_add(*b) {
                return Small(s);
            }
        }
        Coef::from_big(self.to_big() + other.to_big())
    }

    pub fn sub(&self, other: &Coef) -> Coef {
        if let (Small(a), Small(b)) = (self, other) {
            if let Some(s) = a.checked_sub(*b) {
                return Small(s);
            }
        }
        Coef::from_big(self.to_big() - other.to_big())
    }

    pub fn mul(&self, other: &Coef) -> Coef {
        if let (Small(a), Small(b)) = (self, other) {
            if let Some(s) = a.checked_mul(*b) {
                return Small(s);
            }
        }
        Coef::from_big(self.to_big() * other.to_big())
    }

    /// Exact division; panics if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Coef) -> Coef {
        if let (Small(a), Small(b)) = (self, other) {
            if *b != 0 && *b != -1 {
                debug_assert_eq!(a % b, 0, "inexact division {a}/{b}");
                return Small(a / b);
            }
        }
        let (q, r) = self.to_big().div_rem(&other.to_big());
        assert!(r.is_zero(), "inexact division");
        Coef::from_big(q)
    }

    pub fn divides(&self, other: &Coef) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        if let (Small(a), Small(b)) = (self, other) {
            if *a != -1 {
                return b % a == 0;
            }
        }
        other.to_big().mod_floor(&self.to_big()).is_zero()
    }

    /// Euclidean quotient and remainder with `|r| < |other|`.
    pub fn div_rem(&self, other: &Coef) -> (Coef, Coef) {
        if let (Small(a), Small(b)) = (self, other) {
            if *b != 0 && !(*a == i64::MIN && *b == -1) {
                return (Small(a / b), Small(a % b));
            }
        }
        let (q, r) = self.to_big().div_rem(&other.to_big());
        (Coef::from_big(q), Coef::from_big(r))
    }

    pub fn gcd(&self, other: &Coef) -> Coef {
        if let (Small(a), Small(b)) = (self, other) {
            if *a != i64::MIN && *b != i64::MIN {
                return Small(gcd_i64(a.abs(), b.abs()));
            }
        }
        Coef::from_big(self.to_big().gcd(&other.to_big()))
    }

    /// Residue in `0..m` for a positive small modulus.
    pub fn rem_u64(&self, m: u64) -> u64 {
        match self {
            Small(v) => (v.rem_euclid(m as i64)) as u64,
            Big(v) => {
                let r = (**v).mod_floor(&BigInt::from(m));
                r.to_u64().unwrap()
            }
        }
    }

    pub fn pow_u32(&self, e: u32) -> Coef {
        let mut r = Coef::ONE;
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn bits(&self) -> u64 {
        match self {
            Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Big(v) => v.bits(),
        }
    }
}

fn gcd_i64(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

impl PartialOrd for Coef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coef {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Small(a), Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<i64> for Coef {
    fn from(v: i64) -> Self {
        Small(v)
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Small(v) => write!(f, "{v}"),
            Big(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
