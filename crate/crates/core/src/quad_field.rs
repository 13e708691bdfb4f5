//! Exact arithmetic in a real quadratic field Q(√d).
//!
//! Every number handled by the algebra layer is of the form `u + v·√d` with
//! rational `u`, `v` and one fixed non-negative integer `d` per parameter
//! set. Rationals are arbitrary precision; powers of the idempotent
//! numerators overflow 64-bit integers almost immediately.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, SrgError};

/// Exact sign of a quadratic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of_rational(q: &BigRational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// `u + v·√d` with `u`, `v` rational.
///
/// When `d` is a perfect square the radical is folded into `u`, so `v` is
/// always zero in that case. A number with `v == 0` is rational and combines
/// freely with numbers of any discriminant.
#[derive(Debug, Clone)]
pub struct QuadNum {
    u: BigRational,
    v: BigRational,
    d: u64,
}

pub(crate) fn perfect_square_root(d: u64) -> Option<u64> {
    let root = d.sqrt();
    (root * root == d).then_some(root)
}

impl QuadNum {
    pub fn new(u: BigRational, v: BigRational, d: u64) -> QuadNum {
        match perfect_square_root(d) {
            Some(root) => QuadNum {
                u: u + v * BigRational::from_integer(BigInt::from(root)),
                v: BigRational::zero(),
                d,
            },
            None => QuadNum { u, v, d },
        }
    }

    /// A rational number living in Q(√d).
    pub fn rational(q: BigRational, d: u64) -> QuadNum {
        QuadNum { u: q, v: BigRational::zero(), d }
    }

    pub fn integer(k: i64, d: u64) -> QuadNum {
        QuadNum::rational(BigRational::from_integer(BigInt::from(k)), d)
    }

    pub fn ratio(num: i64, den: i64, d: u64) -> QuadNum {
        QuadNum::rational(BigRational::new(BigInt::from(num), BigInt::from(den)), d)
    }

    pub fn zero(d: u64) -> QuadNum {
        QuadNum::integer(0, d)
    }

    pub fn one(d: u64) -> QuadNum {
        QuadNum::integer(1, d)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: u64) -> QuadNum {
        QuadNum::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn u(&self) -> &BigRational {
        &self.u
    }

    pub fn v(&self) -> &BigRational {
        &self.v
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// The rational value, if the radical part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.u)
    }

    /// `v ↦ -v`, the non-trivial field automorphism.
    pub fn conjugate(&self) -> QuadNum {
        QuadNum { u: self.u.clone(), v: -self.v.clone(), d: self.d }
    }

    fn common_d(&self, other: &QuadNum) -> Result<u64> {
        match (self.is_rational(), other.is_rational()) {
            (false, false) if self.d != other.d => Err(SrgError::MixedDiscriminant {
                left: self.d,
                right: other.d,
            }),
            (false, _) => Ok(self.d),
            (true, false) => Ok(other.d),
            (true, true) => Ok(if self.d != 0 { self.d } else { other.d }),
        }
    }

    pub fn try_add(&self, other: &QuadNum) -> Result<QuadNum> {
        let d = self.common_d(other)?;
        Ok(QuadNum::new(&self.u + &other.u, &self.v + &other.v, d))
    }

    pub fn try_sub(&self, other: &QuadNum) -> Result<QuadNum> {
        let d = self.common_d(other)?;
        Ok(QuadNum::new(&self.u - &other.u, &self.v - &other.v, d))
    }

    pub fn try_mul(&self, other: &QuadNum) -> Result<QuadNum> {
        let d = self.common_d(other)?;
        let dq = BigRational::from_integer(BigInt::from(d));
        let u = &self.u * &other.u + &self.v * &other.v * dq;
        let v = &self.u * &other.v + &other.u * &self.v;
        Ok(QuadNum::new(u, v, d))
    }

    /// `u² - v²d`, the field norm.
    pub fn norm(&self) -> BigRational {
        let dq = BigRational::from_integer(BigInt::from(self.d));
        &self.u * &self.u - &self.v * &self.v * dq
    }

    pub fn try_recip(&self) -> Result<QuadNum> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(SrgError::DivisionByZero { d: self.d });
        }
        Ok(QuadNum::new(&self.u / &norm, -(&self.v / &norm), self.d))
    }

    pub fn try_div(&self, other: &QuadNum) -> Result<QuadNum> {
        self.try_mul(&other.try_recip()?)
    }

    /// Exact `k`-th power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> QuadNum {
        let mut base = self.clone();
        let mut acc = QuadNum::one(self.d);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact sign, decided by comparing `u²` with `v²d`.
    pub fn sign(&self) -> Sign {
        let su = Sign::of_rational(&self.u);
        let sv = Sign::of_rational(&self.v);
        match (su, sv) {
            (Sign::Zero, s) | (s, Sign::Zero) => s,
            (a, b) if a == b => a,
            // Opposite signs: the larger magnitude wins.
            _ => {
                let dq = BigRational::from_integer(BigInt::from(self.d));
                let u2 = &self.u * &self.u;
                let v2d = &self.v * &self.v * dq;
                match u2.cmp(&v2d) {
                    std::cmp::Ordering::Greater => su,
                    std::cmp::Ordering::Equal => Sign::Zero,
                    std::cmp::Ordering::Less => su.flip(),
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    /// Exact comparison of two numbers in the same field.
    pub fn try_cmp(&self, other: &QuadNum) -> Result<std::cmp::Ordering> {
        Ok(match self.try_sub(other)?.sign() {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        })
    }

    /// Nearest `f64`. Only for display and advisory bounds; every verdict
    /// goes through [`QuadNum::sign`].
    pub fn to_f64(&self) -> f64 {
        let u = ratio_to_f64(&self.u);
        if self.is_rational() {
            return u;
        }
        let root = (self.d as f64).sqrt();
        let v = ratio_to_f64(&self.v);
        if self.u.is_zero() || self.u.is_positive() == self.v.is_positive() {
            u + v * root
        } else {
            // u + v√d = (u² - v²d) / (u - v√d) avoids cancellation.
            ratio_to_f64(&self.norm()) / (u - v * root)
        }
    }
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_positive() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    })
}

impl PartialEq for QuadNum {
    fn eq(&self, other: &QuadNum) -> bool {
        self.u == other.u && self.v == other.v && (self.v.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadNum {}

impl From<BigRational> for QuadNum {
    fn from(q: BigRational) -> QuadNum {
        QuadNum::rational(q, 0)
    }
}

impl From<i64> for QuadNum {
    fn from(k: i64) -> QuadNum {
        QuadNum::integer(k, 0)
    }
}

// Operator forms panic on mixed discriminants; inside one parameter set every
// number shares the same d, so the checked `try_*` forms are only needed at
// API boundaries.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                self.$checked(rhs).expect(concat!("QuadNum::", stringify!($method)))
            }
        }
        impl $trait<QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadNum> for QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: &QuadNum) -> QuadNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadNum> for &QuadNum {
            type Output = QuadNum;
            fn $method(self, rhs: QuadNum) -> QuadNum {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { u: -self.u.clone(), v: -self.v.clone(), d: self.d }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

/// Serialized as `num/den`, `num/den*sqrt(d)` or `num/den+num/den*sqrt(d)`;
/// integers drop the `/1`.
impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.u);
        }
        if !self.u.is_zero() {
            write!(f, "{}", self.u)?;
            if self.v.is_positive() {
                write!(f, "+")?;
            }
        }
        write!(f, "{}*sqrt({})", self.v, self.d)
    }
}

impl FromStr for QuadNum {
    type Err = SrgError;

    fn from_str(s: &str) -> Result<QuadNum> {
        let bad = || SrgError::Parse(format!("not a quadratic number: `{s}`"));
        let parse_q = |t: &str| -> Result<BigRational> {
            t.trim_start_matches('+').parse::<BigRational>().map_err(|_| bad())
        };
        let s = s.trim();
        let Some((head, tail)) = s.split_once("*sqrt(") else {
            return Ok(QuadNum::from(parse_q(s)?));
        };
        let d: u64 = tail.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        // The radical coefficient starts at the last sign that is not leading.
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, ch)| ch == '+' || ch == '-')
            .map(|(i, _)| i)
            .last();
        let (u, v) = match split {
            Some(i) => (parse_q(&head[..i])?, parse_q(&head[i..])?),
            None => (BigRational::zero(), parse_q(head)?),
        };
        Ok(QuadNum::new(u, v, d))
    }
}
