//! Parameter sets, spectra, idempotent coordinates and `|A|^x`.
//!
//! An algebra element is stored by its coordinates in the disjoint-support
//! basis `{I, A, J - A - I}`: diagonal, adjacent pairs, non-adjacent pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SrgError};
use crate::quad_field::QuadNum;

/// Upper limit on `n`; keeps the discriminant and every intermediate
/// integer product comfortably inside 64 bits.
pub const MAX_ORDER: i64 = 1 << 30;

/// A strongly regular parameter tuple `(n, p; a, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SrgParams {
    n: u64,
    p: u64,
    a: u64,
    c: u64,
}

impl SrgParams {
    pub fn n(&self) -> u64 {
        self.n
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64) {
        (self.n, self.p, self.a, self.c)
    }

    /// `d = (a - c)² + 4(p - c)`.
    pub fn discriminant(&self) -> u64 {
        let diff = self.a.abs_diff(self.c);
        diff * diff + 4 * (self.p - self.c)
    }

    /// `p(p-a-1) - (n-p-1)c`; zero for every realizable tuple.
    pub fn counting_defect(&self) -> i128 {
        let (n, p, a, c) = (self.n as i128, self.p as i128, self.a as i128, self.c as i128);
        p * (p - a - 1) - (n - p - 1) * c
    }

    pub(crate) fn int(&self, k: i64) -> QuadNum {
        QuadNum::integer(k, self.discriminant())
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{};{},{})", self.n, self.p, self.a, self.c)
    }
}

/// Checks `0 < c < p < n - 1` only, leaving the counting identity unchecked.
/// Used to explore the closed forms as pure algebra.
pub fn validate_range(n: i64, p: i64, a: i64, c: i64) -> Result<SrgParams> {
    if !(0 < c && c < p && p < n - 1) {
        return Err(SrgError::RangeViolation(format!(
            "need 0 < c < p < n-1, got n={n}, p={p}, c={c}"
        )));
    }
    if a < 0 {
        return Err(SrgError::RangeViolation(format!("need a >= 0, got a={a}")));
    }
    if n > MAX_ORDER || a > MAX_ORDER {
        return Err(SrgError::RangeViolation(format!("parameters exceed {MAX_ORDER}")));
    }
    Ok(SrgParams { n: n as u64, p: p as u64, a: a as u64, c: c as u64 })
}

/// Validates `(n, p; a, c)`: the range `0 < c < p < n - 1` and the counting
/// identity `p(p-a-1) = (n-p-1)c`.
pub fn validate_params(n: i64, p: i64, a: i64, c: i64) -> Result<SrgParams> {
    let params = validate_range(n, p, a, c)?;
    if params.counting_defect() != 0 {
        let (n, p, a, c) = (n as i128, p as i128, a as i128, c as i128);
        return Err(SrgError::CountingIdentityViolation {
            lhs: p * (p - a - 1),
            rhs: (n - p - 1) * c,
        });
    }
    Ok(params)
}

/// The three adjacency eigenvalues `p > r > 0 > s`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub p: QuadNum,
    pub r: QuadNum,
    pub s: QuadNum,
    pub d: u64,
}

impl Spectrum {
    /// `r - s = √d`.
    pub fn gap(&self) -> QuadNum {
        &self.r - &self.s
    }

    /// The eigenvalue on the `i`-th idempotent (1-based).
    pub fn eigenvalue(&self, i: usize) -> Result<&QuadNum> {
        match i {
            1 => Ok(&self.p),
            2 => Ok(&self.r),
            3 => Ok(&self.s),
            _ => Err(SrgError::IndexOutOfRange { index: i, expected: "1..=3" }),
        }
    }
}

pub fn spectrum(params: &SrgParams) -> Spectrum {
    let d = params.discriminant();
    let half_diff = QuadNum::ratio(params.a as i64 - params.c as i64, 2, d);
    let half_root = &QuadNum::sqrt_d(d) * &QuadNum::ratio(1, 2, d);
    Spectrum {
        p: params.int(params.p as i64),
        r: &half_diff + &half_root,
        s: &half_diff - &half_root,
        d,
    }
}

/// Coordinates in the basis `{I, A, J - A - I}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisCoords {
    pub x: QuadNum,
    pub y: QuadNum,
    pub z: QuadNum,
}

impl BasisCoords {
    pub fn new(x: QuadNum, y: QuadNum, z: QuadNum) -> BasisCoords {
        BasisCoords { x, y, z }
    }

    pub fn try_add(&self, other: &BasisCoords) -> Result<BasisCoords> {
        Ok(BasisCoords {
            x: self.x.try_add(&other.x)?,
            y: self.y.try_add(&other.y)?,
            z: self.z.try_add(&other.z)?,
        })
    }

    pub fn scale(&self, k: &QuadNum) -> BasisCoords {
        BasisCoords { x: &self.x * k, y: &self.y * k, z: &self.z * k }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }

    /// Rewrites the element in the basis `{I, A, E₁}` using `J = n·E₁`.
    pub fn to_identity_adjacency_e1(&self, n: u64) -> [QuadNum; 3] {
        let n = QuadNum::integer(n as i64, self.z.d());
        [&self.x - &self.z, &self.y - &self.z, &self.z * &n]
    }
}

fn check_index(i: usize) -> Result<()> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(SrgError::IndexOutOfRange { index: i, expected: "1..=3" })
    }
}

/// `E_i` in the basis `{I, A, J - A - I}`, all over the common denominator
/// `n(r - s)`.
pub fn idempotent_coords(params: &SrgParams, i: usize) -> Result<BasisCoords> {
    check_index(i)?;
    let spec = spectrum(params);
    Ok(idempotent_coords_with(params, &spec, i))
}

pub(crate) fn idempotent_coords_with(params: &SrgParams, spec: &Spectrum, i: usize) -> BasisCoords {
    let n = params.int(params.n as i64);
    let p = &spec.p;
    let (r, s) = (&spec.r, &spec.s);
    let denom = &n * &spec.gap();
    let coords = match i {
        1 => {
            let g = spec.gap();
            [g.clone(), g.clone(), g]
        }
        2 => {
            let abs_s = -s;
            [&abs_s * &n + s - p, &n + s - p, s - p]
        }
        _ => [r * &n + p - r, p - r - &n, p - r],
    };
    let [x, y, z] = coords.map(|num| &num / &denom);
    BasisCoords { x, y, z }
}

/// `E_u + E_v` for `u < v`.
pub fn sum_idempotent_coords(params: &SrgParams, u: usize, v: usize) -> Result<BasisCoords> {
    check_index(u)?;
    check_index(v)?;
    if u >= v {
        return Err(SrgError::IndexOutOfRange { index: v, expected: "u < v" });
    }
    idempotent_coords(params, u)?.try_add(&idempotent_coords(params, v)?)
}

/// Coordinates of `A^k = p^k E₁ + r^k E₂ + s^k E₃` in `{I, A, J - A - I}`.
pub fn power_coords(params: &SrgParams, k: u32) -> BasisCoords {
    let spec = spectrum(params);
    let mut acc = BasisCoords::new(params.int(0), params.int(0), params.int(0));
    for i in 1..=3 {
        let lambda = spec.eigenvalue(i).expect("index in range").pow(k);
        let e = idempotent_coords_with(params, &spec, i);
        acc = acc.try_add(&e.scale(&lambda)).expect("shared discriminant");
    }
    acc
}

/// `|A|^x = alpha·I + beta·A + gamma·E₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbsPowerCoords {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub x: f64,
}

/// Floating coordinates of `|A|^x = p^x E₁ + r^x E₂ + |s|^x E₃` for real `x`.
pub fn abs_power_coords(params: &SrgParams, x: f64) -> AbsPowerCoords {
    let spec = spectrum(params);
    let p = params.p as f64;
    let c = params.c as f64;
    let r = spec.r.to_f64();
    let abs_s = -spec.s.to_f64();
    let gap = spec.gap().to_f64();
    let (rx, sx) = (r.powf(x), abs_s.powf(x));
    AbsPowerCoords {
        alpha: (p - c) * (r.powf(x - 1.0) + abs_s.powf(x - 1.0)) / gap,
        beta: -(sx - rx) / gap,
        gamma: p.powf(x) - rx + (p - r) * (sx - rx) / gap,
        x,
    }
}

/// Every `(n, p; a, c)` with `5 <= n <= n_max` passing range and counting
/// identity, ordered by `(n, p, a, c)`.
pub fn enumerate_valid(n_max: u64) -> Vec<SrgParams> {
    let mut out = Vec::new();
    for n in 5..=n_max {
        for p in 2..n.saturating_sub(1) {
            // a is determined by c: p(p-a-1) = (n-p-1)c.
            for c in (1..p).rev() {
                let rhs = (n - p - 1) * c;
                if rhs % p != 0 || rhs / p > p - 1 {
                    continue;
                }
                let a = p - 1 - rhs / p;
                out.push(SrgParams { n, p, a, c });
            }
        }
    }
    out
}

/// Every range-valid `(n, p; a, c)` with `a < p`, counting identity ignored.
pub fn enumerate_range_valid(n_max: u64) -> Vec<SrgParams> {
    let mut out = Vec::new();
    for n in 5..=n_max {
        for p in 2..n.saturating_sub(1) {
            for a in 0..p {
                for c in 1..p {
                    out.push(SrgParams { n, p, a, c });
                }
            }
        }
    }
    out
}

/// Eigenvalue multiplicities `(1, m_r, m_s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multiplicities {
    pub m_r: QuadNum,
    pub m_s: QuadNum,
}

impl Multiplicities {
    /// `Some((m_r, m_s))` when both are non-negative integers.
    pub fn as_integers(&self) -> Option<(u64, u64)> {
        Some((nonneg_integer(&self.m_r)?, nonneg_integer(&self.m_s)?))
    }
}

pub(crate) fn nonneg_integer(q: &QuadNum) -> Option<u64> {
    let value = q.as_rational()?;
    if !value.is_integer() || num_traits::Signed::is_negative(value) {
        return None;
    }
    num_traits::ToPrimitive::to_u64(&value.to_integer())
}

/// `m_r = ((n-1)(-s) - p)/(r - s)` and `m_s = n - 1 - m_r`.
pub fn multiplicities(params: &SrgParams) -> Multiplicities {
    let spec = spectrum(params);
    let n_minus_1 = params.int(params.n as i64 - 1);
    let m_r = (&n_minus_1 * &(-&spec.s) - &spec.p) / spec.gap();
    let m_s = &n_minus_1 - &m_r;
    Multiplicities { m_r, m_s }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad_field::Sign;
    use num_rational::BigRational;

    fn q(num: i64, den: i64) -> QuadNum {
        QuadNum::ratio(num, den, 0)
    }

    fn petersen() -> SrgParams {
        validate_params(10, 3, 0, 1).unwrap()
    }

    #[test]
    fn validation() {
        assert!(validate_params(5, 2, 0, 1).is_ok());
        assert!(validate_params(10, 3, 0, 1).is_ok());
        assert_eq!(
            validate_params(10, 3, 0, 2),
            Err(SrgError::CountingIdentityViolation { lhs: 6, rhs: 12 })
        );
        assert!(matches!(validate_params(10, 3, 0, 0), Err(SrgError::RangeViolation(_))));
        assert!(matches!(validate_params(10, 9, 8, 8), Err(SrgError::RangeViolation(_))));
        assert!(matches!(validate_params(10, 3, -1, 1), Err(SrgError::RangeViolation(_))));
        assert!(validate_range(10, 3, 0, 2).is_ok());
    }

    #[test]
    fn petersen_spectrum_folds() {
        let spec = spectrum(&petersen());
        assert_eq!(spec.d, 9);
        assert_eq!(spec.r, q(1, 1));
        assert_eq!(spec.s, q(-2, 1));
        assert!(spec.r.is_rational() && spec.s.is_rational());
    }

    #[test]
    fn irrational_spectra() {
        let c5 = spectrum(&validate_params(5, 2, 0, 1).unwrap());
        let half = BigRational::new((-1).into(), 2.into());
        let root = BigRational::new(1.into(), 2.into());
        assert_eq!(c5.r, QuadNum::new(half.clone(), root.clone(), 5));
        assert_eq!(c5.s, QuadNum::new(half.clone(), -root.clone(), 5));
        let paley = spectrum(&validate_params(13, 6, 2, 3).unwrap());
        assert_eq!(paley.r, QuadNum::new(half.clone(), root.clone(), 13));
        assert_eq!(paley.s, QuadNum::new(half, -root, 13));
    }

    #[test]
    fn petersen_idempotents() {
        let p = petersen();
        let e1 = idempotent_coords(&p, 1).unwrap();
        assert_eq!(e1, BasisCoords::new(q(1, 10), q(1, 10), q(1, 10)));
        let e2 = idempotent_coords(&p, 2).unwrap();
        assert_eq!(e2, BasisCoords::new(q(1, 2), q(1, 6), q(-1, 6)));
        let e3 = idempotent_coords(&p, 3).unwrap();
        assert_eq!(e3, BasisCoords::new(q(2, 5), q(-4, 15), q(1, 15)));
        assert!(matches!(idempotent_coords(&p, 4), Err(SrgError::IndexOutOfRange { .. })));
        assert!(idempotent_coords(&p, 0).is_err());
    }

    #[test]
    fn petersen_sums() {
        let p = petersen();
        assert_eq!(
            sum_idempotent_coords(&p, 2, 3).unwrap(),
            BasisCoords::new(q(9, 10), q(-1, 10), q(-1, 10))
        );
        assert_eq!(
            sum_idempotent_coords(&p, 1, 2).unwrap(),
            BasisCoords::new(q(3, 5), q(4, 15), q(-1, 15))
        );
        let total = sum_idempotent_coords(&p, 1, 2)
            .unwrap()
            .try_add(&idempotent_coords(&p, 3).unwrap())
            .unwrap();
        assert_eq!(total, BasisCoords::new(q(1, 1), q(0, 1), q(0, 1)));
        assert!(sum_idempotent_coords(&p, 2, 2).is_err());
        assert!(sum_idempotent_coords(&p, 3, 1).is_err());
    }

    #[test]
    fn abs_power_petersen() {
        let p = petersen();
        let zero = abs_power_coords(&p, 0.0);
        assert!((zero.alpha - 1.0).abs() < 1e-12 && zero.beta.abs() < 1e-12 && zero.gamma.abs() < 1e-12);
        let two = abs_power_coords(&p, 2.0);
        assert!((two.alpha - 2.0).abs() < 1e-12);
        assert!((two.beta + 1.0).abs() < 1e-12);
        assert!((two.gamma - 10.0).abs() < 1e-12);
        let one = abs_power_coords(&p, 1.0);
        assert!((one.alpha - 4.0 / 3.0).abs() < 1e-12);
        assert!((one.beta + 1.0 / 3.0).abs() < 1e-12);
        assert!((one.gamma - 8.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn petersen_square_coords() {
        let a2 = power_coords(&petersen(), 2);
        assert_eq!(a2, BasisCoords::new(q(3, 1), q(0, 1), q(1, 1)));
        assert_eq!(a2.to_identity_adjacency_e1(10), [q(2, 1), q(-1, 1), q(10, 1)]);
    }

    #[test]
    fn multiplicity_examples() {
        let m = multiplicities(&petersen());
        assert_eq!(m.as_integers(), Some((5, 4)));
        let c5 = multiplicities(&validate_params(5, 2, 0, 1).unwrap());
        assert_eq!(c5.as_integers(), Some((2, 2)));
        let paley = multiplicities(&validate_params(13, 6, 2, 3).unwrap());
        assert_eq!(paley.as_integers(), Some((6, 6)));
    }

    #[test]
    fn spectrum_invariants_on_small_tuples() {
        for params in enumerate_valid(60) {
            let spec = spectrum(&params);
            assert_eq!(spec.r.sign(), Sign::Positive, "{params}");
            assert_eq!(spec.s.sign(), Sign::Negative, "{params}");
            let a_minus_c = params.a() as i64 - params.c() as i64;
            assert_eq!(&spec.r + &spec.s, q(a_minus_c, 1));
            assert_eq!(&spec.r * &spec.s, q(params.c() as i64 - params.p() as i64, 1));

            let mut total = idempotent_coords(&params, 1).unwrap();
            for i in 2..=3 {
                total = total.try_add(&idempotent_coords(&params, i).unwrap()).unwrap();
            }
            assert_eq!(total, BasisCoords::new(q(1, 1), q(0, 1), q(0, 1)));

            let m = multiplicities(&params);
            assert_eq!(&m.m_r + &m.m_s, q(params.n() as i64 - 1, 1));
        }
    }
}
