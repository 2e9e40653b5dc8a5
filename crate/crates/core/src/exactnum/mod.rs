//! Exact scalars and truncated series.
//!
//! Every coefficient type implements [`Ring`]; the series kernels in
//! [`series`] and [`multiseries`] are written once against that trait and
//! reused for rationals, Laurent polynomials in `A`, the quadratic extension
//! carrying the branch points, and ħ-series themselves.

pub mod laurent;
pub mod multirational;
pub mod multiseries;
pub mod qa;
pub mod quad;
pub mod series;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use laurent::LaurentPolyA;
pub use multirational::{MultiPoly, MultiRational};
pub use multiseries::MultiSeries;
pub use qa::QALaurent;
pub use quad::QuadExt;
pub use series::Series;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Commutative ring of characteristic zero with partial inversion.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, if `self` is a unit.
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn from_int(n: i64) -> Self {
        Self::from_rational(&rint(n))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn scale(&self, r: &Rational) -> Self {
        self.mul(&Self::from_rational(r))
    }
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

pub fn rint(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Exact text form `"n"` or `"n/d"`.
pub fn rational_text(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"n"` or `"n/d"`; a zero denominator is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

pub fn rabs(r: &Rational) -> Rational {
    r.abs()
}

/// Coefficients `B_0..=B_order` of `z/ζ(z) = Σ B_a z^{2a}` where
/// `ζ(z) = e^{z/2} − e^{−z/2}`.
pub fn zeta_inverse_coeffs(order: usize) -> Vec<Rational> {
    // ζ(z)/z = Σ_k z^{2k} / (4^k (2k+1)!), taken as a series in w = z².
    let n = order + 1;
    let zeta_over_z: Vec<Rational> = (0..n)
        .map(|k| {
            let k = k as u64;
            (factorial(2 * k + 1) * rint(4).pow(k as i32)).recip()
        })
        .collect();
    let s = Series::truncated(0, zeta_over_z, n as i64);
    let inv = s.inverse().expect("constant term 1 is a unit");
    (0..n as i64)
        .map(|k| inv.coeff(k).expect("within validity"))
        .collect()
}
