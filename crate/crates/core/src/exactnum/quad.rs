//! Elements `a + b√d` of a quadratic extension of ℚ.

use std::sync::Arc;

use super::{rational_text, rint, Rational, Ring};

/// `a + b√d`. The discriminant is carried by every element that may have a
/// nonzero `b`; elements with `disc == None` lie in ℚ.
#[derive(Clone, Debug)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    disc: Option<Arc<Rational>>,
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, disc: &Arc<Rational>) -> Self {
        QuadExt {
            a,
            b,
            disc: Some(disc.clone()),
        }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: rint(0),
            disc: None,
        }
    }

    /// `√d` itself.
    pub fn sqrt(disc: &Arc<Rational>) -> Self {
        Self::new(rint(0), rint(1), disc)
    }

    pub fn disc(&self) -> Option<&Rational> {
        self.disc.as_deref()
    }

    fn merged(&self, other: &Self) -> Option<Arc<Rational>> {
        match (&self.disc, &other.disc) {
            (Some(d), Some(e)) => {
                debug_assert_eq!(d, e, "mixing quadratic fields");
                Some(d.clone())
            }
            (Some(d), None) | (None, Some(d)) => Some(d.clone()),
            (None, None) => None,
        }
    }

    fn d(&self) -> Rational {
        self.disc.as_deref().cloned().unwrap_or_else(|| rint(0))
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            disc: self.disc.clone(),
        }
    }

    /// Field norm `a² − d b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - self.d() * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn text(&self) -> String {
        if self.b.is_zero() {
            return rational_text(&self.a);
        }
        format!(
            "{} + {}*sqrt({})",
            rational_text(&self.a),
            rational_text(&self.b),
            rational_text(&self.d())
        )
    }
}

impl Ring for QuadExt {
    fn zero() -> Self {
        Self::rational(rint(0))
    }
    fn one() -> Self {
        Self::rational(rint(1))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        QuadExt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            disc: self.merged(other),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        QuadExt {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            disc: self.merged(other),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let disc = self.merged(other);
        if self.b.is_zero() && other.b.is_zero() {
            return QuadExt {
                a: &self.a * &other.a,
                b: rint(0),
                disc,
            };
        }
        let d = disc.as_deref().cloned().unwrap_or_else(|| rint(0));
        QuadExt {
            a: &self.a * &other.a + d * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
            disc,
        }
    }
    fn neg(&self) -> Self {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            disc: self.disc.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadExt {
            a: &self.a / &n,
            b: -&self.b / &n,
            disc: self.disc.clone(),
        })
    }
    fn from_rational(r: &Rational) -> Self {
        Self::rational(r.clone())
    }
    fn scale(&self, r: &Rational) -> Self {
        QuadExt {
            a: &self.a * r,
            b: &self.b * r,
            disc: self.disc.clone(),
        }
    }
}
