//! Truncated Laurent series in one formal symbol.
//!
//! A [`Series`] stores coefficients for exponents `min, min+1, ...` together
//! with an explicit validity bound: the coefficient of `t^k` is known iff
//! `k < valid`. Every operation propagates the bound pessimistically, so a
//! coefficient that is not determined by the inputs can never be read.

use super::{rint, Rational, Ring};
use crate::error::{Error, Result};

/// Validity bound used for series that are exact (finite Laurent polynomials).
pub const EXACT: i64 = i64::MAX / 4;

fn clamp(v: i64) -> i64 {
    v.min(EXACT)
}

#[derive(Clone, Debug)]
pub struct Series<R> {
    min: i64,
    coeffs: Vec<R>,
    valid: i64,
}

impl<R: Ring> PartialEq for Series<R> {
    fn eq(&self, other: &Self) -> bool {
        self.valid == other.valid && self.min == other.min && self.coeffs == other.coeffs
    }
}

impl<R: Ring> Series<R> {
    /// Builds a series with coefficients for `t^min, t^{min+1}, ...` valid below `valid`.
    pub fn new(min: i64, coeffs: Vec<R>, valid: i64) -> Self {
        let mut s = Series {
            min,
            coeffs,
            valid: clamp(valid),
        };
        s.normalize();
        s
    }

    pub fn exact(min: i64, coeffs: Vec<R>) -> Self {
        Self::new(min, coeffs, EXACT)
    }

    pub fn truncated(min: i64, coeffs: Vec<R>, valid: i64) -> Self {
        Self::new(min, coeffs, valid)
    }

    pub fn monomial(c: R, k: i64) -> Self {
        Self::exact(k, vec![c])
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    pub fn zero() -> Self {
        Self::exact(0, Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    /// Zero series known only below `valid`.
    pub fn zero_to(valid: i64) -> Self {
        Self::new(0, Vec::new(), valid)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.min = 0;
            }
            Some(p) => {
                if p > 0 {
                    self.coeffs.drain(..p);
                    self.min += p as i64;
                }
            }
        }
        if !self.coeffs.is_empty() {
            let keep = self.valid.saturating_sub(self.min);
            if keep <= 0 {
                self.coeffs.clear();
                self.min = 0;
            } else if (keep as usize) < self.coeffs.len() {
                self.coeffs.truncate(keep as usize);
            }
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.min = 0;
        }
    }

    pub fn valid(&self) -> i64 {
        self.valid
    }

    pub fn is_exact(&self) -> bool {
        self.valid >= EXACT
    }

    /// Exponent of the first nonzero coefficient; for a (known) zero series
    /// this is the validity bound.
    pub fn min_order(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.valid
        } else {
            self.min
        }
    }

    /// Exponent of the last stored nonzero coefficient.
    pub fn max_stored(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.min + self.coeffs.len() as i64 - 1)
        }
    }

    /// True when every known coefficient vanishes.
    pub fn is_known_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<(i64, &R)> {
        self.coeffs.first().map(|c| (self.min, c))
    }

    pub fn coeff(&self, k: i64) -> Result<R> {
        if k >= self.valid {
            return Err(Error::Truncated {
                requested: k,
                valid: self.valid,
            });
        }
        Ok(self.raw(k))
    }

    fn raw(&self, k: i64) -> R {
        if self.coeffs.is_empty() || k < self.min {
            return R::zero();
        }
        self.coeffs
            .get((k - self.min) as usize)
            .cloned()
            .unwrap_or_else(R::zero)
    }

    /// Nonzero terms `(exponent, coefficient)` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min + i as i64, c))
    }

    /// Lowers the validity bound to `valid`.
    pub fn truncate(&self, valid: i64) -> Self {
        Self::new(self.min, self.coeffs.clone(), self.valid.min(valid))
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series::new(self.min, self.coeffs.iter().map(f).collect(), self.valid)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let valid = if self.is_exact() {
            EXACT
        } else {
            self.valid + k
        };
        Self::new(self.min + k, self.coeffs.clone(), valid)
    }

    pub fn add(&self, other: &Self) -> Self {
        let valid = self.valid.min(other.valid);
        let lo = self.min_order().min(other.min_order());
        let hi = self
            .max_stored()
            .into_iter()
            .chain(other.max_stored())
            .max();
        let Some(hi) = hi else {
            return Self::zero_to(valid);
        };
        let hi = hi.min(valid - 1);
        if hi < lo {
            return Self::zero_to(valid);
        }
        let coeffs = (lo..=hi).map(|k| self.raw(k).add(&other.raw(k))).collect();
        Self::new(lo, coeffs, valid)
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.min,
            self.coeffs.iter().map(|c| c.neg()).collect(),
            self.valid,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(
            self.min,
            self.coeffs.iter().map(|c| c.scale(r)).collect(),
            self.valid,
        )
    }

    pub fn mul_scalar(&self, c: &R) -> Self {
        Self::new(
            self.min,
            self.coeffs.iter().map(|x| x.mul(c)).collect(),
            self.valid,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m1 = self.min_order();
        let m2 = other.min_order();
        let valid = clamp(
            self.valid
                .saturating_add(m2)
                .min(other.valid.saturating_add(m1)),
        );
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero_to(valid);
        }
        let lo = m1 + m2;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = ((valid - lo).max(0) as usize).min(full);
        let mut out = vec![R::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(lo, out, valid)
    }

    /// Splits `f = c·t^m·(1 + u)`, returning `(m, c, 1 + u)` with the unit part
    /// carrying relative validity.
    fn unit_part(&self) -> Result<(i64, R, Self)> {
        let Some((m, c)) = self.leading() else {
            return Err(Error::NotInvertible);
        };
        let cinv = c
            .inv()
            .ok_or_else(|| Error::Precondition("leading coefficient is not a unit".into()))?;
        let coeffs = self.coeffs.iter().map(|x| x.mul(&cinv)).collect();
        let valid = if self.is_exact() {
            EXACT
        } else {
            self.valid - m
        };
        Ok((m, c.clone(), Self::new(0, coeffs, valid)))
    }

    /// `1/f` for a series with invertible leading coefficient.
    pub fn inverse(&self) -> Result<Self> {
        let (m, c, unit) = self.unit_part()?;
        let cinv = c.inv().ok_or(Error::NotInvertible)?;
        if unit.is_exact() {
            if unit.coeffs.len() == 1 {
                return Ok(Self::monomial(cinv, -m));
            }
            return Err(Error::Precondition(
                "an exact non-monomial series must be truncated before inversion".into(),
            ));
        }
        let n = unit.valid.max(0) as usize;
        let mut g: Vec<R> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                g.push(R::one());
                continue;
            }
            let mut acc = R::zero();
            for j in 1..=k {
                let fj = unit.raw(j as i64);
                if !fj.is_zero() {
                    acc = acc.add(&fj.mul(&g[k - j]));
                }
            }
            g.push(acc.neg());
        }
        let g: Vec<R> = g.into_iter().map(|x| x.mul(&cinv)).collect();
        Ok(Self::new(-m, g, -m + unit.valid))
    }

    /// `f^r` for rational `r`. The leading monomial `c·t^m` is factored out;
    /// `m·r` must be an integer and `c^r` must be computable (`c = 1` or `r`
    /// an integer).
    pub fn pow(&self, r: &Rational) -> Result<Self> {
        if r.is_integer() && *r >= rint(0) && self.is_exact() {
            let e: u32 = r
                .to_integer()
                .try_into()
                .map_err(|_| Error::Precondition("exponent too large".into()))?;
            let mut acc = Self::one();
            for _ in 0..e {
                acc = acc.mul(self);
            }
            return Ok(acc);
        }
        let (m, c, unit) = self.unit_part()?;
        let shift = rint(m) * r;
        if !shift.is_integer() {
            return Err(Error::Precondition(format!(
                "t^{m} raised to {r} is not an integral power"
            )));
        }
        let shift: i64 = shift
            .to_integer()
            .try_into()
            .map_err(|_| Error::Precondition("exponent overflow".into()))?;
        let cr = if c.is_one() {
            R::one()
        } else if r.is_integer() {
            let e: i64 = r
                .to_integer()
                .try_into()
                .map_err(|_| Error::Precondition("exponent overflow".into()))?;
            let p = c.pow(e.unsigned_abs() as u32);
            if e < 0 {
                p.inv().ok_or(Error::NotInvertible)?
            } else {
                p
            }
        } else {
            return Err(Error::Precondition(
                "non-unit constant term under a fractional power".into(),
            ));
        };
        if unit.is_exact() && unit.coeffs.len() == 1 {
            return Ok(Self::monomial(cr, shift));
        }
        if unit.is_exact() {
            return Err(Error::Precondition(
                "an exact non-monomial series must be truncated before a fractional power".into(),
            ));
        }
        let n = unit.valid.max(0) as usize;
        let r1 = r + rint(1);
        let mut g: Vec<R> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                g.push(R::one());
                continue;
            }
            let mut acc = R::zero();
            for j in 1..=k {
                let uj = unit.raw(j as i64);
                if uj.is_zero() {
                    continue;
                }
                let w = &r1 * rint(j as i64) - rint(k as i64);
                acc = acc.add(&uj.mul(&g[k - j]).scale(&w));
            }
            g.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
        }
        let g: Vec<R> = g.into_iter().map(|x| x.mul(&cr)).collect();
        Ok(Self::new(shift, g, shift + unit.valid))
    }

    /// `exp(f)` for `f` with positive valuation.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Ok(Self::one().truncate(self.valid));
        }
        if self.min < 1 {
            return Err(Error::Precondition(
                "exp needs a series without constant or polar part".into(),
            ));
        }
        if self.is_exact() {
            return Err(Error::Precondition(
                "exp of an exact series needs an explicit truncation".into(),
            ));
        }
        let n = self.valid.max(0) as usize;
        let mut e: Vec<R> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                e.push(R::one());
                continue;
            }
            let mut acc = R::zero();
            for j in 1..=k {
                let sj = self.raw(j as i64);
                if !sj.is_zero() {
                    acc = acc.add(&sj.mul(&e[k - j]).scale(&rint(j as i64)));
                }
            }
            e.push(acc.scale(&Rational::new(1.into(), (k as i64).into())));
        }
        Ok(Self::new(0, e, self.valid))
    }

    /// `log(f)` for `f = 1 + O(t)`.
    pub fn log(&self) -> Result<Self> {
        if self.min_order() < 0 || !self.raw(0).is_one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::zero());
            }
            return Err(Error::Precondition(
                "log of an exact series needs an explicit truncation".into(),
            ));
        }
        let n = self.valid.max(0) as usize;
        let mut l: Vec<R> = vec![R::zero(); n];
        for k in 1..n {
            let mut acc = self.raw(k as i64).scale(&rint(k as i64));
            for j in 1..k {
                if l[j].is_zero() {
                    continue;
                }
                let s = self.raw((k - j) as i64);
                if !s.is_zero() {
                    acc = acc.sub(&l[j].mul(&s).scale(&rint(j as i64)));
                }
            }
            l[k] = acc.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        Ok(Self::new(0, l, self.valid))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&rint(self.min + i as i64)))
            .collect();
        let valid = if self.is_exact() {
            EXACT
        } else {
            self.valid - 1
        };
        Self::new(self.min - 1, coeffs, valid)
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Result<Self> {
        if !self.raw(-1).is_zero() && self.min <= -1 {
            return Err(Error::Precondition("integrand has a residue".into()));
        }
        let coeffs: Vec<R> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = self.min + i as i64 + 1;
                if k == 0 {
                    R::zero()
                } else {
                    c.scale(&Rational::new(1.into(), k.into()))
                }
            })
            .collect();
        let valid = if self.is_exact() {
            EXACT
        } else {
            self.valid + 1
        };
        Ok(Self::new(self.min + 1, coeffs, valid))
    }

    /// `f(g(t))` for `g` of positive valuation. Negative powers of `f` use
    /// `g^{-1}`, which requires the leading coefficient of `g` to be a unit.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let vg = g.min_order();
        if vg < 1 {
            return Err(Error::Precondition(
                "inner series must have positive valuation".into(),
            ));
        }
        let tail_bound = if self.is_exact() {
            EXACT
        } else {
            clamp(self.valid.saturating_mul(vg))
        };
        if self.coeffs.is_empty() {
            return Ok(Self::zero_to(tail_bound));
        }
        if g.is_known_zero() {
            // g vanishes to its validity; only f's constant term survives
            if self.min < 0 {
                return Err(Error::NotInvertible);
            }
            return Ok(Self::constant(self.raw(0)).truncate(tail_bound.min(g.valid)));
        }
        let mut acc = Self::zero_to(tail_bound);
        let hi = self.max_stored().unwrap();
        // positive part
        let mut pw = Self::one();
        for k in 0..=hi.max(0) {
            if k > 0 {
                pw = pw.mul(g);
            }
            if k.saturating_mul(vg) >= acc.valid() {
                break;
            }
            if k >= self.min {
                let c = self.raw(k);
                if !c.is_zero() {
                    acc = acc.add(&pw.mul_scalar(&c));
                }
            }
        }
        if self.min < 0 {
            let ginv = g.inverse()?;
            let mut pw = Self::one();
            for k in 1..=(-self.min) {
                pw = pw.mul(&ginv);
                let c = self.raw(-k);
                if !c.is_zero() {
                    acc = acc.add(&pw.mul_scalar(&c));
                }
            }
        }
        Ok(acc)
    }

    /// Compositional inverse of `f = c₁t + O(t²)`, valid to the order of `f`.
    pub fn reversion(&self) -> Result<Self> {
        if self.min_order() != 1 {
            return Err(Error::NotInvertible);
        }
        let c1 = self.raw(1);
        let c1inv = c1.inv().ok_or(Error::NotInvertible)?;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(Self::monomial(c1inv, 1));
        }
        if self.is_exact() {
            return Err(Error::Precondition(
                "reversion of an exact series needs an explicit truncation".into(),
            ));
        }
        let target = self.valid;
        let df = self.derivative();
        let t = Self::monomial(R::one(), 1);
        // Newton iteration g <- g - (f(g) - t)/f'(g), doubling the precision
        let mut g = Self::new(1, vec![c1inv], 2.min(target));
        let mut prec = 2;
        while prec < target {
            let next = (2 * prec).min(target);
            let gp = Self::new(g.min, g.coeffs.clone(), next);
            let resid = self.compose(&gp)?.sub(&t);
            let slope = df.compose(&gp)?;
            let corr = resid.mul(&slope.inverse()?);
            let upd = gp.sub(&corr);
            g = Self::new(upd.min, upd.coeffs, next);
            prec = next;
        }
        Ok(g.truncate(target))
    }
}

impl<R: Ring> Ring for Series<R> {
    fn zero() -> Self {
        Series::zero()
    }
    fn one() -> Self {
        Series::one()
    }
    /// Only the exact zero series counts as zero, so truncated zeros keep
    /// their validity when stored as coefficients.
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }
    fn add(&self, other: &Self) -> Self {
        Series::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Series::mul(self, other)
    }
    fn neg(&self) -> Self {
        Series::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
    fn from_rational(r: &Rational) -> Self {
        Series::constant(R::from_rational(r))
    }
}
