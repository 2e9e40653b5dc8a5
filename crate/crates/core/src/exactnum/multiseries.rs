//! Power series in several variables, truncated in total degree.

use std::collections::BTreeMap;

use super::series::EXACT;
use super::{rint, Rational, Ring};
use crate::error::{Error, Result};

/// Terms keyed by exponent vectors. Coefficients of total degree `< valid`
/// are known.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiSeries<R> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, R>,
    valid: i64,
}

fn degree(e: &[u32]) -> i64 {
    e.iter().map(|&x| x as i64).sum()
}

impl<R: Ring> MultiSeries<R> {
    pub fn zero(nvars: usize, valid: i64) -> Self {
        MultiSeries {
            nvars,
            terms: BTreeMap::new(),
            valid: valid.min(EXACT),
        }
    }

    pub fn constant(nvars: usize, c: R, valid: i64) -> Self {
        let mut s = Self::zero(nvars, valid);
        s.add_term(vec![0; nvars], c);
        s
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize, valid: i64) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut s = Self::zero(nvars, valid);
        s.add_term(e, R::one());
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn valid(&self) -> i64 {
        self.valid
    }

    pub fn truncate(&self, valid: i64) -> Self {
        let mut s = Self::zero(self.nvars, self.valid.min(valid));
        for (e, c) in &self.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    /// Adds `c·x^e`; terms at or beyond the validity bound are dropped.
    pub fn add_term(&mut self, e: Vec<u32>, c: R) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() || degree(&e) >= self.valid {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Result<R> {
        let d = degree(e);
        if d >= self.valid {
            return Err(Error::Truncated {
                requested: d,
                valid: self.valid,
            });
        }
        Ok(self.terms.get(e).cloned().unwrap_or_else(R::zero))
    }

    /// Lowest total degree of a nonzero term, or the validity bound.
    pub fn min_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| degree(e))
            .min()
            .unwrap_or(self.valid)
    }

    pub fn is_known_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.truncate(other.valid);
        for (e, c) in &other.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_scalar(&self, r: &R) -> Self {
        self.map(|c| c.mul(r))
    }

    fn map(&self, f: impl Fn(&R) -> R) -> Self {
        let mut s = Self::zero(self.nvars, self.valid);
        for (e, c) in &self.terms {
            s.add_term(e.clone(), f(c));
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let valid = self
            .valid
            .saturating_add(other.min_degree())
            .min(other.valid.saturating_add(self.min_degree()))
            .min(EXACT);
        let mut s = Self::zero(self.nvars, valid);
        for (e1, c1) in &self.terms {
            let d1 = degree(e1);
            for (e2, c2) in &other.terms {
                if d1 + degree(e2) >= valid {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                s.add_term(e, c1.mul(c2));
            }
        }
        s
    }

    /// Euler operator `x_i ∂/∂x_i`.
    pub fn euler(&self, i: usize) -> Self {
        let mut s = Self::zero(self.nvars, self.valid);
        for (e, c) in &self.terms {
            s.add_term(e.clone(), c.scale(&rint(e[i] as i64)));
        }
        s
    }

    /// Substitutes `x_from = x_to` and removes `x_from`.
    pub fn restrict(&self, from: usize, to: usize) -> Self {
        assert_ne!(from, to);
        let mut s = Self::zero(self.nvars - 1, self.valid);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[to] += e2[from];
            e2.remove(from);
            s.add_term(e2, c.clone());
        }
        s
    }

    fn constant_term(&self) -> R {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(R::zero)
    }

    /// `exp(f)` for `f` without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Precondition("exp needs zero constant term".into()));
        }
        if self.valid >= EXACT {
            return Err(Error::Precondition(
                "exp of an exact series needs an explicit truncation".into(),
            ));
        }
        let mut acc = Self::constant(self.nvars, R::one(), self.valid);
        let mut pw = acc.clone();
        let mut k = 1i64;
        while pw.min_degree() < acc.valid {
            pw = pw.mul(self).scale(&Rational::new(1.into(), k.into()));
            acc = acc.add(&pw);
            k += 1;
        }
        Ok(acc)
    }

    /// `log(f)` for `f` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        if self.valid >= EXACT {
            return Err(Error::Precondition(
                "log of an exact series needs an explicit truncation".into(),
            ));
        }
        let u = self.sub(&Self::constant(self.nvars, R::one(), EXACT));
        let mut acc = Self::zero(self.nvars, self.valid);
        let mut pw = Self::constant(self.nvars, R::one(), self.valid);
        let mut k = 1i64;
        loop {
            pw = pw.mul(&u);
            if pw.min_degree() >= acc.valid {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&pw.scale(&Rational::new(sign.into(), k.into())));
            k += 1;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    type M = MultiSeries<Rational>;

    #[test]
    fn log_of_product_splits() {
        let x = M::var(2, 0, 6);
        let y = M::var(2, 1, 6);
        let one = M::constant(2, rint(1), 6);
        let a = one.add(&x.scale(&rint(2)));
        let b = one.add(&y).add(&x.mul(&y));
        let lhs = a.mul(&b).log().unwrap();
        let rhs = a.log().unwrap().add(&b.log().unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.exp().unwrap(), a.mul(&b));
    }

    #[test]
    fn restrict_and_euler() {
        let x = M::var(2, 0, 5);
        let y = M::var(2, 1, 5);
        let f = x.mul(&y).mul(&y).add(&x.scale(&rat(1, 2)));
        let e = f.euler(1);
        assert_eq!(e.coeff(&[1, 2]).unwrap(), rint(2));
        assert_eq!(e.coeff(&[1, 0]).unwrap(), rint(0));
        let r = f.restrict(1, 0);
        assert_eq!(r.coeff(&[3]).unwrap(), rint(1));
        assert_eq!(r.coeff(&[1]).unwrap(), rat(1, 2));
        assert!(r.coeff(&[5]).is_err());
    }
}
