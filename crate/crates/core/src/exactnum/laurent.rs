//! Laurent polynomials in the framing variable `A`.

use std::collections::BTreeMap;

use num_traits::Signed;

use super::{rational_text, rint, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPolyA {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPolyA {
    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPolyA { terms }
    }

    /// `A^k`.
    pub fn a_pow(k: i64) -> Self {
        Self::monomial(rint(1), k)
    }

    /// `A^m − A^{−m}`.
    pub fn a_minus_ainv(m: i64) -> Self {
        Self::a_pow(m).sub(&Self::a_pow(-m))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = LaurentPolyA::default();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    pub fn add_term(&mut self, k: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, a: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            let p = if *k >= 0 {
                num_traits::pow(a.clone(), *k as usize)
            } else {
                num_traits::pow(a.recip(), k.unsigned_abs() as usize)
            };
            acc += c * p;
        }
        acc
    }

    /// Image under `A ↦ A^{-1}`.
    pub fn invert_a(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (-k, c.clone())))
    }

    pub fn shift(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e + k, c.clone())))
    }

    pub fn text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let ac = c.abs();
            let mono = match *k {
                0 => String::new(),
                1 => "A".into(),
                _ => format!("A^{k}"),
            };
            if mono.is_empty() {
                out.push_str(&rational_text(&ac));
            } else if ac.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", rational_text(&ac), mono));
            }
        }
        out
    }
}

impl Ring for LaurentPolyA {
    fn zero() -> Self {
        LaurentPolyA::default()
    }
    fn one() -> Self {
        Self::a_pow(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPolyA::default();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentPolyA {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.recip(), -k))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::monomial(r.clone(), 0)
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        LaurentPolyA {
            terms: self.terms.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }
}
