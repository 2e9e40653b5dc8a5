//! Laurent polynomials in `q` and `A` with rational exponents.

use std::collections::BTreeMap;

use num_traits::Signed;

use super::series::Series;
use super::{factorial, rational_text, rint, Rational, Ring};
use crate::error::{Error, Result};

/// Terms keyed by `(q-exponent, A-exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QALaurent {
    terms: BTreeMap<(Rational, Rational), Rational>,
}

impl QALaurent {
    pub fn monomial(c: Rational, qe: Rational, ae: Rational) -> Self {
        let mut p = Self::default();
        p.add_term(qe, ae, &c);
        p
    }

    pub fn add_term(&mut self, qe: Rational, ae: Rational, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let key = (qe, ae);
        let v = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational, &Rational)> {
        self.terms.iter().map(|((q, a), c)| (q, a, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `q^h − q^{−h}`.
    pub fn q_diff(h: &Rational) -> Self {
        let mut p = Self::monomial(rint(1), h.clone(), rint(0));
        p.add_term(-h, rint(0), &rint(-1));
        p
    }

    /// `A q^c − A^{-1} q^{-c}`.
    pub fn a_q_diff(c: &Rational) -> Self {
        let mut p = Self::monomial(rint(1), c.clone(), rint(1));
        p.add_term(-c, rint(-1), &rint(-1));
        p
    }

    /// Exact quotient by `q^h − q^{−h}` for a positive integer `h`.
    pub fn div_q_diff(&self, h: i64) -> Option<Self> {
        assert!(h > 0);
        // group by A-exponent and fractional class of the q-exponent
        let mut groups: BTreeMap<(Rational, Rational), BTreeMap<i64, Rational>> = BTreeMap::new();
        for ((qe, ae), c) in &self.terms {
            let fl = qe.floor();
            let frac = qe - &fl;
            let k: i64 = fl.to_integer().try_into().ok()?;
            groups
                .entry((ae.clone(), frac))
                .or_default()
                .insert(k, c.clone());
        }
        let mut out = Self::default();
        let step = 2 * h;
        for ((ae, frac), mut coeffs) in groups {
            // p = q^{-h}(q^{2h} − 1)·quo  <=>  q^h p = (q^{2h} − 1) quo
            let mut quo: BTreeMap<i64, Rational> = BTreeMap::new();
            while let Some((&top, c)) = coeffs.iter().next_back() {
                let c = c.clone();
                let lo = *coeffs.keys().next().unwrap();
                if top - step < lo {
                    return None;
                }
                // exponents here are those of q^h p
                quo.insert(top - step, c.clone());
                coeffs.remove(&top);
                let e = coeffs.entry(top - step).or_insert_with(Rational::zero);
                *e += &c;
                if e.is_zero() {
                    coeffs.remove(&(top - step));
                }
            }
            for (k, c) in quo {
                // shift: coefficient keys were of p; quotient of q^h p is at k + h
                out.add_term(&frac + rint(k + h), ae.clone(), &c);
            }
        }
        Some(out)
    }

    /// Substitutes `A = a` for rational `a`; every A-exponent must be an integer.
    pub fn eval_a(&self, a: &Rational) -> Result<Self> {
        let mut out = Self::default();
        for ((qe, ae), c) in &self.terms {
            if !ae.is_integer() {
                return Err(Error::Precondition(
                    "fractional power of A at a rational point".into(),
                ));
            }
            let k: i64 = ae
                .to_integer()
                .try_into()
                .map_err(|_| Error::Precondition("exponent overflow".into()))?;
            let p = if k >= 0 {
                num_traits::pow(a.clone(), k as usize)
            } else {
                num_traits::pow(a.recip(), k.unsigned_abs() as usize)
            };
            out.add_term(qe.clone(), rint(0), &(c * p));
        }
        Ok(out)
    }

    /// Expansion under `q = e^{ħ/2}`, grouped by A-exponent, valid below `ħ^order`.
    pub fn to_hbar_series(&self, order: i64) -> BTreeMap<Rational, Series<Rational>> {
        let n = order.max(0) as usize;
        let mut out: BTreeMap<Rational, Vec<Rational>> = BTreeMap::new();
        for ((qe, ae), c) in &self.terms {
            let acc = out.entry(ae.clone()).or_insert_with(|| vec![rint(0); n]);
            let half = qe / rint(2);
            let mut pw = c.clone();
            for (k, slot) in acc.iter_mut().enumerate() {
                *slot += &pw / factorial(k as u64);
                pw *= &half;
            }
        }
        out.into_iter()
            .map(|(a, v)| (a, Series::truncated(0, v, order)))
            .collect()
    }

    pub fn text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((qe, ae), c) in self.terms.iter().rev() {
            let mut s = String::new();
            let mono = [("A", ae), ("q", qe)]
                .iter()
                .filter(|(_, e)| !e.is_zero())
                .map(|(v, e)| {
                    if e.is_one() {
                        v.to_string()
                    } else if e.is_integer() {
                        format!("{v}^{}", rational_text(e))
                    } else {
                        format!("{v}^({})", rational_text(e))
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            let ac = c.abs();
            if mono.is_empty() {
                s.push_str(&rational_text(&ac));
            } else if ac.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", rational_text(&ac), mono));
            }
            parts.push((c.is_negative(), s));
        }
        let mut out = String::new();
        for (i, (neg, s)) in parts.into_iter().enumerate() {
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&s);
        }
        out
    }
}

impl Ring for QALaurent {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::monomial(rint(1), rint(0), rint(0))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for ((q, a), c) in &other.terms {
            p.add_term(q.clone(), a.clone(), c);
        }
        p
    }
    fn mul(&self, other: &Self) -> Self {
        let mut p = Self::default();
        for ((q1, a1), c1) in &self.terms {
            for ((q2, a2), c2) in &other.terms {
                p.add_term(q1 + q2, a1 + a2, &(c1 * c2));
            }
        }
        p
    }
    fn neg(&self) -> Self {
        self.scale(&rint(-1))
    }
    fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((q, a), c) = self.terms.iter().next()?;
        Some(Self::monomial(c.recip(), -q, -a))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::monomial(r.clone(), rint(0), rint(0))
    }
    fn scale(&self, r: &Rational) -> Self {
        let mut p = Self::default();
        for ((q, a), c) in &self.terms {
            p.add_term(q.clone(), a.clone(), &(c * r));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn quantum_integer_division() {
        // q^3 − q^{-3} = (q − q^{-1})(q^2 + 1 + q^{-2})
        let num = QALaurent::q_diff(&rint(3));
        let quo = num.div_q_diff(1).unwrap();
        let mut expected = QALaurent::monomial(rint(1), rint(2), rint(0));
        expected.add_term(rint(0), rint(0), &rint(1));
        expected.add_term(rint(-2), rint(0), &rint(1));
        assert_eq!(quo, expected);
        assert!(QALaurent::q_diff(&rint(1)).div_q_diff(2).is_none());
    }

    #[test]
    fn division_respects_fractional_exponents() {
        let f = QALaurent::monomial(rint(1), rat(1, 3), rint(2));
        let p = f
            .mul(&QALaurent::q_diff(&rint(2)))
            .mul(&QALaurent::a_q_diff(&rint(1)));
        let back = p.div_q_diff(2).unwrap();
        assert_eq!(back, f.mul(&QALaurent::a_q_diff(&rint(1))));
    }

    #[test]
    fn hbar_expansion_of_q_diff() {
        // q − q^{-1} = 2 sinh(ħ/2) = ħ + ħ³/24 + …
        let s = QALaurent::q_diff(&rint(1)).to_hbar_series(5);
        let s = &s[&rint(0)];
        assert_eq!(s.coeff(0).unwrap(), rint(0));
        assert_eq!(s.coeff(1).unwrap(), rint(1));
        assert_eq!(s.coeff(2).unwrap(), rint(0));
        assert_eq!(s.coeff(3).unwrap(), rat(1, 24));
    }

    #[test]
    fn text_form() {
        let p = QALaurent::a_q_diff(&rat(1, 2));
        assert_eq!(p.text(), "A*q^(1/2) - A^-1*q^(-1/2)");
    }
}
