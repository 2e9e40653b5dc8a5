//! Rational functions in `z_1..z_n` whose denominators are products of the
//! branch-point quadratic `q(z) = z² − c z + 1` and differences `z_i − z_j`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{rational_text, rint, Rational};
use crate::error::{Error, Result};

/// Multivariate polynomial over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, &rint(1));
        p
    }

    /// `z² − c z + 1` in the variable `z_i`.
    pub fn quadratic(nvars: usize, i: usize, c: &Rational) -> Self {
        let mut p = Self::zero(nvars);
        let mut e = vec![0; nvars];
        p.add_term(e.clone(), &rint(1));
        e[i] = 1;
        p.add_term(e.clone(), &-c);
        e[i] = 2;
        p.add_term(e, &rint(1));
        p
    }

    /// `z_i − z_j`.
    pub fn difference(nvars: usize, i: usize, j: usize) -> Self {
        Self::var(nvars, i).sub(&Self::var(nvars, j))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c);
        }
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&rint(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), &(c * r));
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, &(c1 * c2));
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, rint(1));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Splits into coefficients of powers of `z_i`, each a polynomial with
    /// `z_i` absent.
    fn by_power(&self, i: usize) -> Vec<MultiPoly> {
        let deg = self.terms.keys().map(|e| e[i]).max().unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i] as usize;
            e2[i] = 0;
            out[k].add_term(e2, c);
        }
        out
    }

    fn from_powers(parts: &[MultiPoly], i: usize, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        for (k, part) in parts.iter().enumerate() {
            for (e, c) in &part.terms {
                let mut e2 = e.clone();
                e2[i] += k as u32;
                p.add_term(e2, c);
            }
        }
        p
    }

    /// Exact quotient by `z_i² − c z_i + 1`, if it divides.
    pub fn div_quadratic(&self, i: usize, c: &Rational) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut a = self.by_power(i);
        if a.len() < 3 {
            return None;
        }
        let n = a.len() - 1;
        let mut quo = vec![Self::zero(self.nvars); n - 1];
        for k in (2..=n).rev() {
            let lead = std::mem::replace(&mut a[k], Self::zero(self.nvars));
            // subtract lead·z^{k-2}·(z² − c z + 1)
            a[k - 1] = a[k - 1].add(&lead.scale(c));
            a[k - 2] = a[k - 2].sub(&lead);
            quo[k - 2] = lead;
        }
        if a[0].is_zero() && a[1].is_zero() {
            Some(Self::from_powers(&quo, i, self.nvars))
        } else {
            None
        }
    }

    /// Exact quotient by `z_i − z_j`, if it divides.
    pub fn div_difference(&self, i: usize, j: usize) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut a = self.by_power(i);
        if a.len() < 2 {
            return None;
        }
        let n = a.len() - 1;
        let zj = Self::var(self.nvars, j);
        let mut quo = vec![Self::zero(self.nvars); n];
        for k in (1..=n).rev() {
            let lead = std::mem::replace(&mut a[k], Self::zero(self.nvars));
            a[k - 1] = a[k - 1].add(&lead.mul(&zj));
            quo[k - 1] = lead;
        }
        if a[0].is_zero() {
            Some(Self::from_powers(&quo, i, self.nvars))
        } else {
            None
        }
    }

    /// Renames variables: variable `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                e2[perm[i]] = x;
            }
            p.add_term(e2, c);
        }
        p
    }

    pub fn eval(&self, z: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in z.iter().zip(e) {
                t *= num_traits::pow(x.clone(), k as usize);
            }
            acc += t;
        }
        acc
    }

    pub fn text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut s = rational_text(c);
                for (i, &k) in e.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => s.push_str(&format!("*z{}", i + 1)),
                        _ => s.push_str(&format!("*z{}^{}", i + 1, k)),
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

/// `num / (Π q(z_i)^{q_exp[i]} · Π_{i<j} (z_i − z_j)^{e_ij})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiRational {
    num: MultiPoly,
    c: Rational,
    q_exp: Vec<u32>,
    pair_exp: BTreeMap<(usize, usize), u32>,
}

impl MultiRational {
    /// Builds and normalizes; pair keys with `i > j` are reoriented.
    pub fn new(
        num: MultiPoly,
        c: Rational,
        q_exp: Vec<u32>,
        pairs: impl IntoIterator<Item = ((usize, usize), u32)>,
    ) -> Result<Self> {
        let n = num.nvars();
        if q_exp.len() != n {
            return Err(Error::SizeMismatch {
                left: q_exp.len(),
                right: n,
            });
        }
        let mut num = num;
        let mut pair_exp = BTreeMap::new();
        for ((i, j), e) in pairs {
            if i == j {
                if e > 0 {
                    return Err(Error::ZeroDenominator);
                }
                continue;
            }
            if i >= n || j >= n {
                return Err(Error::SizeMismatch {
                    left: i.max(j) + 1,
                    right: n,
                });
            }
            let key = (i.min(j), i.max(j));
            if i > j && e % 2 == 1 {
                num = num.neg();
            }
            *pair_exp.entry(key).or_insert(0) += e;
        }
        Ok(MultiRational {
            num,
            c,
            q_exp,
            pair_exp,
        }
        .normalize())
    }

    pub fn from_poly(num: MultiPoly, c: Rational) -> Self {
        let n = num.nvars();
        MultiRational {
            num,
            c,
            q_exp: vec![0; n],
            pair_exp: BTreeMap::new(),
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn q_exponents(&self) -> &[u32] {
        &self.q_exp
    }

    pub fn pair_exponents(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.pair_exp.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn normalize(mut self) -> Self {
        if self.num.is_zero() {
            self.q_exp.iter_mut().for_each(|e| *e = 0);
            self.pair_exp.clear();
            return self;
        }
        for i in 0..self.q_exp.len() {
            while self.q_exp[i] > 0 {
                match self.num.div_quadratic(i, &self.c) {
                    Some(q) => {
                        self.num = q;
                        self.q_exp[i] -= 1;
                    }
                    None => break,
                }
            }
        }
        let keys: Vec<(usize, usize)> = self.pair_exp.keys().cloned().collect();
        for (i, j) in keys {
            loop {
                let e = self.pair_exp[&(i, j)];
                if e == 0 {
                    break;
                }
                match self.num.div_difference(i, j) {
                    Some(q) => {
                        self.num = q;
                        self.pair_exp.insert((i, j), e - 1);
                    }
                    None => break,
                }
            }
        }
        self.pair_exp.retain(|_, e| *e > 0);
        self
    }

    fn lift(&self, q_exp: &[u32], pair_exp: &BTreeMap<(usize, usize), u32>) -> MultiPoly {
        let n = self.num.nvars();
        let mut num = self.num.clone();
        for i in 0..n {
            let extra = q_exp[i] - self.q_exp[i];
            if extra > 0 {
                num = num.mul(&MultiPoly::quadratic(n, i, &self.c).pow(extra));
            }
        }
        for (&(i, j), &e) in pair_exp {
            let extra = e - self.pair_exp.get(&(i, j)).copied().unwrap_or(0);
            if extra > 0 {
                num = num.mul(&MultiPoly::difference(n, i, j).pow(extra));
            }
        }
        num
    }

    pub fn add(&self, other: &Self) -> Self {
        let q_exp: Vec<u32> = self
            .q_exp
            .iter()
            .zip(&other.q_exp)
            .map(|(a, b)| *a.max(b))
            .collect();
        let mut pair_exp = self.pair_exp.clone();
        for (k, e) in &other.pair_exp {
            let v = pair_exp.entry(*k).or_insert(0);
            *v = (*v).max(*e);
        }
        let num = self
            .lift(&q_exp, &pair_exp)
            .add(&other.lift(&q_exp, &pair_exp));
        MultiRational {
            num,
            c: self.c.clone(),
            q_exp,
            pair_exp,
        }
        .normalize()
    }

    pub fn neg(&self) -> Self {
        MultiRational {
            num: self.num.neg(),
            ..self.clone()
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        MultiRational {
            num: self.num.scale(r),
            ..self.clone()
        }
        .normalize()
    }

    /// Division by a nonzero scalar.
    pub fn div_scalar(&self, r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.scale(&r.recip()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let q_exp = self
            .q_exp
            .iter()
            .zip(&other.q_exp)
            .map(|(a, b)| a + b)
            .collect();
        let mut pair_exp = self.pair_exp.clone();
        for (k, e) in &other.pair_exp {
            *pair_exp.entry(*k).or_insert(0) += e;
        }
        MultiRational {
            num: self.num.mul(&other.num),
            c: self.c.clone(),
            q_exp,
            pair_exp,
        }
        .normalize()
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut num = self.num.permute(perm);
        let mut q_exp = vec![0; self.q_exp.len()];
        for (i, &e) in self.q_exp.iter().enumerate() {
            q_exp[perm[i]] = e;
        }
        let mut pair_exp = BTreeMap::new();
        for (&(i, j), &e) in &self.pair_exp {
            let (a, b) = (perm[i], perm[j]);
            if a > b && e % 2 == 1 {
                num = num.neg();
            }
            pair_exp.insert((a.min(b), a.max(b)), e);
        }
        MultiRational {
            num,
            c: self.c.clone(),
            q_exp,
            pair_exp,
        }
    }

    /// Value at a point off the denominator locus.
    pub fn eval(&self, z: &[Rational]) -> Result<Rational> {
        let mut den = rint(1);
        for (i, &e) in self.q_exp.iter().enumerate() {
            let q = &z[i] * &z[i] - &self.c * &z[i] + rint(1);
            den *= num_traits::pow(q, e as usize);
        }
        for (&(i, j), &e) in &self.pair_exp {
            den *= num_traits::pow(&z[i] - &z[j], e as usize);
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(z) / den)
    }

    pub fn denominator_text(&self) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.q_exp.iter().enumerate() {
            if e > 0 {
                parts.push(format!("q(z{})^{}", i + 1, e));
            }
        }
        for (&(i, j), &e) in &self.pair_exp {
            parts.push(format!("(z{}-z{})^{}", i + 1, j + 1, e));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn c() -> Rational {
        rat(-2, 3)
    }

    #[test]
    fn cancels_common_difference() {
        let num = MultiPoly::difference(2, 0, 1);
        let f = MultiRational::new(num, c(), vec![1, 0], [((0, 1), 1)]).unwrap();
        let expected =
            MultiRational::new(MultiPoly::constant(2, rint(1)), c(), vec![1, 0], []).unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn negation_sums_to_zero() {
        let num = MultiPoly::var(2, 0).add(&MultiPoly::constant(2, rint(3)));
        let f = MultiRational::new(num, c(), vec![2, 1], [((0, 1), 2)]).unwrap();
        let z = f.add(&f.neg());
        assert!(z.is_zero());
        assert_eq!(z.q_exponents(), &[0, 0]);
        assert_eq!(z.pair_exponents().count(), 0);
    }

    #[test]
    fn reversed_pair_flips_sign() {
        let one = MultiPoly::constant(2, rint(1));
        let f = MultiRational::new(one.clone(), c(), vec![0, 0], [((1, 0), 1)]).unwrap();
        let g = MultiRational::new(one.neg(), c(), vec![0, 0], [((0, 1), 1)]).unwrap();
        assert_eq!(f, g);
        assert!(MultiRational::new(one, c(), vec![0, 0], [((1, 1), 1)]).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -4i64..4), 0..5).prop_map(|v| {
            let mut p = MultiPoly::zero(2);
            for ((a, b), k) in v {
                p.add_term(vec![a, b], &rint(k));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(p in arb_poly(), s in arb_poly(), e0 in 0u32..3, e1 in 0u32..3, d in 0u32..3) {
            // multiply by known factors so cancellation actually happens
            let num = p.mul(&MultiPoly::quadratic(2, 0, &c())).mul(&MultiPoly::difference(2, 0, 1)).add(&s);
            let f = MultiRational::new(num, c(), vec![e0, e1], [((0, 1), d)]).unwrap();
            prop_assert_eq!(f.clone().normalize(), f.clone());
            let z = [rat(1, 5), rat(7, 3)];
            let back = f.mul(&f).eval(&z).unwrap();
            prop_assert_eq!(back, f.eval(&z).unwrap() * f.eval(&z).unwrap());
        }

        #[test]
        fn equal_functions_equal_forms(p in arb_poly()) {
            // p/q(z1) written two ways
            let a = MultiRational::new(p.clone(), c(), vec![1, 0], []).unwrap();
            let num = p.mul(&MultiPoly::difference(2, 0, 1)).mul(&MultiPoly::quadratic(2, 1, &c()));
            let b = MultiRational::new(num, c(), vec![1, 1], [((0, 1), 1)]).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
