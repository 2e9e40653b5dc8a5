//! Integer partitions, symmetric-group characters and Schur functions in the
//! power-sum basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, rint, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts descending; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Precondition(
                "partition parts must be positive".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let n = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=n)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Every part multiplied by `k`.
    pub fn scaled(&self, k: u32) -> Self {
        Partition {
            parts: self.parts.iter().map(|p| p * k).collect(),
        }
    }

    /// Multiplicities `m_k` as `(k, m_k)` pairs.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Parses `"3,1,1"`; the empty string is the empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `κ_λ = Σ (i − j)` over boxes, `j` the row and `i` the position in the row.
pub fn kappa(lam: &Partition) -> i64 {
    lam.parts
        .iter()
        .enumerate()
        .map(|(row, &len)| {
            let j = row as i64 + 1;
            (1..=len as i64).map(|i| i - j).sum::<i64>()
        })
        .sum()
}

/// `z_μ = Π k^{m_k} m_k!`.
pub fn z_order(mu: &Partition) -> BigInt {
    let mut z = BigInt::one();
    for (k, m) in mu.multiplicities() {
        z *= BigInt::from(k).pow(m);
        z *= factorial(m as u64).to_integer();
    }
    z
}

type Table = HashMap<(Partition, Partition), i64>;

fn tables() -> &'static RwLock<HashMap<u32, Arc<Table>>> {
    static T: OnceLock<RwLock<HashMap<u32, Arc<Table>>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Character table of `S_n`, built once and shared.
fn table(n: u32) -> Arc<Table> {
    if let Some(t) = tables().read().unwrap().get(&n) {
        return t.clone();
    }
    let parts = partitions_of(n);
    let mut t = Table::new();
    for lam in &parts {
        for mu in &parts {
            t.insert((lam.clone(), mu.clone()), mn_rec(lam, mu));
        }
    }
    let t = Arc::new(t);
    tables().write().unwrap().entry(n).or_insert(t).clone()
}

/// Removes rim hooks of length `k` from `λ` via its beta set, returning the
/// residual partitions with their signs.
fn rim_hooks(lam: &Partition, k: u32) -> Vec<(Partition, i64)> {
    let l = lam.len();
    let beta: Vec<i64> = lam
        .parts
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (l - 1 - i) as i64)
        .collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        let nb = b - k as i64;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > nb && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nbeta = beta.clone();
        nbeta[idx] = nb;
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = nbeta
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (l - 1 - i) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        out.push((Partition { parts }, sign));
    }
    out
}

fn mn_rec(lam: &Partition, mu: &Partition) -> i64 {
    if mu.is_empty() {
        return if lam.is_empty() { 1 } else { 0 };
    }
    let k = mu.parts[0];
    let rest = Partition {
        parts: mu.parts[1..].to_vec(),
    };
    let sub = table(rest.size());
    rim_hooks(lam, k)
        .into_iter()
        .map(|(nu, s)| s * sub.get(&(nu, rest.clone())).copied().unwrap_or(0))
        .sum()
}

/// Symmetric-group character `χ^λ_μ` by Murnaghan–Nakayama.
pub fn mn_character(lam: &Partition, mu: &Partition) -> Result<i64> {
    if lam.size() != mu.size() {
        return Err(Error::SizeMismatch {
            left: lam.size() as usize,
            right: mu.size() as usize,
        });
    }
    Ok(table(lam.size())[&(lam.clone(), mu.clone())])
}

/// Polynomial in power sums: `p_μ ↦ coefficient`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PSumPolynomial {
    terms: BTreeMap<Partition, Rational>,
}

impl PSumPolynomial {
    pub fn add_term(&mut self, mu: Partition, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(mu.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&mu);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &Partition) -> Rational {
        self.terms.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    /// Substitutes `p_i ↦ p_{iQ}`.
    pub fn adams(&self, q: u32) -> Self {
        let mut out = Self::default();
        for (mu, c) in &self.terms {
            out.add_term(mu.scaled(q), c);
        }
        out
    }
}

/// `s_λ = Σ_μ χ^λ_μ p_μ / z_μ`.
pub fn schur_in_p(lam: &Partition) -> PSumPolynomial {
    let mut out = PSumPolynomial::default();
    for mu in partitions_of(lam.size()) {
        let chi = table(lam.size())[&(lam.clone(), mu.clone())];
        if chi != 0 {
            let c = rint(chi) / Rational::from_integer(z_order(&mu));
            out.add_term(mu, &c);
        }
    }
    out
}

/// Coefficients `c^{R₁}_R` of `s_R(p_Q, p_{2Q}, …) = Σ c^{R₁}_R s_{R₁}`.
pub fn adams_coeffs(r: &Partition, q: u32) -> Result<BTreeMap<Partition, i64>> {
    if q < 1 {
        return Err(Error::Precondition("Adams index must be at least 1".into()));
    }
    let n = r.size();
    let small = table(n);
    let big = table(n * q);
    let mut out = BTreeMap::new();
    for r1 in partitions_of(n * q) {
        let mut c = Rational::zero();
        for nu in partitions_of(n) {
            let a = small[&(r.clone(), nu.clone())];
            if a == 0 {
                continue;
            }
            let b = big[&(r1.clone(), nu.scaled(q))];
            c += rint(a * b) / Rational::from_integer(z_order(&nu));
        }
        if !c.is_integer() {
            return Err(Error::Consistency(format!(
                "non-integral Adams coefficient for {r1}"
            )));
        }
        let c: i64 = c
            .to_integer()
            .try_into()
            .map_err(|_| Error::Consistency("Adams coefficient overflow".into()))?;
        if c != 0 {
            out.insert(r1, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Eigenvalue of F₂ from shifted parts: Σ_i [(λ_i − i + ½)² − (−i + ½)²]/2.
    fn f2_oracle(lam: &Partition) -> Rational {
        let half = rat(1, 2);
        lam.parts()
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let i = rint(i as i64 + 1);
                let a = rint(l as i64) - &i + &half;
                let b = -&i + &half;
                (&a * &a - &b * &b) / rint(2)
            })
            .sum()
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&Partition::empty()), 0);
        assert_eq!(kappa(&p(&[1])), 0);
        assert_eq!(kappa(&p(&[2])), 1);
        assert_eq!(kappa(&p(&[1, 1])), -1);
        for n in 0..=8 {
            for lam in partitions_of(n) {
                assert_eq!(rint(kappa(&lam)), f2_oracle(&lam), "{lam}");
                assert_eq!(kappa(&lam.transpose()), -kappa(&lam));
            }
        }
    }

    #[test]
    fn character_examples() {
        assert_eq!(mn_character(&p(&[1]), &p(&[1])).unwrap(), 1);
        for mu in partitions_of(5) {
            assert_eq!(mn_character(&p(&[5]), &mu).unwrap(), 1);
        }
        // sign representation: a transposition acts by −1
        assert_eq!(mn_character(&p(&[1, 1]), &p(&[2])).unwrap(), -1);
        assert!(mn_character(&p(&[2]), &p(&[1])).is_err());
    }

    /// Centralizer size of a permutation of cycle type μ, by enumerating S_n.
    fn centralizer_oracle(mu: &Partition) -> usize {
        let n = mu.size() as usize;
        let mut sigma = Vec::new();
        let mut start = 0;
        for &k in mu.parts() {
            let k = k as usize;
            for i in 0..k {
                sigma.push(start + (i + 1) % k);
            }
            start += k;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            // perm ∘ sigma == sigma ∘ perm
            if (0..n).all(|i| perm[sigma[i]] == sigma[perm[i]]) {
                count += 1;
            }
            // next permutation
            let Some(i) = (0..n.saturating_sub(1))
                .rev()
                .find(|&i| perm[i] < perm[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        count
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_order(&p(&[1])), BigInt::from(1));
        assert_eq!(z_order(&p(&[1, 1])), BigInt::from(2));
        assert_eq!(z_order(&p(&[3, 1, 1])), BigInt::from(6));
        for mu in partitions_of(5) {
            assert_eq!(z_order(&mu), BigInt::from(centralizer_oracle(&mu)), "{mu}");
        }
    }

    #[test]
    fn orthogonality() {
        for n in 1..=7 {
            let ps = partitions_of(n);
            for a in &ps {
                for b in &ps {
                    let s: Rational = ps
                        .iter()
                        .map(|mu| {
                            rint(mn_character(a, mu).unwrap() * mn_character(b, mu).unwrap())
                                / Rational::from_integer(z_order(mu))
                        })
                        .sum();
                    assert_eq!(s, rint((a == b) as i64));
                }
            }
        }
    }

    /// Jacobi–Trudi: s_λ = det(h_{λ_i − i + j}), with h_k = Σ_{μ⊢k} p_μ/z_μ.
    fn jacobi_trudi(lam: &Partition) -> PSumPolynomial {
        fn h(k: i64) -> PSumPolynomial {
            let mut out = PSumPolynomial::default();
            if k < 0 {
                return out;
            }
            for mu in partitions_of(k as u32) {
                out.add_term(
                    mu.clone(),
                    &(rint(1) / Rational::from_integer(z_order(&mu))),
                );
            }
            out
        }
        fn mul(a: &PSumPolynomial, b: &PSumPolynomial) -> PSumPolynomial {
            let mut out = PSumPolynomial::default();
            for (x, c) in a.terms() {
                for (y, d) in b.terms() {
                    let mut v = x.parts().to_vec();
                    v.extend_from_slice(y.parts());
                    out.add_term(Partition::new(v).unwrap(), &(c * d));
                }
            }
            out
        }
        let l = lam.len();
        if l == 0 {
            let mut one = PSumPolynomial::default();
            one.add_term(Partition::empty(), &rint(1));
            return one;
        }
        // Leibniz expansion over permutations of size l ≤ 4
        let mut out = PSumPolynomial::default();
        let mut perm: Vec<usize> = (0..l).collect();
        loop {
            let inv = (0..l)
                .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            let mut term = PSumPolynomial::default();
            term.add_term(Partition::empty(), &rint(if inv % 2 == 0 { 1 } else { -1 }));
            for i in 0..l {
                term = mul(&term, &h(lam.parts()[i] as i64 - i as i64 + perm[i] as i64));
            }
            for (mu, c) in term.terms() {
                out.add_term(mu.clone(), c);
            }
            let Some(i) = (0..l.saturating_sub(1))
                .rev()
                .find(|&i| perm[i] < perm[i + 1])
            else {
                break;
            };
            let j = (i + 1..l).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        out
    }

    #[test]
    fn schur_examples() {
        let s0 = schur_in_p(&Partition::empty());
        assert_eq!(s0.coeff(&Partition::empty()), rint(1));
        let s1 = schur_in_p(&p(&[1]));
        assert_eq!(s1.terms().count(), 1);
        assert_eq!(s1.coeff(&p(&[1])), rint(1));
        let s2 = schur_in_p(&p(&[2]));
        assert_eq!(s2.coeff(&p(&[1, 1])), rat(1, 2));
        assert_eq!(s2.coeff(&p(&[2])), rat(1, 2));
        let s11 = schur_in_p(&p(&[1, 1]));
        assert_eq!(s11.coeff(&p(&[1, 1])), rat(1, 2));
        assert_eq!(s11.coeff(&p(&[2])), rat(-1, 2));
        for n in 0..=5 {
            for lam in partitions_of(n) {
                assert_eq!(schur_in_p(&lam), jacobi_trudi(&lam), "{lam}");
            }
        }
    }

    /// Expands a homogeneous p-polynomial in Schur functions by inner product
    /// with the p-basis: ⟨p_μ, p_ν⟩ = z_μ δ.
    fn schur_expand_oracle(f: &PSumPolynomial, n: u32) -> BTreeMap<Partition, i64> {
        let mut out = BTreeMap::new();
        for lam in partitions_of(n) {
            let s = schur_in_p(&lam);
            let c: Rational = f
                .terms()
                .map(|(mu, c)| c * s.coeff(mu) * Rational::from_integer(z_order(mu)))
                .sum();
            if !c.is_zero() {
                out.insert(lam, c.to_integer().try_into().unwrap());
            }
        }
        out
    }

    #[test]
    fn adams_examples() {
        let c = adams_coeffs(&p(&[2, 1]), 1).unwrap();
        assert_eq!(c, BTreeMap::from([(p(&[2, 1]), 1)]));
        let c = adams_coeffs(&p(&[1]), 2).unwrap();
        assert_eq!(c, BTreeMap::from([(p(&[2]), 1), (p(&[1, 1]), -1)]));
        let c = adams_coeffs(&p(&[1]), 3).unwrap();
        assert_eq!(
            c,
            BTreeMap::from([(p(&[3]), 1), (p(&[2, 1]), -1), (p(&[1, 1, 1]), 1)])
        );
        assert!(adams_coeffs(&p(&[1]), 0).is_err());
        for n in 0..=3 {
            for r in partitions_of(n) {
                for q in 1..=3 {
                    let sub = schur_in_p(&r).adams(q);
                    assert_eq!(
                        adams_coeffs(&r, q).unwrap(),
                        schur_expand_oracle(&sub, n * q)
                    );
                }
            }
        }
    }

    #[test]
    fn adams_at_principal_point() {
        // evaluate at p_i = x^i + y^i + w^i (three variables), both sides
        let pts = [rat(1, 2), rat(-2, 3), rint(3)];
        let pe = |mu: &Partition| -> Rational {
            mu.parts()
                .iter()
                .map(|&k| {
                    pts.iter()
                        .map(|x| num_traits::pow(x.clone(), k as usize))
                        .sum::<Rational>()
                })
                .product()
        };
        let ev = |f: &PSumPolynomial| -> Rational { f.terms().map(|(mu, c)| c * pe(mu)).sum() };
        for r in partitions_of(3) {
            let lhs = ev(&schur_in_p(&r).adams(2));
            let rhs: Rational = adams_coeffs(&r, 2)
                .unwrap()
                .iter()
                .map(|(r1, &c)| rint(c) * ev(&schur_in_p(r1)))
                .sum();
            assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #[test]
        fn parse_display_roundtrip(v in prop::collection::vec(1u32..6, 0..5)) {
            let lam = Partition::new(v).unwrap();
            prop_assert_eq!(Partition::parse(&lam.to_string()).unwrap(), lam);
        }
    }
}
