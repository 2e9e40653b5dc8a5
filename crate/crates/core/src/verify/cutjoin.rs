//! Cut-and-join residual for the correlator tables.
//!
//! Both sides are evaluated as functions `N(X)/Π_{i<j}(X_i − X_j)^{e_ij}`
//! with `N` a truncated power series; diagonal poles come only from the
//! `log((ξ − X_j)/(ξX_j))` correction of `H̃_{0,2}(ξ, X_j)`. All operators
//! preserve homogeneity, so the residual is known through total degree `D`
//! exactly. Powers of the formal parameter `u` are tracked as polynomials in
//! `u²` of degree `≤ g`.

use std::collections::{BTreeMap, HashMap};

use serde_json::json;

use crate::error::Result;
use crate::exactnum::{
    factorial, rational_text, rint, zeta_inverse_coeffs, MultiSeries, Rational, Ring,
};
use crate::ovcorr::{Correlators, HgnTable};

use super::{distinct_orderings, status, CheckReport, XExpander};
use crate::speccurve::CurveData;

type Pairs = BTreeMap<(usize, usize), u32>;

#[derive(Clone, Debug)]
struct Frac {
    num: MultiSeries<Rational>,
    den: Pairs,
}

struct Ctx<'a> {
    n: usize,
    degree: u32,
    g: u32,
    corr: &'a Correlators<Rational>,
    tables: HashMap<(u32, u32), HgnTable<Rational>>,
    variant: CutJoinVariant,
}

fn den_degree(d: &Pairs) -> i64 {
    d.values().map(|&e| e as i64).sum()
}

/// `ζ(uμ)/u` as a polynomial in `u²`: `Σ_r μ^{2r+1} u^{2r}/(4^r (2r+1)!)`.
fn zeta_weights(mu: i64, terms: usize) -> Vec<Rational> {
    (0..terms)
        .map(|r| {
            let r = r as u64;
            rint(mu).pow(2 * r as i32 + 1) / (factorial(2 * r + 1) * rint(4).pow(r as i32))
        })
        .collect()
}

impl Ctx<'_> {
    fn valid_for(&self, den: &Pairs) -> i64 {
        self.degree as i64 + 1 + den_degree(den)
    }

    fn frac(&self, num: MultiSeries<Rational>, den: Pairs) -> Frac {
        let v = self.valid_for(&den);
        Frac {
            num: num.truncate(v),
            den,
        }
    }

    fn zero(&self) -> Frac {
        self.frac(
            MultiSeries::zero(self.n, self.degree as i64 + 1),
            Pairs::new(),
        )
    }

    fn one(&self) -> Frac {
        self.frac(
            MultiSeries::constant(self.n, rint(1), self.degree as i64 + 1),
            Pairs::new(),
        )
    }

    fn pair(&self, (i, j): (usize, usize)) -> MultiSeries<Rational> {
        MultiSeries::var(self.n, i, i64::MAX).sub(&MultiSeries::var(self.n, j, i64::MAX))
    }

    fn pair_pow(&self, p: (usize, usize), e: u32) -> MultiSeries<Rational> {
        let f = self.pair(p);
        let mut out = MultiSeries::constant(self.n, rint(1), i64::MAX);
        for _ in 0..e {
            out = out.mul(&f);
        }
        out
    }

    fn add(&self, a: &Frac, b: &Frac) -> Frac {
        let mut den = a.den.clone();
        for (p, &e) in &b.den {
            let v = den.entry(*p).or_insert(0);
            *v = (*v).max(e);
        }
        let lift = |f: &Frac| {
            let mut num = f.num.clone();
            for (p, &e) in &den {
                let have = f.den.get(p).copied().unwrap_or(0);
                if e > have {
                    num = num.mul(&self.pair_pow(*p, e - have));
                }
            }
            num
        };
        let num = lift(a).add(&lift(b));
        self.frac(num, den)
    }

    fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        let mut den = a.den.clone();
        for (p, &e) in &b.den {
            *den.entry(*p).or_insert(0) += e;
        }
        self.frac(a.num.mul(&b.num), den)
    }

    fn scale(&self, a: &Frac, r: &Rational) -> Frac {
        Frac {
            num: a.num.scale(r),
            den: a.den.clone(),
        }
    }

    fn times_var_power(&self, a: &Frac, k: usize, m: u32) -> Frac {
        let mut e = vec![0; self.n];
        e[k] = m;
        let mut x = MultiSeries::zero(self.n, i64::MAX);
        x.add_term(e, rint(1));
        self.frac(a.num.mul(&x), a.den.clone())
    }

    /// `X_k ∂/∂X_k`.
    fn euler(&self, a: &Frac, k: usize) -> Frac {
        let involved: Vec<((usize, usize), u32)> = a
            .den
            .iter()
            .filter(|(p, &e)| e > 0 && (p.0 == k || p.1 == k))
            .map(|(p, &e)| (*p, e))
            .collect();
        if involved.is_empty() {
            return Frac {
                num: a.num.euler(k),
                den: a.den.clone(),
            };
        }
        let xk = MultiSeries::var(self.n, k, i64::MAX);
        let prod_except = |skip: Option<usize>| {
            let mut out = MultiSeries::constant(self.n, rint(1), i64::MAX);
            for (idx, (p, _)) in involved.iter().enumerate() {
                if Some(idx) != skip {
                    out = out.mul(&self.pair(*p));
                }
            }
            out
        };
        let mut num = a.num.euler(k).mul(&prod_except(None));
        for (idx, (p, e)) in involved.iter().enumerate() {
            // D_k(X_i − X_j) = ±X_k
            let sign = if p.0 == k { rint(1) } else { rint(-1) };
            let term = a
                .num
                .mul(&xk)
                .mul(&prod_except(Some(idx)))
                .scale(&(sign * rint(*e as i64)));
            num = num.sub(&term);
        }
        let mut den = a.den.clone();
        for (p, _) in &involved {
            *den.get_mut(p).unwrap() += 1;
        }
        self.frac(num, den)
    }

    fn table(&mut self, g: u32, n: u32) -> Result<&HgnTable<Rational>> {
        if !self.tables.contains_key(&(g, n)) {
            let t = self.corr.hgn_poly(g, n as usize, self.degree.max(n))?;
            self.tables.insert((g, n), t);
        }
        Ok(&self.tables[&(g, n)])
    }

    /// `Π_{i∈T} ζ(uD_{ξ_i})/u · H̃_{g,s+|K|}(ξ_T, X_K)` at `ξ_i = X_k`, divided by `s!`.
    fn block(&mut self, g: u32, s: u32, k: usize, kset: &[usize]) -> Result<Vec<Frac>> {
        let terms = self.g as usize + 1;
        let n = self.n;
        let degree = self.degree;
        let arity = s + kset.len() as u32;
        let mut polys: Vec<MultiSeries<Rational>> =
            vec![MultiSeries::zero(n, degree as i64 + 1); terms];
        let table = self.table(g, arity)?.clone();
        for (mu, c) in &table.entries {
            if mu.size() > degree {
                continue;
            }
            for ord in distinct_orderings(mu.parts()) {
                let mut weight = vec![rint(0); terms];
                weight[0] = c.clone();
                let mut e = vec![0u32; n];
                for (i, &m) in ord.iter().enumerate() {
                    if i < s as usize {
                        e[k] += m;
                        let w = zeta_weights(m as i64, terms);
                        let mut next = vec![rint(0); terms];
                        for (a, x) in weight.iter().enumerate() {
                            for (b, y) in w.iter().enumerate().take(terms - a) {
                                next[a + b] += x * y;
                            }
                        }
                        weight = next;
                    } else {
                        e[kset[i - s as usize]] += m;
                    }
                }
                for (r, w) in weight.into_iter().enumerate() {
                    polys[r].add_term(e.clone(), w);
                }
            }
        }
        let inv = factorial(s as u64).recip();
        let mut out: Vec<Frac> = polys
            .into_iter()
            .map(|p| self.frac(p.scale(&inv), Pairs::new()))
            .collect();
        if (g, s, kset.len()) == (0, 1, 1) && self.variant != CutJoinVariant::NoLogCorrection {
            let corr = self.log_correction(k, kset[0])?;
            for (r, f) in corr.into_iter().enumerate() {
                out[r] = self.add(&out[r], &f);
            }
        }
        Ok(out)
    }

    /// `ζ(uD_ξ)/u · log((ξ − X_j)/(ξX_j))` at `ξ = X_k`.
    fn log_correction(&self, k: usize, j: usize) -> Result<Vec<Frac>> {
        let terms = self.g as usize + 1;
        // D_ξ^r of log(ξ − X) − log ξ is P_r(ξ, X)/(ξ − X)^r; P_1 = X
        let mut p: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        p.insert((0, 1), rint(1));
        let mut by_r = vec![p.clone()];
        for r in 1..(2 * terms as u32) {
            let mut next: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
            for (&(a, b), c) in &p {
                // ξ∂_ξP·(ξ − X) − rξP
                let d = c * rint(a as i64);
                *next.entry((a + 1, b)).or_insert_with(|| rint(0)) += &d - c * rint(r as i64);
                *next.entry((a, b + 1)).or_insert_with(|| rint(0)) -= &d;
            }
            next.retain(|_, v| !v.is_zero());
            p = next;
            by_r.push(p.clone());
        }
        let key = (k.min(j), k.max(j));
        let mut out = Vec::new();
        for s in 0..terms {
            let r = 2 * s as u32 + 1;
            let coef = (factorial(r as u64) * rint(4).pow(s as i32)).recip();
            // (ξ − X)^r = (X_k − X_j)^r = (−1)^r (X_j − X_k)^r when j < k
            let sign = if k < j || r.is_multiple_of(2) {
                rint(1)
            } else {
                rint(-1)
            };
            let mut num = MultiSeries::zero(self.n, i64::MAX);
            for (&(a, b), c) in &by_r[r as usize - 1] {
                let mut e = vec![0u32; self.n];
                e[k] += a;
                e[j] += b;
                num.add_term(e, c * &coef * &sign);
            }
            let mut den = Pairs::new();
            den.insert(key, r);
            out.push(self.frac(num, den));
        }
        Ok(out)
    }

    fn upoly_mul(&self, a: &[Frac], b: &[Frac]) -> Vec<Frac> {
        let terms = self.g as usize + 1;
        let mut out = vec![self.zero(); terms];
        for (i, x) in a.iter().enumerate() {
            if x.num.is_known_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(terms - i) {
                if y.num.is_known_zero() {
                    continue;
                }
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        out
    }

    fn upoly_add(&self, a: &[Frac], b: &[Frac]) -> Vec<Frac> {
        a.iter().zip(b).map(|(x, y)| self.add(x, y)).collect()
    }
}

type Key = (u32, u32, u32); // (mask of X-variables, t, genus weight)
type Algebra = BTreeMap<Key, Vec<Frac>>;

/// Terms of the cut-and-join equation to keep; the mutants exist to show the
/// check can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutJoinVariant {
    Full,
    /// Drops the `log((ξ − X)/(ξX))` shift of `H̃_{0,2}`.
    NoLogCorrection,
    /// Keeps only `a = 0`, i.e. ignores the `ħ²`-dependence of `p*`.
    NoHbarDeformation,
}

/// LHS − RHS of the cut-and-join equation for `H̃_{g,n}`, through total
/// degree `degree`. For `(0, 1)` the check also compares `D_X H_{0,1}` with
/// `y(z(X))` on the curve. `H̃_{0,2}` with two `X` arguments (the left side
/// of the `(0, 2)` equation) carries no correction.
pub fn cutjoin_residual(
    corr: &Correlators<Rational>,
    curve: &CurveData,
    g: u32,
    n: u32,
    degree: u32,
) -> Result<CheckReport> {
    cutjoin_residual_with(corr, curve, g, n, degree, CutJoinVariant::Full)
}

pub fn cutjoin_residual_with(
    corr: &Correlators<Rational>,
    curve: &CurveData,
    g: u32,
    n: u32,
    degree: u32,
    variant: CutJoinVariant,
) -> Result<CheckReport> {
    let mut cx = Ctx {
        n: n as usize,
        degree,
        g,
        corr,
        tables: HashMap::new(),
        variant,
    };
    let knot = corr.knot();
    let pq = knot.p_over_q();
    let a_val = corr.param().clone();
    let terms = g as usize + 1;
    let bern = zeta_inverse_coeffs(terms);

    // left side: Σ D_{X_i} H_{g,n}
    let mut lhs_num = MultiSeries::zero(cx.n, degree as i64 + 1);
    for (mu, c) in &cx.table(g, n)?.entries {
        for ord in distinct_orderings(mu.parts()) {
            lhs_num.add_term(ord, c * rint(mu.size() as i64));
        }
    }
    let mut rhs = cx.zero();

    for k in 0..cx.n {
        let others: Vec<usize> = (0..cx.n).filter(|&i| i != k).collect();
        let full_mask: u32 = others.iter().map(|&i| 1 << i).sum();
        // descriptors (g_j, s_j, K_j) with genus weight g_j + s_j − 1 ≤ g
        let mut v = Algebra::new();
        for sub in 0u32..(1 << others.len()) {
            let kset: Vec<usize> = others
                .iter()
                .enumerate()
                .filter(|(b, _)| sub >> b & 1 == 1)
                .map(|(_, &i)| i)
                .collect();
            let mask: u32 = kset.iter().map(|&i| 1 << i).sum();
            for s in 1..=degree {
                for gj in 0..=g {
                    if gj + s - 1 > g {
                        continue;
                    }
                    let b = cx.block(gj, s, k, &kset)?;
                    let key = (mask, s, gj + s - 1);
                    let cur = v.remove(&key).unwrap_or_else(|| vec![cx.zero(); terms]);
                    v.insert(key, cx.upoly_add(&cur, &b));
                }
            }
        }
        // exp(V) with disjoint X-sets and genus weight ≤ g; every ξ raises the
        // degree by at least one except the n − 1 attached through the log
        // correction, which have degree 0
        let tmax = degree + cx.n as u32 - 1;
        let mut unit = vec![cx.zero(); terms];
        unit[0] = cx.one();
        let mut acc = Algebra::new();
        acc.insert((0, 0, 0), unit.clone());
        let mut term = acc.clone();
        for l in 1..=tmax {
            let mut next = Algebra::new();
            for (&(m1, t1, g1), x) in &term {
                for (&(m2, t2, g2), y) in &v {
                    if m1 & m2 != 0 || t1 + t2 > tmax || g1 + g2 > g {
                        continue;
                    }
                    let key = (m1 | m2, t1 + t2, g1 + g2);
                    let prod = cx.upoly_mul(x, y);
                    let cur = next.remove(&key).unwrap_or_else(|| vec![cx.zero(); terms]);
                    next.insert(key, cx.upoly_add(&cur, &prod));
                }
            }
            let inv = rint(l as i64).recip();
            for f in next.values_mut() {
                for x in f.iter_mut() {
                    *x = cx.scale(x, &inv);
                }
            }
            for (key, f) in &next {
                let cur = acc.remove(key).unwrap_or_else(|| vec![cx.zero(); terms]);
                acc.insert(*key, cx.upoly_add(&cur, f));
            }
            if next.is_empty() {
                break;
            }
            term = next;
        }
        // ζ(uD)/(uD) = Σ_s u^{2s} D^{2s}/(4^s (2s+1)!)
        let zz: Vec<Rational> = (0..terms as u64)
            .map(|s| (factorial(2 * s + 1) * rint(4).pow(s as i32)).recip())
            .collect();
        let amax = if variant == CutJoinVariant::NoHbarDeformation {
            0
        } else {
            g
        };
        for a in 0..=amax {
            for d in 0..=(g - a) {
                let big_g = g - d - a;
                for m in 1..=degree {
                    let mq = rint(m as i64) * &pq;
                    // F(u) = X_k^m Σ_t (Pm/Q)^t DH^{k,t}_{G}
                    let mut f = vec![cx.zero(); terms];
                    for (&(mask, t, gw), dh) in &acc {
                        if mask != full_mask || gw != big_g {
                            continue;
                        }
                        let w = mq.pow(t as i32);
                        let shifted: Vec<Frac> = dh
                            .iter()
                            .map(|x| cx.times_var_power(&cx.scale(x, &w), k, m))
                            .collect();
                        f = cx.upoly_add(&f, &shifted);
                    }
                    // [u^{2d}] (u/ζ(u)) (ζ(uD_k)/(uD_k)) F(u)
                    let mut total = cx.zero();
                    for i in 0..=d as usize {
                        for s in 0..=(d as usize - i) {
                            let r = d as usize - i - s;
                            let mut x = f[r].clone();
                            for _ in 0..2 * s {
                                x = cx.euler(&x, k);
                            }
                            total = cx.add(&total, &cx.scale(&x, &(&bern[i] * &zz[s])));
                        }
                    }
                    let am = a_val.pow(m as i32) - a_val.pow(-(m as i32));
                    let coef = &bern[a as usize] * rint(m as i64).pow(2 * a as i32) * am
                        / rint(m as i64)
                        * mq.pow(2 * d as i32);
                    rhs = cx.add(&rhs, &cx.scale(&total, &coef));
                }
            }
        }
    }

    let lhs = cx.frac(lhs_num.clone(), Pairs::new());
    let resid = cx.add(&lhs, &cx.scale(&rhs, &rint(-1)));
    let dd = den_degree(&resid.den);

    let first_bad = resid
        .num
        .terms()
        .map(|(e, _)| e.iter().map(|&x| x as i64).sum::<i64>() - dd)
        .min();
    let mut witness = match first_bad {
        Some(h) => json!({"first_nonzero_degree": h}),
        None => serde_json::Value::Null,
    };
    if (g, n) == (0, 1) && witness.is_null() {
        let y = XExpander::new(curve, degree)?.w01()?;
        for (m, c) in y.iter().enumerate().skip(1) {
            let got = lhs_num.coeff(&[m as u32])?;
            if got != *c {
                witness = json!({"curve_equation_mismatch": m, "lhs": rational_text(&got), "y": rational_text(c)});
                break;
            }
        }
    }
    Ok(CheckReport {
        name: match variant {
            CutJoinVariant::Full => "cut_and_join".into(),
            v => format!("cut_and_join_mutant_{v:?}"),
        },
        parameters: json!({
            "knot": knot,
            "A": rational_text(&a_val),
            "g": g, "n": n, "degree": degree,
            "diagonal_denominator": resid.den.iter().map(|((i, j), e)| json!([i, j, e])).collect::<Vec<_>>(),
        }),
        status: status(witness.is_null()),
        witness,
    })
}
