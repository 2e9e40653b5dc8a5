//! Connected correlators of the extended Ooguri–Vafa partition function
//! `Z = Σ_λ s_λ(p*) e^{uκ_λ} s_λ(p̃)`, `u = (P/Q)ħ`, by character sums.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactnum::{rational_text, rint, LaurentPolyA, Rational, Ring, Series};
use crate::homfly::{s_star_frobenius_with, KnotParams};
use crate::partitions::{kappa, mn_character, partitions_of, Partition};

/// Scalar type of correlator coefficients: symbolic in `A` or with `A` fixed.
pub trait Coefficient: Ring {
    type Param: Clone + Send + Sync;
    /// `A^m − A^{−m}`.
    fn a_diff(param: &Self::Param, m: i64) -> Self;
    fn to_json(&self) -> Value;
    /// Multiplies by `A^e`; returns `None` if that leaves the coefficient type.
    fn times_a_power(&self, param: &Self::Param, e: &Rational) -> Option<Self>;
}

impl Coefficient for LaurentPolyA {
    type Param = ();
    fn a_diff(_: &(), m: i64) -> Self {
        LaurentPolyA::a_minus_ainv(m)
    }
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, c) in self.terms() {
            m.insert(k.to_string(), Value::String(rational_text(c)));
        }
        Value::Object(m)
    }
    fn times_a_power(&self, _: &(), e: &Rational) -> Option<Self> {
        if !e.is_integer() {
            return None;
        }
        Some(self.shift(e.to_integer().try_into().ok()?))
    }
}

impl Coefficient for Rational {
    type Param = Rational;
    fn a_diff(a: &Rational, m: i64) -> Self {
        let p = num_traits::pow(a.clone(), m as usize);
        &p - p.recip()
    }
    fn to_json(&self) -> Value {
        Value::String(rational_text(self))
    }
    fn times_a_power(&self, a: &Rational, e: &Rational) -> Option<Self> {
        if !e.is_integer() {
            return None;
        }
        let k: i64 = e.to_integer().try_into().ok()?;
        let p = if k >= 0 {
            num_traits::pow(a.clone(), k as usize)
        } else {
            num_traits::pow(a.recip(), k.unsigned_abs() as usize)
        };
        Some(self * p)
    }
}

/// Sorted `μ` and the order a moment was computed to.
type MomentKey = (Vec<u32>, i64);

/// `(validity, [(λ, e^{uκ_λ} s_λ(p*))])` for one weight.
type WeightTerms<R> = Arc<(i64, Vec<(Partition, Series<R>)>)>;

/// Character-sum engine with memoized weight sums and moments.
pub struct Correlators<R: Coefficient> {
    knot: KnotParams,
    param: R::Param,
    weights: Mutex<HashMap<u32, WeightTerms<R>>>,
    moments: Mutex<HashMap<MomentKey, Series<R>>>,
}

impl<R: Coefficient> Correlators<R> {
    pub fn new(knot: KnotParams, param: R::Param) -> Self {
        Correlators {
            knot,
            param,
            weights: Mutex::new(HashMap::new()),
            moments: Mutex::new(HashMap::new()),
        }
    }

    pub fn knot(&self) -> KnotParams {
        self.knot
    }

    pub fn param(&self) -> &R::Param {
        &self.param
    }

    /// `e^{uκ_λ} s_λ(p*)` for all `λ ⊢ w`, valid through `ħ^order`.
    fn weight_terms(&self, w: u32, order: i64) -> Result<WeightTerms<R>> {
        if let Some(t) = self.weights.lock().unwrap().get(&w) {
            if t.0 >= order {
                return Ok(t.clone());
            }
        }
        let param = self.param.clone();
        let diff = move |m: i64| R::a_diff(&param, m);
        let pq = self.knot.p_over_q();
        // e^{uκ} needs to be known up to ħ^{order + w} since s_λ(p*) starts at ħ^{-w}
        let span = order + w as i64 + 1;
        let terms: Vec<(Partition, Series<R>)> = partitions_of(w)
            .into_par_iter()
            .map(|lam| {
                let s = s_star_frobenius_with(&lam, order + w as i64, &diff)?;
                let k = rint(kappa(&lam)) * &pq;
                let e = Series::<Rational>::truncated(1, vec![k], span.max(1))
                    .exp()?
                    .map_coeffs(R::from_rational);
                Ok((lam, s.mul(&e).truncate(order + 1)))
            })
            .collect::<Result<_>>()?;
        let t = Arc::new((order, terms));
        self.weights.lock().unwrap().insert(w, t.clone());
        Ok(t)
    }

    /// `F_μ = Σ_{λ⊢|μ|} e^{uκ_λ} s_λ(p*) χ^λ_μ / Π μ_i`, valid through `ħ^order`.
    pub fn disconnected_moment(&self, mu: &[u32], order: i64) -> Result<Series<R>> {
        let lam_mu = Partition::new(mu.to_vec())?;
        let w = lam_mu.size();
        if w == 0 {
            return Err(Error::Precondition("moment of the empty partition".into()));
        }
        if order < -(w as i64) {
            return Err(Error::OrderTooLow {
                what: format!("moment {lam_mu}"),
                needed: -(w as i64),
            });
        }
        let key = (lam_mu.parts().to_vec(), order);
        if let Some(m) = self.moments.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let terms = self.weight_terms(w, order)?;
        let prod: i64 = mu.iter().map(|&m| m as i64).product();
        let mut acc = Series::zero_to(order + 1);
        for (lam, s) in &terms.1 {
            let chi = mn_character(lam, &lam_mu)?;
            if chi != 0 {
                acc = acc.add(&s.scale(&Rational::new(chi.into(), prod.into())));
            }
        }
        let acc = acc.truncate(order + 1);
        self.moments.lock().unwrap().insert(key, acc.clone());
        Ok(acc)
    }

    /// Connected correlator by inclusion–exclusion over set partitions of the legs.
    pub fn connected_cumulant(&self, mu: &[u32], order: i64) -> Result<Series<R>> {
        let n = mu.len();
        if n == 0 {
            return Err(Error::Precondition(
                "cumulant needs at least one leg".into(),
            ));
        }
        let total: i64 = mu.iter().map(|&m| m as i64).sum();
        let inner = order + total;
        let mut acc = Series::zero_to(order + 1);
        for blocks in set_partitions(n) {
            let k = blocks.len() as i64;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let weight = rint(sign) * crate::exactnum::factorial((k - 1) as u64);
            let mut term = Series::constant(R::one());
            for b in &blocks {
                let sub: Vec<u32> = b.iter().map(|&i| mu[i]).collect();
                term = term.mul(&self.disconnected_moment(&sub, inner)?);
            }
            acc = acc.add(&term.scale(&weight));
        }
        Ok(acc.truncate(order + 1))
    }

    /// `C̃^{(g)}_μ = [ħ^{2g−2+n}]` of the connected correlator.
    pub fn cg_coeff(&self, g: u32, mu: &[u32]) -> Result<R> {
        let k = 2 * g as i64 - 2 + mu.len() as i64;
        if k < -1 {
            return Err(Error::Precondition("2g − 2 + n must be at least −1".into()));
        }
        self.connected_cumulant(mu, k)?.coeff(k)
    }

    /// All coefficients of `H_{g,n}` with `Σμ_i ≤ D`, keyed by sorted `μ`.
    pub fn hgn_poly(&self, g: u32, n: usize, degree: u32) -> Result<HgnTable<R>> {
        if (degree as usize) < n {
            return Err(Error::Precondition(format!(
                "degree {degree} below n = {n}"
            )));
        }
        let keys: Vec<Partition> = (n as u32..=degree)
            .flat_map(partitions_of)
            .filter(|p| p.len() == n)
            .collect();
        let vals: Vec<R> = keys
            .par_iter()
            .map(|mu| self.cg_coeff(g, mu.parts()))
            .collect::<Result<_>>()?;
        Ok(HgnTable {
            g,
            n,
            degree,
            entries: keys.into_iter().zip(vals).collect(),
        })
    }
}

/// Set partitions of `{0..n-1}` as lists of blocks, in canonical order.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            rec(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        rec(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Coefficients `C̃^{(g)}_μ` of `H_{g,n} = Σ C̃_μ Π X_i^{μ_i}` for sorted `μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HgnTable<R> {
    pub g: u32,
    pub n: usize,
    pub degree: u32,
    pub entries: BTreeMap<Partition, R>,
}

impl<R: Coefficient> HgnTable<R> {
    /// Coefficient for an arbitrary ordering of `μ`.
    pub fn get(&self, mu: &[u32]) -> Option<&R> {
        self.entries.get(&Partition::new(mu.to_vec()).ok()?)
    }

    /// Rows in the p̃ normalization.
    pub fn to_json_rows(&self) -> Vec<Value> {
        self.entries
            .iter()
            .map(|(mu, c)| {
                json!({
                    "g": self.g,
                    "mu": mu.parts(),
                    "normalization": "p_tilde",
                    "coeff": c.to_json(),
                })
            })
            .collect()
    }

    /// Rows in the p̄ normalization: each leg contributes `Q A^{μ_i P/Q}`.
    /// When the total power of `A` is fractional it is reported separately
    /// as `A_power` and left out of `coeff`.
    pub fn to_json_rows_pbar(&self, knot: KnotParams, param: &R::Param) -> Vec<Value> {
        self.entries
            .iter()
            .map(|(mu, c)| {
                let e = rint(mu.size() as i64) * knot.p_over_q();
                let qn = num_traits::pow(rint(knot.q()), mu.len());
                let c = c.scale(&qn);
                let (coeff, rest) = match c.times_a_power(param, &e) {
                    Some(v) => (v, rint(0)),
                    None => (c, e),
                };
                json!({
                    "g": self.g,
                    "mu": mu.parts(),
                    "normalization": "p_bar",
                    "coeff": coeff.to_json(),
                    "A_power": rational_text(&rest),
                })
            })
            .collect()
    }
}
