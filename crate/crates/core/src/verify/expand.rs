//! Expansion of `W_{g,n} = ω_{g,n}/Π d log X(z_i)` at `z = 0` in the
//! variables `X_i`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactnum::{MultiSeries, QuadExt, Rational, Ring, Series};
use crate::speccurve::{curve_series, CurveData};
use crate::toprec::{OmegaTensor, Slot};

/// Coefficients of `Π X_i^{μ_i}` keyed by the ordered tuple `μ`.
pub type XTable = BTreeMap<Vec<u32>, Rational>;

/// `z(X)` and `1/x'(z)` at `z = 0`, shared by all slots.
pub struct XExpander {
    curve: CurveData,
    degree: u32,
    z_of_x: Series<QuadExt>,
    inv_dlogx: Series<QuadExt>,
    cache: HashMap<Slot, Vec<QuadExt>>,
}

impl XExpander {
    /// Valid for total degree `≤ degree`.
    pub fn new(curve: &CurveData, degree: u32) -> Result<Self> {
        let valid = degree as i64 + 2;
        let (_, _, zx) = curve_series::<Rational>(curve.knot(), curve.a(), valid)?;
        let (num, den) = curve.dlogx_rational();
        let q = |v: Vec<Rational>| Series::exact(0, v.into_iter().map(QuadExt::rational).collect());
        let inv_dlogx = q(den)
            .mul(&q(num).truncate(valid).inverse()?)
            .truncate(valid);
        Ok(XExpander {
            curve: curve.clone(),
            degree,
            z_of_x: zx.map_coeffs(|c| QuadExt::rational(c.clone())),
            inv_dlogx,
            cache: HashMap::new(),
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn z_of_x(&self) -> &Series<QuadExt> {
        &self.z_of_x
    }

    /// `[X^k] (z − a)^{−j}/x'(z)` at `z = z(X)`, for `k = 0..=degree`.
    pub fn slot_series(&mut self, s: Slot) -> Result<&[QuadExt]> {
        if !self.cache.contains_key(&s) {
            let valid = self.degree as i64 + 2;
            let a = self.curve.branch_points()[s.branch as usize].clone();
            let base = Series::exact(0, vec![a.neg(), QuadExt::one()]).truncate(valid);
            let inv = base.inverse()?;
            let mut p = Series::one();
            for _ in 0..s.order {
                p = p.mul(&inv);
            }
            let f = p.mul(&self.inv_dlogx).compose(&self.z_of_x)?;
            let coeffs = (0..=self.degree as i64)
                .map(|k| f.coeff(k))
                .collect::<Result<Vec<_>>>()?;
            self.cache.insert(s, coeffs);
        }
        Ok(&self.cache[&s])
    }

    /// All coefficients of `W` with every `μ_i ≥ 1` and `Σ μ_i ≤ degree`.
    pub fn expand(&mut self, t: &OmegaTensor) -> Result<XTable> {
        let n = t.n();
        let d = self.degree;
        let mut state: BTreeMap<(Vec<u32>, Vec<Slot>), QuadExt> = t
            .entries()
            .map(|(k, c)| ((Vec::new(), k.clone()), c.clone()))
            .collect();
        for i in 0..n {
            let mut next: BTreeMap<(Vec<u32>, Vec<Slot>), QuadExt> = BTreeMap::new();
            for ((mu, rest), c) in state {
                let used: u32 = mu.iter().sum();
                // leave room for one unit per remaining variable
                let room = d as i64 - used as i64 - (n - i - 1) as i64;
                if room < 1 {
                    continue;
                }
                let ser = self.slot_series(rest[0])?.to_vec();
                for (k, sc) in ser.iter().enumerate().take(room as usize + 1).skip(1) {
                    if sc.is_zero() {
                        continue;
                    }
                    let mut m2 = mu.clone();
                    m2.push(k as u32);
                    let e = next
                        .entry((m2, rest[1..].to_vec()))
                        .or_insert_with(QuadExt::zero);
                    *e = e.add(&c.mul(sc));
                }
            }
            state = next;
        }
        let mut out = XTable::new();
        for ((mu, _), c) in state {
            if !c.is_rational() {
                return Err(Error::Consistency(format!(
                    "X-expansion coefficient at {mu:?} is not rational"
                )));
            }
            if !c.a.is_zero() {
                out.insert(mu, c.a);
            }
        }
        Ok(out)
    }

    /// `W_{0,1} = y(z(X))`, coefficients `0..=degree`.
    pub fn w01(&self) -> Result<Vec<Rational>> {
        let valid = self.degree as i64 + 1;
        let (y, _, zx) = curve_series::<Rational>(self.curve.knot(), self.curve.a(), valid)?;
        let f = y.compose(&zx)?;
        (0..valid).map(|k| f.coeff(k)).collect()
    }

    /// Regular part of `W_{0,2}`: the `X`-expansion of
    /// `X₁X₂ ∂₁∂₂ log((z₁ − z₂)/(X₁ − X₂))`, through total degree `degree`.
    pub fn w02_regular(&self) -> Result<XTable> {
        let h = self.h02_regular()?;
        let mut out = XTable::new();
        for (e, c) in h.terms() {
            if e[0] >= 1 && e[1] >= 1 {
                let w = c * Rational::from_integer((e[0] as i64 * e[1] as i64).into());
                out.insert(e.clone(), w);
            }
        }
        Ok(out)
    }

    /// `log((z(X₁) − z(X₂))/(X₁ − X₂))` as a series in `X₁, X₂`.
    pub fn h02_regular(&self) -> Result<MultiSeries<Rational>> {
        let valid = self.degree as i64 + 1;
        let mut quot = MultiSeries::zero(2, valid);
        for k in 1..=valid {
            let zk = self.z_of_x.coeff(k)?;
            if !zk.is_rational() {
                return Err(Error::Consistency(
                    "z(X) has irrational coefficients".into(),
                ));
            }
            for i in 0..k {
                quot.add_term(vec![i as u32, (k - 1 - i) as u32], zk.a.clone());
            }
        }
        quot.log()
    }
}
