//! Topological recursion on the spectral curve, producing `ω_{g,n}` exactly.
//!
//! A stable `ω_{g,n}` has poles only at the two branch points `a₀, a₁` with
//! zero residues, so it is stored as a tensor over the basis
//! `dz/(z − a_b)^j`, `j ≥ 2`, in each variable, with coefficients in the
//! quadratic field. The recursion evaluates the bracket as a Laurent series
//! in `t = z − a_b` whose coefficients are indexed by spectator slots, and
//! takes the `t^{−1}` coefficient against the kernel.

mod local;
mod rational;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{rational_text, MultiPoly, MultiRational, QuadExt, Rational, Ring, Series};
use crate::speccurve::CurveData;

use local::add_into;
pub(crate) use local::LocalCtx;

/// Basis differential `dz/(z − a_branch)^order`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Slot {
    pub branch: u8,
    pub order: u32,
}

/// Spectator slot indices → local series in `t`.
pub type LocalTensor = BTreeMap<Vec<Slot>, Series<QuadExt>>;

/// Coefficients of `Π_i dz_i/(z_i − a_{b_i})^{j_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaTensor {
    n: usize,
    entries: BTreeMap<Vec<Slot>, QuadExt>,
}

impl OmegaTensor {
    pub fn new(n: usize) -> Self {
        OmegaTensor {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, key: Vec<Slot>, c: QuadExt) {
        debug_assert_eq!(key.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&key) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.entries.remove(&key);
                }
            }
            None => {
                self.entries.insert(key, c);
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<Slot>, &QuadExt)> {
        self.entries.iter()
    }

    pub fn get(&self, key: &[Slot]) -> QuadExt {
        self.entries.get(key).cloned().unwrap_or_else(QuadExt::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest pole order in any slot.
    pub fn max_order(&self) -> u32 {
        self.entries
            .keys()
            .flatten()
            .map(|s| s.order)
            .max()
            .unwrap_or(0)
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = OmegaTensor::new(self.n);
        for (k, c) in &self.entries {
            let mut k2 = k.clone();
            for (i, s) in k.iter().enumerate() {
                k2[perm[i]] = *s;
            }
            out.add(k2, c.clone());
        }
        out
    }

    /// Galois conjugate: conjugates coefficients and swaps branch labels.
    pub fn conjugate(&self) -> Self {
        let mut out = OmegaTensor::new(self.n);
        for (k, c) in &self.entries {
            let k2 = k
                .iter()
                .map(|s| Slot {
                    branch: 1 - s.branch,
                    order: s.order,
                })
                .collect();
            out.add(k2, c.conj());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.n).collect();
            perm.swap(i, i + 1);
            self.permute(&perm) == *self
        }) && (self.n < 3 || {
            let perm: Vec<usize> = (0..self.n).map(|i| (i + 1) % self.n).collect();
            self.permute(&perm) == *self
        })
    }
}

/// Pole order of `ω` in one variable at one branch point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleEntry {
    pub variable: usize,
    pub branch: u8,
    pub order: u32,
}

#[derive(Clone, Debug)]
pub struct OmegaDifferential {
    pub g: u32,
    pub n: u32,
    /// Principal parts; empty for `(0, 2)`.
    pub tensor: OmegaTensor,
    /// `ω / Π dz_i` as a rational function.
    pub rational_form: MultiRational,
}

impl OmegaDifferential {
    pub fn pole_profile(&self) -> Vec<PoleEntry> {
        if self.g == 0 && self.n == 2 {
            return (0..2)
                .flat_map(|v| {
                    (0..2).map(move |b| PoleEntry {
                        variable: v,
                        branch: b,
                        order: 0,
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for v in 0..self.n as usize {
            for b in 0..2u8 {
                let order = self
                    .tensor
                    .entries()
                    .filter(|(k, _)| k[v].branch == b)
                    .map(|(k, _)| k[v].order)
                    .max()
                    .unwrap_or(0);
                out.push(PoleEntry {
                    variable: v,
                    branch: b,
                    order,
                });
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let parts: Vec<Value> = self
            .tensor
            .entries()
            .map(|(k, c)| {
                json!({
                    "slots": k.iter().map(|s| json!([s.branch, s.order])).collect::<Vec<_>>(),
                    "coeff": [rational_text(&c.a), rational_text(&c.b)],
                })
            })
            .collect();
        json!({
            "g": self.g,
            "n": self.n,
            "rational_form": rational::rational_json(&self.rational_form),
            "principal_parts": parts,
        })
    }
}

/// `ω_{0,1} = y dx` data: `dx/dz` as numerator and denominator coefficients,
/// plus the deck-invariant shift `(λ, μ)` added to `y`, if any.
#[derive(Clone, Debug)]
pub struct Omega01 {
    pub dlogx: (Vec<Rational>, Vec<Rational>),
    pub y_shift: Option<(Rational, Rational)>,
}

/// Memoized `ω_{g,n}` table for one curve at one local truncation order.
pub struct TopRec {
    curve: CurveData,
    order: i64,
    shift: Option<(Rational, Rational)>,
    locals: [Arc<LocalCtx>; 2],
    table: BTreeMap<(u32, u32), Arc<OmegaDifferential>>,
}

/// Default local truncation order for a target `(g, n)`.
pub fn default_order(g: u32, n: u32) -> i64 {
    6 * g as i64 + 2 * n as i64 + 6
}

fn stable(g: u32, n: u32) -> bool {
    2 * g as i64 - 2 + n as i64 > 0
}

impl TopRec {
    pub fn new(curve: &CurveData, order: i64) -> Result<Self> {
        Self::build(curve, order, None)
    }

    /// Same recursion with `y` replaced by `y + λx + μx²`, a deck-invariant
    /// change of `ω_{0,1}`.
    pub fn with_y_shift(
        curve: &CurveData,
        order: i64,
        lambda: Rational,
        mu: Rational,
    ) -> Result<Self> {
        Self::build(curve, order, Some((lambda, mu)))
    }

    fn build(curve: &CurveData, order: i64, shift: Option<(Rational, Rational)>) -> Result<Self> {
        let (l0, l1) = rayon::join(
            || LocalCtx::new(curve, 0, order, shift.as_ref()),
            || LocalCtx::new(curve, 1, order, shift.as_ref()),
        );
        Ok(TopRec {
            curve: curve.clone(),
            order,
            shift,
            locals: [Arc::new(l0?), Arc::new(l1?)],
            table: BTreeMap::new(),
        })
    }

    pub fn curve(&self) -> &CurveData {
        &self.curve
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub(crate) fn local(&self, branch: u8) -> &LocalCtx {
        &self.locals[branch as usize]
    }

    pub(crate) fn local_arc(&self, branch: u8) -> Arc<LocalCtx> {
        self.locals[branch as usize].clone()
    }

    pub fn omega_base(&self) -> (Omega01, OmegaDifferential) {
        let c = self.curve.c().clone();
        let num = MultiPoly::constant(2, Rational::from_integer(1.into()));
        let b =
            MultiRational::new(num, c, vec![0, 0], [((0, 1), 2)]).expect("two distinct variables");
        (
            Omega01 {
                dlogx: self.curve.dlogx_rational(),
                y_shift: self.shift.clone(),
            },
            OmegaDifferential {
                g: 0,
                n: 2,
                tensor: OmegaTensor::new(2),
                rational_form: b,
            },
        )
    }

    /// Cached `ω_{g,n}` if already computed.
    pub fn get(&self, g: u32, n: u32) -> Option<Arc<OmegaDifferential>> {
        self.table.get(&(g, n)).cloned()
    }

    /// `ω_{g,n}` for `2g − 2 + n > 0`, computing lower terms as needed.
    pub fn omega(&mut self, g: u32, n: u32) -> Result<Arc<OmegaDifferential>> {
        if !stable(g, n) || n == 0 {
            return Err(Error::Precondition(format!(
                "ω_{{{g},{n}}} is not a stable differential"
            )));
        }
        if let Some(w) = self.table.get(&(g, n)) {
            return Ok(w.clone());
        }
        // dependencies have smaller 2g − 2 + n
        if g >= 1 && stable(g - 1, n + 1) {
            self.omega(g - 1, n + 1)?;
        }
        for g1 in 0..=g {
            for k in 0..n {
                if stable(g1, k + 1) && (g1, k) != (g, n - 1) {
                    self.omega(g1, k + 1)?;
                }
            }
        }
        let w = Arc::new(self.compute(g, n)?);
        self.table.insert((g, n), w.clone());
        Ok(w)
    }

    fn compute(&self, g: u32, n: u32) -> Result<OmegaDifferential> {
        let (c0, c1) = rayon::join(
            || self.branch_contribution(0, g, n),
            || self.branch_contribution(1, g, n),
        );
        let (c0, c1) = (c0?, c1?);
        let mut tensor = c0.clone();
        for (k, c) in c1.entries() {
            tensor.add(k.clone(), c.clone());
        }
        if self.curve.is_conjugate_pair() && c0.conjugate() != c1 {
            return Err(Error::Consistency(format!(
                "branch contributions to ω_{{{g},{n}}} are not Galois conjugate"
            )));
        }
        if !tensor.is_symmetric() {
            return Err(Error::Consistency(format!(
                "ω_{{{g},{n}}} is not symmetric"
            )));
        }
        let bound = 6 * g + 2 * n - 4;
        if tensor.max_order() > bound {
            return Err(Error::Consistency(format!(
                "ω_{{{g},{n}}} has a pole of order {} above {bound}",
                tensor.max_order()
            )));
        }
        let rational_form = rational::rational_form(&tensor, &self.curve)?;
        Ok(OmegaDifferential {
            g,
            n,
            tensor,
            rational_form,
        })
    }

    fn stored(&self, g: u32, n: u32) -> Result<&OmegaDifferential> {
        self.table
            .get(&(g, n))
            .map(|w| w.as_ref())
            .ok_or_else(|| Error::Precondition(format!("ω_{{{g},{n}}} not computed")))
    }

    /// Largest pole order among the stored `ω` used by `(g, n)`.
    fn bracket_pole_bound(&self, g: u32, n: u32) -> u32 {
        self.table
            .iter()
            .filter(|((g2, n2), _)| 2 * g2 + n2 < 2 * g + n)
            .map(|(_, w)| w.tensor.max_order())
            .max()
            .unwrap_or(0)
    }

    /// `ω_{g,n}(z, ·)` at `z` (or `σ(z)`) with remaining slots spectators.
    fn factor(
        &self,
        ctx: &LocalCtx,
        g: u32,
        n: u32,
        at_sigma: bool,
        mmax: u32,
    ) -> Result<LocalTensor> {
        if g == 0 && n == 2 {
            return ctx.b_spectator(at_sigma, mmax);
        }
        ctx.evaluate(&self.stored(g, n)?.tensor, at_sigma, false)
    }

    /// The bracket of the recursion at one branch point, keyed by the
    /// spectator slots of `z_2..z_n`.
    pub(crate) fn bracket(&self, ctx: &LocalCtx, g: u32, n: u32, mmax: u32) -> Result<LocalTensor> {
        let spect = n as usize - 1;
        let mut out = LocalTensor::new();
        if g >= 1 {
            if g == 1 && n == 1 {
                out.insert(Vec::new(), ctx.b_diagonal()?);
            } else if stable(g - 1, n + 1) {
                let t = ctx.evaluate(&self.stored(g - 1, n + 1)?.tensor, false, true)?;
                for (k, s) in t {
                    add_into(&mut out, k, s);
                }
            }
        }
        for mask in 0u32..(1 << spect) {
            let i1: Vec<usize> = (0..spect).filter(|i| mask >> i & 1 == 1).collect();
            let i2: Vec<usize> = (0..spect).filter(|i| mask >> i & 1 == 0).collect();
            for g1 in 0..=g {
                let g2 = g - g1;
                if (g1, i1.len()) == (0, 0) || (g2, i2.len()) == (0, 0) {
                    continue;
                }
                let f1 = self.factor(ctx, g1, i1.len() as u32 + 1, false, mmax)?;
                let f2 = self.factor(ctx, g2, i2.len() as u32 + 1, true, mmax)?;
                for (k1, s1) in &f1 {
                    for (k2, s2) in &f2 {
                        let mut key = vec![
                            Slot {
                                branch: 0,
                                order: 0
                            };
                            spect
                        ];
                        for (p, s) in i1.iter().zip(k1) {
                            key[*p] = *s;
                        }
                        for (p, s) in i2.iter().zip(k2) {
                            key[*p] = *s;
                        }
                        add_into(&mut out, key, s1.mul(s2));
                    }
                }
            }
        }
        Ok(out)
    }

    fn branch_contribution(&self, branch: u8, g: u32, n: u32) -> Result<OmegaTensor> {
        let ctx = self.local(branch);
        let pole = self.bracket_pole_bound(g, n).max(2);
        let mmax = pole + 2;
        if (mmax as i64) + 2 >= self.order {
            return Err(self.too_low(mmax as i64 + 3));
        }
        let bracket = self.bracket(ctx, g, n, mmax)?;
        let mut out = OmegaTensor::new(n as usize);
        for (key, f) in &bracket {
            if f.is_known_zero() && f.is_exact() {
                continue;
            }
            // K_k ~ t^{k−2}, so only k ≤ 1 − ord(f) contribute
            let kmax = 1 - f.min_order().min(0);
            for k in 1..=kmax as u32 {
                let r = ctx
                    .kernel(k)?
                    .mul(f)
                    .coeff(-1)
                    .map_err(|e| self.overflow(e))?;
                let mut full = vec![Slot {
                    branch,
                    order: k + 1,
                }];
                full.extend_from_slice(key);
                out.add(full, r);
            }
        }
        Ok(out)
    }

    fn too_low(&self, needed: i64) -> Error {
        Error::OrderTooLow {
            what: "local truncation order".into(),
            needed,
        }
    }

    fn overflow(&self, e: Error) -> Error {
        match e {
            Error::Truncated { requested, valid } => {
                self.too_low(self.order + requested - valid + 1)
            }
            e => e,
        }
    }
}
