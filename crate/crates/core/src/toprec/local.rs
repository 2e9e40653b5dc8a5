//! Local expansions at one branch point `b`, in `t = z − b`.

use crate::error::{Error, Result};
use crate::exactnum::{rat, QuadExt, Rational, Ring, Series};
use crate::speccurve::{CurveData, LocalData};

use super::{LocalTensor, OmegaTensor, Slot};

pub(crate) struct LocalCtx {
    pub branch: u8,
    pub data: LocalData,
    /// `(b − a + t)^{−j}`, indexed by `[a][j]`.
    at_z: [Vec<Series<QuadExt>>; 2],
    /// `(b − a + σ(t))^{−j}·σ'(t)`.
    at_sigma: [Vec<Series<QuadExt>>; 2],
    /// `½(σ^k − t^k)/(Δy·x')`, indexed by `k`.
    kernel: Vec<Series<QuadExt>>,
    /// `t^m` and `σ^m·σ'`.
    t_pow: Vec<Series<QuadExt>>,
    sigma_pow: Vec<Series<QuadExt>>,
    /// `y(b + t) − y(b)` and `y(σ(b + t)) − y(b)`.
    pub y_t: Series<QuadExt>,
    pub y_sigma: Series<QuadExt>,
}

fn powers(base: &Series<QuadExt>, count: usize) -> Vec<Series<QuadExt>> {
    let mut out = Vec::with_capacity(count);
    let mut p = Series::one();
    for _ in 0..count {
        out.push(p.clone());
        p = p.mul(base);
    }
    out
}

impl LocalCtx {
    /// `shift = (λ, μ)` adds the deck-invariant `λ·x + μ·x²` to `y`.
    pub fn new(
        curve: &CurveData,
        branch: u8,
        order: i64,
        shift: Option<&(Rational, Rational)>,
    ) -> Result<Self> {
        let pts = curve.branch_points();
        let b = &pts[branch as usize];
        let mut data = curve.local_data(b, order)?;
        let mut y_t = curve.dy_at(b, order + 1)?.integral()?.truncate(order);
        if let Some((lambda, mu)) = shift {
            let x0 = data.x0.truncate(order);
            y_t = y_t.add(&x0.scale(lambda)).add(&x0.mul(&x0).scale(mu));
            let s = &data.deck.sigma;
            let x0 = &data.x0;
            let x0sq = x0.mul(x0);
            let d1 = x0.compose(s)?.sub(x0);
            let d2 = x0sq.compose(s)?.sub(&x0sq);
            let corr = d1.scale(lambda).add(&d2.scale(mu));
            data.delta_y = data.delta_y.add(&corr).truncate(order);
        }
        let sigma = data.deck.sigma.clone();
        let y_sigma = y_t.compose(&sigma)?;
        let dsigma = data.dsigma.clone();
        let t = Series::monomial(QuadExt::one(), 1);
        let count = order as usize + 2;
        let mut at_z: [Vec<Series<QuadExt>>; 2] = [Vec::new(), Vec::new()];
        let mut at_sigma: [Vec<Series<QuadExt>>; 2] = [Vec::new(), Vec::new()];
        for a in 0..2u8 {
            let shift_a = b.sub(&pts[a as usize]);
            let (base_z, base_s) = if a == branch {
                (t.clone(), sigma.clone())
            } else {
                let c = Series::constant(shift_a);
                (c.add(&t).truncate(order), c.add(&sigma))
            };
            let inv_z = base_z.inverse()?;
            let inv_s = base_s.inverse()?;
            at_z[a as usize] = powers(&inv_z, count);
            at_sigma[a as usize] = powers(&inv_s, count)
                .into_iter()
                .map(|p| p.mul(&dsigma))
                .collect();
        }
        let denom = data.delta_y.mul(&data.xp).inverse()?;
        let half = rat(1, 2);
        let tp = powers(&t, count);
        let sp = powers(&sigma, count);
        let kernel = (0..count)
            .map(|k| sp[k].sub(&tp[k]).mul(&denom).scale(&half))
            .collect();
        let sigma_pow = sp.iter().map(|p| p.mul(&dsigma)).collect();
        Ok(LocalCtx {
            branch,
            data,
            at_z,
            at_sigma,
            kernel,
            t_pow: tp,
            sigma_pow,
            y_t,
            y_sigma,
        })
    }

    fn cached(v: &[Series<QuadExt>], j: u32) -> Result<&Series<QuadExt>> {
        v.get(j as usize).ok_or(Error::OrderTooLow {
            what: "local expansion".into(),
            needed: j as i64,
        })
    }

    pub fn basis_at_z(&self, s: Slot) -> Result<&Series<QuadExt>> {
        Self::cached(&self.at_z[s.branch as usize], s.order)
    }

    pub fn basis_at_sigma(&self, s: Slot) -> Result<&Series<QuadExt>> {
        Self::cached(&self.at_sigma[s.branch as usize], s.order)
    }

    pub fn kernel(&self, k: u32) -> Result<&Series<QuadExt>> {
        Self::cached(&self.kernel, k)
    }

    /// `ω_{0,2}(b + t, w)` as `Σ_m (m+1) t^m dw/(w − b)^{m+2}` (at `σ(t)` if
    /// `at_sigma`), for `m ≤ mmax`.
    pub fn b_spectator(&self, at_sigma: bool, mmax: u32) -> Result<LocalTensor> {
        let mut out = LocalTensor::new();
        for m in 0..=mmax {
            let src = if at_sigma {
                &self.sigma_pow
            } else {
                &self.t_pow
            };
            let s = Self::cached(src, m)?.scale(&Rational::from_integer((m + 1).into()));
            out.insert(
                vec![Slot {
                    branch: self.branch,
                    order: m + 2,
                }],
                s,
            );
        }
        Ok(out)
    }

    /// `ω_{0,2}(b + t, σ(b + t))` divided by `dt²`.
    pub fn b_diagonal(&self) -> Result<Series<QuadExt>> {
        let t = Series::monomial(QuadExt::one(), 1);
        let diff = t.sub(&self.data.deck.sigma);
        let inv = diff.mul(&diff).inverse()?;
        Ok(inv.mul(&self.data.dsigma))
    }

    /// Evaluates slot 0 at `z` and, if `second_at_sigma`, slot 1 at `σ(z)`;
    /// remaining slots stay as spectator indices. With `first_at_sigma`,
    /// slot 0 goes to `σ(z)` instead.
    pub fn evaluate(
        &self,
        w: &OmegaTensor,
        first_at_sigma: bool,
        second_at_sigma: bool,
    ) -> Result<LocalTensor> {
        let mut out = LocalTensor::new();
        for (idx, c) in w.entries() {
            let mut s = if first_at_sigma {
                self.basis_at_sigma(idx[0])?.clone()
            } else {
                self.basis_at_z(idx[0])?.clone()
            };
            let mut rest = 1;
            if second_at_sigma {
                s = s.mul(self.basis_at_sigma(idx[1])?);
                rest = 2;
            }
            let s = s.mul_scalar(c);
            add_into(&mut out, idx[rest..].to_vec(), s);
        }
        Ok(out)
    }
}

pub(crate) fn add_into(map: &mut LocalTensor, key: Vec<Slot>, s: Series<QuadExt>) {
    match map.get_mut(&key) {
        Some(v) => *v = v.add(&s),
        None => {
            map.insert(key, s);
        }
    }
}
