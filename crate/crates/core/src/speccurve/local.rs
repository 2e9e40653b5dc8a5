//! Local data at a branch point: expansions in `t = z − a`.

use crate::error::{Error, Result};
use crate::exactnum::{rat, rint, QuadExt, Rational, Ring, Series};

use super::CurveData;

/// Deck transformation near a branch point, `σ(a + t) = a + sigma(t)`.
#[derive(Clone, Debug)]
pub struct DeckSeries {
    pub at: QuadExt,
    /// `σ(a + t) − a = −t + O(t²)`.
    pub sigma: Series<QuadExt>,
}

/// Everything the recursion needs near one branch point.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub deck: DeckSeries,
    /// Number of valid `t`-coefficients of `sigma`.
    pub order: i64,
    /// `x'(a + t)` with `x = log X`.
    pub xp: Series<QuadExt>,
    /// `x(a + t) − x(a)`.
    pub x0: Series<QuadExt>,
    /// `σ'(a + t)`.
    pub dsigma: Series<QuadExt>,
    /// `y(σ(a + t)) − y(a + t)`.
    pub delta_y: Series<QuadExt>,
}

fn q(r: Rational) -> QuadExt {
    QuadExt::rational(r)
}

fn linear(c0: QuadExt, c1: QuadExt) -> Series<QuadExt> {
    Series::exact(0, vec![c0, c1])
}

impl CurveData {
    /// `z(1 − Az)(1 − z/A)` at `z = a + t`.
    fn dlogx_denominator_at(&self, a: &QuadExt) -> Series<QuadExt> {
        let big_a = q(self.a.clone());
        let inv_a = q(self.a.recip());
        let one = QuadExt::one();
        let f1 = linear(a.clone(), one.clone());
        let f2 = linear(one.sub(&big_a.mul(a)), big_a.neg());
        let f3 = linear(one.sub(&inv_a.mul(a)), inv_a.neg());
        f1.mul(&f2).mul(&f3)
    }

    /// `x'(a + t)` valid below `t^valid`.
    pub fn dlogx_at(&self, a: &QuadExt, valid: i64) -> Result<Series<QuadExt>> {
        let c = q(self.c.clone());
        // q(a + t) = q(a) + (2a − c)t + t²
        let qa = a.mul(a).sub(&c.mul(a)).add(&QuadExt::one());
        let num = Series::exact(0, vec![qa, a.scale(&rint(2)).sub(&c), QuadExt::one()]);
        let den = self.dlogx_denominator_at(a).truncate(valid).inverse()?;
        Ok(num.mul(&den).truncate(valid))
    }

    /// `y'(a + t) = (A − A⁻¹)/((1 − Az)(1 − z/A))` valid below `t^valid`.
    pub fn dy_at(&self, a: &QuadExt, valid: i64) -> Result<Series<QuadExt>> {
        let big_a = q(self.a.clone());
        let inv_a = q(self.a.recip());
        let one = QuadExt::one();
        let f2 = linear(one.sub(&big_a.mul(a)), big_a.neg());
        let f3 = linear(one.sub(&inv_a.mul(a)), inv_a.neg());
        let den = f2.mul(&f3).truncate(valid).inverse()?;
        Ok(den.mul_scalar(&big_a.sub(&inv_a)))
    }

    /// Deck transformation at `a`, valid below `t^order`.
    pub fn deck_transform(&self, a: &QuadExt, order: i64) -> Result<DeckSeries> {
        Ok(self.local_data(a, order)?.deck)
    }

    /// Local expansions at the branch point `a` with `order` valid
    /// coefficients of `σ`.
    pub fn local_data(&self, a: &QuadExt, order: i64) -> Result<LocalData> {
        if order < 2 {
            return Err(Error::OrderTooLow {
                what: "local expansion".into(),
                needed: 2,
            });
        }
        let xp = self.dlogx_at(a, order + 2)?;
        if !xp.coeff(0)?.is_zero() {
            return Err(Error::Precondition("not a critical point of X".into()));
        }
        let x0 = xp.integral()?;
        let h0 = x0.coeff(2)?;
        if h0.is_zero() {
            return Err(Error::DegenerateCurve(
                "critical point of X is not simple".into(),
            ));
        }
        let h0inv = h0.inv().ok_or(Error::NotInvertible)?;
        // φ = t·(x0/(h0 t²))^{1/2} = t + O(t²)
        let h = x0.shift(-2).mul_scalar(&h0inv);
        let phi = h.pow(&rat(1, 2))?.shift(1);
        let phi_inv = phi.reversion()?;
        let sigma = phi_inv.compose(&phi.neg())?.truncate(order);
        let dsigma = sigma.derivative();
        let big_y = self.dy_at(a, order + 1)?.integral()?;
        let delta_y = big_y.compose(&sigma)?.sub(&big_y).truncate(order);
        Ok(LocalData {
            deck: DeckSeries {
                at: a.clone(),
                sigma,
            },
            order,
            xp: xp.truncate(order),
            x0: x0.truncate(order + 1),
            dsigma,
            delta_y,
        })
    }
}
