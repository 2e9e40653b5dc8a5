//! Comparison with the BEM parametrization in the shared coordinate
//! `s = 1/z`, so that `A^{P/Q+1}U = As` and `A^{P/Q−1}U = s/A`.

use crate::error::{Error, Result};
use crate::exactnum::{rint, Rational, Series};

use super::CurveData;

/// `log_a·log A + log_s·log s + plain`, with series coefficients in `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries {
    pub log_a: Series<Rational>,
    pub log_s: Series<Rational>,
    pub plain: Series<Rational>,
}

impl LogSeries {
    fn new(log_a: Rational, log_s: Rational, plain: Series<Rational>) -> Self {
        LogSeries {
            log_a: Series::constant(log_a),
            log_s: Series::constant(log_s),
            plain,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        LogSeries {
            log_a: self.log_a.add(&o.log_a),
            log_s: self.log_s.add(&o.log_s),
            plain: self.plain.add(&o.plain),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        LogSeries {
            log_a: self.log_a.scale(r),
            log_s: self.log_s.scale(r),
            plain: self.plain.scale(r),
        }
    }

    pub fn mul_series(&self, f: &Series<Rational>) -> Self {
        LogSeries {
            log_a: self.log_a.mul(f),
            log_s: self.log_s.mul(f),
            plain: self.plain.mul(f),
        }
    }

    /// `d/ds`, using `d log s = ds/s`.
    pub fn derivative(&self) -> Self {
        LogSeries {
            log_a: self.log_a.derivative(),
            log_s: self.log_s.derivative(),
            plain: self.plain.derivative().add(&self.log_s.shift(-1)),
        }
    }

    pub fn truncate(&self, valid: i64) -> Self {
        LogSeries {
            log_a: self.log_a.truncate(valid),
            log_s: self.log_s.truncate(valid),
            plain: self.plain.truncate(valid),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BemMaps {
    pub gamma: i64,
    pub delta: i64,
    /// `Λ(U)·A^{P/Q}/s = ((1 − As)/(1 − s/A))^{P/Q}`.
    pub lambda_unit: Series<Rational>,
    /// `X^BEM·s^Q·A^{−P}`.
    pub x_bem_unit: Series<Rational>,
    pub log_x_aceh: LogSeries,
    pub log_x_bem: LogSeries,
    pub y_aceh: LogSeries,
    pub y_bem: LogSeries,
}

fn log_one_minus(c: &Rational, valid: i64) -> Series<Rational> {
    let mut coeffs = vec![rint(0)];
    let mut pw = rint(1);
    for m in 1..valid {
        pw = &pw * c;
        coeffs.push(-&pw / rint(m));
    }
    Series::truncated(0, coeffs, valid)
}

fn check(name: &str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Consistency(format!("BEM identity failed: {name}")))
    }
}

/// BEM data in the coordinate `s`, valid below `s^(order + 1)`, after
/// checking `X^ACEH = A^{P/Q}(X^BEM)^{1/Q}`, the relation
/// `y^ACEH = Q y^BEM + γ log X^BEM − log A²` and the `ω_{0,1}` rewrite.
pub fn bem_maps(curve: &CurveData, order: i64) -> Result<BemMaps> {
    let (gamma, delta) = curve.sl2_completion()?;
    let knot = curve.knot();
    let (qq, pp) = (rint(knot.q()), rint(knot.p()));
    let pq = knot.p_over_q();
    let a = curve.a();
    let valid = order + 1;
    let l1 = log_one_minus(a, valid);
    let l2 = log_one_minus(&a.recip(), valid);
    let l12 = l1.sub(&l2);
    let one = Series::one();
    let one_minus = |c: &Rational| one.sub(&Series::monomial(c.clone(), 1)).truncate(valid);
    let ratio = one_minus(a).mul(&one_minus(&a.recip()).inverse()?);
    let lambda_unit = ratio.pow(&pq)?;
    let x_bem_unit = ratio.inverse()?.pow(&pp)?;

    check(
        "X^ACEH = A^{P/Q} (X^BEM)^{1/Q}",
        lambda_unit.inverse()? == x_bem_unit.pow(&qq.recip())?,
    )?;

    let g = rint(gamma);
    let log_x_aceh = LogSeries::new(&pq * rint(2), rint(-1), l12.scale(&-&pq));
    let log_x_bem = LogSeries::new(pp.clone(), -&qq, l12.scale(&-&pp));
    let y_aceh = LogSeries::new(rint(-2), rint(0), l12.clone());
    let y_bem = LogSeries::new(-&g * &pq, g.clone(), l12.scale(&rint(delta)));

    let rhs = y_bem
        .scale(&qq)
        .add(&log_x_bem.scale(&g))
        .add(&LogSeries::new(rint(-2), rint(0), Series::zero()));
    check(
        "y^ACEH = Q y^BEM + γ log X^BEM − log A²",
        y_aceh.truncate(valid) == rhs.truncate(valid),
    )?;
    check(
        "log X^ACEH = (P/Q) log A + (1/Q) log X^BEM",
        log_x_aceh.truncate(valid)
            == log_x_bem
                .scale(&qq.recip())
                .add(&LogSeries::new(pq.clone(), rint(0), Series::zero()))
                .truncate(valid),
    )?;

    // ω_{0,1}: y^ACEH dlog X^ACEH = (y^BEM + (γ/Q) log X^BEM − (1/Q) log A²) dlog X^BEM
    let d_aceh = log_x_aceh.derivative();
    let d_bem = log_x_bem.derivative();
    if !d_aceh.log_a.is_known_zero() || !d_aceh.log_s.is_known_zero() {
        return Err(Error::Consistency("dlog X carries a logarithm".into()));
    }
    let lhs = y_aceh.mul_series(&d_aceh.plain);
    let corr =
        log_x_bem
            .scale(&(&g / &qq))
            .add(&LogSeries::new(-rint(2) / &qq, rint(0), Series::zero()));
    let rhs = y_bem.add(&corr).mul_series(&d_bem.plain);
    let v = lhs.plain.valid().min(rhs.plain.valid());
    check("ω_{0,1} rewrite", lhs.truncate(v) == rhs.truncate(v))?;

    Ok(BemMaps {
        gamma,
        delta,
        lambda_unit,
        x_bem_unit,
        log_x_aceh,
        log_x_bem,
        y_aceh,
        y_bem,
    })
}
