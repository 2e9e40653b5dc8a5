//! The spectral curve `X(z) = z·((1 − Az)/(1 − A⁻¹z))^{P/Q}`,
//! `y(z) = log((1 − A⁻¹z)/(1 − Az))` at a fixed rational `A`.
//!
//! All local analysis uses `x = log X`, whose derivative
//! `x'(z) = q(z) / (z(1 − Az)(1 − A⁻¹z))` is rational with
//! `q(z) = z² − c z + 1`.

mod bem;
mod local;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{rat, rational_text, rint, QuadExt, Rational, Ring, Series};
use crate::homfly::KnotParams;
use crate::ovcorr::Coefficient;

pub use bem::{bem_maps, BemMaps, LogSeries};
pub use local::{DeckSeries, LocalData};

/// Annuli cut out by `|A|` and `|A⁻¹|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ring3 {
    R1,
    R2,
    R3,
}

#[derive(Clone, Debug)]
pub struct CurveData {
    knot: KnotParams,
    a: Rational,
    c: Rational,
    disc: Rational,
    /// `Some(d)` when `√d` is irrational; `None` when `q` splits over ℚ.
    field: Option<Arc<Rational>>,
    branch: [QuadExt; 2],
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n: BigInt = r.numer().sqrt();
    let d: BigInt = r.denom().sqrt();
    if &n * &n == *r.numer() && &d * &d == *r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Sign of `u + v√d` for `d > 0`.
fn sign_real(u: &Rational, v: &Rational, d: &Rational) -> i32 {
    let su = u.signum();
    let sv = v.signum();
    let zero = rint(0);
    let s = |x: &Rational| {
        if *x > zero {
            1
        } else if *x < zero {
            -1
        } else {
            0
        }
    };
    let (su, sv) = (s(&su), s(&sv));
    if sv == 0 {
        return su;
    }
    if su == 0 || su == sv {
        return sv;
    }
    // opposite signs: compare u² with d v²
    let lhs = u * u;
    let rhs = d * v * v;
    if lhs > rhs {
        su
    } else if lhs < rhs {
        sv
    } else {
        0
    }
}

impl CurveData {
    /// Validates the genericity conditions: `0 < |A| < 1`, simple roots of `q`
    /// avoiding `0, ±1, A, A⁻¹`, and branch points off the circles `|A|^{±1}`.
    pub fn new(knot: KnotParams, a: Rational) -> Result<Self> {
        if a == rint(0) {
            return Err(Error::DegenerateCurve("A must be nonzero".into()));
        }
        if a.abs() >= rint(1) {
            return Err(Error::DegenerateCurve(format!(
                "|A| must be below 1, got A = {}",
                rational_text(&a)
            )));
        }
        let pq = knot.p_over_q();
        let c = &a * (rint(1) + &pq) + a.recip() * (rint(1) - &pq);
        let disc = &c * &c - rint(4);
        if disc == rint(0) {
            return Err(Error::DegenerateCurve("q(z) has a double root".into()));
        }
        let q = |z: &Rational| z * z - &c * z + rint(1);
        for (name, z) in [
            ("1", rint(1)),
            ("-1", rint(-1)),
            ("A", a.clone()),
            ("1/A", a.recip()),
        ] {
            if q(&z) == rint(0) {
                return Err(Error::DegenerateCurve(format!(
                    "a branch point sits at z = {name}"
                )));
            }
        }
        let half = rat(1, 2);
        let (field, branch) = match rational_sqrt(&disc) {
            Some(r) => (
                None,
                [
                    QuadExt::rational((&c + &r) * &half),
                    QuadExt::rational((&c - &r) * &half),
                ],
            ),
            None => {
                let d = Arc::new(disc.clone());
                (
                    Some(d.clone()),
                    [
                        QuadExt::new(&c * &half, half.clone(), &d),
                        QuadExt::new(&c * &half, -&half, &d),
                    ],
                )
            }
        };
        let curve = CurveData {
            knot,
            a,
            c,
            disc,
            field,
            branch,
        };
        for b in &curve.branch {
            curve.ring_of(b)?;
        }
        Ok(curve)
    }

    pub fn knot(&self) -> KnotParams {
        self.knot
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Middle coefficient of `q(z) = z² − c z + 1`.
    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn disc(&self) -> &Rational {
        &self.disc
    }

    pub fn field(&self) -> Option<&Arc<Rational>> {
        self.field.as_ref()
    }

    /// True when the branch points are irrational and Galois conjugate.
    pub fn is_conjugate_pair(&self) -> bool {
        self.field.is_some()
    }

    /// The two zeros of `q`, `(c ± √disc)/2`.
    pub fn branch_points(&self) -> &[QuadExt; 2] {
        &self.branch
    }

    /// `q(z)` coefficients `[1, −c, 1]` (constant term first).
    pub fn q_poly(&self) -> [Rational; 3] {
        [rint(1), -&self.c, rint(1)]
    }

    /// `d log X/dz` as (numerator, denominator) coefficient lists, constant
    /// term first: `q(z) / (z(1 − Az)(1 − A⁻¹z))`.
    pub fn dlogx_rational(&self) -> (Vec<Rational>, Vec<Rational>) {
        let s = &self.a + self.a.recip();
        (self.q_poly().to_vec(), vec![rint(0), rint(1), -s, rint(1)])
    }

    /// Which of the three annuli contains `z`.
    pub fn ring_of(&self, z: &QuadExt) -> Result<Ring3> {
        let a2 = &self.a * &self.a;
        let inv2 = a2.recip();
        // compare |z|² with a fixed positive rational r
        let cmp = |r: &Rational| -> i32 {
            match z.disc() {
                Some(d) if !z.is_rational() && d.is_negative() => {
                    let n = z.norm();
                    if n > *r {
                        1
                    } else if n < *r {
                        -1
                    } else {
                        0
                    }
                }
                Some(d) if !z.is_rational() => {
                    // z real: z² − r = (a² + d b² − r) + 2ab√d
                    let u = &z.a * &z.a + d * &z.b * &z.b - r;
                    let v = rint(2) * &z.a * &z.b;
                    sign_real(&u, &v, d)
                }
                _ => {
                    let n = &z.a * &z.a;
                    if n > *r {
                        1
                    } else if n < *r {
                        -1
                    } else {
                        0
                    }
                }
            }
        };
        if z.is_zero() {
            return Err(Error::RingBoundary("z = 0 lies in no ring".into()));
        }
        let lo = cmp(&a2);
        let hi = cmp(&inv2);
        if lo == 0 || hi == 0 {
            return Err(Error::RingBoundary(format!("|{}| equals |A|^±1", z.text())));
        }
        Ok(if lo < 0 {
            Ring3::R1
        } else if hi < 0 {
            Ring3::R2
        } else {
            Ring3::R3
        })
    }

    /// `(γ, δ)` with `Qδ − Pγ = 1` from the extended Euclidean algorithm.
    pub fn sl2_completion(&self) -> Result<(i64, i64)> {
        sl2_completion(self.knot.q(), self.knot.p())
    }

    pub fn report(&self) -> Value {
        let (gamma, delta) = self.sl2_completion().unwrap_or((0, 0));
        let disc_text = rational_text(&self.disc);
        let bps: Vec<Value> = self
            .branch
            .iter()
            .map(|b| json!([rational_text(&b.a), rational_text(&b.b), disc_text]))
            .collect();
        json!({
            "knot": self.knot,
            "A": rational_text(&self.a),
            "c": rational_text(&self.c),
            "disc": disc_text,
            "branch_points": bps,
            "rings": self.branch.iter().map(|b| self.ring_of(b).ok()).collect::<Vec<_>>(),
            "gamma": gamma,
            "delta": delta,
        })
    }
}

pub fn sl2_completion(q: i64, p: i64) -> Result<(i64, i64)> {
    use num_integer::Integer;
    let e = q.extended_gcd(&p);
    // q·x + p·y = gcd
    if e.gcd.abs() != 1 {
        return Err(Error::InvalidKnot {
            q,
            p,
            reason: "no SL(2,Z) completion".into(),
        });
    }
    let (x, y) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
    // Qδ − Pγ = 1 with δ = x, γ = −y
    Ok((-y, x))
}

/// `y`, `X` and `z(X)` as series at `z = 0`, valid below `z^order`.
pub fn curve_series<R: Coefficient>(
    knot: KnotParams,
    param: &R::Param,
    order: i64,
) -> Result<(Series<R>, Series<R>, Series<R>)> {
    if order < 2 {
        return Err(Error::Precondition(
            "curve series need order at least 2".into(),
        ));
    }
    // y = Σ (A^m − A^{−m}) z^m / m
    let mut coeffs = vec![R::zero()];
    for m in 1..order {
        coeffs.push(R::a_diff(param, m).scale(&Rational::new(1.into(), m.into())));
    }
    let y = Series::truncated(0, coeffs, order);
    let e = y.scale(&-knot.p_over_q()).exp()?;
    let x = e.shift(1).truncate(order);
    let zx = x.reversion()?;
    Ok((y, x, zx))
}

#[cfg(test)]
mod tests;
