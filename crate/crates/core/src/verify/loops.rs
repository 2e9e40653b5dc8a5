//! Linear and quadratic loop equations at the branch points.
//!
//! `W(σ(z))` is `f(σ)σ'/x'(z)` because `x∘σ = x`; spectator variables stay
//! as principal-part slot indices, and their `d log X` factors are common to
//! every term, so they are left out. `W_{0,1} = y` is split as
//! `y(a) + (y − y(a))` with `y(a)` kept as a formal symbol: it is a logarithm
//! of an algebraic number, so each `y(a)`-component has to be holomorphic on
//! its own.

use serde_json::json;

use crate::error::{Error, Result};
use crate::exactnum::{QuadExt, Series};
use crate::toprec::{LocalCtx, LocalTensor, Slot, TopRec};

use super::{rational_text, status, CheckReport};

/// `plain + y(a)·ya`.
#[derive(Default)]
struct Factor {
    plain: LocalTensor,
    ya: LocalTensor,
}

fn add_to(map: &mut LocalTensor, key: Vec<Slot>, s: Series<QuadExt>) {
    match map.get_mut(&key) {
        Some(v) => *v = v.add(&s),
        None => {
            map.insert(key, s);
        }
    }
}

fn divide(t: LocalTensor, inv: &Series<QuadExt>) -> LocalTensor {
    t.into_iter().map(|(k, s)| (k, s.mul(inv))).collect()
}

/// Minimal order over all entries, or an error when some entry is not known
/// through `t^0`.
fn min_order(t: &LocalTensor) -> Result<i64> {
    let mut m = i64::MAX;
    for s in t.values() {
        let o = s.min_order();
        if o >= s.valid() && s.valid() <= 0 {
            return Err(Error::OrderTooLow {
                what: "loop-equation expansion".into(),
                needed: 1 - s.valid(),
            });
        }
        m = m.min(o);
    }
    Ok(m)
}

struct Ctx<'a> {
    tr: &'a mut TopRec,
    mmax: u32,
}

impl Ctx<'_> {
    /// `W_{g,n}` with its first slot at `z` or `σ(z)`.
    fn w(&mut self, ctx: &LocalCtx, g: u32, n: u32, at_sigma: bool) -> Result<Factor> {
        let inv = ctx.data.xp.inverse()?;
        let mut f = Factor::default();
        match (g, n) {
            (0, 1) => {
                let y = if at_sigma { &ctx.y_sigma } else { &ctx.y_t };
                f.plain.insert(Vec::new(), y.clone());
                f.ya.insert(Vec::new(), Series::one());
            }
            (0, 2) => f.plain = divide(ctx.b_spectator(at_sigma, self.mmax)?, &inv),
            _ => {
                let w = self.tr.omega(g, n)?;
                f.plain = divide(ctx.evaluate(&w.tensor, at_sigma, false)?, &inv);
            }
        }
        Ok(f)
    }

    /// `W_{g,n}(z, σ(z), ·)`.
    fn w_pair(&mut self, ctx: &LocalCtx, g: u32, n: u32) -> Result<LocalTensor> {
        let inv = ctx.data.xp.inverse()?;
        let inv2 = inv.mul(&inv);
        if (g, n) == (0, 2) {
            let mut t = LocalTensor::new();
            t.insert(Vec::new(), ctx.b_diagonal()?.mul(&inv2));
            return Ok(t);
        }
        let w = self.tr.omega(g, n)?;
        Ok(divide(ctx.evaluate(&w.tensor, false, true)?, &inv2))
    }
}

fn merge(
    out: &mut LocalTensor,
    f1: &LocalTensor,
    i1: &[usize],
    f2: &LocalTensor,
    i2: &[usize],
    n: usize,
) {
    for (k1, s1) in f1 {
        for (k2, s2) in f2 {
            let mut key = vec![
                Slot {
                    branch: 0,
                    order: 0
                };
                n
            ];
            for (p, s) in i1.iter().zip(k1) {
                key[*p] = *s;
            }
            for (p, s) in i2.iter().zip(k2) {
                key[*p] = *s;
            }
            add_to(out, key, s1.mul(s2));
        }
    }
}

fn pole_bound(g: u32, n: u32) -> u32 {
    (6 * g + 2 * n + 2).max(2)
}

/// Which terms of the quadratic loop equation to include.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QleVariant {
    Full,
    /// Omits `W_{g−1,n+2}(z, σ(z), ·)`; the result should fail.
    DropCrossTerm,
}

/// `W_{g−1,n+2}(z,σ(z),z_I) + Σ W_{g₁}(z,z_{I₁}) W_{g₂}(σ(z),z_{I₂})` at each
/// branch point; passes iff every component has minimal order ≥ 0.
pub fn check_quadratic_loop(
    tr: &mut TopRec,
    g: u32,
    n: u32,
    variant: QleVariant,
) -> Result<CheckReport> {
    let mut worst = i64::MAX;
    let mut witness = serde_json::Value::Null;
    for branch in 0..2u8 {
        let local = tr.local_arc(branch);
        let mut c = Ctx {
            tr: &mut *tr,
            mmax: pole_bound(g, n),
        };
        let mut plain = LocalTensor::new();
        let mut ya = LocalTensor::new();
        if g >= 1 && variant == QleVariant::Full {
            for (k, s) in c.w_pair(&local, g - 1, n + 2)? {
                add_to(&mut plain, k, s);
            }
        }
        let ns = n as usize;
        for mask in 0u32..(1 << ns) {
            let i1: Vec<usize> = (0..ns).filter(|i| mask >> i & 1 == 1).collect();
            let i2: Vec<usize> = (0..ns).filter(|i| mask >> i & 1 == 0).collect();
            for g1 in 0..=g {
                let g2 = g - g1;
                let (n1, n2) = (i1.len() as u32 + 1, i2.len() as u32 + 1);
                if (g1, n1) == (0, 1) && (g2, n2) == (0, 1) {
                    return Err(Error::Precondition(
                        "(g, n) = (0, 0) has no loop equation".into(),
                    ));
                }
                let f1 = c.w(&local, g1, n1, false)?;
                let f2 = c.w(&local, g2, n2, true)?;
                merge(&mut plain, &f1.plain, &i1, &f2.plain, &i2, ns);
                merge(&mut ya, &f1.ya, &i1, &f2.plain, &i2, ns);
                merge(&mut ya, &f1.plain, &i1, &f2.ya, &i2, ns);
            }
        }
        for (name, t) in [("plain", &plain), ("y(a)", &ya)] {
            let m = min_order(t)?;
            if m < worst {
                worst = m;
                if m < 0 {
                    witness = json!({"branch": branch, "component": name, "min_order": m});
                }
            }
        }
    }
    Ok(CheckReport {
        name: match variant {
            QleVariant::Full => "quadratic_loop".into(),
            QleVariant::DropCrossTerm => "quadratic_loop_mutant".into(),
        },
        parameters: json!({
            "knot": tr.curve().knot(),
            "A": rational_text(tr.curve().a()),
            "g": g, "n": n, "order": tr.order(), "min_order": worst.min(1_000_000),
        }),
        status: status(worst >= 0),
        witness,
    })
}

/// `W_{g,n+1}(z, ·) + W_{g,n+1}(σ(z), ·)` at each branch point.
pub fn check_linear_loop(tr: &mut TopRec, g: u32, n: u32) -> Result<CheckReport> {
    let mut worst = i64::MAX;
    let mut witness = serde_json::Value::Null;
    for branch in 0..2u8 {
        let local = tr.local_arc(branch);
        let mut c = Ctx {
            tr: &mut *tr,
            mmax: pole_bound(g, n + 1),
        };
        let mut sum = LocalTensor::new();
        for at_sigma in [false, true] {
            let f = c.w(&local, g, n + 1, at_sigma)?;
            if !f.ya.is_empty() {
                return Err(Error::Precondition(
                    "W_{0,1} has no linear loop equation".into(),
                ));
            }
            for (k, s) in f.plain {
                add_to(&mut sum, k, s);
            }
        }
        let m = min_order(&sum)?;
        if m < worst {
            worst = m;
            if m < 0 {
                witness = json!({"branch": branch, "min_order": m});
            }
        }
    }
    Ok(CheckReport {
        name: "linear_loop".into(),
        parameters: json!({
            "knot": tr.curve().knot(),
            "A": rational_text(tr.curve().a()),
            "g": g, "n": n, "order": tr.order(), "min_order": worst.min(1_000_000),
        }),
        status: status(worst >= 0),
        witness,
    })
}

/// Linear loop check for a single basis differential `dz/(z − a)^order`.
pub fn symmetrized_basis_order(tr: &TopRec, s: Slot) -> Result<i64> {
    let local = tr.local_arc(s.branch);
    let inv = local.data.xp.inverse()?;
    let sum = local.basis_at_z(s)?.add(local.basis_at_sigma(s)?).mul(&inv);
    let mut t = LocalTensor::new();
    t.insert(Vec::new(), sum);
    min_order(&t)
}
