//! Contraction of principal parts to a single rational function.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{rational_text, MultiPoly, MultiRational, QuadExt, Ring};
use crate::speccurve::CurveData;

use super::{OmegaTensor, Slot};

fn poly_mul(a: &[QuadExt], b: &[QuadExt]) -> Vec<QuadExt> {
    let mut out = vec![QuadExt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// `1/(z − a_b)^j = (z − a_{1−b})^j q(z)^{d−j} / q(z)^d`; returns the numerator.
fn slot_numerator(curve: &CurveData, s: Slot, d: u32) -> Vec<QuadExt> {
    let other = &curve.branch_points()[1 - s.branch as usize];
    let lin = [other.neg(), QuadExt::one()];
    let q: Vec<QuadExt> = curve
        .q_poly()
        .iter()
        .cloned()
        .map(QuadExt::rational)
        .collect();
    let mut p = vec![QuadExt::one()];
    for _ in 0..s.order {
        p = poly_mul(&p, &lin);
    }
    for _ in s.order..d {
        p = poly_mul(&p, &q);
    }
    p
}

pub(super) fn rational_form(t: &OmegaTensor, curve: &CurveData) -> Result<MultiRational> {
    let n = t.n();
    let d = t.max_order();
    let mut polys: HashMap<Slot, Vec<QuadExt>> = HashMap::new();
    let mut state: BTreeMap<(Vec<u32>, Vec<Slot>), QuadExt> = t
        .entries()
        .map(|(k, c)| ((Vec::new(), k.clone()), c.clone()))
        .collect();
    for _ in 0..n {
        let mut next: BTreeMap<(Vec<u32>, Vec<Slot>), QuadExt> = BTreeMap::new();
        for ((exps, rest), c) in state {
            let s = rest[0];
            let p = polys
                .entry(s)
                .or_insert_with(|| slot_numerator(curve, s, d));
            for (e, pc) in p.iter().enumerate() {
                if pc.is_zero() {
                    continue;
                }
                let mut e2 = exps.clone();
                e2.push(e as u32);
                let key = (e2, rest[1..].to_vec());
                let v = c.mul(pc);
                let slot = next.entry(key).or_insert_with(QuadExt::zero);
                *slot = slot.add(&v);
            }
        }
        state = next;
    }
    let mut num = MultiPoly::zero(n);
    for ((exps, _), c) in state {
        if c.is_zero() {
            continue;
        }
        if !c.is_rational() {
            return Err(Error::Consistency(format!(
                "coefficient {} of the rational form is not rational",
                c.text()
            )));
        }
        num.add_term(exps, &c.a);
    }
    MultiRational::new(num, curve.c().clone(), vec![d; n], [])
}

pub(crate) fn rational_json(r: &MultiRational) -> Value {
    let terms: Vec<Value> = r
        .numerator()
        .terms()
        .map(|(e, c)| json!({"exp": e, "coeff": rational_text(c)}))
        .collect();
    let pairs: Vec<Value> = r
        .pair_exponents()
        .map(|((i, j), e)| json!([i, j, e]))
        .collect();
    json!({
        "numerator": terms,
        "q_exponents": r.q_exponents(),
        "pair_exponents": pairs,
        "denominator": r.denominator_text(),
    })
}
