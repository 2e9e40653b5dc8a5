//! Executable checks: dual-pipeline comparison, loop equations and the
//! cut-and-join residual.

mod cutjoin;
mod expand;
mod loops;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;
use crate::exactnum::{rational_text, Rational};
use crate::ovcorr::{Correlators, HgnTable};
use crate::toprec::TopRec;

pub use cutjoin::{cutjoin_residual, cutjoin_residual_with, CutJoinVariant};
pub use expand::{XExpander, XTable};
pub use loops::{check_linear_loop, check_quadratic_loop, symmetrized_basis_order, QleVariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check. Timing is left out so reports are reproducible.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub parameters: Value,
    pub status: Status,
    pub witness: Value,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// `W_{g,n}` from the recursion against `Πμ_i · C̃^{(g)}_μ` for all `μ` with
/// `Σμ_i ≤ degree`. The witness on failure is the first mismatching `μ` in
/// order of total degree.
pub fn compare_tr_vs_correlators(
    tr: &mut TopRec,
    corr: &Correlators<Rational>,
    g: u32,
    n: u32,
    degree: u32,
) -> Result<CheckReport> {
    let w = tr.omega(g, n)?;
    let mut ex = XExpander::new(tr.curve(), degree)?;
    let table = ex.expand(&w.tensor)?;
    let hgn = corr.hgn_poly(g, n as usize, degree)?;
    let mut report = compare_tables(&table, &hgn);
    report.parameters = serde_json::json!({
        "knot": tr.curve().knot(),
        "A": rational_text(tr.curve().a()),
        "g": g, "n": n, "degree": degree, "order": tr.order(),
        "coefficients": report.parameters["coefficients"],
        "nonzero": report.parameters["nonzero"],
    });
    Ok(report)
}

/// Compares an `X`-expansion of `W_{g,n}` with `Πμ_i` times a correlator
/// table. The witness is the first mismatching `μ` by total degree.
pub fn compare_tables(table: &XTable, hgn: &HgnTable<Rational>) -> CheckReport {
    let mut keys: Vec<Vec<u32>> = Vec::new();
    for mu in hgn.entries.keys() {
        keys.extend(distinct_orderings(mu.parts()));
    }
    for mu in table.keys() {
        if hgn.get(mu).is_none() {
            keys.push(mu.clone());
        }
    }
    keys.sort_by_key(|k| (k.iter().sum::<u32>(), k.clone()));
    let zero = Rational::from_integer(0.into());
    let mut witness = Value::Null;
    let mut nonzero = 0usize;
    for mu in &keys {
        let prod: i64 = mu.iter().map(|&m| m as i64).product();
        let expected = hgn.get(mu).cloned().unwrap_or_else(|| zero.clone())
            * Rational::from_integer(prod.into());
        let got = table.get(mu).cloned().unwrap_or_else(|| zero.clone());
        if got != zero {
            nonzero += 1;
        }
        if got != expected {
            witness = serde_json::json!({
                "mu": mu,
                "recursion": rational_text(&got),
                "correlators": rational_text(&expected),
            });
            break;
        }
    }
    CheckReport {
        name: "tr_vs_correlators".into(),
        parameters: serde_json::json!({"g": hgn.g, "n": hgn.n, "degree": hgn.degree, "coefficients": keys.len(), "nonzero": nonzero}),
        status: status(witness.is_null()),
        witness,
    }
}

/// All distinct orderings of a multiset, in lexicographic order.
pub fn distinct_orderings(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut v = parts.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next_permutation
    while let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) {
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

#[cfg(test)]
mod tests;
