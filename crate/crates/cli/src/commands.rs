use anyhow::bail;
use rayon::prelude::*;
use serde_json::{json, Value};
use torus_tr::exactnum::{rational_text, Rational};
use torus_tr::homfly::{qa_terms, rosso_jones};
use torus_tr::ovcorr::{Correlators, HgnTable};
use torus_tr::partitions::partitions_of;
use torus_tr::speccurve::CurveData;
use torus_tr::toprec::{default_order, TopRec};
use torus_tr::verify::{
    check_linear_loop, check_quadratic_loop, compare_tables, compare_tr_vs_correlators,
    cutjoin_residual, CheckReport, QleVariant, XExpander, XTable,
};

use crate::config::{Format, InputError, JobConfig};
use crate::output::{parts_cell, Artifact};
use crate::schema::SCHEMA_VERSION;

fn header(kind: &str, cfg: &JobConfig) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("kind".into(), json!(kind));
    m.insert("knot".into(), json!(cfg.knot));
    m
}

fn format_or(
    cfg: &JobConfig,
    default: Format,
    allowed: &[Format],
    cmd: &str,
) -> anyhow::Result<Format> {
    let f = cfg.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(InputError(format!("{cmd} does not support --format {f:?}")).into());
    }
    Ok(f)
}

fn curve(cfg: &JobConfig) -> anyhow::Result<CurveData> {
    CurveData::new(cfg.knot, cfg.a.clone())
        .map_err(|e| InputError(format!("--A {}: {e}", cfg.a_text)).into())
}

fn stable(g: u32, n: u32) -> bool {
    2 * g + n > 2
}

/// `(g, n)` pairs with `g ≤ gmax` and `1 ≤ n ≤ min(nmax, degree)`; tables
/// with more legs than the degree are empty.
fn grid(cfg: &JobConfig, degree: u32) -> Vec<(u32, u32)> {
    let nmax = cfg.nmax.min(degree);
    (0..=cfg.gmax)
        .flat_map(|g| (1..=nmax).map(move |n| (g, n)))
        .collect()
}

fn needed_order(cfg: &JobConfig, pairs: &[(u32, u32)]) -> i64 {
    let auto = pairs
        .iter()
        .map(|&(g, n)| default_order(g, n))
        .max()
        .unwrap_or(8);
    cfg.order.unwrap_or(auto)
}

pub fn homfly(cfg: &JobConfig) -> anyhow::Result<Artifact> {
    let fmt = format_or(cfg, Format::Json, &[Format::Json, Format::Csv], "homfly")?;
    let colors: Vec<_> = (1..=cfg.rmax).flat_map(partitions_of).collect();
    let values = colors
        .par_iter()
        .map(|r| rosso_jones(r, cfg.knot))
        .collect::<Result<Vec<_>, _>>()?;
    if fmt == Format::Csv {
        let mut rows = Vec::new();
        for (r, h) in colors.iter().zip(&values) {
            let den = parts_cell(&h.denominator);
            for t in qa_terms(&h.numerator) {
                rows.push(vec![
                    parts_cell(r.parts()),
                    t.q_exp,
                    t.a_exp,
                    t.coeff,
                    den.clone(),
                ]);
            }
        }
        return Artifact::csv(
            &["R", "q_exp", "A_exp", "coeff", "denominator_q_diffs"],
            &rows,
        );
    }
    let items: Vec<Value> = colors
        .iter()
        .zip(&values)
        .map(|(r, h)| {
            json!({
                "R": r.parts(),
                "numerator": qa_terms(&h.numerator),
                "denominator_q_diffs": h.denominator,
            })
        })
        .collect();
    let mut m = header("homfly", cfg);
    m.insert("rmax".into(), json!(cfg.rmax));
    m.insert("colors".into(), json!(items));
    Ok(Artifact::json(&Value::Object(m)))
}

fn correlator_tables(
    cfg: &JobConfig,
    corr: &Correlators<Rational>,
) -> anyhow::Result<Vec<HgnTable<Rational>>> {
    Ok(grid(cfg, cfg.degree)
        .par_iter()
        .map(|&(g, n)| corr.hgn_poly(g, n as usize, cfg.degree))
        .collect::<Result<Vec<_>, _>>()?)
}

pub fn correlators(cfg: &JobConfig) -> anyhow::Result<Artifact> {
    let fmt = format_or(
        cfg,
        Format::Json,
        &[Format::Json, Format::Csv],
        "correlators",
    )?;
    curve(cfg)?;
    let corr = Correlators::new(cfg.knot, cfg.a.clone());
    let tables = correlator_tables(cfg, &corr)?;
    if fmt == Format::Csv {
        let mut rows = Vec::new();
        for t in &tables {
            for (mu, c) in &t.entries {
                rows.push(vec![
                    t.g.to_string(),
                    t.n.to_string(),
                    parts_cell(mu.parts()),
                    rational_text(c),
                ]);
            }
        }
        return Artifact::csv(&["g", "n", "mu", "coeff"], &rows);
    }
    let items: Vec<Value> = tables
        .iter()
        .map(|t| json!({"g": t.g, "n": t.n, "rows": t.to_json_rows()}))
        .collect();
    let mut m = header("correlators", cfg);
    m.insert("A".into(), json!(rational_text(&cfg.a)));
    m.insert("gmax".into(), json!(cfg.gmax));
    m.insert("nmax".into(), json!(cfg.nmax));
    m.insert("degree".into(), json!(cfg.degree));
    m.insert("tables".into(), json!(items));
    Ok(Artifact::json(&Value::Object(m)))
}

pub fn toprec(cfg: &JobConfig) -> anyhow::Result<Artifact> {
    format_or(cfg, Format::Json, &[Format::Json], "toprec")?;
    let c = curve(cfg)?;
    let pairs: Vec<(u32, u32)> = (0..=cfg.gmax)
        .flat_map(|g| (1..=cfg.nmax).map(move |n| (g, n)))
        .filter(|&(g, n)| stable(g, n))
        .collect();
    let order = needed_order(cfg, &pairs);
    let mut tr = TopRec::new(&c, order)?;
    let mut items = Vec::new();
    if cfg.nmax >= 2 {
        items.push(tr.omega_base().1.to_json());
    }
    for &(g, n) in &pairs {
        items.push(tr.omega(g, n)?.to_json());
    }
    let mut m = header("toprec", cfg);
    m.insert("A".into(), json!(rational_text(&cfg.a)));
    m.insert("disc".into(), json!(rational_text(c.disc())));
    m.insert("order".into(), json!(order));
    m.insert("omegas".into(), json!(items));
    Ok(Artifact::json(&Value::Object(m)))
}

pub fn curve_report(cfg: &JobConfig) -> anyhow::Result<Artifact> {
    format_or(cfg, Format::Json, &[Format::Json], "curve")?;
    let c = curve(cfg)?;
    let mut m = header("curve", cfg);
    if let Value::Object(r) = c.report() {
        for (k, v) in r {
            m.entry(k).or_insert(v);
        }
    }
    Ok(Artifact::json(&Value::Object(m)))
}

fn unstable_comparison(
    ex: &XExpander,
    corr: &Correlators<Rational>,
    n: u32,
    degree: u32,
) -> anyhow::Result<CheckReport> {
    let table: XTable = if n == 1 {
        ex.w01()?
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| (vec![m as u32], c))
            .collect()
    } else {
        ex.w02_regular()?
    };
    Ok(compare_tables(
        &table,
        &corr.hgn_poly(0, n as usize, degree)?,
    ))
}

/// Recursion-side checks share one memoized `TopRec` and run in order.
fn recursion_checks(
    cfg: &JobConfig,
    c: &CurveData,
    corr: &Correlators<Rational>,
) -> anyhow::Result<Vec<CheckReport>> {
    let stable_pairs: Vec<(u32, u32)> = grid(cfg, cfg.degree)
        .into_iter()
        .filter(|&(g, n)| stable(g, n))
        .collect();
    // loop equations for W_{g,n+1}, keeping W_{g-1,n+2} inside the grid
    let loops: Vec<(u32, u32)> = (0..=cfg.gmax)
        .flat_map(|g| (0..cfg.nmax).map(move |n| (g, n)))
        .filter(|&(g, n)| (g, n) != (0, 0) && (g == 0 || n + 2 <= cfg.nmax))
        .collect();
    let mut needs = stable_pairs.clone();
    needs.extend(loops.iter().map(|&(g, n)| (g, n + 1)));
    let mut tr = TopRec::new(c, needed_order(cfg, &needs))?;
    let mut out = Vec::new();
    let ex = XExpander::new(c, cfg.degree)?;
    for n in 1..=cfg.nmax.min(2).min(cfg.degree) {
        let mut r = unstable_comparison(&ex, corr, n, cfg.degree)?;
        r.parameters["knot"] = json!(cfg.knot);
        r.parameters["A"] = json!(rational_text(&cfg.a));
        out.push(r);
    }
    for &(g, n) in &stable_pairs {
        out.push(compare_tr_vs_correlators(&mut tr, corr, g, n, cfg.degree)?);
    }
    for &(g, n) in &loops {
        out.push(check_quadratic_loop(&mut tr, g, n, QleVariant::Full)?);
        out.push(check_linear_loop(&mut tr, g, n)?);
    }
    Ok(out)
}

/// Runs every check; the second value is true iff all passed.
pub fn verify(cfg: &JobConfig) -> anyhow::Result<(Artifact, bool)> {
    format_or(cfg, Format::Jsonl, &[Format::Jsonl], "verify")?;
    let c = curve(cfg)?;
    let corr = Correlators::new(cfg.knot, cfg.a.clone());
    let cj_pairs = grid(cfg, cfg.cutjoin_degree);
    let (tr_reports, cj_reports) = rayon::join(
        || recursion_checks(cfg, &c, &corr),
        || {
            cj_pairs
                .par_iter()
                .map(|&(g, n)| {
                    let d = if (g, n) == (0, 1) {
                        2 * cfg.cutjoin_degree
                    } else {
                        cfg.cutjoin_degree
                    };
                    cutjoin_residual(&corr, &c, g, n, d)
                })
                .collect::<Result<Vec<_>, _>>()
        },
    );
    let mut reports = tr_reports?;
    reports.extend(cj_reports?);
    let ok = reports.iter().all(|r| r.passed());
    let lines: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("reports serialize");
            let obj = v.as_object_mut().unwrap();
            obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
            obj.insert("kind".into(), json!("verify"));
            v
        })
        .collect();
    Ok((Artifact::json_lines(&lines), ok))
}

pub fn schema(kind: Option<&str>) -> anyhow::Result<Artifact> {
    match kind {
        None => Ok(Artifact::json(&crate::schema::all())),
        Some(k) => match crate::schema::schema_for(k) {
            Some(s) => Ok(Artifact::json(&s)),
            None => bail!(InputError(format!(
                "unknown output kind {k:?}; known kinds: {}",
                crate::schema::KINDS.join(", ")
            ))),
        },
    }
}
