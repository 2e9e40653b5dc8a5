use super::*;
use crate::exactnum::{rat, rint};
use crate::homfly::KnotParams;
use crate::speccurve::CurveData;

fn setup(q: i64, p: i64, a: Rational, order: i64) -> (TopRec, Correlators<Rational>) {
    let k = KnotParams::new(q, p).unwrap();
    let curve = CurveData::new(k, a.clone()).unwrap();
    (TopRec::new(&curve, order).unwrap(), Correlators::new(k, a))
}

#[test]
fn omega03_matches_correlators() {
    let (mut tr, corr) = setup(2, 3, rat(1, 3), 12);
    let r = compare_tr_vs_correlators(&mut tr, &corr, 0, 3, 5).unwrap();
    assert!(r.passed(), "{}", r.json_line());
}

#[test]
fn omega11_matches_correlators() {
    let (mut tr, corr) = setup(2, 3, rat(1, 3), 12);
    let r = compare_tr_vs_correlators(&mut tr, &corr, 1, 1, 5).unwrap();
    assert!(r.passed(), "{}", r.json_line());
}

#[test]
fn loop_equations_hold() {
    let (mut tr, _) = setup(2, 3, rat(1, 3), 14);
    for (g, n) in [(0, 1), (0, 2), (1, 0), (1, 1)] {
        let q = check_quadratic_loop(&mut tr, g, n, QleVariant::Full).unwrap();
        assert!(q.passed(), "{}", q.json_line());
        let l = check_linear_loop(&mut tr, g, n).unwrap();
        assert!(l.passed(), "{}", l.json_line());
    }
    for (g, n) in [(1, 0), (1, 1)] {
        let m = check_quadratic_loop(&mut tr, g, n, QleVariant::DropCrossTerm).unwrap();
        assert!(!m.passed(), "{}", m.json_line());
    }
}

#[test]
fn odd_principal_part_breaks_linear_loop() {
    let (tr, _) = setup(2, 3, rat(1, 3), 10);
    let odd = crate::toprec::Slot {
        branch: 0,
        order: 3,
    };
    assert!(symmetrized_basis_order(&tr, odd).unwrap() < 0);
}

#[test]
fn cut_and_join_low() {
    let k = KnotParams::new(2, 3).unwrap();
    let curve = CurveData::new(k, rat(1, 3)).unwrap();
    let corr = Correlators::new(k, rat(1, 3));
    for (g, n, d) in [(0, 1, 6), (0, 2, 4), (1, 1, 4)] {
        let r = cutjoin_residual(&corr, &curve, g, n, d).unwrap();
        assert!(r.passed(), "{}", r.json_line());
    }
}

#[test]
fn cut_and_join_higher() {
    let k = KnotParams::new(2, 3).unwrap();
    let curve = CurveData::new(k, rat(1, 3)).unwrap();
    let corr = Correlators::new(k, rat(1, 3));
    for (g, n, d) in [(0, 3, 4), (1, 2, 4)] {
        let r = cutjoin_residual(&corr, &curve, g, n, d).unwrap();
        assert!(r.passed(), "{}", r.json_line());
    }
}

#[test]
fn cut_and_join_mutants_fail() {
    let k = KnotParams::new(2, 3).unwrap();
    let curve = CurveData::new(k, rat(1, 3)).unwrap();
    let corr = Correlators::new(k, rat(1, 3));
    let r = cutjoin_residual_with(&corr, &curve, 0, 2, 4, CutJoinVariant::NoLogCorrection).unwrap();
    assert!(!r.passed());
    let r =
        cutjoin_residual_with(&corr, &curve, 1, 1, 4, CutJoinVariant::NoHbarDeformation).unwrap();
    assert!(!r.passed());
}

#[test]
fn cut_and_join_second_knot() {
    let k = KnotParams::new(3, 2).unwrap();
    let curve = CurveData::new(k, rat(1, 4)).unwrap();
    let corr = Correlators::new(k, rat(1, 4));
    for (g, n, d) in [(0, 1, 6), (0, 2, 4), (1, 1, 4)] {
        let r = cutjoin_residual(&corr, &curve, g, n, d).unwrap();
        assert!(r.passed(), "{}", r.json_line());
    }
}

#[test]
fn perturbed_correlator_is_caught_at_lowest_mu() {
    let (mut tr, corr) = setup(2, 3, rat(1, 3), 12);
    let w = tr.omega(0, 3).unwrap();
    let table = XExpander::new(tr.curve(), 5)
        .unwrap()
        .expand(&w.tensor)
        .unwrap();
    let mut hgn = corr.hgn_poly(0, 3, 5).unwrap();
    let target = crate::partitions::Partition::new(vec![2, 1, 1]).unwrap();
    let v = hgn.entries.get_mut(&target).unwrap();
    *v += rat(1, 1000);
    let r = compare_tables(&table, &hgn);
    assert!(!r.passed());
    assert_eq!(r.witness["mu"], serde_json::json!([1, 1, 2]));
    let clean = corr.hgn_poly(0, 3, 5).unwrap();
    assert!(compare_tables(&table, &clean).passed());
}

#[test]
fn w02_regular_part_matches_correlators() {
    for (q, p, a) in [(2, 3, rat(1, 3)), (3, 2, rat(1, 4))] {
        let k = KnotParams::new(q, p).unwrap();
        let curve = CurveData::new(k, a.clone()).unwrap();
        let corr = Correlators::new(k, a);
        let ex = XExpander::new(&curve, 6).unwrap();
        let w02 = ex.w02_regular().unwrap();
        let r = compare_tables(&w02, &corr.hgn_poly(0, 2, 6).unwrap());
        assert!(r.passed(), "{}", r.json_line());
        assert!(r.parameters["nonzero"].as_u64().unwrap() > 5);
    }
}

#[test]
fn w01_is_the_curve() {
    let (_, corr) = setup(2, 3, rat(1, 3), 8);
    let curve = CurveData::new(corr.knot(), rat(1, 3)).unwrap();
    let y = XExpander::new(&curve, 6).unwrap().w01().unwrap();
    let h = corr.hgn_poly(0, 1, 6).unwrap();
    for m in 1..=6u32 {
        assert_eq!(h.get(&[m]).unwrap() * rint(m as i64), y[m as usize]);
    }
}

#[test]
fn expansion_of_symmetric_omega_is_symmetric() {
    let (mut tr, _) = setup(3, 2, rat(1, 4), 12);
    let w = tr.omega(0, 3).unwrap();
    let t = XExpander::new(tr.curve(), 5)
        .unwrap()
        .expand(&w.tensor)
        .unwrap();
    for (mu, c) in &t {
        for o in distinct_orderings(mu) {
            assert_eq!(t.get(&o), Some(c));
        }
    }
}
