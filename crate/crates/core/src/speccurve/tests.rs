use super::*;
use crate::exactnum::{rat, LaurentPolyA};
use proptest::prelude::*;

fn trefoil() -> CurveData {
    CurveData::new(KnotParams::new(2, 3).unwrap(), rat(1, 3)).unwrap()
}

fn second() -> CurveData {
    CurveData::new(KnotParams::new(3, 2).unwrap(), rat(1, 4)).unwrap()
}

#[test]
fn trefoil_quadratic() {
    let c = trefoil();
    assert_eq!(*c.c(), rat(-2, 3));
    assert_eq!(*c.disc(), rat(-32, 9));
    let s = second();
    assert_eq!(*s.c(), rat(7, 4));
    assert_eq!(*s.disc(), rat(-15, 16));
}

#[test]
fn branch_points_vieta() {
    for curve in [trefoil(), second()] {
        let [p, m] = curve.branch_points();
        assert_eq!(p.mul(m), QuadExt::one());
        assert_eq!(p.add(m), QuadExt::rational(curve.c().clone()));
        assert_eq!(p.conj(), *m);
        let qp = p.mul(p).sub(&p.scale(curve.c())).add(&QuadExt::one());
        assert!(qp.is_zero());
        assert!(curve.is_conjugate_pair());
    }
}

#[test]
fn dlogx_shape() {
    let c = trefoil();
    let (num, den) = c.dlogx_rational();
    assert_eq!(num[0], rint(1));
    assert_eq!(num[2], rint(1));
    assert_eq!(num[1], rat(2, 3));
    // residue at 0 is num(0)/den'(0)
    assert_eq!(&num[0] / &den[1], rint(1));
}

#[test]
fn genericity_rejections() {
    let k = KnotParams::new(2, 3).unwrap();
    assert!(CurveData::new(k, rint(0)).is_err());
    assert!(CurveData::new(k, rint(1)).is_err());
    assert!(CurveData::new(k, rat(-3, 2)).is_err());
    // A = −1/5 gives c = 2, a double root
    assert!(matches!(
        CurveData::new(k, rat(-1, 5)),
        Err(Error::DegenerateCurve(_))
    ));
    // A = 1/5 gives c = −2: double root at −1
    assert!(CurveData::new(k, rat(1, 5)).is_err());
}

#[test]
fn rings() {
    let c = trefoil();
    let a = c.a().clone();
    assert_eq!(
        c.ring_of(&QuadExt::rational(&a / rint(2))).unwrap(),
        Ring3::R1
    );
    assert_eq!(
        c.ring_of(&QuadExt::rational(rint(2) / &a)).unwrap(),
        Ring3::R3
    );
    assert_eq!(c.ring_of(&QuadExt::rational(rint(1))).unwrap(), Ring3::R2);
    for b in c.branch_points() {
        assert_eq!(c.ring_of(b).unwrap(), Ring3::R2);
    }
    assert!(matches!(
        c.ring_of(&QuadExt::rational(a.clone())),
        Err(Error::RingBoundary(_))
    ));
    assert!(c.ring_of(&QuadExt::rational(-a.recip())).is_err());
}

#[test]
fn ring_of_real_quadratic() {
    let c = trefoil();
    let d = Arc::new(rint(2));
    // √2/10 < 1/3, √2 in R2, 2 + √2 > 3
    let small = QuadExt::new(rint(0), rat(1, 10), &d);
    let mid = QuadExt::sqrt(&d);
    let big = QuadExt::new(rint(2), rint(1), &d);
    let neg_big = QuadExt::new(rint(-2), rint(-1), &d);
    assert_eq!(c.ring_of(&small).unwrap(), Ring3::R1);
    assert_eq!(c.ring_of(&mid).unwrap(), Ring3::R2);
    assert_eq!(c.ring_of(&big).unwrap(), Ring3::R3);
    assert_eq!(c.ring_of(&neg_big).unwrap(), Ring3::R3);
    // 3 − √2 ≈ 1.59 lies in R2
    assert_eq!(
        c.ring_of(&QuadExt::new(rint(3), rint(-1), &d)).unwrap(),
        Ring3::R2
    );
}

/// `z((1 − Az)/(1 − z/A))^{P/Q}` through binomial powers of each factor.
fn x_oracle(a: &Rational, pq: &Rational, valid: i64) -> Series<Rational> {
    let f1 = Series::exact(0, vec![rint(1), -a.clone()]).truncate(valid);
    let f2 = Series::exact(0, vec![rint(1), -a.recip()]).truncate(valid);
    f1.pow(pq)
        .unwrap()
        .mul(&f2.pow(&-pq).unwrap())
        .shift(1)
        .truncate(valid)
}

#[test]
fn curve_series_rational() {
    for curve in [trefoil(), second()] {
        let k = curve.knot();
        let a = curve.a().clone();
        let (y, x, zx) = curve_series::<Rational>(k, &a, 9).unwrap();
        assert_eq!(y.coeff(0).unwrap(), rint(0));
        assert_eq!(y.coeff(1).unwrap(), &a - a.recip());
        assert_eq!(x.coeff(1).unwrap(), rint(1));
        assert_eq!(x.coeff(2).unwrap(), -k.p_over_q() * (&a - a.recip()));
        assert_eq!(x, x_oracle(&a, &k.p_over_q(), 9));
        let id = zx.compose(&x).unwrap();
        assert_eq!(id.truncate(9), Series::monomial(rint(1), 1).truncate(9));
        // z·X'/X = q(z)/((1 − Az)(1 − z/A))
        let lhs = x.derivative().mul(&x.shift(-1).inverse().unwrap());
        let (num, den) = curve.dlogx_rational();
        let rhs = Series::exact(0, num).mul(
            &Series::exact(0, den[1..].to_vec())
                .truncate(8)
                .inverse()
                .unwrap(),
        );
        let v = lhs.valid().min(rhs.valid());
        assert_eq!(lhs.truncate(v), rhs.truncate(v));
    }
}

#[test]
fn curve_series_symbolic_agrees() {
    let curve = trefoil();
    let (y, x, _) = curve_series::<LaurentPolyA>(curve.knot(), &(), 7).unwrap();
    assert_eq!(
        x.coeff(2).unwrap(),
        LaurentPolyA::a_minus_ainv(1).scale(&rat(-3, 2))
    );
    let (yr, xr, _) = curve_series::<Rational>(curve.knot(), curve.a(), 7).unwrap();
    assert_eq!(y.map_coeffs(|c| c.eval(curve.a())), yr);
    assert_eq!(x.map_coeffs(|c| c.eval(curve.a())), xr);
    assert!(curve_series::<Rational>(curve.knot(), curve.a(), 1).is_err());
}

fn check_local(curve: &CurveData, order: i64) {
    for b in curve.branch_points() {
        let l = curve.local_data(b, order).unwrap();
        let s = &l.deck.sigma;
        assert_eq!(s.coeff(0).unwrap(), QuadExt::zero());
        assert_eq!(s.coeff(1).unwrap(), QuadExt::one().neg());
        let ss = s.compose(s).unwrap();
        let t = Series::monomial(QuadExt::one(), 1).truncate(order);
        assert_eq!(ss.truncate(order), t);
        let x0s = l.x0.compose(s).unwrap();
        let v = x0s.valid().min(l.x0.valid());
        assert_eq!(x0s.truncate(v), l.x0.truncate(v));
        assert!(l.xp.coeff(0).unwrap().is_zero());
        assert!(!l.xp.coeff(1).unwrap().is_zero());
        // Δy is odd under σ and vanishes linearly
        assert!(l.delta_y.coeff(0).unwrap().is_zero());
        assert!(!l.delta_y.coeff(1).unwrap().is_zero());
        let dys = l.delta_y.compose(s).unwrap();
        let v = dys.valid().min(l.delta_y.valid());
        assert_eq!(dys.truncate(v), l.delta_y.neg().truncate(v));
    }
}

#[test]
fn deck_transformations() {
    check_local(&trefoil(), 8);
    check_local(&second(), 7);
}

#[test]
fn galois_conjugate_local_data() {
    let c = trefoil();
    let [p, m] = c.branch_points();
    let lp = c.local_data(p, 6).unwrap();
    let lm = c.local_data(m, 6).unwrap();
    assert_eq!(lp.deck.sigma.map_coeffs(|x| x.conj()), lm.deck.sigma);
    assert_eq!(lp.delta_y.map_coeffs(|x| x.conj()), lm.delta_y);
}

#[test]
fn bem_identities() {
    for curve in [trefoil(), second()] {
        let m = bem_maps(&curve, 6).unwrap();
        let k = curve.knot();
        assert_eq!(k.q() * m.delta - k.p() * m.gamma, 1);
    }
    let neg = CurveData::new(KnotParams::new(2, -3).unwrap(), rat(1, 3)).unwrap();
    assert!(bem_maps(&neg, 6).is_ok());
}

#[test]
fn report_fields() {
    let r = trefoil().report();
    assert_eq!(r["c"], "-2/3");
    assert_eq!(r["disc"], "-32/9");
    assert_eq!(r["knot"], serde_json::json!([2, 3]));
    assert_eq!(
        r["branch_points"][0],
        serde_json::json!(["-1/3", "1/2", "-32/9"])
    );
    assert_eq!(r["rings"][0], "R2");
}

proptest! {
    #[test]
    fn sl2_rows(q in 1i64..40, p in -40i64..40) {
        use num_integer::Integer;
        prop_assume!(q.gcd(&p) == 1);
        let (g, d) = sl2_completion(q, p).unwrap();
        prop_assert_eq!(q * d - p * g, 1);
    }
}
