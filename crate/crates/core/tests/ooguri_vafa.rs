//! The Ooguri–Vafa function `Σ_R H_R s_R(p̄)` is the restriction of the
//! extended one to `p̄` with integer indices. Checked coefficientwise with
//! `A` symbolic: Rosso–Jones on one side, the character sum on the other.

use torus_tr::exactnum::{factorial, rint, LaurentPolyA, Rational, Ring, Series};
use torus_tr::homfly::{rosso_jones, KnotParams};
use torus_tr::ovcorr::Correlators;
use torus_tr::partitions::{mn_character, partitions_of, z_order, Partition};

const ORDER: i64 = 3;

/// `[p̄^ν] Σ_{|R|=|ν|} H_R s_R(p̄)` as an ħ-series.
fn ov_side(knot: KnotParams, nu: &Partition) -> Series<LaurentPolyA> {
    let mut acc = Series::zero_to(ORDER + 1);
    for r in partitions_of(nu.size()) {
        let chi = mn_character(&r, nu).unwrap();
        if chi == 0 {
            continue;
        }
        let h = rosso_jones(&r, knot).unwrap().to_hbar(ORDER).unwrap();
        acc = acc.add(&h.scale(&Rational::new(chi.into(), z_order(nu))));
    }
    acc
}

/// Same coefficient read off the extended function at `p̃_{Qν}`, with
/// `p̃_{Qk} = p̄_k · Q A^{kP}`.
fn extended_side(
    corr: &Correlators<LaurentPolyA>,
    knot: KnotParams,
    nu: &Partition,
) -> Series<LaurentPolyA> {
    let scaled = nu.scaled(knot.q() as u32);
    let f = corr.disconnected_moment(scaled.parts(), ORDER).unwrap();
    let mut sym = rint(1);
    for m in nu.multiplicities().values() {
        sym *= factorial(*m as u64);
    }
    let mut legs = LaurentPolyA::one();
    for &k in nu.parts() {
        legs = legs.mul(&LaurentPolyA::monomial(rint(knot.q()), k as i64 * knot.p()));
    }
    f.mul_scalar(&legs).scale(&sym.recip())
}

fn check(knot: KnotParams, max_size: u32) {
    let corr = Correlators::<LaurentPolyA>::new(knot, ());
    for d in 1..=max_size {
        for nu in partitions_of(d) {
            let a = ov_side(knot, &nu);
            let b = extended_side(&corr, knot, &nu);
            let v = a.valid().min(b.valid());
            assert_eq!(
                a.truncate(v),
                b.truncate(v),
                "T[{},{}] at ν = {nu}",
                knot.q(),
                knot.p()
            );
        }
    }
}

#[test]
fn trefoil_restriction() {
    check(KnotParams::new(2, 3).unwrap(), 3);
}

#[test]
fn other_torus_knots() {
    check(KnotParams::new(3, 2).unwrap(), 2);
    check(KnotParams::new(2, -3).unwrap(), 2);
    check(KnotParams::new(1, 4).unwrap(), 3);
}
