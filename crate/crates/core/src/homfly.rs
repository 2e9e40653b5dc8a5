//! Colored HOMFLY-PT polynomials of torus knots (Rosso–Jones) and the
//! principal specialization `p_i = p*_i` of Schur functions.

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{
    rat, rational_text, rint, zeta_inverse_coeffs, LaurentPolyA, QALaurent, Rational, Ring, Series,
};
use crate::partitions::{adams_coeffs, kappa, schur_in_p, Partition};

/// Torus knot `T[Q,P]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KnotParams {
    q: i64,
    p: i64,
}

impl KnotParams {
    pub fn new(q: i64, p: i64) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidKnot {
                q,
                p,
                reason: "Q must be positive".into(),
            });
        }
        if q.gcd(&p) != 1 {
            return Err(Error::InvalidKnot {
                q,
                p,
                reason: "P and Q must be coprime".into(),
            });
        }
        Ok(KnotParams { q, p })
    }

    /// Parses `"Q,P"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (q, p) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected Q,P but got {s:?}")))?;
        let q = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad Q in {s:?}")))?;
        let p = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad P in {s:?}")))?;
        Self::new(q, p)
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn p_over_q(&self) -> Rational {
        rat(self.p, self.q)
    }
}

impl Serialize for KnotParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.q, self.p].serialize(s)
    }
}

/// `p*_i` as an ħ-series valid through `ħ^order`, with `A^i − A^{−i}` supplied
/// by `diff`.
pub fn p_star_series_with<R: Ring>(
    i: i64,
    order: i64,
    diff: &dyn Fn(i64) -> R,
) -> Result<Series<R>> {
    if i <= 0 {
        return Err(Error::Precondition(format!(
            "power-sum index {i} must be positive"
        )));
    }
    if order < -1 {
        return Err(Error::Precondition("ħ-order below the leading ħ^-1".into()));
    }
    // p*_i = (A^i − A^{−i}) (iħ)^{-1} Σ_a B_a (iħ)^{2a}
    let amax = ((order + 1) / 2).max(0) as usize;
    let b = zeta_inverse_coeffs(amax);
    let d = diff(i);
    let ir = rint(i);
    let mut coeffs = Vec::new();
    for k in -1..=order {
        let c = if (k + 1) % 2 == 0 {
            let a = ((k + 1) / 2) as usize;
            let w = &b[a] * num_traits::pow(ir.clone(), 2 * a) / &ir;
            d.scale(&w)
        } else {
            R::zero()
        };
        coeffs.push(c);
    }
    Ok(Series::truncated(-1, coeffs, order + 1))
}

pub fn p_star_series(i: i64, order: i64) -> Result<Series<LaurentPolyA>> {
    p_star_series_with(i, order, &LaurentPolyA::a_minus_ainv)
}

/// `s_R(p*)` by Frobenius expansion, valid through `ħ^order`.
pub fn s_star_frobenius_with<R: Ring>(
    r: &Partition,
    order: i64,
    diff: &dyn Fn(i64) -> R,
) -> Result<Series<R>> {
    let n = r.size() as i64;
    let inner = order + n;
    let mut cache: Vec<Option<Series<R>>> = vec![None; n as usize + 1];
    let mut acc = Series::zero_to(order + 1);
    for (mu, c) in schur_in_p(r).terms() {
        let mut term = Series::constant(R::from_rational(c));
        for &k in mu.parts() {
            let k = k as usize;
            if cache[k].is_none() {
                cache[k] = Some(p_star_series_with(k as i64, inner, diff)?);
            }
            term = term.mul(cache[k].as_ref().unwrap());
        }
        acc = acc.add(&term);
    }
    Ok(acc.truncate(order + 1))
}

pub fn s_star_frobenius(r: &Partition, order: i64) -> Result<Series<LaurentPolyA>> {
    s_star_frobenius_with(r, order, &LaurentPolyA::a_minus_ainv)
}

/// Ratio `numerator / Π_h (q^h − q^{−h})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QARatio {
    pub numerator: QALaurent,
    pub denominator: Vec<u32>,
}

impl QARatio {
    /// Cancels denominator factors that divide the numerator, largest first.
    pub fn reduce(mut self) -> Self {
        self.denominator.sort_unstable_by(|a, b| b.cmp(a));
        let mut kept = Vec::new();
        for &h in &self.denominator {
            match self.numerator.div_q_diff(h as i64) {
                Some(q) => self.numerator = q,
                None => kept.push(h),
            }
        }
        self.denominator = kept;
        self
    }

    /// Expansion under `q = e^{ħ/2}`, valid through `ħ^order`; A-exponents
    /// must be integers.
    pub fn to_hbar(&self, order: i64) -> Result<Series<LaurentPolyA>> {
        let lead = self.denominator.len() as i64;
        let num = self.numerator.to_hbar_series(order + lead + 1);
        let mut acc = Series::zero_to(order + lead + 1);
        for (ae, s) in num {
            if !ae.is_integer() {
                return Err(Error::Precondition("fractional A-exponent".into()));
            }
            let k: i64 = ae.to_integer().try_into().unwrap();
            acc = acc.add(&s.map_coeffs(|c| LaurentPolyA::monomial(c.clone(), k)));
        }
        for &h in &self.denominator {
            let d = QALaurent::q_diff(&rint(h as i64)).to_hbar_series(order + lead + 2);
            let d = d[&rint(0)].map_coeffs(LaurentPolyA::from_rational);
            acc = acc.mul(&d.inverse()?);
        }
        Ok(acc.truncate(order + 1))
    }
}

impl Serialize for QARatio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            numerator: Vec<QATerm>,
            denominator_q_diffs: &'a [u32],
        }
        Out {
            numerator: qa_terms(&self.numerator),
            denominator_q_diffs: &self.denominator,
        }
        .serialize(s)
    }
}

/// One term of a q,A Laurent polynomial in its JSON form.
#[derive(Serialize)]
pub struct QATerm {
    pub q_exp: String,
    #[serde(rename = "A_exp")]
    pub a_exp: String,
    pub coeff: String,
}

pub fn qa_terms(p: &QALaurent) -> Vec<QATerm> {
    p.terms()
        .map(|(q, a, c)| QATerm {
            q_exp: rational_text(q),
            a_exp: rational_text(a),
            coeff: rational_text(c),
        })
        .collect()
}

/// Boxes of `R` as `(content, hook length)`.
fn boxes(r: &Partition) -> Vec<(i64, u32)> {
    let t = r.transpose();
    let mut out = Vec::new();
    for (row, &len) in r.parts().iter().enumerate() {
        for col in 0..len as usize {
            let arm = len as usize - col - 1;
            let leg = t.parts()[col] as usize - row - 1;
            out.push((col as i64 - row as i64, (arm + leg + 1) as u32));
        }
    }
    out
}

/// `s*_R = Π_□ (A q^{c(□)} − A^{−1} q^{−c(□)}) / (q^{h(□)} − q^{−h(□)})`.
pub fn s_star_hook_content(r: &Partition) -> QARatio {
    let mut num = QALaurent::one();
    let mut den = Vec::new();
    for (c, h) in boxes(r) {
        num = num.mul(&QALaurent::a_q_diff(&rint(c)));
        den.push(h);
    }
    QARatio {
        numerator: num,
        denominator: den,
    }
}

/// `H_R(T[Q,P]) = A^{P|R|} Σ_{R₁} c^{R₁}_R q^{2κ_{R₁}P/Q} s*_{R₁}` over the
/// common denominator `Π_{k=1}^{Q|R|} (q^k − q^{−k})`, then reduced.
pub fn rosso_jones(r: &Partition, knot: KnotParams) -> Result<QARatio> {
    let n = r.size() as i64 * knot.q;
    let full: Vec<u32> = (1..=n as u32).collect();
    let mut common = QALaurent::one();
    for &k in &full {
        common = common.mul(&QALaurent::q_diff(&rint(k as i64)));
    }
    let mut num = QALaurent::zero();
    for (r1, c) in adams_coeffs(r, knot.q as u32)? {
        let s = s_star_hook_content(&r1);
        let mut lift = common.clone();
        for &h in &s.denominator {
            lift = lift.div_q_diff(h as i64).ok_or_else(|| {
                Error::Consistency(format!("hook product of {r1} does not divide [{n}]!"))
            })?;
        }
        let frame = QALaurent::monomial(rint(c), rint(2 * kappa(&r1)) * knot.p_over_q(), rint(0));
        num = num.add(&frame.mul(&s.numerator).mul(&lift));
    }
    let framing = QALaurent::monomial(rint(1), rint(0), rint(knot.p * r.size() as i64));
    Ok(QARatio {
        numerator: num.mul(&framing),
        denominator: full,
    }
    .reduce())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Series;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn knot_validation() {
        assert!(KnotParams::new(2, 4).is_err());
        assert!(KnotParams::new(0, 1).is_err());
        assert!(KnotParams::parse("2,3").is_ok());
        assert!(KnotParams::parse("2;3").is_err());
    }

    #[test]
    fn p_star_leading_terms() {
        let s = p_star_series(1, 3).unwrap();
        assert_eq!(s.coeff(-1).unwrap(), LaurentPolyA::a_minus_ainv(1));
        for i in 1..5 {
            assert!(p_star_series(i, 4).unwrap().coeff(0).unwrap().is_zero());
        }
        assert!(p_star_series(0, 3).is_err());
    }

    #[test]
    fn p_star_two_by_series_division() {
        // (A² − A⁻²)/(e^{ħ} − e^{−ħ}) by exp and inverse of truncated series
        let h = Series::truncated(1, vec![rint(1)], 6);
        let den = h.exp().unwrap().sub(&h.neg().exp().unwrap());
        let inv = den.inverse().unwrap();
        let s = p_star_series(2, 3).unwrap();
        for k in -1..=3 {
            assert_eq!(
                s.coeff(k).unwrap(),
                LaurentPolyA::a_minus_ainv(2).scale(&inv.coeff(k).unwrap())
            );
        }
        assert_eq!(
            s.coeff(1).unwrap(),
            LaurentPolyA::a_minus_ainv(2).scale(&rat(-1, 12))
        );
    }

    #[test]
    fn s_star_small_cases() {
        assert_eq!(
            s_star_frobenius(&Partition::empty(), 3)
                .unwrap()
                .coeff(0)
                .unwrap(),
            LaurentPolyA::one()
        );
        let s1 = s_star_frobenius(&p(&[1]), 3).unwrap();
        assert_eq!(s1, p_star_series(1, 3).unwrap());
        let d = s_star_frobenius(&p(&[2]), 3)
            .unwrap()
            .sub(&s_star_frobenius(&p(&[1, 1]), 3).unwrap());
        assert_eq!(d, p_star_series(2, 3).unwrap());
    }

    #[test]
    fn hook_content_matches_frobenius() {
        let one = s_star_hook_content(&p(&[1]));
        assert_eq!(one.numerator, QALaurent::a_q_diff(&rint(0)));
        assert_eq!(one.denominator, vec![1]);
        assert_eq!(
            s_star_hook_content(&Partition::empty()).numerator,
            QALaurent::one()
        );
        for n in 0..=4 {
            for r in crate::partitions::partitions_of(n) {
                let a = s_star_hook_content(&r).to_hbar(4).unwrap();
                let b = s_star_frobenius(&r, 4).unwrap();
                assert_eq!(a, b, "{r}");
            }
        }
    }

    /// Normalized HOMFLY-PT of T(2,k) from the skein relation
    /// a P(L₊) − a⁻¹ P(L₋) = z P(L₀), tracked as U = zP, z = q − q⁻¹, a = A.
    fn skein_torus_2(k: usize) -> QALaurent {
        let a = |e: i64| QALaurent::monomial(rint(1), rint(0), rint(e));
        let z = QALaurent::q_diff(&rint(1));
        let mut u = vec![a(1).sub(&a(-1)), z.clone()];
        for j in 2..=k {
            let next = a(-2).mul(&u[j - 2]).add(&a(-1).mul(&z).mul(&u[j - 1]));
            u.push(next);
        }
        u[k].clone()
    }

    fn leading(p: &QALaurent) -> (Rational, Rational, Rational) {
        let (q, a, c) = p.terms().last().unwrap();
        (q.clone(), a.clone(), c.clone())
    }

    #[test]
    fn trefoil_and_cinquefoil_match_skein() {
        for k in [3i64, 5, -3] {
            let knot = KnotParams::new(2, k).unwrap();
            let h = rosso_jones(&p(&[1]), knot).unwrap();
            // H · (q − q⁻¹)/(A − A⁻¹) against zP/z · (q − q⁻¹)
            let mut num = h.numerator.clone();
            let mut den = h.denominator.clone();
            if let Some(pos) = den.iter().position(|&x| x == 1) {
                den.remove(pos);
            } else {
                num = num.mul(&QALaurent::q_diff(&rint(1)));
            }
            assert!(den.is_empty(), "leftover denominator {den:?}");
            let oracle = if k > 0 {
                skein_torus_2(k as usize)
            } else {
                // mirror: a ↦ −a⁻¹… realized by q ↦ q⁻¹, A ↦ A⁻¹ on the positive knot
                let pos = skein_torus_2((-k) as usize);
                let mut m = QALaurent::zero();
                for (q, a, c) in pos.terms() {
                    m.add_term(-q, -a, &-c);
                }
                m
            };
            // num = (A − A⁻¹)·P and oracle = z·P, up to a monomial
            let num = num.mul(&QALaurent::q_diff(&rint(1)));
            let oracle = oracle.mul(&QALaurent::a_q_diff(&rint(0)));
            let (q1, a1, c1) = leading(&num);
            let (q2, a2, c2) = leading(&oracle);
            let shift = QALaurent::monomial(&c1 / &c2, &q1 - &q2, &a1 - &a2);
            assert_eq!(num, oracle.mul(&shift), "T(2,{k})");
        }
    }

    #[test]
    fn trefoil_explicit_form() {
        let knot = KnotParams::new(2, 3).unwrap();
        let h = rosso_jones(&p(&[1]), knot).unwrap();
        // A³(q³ s*_(2) − q⁻³ s*_(1,1))
        let s2 = s_star_hook_content(&p(&[2]));
        let s11 = s_star_hook_content(&p(&[1, 1]));
        assert_eq!(s2.denominator, s11.denominator);
        let expected = QARatio {
            numerator: QALaurent::monomial(rint(1), rint(3), rint(3))
                .mul(&s2.numerator)
                .sub(&QALaurent::monomial(rint(1), rint(-3), rint(3)).mul(&s11.numerator)),
            denominator: s2.denominator.clone(),
        }
        .reduce();
        assert_eq!(h, expected);
    }

    #[test]
    fn unknot_framing_and_empty_color() {
        let knot = KnotParams::new(1, 2).unwrap();
        for r in [p(&[1]), p(&[2]), p(&[2, 1])] {
            let h = rosso_jones(&r, knot).unwrap();
            let s = s_star_hook_content(&r);
            let frame =
                QALaurent::monomial(rint(1), rint(2 * kappa(&r) * 2), rint(2 * r.size() as i64));
            let expected = QARatio {
                numerator: frame.mul(&s.numerator),
                denominator: s.denominator,
            }
            .reduce();
            assert_eq!(h.to_hbar(3).unwrap(), expected.to_hbar(3).unwrap());
        }
        let h = rosso_jones(&Partition::empty(), KnotParams::new(3, 2).unwrap()).unwrap();
        assert_eq!(h.numerator, QALaurent::one());
        assert!(h.denominator.is_empty());
    }

    #[test]
    fn q_exponents_in_one_coset() {
        for q in 1..=3i64 {
            for pp in -5..=5i64 {
                let Ok(knot) = KnotParams::new(q, pp) else {
                    continue;
                };
                for n in 1..=2 {
                    for r in crate::partitions::partitions_of(n) {
                        let h = rosso_jones(&r, knot).unwrap();
                        let mut fracs: Vec<Rational> =
                            h.numerator.terms().map(|(e, _, _)| e - e.floor()).collect();
                        fracs.dedup();
                        fracs.sort();
                        fracs.dedup();
                        assert!(fracs.len() <= 1, "T[{q},{pp}] {r}: {fracs:?}");
                    }
                }
            }
        }
    }
}
