use super::*;
use proptest::prelude::*;

fn lp(terms: &[(i64, i64, i64)]) -> LPoly {
    LPoly::from_terms(terms.iter().map(|&(a, b, c)| ([a, b], rat(c))))
}

fn d() -> LPoly {
    lp(&[(0, 1, 1), (-1, 0, -1)])
}

fn mp(terms: &[([i64; 4], i64)]) -> ModPoly {
    ModPoly::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
}

#[test]
fn normalize_examples() {
    let s = Scalar::new(lp(&[(0, 2, 1), (-2, 0, -1)]), 1);
    assert_eq!(s.exponent(), 0);
    assert_eq!(s.numerator(), &lp(&[(0, 1, 1), (-1, 0, 1)]));

    let z = Scalar::new(LPoly::zero(), 3);
    assert!(z.is_zero());
    assert_eq!(z.exponent(), 0);

    let p = Scalar::new(lp(&[(1, 0, 1)]), 1);
    assert_eq!(p.exponent(), 1);
    assert_eq!(p.numerator(), &lp(&[(1, 0, 1)]));
}

#[test]
fn scalar_arith_examples() {
    assert!((Scalar::from_int(1) + Scalar::from_int(-1)).is_zero());
    let x = Scalar::from_poly(d()) * Scalar::inv_denominator_pow(1);
    assert!(x.is_one());
    let sum = Scalar::new(lp(&[(1, 0, 1)]), 1) + Scalar::new(lp(&[(0, 1, 1)]), 1);
    assert_eq!(sum, Scalar::new(lp(&[(1, 0, 1), (0, 1, 1)]), 1));
    assert_eq!(sum.exponent(), 1);
}

#[test]
fn pq_number_examples() {
    assert!(pq_number(0).is_zero());
    assert!(pq_number(1).is_one());
    assert_eq!(pq_number(2), Scalar::from_poly(lp(&[(0, 1, 1), (-1, 0, 1)])));
    assert_eq!(pq_number(-1), Scalar::from_poly(lp(&[(1, -1, -1)])));
    for x in -8..=8 {
        assert_eq!(pq_number(x).exponent(), 0, "[{x}] must be a Laurent polynomial");
    }
}

#[test]
fn specialize_examples() {
    let two = specialize_pq(&pq_number(2));
    assert_eq!(two, q_number(2));
    assert_eq!(two.to_text(), "q^-1 + q");
    assert!(specialize_pq(&Scalar::zero()).is_zero());
    // coefficient of [L_1, L_0]: -(q p^-1) [-1]_{p,q}
    let c = -(pq_monomial(-1, 1) * pq_number(-1));
    assert!(specialize_pq(&c).is_one());
}

#[test]
fn classical_value_examples() {
    assert_eq!(classical_value(&specialize_pq(&Scalar::from_int(-1))).unwrap(), rat(-1));
    let u = UniScalar::new(UniPoly::from_terms([([2], rat(1)), ([-2], rat(-1))]), 1);
    assert_eq!(classical_value(&u).unwrap(), rat(2));
    // 1/(q - q^-1) has a pole at q = 1
    assert_eq!(classical_value(&UniScalar::inv_denominator_pow(1)), Err(Error::PoleAtOne(1)));
    // numerator divisible by (q - 1) but not (q + 1): limit still exists
    let half = UniScalar::new(UniPoly::from_terms([([1], rat(1)), ([0], rat(-1))]), 1);
    assert_eq!(classical_value(&half).unwrap(), Rat::new(1.into(), 2.into()));
}

/// Independent oracle for `[k]_q` at `q = 1`: expand `(q^k - q^-k)/(q - q^-1)`
/// as the sum `q^{k-1} + q^{k-3} + ... + q^{1-k}` (negated for k < 0) and
/// count the monomials.
fn q_number_monomial_count(k: i64) -> i64 {
    let terms: Vec<i64> = (0..k.abs()).map(|j| k.abs() - 1 - 2 * j).collect();
    let sign = k.signum();
    sign * terms.len() as i64
}

#[test]
fn classical_value_of_pq_numbers() {
    for k in -3..=3 {
        let v = classical_value(&specialize_pq(&pq_number(k))).unwrap();
        assert_eq!(v, rat(q_number_monomial_count(k)), "k = {k}");
    }
}

#[test]
fn mod_shift_examples() {
    let big_p = ModScalar::from_poly(mp(&[([0, 0, 1, 0], 1)]));
    assert_eq!(mod_shift(&big_p, 2), ModScalar::from_poly(mp(&[([2, 0, 1, 0], 1)])));
    let qp = ModScalar::from_poly(mp(&[([0, 0, 0, 1], 1), ([0, 0, -1, 0], -1)]));
    assert_eq!(mod_shift(&qp, 0), qp);
    let pq = ModScalar::from_poly(mp(&[([0, 0, 1, 1], 1)]));
    assert_eq!(mod_shift(&pq, -1), ModScalar::from_poly(mp(&[([-1, -1, 1, 1], 1)])));
}

#[test]
fn mod_exact_div_examples() {
    let qp = ModScalar::from_poly(mp(&[([0, 0, 0, 1], 1), ([0, 0, -1, 0], -1)]));
    let big_p = ModScalar::from_poly(mp(&[([0, 0, 1, 0], 1)]));
    assert_eq!((&big_p * &qp).checked_div(&qp).unwrap(), big_p);
    assert!(qp.checked_div(&qp).unwrap().is_one());
    let big_q = ModScalar::from_poly(mp(&[([0, 0, 0, 1], 1)]));
    assert_eq!(big_q.checked_div(&qp), Err(Error::NotDivisible));
}

#[test]
fn checked_div_through_localization() {
    // 1 / (q - p^-1) divided by (q - p^-1)^-1 -> 1, and p / (q - p^-1) -> p (q - p^-1)^-1 ... etc.
    let inv = Scalar::inv_denominator_pow(1);
    assert!(inv.checked_div(&inv).unwrap().is_one());
    let den = Scalar::denominator();
    assert_eq!(Scalar::one().checked_div(&den).unwrap(), inv);
    assert_eq!(den.checked_div(&inv).unwrap(), Scalar::from_poly(d().pow(2)));
}

#[test]
fn projections() {
    let s = pq_number(3);
    assert_eq!(project_scalar(&embed_scalar(&s)).unwrap(), s);
    let big_p = ModScalar::from_poly(mp(&[([0, 0, 1, 0], 1)]));
    assert!(project_scalar(&big_p).is_none());
}

fn arb_lpoly() -> impl Strategy<Value = LPoly> {
    prop::collection::vec((-3i64..=3, -3i64..=3, -4i64..=4, 1i64..=3), 0..5)
        .prop_map(|ts| LPoly::from_terms(ts.into_iter().map(|(a, b, n, den)| ([a, b], Rat::new(n.into(), den.into())))))
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (arb_lpoly(), 0u32..3, 0u32..2).prop_map(|(num, e, extra)| {
        // occasionally plant a factor of (q - p^-1) so normalization has work to do
        Scalar::new(&num * &d().pow(extra), e)
    })
}

fn arb_modscalar() -> impl Strategy<Value = ModScalar> {
    (prop::collection::vec(((-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2), -3i64..=3), 0..4), 0u32..2).prop_map(
        |(ts, e)| {
            ModScalar::new(ModPoly::from_terms(ts.into_iter().map(|((a, b, c, d), k)| ([a, b, c, d], rat(k)))), e)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scalar_ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn lpoly_ring_axioms(a in arb_lpoly(), b in arb_lpoly(), c in arb_lpoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_div_inverts_mul(a in arb_lpoly(), dd in arb_lpoly()) {
        prop_assume!(!dd.is_zero());
        prop_assert_eq!((&a * &dd).exact_div(&dd).unwrap(), a);
    }

    #[test]
    fn normalize_idempotent(s in arb_scalar()) {
        let again = Scalar::new(s.numerator().clone(), s.exponent());
        prop_assert_eq!(&again, &s);
        if s.exponent() > 0 {
            prop_assert!(s.numerator().exact_div(&d()).is_err());
        }
    }

    #[test]
    fn scalar_division_inverts_mul(a in arb_scalar(), b in arb_scalar()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a);
    }

    #[test]
    fn specialize_is_ring_hom(a in arb_scalar(), b in arb_scalar()) {
        prop_assert_eq!(specialize_pq(&(&a * &b)), specialize_pq(&a) * specialize_pq(&b));
        prop_assert_eq!(specialize_pq(&(&a + &b)), specialize_pq(&a) + specialize_pq(&b));
    }

    #[test]
    fn mod_shift_composes(c in arb_modscalar(), m in -3i64..=3, n in -3i64..=3) {
        prop_assert_eq!(mod_shift(&mod_shift(&c, m), n), mod_shift(&c, m + n));
    }
}

#[test]
fn oscillator_recurrences() {
    for x in -8..=8 {
        let next = pq_number(x + 1);
        assert_eq!(next, pq_monomial(0, 1) * pq_number(x) + pq_monomial(-x, 0), "x = {x}");
        assert_eq!(next, pq_monomial(-1, 0) * pq_number(x) + pq_monomial(0, x), "x = {x}");
    }
}
