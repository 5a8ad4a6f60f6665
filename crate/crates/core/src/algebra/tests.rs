use super::*;
use crate::ring::{classical_value, q_number, rat, specialize_pq, LPoly};
use proptest::prelude::*;

fn lp(terms: &[(i64, i64, i64)]) -> LPoly {
    LPoly::from_terms(terms.iter().map(|&(a, b, c)| ([a, b], rat(c))))
}

/// First line of the 3-bracket formula, as a sum of three `(p,q)`-numbers.
fn bracket3_sum_form(m: i64, n: i64, k: i64) -> Scalar {
    let part = |a: i64, b: i64| pq_monomial(a - b, b - a) * pq_number(2 * a - 2 * b);
    let sum = part(m, n) + part(n, k) + part(k, m);
    -(sum * Scalar::inv_denominator_pow(1))
}

#[test]
fn bracket2_examples() {
    assert_eq!(bracket2(0, 1), Term::new(Scalar::from_int(-1), 1));
    assert!(bracket2(3, 3).is_zero());
    assert_eq!(bracket2(1, 0), Term::new(Scalar::one(), 1));
}

#[test]
fn bracket2_skew() {
    for m in -4..=4 {
        for n in -4..=4 {
            assert_eq!(bracket2(m, n).coeff, -bracket2(n, m).coeff);
        }
    }
}

#[test]
fn bracket2_limits() {
    for m in -5..=5 {
        for n in -5..=5 {
            let u = specialize_pq(&bracket2(m, n).coeff);
            assert_eq!(u, q_number(m - n), "({m},{n})");
            assert_eq!(classical_value(&u).unwrap(), rat(m - n));
        }
    }
}

#[test]
fn bracket3_pinned_value() {
    let t = bracket3_closed(0, 1, 2);
    assert_eq!(t.index, 3);
    // (1 - p^2 q^2) q^-2
    assert_eq!(t.coeff, Scalar::from_poly(lp(&[(0, -2, 1), (2, 0, -1)])));
    assert_eq!(t.coeff.to_text(), "q^-2 - p^2");
    assert!(bracket3_closed(1, 1, 2).is_zero());
    assert_eq!(bracket3_closed(1, 0, 2).coeff, -t.coeff);
}

#[test]
fn bracket3_determinant_matches_sum_form() {
    for m in -3..=3 {
        for n in -3..=3 {
            for k in -3..=3 {
                assert_eq!(bracket3_closed(m, n, k).coeff, bracket3_sum_form(m, n, k), "({m},{n},{k})");
            }
        }
    }
}

#[test]
fn vandermonde_n3_factorization() {
    // p^-2 q (pq - 1)(q + p^-1)(q - p^-1)^2
    let expected = lp(&[(-2, 1, 1)])
        * lp(&[(1, 1, 1), (0, 0, -1)])
        * lp(&[(0, 1, 1), (-1, 0, 1)])
        * lp(&[(0, 1, 1), (-1, 0, -1)]).pow(2);
    assert_eq!(vandermonde_det(&[0, 1, 2]), expected);
    assert!(vandermonde_det(&[0, 1, 1]).is_zero());
    assert_eq!(vandermonde_det(&[1, 0, 2]), -expected);
}

fn vandermonde_by_cofactor(indices: &[i64]) -> LPoly {
    let n = indices.len();
    let f = (n as i64 - 1) / 2;
    let m: Vec<Vec<LPoly>> =
        (0..n as i64).map(|t| indices.iter().map(|&i| lp(&[((t - 2 * f) * i, t * i, 1)])).collect()).collect();
    det_cofactor(&m)
}

#[test]
fn leibniz_matches_cofactor() {
    for t in [vec![0, 1, 2], vec![-2, 0, 3, 1], vec![0, 1, 2, 3, 4], vec![-1, 2, 0, -3, 1, 4]] {
        assert_eq!(vandermonde_det(&t), vandermonde_by_cofactor(&t), "{t:?}");
    }
}

#[test]
fn closed_n3_agrees_with_bracket3() {
    for m in -3..=3 {
        for n in -3..=3 {
            for k in -3..=3 {
                assert_eq!(bracketn_closed(&[m, n, k]).unwrap(), bracket3_closed(m, n, k));
            }
        }
    }
}

#[test]
fn closed_n4_pinned_value() {
    // p (pq - 1)^3 (pq + 1)^2 (p^2 q^2 + pq + 1) q^-2, frozen from the Fock-module evaluation
    let pqm1 = lp(&[(1, 1, 1), (0, 0, -1)]);
    let pqp1 = lp(&[(1, 1, 1), (0, 0, 1)]);
    let cyc = lp(&[(2, 2, 1), (1, 1, 1), (0, 0, 1)]);
    let expected = lp(&[(1, -2, 1)]) * pqm1.pow(3) * pqp1.pow(2) * cyc;
    let t = bracketn_closed(&[0, 1, 2, 3]).unwrap();
    assert_eq!(t.index, 6);
    assert_eq!(t.coeff, Scalar::from_poly(expected));
}

#[test]
fn recursion_weight_table() {
    assert_eq!(recursion_weights(4).unwrap(), RecursionWeights { x: 2, y: 0 });
    assert_eq!(recursion_weights(5).unwrap(), RecursionWeights { x: 2, y: -1 });
    assert_eq!(recursion_weights(6).unwrap(), RecursionWeights { x: 3, y: 0 });
    assert!(matches!(recursion_weights(3), Err(Error::BadArity { .. })));
}

#[test]
fn derived_signs() {
    assert_eq!(derive_sign(3).unwrap(), -1);
    assert_eq!(derive_sign(4).unwrap(), 1);
    assert_eq!(derive_sign(5).unwrap(), 1);
    assert_eq!(sign(4).unwrap(), 1);
}

#[test]
fn multilinear_examples() {
    let single = bracket_multilinear(&[OpSum::generator(0), OpSum::generator(1), OpSum::generator(2)]).unwrap();
    assert_eq!(single, OpSum::from_term(bracket3_closed(0, 1, 2)));

    let zero = bracket_multilinear(&[OpSum::new(), OpSum::generator(1), OpSum::generator(2)]).unwrap();
    assert!(zero.is_zero());

    let c = pq_number(3);
    let scaled =
        bracket_multilinear(&[OpSum::generator(0).scale(&c), OpSum::generator(1), OpSum::generator(2)]).unwrap();
    assert_eq!(scaled, single.scale(&c));

    // (L_0 + L_3) in the first slot: [L_3, L_1, L_2] lands on L_6
    let mut mixed = OpSum::generator(0);
    mixed.add_term(Scalar::one(), 3);
    let out = bracket_multilinear(&[mixed, OpSum::generator(1), OpSum::generator(2)]).unwrap();
    assert_eq!(out.len(), 2);
    assert_eq!(out.get(6).unwrap(), &bracket3_closed(3, 1, 2).coeff);
}

#[test]
fn cached_bracket_matches_uncached() {
    for t in [[2, -1, 0, 1], [0, 1, 2, 3], [1, 0, 2, 3], [3, 2, 1, 0], [0, 0, 1, 2]] {
        assert_eq!(bracket(&t).unwrap(), bracketn_closed(&t).unwrap(), "{t:?}");
    }
}

fn tuple(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_antisymmetric(n in 3usize..=5, seed in any::<u64>(), t in tuple(5)) {
        let t = &t[..n];
        let base = bracketn_closed(t).unwrap();
        prop_assert_eq!(base.index, t.iter().sum::<i64>());
        let i = (seed % n as u64) as usize;
        let j = ((seed / 7) % n as u64) as usize;
        prop_assume!(i != j);
        let mut sw = t.to_vec();
        sw.swap(i, j);
        prop_assert_eq!(bracketn_closed(&sw).unwrap().coeff, -base.coeff);
    }

    #[test]
    fn determinant_divisible(n in 3usize..=5, t in tuple(5)) {
        let t = &t[..n];
        let det = vandermonde_det(t);
        let den = Scalar::denominator().numerator().pow(n as u32 - 1);
        prop_assert!(det.exact_div(&den).is_ok());
    }
}
