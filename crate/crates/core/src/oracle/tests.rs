use super::*;
use crate::algebra::{bracket2, bracket3_closed, bracketn_closed};
use crate::ring::{rat, LPoly};

/// Concrete level `ν`: `P -> p^ν`, `Q -> q^ν`.
fn at_level(c: &ModScalar, nu: i64) -> Scalar {
    let num = c.numerator().map_exponents(|e| [e[0] + nu * e[2], e[1] + nu * e[3]]);
    Scalar::new(num, c.exponent())
}

fn lp(terms: &[(i64, i64, i64)]) -> LPoly {
    LPoly::from_terms(terms.iter().map(|&(a, b, c)| ([a, b], rat(c))))
}

#[test]
fn fock_act_examples() {
    for m in -2..=2 {
        let v = fock_act(m, &ModVector::vacuum());
        assert!(at_level(v.get(m).unwrap(), 0).is_zero());
    }
    let v = fock_act(1, &ModVector::vacuum());
    assert_eq!(at_level(v.get(1).unwrap(), 1), Scalar::from_poly(lp(&[(2, 0, -1)])));

    let v = fock_act(0, &ModVector::vacuum());
    let big_p = ModScalar::from_poly(mp(&[([0, 0, 1, 0], 1)]));
    assert_eq!(v.get(0).unwrap(), &-(level_number() * big_p));
}

#[test]
fn fock_act_respects_grading() {
    let mut v = ModVector::default();
    v.add(-1, level_number());
    v.add(2, ModScalar::one());
    for m in -3..=3 {
        let out = fock_act(m, &v);
        let shifts: Vec<i64> = out.iter().map(|(s, _)| s).collect();
        assert_eq!(shifts, vec![-1 + m, 2 + m]);
    }
}

#[test]
fn oscillator_relations_hold() {
    let r = osc_relations_check();
    assert!(r.relation_q.is_zero(), "{:?}", r.relation_q);
    assert!(r.relation_p.is_zero(), "{:?}", r.relation_p);
    assert!(r.number_relations);
    assert!(r.passed());
}

#[test]
fn word_act_examples() {
    assert!(word_act(&WordSum::new(0)).is_zero());

    let mut single = WordSum::new(0);
    single.add(vec![0], Scalar::one());
    assert_eq!(word_act(&single), fock_act(0, &ModVector::vacuum()));

    let mut two = WordSum::new(1);
    two.add(vec![1, 0], Scalar::one());
    let expected = action_coefficient(0) * mod_shift(&action_coefficient(1), 0);
    assert_eq!(word_act(&two).get(1).unwrap(), &expected);
}

#[test]
fn word_act_linear() {
    let a = bracket2_def(0, 2);
    let b = bracket2_def(-1, 3);
    let mut sum = a.clone();
    sum.add_sum(&b);
    let mut expected = word_act(&a);
    expected.add_vector(&word_act(&b), &ModScalar::one());
    assert_eq!(word_act(&sum), expected);
}

#[test]
fn bracket2_def_weights() {
    let ws = bracket2_def(0, 1);
    assert_eq!(ws.len(), 2);
    assert_eq!(ws.get(&[0, 1]).unwrap(), &pq_monomial(-1, 0));
    assert_eq!(ws.get(&[1, 0]).unwrap(), &-pq_monomial(0, 1));
    assert!(bracket2_def(2, 2).is_empty());
    let swapped = bracket2_def(1, 0);
    for (w, c) in ws.iter() {
        assert_eq!(swapped.get(w).unwrap(), &-c);
    }
}

#[test]
fn bracket3_def_weights() {
    let ws = bracket3_def(0, 1, 2);
    let expect: [(&[i64], Scalar); 6] = [
        (&[0, 1, 2], pq_monomial(-2, -2)),
        (&[0, 2, 1], -pq_monomial(-1, -1)),
        (&[1, 2, 0], pq_monomial(1, 1)),
        (&[1, 0, 2], -pq_monomial(-1, -1)),
        (&[2, 0, 1], pq_monomial(1, 1)),
        (&[2, 1, 0], -pq_monomial(2, 2)),
    ];
    assert_eq!(ws.len(), 6);
    for (w, c) in expect {
        assert_eq!(ws.get(w).unwrap(), &c, "{w:?}");
    }
}

#[test]
fn extraction_examples() {
    assert_eq!(extract_structure_constant(&bracket2_def(0, 1)).unwrap(), bracket2(0, 1));

    let mut raw = WordSum::new(1);
    raw.add(vec![0, 1], Scalar::one());
    assert!(matches!(extract_structure_constant(&raw), Err(Error::NotProportional(_))));

    assert_eq!(extract_structure_constant(&WordSum::new(7)).unwrap(), Term::zero(7));
}

#[test]
fn bracket2_def_matches_closed() {
    for m in -3..=3 {
        for n in -3..=3 {
            assert_eq!(extract_structure_constant(&bracket2_def(m, n)).unwrap(), bracket2(m, n));
        }
    }
}

#[test]
fn bracket3_def_matches_closed() {
    assert_eq!(recursive_bracket(&[0, 1, 2]).unwrap(), bracket3_closed(0, 1, 2));
    assert!(recursive_bracket(&[1, 1, 2]).unwrap().is_zero());
    assert_eq!(recursive_bracket(&[-2, 3, 1]).unwrap(), bracket3_closed(-2, 3, 1));
}

#[test]
fn bracketn_def_structure() {
    let ws = bracketn_def(&[0, 1, 2, 3]).unwrap();
    assert_eq!(ws.len(), 24);
    // s = 1 term: weight (pq)^{2*0 + 0*6} = 1 in front of the 3-bracket of (1,2,3)
    let inner = bracket3_def(1, 2, 3);
    for (w, c) in inner.iter() {
        let mut full = vec![0];
        full.extend_from_slice(w);
        assert_eq!(ws.get(&full).unwrap(), c);
    }

    let ws5 = bracketn_def(&[0, 1, 2, 3, 4]).unwrap();
    let inner4 = bracketn_def(&[1, 2, 3, 4]).unwrap();
    let weight = pq_monomial(-10, -10);
    for (w, c) in inner4.iter() {
        let mut full = vec![0];
        full.extend_from_slice(w);
        assert_eq!(ws5.get(&full).unwrap(), &(c * &weight));
    }
}

#[test]
fn recursive_matches_closed_samples() {
    for t in [vec![0, 1, 2, 3], vec![-2, 1, 0, 2], vec![0, 1, 2, 3, 4], vec![2, -1, 0, -2, 1]] {
        assert_eq!(recursive_bracket(&t).unwrap(), bracketn_closed(&t).unwrap(), "{t:?}");
    }
}

#[test]
fn q_extraction_matches_specialization() {
    use crate::ring::specialize_pq;
    for t in [vec![0, 1, 2], vec![-1, 2, 3], vec![0, 1, 2, 3, 4]] {
        let q = recursive_bracket_q(&t).unwrap();
        assert_eq!(q, specialize_pq(&bracketn_closed(&t).unwrap().coeff));
    }
}
