//! Closed-form brackets of the deformed generators `L_m`.
//!
//! The `n`-bracket of generators always collapses to a single generator:
//! `[L_{i_1}, ..., L_{i_n}] = c · L_{i_1 + ... + i_n}` with `c` a Laurent
//! polynomial in `p, q`. For `n >= 3`, `c` is a generalized Vandermonde
//! determinant divided by `(q - p^-1)^{n-1}`.

mod sign;

pub use sign::{derive_sign, sign, sign_ratio, SignTable};

use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, RwLock};

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{pq_monomial, pq_number, LPoly, Rat, Scalar};

/// Mode label `m` of the generator `L_m = -p^N (a†)^{m+1} a`.
pub type GenIndex = i64;

/// `coeff · L_index`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Scalar,
    pub index: GenIndex,
}

impl Term {
    pub fn new(coeff: Scalar, index: GenIndex) -> Self {
        Self { coeff, index }
    }

    pub fn zero(index: GenIndex) -> Self {
        Self { coeff: Scalar::zero(), index }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

/// Finite formal linear combination `Σ c_m L_m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpSum {
    entries: BTreeMap<GenIndex, Scalar>,
}

impl OpSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generator(m: GenIndex) -> Self {
        Self::from_term(Term::new(Scalar::one(), m))
    }

    pub fn from_term(t: Term) -> Self {
        let mut s = Self::new();
        s.add_term(t.coeff, t.index);
        s
    }

    pub fn add_term(&mut self, c: Scalar, m: GenIndex) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(m).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.entries.remove(&m);
        }
    }

    pub fn get(&self, m: GenIndex) -> Option<&Scalar> {
        self.entries.get(&m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (GenIndex, &Scalar)> {
        self.entries.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::new();
        for (m, v) in self.iter() {
            out.add_term(v * c, m);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, v) in other.iter() {
            out.add_term(-v, m);
        }
        out
    }
}

/// Exponents `(x, y)` of the `(pq)` weight in the `n`-bracket recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionWeights {
    pub x: i64,
    pub y: i64,
}

/// `(x, y) = ((n-1)/2, -1)` for odd `n >= 5`, `(n/2, 0)` for even `n >= 4`.
pub fn recursion_weights(n: usize) -> Result<RecursionWeights> {
    if n < 4 {
        return Err(Error::BadArity { arity: n, reason: "recursion starts at n = 4; n = 3 is the base bracket" });
    }
    let n = n as i64;
    Ok(if n % 2 == 1 { RecursionWeights { x: (n - 1) / 2, y: -1 } } else { RecursionWeights { x: n / 2, y: 0 } })
}

/// `[L_m, L_n] = -(q p^-1)^m [n - m]_{p,q} L_{m+n}`.
pub fn bracket2(m: GenIndex, n: GenIndex) -> Term {
    let c = -(pq_monomial(-m, m) * pq_number(n - m));
    Term::new(c, m + n)
}

/// The 3-bracket as the explicit 3×3 determinant
/// `-(p q^-1)^{m+n+k} / (q - p^-1)^2 · det[p^{-2i}; p^{-i} q^i; q^{2i}]`.
pub fn bracket3_closed(m: GenIndex, n: GenIndex, k: GenIndex) -> Term {
    let s = m + n + k;
    if m == n || n == k || m == k {
        return Term::zero(s);
    }
    // entry(row, col) exponents for column index i
    let r0 = |i: i64| [-2 * i, 0];
    let r1 = |i: i64| [-i, i];
    let r2 = |i: i64| [0, 2 * i];
    let mono = |a: [i64; 2], b: [i64; 2], c: [i64; 2]| [a[0] + b[0] + c[0], a[1] + b[1] + c[1]];
    let det = LPoly::from_terms([
        (mono(r0(m), r1(n), r2(k)), Rat::one()),
        (mono(r0(n), r1(k), r2(m)), Rat::one()),
        (mono(r0(k), r1(m), r2(n)), Rat::one()),
        (mono(r0(k), r1(n), r2(m)), -Rat::one()),
        (mono(r0(m), r1(k), r2(n)), -Rat::one()),
        (mono(r0(n), r1(m), r2(k)), -Rat::one()),
    ]);
    let c = -(pq_monomial(s, -s) * Scalar::new(det, 2));
    Term::new(c, s)
}

fn floor_half_nm1(n: usize) -> i64 {
    (n as i64 - 1).div_euclid(2)
}

/// Generalized Vandermonde determinant with entries
/// `p^{(t - 2⌊(n-1)/2⌋) i_j} q^{t i_j}`, rows `t = 0..n-1`.
///
/// Entries are monomials, so the Leibniz expansion is a signed sum of `n!`
/// monomials and needs no polynomial multiplication.
pub fn vandermonde_det(indices: &[GenIndex]) -> LPoly {
    let n = indices.len();
    let f = floor_half_nm1(n);
    let mut acc: HashMap<[i64; 2], i64> = HashMap::new();
    for_each_permutation(n, |perm, parity| {
        let mut e = [0i64; 2];
        for (t, &col) in perm.iter().enumerate() {
            let i = indices[col];
            e[0] += (t as i64 - 2 * f) * i;
            e[1] += t as i64 * i;
        }
        *acc.entry(e).or_insert(0) += parity as i64;
    });
    LPoly::from_terms(acc.into_iter().map(|(e, c)| (e, Rat::from_integer(c.into()))))
}

/// Visits every permutation of `0..n` with its sign (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], i8)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut parity: i8 = 1;
    f(&perm, parity);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            parity = -parity;
            f(&perm, parity);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Determinant of a square matrix of Laurent polynomials by cofactor expansion.
pub fn det_cofactor(m: &[Vec<LPoly>]) -> LPoly {
    let n = m.len();
    match n {
        0 => LPoly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = LPoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][j] * &det_cofactor(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// `(p q^-1)^{⌊(n-1)/2⌋ Σi} · det / (q - p^-1)^{n-1}`: the closed form without
/// its overall sign. Fails with `NotDivisible` if the determinant is not a
/// multiple of `(q - p^-1)^{n-1}`.
pub fn closed_form_unsigned(indices: &[GenIndex]) -> Result<Scalar> {
    let n = indices.len();
    if n < 3 {
        return Err(Error::BadArity { arity: n, reason: "closed form needs n >= 3" });
    }
    let det = vandermonde_det(indices);
    if det.is_zero() {
        return Ok(Scalar::zero());
    }
    let den = Scalar::denominator().numerator().pow(n as u32 - 1);
    let body = det.exact_div(&den)?;
    let s: i64 = indices.iter().sum();
    let f = floor_half_nm1(n);
    Ok(Scalar::from_poly(body.mul_monomial(&[f * s, -f * s], &Rat::one())))
}

/// The `n`-bracket (`n >= 3`) of generators in closed form.
pub fn bracketn_closed(indices: &[GenIndex]) -> Result<Term> {
    let n = indices.len();
    let s = indices.iter().sum();
    if n < 3 {
        return Err(Error::BadArity { arity: n, reason: "closed form needs n >= 3" });
    }
    if has_repeat(indices) {
        return Ok(Term::zero(s));
    }
    let sg = sign(n)?;
    let c = closed_form_unsigned(indices)?;
    Ok(Term::new(if sg < 0 { -c } else { c }, s))
}

pub fn has_repeat(xs: &[GenIndex]) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.windows(2).any(|w| w[0] == w[1])
}

/// Sorts a tuple of distinct indices and returns the sign of the sorting
/// permutation. `None` if any index repeats.
pub fn sort_with_parity(xs: &[GenIndex]) -> Option<(Vec<GenIndex>, i8)> {
    let mut inversions = 0usize;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            match xs[i].cmp(&xs[j]) {
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    Some((sorted, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

static CLOSED_CACHE: LazyLock<RwLock<HashMap<Vec<GenIndex>, Scalar>>> = LazyLock::new(Default::default);

/// Bracket of generators for any arity `n >= 2`, memoized.
///
/// `n = 2` is the deformed commutator; `n >= 3` uses the closed form, cached
/// on the sorted tuple and re-signed by the sorting permutation.
pub fn bracket(indices: &[GenIndex]) -> Result<Term> {
    match indices.len() {
        2 => Ok(bracket2(indices[0], indices[1])),
        n if n >= 3 => {
            let s = indices.iter().sum();
            let Some((sorted, parity)) = sort_with_parity(indices) else {
                return Ok(Term::zero(s));
            };
            if let Some(c) = CLOSED_CACHE.read().expect("cache poisoned").get(&sorted) {
                return Ok(Term::new(if parity < 0 { -c } else { c.clone() }, s));
            }
            let c = bracketn_closed(&sorted)?.coeff;
            CLOSED_CACHE.write().expect("cache poisoned").entry(sorted).or_insert_with(|| c.clone());
            Ok(Term::new(if parity < 0 { -c } else { c }, s))
        }
        n => Err(Error::BadArity { arity: n, reason: "brackets need n >= 2" }),
    }
}

/// Multilinear extension of the `n`-bracket to formal sums.
pub fn bracket_multilinear(args: &[OpSum]) -> Result<OpSum> {
    let n = args.len();
    if n < 2 {
        return Err(Error::BadArity { arity: n, reason: "brackets need n >= 2" });
    }
    let mut out = OpSum::new();
    if args.iter().any(|a| a.is_zero()) {
        return Ok(out);
    }
    let lists: Vec<Vec<(GenIndex, &Scalar)>> = args.iter().map(|a| a.iter().collect()).collect();
    let mut pos = vec![0usize; n];
    let mut idx = vec![0 as GenIndex; n];
    loop {
        for k in 0..n {
            idx[k] = lists[k][pos[k]].0;
        }
        let t = bracket(&idx)?;
        if !t.is_zero() {
            let mut c = t.coeff;
            for k in 0..n {
                let w = lists[k][pos[k]].1;
                if !w.is_one() {
                    c = &c * w;
                }
            }
            out.add_term(c, t.index);
        }
        // odometer
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            pos[k] += 1;
            if pos[k] < lists[k].len() {
                break;
            }
            pos[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests;
