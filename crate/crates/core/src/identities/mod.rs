//! Identity verifiers over brackets of generators.
//!
//! Every bracket of generators collapses to one generator, so each identity
//! reduces to a single exact residual scalar. Residuals are returned as values
//! (not booleans) so that failures can be inspected and pinned.

use serde::Serialize;

use crate::algebra::{bracket, bracket2, bracket_multilinear, GenIndex, OpSum, Term};
use crate::error::{Error, Result};
use crate::oracle::{extract_structure_constant_q, WordSum};
use crate::ring::{classical_value, pq_monomial, specialize_pq, Rat, Scalar, UniScalar};

/// `(Y, X, residual)` of a fundamental-identity check.
pub type FiWitness = (Vec<GenIndex>, Vec<GenIndex>, Term);

/// A `(n, n-1)` shuffle of `1..=2n-1` with its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    /// One-based images `σ(1), ..., σ(2n-1)`.
    pub sigma: Vec<usize>,
    pub parity: i8,
}

/// All shuffles in `Sh(n, n-1)`, lexicographic in the first block.
pub fn shuffles(n: usize) -> Vec<Shuffle> {
    assert!(n >= 2, "shuffles need n >= 2");
    let total = 2 * n - 1;
    let mut out = Vec::new();
    let mut first: Vec<usize> = (1..=n).collect();
    loop {
        let rest: Vec<usize> = (1..=total).filter(|i| !first.contains(i)).collect();
        let sigma: Vec<usize> = first.iter().chain(rest.iter()).copied().collect();
        let word: Vec<i64> = sigma.iter().map(|&s| s as i64).collect();
        out.push(Shuffle { parity: levi_civita(&word), sigma });
        // next n-combination of 1..=total
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if first[i] < total - (n - 1 - i) {
                first[i] += 1;
                for j in i + 1..n {
                    first[j] = first[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Sign of `js` relative to its sorted order; `0` on any repeat.
pub fn levi_civita(js: &[i64]) -> i8 {
    let mut sign = 1i8;
    for i in 0..js.len() {
        for j in i + 1..js.len() {
            if js[i] == js[j] {
                return 0;
            }
            if js[i] > js[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Whether a report expects its residual to vanish or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    Zero,
    Nonzero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one identity check on one index tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub n: usize,
    pub tuple: Vec<GenIndex>,
    /// Canonical text of the exact residual.
    pub residual: String,
    pub expect: Expectation,
    pub verdict: Verdict,
}

impl IdentityReport {
    pub fn new(
        identity: &str,
        n: usize,
        tuple: Vec<GenIndex>,
        residual: String,
        residual_is_zero: bool,
        expect: Expectation,
    ) -> Self {
        let ok = match expect {
            Expectation::Zero => residual_is_zero,
            Expectation::Nonzero => !residual_is_zero,
        };
        Self {
            identity: identity.to_string(),
            n,
            tuple,
            residual,
            expect,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn uncached_bracket(indices: &[GenIndex]) -> Result<Term> {
    match indices.len() {
        2 => Ok(bracket2(indices[0], indices[1])),
        _ => crate::algebra::bracketn_closed(indices),
    }
}

/// Skew-symmetry under every transposition, evaluated on the uncached closed
/// form. The residual is the first nonzero `[.., X_j, .., X_i, ..] + [..]`.
pub fn check_skew(indices: &[GenIndex]) -> Result<IdentityReport> {
    let n = indices.len();
    let base = uncached_bracket(indices)?;
    let mut residual = Scalar::zero();
    if crate::algebra::has_repeat(indices) && !base.is_zero() {
        residual = base.coeff.clone();
    }
    'outer: for i in 0..n {
        for j in i + 1..n {
            if !residual.is_zero() {
                break 'outer;
            }
            let mut sw = indices.to_vec();
            sw.swap(i, j);
            let t = uncached_bracket(&sw)?;
            if t.index != base.index {
                return Err(Error::InvalidInput("bracket grading violated".into()));
            }
            residual = &t.coeff + &base.coeff;
        }
    }
    Ok(IdentityReport::new("skew", n, indices.to_vec(), residual.to_text(), residual.is_zero(), Expectation::Zero))
}

/// `Σ_{σ ∈ Sh(n,n-1)} sign(σ) [[X_σ(1..n)], X_σ(n+1..2n-1)]` as one scalar.
pub fn sh_jacobi_residual(n: usize, indices: &[GenIndex]) -> Result<Scalar> {
    if indices.len() != 2 * n - 1 {
        return Err(Error::BadArity { arity: indices.len(), reason: "sh-Jacobi needs 2n-1 indices" });
    }
    let total: GenIndex = indices.iter().sum();
    let mut acc = OpSum::new();
    for sh in shuffles(n) {
        let pick = |k: usize| indices[sh.sigma[k] - 1];
        let inner_args: Vec<OpSum> = (0..n).map(|k| OpSum::generator(pick(k))).collect();
        let inner = bracket_multilinear(&inner_args)?;
        if inner.is_zero() {
            continue;
        }
        let mut outer_args = vec![inner];
        outer_args.extend((n..2 * n - 1).map(|k| OpSum::generator(pick(k))));
        let outer = bracket_multilinear(&outer_args)?;
        let signed = if sh.parity > 0 { outer } else { outer.scale(&Scalar::from_int(-1)) };
        for (m, c) in signed.iter() {
            acc.add_term(c.clone(), m);
        }
    }
    collapse(&acc, total)
}

fn collapse(s: &OpSum, index: GenIndex) -> Result<Scalar> {
    match s.len() {
        0 => Ok(Scalar::zero()),
        1 => {
            s.get(index).cloned().ok_or_else(|| Error::InvalidInput(format!("residual off the expected index {index}")))
        }
        _ => Err(Error::InvalidInput("residual spans several generators".into())),
    }
}

/// `[Y, [X]] - Σ_k [X_1, .., [Y, X_k], .., X_n]` for `|Y| = n-1`, `|X| = n`.
pub fn fi_residual(y: &[GenIndex], x: &[GenIndex]) -> Result<Term> {
    let n = x.len();
    if n < 2 || y.len() + 1 != n {
        return Err(Error::BadArity { arity: n, reason: "FI needs |Y| = n-1 and |X| = n >= 2" });
    }
    let total: GenIndex = y.iter().sum::<GenIndex>() + x.iter().sum::<GenIndex>();
    let gens = |v: &[GenIndex]| v.iter().map(|&m| OpSum::generator(m)).collect::<Vec<_>>();

    let inner_x = bracket_multilinear(&gens(x))?;
    let mut lhs_args = gens(y);
    lhs_args.push(inner_x);
    let lhs = bracket_multilinear(&lhs_args)?;

    let mut rhs = OpSum::new();
    for k in 0..n {
        let mut yk = gens(y);
        yk.push(OpSum::generator(x[k]));
        let inner = bracket_multilinear(&yk)?;
        if inner.is_zero() {
            continue;
        }
        let mut args = gens(x);
        args[k] = inner;
        let t = bracket_multilinear(&args)?;
        for (m, c) in t.iter() {
            rhs.add_term(c.clone(), m);
        }
    }
    Ok(Term::new(collapse(&lhs.sub(&rhs), total)?, total))
}

/// `Y_i = L_{-i-1}` (i < n-1), `Y_{n-1} = L_{n(n-1)/2}`, `X_j = L_{j-1}`.
pub fn fi_counterexample_tuple(n: usize) -> (Vec<GenIndex>, Vec<GenIndex>) {
    let n_i = n as GenIndex;
    let mut y: Vec<GenIndex> = (1..=n_i - 2).map(|i| -i - 1).collect();
    y.push(n_i * (n_i - 1) / 2);
    let x: Vec<GenIndex> = (0..n_i).collect();
    (y, x)
}

/// The even-`n` fundamental-identity counterexample and its (nonzero) residual.
pub fn fi_counterexample_even(n: usize) -> Result<FiWitness> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::BadArity { arity: n, reason: "even-n counterexample needs even n >= 4" });
    }
    let (y, x) = fi_counterexample_tuple(n);
    let r = fi_residual(&y, &x)?;
    if r.is_zero() {
        return Err(Error::UnexpectedZero(n));
    }
    Ok((y, x, r))
}

/// First `(Y, X)` with strictly increasing entries in `[-w, w]` (lexicographic)
/// whose FI residual is nonzero.
pub fn find_fi_violation(n: usize, w: GenIndex) -> Result<Option<FiWitness>> {
    let window: Vec<GenIndex> = (-w..=w).collect();
    for y in combinations(&window, n - 1) {
        for x in combinations(&window, n) {
            let r = fi_residual(&y, &x)?;
            if !r.is_zero() {
                return Ok(Some((y, x, r)));
            }
        }
    }
    Ok(None)
}

/// All `k`-subsets of `items`, lexicographic.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let n = items.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// `(q^m + p^-m) [L_m, [L_n, L_k]] + cyclic`, all brackets the deformed
/// commutator with its standard weights.
pub fn deformed_jacobi2_residual(m: GenIndex, n: GenIndex, k: GenIndex) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, b, c) in [(m, n, k), (n, k, m), (k, m, n)] {
        let inner = bracket2(b, c);
        if inner.is_zero() {
            continue;
        }
        let outer = bracket2(a, inner.index);
        let weight = pq_monomial(0, a) + pq_monomial(-a, 0);
        acc = acc + weight * inner.coeff * outer.coeff;
    }
    acc
}

/// `[L_m, [L_n, L_k]_{(q^{n-k}, q^{k-n})}]_{(q^{2m-(n+k)}, q^{(n+k)-2m})} + cyclic`
/// in the `p -> q` limit.
///
/// The outer weights are not the standard ones for `[L_m, L_{n+k}]`, so the
/// outer commutator is evaluated as operator words on the specialized Fock
/// module; only the cyclic sum collapses onto a generator.
pub fn q_jacobi2_residual(m: GenIndex, n: GenIndex, k: GenIndex) -> Result<UniScalar> {
    let mut ws = WordSum::new(m + n + k);
    for (a, b, c) in [(m, n, k), (n, k, m), (k, m, n)] {
        let inner = bracket2(b, c);
        let j = inner.index;
        ws.add(vec![a, j], &inner.coeff * &pq_monomial(0, 2 * a - j));
        ws.add(vec![j, a], -(&inner.coeff * &pq_monomial(0, j - 2 * a)));
    }
    extract_structure_constant_q(&ws)
}

/// Classical Jacobi residual from the `p, q -> 1` limit of the structure constants.
pub fn classical_jacobi2_residual(m: GenIndex, n: GenIndex, k: GenIndex) -> Result<Rat> {
    let cv = |a: GenIndex, b: GenIndex| classical_value(&specialize_pq(&bracket2(a, b).coeff));
    let mut acc = Rat::from_integer(0.into());
    for (a, b, c) in [(m, n, k), (n, k, m), (k, m, n)] {
        acc += cv(b, c)? * cv(a, b + c)?;
    }
    Ok(acc)
}

/// Nonzero `[L_{Σ}, ...]`-shaped generator tuples are graded: every report
/// term lives on `L_{Σ}`. Convenience used by sweeps.
pub fn bracket_term(indices: &[GenIndex]) -> Result<Term> {
    bracket(indices)
}
