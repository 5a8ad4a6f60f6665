//! n-Lie subalgebras spanned by generators.
//!
//! A candidate is a strictly increasing set of generator indices. Brackets of
//! generators collapse onto single generators, so closure, the fundamental
//! identity and the Filippov matrix are all finite exact computations.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{bracket, det_cofactor, sign, GenIndex};
use crate::error::{Error, Result};
use crate::identities::{combinations, fi_residual, FiWitness};
use crate::ring::{pq_monomial, LPoly, Rat, Scalar};

/// Checks that `s` is strictly increasing and large enough for arity `n`.
pub fn validate_index_set(s: &[GenIndex], n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::BadArity { arity: n, reason: "subalgebra checks need n >= 3" });
    }
    if !s.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(format!("index set {s:?} must be strictly increasing")));
    }
    if s.len() < n {
        return Err(Error::InvalidInput(format!("index set {s:?} has fewer than {n} elements")));
    }
    Ok(())
}

/// First `n`-subset of `s` whose bracket is nonzero and lands outside `s`.
pub fn closure_violation(s: &[GenIndex], n: usize) -> Result<Option<Vec<GenIndex>>> {
    validate_index_set(s, n)?;
    for t in combinations(s, n) {
        let b = bracket(&t)?;
        if !b.is_zero() && s.binary_search(&b.index).is_err() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// First `(Y, X)` drawn from `s` with a nonzero fundamental-identity residual.
///
/// Both sides of the identity are skew-symmetric in `Y` and in `X`, so picks
/// with a repeat inside `Y` or inside `X` give zero and are skipped. Overlaps
/// between `Y` and `X` are kept.
pub fn fi_violation(s: &[GenIndex], n: usize) -> Result<Option<FiWitness>> {
    validate_index_set(s, n)?;
    let xs = combinations(s, n);
    for y in combinations(s, n - 1) {
        for x in &xs {
            let r = fi_residual(&y, x)?;
            if !r.is_zero() {
                return Ok(Some((y, x.clone(), r)));
            }
        }
    }
    Ok(None)
}

/// `{-k+1, ..., k}` for `n = 2k`, `{-k, ..., k}` for `n = 2k + 1`.
pub fn canonical_basis(n: usize) -> Result<Vec<GenIndex>> {
    if n < 3 {
        return Err(Error::BadArity { arity: n, reason: "canonical subalgebra needs n >= 3" });
    }
    let k = (n / 2) as GenIndex;
    Ok(if n.is_multiple_of(2) { (-k + 1..=k).collect() } else { (-k..=k).collect() })
}

fn mono(a: i64, b: i64) -> LPoly {
    LPoly::monomial([a, b], Rat::from_integer(1.into()))
}

/// Determinant matrix of the canonical bracket, written out row by row:
/// rows `p^{-(2k-2-t) i} q^{t i}` for `t < 2k-1` and a last row `p^i q^{(2k-1) i}`
/// when `n = 2k`; rows `p^{-(2k-t) i} q^{t i}` for `t = 0..2k` when `n = 2k + 1`.
pub fn canonical_matrix(n: usize) -> Result<Vec<Vec<LPoly>>> {
    let basis = canonical_basis(n)?;
    let k = (n / 2) as i64;
    let rows = if n.is_multiple_of(2) {
        (0..2 * k)
            .map(|t| {
                basis
                    .iter()
                    .map(|&i| if t == 2 * k - 1 { mono(i, (2 * k - 1) * i) } else { mono(-(2 * k - 2 - t) * i, t * i) })
                    .collect()
            })
            .collect()
    } else {
        (0..=2 * k).map(|t| basis.iter().map(|&i| mono(-(2 * k - t) * i, t * i)).collect()).collect()
    };
    Ok(rows)
}

/// Structure constant of the canonical `n`-dimensional subalgebra.
///
/// Evaluated through the general closed form and cross-checked against the
/// explicit determinant of [`canonical_matrix`] with prefactor
/// `(p q^-1)^{k^2-k}` (even `n`) or none (odd `n`).
pub fn canonical_coeff(n: usize) -> Result<Scalar> {
    let basis = canonical_basis(n)?;
    let general = bracket(&basis)?.coeff;
    let k = (n / 2) as i64;
    let det = Scalar::new(det_cofactor(&canonical_matrix(n)?), n as u32 - 1);
    let pre = if n.is_multiple_of(2) { pq_monomial(k * k - k, -(k * k - k)) } else { Scalar::one() };
    let mut explicit = pre * det;
    if sign(n)? < 0 {
        explicit = -explicit;
    }
    if explicit != general {
        return Err(Error::InvalidInput(format!(
            "canonical coefficient mismatch for n = {n}: {} vs {}",
            general, explicit
        )));
    }
    if general.is_zero() {
        return Err(Error::ZeroCoefficient(n));
    }
    Ok(general)
}

/// For `|s| = n`: the bracket target `t` if `[L_s] = c L_t` with `c != 0`
/// and `t ∈ s`, which is the shape `[B_1, ..., B_n] = B_1` after rescaling.
pub fn iso_canonical_target(s: &[GenIndex], n: usize) -> Result<Option<GenIndex>> {
    validate_index_set(s, n)?;
    if s.len() != n {
        return Err(Error::InvalidInput(format!("isomorphism check needs exactly {n} indices")));
    }
    let b = bracket(s)?;
    Ok((!b.is_zero() && s.binary_search(&b.index).is_ok()).then_some(b.index))
}

/// Whether `span{L_t}` is an ideal of the span of `s`.
pub fn ideal_check(s: &[GenIndex], n: usize, t: GenIndex) -> Result<bool> {
    validate_index_set(s, n)?;
    if s.binary_search(&t).is_err() {
        return Err(Error::InvalidInput(format!("{t} is not in {s:?}")));
    }
    let rest: Vec<GenIndex> = s.iter().copied().filter(|&i| i != t).collect();
    for others in combinations(&rest, n - 1) {
        let mut args = others;
        args.push(t);
        let b = bracket(&args)?;
        if !b.is_zero() && b.index != t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coordinates of `L^j = (-1)^{n+j+1} [L_{s_1}, .., \hat{L}_{s_j}, .., L_{s_{n+1}}]`
/// in the basis `s`: column `j` holds `L^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FMatrix {
    pub indices: Vec<GenIndex>,
    pub entries: Vec<Vec<Scalar>>,
}

impl FMatrix {
    pub fn is_symmetric(&self) -> bool {
        let m = self.entries.len();
        (0..m).all(|r| (r + 1..m).all(|c| self.entries[r][c] == self.entries[c][r]))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Scalar::is_zero)
    }
}

/// Filippov matrix of an `(n+1)`-element set and its symmetry verdict.
pub fn filippov_matrix(s: &[GenIndex], n: usize) -> Result<(FMatrix, bool)> {
    validate_index_set(s, n)?;
    if s.len() != n + 1 {
        return Err(Error::InvalidInput(format!("Filippov matrix needs exactly {} indices", n + 1)));
    }
    let dim = n + 1;
    let mut entries = vec![vec![Scalar::zero(); dim]; dim];
    for (j, skipped) in s.iter().enumerate() {
        let others: Vec<GenIndex> = s.iter().copied().filter(|v| v != skipped).collect();
        let b = bracket(&others)?;
        if b.is_zero() {
            continue;
        }
        if let Ok(r) = s.binary_search(&b.index) {
            // one-based j: (-1)^{n + j + 1} with j -> j + 1
            let c = if (n + j).is_multiple_of(2) { b.coeff } else { -b.coeff };
            entries[r][j] = c;
        }
    }
    let m = FMatrix { indices: s.to_vec(), entries };
    let sym = m.is_symmetric();
    Ok((m, sym))
}

/// Structured verdict for one candidate index set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraReport {
    pub indices: Vec<GenIndex>,
    pub n: usize,
    pub closed: bool,
    /// `None` when closure failed and the identity was not checked.
    pub fi_pass: Option<bool>,
    /// Only for `|indices| = n`.
    pub iso_canonical: Option<bool>,
    /// Canonical text of the bracket coefficient, for `|indices| = n`.
    pub coeff: Option<String>,
    /// Target of the one-dimensional ideal, when one was confirmed.
    pub ideal_at: Option<GenIndex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Vec<GenIndex>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    /// Filippov matrix symmetry, for `|indices| = n + 1` after closure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
}

impl SubalgebraReport {
    /// Closed under the bracket and satisfies the fundamental identity.
    pub fn is_subalgebra(&self) -> bool {
        self.closed && self.fi_pass == Some(true)
    }
}

/// Runs closure, the fundamental identity and the size-specific checks.
pub fn analyze(s: &[GenIndex], n: usize) -> Result<SubalgebraReport> {
    validate_index_set(s, n)?;
    let violation = closure_violation(s, n)?;
    let closed = violation.is_none();
    let mut rep = SubalgebraReport {
        indices: s.to_vec(),
        n,
        closed,
        fi_pass: None,
        iso_canonical: None,
        coeff: None,
        ideal_at: None,
        violation,
        residual: None,
        symmetric: None,
    };
    if s.len() == n {
        let b = bracket(s)?;
        rep.coeff = Some(b.coeff.to_text());
        rep.iso_canonical = Some(iso_canonical_target(s, n)?.is_some());
        if closed && !b.is_zero() && ideal_check(s, n, b.index)? {
            rep.ideal_at = Some(b.index);
        }
    }
    if closed {
        let fi = fi_violation(s, n)?;
        rep.fi_pass = Some(fi.is_none());
        rep.residual = fi.map(|(_, _, r)| r.coeff.to_text());
        if s.len() == n + 1 {
            rep.symmetric = Some(filippov_matrix(s, n)?.1);
        }
    }
    Ok(rep)
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub window: GenIndex,
    pub max_dim: usize,
    /// Passing `n`-element sets, lexicographic.
    pub found: Vec<SubalgebraReport>,
    /// Passing `(n+1)`-element sets; expected to be empty.
    pub violations: Vec<SubalgebraReport>,
    /// Number of `(n+1)`-element candidates that were closed.
    pub closed_larger: usize,
}

/// Enumerates all `n`- and (if `max_dim = n + 1`) `(n+1)`-element index sets in
/// `[-w, w]` and reports the ones that are `n`-Lie subalgebras.
pub fn search(w: GenIndex, n: usize, max_dim: usize) -> Result<SearchResult> {
    if n < 3 {
        return Err(Error::BadArity { arity: n, reason: "subalgebra search needs n >= 3" });
    }
    if max_dim != n && max_dim != n + 1 {
        return Err(Error::InvalidInput(format!("max_dim must be {n} or {}", n + 1)));
    }
    if w < 0 || (2 * w + 1) < n as GenIndex {
        return Err(Error::InvalidInput(format!("window {w} too small for n = {n}")));
    }
    let window: Vec<GenIndex> = (-w..=w).collect();
    let run = |size: usize| -> Result<Vec<SubalgebraReport>> {
        combinations(&window, size).par_iter().map(|s| analyze(s, n)).collect()
    };
    let found = run(n)?.into_iter().filter(SubalgebraReport::is_subalgebra).collect();
    let mut out = SearchResult { n, window: w, max_dim, found, ..Default::default() };
    if max_dim == n + 1 {
        let larger = run(n + 1)?;
        out.closed_larger = larger.iter().filter(|r| r.closed).count();
        out.violations = larger.into_iter().filter(SubalgebraReport::is_subalgebra).collect();
    }
    Ok(out)
}
