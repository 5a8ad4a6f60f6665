//! Check suites shared by the CLI and the acceptance tests.
//!
//! Every suite returns one [`ResultEntry`] per elementary check, in a fixed
//! order that does not depend on the worker pool.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{bracket2, bracket3_closed, bracketn_closed, closed_form_unsigned, sign, sign_ratio, GenIndex};
use crate::error::Result;
use crate::identities::{
    check_skew, classical_jacobi2_residual, combinations, deformed_jacobi2_residual, fi_counterexample_even,
    fi_residual, find_fi_violation, q_jacobi2_residual, sh_jacobi_residual, Verdict,
};
use crate::oracle::{
    bracket2_def, extract_structure_constant, osc_relations_check, recursive_bracket, recursive_bracket_q,
};
use crate::ring::{classical_value, pq_number, q_number, rat, specialize_pq};
use crate::subalgebra::{analyze, canonical_basis, canonical_coeff, search};

/// One elementary check in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResultEntry {
    pub kind: String,
    pub input: Value,
    /// Exact residual (or computed value) in canonical text form.
    pub residual: String,
    pub verdict: Verdict,
}

impl ResultEntry {
    pub fn new(kind: &str, input: Value, residual: impl Into<String>, pass: bool) -> Self {
        Self {
            kind: kind.to_string(),
            input,
            residual: residual.into(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn error(kind: &str, input: Value, e: crate::Error) -> Self {
        Self::new(kind, input, format!("error: {e}"), false)
    }
}

/// All tuples of length `len` with entries in `[lo, hi]`, lexicographic.
pub fn all_tuples(lo: GenIndex, hi: GenIndex, len: usize) -> Vec<Vec<GenIndex>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (lo..=hi).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Tuples of `all_tuples` without repeated entries.
pub fn distinct_tuples(lo: GenIndex, hi: GenIndex, len: usize) -> Vec<Vec<GenIndex>> {
    all_tuples(lo, hi, len).into_iter().filter(|t| !crate::algebra::has_repeat(t)).collect()
}

/// `count` tuples with entries uniform in `[-w, w]`, reproducible from `seed`.
pub fn sampled_tuples(seed: u64, count: usize, w: GenIndex, len: usize) -> Vec<Vec<GenIndex>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..len).map(|_| rng.gen_range(-w..=w)).collect()).collect()
}

fn par_map<T: Sync, F>(items: &[T], f: F) -> Vec<ResultEntry>
where
    F: Fn(&T) -> ResultEntry + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Oscillator relations on the symbolic-level Fock module.
pub fn oscillator_suite() -> Vec<ResultEntry> {
    let r = osc_relations_check();
    let text = |v: &crate::oracle::ModVector| if v.is_zero() { "0".to_string() } else { format!("{} terms", v.len()) };
    vec![
        ResultEntry::new("oscillator", json!("a a+ - q a+ a - p^-N"), text(&r.relation_q), r.relation_q.is_zero()),
        ResultEntry::new("oscillator", json!("a a+ - p^-1 a+ a - q^N"), text(&r.relation_p), r.relation_p.is_zero()),
        ResultEntry::new("oscillator", json!("[N, a], [N, a+]"), "0", r.number_relations),
    ]
}

/// Oracle value of the defining commutator against the closed 2-bracket, and
/// its skew-symmetry, on `[-w, w]^2`.
pub fn bracket2_suite(w: GenIndex) -> Vec<ResultEntry> {
    let pairs = all_tuples(-w, w, 2);
    let mut out = par_map(&pairs, |t| {
        let (m, n) = (t[0], t[1]);
        match extract_structure_constant(&bracket2_def(m, n)) {
            Ok(o) => {
                let c = bracket2(m, n);
                let diff = if o.index == c.index { &o.coeff - &c.coeff } else { o.coeff.clone() };
                ResultEntry::new("bracket2-oracle", json!(t), diff.to_text(), diff.is_zero() && o.index == m + n)
            }
            Err(e) => ResultEntry::error("bracket2-oracle", json!(t), e),
        }
    });
    out.extend(par_map(&pairs, |t| {
        let r = &bracket2(t[0], t[1]).coeff + &bracket2(t[1], t[0]).coeff;
        ResultEntry::new("bracket2-skew", json!(t), r.to_text(), r.is_zero())
    }));
    out
}

/// `(p,q)`-deformed Jacobi residuals on `[-w, w]^3`.
pub fn pq_jacobi_suite(w: GenIndex) -> Vec<ResultEntry> {
    par_map(&all_tuples(-w, w, 3), |t| {
        let r = deformed_jacobi2_residual(t[0], t[1], t[2]);
        ResultEntry::new("pq-jacobi", json!(t), r.to_text(), r.is_zero())
    })
}

/// `q`-deformed Jacobi residuals (operator level, `p -> q`) on `[-w, w]^3`.
pub fn q_jacobi_suite(w: GenIndex) -> Vec<ResultEntry> {
    par_map(&all_tuples(-w, w, 3), |t| match q_jacobi2_residual(t[0], t[1], t[2]) {
        Ok(r) => ResultEntry::new("q-jacobi", json!(t), r.to_text(), r.is_zero()),
        Err(e) => ResultEntry::error("q-jacobi", json!(t), e),
    })
}

/// Classical Jacobi residuals on `[-w, w]^3`.
pub fn classical_jacobi_suite(w: GenIndex) -> Vec<ResultEntry> {
    par_map(&all_tuples(-w, w, 3), |t| match classical_jacobi2_residual(t[0], t[1], t[2]) {
        Ok(r) => ResultEntry::new("classical-jacobi", json!(t), r.to_string(), r == rat(0)),
        Err(e) => ResultEntry::error("classical-jacobi", json!(t), e),
    })
}

/// Closed form against the oracle's recursive bracket on `tuples`.
///
/// For `n = 3` the explicit six-term 3-bracket is a third route. For
/// `n >= 4` each distinct tuple also checks divisibility of the determinant
/// and that the oracle/closed-form ratio equals the tabulated `sign(n)`.
pub fn closed_form_suite(n: usize, tuples: &[Vec<GenIndex>]) -> Vec<ResultEntry> {
    let expected_sign = sign(n);
    par_map(tuples, |t| {
        let run = || -> Result<ResultEntry> {
            let closed = bracketn_closed(t)?;
            let oracle = recursive_bracket(t)?;
            let mut diff = &closed.coeff - &oracle.coeff;
            if n == 3 {
                let explicit = bracket3_closed(t[0], t[1], t[2]);
                let d2 = &closed.coeff - &explicit.coeff;
                if diff.is_zero() {
                    diff = d2;
                }
            }
            let mut ok = diff.is_zero() && (closed.is_zero() || closed.index == oracle.index);
            if n >= 4 && !crate::algebra::has_repeat(t) {
                closed_form_unsigned(t)?;
                let s = sign_ratio(t)?;
                ok &= expected_sign.as_ref().map(|&e| e == s).unwrap_or(false);
            }
            Ok(ResultEntry::new("closed-form", json!(t), diff.to_text(), ok))
        };
        run().unwrap_or_else(|e| ResultEntry::error("closed-form", json!(t), e))
    })
}

/// Skew-symmetry of the closed bracket on `tuples`.
pub fn skew_suite(tuples: &[Vec<GenIndex>]) -> Vec<ResultEntry> {
    par_map(tuples, |t| match check_skew(t) {
        Ok(r) => ResultEntry::new("skew", json!(t), r.residual.clone(), r.passed()),
        Err(e) => ResultEntry::error("skew", json!(t), e),
    })
}

/// sh-Jacobi residuals on `tuples` of length `2n - 1`.
pub fn sh_jacobi_suite(n: usize, tuples: &[Vec<GenIndex>]) -> Vec<ResultEntry> {
    par_map(tuples, |t| match sh_jacobi_residual(n, t) {
        Ok(r) => ResultEntry::new("sh-jacobi", json!(t), r.to_text(), r.is_zero()),
        Err(e) => ResultEntry::error("sh-jacobi", json!(t), e),
    })
}

/// Searches `[-w, w]` for an FI violation; passes when one is found.
pub fn fi_search_entry(n: usize, w: GenIndex) -> ResultEntry {
    let input = json!({ "n": n, "window": w });
    match find_fi_violation(n, w) {
        Ok(Some((y, x, r))) => {
            ResultEntry::new("fi-search", json!({ "n": n, "window": w, "Y": y, "X": x }), r.coeff.to_text(), true)
        }
        Ok(None) => ResultEntry::new("fi-search", input, "0", false),
        Err(e) => ResultEntry::error("fi-search", input, e),
    }
}

/// The even-`n` counterexample; passes when its residual is nonzero.
pub fn fi_counterexample_entry(n: usize) -> ResultEntry {
    match fi_counterexample_even(n) {
        Ok((y, x, r)) => {
            ResultEntry::new("fi-counterexample", json!({ "n": n, "Y": y, "X": x }), r.coeff.to_text(), true)
        }
        Err(e) => ResultEntry::error("fi-counterexample", json!({ "n": n }), e),
    }
}

/// One FI residual with an explicit expectation.
pub fn fi_entry(y: &[GenIndex], x: &[GenIndex], expect_nonzero: bool) -> ResultEntry {
    let input = json!({ "Y": y, "X": x, "expect": if expect_nonzero { "nonzero" } else { "zero" } });
    match fi_residual(y, x) {
        Ok(r) => ResultEntry::new("fi", input, r.coeff.to_text(), r.is_zero() != expect_nonzero),
        Err(e) => ResultEntry::error("fi", input, e),
    }
}

/// `p -> q` and classical limits of the 2-bracket on `[-w, w]^2`.
pub fn bracket2_limits_suite(w: GenIndex) -> Vec<ResultEntry> {
    par_map(&all_tuples(-w, w, 2), |t| {
        let (m, n) = (t[0], t[1]);
        let spec = specialize_pq(&bracket2(m, n).coeff);
        let d = &spec - &q_number(m - n);
        let ok_q = d.is_zero();
        match classical_value(&spec) {
            Ok(v) => {
                let ok_c = v == rat(m - n);
                let residual = if ok_q { (v - rat(m - n)).to_string() } else { d.to_text() };
                ResultEntry::new("limit-2", json!(t), residual, ok_q && ok_c)
            }
            Err(e) => ResultEntry::error("limit-2", json!(t), e),
        }
    })
}

/// `p -> q` image of the closed `n`-bracket against the oracle evaluated on
/// the specialized module, on `tuples`.
pub fn odd_limits_suite(tuples: &[Vec<GenIndex>]) -> Vec<ResultEntry> {
    par_map(tuples, |t| {
        let run = || -> Result<ResultEntry> {
            let closed = specialize_pq(&bracketn_closed(t)?.coeff);
            let rec = recursive_bracket_q(t)?;
            let d = &closed - &rec;
            Ok(ResultEntry::new("limit-n", json!(t), d.to_text(), d.is_zero()))
        };
        run().unwrap_or_else(|e| ResultEntry::error("limit-n", json!(t), e))
    })
}

/// Canonical subalgebras for each `n` in `ns`.
pub fn canonical_suite(ns: &[usize]) -> Vec<ResultEntry> {
    par_map(ns, |&n| {
        let run = || -> Result<ResultEntry> {
            let b = canonical_basis(n)?;
            let c = canonical_coeff(n)?;
            let r = analyze(&b, n)?;
            let ok = r.closed && r.fi_pass == Some(true) && r.iso_canonical == Some(true) && !c.is_zero();
            Ok(ResultEntry::new("canonical", json!({ "n": n, "indices": b }), c.to_text(), ok))
        };
        run().unwrap_or_else(|e| ResultEntry::error("canonical", json!({ "n": n }), e))
    })
}

/// Bounded subalgebra search: one entry per found set and one summary entry
/// that fails if any `(n+1)`-element set passes.
pub fn search_suite(n: usize, w: GenIndex) -> Vec<ResultEntry> {
    let res = match search(w, n, n + 1) {
        Ok(r) => r,
        Err(e) => return vec![ResultEntry::error("subalgebra-search", json!({ "n": n, "window": w }), e)],
    };
    let mut out: Vec<ResultEntry> = res
        .found
        .iter()
        .map(|f| {
            let sum: GenIndex = f.indices.iter().sum();
            let ok = f.iso_canonical == Some(true) && f.ideal_at == Some(sum);
            ResultEntry::new(
                "subalgebra",
                json!({ "n": n, "indices": f.indices, "ideal_at": f.ideal_at }),
                f.coeff.clone().unwrap_or_default(),
                ok,
            )
        })
        .collect();
    let larger: Vec<&Vec<GenIndex>> = res.violations.iter().map(|v| &v.indices).collect();
    out.push(ResultEntry::new(
        "no-larger-subalgebra",
        json!({ "n": n, "window": w, "found": res.found.len(), "closed_larger": res.closed_larger }),
        if larger.is_empty() { "0".to_string() } else { format!("{larger:?}") },
        larger.is_empty(),
    ));
    out
}

/// Byte-exact pins of canonical serialization.
pub fn pins_suite() -> Vec<ResultEntry> {
    let b = bracket3_closed(0, 1, 2);
    let text = b.coeff.to_text();
    let n1 = pq_number(-1).to_text();
    vec![
        ResultEntry::new(
            "pin",
            json!("bracket3(0,1,2)"),
            format!("{text} @ L_{}", b.index),
            text == "q^-2 - p^2" && b.index == 3,
        ),
        ResultEntry::new("pin", json!("pq_number(-1)"), n1.clone(), n1 == "-p*q^-1"),
    ]
}

/// Sweep sizes for the acceptance criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// The full acceptance scale.
    Desk,
    /// Reduced windows for quick runs.
    Smoke,
}

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub entries: Vec<ResultEntry>,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(ResultEntry::passed)
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| !e.passed()).count()
    }

    /// Collapses the criterion into one entry: the first failing residual, or `0`.
    pub fn summary_entry(&self) -> ResultEntry {
        let first_bad = self.entries.iter().find(|e| !e.passed());
        ResultEntry::new(
            &format!("criterion-{}", self.id),
            json!({ "name": self.name, "checks": self.entries.len(), "failed": self.failures() }),
            first_bad.map(|e| format!("{} {}: {}", e.kind, e.input, e.residual)).unwrap_or_else(|| "0".into()),
            self.passed(),
        )
    }
}

pub const CRITERIA: [(u8, &str); 8] = [
    (1, "oscillator realization"),
    (2, "2-bracket"),
    (3, "closed form"),
    (4, "sh-Jacobi"),
    (5, "not n-Lie"),
    (6, "limits"),
    (7, "subalgebras"),
    (8, "regression pins"),
];

/// Runs acceptance criterion `id` (1 to 8) at `level`.
pub fn run_criterion(id: u8, level: Level, seed: u64) -> CriterionOutcome {
    let desk = level == Level::Desk;
    let entries = match id {
        1 => oscillator_suite(),
        2 => {
            let mut e = bracket2_suite(if desk { 4 } else { 2 });
            e.extend(pq_jacobi_suite(if desk { 3 } else { 2 }));
            e
        }
        3 => {
            let w3 = if desk { 3 } else { 2 };
            let mut e = closed_form_suite(3, &all_tuples(-w3, w3, 3));
            e.extend(closed_form_suite(4, &distinct_tuples(-2, 2, 4)));
            let five = if desk { distinct_tuples(-2, 2, 5) } else { vec![vec![-2, -1, 0, 1, 2]] };
            e.extend(closed_form_suite(5, &five));
            e
        }
        4 => {
            let mut e = sh_jacobi_suite(3, &all_tuples(-2, 2, 5));
            e.extend(sh_jacobi_suite(4, &if desk { all_tuples(-1, 2, 7) } else { all_tuples(0, 1, 7) }));
            e.extend(sh_jacobi_suite(5, &sampled_tuples(seed, if desk { 200 } else { 10 }, 2, 9)));
            e
        }
        5 => {
            let mut e = vec![fi_search_entry(3, 2), fi_counterexample_entry(4)];
            if desk {
                e.push(fi_counterexample_entry(6));
            }
            e
        }
        6 => {
            let mut e = bracket2_limits_suite(if desk { 5 } else { 2 });
            e.extend(odd_limits_suite(&combinations(&(-2..=2).collect::<Vec<_>>(), 3)));
            let fives = if desk { combinations(&(-3..=3).collect::<Vec<_>>(), 5) } else { vec![vec![-2, -1, 0, 1, 2]] };
            e.extend(odd_limits_suite(&fives));
            e.extend(q_jacobi_suite(2));
            e.extend(classical_jacobi_suite(if desk { 3 } else { 2 }));
            e
        }
        7 => {
            let mut e = canonical_suite(&[3, 4, 5]);
            e.extend(search_suite(3, if desk { 3 } else { 2 }));
            e
        }
        8 => pins_suite(),
        _ => Vec::new(),
    };
    let name = CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1).unwrap_or("unknown");
    CriterionOutcome { id, name, entries }
}
