//! Ground truth for the closed forms: the deformed oscillator on an extended
//! Fock module with symbolic level.
//!
//! The module has basis `|ν + s⟩` for all integers `s`, with
//! `a|ν⟩ = [ν]|ν-1⟩`, `a†|ν⟩ = |ν+1⟩`, `N|ν⟩ = ν|ν⟩`, where `a†` is formally
//! invertible so that `L_m = -p^N (a†)^{m+1} a` makes sense for every `m`.
//! The level `ν` is kept symbolic through `P = p^ν` and `Q = q^ν`; an
//! identity between module coefficients therefore holds at every level.
//!
//! Brackets are built from their defining operator products ([`WordSum`]s),
//! applied to `|ν⟩`, and divided by the action of a single generator.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

use crate::algebra::{recursion_weights, GenIndex, Term};
use crate::error::{Error, Result};
use crate::ring::{
    embed_scalar, mod_shift, pq_monomial, project_scalar, project_uni, specialize_module, ModPoly, ModScalar, Rat,
    Scalar, UniScalar,
};

/// Operator product `L_{m_1} L_{m_2} ⋯` (rightmost acts first).
pub type Word = Vec<GenIndex>;

/// Scalar-weighted sum of words, all of the same total index `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSum {
    degree: GenIndex,
    entries: BTreeMap<Word, Scalar>,
}

impl WordSum {
    pub fn new(degree: GenIndex) -> Self {
        Self { degree, entries: BTreeMap::new() }
    }

    pub fn degree(&self) -> GenIndex {
        self.degree
    }

    /// Adds `c · word`. Panics if the word has the wrong total index.
    pub fn add(&mut self, word: Word, c: Scalar) {
        assert_eq!(word.iter().sum::<GenIndex>(), self.degree, "word {word:?} breaks grading");
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(word.clone()).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.entries.remove(&word);
        }
    }

    pub fn add_sum(&mut self, other: &WordSum) {
        for (w, c) in other.iter() {
            self.add(w.clone(), c.clone());
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, w: &[GenIndex]) -> Option<&Scalar> {
        self.entries.get(w)
    }

    /// `c · L_m · self`.
    pub fn left_mul(&self, m: GenIndex, c: &Scalar) -> WordSum {
        let mut out = WordSum::new(self.degree + m);
        for (w, v) in self.iter() {
            let mut nw = Vec::with_capacity(w.len() + 1);
            nw.push(m);
            nw.extend_from_slice(w);
            out.add(nw, v * c);
        }
        out
    }
}

/// `Σ_s c_s |ν + s⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModVector {
    entries: BTreeMap<i64, ModScalar>,
}

impl ModVector {
    /// The symbolic level vector `|ν⟩`.
    pub fn vacuum() -> Self {
        let mut v = Self::default();
        v.add(0, ModScalar::one());
        v
    }

    pub fn add(&mut self, shift: i64, c: ModScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(shift).or_insert_with(ModScalar::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.entries.remove(&shift);
        }
    }

    pub fn add_vector(&mut self, other: &ModVector, scale: &ModScalar) {
        for (s, c) in other.iter() {
            self.add(s, c * scale);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &ModScalar)> {
        self.entries.iter().map(|(s, c)| (*s, c))
    }

    pub fn get(&self, shift: i64) -> Option<&ModScalar> {
        self.entries.get(&shift)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn mp(terms: &[([i64; 4], i64)]) -> ModPoly {
    ModPoly::from_terms(terms.iter().map(|&(e, c)| (e, Rat::from_integer(c.into()))))
}

/// `[ν]_{p,q} = (Q - P^-1)/(q - p^-1)`.
pub fn level_number() -> ModScalar {
    ModScalar::new(mp(&[([0, 0, 0, 1], 1), ([0, 0, -1, 0], -1)]), 1)
}

/// Eigenvalue of `L_m` acting from `|ν⟩`: `L_m|ν⟩ = -[ν] p^{ν+m} |ν+m⟩`.
pub fn action_coefficient(m: GenIndex) -> ModScalar {
    // -(Q - P^-1) P p^m / (q - p^-1) = (p^m - P Q p^m) / (q - p^-1)
    ModScalar::new(mp(&[([m, 0, 0, 0], 1), ([m, 0, 1, 1], -1)]), 1)
}

/// `L_m v`.
pub fn fock_act(m: GenIndex, v: &ModVector) -> ModVector {
    let base = action_coefficient(m);
    let mut out = ModVector::default();
    for (s, c) in v.iter() {
        out.add(s + m, c * &mod_shift(&base, s));
    }
    out
}

/// Applies one word (rightmost factor first) to `v`.
pub fn apply_word(word: &[GenIndex], v: &ModVector) -> ModVector {
    word.iter().rev().fold(v.clone(), |acc, &m| fock_act(m, &acc))
}

/// Evaluates a word sum on `|ν⟩`.
pub fn word_act(ws: &WordSum) -> ModVector {
    let vac = ModVector::vacuum();
    let mut out = ModVector::default();
    for (w, c) in ws.iter() {
        out.add_vector(&apply_word(w, &vac), &embed_scalar(c));
    }
    out
}

fn lower(v: &ModVector) -> ModVector {
    let n = level_number();
    let mut out = ModVector::default();
    for (s, c) in v.iter() {
        out.add(s - 1, c * &mod_shift(&n, s));
    }
    out
}

fn raise(v: &ModVector) -> ModVector {
    let mut out = ModVector::default();
    for (s, c) in v.iter() {
        out.add(s + 1, c.clone());
    }
    out
}

/// `p^{-N}` (if `p_side`) or `q^N`, diagonal on `|ν+s⟩`.
fn number_power(v: &ModVector, p_side: bool) -> ModVector {
    let mut out = ModVector::default();
    for (s, c) in v.iter() {
        let f = if p_side {
            ModScalar::from_poly(mp(&[([-s, 0, -1, 0], 1)]))
        } else {
            ModScalar::from_poly(mp(&[([0, s, 0, 1], 1)]))
        };
        out.add(s, c * &f);
    }
    out
}

fn combine(a: &ModVector, b: &ModVector, b_scale: &ModScalar) -> ModVector {
    let mut out = a.clone();
    out.add_vector(b, b_scale);
    out
}

/// Result of checking the deformed oscillator relations on `|ν⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OscillatorReport {
    /// `(a a† - q a† a - p^{-N})|ν⟩`
    pub relation_q: ModVector,
    /// `(a a† - p^-1 a† a - q^N)|ν⟩`
    pub relation_p: ModVector,
    /// `[N, a] = -a` and `[N, a†] = a†` by grading.
    pub number_relations: bool,
}

impl OscillatorReport {
    pub fn passed(&self) -> bool {
        self.relation_q.is_zero() && self.relation_p.is_zero() && self.number_relations
    }
}

/// Verifies the oscillator relations as identities in the four-variable ring.
pub fn osc_relations_check() -> OscillatorReport {
    let vac = ModVector::vacuum();
    let aad = lower(&raise(&vac));
    let ada = raise(&lower(&vac));
    let minus_one = ModScalar::from_int(-1);
    let q = embed_scalar(&pq_monomial(0, 1));
    let pinv = embed_scalar(&pq_monomial(-1, 0));

    let relation_q = combine(&combine(&aad, &ada, &-&q), &number_power(&vac, true), &minus_one);
    let relation_p = combine(&combine(&aad, &ada, &-&pinv), &number_power(&vac, false), &minus_one);

    // N reads the level, so [N, X] = d X for an operator of degree d.
    // Check the degrees of a and a† on a spread of basis vectors.
    let mut probe = ModVector::default();
    for s in -3..=3 {
        probe.add(s, ModScalar::one());
    }
    let lowered: Vec<i64> = lower(&probe).iter().map(|(s, _)| s).collect();
    let raised: Vec<i64> = raise(&probe).iter().map(|(s, _)| s).collect();
    let number_relations = lowered == (-4..=2).collect::<Vec<_>>() && raised == (-2..=4).collect::<Vec<_>>();

    OscillatorReport { relation_q, relation_p, number_relations }
}

/// `q^m p^-n L_m L_n - q^n p^-m L_n L_m`.
pub fn bracket2_def(m: GenIndex, n: GenIndex) -> WordSum {
    let mut ws = WordSum::new(m + n);
    ws.add(vec![m, n], pq_monomial(-n, m));
    ws.add(vec![n, m], -pq_monomial(-m, n));
    ws
}

/// `p^m q^{m-(n+k)} L_m [L_n, L_k] + cyclic`.
pub fn bracket3_def(m: GenIndex, n: GenIndex, k: GenIndex) -> WordSum {
    let mut ws = WordSum::new(m + n + k);
    for (a, b, c) in [(m, n, k), (n, k, m), (k, m, n)] {
        ws.add_sum(&bracket2_def(b, c).left_mul(a, &pq_monomial(a, a - (b + c))));
    }
    ws
}

static DEF_CACHE: LazyLock<Mutex<HashMap<Vec<GenIndex>, Arc<WordSum>>>> = LazyLock::new(Default::default);

/// The defining `n`-bracket (`n >= 3`) as a fully expanded word sum:
/// `Σ_s (-1)^{s+1} (pq)^{x i_s + y(Σ - i_s)} L_{i_s} [.., L̂_{i_s}, ..]`.
/// Memoized per ordered index tuple.
pub fn bracketn_def(indices: &[GenIndex]) -> Result<Arc<WordSum>> {
    let n = indices.len();
    if n < 3 {
        return Err(Error::BadArity { arity: n, reason: "defining n-bracket needs n >= 3" });
    }
    if let Some(ws) = DEF_CACHE.lock().expect("cache poisoned").get(indices) {
        return Ok(ws.clone());
    }
    let ws = if n == 3 {
        bracket3_def(indices[0], indices[1], indices[2])
    } else {
        let w = recursion_weights(n)?;
        let total: GenIndex = indices.iter().sum();
        let mut ws = WordSum::new(total);
        for (s, &i_s) in indices.iter().enumerate() {
            let rest: Vec<GenIndex> = indices.iter().enumerate().filter(|(j, _)| *j != s).map(|(_, v)| *v).collect();
            let inner = bracketn_def(&rest)?;
            let e = w.x * i_s + w.y * (total - i_s);
            let mut c = pq_monomial(e, e);
            if s % 2 == 1 {
                c = -c;
            }
            ws.add_sum(&inner.left_mul(i_s, &c));
        }
        ws
    };
    let ws = Arc::new(ws);
    DEF_CACHE.lock().expect("cache poisoned").entry(indices.to_vec()).or_insert_with(|| ws.clone());
    Ok(ws)
}

/// Divides the single-shift module image of `ws` by the action of
/// `L_{degree}`, returning the coefficient `c` with `ws|ν⟩ = c L_{degree}|ν⟩`.
pub fn extract_structure_constant(ws: &WordSum) -> Result<Term> {
    let s = ws.degree();
    let v = word_act(ws);
    let Some(c) = single_component(&v, s)? else {
        return Ok(Term::zero(s));
    };
    let quot = c.checked_div(&action_coefficient(s)).map_err(|_| Error::NotProportional(c.to_text()))?;
    let coeff = project_scalar(&quot).ok_or_else(|| Error::NotProportional(quot.to_text()))?;
    Ok(Term::new(coeff, s))
}

/// As [`extract_structure_constant`], but after the limit `p -> q` of the
/// module (`P -> Q`). Works for word sums that only collapse at `p = q`.
pub fn extract_structure_constant_q(ws: &WordSum) -> Result<UniScalar> {
    let s = ws.degree();
    let v = word_act(ws);
    let Some(c) = single_component(&v, s)? else {
        return Ok(UniScalar::zero());
    };
    let c = specialize_module(c);
    if c.is_zero() {
        return Ok(UniScalar::zero());
    }
    let a = specialize_module(&action_coefficient(s));
    let quot = c.checked_div(&a).map_err(|_| Error::NotProportional(c.to_text()))?;
    project_uni(&quot).ok_or_else(|| Error::NotProportional(quot.to_text()))
}

fn single_component(v: &ModVector, s: i64) -> Result<Option<&ModScalar>> {
    match v.len() {
        0 => Ok(None),
        1 => v.get(s).map(Some).ok_or_else(|| Error::NotProportional(format!("image lands off shift {s}"))),
        _ => Err(Error::NotProportional("image spans several levels".into())),
    }
}

/// The recursive `n`-bracket's structure constant (`n >= 2`).
pub fn recursive_bracket(indices: &[GenIndex]) -> Result<Term> {
    match indices.len() {
        2 => extract_structure_constant(&bracket2_def(indices[0], indices[1])),
        _ => extract_structure_constant(bracketn_def(indices)?.as_ref()),
    }
}

/// `p -> q` structure constant of the recursive bracket, computed on the
/// specialized module rather than by specializing the `(p,q)` result.
pub fn recursive_bracket_q(indices: &[GenIndex]) -> Result<UniScalar> {
    match indices.len() {
        2 => extract_structure_constant_q(&bracket2_def(indices[0], indices[1])),
        _ => extract_structure_constant_q(bracketn_def(indices)?.as_ref()),
    }
}

#[cfg(test)]
mod tests;
