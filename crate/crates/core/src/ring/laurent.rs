//! Sparse multivariate Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial. Arrays order lexicographically,
/// which is the canonical term order.
pub type Exponent<const N: usize> = [i64; N];

/// A finite sum `Σ c · x_0^{e_0} ⋯ x_{N-1}^{e_{N-1}}` with nonzero rational
/// coefficients and integer (possibly negative) exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<const N: usize> {
    terms: BTreeMap<Exponent<N>, Rat>,
}

impl<const N: usize> Laurent<N> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(exp: Exponent<N>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (Exponent<N>, Rat)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; N]).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent<N>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponent<N>) -> Option<&Rat> {
        self.terms.get(exp)
    }

    pub fn leading(&self) -> Option<(&Exponent<N>, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, exp: Exponent<N>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies by the single term `c · x^exp`.
    pub fn mul_monomial(&self, exp: &Exponent<N>, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(e, v)| (add_exp(e, exp), v * c)).collect();
        Self { terms }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.mul_monomial(&[0; N], c)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Per-variable (min, max) exponent over the support. `None` for zero.
    pub fn exponent_bounds(&self) -> Option<[(i64, i64); N]> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut b = [(0, 0); N];
        for i in 0..N {
            b[i] = (first[i], first[i]);
        }
        for e in it {
            for i in 0..N {
                b[i].0 = b[i].0.min(e[i]);
                b[i].1 = b[i].1.max(e[i]);
            }
        }
        Some(b)
    }

    /// Exact quotient `self / d` in the Laurent ring.
    ///
    /// Lex-leading-term division. The quotient's exponents in every variable are
    /// confined to a box fixed by the degree additivity of the domain, so a
    /// leading term falling outside it proves non-divisibility.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let Some((lt_d, lc_d)) = d.leading() else {
            return Err(Error::InvalidInput("division by zero polynomial".into()));
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if d.len() == 1 {
            let inv_c = lc_d.recip();
            let inv_e = neg_exp(lt_d);
            return Ok(self.mul_monomial(&inv_e, &inv_c));
        }
        let ba = self.exponent_bounds().expect("nonzero");
        let bd = d.exponent_bounds().expect("nonzero");
        let mut bx = [(0i64, 0i64); N];
        for i in 0..N {
            bx[i] = (ba[i].0 - bd[i].0, ba[i].1 - bd[i].1);
            if bx[i].0 > bx[i].1 {
                return Err(Error::NotDivisible);
            }
        }
        let lt_d = *lt_d;
        let lc_d = lc_d.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((lt_r, lc_r)) = rem.leading() {
            let qe = sub_exp(lt_r, &lt_d);
            if (0..N).any(|i| qe[i] < bx[i].0 || qe[i] > bx[i].1) {
                return Err(Error::NotDivisible);
            }
            let qc = lc_r / &lc_d;
            for (e, c) in d.terms.iter() {
                rem.add_term(add_exp(e, &qe), -(c * &qc));
            }
            quot.terms.insert(qe, qc);
        }
        Ok(quot)
    }

    /// Applies a monomial map `x^e ↦ x^{f(e)}`, collecting like terms.
    pub fn map_exponents<const M: usize>(&self, f: impl Fn(&Exponent<N>) -> Exponent<M>) -> Laurent<M> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Canonical text `c1*x^a1*y^b1 + ...` using the given variable names.
    pub fn to_text(&self, vars: &[&str; N]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(vars.iter())
                .filter(|(k, _)| **k != 0)
                .map(|(k, v)| if *k == 1 { v.to_string() } else { format!("{v}^{k}") })
                .collect();
            let negative = c.is_negative();
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", mag, mono.join("*"))
            };
            match (i, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

fn add_exp<const N: usize>(a: &Exponent<N>, b: &Exponent<N>) -> Exponent<N> {
    std::array::from_fn(|i| a[i] + b[i])
}

fn sub_exp<const N: usize>(a: &Exponent<N>, b: &Exponent<N>) -> Exponent<N> {
    std::array::from_fn(|i| a[i] - b[i])
}

fn neg_exp<const N: usize>(a: &Exponent<N>) -> Exponent<N> {
    std::array::from_fn(|i| -a[i])
}

impl<const N: usize> Add<&Laurent<N>> for &Laurent<N> {
    type Output = Laurent<N>;
    fn add(self, rhs: &Laurent<N>) -> Laurent<N> {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<const N: usize> Sub<&Laurent<N>> for &Laurent<N> {
    type Output = Laurent<N>;
    fn sub(self, rhs: &Laurent<N>) -> Laurent<N> {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<const N: usize> Mul<&Laurent<N>> for &Laurent<N> {
    type Output = Laurent<N>;
    fn mul(self, rhs: &Laurent<N>) -> Laurent<N> {
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = Laurent::zero();
        for (e, c) in small.terms.iter() {
            for (f, d) in big.terms.iter() {
                out.add_term(add_exp(e, f), c * d);
            }
        }
        out
    }
}

impl<const N: usize> Neg for &Laurent<N> {
    type Output = Laurent<N>;
    fn neg(self) -> Laurent<N> {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<const N: usize> $tr<Laurent<N>> for Laurent<N> {
            type Output = Laurent<N>;
            fn $m(self, rhs: Laurent<N>) -> Laurent<N> {
                (&self).$m(&rhs)
            }
        }
        impl<const N: usize> $tr<&Laurent<N>> for Laurent<N> {
            type Output = Laurent<N>;
            fn $m(self, rhs: &Laurent<N>) -> Laurent<N> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<const N: usize> Neg for Laurent<N> {
    type Output = Laurent<N>;
    fn neg(self) -> Laurent<N> {
        -&self
    }
}

impl<const N: usize> fmt::Debug for Laurent<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [String; N] = std::array::from_fn(|i| format!("x{i}"));
        let refs: [&str; N] = std::array::from_fn(|i| names[i].as_str());
        write!(f, "Laurent({})", self.to_text(&refs))
    }
}

impl fmt::Display for Laurent<1> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&["q"]))
    }
}

impl fmt::Display for Laurent<2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&["p", "q"]))
    }
}

impl fmt::Display for Laurent<4> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&["p", "q", "P", "Q"]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn pq(terms: &[(i64, i64, i64)]) -> Laurent<2> {
        Laurent::from_terms(terms.iter().map(|&(a, b, c)| ([a, b], r(c))))
    }

    #[test]
    fn add_cancels_to_q() {
        // (q - p^-1) + p^-1 = q
        let a = pq(&[(0, 1, 1), (-1, 0, -1)]);
        let b = pq(&[(-1, 0, 1)]);
        assert_eq!(&a + &b, pq(&[(0, 1, 1)]));
    }

    #[test]
    fn difference_of_squares() {
        let a = pq(&[(0, 1, 1), (-1, 0, -1)]);
        let b = pq(&[(0, 1, 1), (-1, 0, 1)]);
        assert_eq!(&a * &b, pq(&[(0, 2, 1), (-2, 0, -1)]));
    }

    #[test]
    fn power_of_monomial() {
        assert_eq!(pq(&[(1, -1, 1)]).pow(3), pq(&[(3, -3, 1)]));
        assert!(pq(&[(0, 1, 1), (1, 0, 2)]).pow(0).is_one());
    }

    #[test]
    fn exact_division_cases() {
        let d = pq(&[(0, 1, 1), (-1, 0, -1)]);
        let a = pq(&[(0, 2, 1), (-2, 0, -1)]);
        assert_eq!(a.exact_div(&d).unwrap(), pq(&[(0, 1, 1), (-1, 0, 1)]));
        assert_eq!(a.exact_div(&Laurent::one()).unwrap(), a);
        assert_eq!(pq(&[(1, 0, 1)]).exact_div(&d), Err(Error::NotDivisible));
        assert!(Laurent::<2>::zero().exact_div(&d).unwrap().is_zero());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(pq(&[(0, -2, 1), (2, 0, -1)]).to_string(), "q^-2 - p^2");
        assert_eq!(pq(&[(1, -1, -1)]).to_string(), "-p*q^-1");
        let half = Laurent::<2>::from_terms([([0, 0], Rat::new(1.into(), 2.into())), ([1, 0], r(-3))]);
        assert_eq!(half.to_string(), "1/2 - 3*p");
        assert_eq!(Laurent::<2>::zero().to_string(), "0");
    }
}
