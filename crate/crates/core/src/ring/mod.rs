//! Exact arithmetic: rationals, sparse Laurent polynomials in `p, q` (and the
//! module variables `P = p^ν, Q = q^ν`), localization at `q - p^-1`, and the
//! specialization maps `p -> q` and `q -> 1`.

mod laurent;
mod local;

pub use laurent::{Exponent, Laurent};
pub use local::{Localization, Localized, ModLocal, PqLocal, QLocal, QModLocal};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always reduced with positive denominator.
pub type Rat = num_rational::BigRational;

/// Laurent polynomial in `p, q`.
pub type LPoly = Laurent<2>;
/// Laurent polynomial in `q`.
pub type UniPoly = Laurent<1>;
/// Laurent polynomial in `p, q, P, Q`.
pub type ModPoly = Laurent<4>;

/// Structure-constant ring: `Q[p^±1, q^±1]` localized at `q - p^-1`.
pub type Scalar = Localized<2, PqLocal>;
/// Fock-module coefficient ring: `Q[p^±1, q^±1, P^±1, Q^±1]` localized at `q - p^-1`.
pub type ModScalar = Localized<4, ModLocal>;
/// `p -> q` image of [`Scalar`]: `Q[q^±1]` localized at `q - q^-1`.
pub type UniScalar = Localized<1, QLocal>;
/// `p -> q, P -> Q` image of [`ModScalar`].
pub type QModScalar = Localized<2, QModLocal>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// The monomial `p^a q^b` as a scalar.
pub fn pq_monomial(a: i64, b: i64) -> Scalar {
    Scalar::monomial([a, b], Rat::one())
}

/// `[x]_{p,q} = (q^x - p^-x) / (q - p^-1)`. Always a Laurent polynomial.
pub fn pq_number(x: i64) -> Scalar {
    let num = LPoly::from_terms([([0, x], Rat::one()), ([-x, 0], -Rat::one())]);
    Scalar::new(num, 1)
}

/// `[k]_q = (q^k - q^-k) / (q - q^-1)`.
pub fn q_number(k: i64) -> UniScalar {
    let num = UniPoly::from_terms([([k], Rat::one()), ([-k], -Rat::one())]);
    UniScalar::new(num, 1)
}

/// The limit `p -> q`. The denominator `q - p^-1` becomes `q - q^-1`.
pub fn specialize_pq(a: &Scalar) -> UniScalar {
    let num = a.numerator().map_exponents(|e| [e[0] + e[1]]);
    UniScalar::new(num, a.exponent())
}

/// The limit `p -> q, P -> Q` on module coefficients.
pub fn specialize_module(a: &ModScalar) -> QModScalar {
    let num = a.numerator().map_exponents(|e| [e[0] + e[1], e[2] + e[3]]);
    QModScalar::new(num, a.exponent())
}

/// Value at `q = 1` of a `q`-deformed scalar.
///
/// Writes `num / (q - q^-1)^e = num · q^e / ((q - 1)^e (q + 1)^e)`; the limit
/// exists iff `(q - 1)^e` divides `num` exactly.
pub fn classical_value(u: &UniScalar) -> Result<Rat> {
    let e = u.exponent();
    let reduced = if e == 0 {
        u.numerator().clone()
    } else {
        let q_minus_one = UniPoly::from_terms([([1], Rat::one()), ([0], -Rat::one())]);
        u.numerator().exact_div(&q_minus_one.pow(e)).map_err(|_| Error::PoleAtOne(e))?
    };
    let at_one = reduced.terms().fold(Rat::zero(), |acc, (_, c)| acc + c);
    Ok(at_one / Rat::from_integer(num_bigint::BigInt::from(2u32).pow(e)))
}

/// Level shift `ν -> ν + m`: `P -> P p^m`, `Q -> Q q^m`.
pub fn mod_shift(c: &ModScalar, m: i64) -> ModScalar {
    if m == 0 {
        return c.clone();
    }
    let num = c.numerator().map_exponents(|e| [e[0] + m * e[2], e[1] + m * e[3], e[2], e[3]]);
    ModScalar::new(num, c.exponent())
}

/// Views a structure constant as a (level-independent) module coefficient.
pub fn embed_scalar(a: &Scalar) -> ModScalar {
    ModScalar::new(a.numerator().map_exponents(|e| [e[0], e[1], 0, 0]), a.exponent())
}

/// Inverse of [`embed_scalar`]; `None` if the value depends on `P` or `Q`.
pub fn project_scalar(a: &ModScalar) -> Option<Scalar> {
    if a.numerator().terms().any(|(e, _)| e[2] != 0 || e[3] != 0) {
        return None;
    }
    Some(Scalar::new(a.numerator().map_exponents(|e| [e[0], e[1]]), a.exponent()))
}

/// `Q`-free part of a specialized module coefficient; `None` if it depends on `Q`.
pub fn project_uni(a: &QModScalar) -> Option<UniScalar> {
    if a.numerator().terms().any(|(e, _)| e[1] != 0) {
        return None;
    }
    Some(UniScalar::new(a.numerator().map_exponents(|e| [e[0]]), a.exponent()))
}

#[cfg(test)]
mod tests;
