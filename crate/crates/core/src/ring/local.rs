//! Laurent polynomials localized at a single irreducible denominator.
//!
//! Every denominator that shows up in the deformed algebra is a power of
//! `q - p^-1` (or `q - q^-1` after the `p -> q` limit). A value is stored as
//! `num / den^e` and kept normalized: when `e > 0` the numerator is not
//! divisible by `den`. Because `den` is prime in the Laurent ring, this form is
//! canonical and structural equality is value equality.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::{Exponent, Laurent};
use super::Rat;
use crate::error::{Error, Result};

/// A choice of variables and distinguished denominator.
pub trait Localization<const N: usize>:
    Copy + Clone + fmt::Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static
{
    const VARS: [&'static str; N];
    const DENOM_TEXT: &'static str;

    fn denominator() -> Laurent<N>;

    /// Whether `den` divides `num`. Implementations use a substitution test
    /// that is much cheaper than a trial division.
    fn divides(num: &Laurent<N>) -> bool;
}

/// `q - p^-1` over `Q[p^±1, q^±1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PqLocal;

/// `q - p^-1` over `Q[p^±1, q^±1, P^±1, Q^±1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModLocal;

/// `q - q^-1` over `Q[q^±1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct QLocal;

/// `q - q^-1` over `Q[q^±1, Q^±1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct QModLocal;

fn q_minus_pinv<const N: usize>() -> Laurent<N> {
    let mut q = [0; N];
    q[1] = 1;
    let mut pinv = [0; N];
    pinv[0] = -1;
    Laurent::from_terms([(q, Rat::one()), (pinv, -Rat::one())])
}

fn q_minus_qinv<const N: usize>() -> Laurent<N> {
    let mut q = [0; N];
    q[0] = 1;
    let mut qinv = [0; N];
    qinv[0] = -1;
    Laurent::from_terms([(q, Rat::one()), (qinv, -Rat::one())])
}

/// Divisibility by `q - p^-1`: the numerator must vanish under `q := p^-1`,
/// which merges `p^a q^b` into `p^{a-b}` with the other variables untouched.
fn vanishes_at_q_eq_pinv<const N: usize>(num: &Laurent<N>) -> bool {
    let image = num.map_exponents(|e| {
        let mut out = *e;
        out[0] = e[0] - e[1];
        out[1] = 0;
        out
    });
    image.is_zero()
}

/// Divisibility by `q - q^-1 = q^-1 (q - 1)(q + 1)`: vanishing at `q = ±1`
/// (variable 0), separately for each monomial in the remaining variables.
fn vanishes_at_q_eq_pm1<const N: usize>(num: &Laurent<N>) -> bool {
    let at = |sign_flip: bool| {
        let mut acc = Laurent::<N>::zero();
        for (e, c) in num.terms() {
            let mut rest = *e;
            rest[0] = 0;
            let c = if sign_flip && e[0].rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
            acc.add_term(rest, c);
        }
        acc.is_zero()
    };
    at(false) && at(true)
}

impl Localization<2> for PqLocal {
    const VARS: [&'static str; 2] = ["p", "q"];
    const DENOM_TEXT: &'static str = "(q - p^-1)";
    fn denominator() -> Laurent<2> {
        q_minus_pinv()
    }
    fn divides(num: &Laurent<2>) -> bool {
        vanishes_at_q_eq_pinv(num)
    }
}

impl Localization<4> for ModLocal {
    const VARS: [&'static str; 4] = ["p", "q", "P", "Q"];
    const DENOM_TEXT: &'static str = "(q - p^-1)";
    fn denominator() -> Laurent<4> {
        q_minus_pinv()
    }
    fn divides(num: &Laurent<4>) -> bool {
        vanishes_at_q_eq_pinv(num)
    }
}

impl Localization<1> for QLocal {
    const VARS: [&'static str; 1] = ["q"];
    const DENOM_TEXT: &'static str = "(q - q^-1)";
    fn denominator() -> Laurent<1> {
        q_minus_qinv()
    }
    fn divides(num: &Laurent<1>) -> bool {
        vanishes_at_q_eq_pm1(num)
    }
}

impl Localization<2> for QModLocal {
    const VARS: [&'static str; 2] = ["q", "Q"];
    const DENOM_TEXT: &'static str = "(q - q^-1)";
    fn denominator() -> Laurent<2> {
        q_minus_qinv()
    }
    fn divides(num: &Laurent<2>) -> bool {
        vanishes_at_q_eq_pm1(num)
    }
}

/// `num / den^e`, normalized.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Localized<const N: usize, L: Localization<N>> {
    num: Laurent<N>,
    e: u32,
    _loc: PhantomData<L>,
}

impl<const N: usize, L: Localization<N>> Localized<N, L> {
    /// Builds `num / den^e` and cancels common factors of `den`.
    pub fn new(num: Laurent<N>, e: u32) -> Self {
        let mut num = num;
        let mut e = e;
        if num.is_zero() {
            e = 0;
        }
        if e > 0 {
            let den = L::denominator();
            while e > 0 && L::divides(&num) {
                num = num.exact_div(&den).expect("substitution test guarantees divisibility");
                e -= 1;
            }
        }
        Self { num, e, _loc: PhantomData }
    }

    pub fn from_poly(num: Laurent<N>) -> Self {
        Self { num, e: 0, _loc: PhantomData }
    }

    pub fn zero() -> Self {
        Self::from_poly(Laurent::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Laurent::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(Laurent::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rat(Rat::from_integer(c.into()))
    }

    pub fn monomial(exp: Exponent<N>, c: Rat) -> Self {
        Self::from_poly(Laurent::monomial(exp, c))
    }

    /// The bare denominator `den` as a value (not its inverse).
    pub fn denominator() -> Self {
        Self::from_poly(L::denominator())
    }

    /// `den^-k`.
    pub fn inv_denominator_pow(k: u32) -> Self {
        Self::new(Laurent::one(), k)
    }

    pub fn numerator(&self) -> &Laurent<N> {
        &self.num
    }

    /// Localization exponent `e` in `num / den^e`.
    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.e == 0 && self.num.is_one()
    }

    /// Whether the value is `±1`. Used when calibrating signs.
    pub fn as_unit_sign(&self) -> Option<i8> {
        if self.e != 0 || self.num.len() != 1 {
            return None;
        }
        let (e, c) = self.num.leading()?;
        if e.iter().any(|x| *x != 0) {
            return None;
        }
        if c.is_one() {
            Some(1)
        } else if (-c).is_one() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self { num: self.num.scale(c), e: if c.is_zero() { 0 } else { self.e }, _loc: PhantomData }
    }

    pub fn mul_monomial(&self, exp: &Exponent<N>, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.mul_monomial(exp, c), e: self.e, _loc: PhantomData }
    }

    pub fn pow(&self, k: u32) -> Self {
        Self::new(self.num.pow(k), self.e * k)
    }

    fn lift(&self, target_e: u32) -> Laurent<N> {
        debug_assert!(target_e >= self.e);
        if target_e == self.e {
            self.num.clone()
        } else {
            &self.num * &L::denominator().pow(target_e - self.e)
        }
    }

    /// Exact quotient in the localized ring.
    ///
    /// The divisor's numerator is split as `den^t · d'` with `d'` coprime to
    /// `den`; the quotient exists iff `d'` divides the dividend's numerator.
    pub fn checked_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let den = L::denominator();
        let mut d_core = d.num.clone();
        let mut t = 0u32;
        while L::divides(&d_core) {
            d_core = d_core.exact_div(&den).expect("substitution test guarantees divisibility");
            t += 1;
        }
        let quot = self.num.exact_div(&d_core)?;
        // self / d = quot · den^{d.e - self.e - t}
        let up = d.e as i64 - self.e as i64 - t as i64;
        if up >= 0 {
            Ok(Self::new(&quot * &den.pow(up as u32), 0))
        } else {
            Ok(Self::new(quot, (-up) as u32))
        }
    }

    /// Canonical text form; `(num)/(den)^e` when `e > 0`.
    pub fn to_text(&self) -> String {
        let num = self.num.to_text(&L::VARS);
        match self.e {
            0 => num,
            1 => format!("({num})/{}", L::DENOM_TEXT),
            e => format!("({num})/{}^{e}", L::DENOM_TEXT),
        }
    }
}

impl<const N: usize, L: Localization<N>> Add<&Localized<N, L>> for &Localized<N, L> {
    type Output = Localized<N, L>;
    fn add(self, rhs: &Localized<N, L>) -> Localized<N, L> {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let e = self.e.max(rhs.e);
        Localized::new(&self.lift(e) + &rhs.lift(e), e)
    }
}

impl<const N: usize, L: Localization<N>> Sub<&Localized<N, L>> for &Localized<N, L> {
    type Output = Localized<N, L>;
    fn sub(self, rhs: &Localized<N, L>) -> Localized<N, L> {
        self + &(-rhs)
    }
}

impl<const N: usize, L: Localization<N>> Mul<&Localized<N, L>> for &Localized<N, L> {
    type Output = Localized<N, L>;
    fn mul(self, rhs: &Localized<N, L>) -> Localized<N, L> {
        if self.is_zero() || rhs.is_zero() {
            return Localized::zero();
        }
        let num = &self.num * &rhs.num;
        let e = self.e + rhs.e;
        // Both factors are normalized, so a cancellation is only possible
        // when one of them carries a `den` factor in its numerator (e = 0).
        if (self.e > 0 && rhs.e > 0) || e == 0 {
            Localized { num, e, _loc: PhantomData }
        } else {
            Localized::new(num, e)
        }
    }
}

impl<const N: usize, L: Localization<N>> Neg for &Localized<N, L> {
    type Output = Localized<N, L>;
    fn neg(self) -> Localized<N, L> {
        Localized { num: -&self.num, e: self.e, _loc: PhantomData }
    }
}

impl<const N: usize, L: Localization<N>> Neg for Localized<N, L> {
    type Output = Localized<N, L>;
    fn neg(self) -> Localized<N, L> {
        -&self
    }
}

macro_rules! forward_owned_localized {
    ($tr:ident, $m:ident) => {
        impl<const N: usize, L: Localization<N>> $tr<Localized<N, L>> for Localized<N, L> {
            type Output = Localized<N, L>;
            fn $m(self, rhs: Localized<N, L>) -> Localized<N, L> {
                (&self).$m(&rhs)
            }
        }
        impl<const N: usize, L: Localization<N>> $tr<&Localized<N, L>> for Localized<N, L> {
            type Output = Localized<N, L>;
            fn $m(self, rhs: &Localized<N, L>) -> Localized<N, L> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned_localized!(Add, add);
forward_owned_localized!(Sub, sub);
forward_owned_localized!(Mul, mul);

impl<const N: usize, L: Localization<N>> fmt::Display for Localized<N, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<const N: usize, L: Localization<N>> fmt::Debug for Localized<N, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<const N: usize, L: Localization<N>> Zero for Localized<N, L> {
    fn zero() -> Self {
        Localized::zero()
    }
    fn is_zero(&self) -> bool {
        Localized::is_zero(self)
    }
}

impl<const N: usize, L: Localization<N>> One for Localized<N, L> {
    fn one() -> Self {
        Localized::one()
    }
}
