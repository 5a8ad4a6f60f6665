//! The overall sign of the closed-form `n`-bracket.
//!
//! Only `sign(3) = -1` is fixed by the 3-bracket formula. For `n >= 4` the sign
//! is calibrated once against the recursive bracket evaluated on the Fock
//! module, then cached.

use std::collections::BTreeMap;
use std::sync::{LazyLock, RwLock};

use crate::algebra::{closed_form_unsigned, GenIndex};
use crate::error::{Error, Result};
use crate::oracle;

static SIGNS: LazyLock<RwLock<BTreeMap<usize, i8>>> = LazyLock::new(|| RwLock::new(BTreeMap::from([(3, -1)])));

/// Write-once cache of derived signs. Prime it before fanning out parallel
/// sweeps so workers only ever read.
pub struct SignTable;

impl SignTable {
    pub fn prime(max_n: usize) -> Result<()> {
        for n in 3..=max_n {
            sign(n)?;
        }
        Ok(())
    }

    pub fn snapshot() -> BTreeMap<usize, i8> {
        SIGNS.read().expect("sign table poisoned").clone()
    }
}

/// Cached `sign(n)`.
pub fn sign(n: usize) -> Result<i8> {
    if let Some(s) = SIGNS.read().expect("sign table poisoned").get(&n) {
        return Ok(*s);
    }
    let s = derive_sign(n)?;
    SIGNS.write().expect("sign table poisoned").entry(n).or_insert(s);
    Ok(s)
}

/// Ratio of the recursive bracket to the sign-free closed form on the witness
/// `(0, 1, ..., n-1)`. Uncached.
pub fn derive_sign(n: usize) -> Result<i8> {
    if n < 3 {
        return Err(Error::BadArity { arity: n, reason: "sign is defined for n >= 3" });
    }
    if n == 3 {
        return Ok(-1);
    }
    let witness: Vec<GenIndex> = (0..n as GenIndex).collect();
    sign_ratio(&witness)
}

/// `recursive / closed_form_unsigned` on one tuple, required to be `±1`.
pub fn sign_ratio(indices: &[GenIndex]) -> Result<i8> {
    let n = indices.len();
    let recursive = oracle::recursive_bracket(indices)?;
    let unsigned = closed_form_unsigned(indices)?;
    if unsigned.is_zero() {
        return Err(Error::InvalidInput(format!("closed form vanishes on sign witness {indices:?}")));
    }
    let ratio = recursive.coeff.checked_div(&unsigned)?;
    ratio.as_unit_sign().ok_or(Error::InconsistentSign { n, ratio: ratio.to_text() })
}
