//! Exact symbolic toolkit for the two-parameter `(p,q)`-deformed
//! Virasoro-Witt `n`-algebra.
//!
//! * [`ring`]: exact Laurent arithmetic localized at `q - p^-1`.
//! * [`algebra`]: closed-form brackets (2-, 3- and `n`-ary).
//! * [`oracle`]: the oscillator realization on a symbolic Fock module and the
//!   defining (recursive) brackets evaluated as operator words.
//! * [`identities`]: skew-symmetry, sh-Jacobi, fundamental identity and the
//!   deformed Jacobi identities.
//! * [`subalgebra`]: `n`-Lie subalgebras spanned by generators.
//! * [`cli`]: the `pqvir` command-line driver.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod identities;
pub mod oracle;
pub mod ring;
pub mod subalgebra;

pub use error::{Error, Result};
