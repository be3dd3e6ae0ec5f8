//! Power residue symbols and reciprocity laws in `GF(q)[t]`.
//!
//! * [`ff`] builds finite fields `GF(p^e)` and their multiplicative structure.
//! * [`polyring`] is polynomial arithmetic over them: gcd, factorization,
//!   prime enumeration, resultants, residue fields.
//! * [`symbol`] evaluates n-th power residue symbols and checks both reciprocity laws.
//! * [`localglobal`] tests local solvability of `x^n = α` and scans for witnesses
//!   against global n-th powers.
//! * [`ultra`] runs everything componentwise over finite families of fields.

pub mod arith;
pub mod error;
pub mod ff;
pub mod localglobal;
pub mod polyring;
pub mod symbol;
pub mod ultra;

pub use error::{Error, Result};
pub use ff::{FFElem, FieldCtx};
pub use polyring::{Factorization, MonicPrime, Poly, QuotientRing};

/// Seed used for every randomized routine unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 0x0c0f_fee5;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
