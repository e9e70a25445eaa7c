//! Generalized and projective Reed-Muller codes over GF(q).
//!
//! The crate builds the codes `RM_q(nu, m)` and `PRM_q(d, m)` from monomial
//! bases, evaluates the closed-form formulas for their dimension, minimum
//! distance and number of minimum-weight codewords, and checks those formulas
//! against exhaustive enumeration.

pub mod codes;
pub mod combinatorics;
pub mod dimension;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod minwt;
pub mod oracle;
pub mod poly;
pub mod verify;

mod bigstr;

pub use error::{Error, Result};
pub use gf::{Field, FieldElement, FieldSpec};

/// Valid range check for a PRM order: `1 <= d <= m(q-1)+1`.
pub(crate) fn check_prm_order(q: u64, d: i64, m: u64) -> Result<()> {
    let max = (m * (q - 1) + 1) as i64;
    if d < 1 || d > max {
        return Err(Error::OrderOutOfRange { order: d, min: 1, max });
    }
    Ok(())
}

/// Valid range check for an RM order: `0 <= nu <= m(q-1)`.
pub(crate) fn check_rm_order(q: u64, nu: i64, m: u64) -> Result<()> {
    let max = (m * (q - 1)) as i64;
    if nu < 0 || nu > max {
        return Err(Error::OrderOutOfRange { order: nu, min: 0, max });
    }
    Ok(())
}
