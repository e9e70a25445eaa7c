//! Dimension formulas for Reed-Muller and projective Reed-Muller codes.
//!
//! The four PRM expressions are written out independently from their
//! displayed forms so that comparing them is a real check. All of them use the
//! falling-factorial binomial from [`crate::combinatorics`].

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::codes::prm_generator_matrix;
use crate::combinatorics::binomial;
use crate::error::Result;
use crate::gf::Field;
use crate::{bigstr, check_prm_order};

fn signed(j: i64, term: BigInt) -> BigInt {
    if j % 2 == 0 {
        term
    } else {
        -term
    }
}

/// Dimension of `RM_q(nu, n)`: `sum_i (-1)^i C(n,i) C(n + nu - iq, n)` over
/// the indices with `iq <= nu`. Zero for negative `nu`; values for
/// `nu > n(q-1)` equal `q^n`.
///
/// The cut-off matters: with the falling-factorial binomial, a term with
/// `n + nu - iq < 0` is nonzero and would corrupt the sum.
pub fn rho(q: u64, nu: i64, n: u64) -> BigInt {
    if nu < 0 {
        return BigInt::zero();
    }
    let (q, n) = (q as i64, n as i64);
    let top = n.min(nu / q);
    (0..=top)
        .map(|i| signed(i, binomial(n, i) * binomial(n + nu - i * q, n)))
        .sum()
}

/// Orders `e = d, d-(q-1), d-2(q-1), ...` down to 1.
fn congruent_orders(q: i64, d: i64) -> impl Iterator<Item = i64> {
    let step = (q - 1) as usize;
    (1..=d).rev().step_by(step)
}

/// Sum over `e = d mod (q-1)`, `1 <= e <= d`, of
/// `sum_{j=0}^{m+1} (-1)^j C(m+1,j) C(e-jq+m, e-jq)`.
pub fn dim_alpha(q: u64, d: i64, m: u64) -> Result<BigInt> {
    check_prm_order(q, d, m)?;
    let (q, m) = (q as i64, m as i64);
    Ok(congruent_orders(q, d)
        .map(|e| {
            (0..=m + 1)
                .map(|j| signed(j, binomial(m + 1, j) * binomial(e - j * q + m, e - j * q)))
                .sum::<BigInt>()
        })
        .sum())
}

/// `C(m+d, d) - sum_{j=2}^{m+1} (-1)^j C(m+1,j)
///   sum_{i=0}^{j-2} C(d+(i+1)(q-1)-jq+m, d+(i+1)(q-1)-jq)`.
pub fn dim_beta(q: u64, d: i64, m: u64) -> Result<BigInt> {
    check_prm_order(q, d, m)?;
    let (q, m) = (q as i64, m as i64);
    let mut correction = BigInt::zero();
    for j in 2..=m + 1 {
        let inner: BigInt = (0..=j - 2)
            .map(|i| {
                let low = d + (i + 1) * (q - 1) - j * q;
                binomial(low + m, low)
            })
            .sum();
        correction += signed(j, binomial(m + 1, j) * inner);
    }
    Ok(binomial(m + d, d) - correction)
}

/// `sum_{i=0}^m sum_j (-1)^j C(i,j) C(i+d-1-jq, i)` with `jq <= d-1`.
///
/// As with [`rho`], terms whose top entry would go negative are left out.
pub fn dim_gamma(q: u64, d: i64, m: u64) -> Result<BigInt> {
    check_prm_order(q, d, m)?;
    let (q, m) = (q as i64, m as i64);
    let mut total = BigInt::zero();
    for i in 0..=m {
        let top = i.min((d - 1) / q);
        for j in 0..=top {
            total += signed(j, binomial(i, j) * binomial(i + d - 1 - j * q, i));
        }
    }
    Ok(total)
}

/// Sum over `e = d mod (q-1)`, `1 <= e <= d`, of
/// `sum_{j=0}^{floor(e/q)} (-1)^j C(m+1,j) C(e-jq+m, m)`.
pub fn dim_delta(q: u64, d: i64, m: u64) -> Result<BigInt> {
    check_prm_order(q, d, m)?;
    let (q, m) = (q as i64, m as i64);
    Ok(congruent_orders(q, d)
        .map(|e| {
            (0..=e / q)
                .map(|j| signed(j, binomial(m + 1, j) * binomial(e - j * q + m, m)))
                .sum::<BigInt>()
        })
        .sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub q: u64,
    pub d: i64,
    pub m: u64,
    #[serde(serialize_with = "bigstr::serialize")]
    pub alpha: BigInt,
    #[serde(serialize_with = "bigstr::serialize")]
    pub beta: BigInt,
    #[serde(serialize_with = "bigstr::serialize")]
    pub gamma: BigInt,
    #[serde(serialize_with = "bigstr::serialize")]
    pub delta: BigInt,
    #[serde(serialize_with = "bigstr::option::serialize")]
    pub rank: Option<BigInt>,
    pub agree: bool,
}

/// All four formulas, plus the generator-matrix rank when `with_rank` is set.
pub fn dim_report(q: u64, d: i64, m: u64, with_rank: bool) -> Result<DimReport> {
    let alpha = dim_alpha(q, d, m)?;
    let beta = dim_beta(q, d, m)?;
    let gamma = dim_gamma(q, d, m)?;
    let delta = dim_delta(q, d, m)?;
    let rank = if with_rank {
        let field = Field::from_order(q)?;
        let g = prm_generator_matrix(&field, d as u32, m as usize)?;
        Some(BigInt::from(g.rank()))
    } else {
        None
    };
    let agree = alpha == beta
        && beta == gamma
        && gamma == delta
        && rank.as_ref().map_or(true, |r| *r == alpha);
    Ok(DimReport {
        q,
        d,
        m,
        alpha,
        beta,
        gamma,
        delta,
        rank,
        agree,
    })
}
