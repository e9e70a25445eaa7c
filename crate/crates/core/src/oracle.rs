//! Exhaustive enumeration of a linear code.
//!
//! The message space is split by the coefficient of the first row and each
//! part is walked in modular q-ary Gray order: going from step `n` to `n + 1`
//! changes a single digit, the one at position "number of trailing base-q
//! zeros of `n + 1`", from label `k` to `k + 1 mod q`. The running codeword is
//! then updated by one precomputed scaled row.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{Codeword, Family, GeneratorMatrix};
use crate::error::{Error, Result};
use crate::gf::Field;

/// Default limit on the number of enumerated codewords.
pub const DEFAULT_GUARD: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub family: Family,
    pub q: u32,
    pub order: u32,
    pub m: usize,
    #[serde(serialize_with = "counts_as_strings")]
    pub counts: BTreeMap<usize, u64>,
    #[serde(serialize_with = "crate::bigstr::serialize")]
    pub total: BigInt,
}

fn counts_as_strings<S: serde::Serializer>(counts: &BTreeMap<usize, u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(counts.len()))?;
    for (w, c) in counts {
        map.serialize_entry(&w.to_string(), &c.to_string())?;
    }
    map.end()
}

impl WeightDistribution {
    /// Smallest nonzero weight present, if any.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }
}

fn check_guard(g: &GeneratorMatrix, guard: u128) -> Result<()> {
    let needed = (g.field().q() as u128).checked_pow(g.k() as u32).unwrap_or(u128::MAX);
    if needed > guard {
        return Err(Error::GuardExceeded {
            what: "codewords",
            needed,
            limit: guard,
        });
    }
    Ok(())
}

/// `table[i][k]` is `(k+1 - k) * row_i` with labels read as field elements.
fn step_rows(field: &Field, rows: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let q = field.q();
    rows.iter()
        .map(|row| {
            (0..q)
                .map(|k| {
                    let delta = field.sub((k + 1) % q, k);
                    row.iter().map(|&x| field.mul(delta, x)).collect()
                })
                .collect()
        })
        .collect()
}

/// Visits every codeword whose first message coefficient is `lead`, passing
/// the codeword and its weight.
fn walk(field: &Field, rows: &[Vec<u32>], steps: &[Vec<Vec<u32>>], n: usize, lead: u32, visit: &mut impl FnMut(&[u32], usize)) {
    let q = field.q();
    let mut word: Vec<u32> = match rows.first() {
        Some(row) => row.iter().map(|&x| field.mul(lead, x)).collect(),
        None => vec![0; n],
    };
    let mut weight = word.iter().filter(|&&x| x != 0).count();
    visit(&word, weight);
    let free = rows.len().saturating_sub(1);
    let mut digits = vec![0u32; free];
    // counter in base q, used only to locate the changing digit
    let mut counter = vec![0u32; free];
    loop {
        let mut i = 0;
        while i < free && counter[i] == q - 1 {
            counter[i] = 0;
            i += 1;
        }
        if i == free {
            return;
        }
        counter[i] += 1;
        let k = digits[i];
        digits[i] = (k + 1) % q;
        let delta = &steps[i + 1][k as usize];
        for (x, &y) in word.iter_mut().zip(delta) {
            if y != 0 {
                let before = *x != 0;
                *x = field.add(*x, y);
                let after = *x != 0;
                weight = weight + after as usize - before as usize;
            }
        }
        visit(&word, weight);
    }
}

fn leads(g: &GeneratorMatrix) -> Vec<u32> {
    if g.k() == 0 {
        vec![0]
    } else {
        (0..g.field().q()).collect()
    }
}

/// Number of codewords of each weight.
pub fn weight_distribution(g: &GeneratorMatrix, guard: u128) -> Result<WeightDistribution> {
    check_guard(g, guard)?;
    let field = g.field();
    let steps = step_rows(field, g.rows());
    let n = g.n();
    let parts: Vec<Vec<u64>> = leads(g)
        .into_par_iter()
        .map(|lead| {
            let mut counts = vec![0u64; n + 1];
            walk(field, g.rows(), &steps, n, lead, &mut |_, w| counts[w] += 1);
            counts
        })
        .collect();
    let mut counts = BTreeMap::new();
    for part in parts {
        for (w, c) in part.into_iter().enumerate() {
            if c > 0 {
                *counts.entry(w).or_insert(0) += c;
            }
        }
    }
    Ok(WeightDistribution {
        family: g.family(),
        q: field.q(),
        order: g.order(),
        m: g.m(),
        counts,
        total: num_traits::pow(BigInt::from(field.q()), g.k()),
    })
}

pub fn brute_min_distance(g: &GeneratorMatrix, guard: u128) -> Result<usize> {
    weight_distribution(g, guard)?.min_distance().ok_or(Error::ZeroCode)
}

/// The minimum nonzero weight and every codeword attaining it, found in a
/// single pass that keeps the running minimum and its words.
pub fn brute_min_weight_words(g: &GeneratorMatrix, guard: u128) -> Result<(usize, BTreeSet<Codeword>)> {
    check_guard(g, guard)?;
    let field = g.field();
    let steps = step_rows(field, g.rows());
    let n = g.n();
    let parts: Vec<(usize, Vec<Codeword>)> = leads(g)
        .into_par_iter()
        .map(|lead| {
            let mut best = usize::MAX;
            let mut words = Vec::new();
            walk(field, g.rows(), &steps, n, lead, &mut |word, w| {
                if w == 0 || w > best {
                    return;
                }
                if w < best {
                    best = w;
                    words.clear();
                }
                words.push(Codeword(word.to_vec()));
            });
            (best, words)
        })
        .collect();
    let best = parts.iter().map(|(b, _)| *b).min().unwrap_or(usize::MAX);
    if best == usize::MAX {
        return Err(Error::ZeroCode);
    }
    let words = parts
        .into_iter()
        .filter(|(b, _)| *b == best)
        .flat_map(|(_, w)| w)
        .collect();
    Ok((best, words))
}
