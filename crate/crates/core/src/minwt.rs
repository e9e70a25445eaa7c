//! Minimum distance, minimum-weight codewords and their counts.
//!
//! For an RM order `nu` write `nu = t(q-1) + s`, for a PRM order `d` write
//! `d - 1 = t(q-1) + s`, with `0 <= s < q-1`. Both families then have minimum
//! distance `(q-s) q^(m-t-1)` (which is 1 when `t = m`).
//!
//! Minimum-weight PRM codewords are exactly the evaluations of
//! `L_t prod_{i<t} (L_t^(q-1) - L_i^(q-1)) prod_j (L_{t+1} - w_j L_t)` for
//! independent linear forms and distinct `w_1..w_s`; minimum-weight RM
//! codewords are the evaluations of
//! `w_0 prod_{i=1..t} (1 - l_i^(q-1)) prod_j (l_{t+1} - w_j)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{Codeword, PointList};
use crate::combinatorics::{big_pow, binomial, gaussian_binomial, p_k};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::{dot, LinearForm, Poly};
use crate::{bigstr, check_prm_order, check_rm_order, linalg};

/// Default limit on the number of enumerated witness or incidence tuples.
pub const WITNESS_GUARD: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rm,
    Prm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TSDecomp {
    pub t: u32,
    pub s: u32,
}

/// Splits an order into `(t, s)` after checking its range.
pub fn ts_decompose(order: i64, q: u64, m: u64, kind: Kind) -> Result<TSDecomp> {
    let n = match kind {
        Kind::Rm => {
            check_rm_order(q, order, m)?;
            order
        }
        Kind::Prm => {
            check_prm_order(q, order, m)?;
            order - 1
        }
    };
    let step = q as i64 - 1;
    Ok(TSDecomp {
        t: (n / step) as u32,
        s: (n % step) as u32,
    })
}

/// `ceil((q - s) q^(m - t - 1))` for any `t >= 0`.
fn distance_value(q: u64, ts: TSDecomp, m: u64) -> BigInt {
    let a = BigInt::from(q - ts.s as u64);
    let t = ts.t as u64;
    if t < m {
        a * big_pow(q, (m - t - 1) as u32)
    } else {
        let k = big_pow(q, (t + 1 - m) as u32);
        (a + &k - 1u32).div_floor(&k)
    }
}

pub fn rm_min_distance(q: u64, nu: i64, m: u64) -> Result<BigInt> {
    let ts = ts_decompose(nu, q, m, Kind::Rm)?;
    Ok(distance_value(q, ts, m))
}

pub fn prm_min_distance(q: u64, d: i64, m: u64) -> Result<BigInt> {
    let ts = ts_decompose(d, q, m, Kind::Prm)?;
    Ok(distance_value(q, ts, m))
}

/// Upper bound `p_m - ceil((q-s) q^(m-t-1))` on the number of projective
/// zeros of a nonzero reduced form of degree `d >= 1`, valid for every such
/// `d`, including those beyond `m(q-1)+1`.
pub fn max_zero_bound(q: u64, d: i64, m: u64) -> Result<BigInt> {
    if d < 1 {
        return Err(Error::OrderOutOfRange {
            order: d,
            min: 1,
            max: i64::MAX,
        });
    }
    let step = q as i64 - 1;
    let ts = TSDecomp {
        t: ((d - 1) / step) as u32,
        s: ((d - 1) % step) as u32,
    };
    Ok(p_k(q, m as i64) - distance_value(q, ts, m))
}

fn check_omegas(field: &Field, omegas: &[u32], s: u32) -> Result<()> {
    if omegas.len() != s as usize {
        return Err(Error::WrongOmegaCount {
            expected: s as usize,
            got: omegas.len(),
        });
    }
    if let Some(&bad) = omegas.iter().find(|&&w| w >= field.q()) {
        return Err(Error::NotAnElement {
            value: bad as u64,
            q: field.q(),
        });
    }
    let distinct: BTreeSet<u32> = omegas.iter().copied().collect();
    if distinct.len() != omegas.len() {
        return Err(Error::DuplicateOmega);
    }
    Ok(())
}

/// `X_t prod_{i<t} (X_i^(q-1) - X_t^(q-1)) prod_j (X_{t+1} - w_j X_t)`.
pub fn canonical_min_poly(field: &Field, d: u32, m: usize, omegas: &[u32]) -> Result<Poly> {
    let q = field.q();
    let ts = ts_decompose(d as i64, q as u64, m as u64, Kind::Prm)?;
    check_omegas(field, omegas, ts.s)?;
    let n = m + 1;
    let t = ts.t as usize;
    let xt = Poly::var(field, n, t);
    let xt_top = xt.pow(q - 1);
    let mut g = xt.clone();
    for i in 0..t {
        g = &g * &(&Poly::var(field, n, i).pow(q - 1) - &xt_top);
    }
    for &w in omegas {
        g = &g * &(&Poly::var(field, n, t + 1) - &xt.scale(w));
    }
    Ok(g)
}

/// Affine polynomial of degree at most one: `linear . X + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineForm {
    pub linear: Vec<u32>,
    pub constant: u32,
}

impl AffineForm {
    pub fn to_poly(&self, field: &Field) -> Poly {
        Poly::affine(field, &self.linear, self.constant)
    }

    fn evaluate(&self, field: &Field, point: &[u32]) -> u32 {
        field.add(dot(field, &self.linear, point), self.constant)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MinWtWitness {
    /// Forms `L_0..L_t` (and `L_{t+1}` when `s > 0`) with `s` omegas.
    Prm { forms: Vec<LinearForm>, omegas: Vec<u32> },
    /// Forms `l_1..l_t` (and `l_{t+1}` when `s > 0`), omegas and `omega0`.
    Rm {
        forms: Vec<AffineForm>,
        omegas: Vec<u32>,
        omega0: u32,
    },
}

fn check_vectors(field: &Field, vectors: &[Vec<u32>], nvars: usize, expected: usize) -> Result<()> {
    if vectors.len() != expected {
        return Err(Error::WrongFormCount {
            expected,
            got: vectors.len(),
        });
    }
    for v in vectors {
        if v.len() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                got: v.len(),
            });
        }
        if let Some(&bad) = v.iter().find(|&&x| x >= field.q()) {
            return Err(Error::NotAnElement {
                value: bad as u64,
                q: field.q(),
            });
        }
    }
    if !linalg::is_independent(field, vectors) {
        return Err(Error::DependentForms);
    }
    Ok(())
}

/// Number of forms a PRM witness needs for `(t, s)`.
pub fn prm_form_count(ts: TSDecomp) -> usize {
    ts.t as usize + if ts.s > 0 { 2 } else { 1 }
}

/// Number of affine forms an RM witness needs for `(t, s)`.
pub fn rm_form_count(ts: TSDecomp) -> usize {
    ts.t as usize + usize::from(ts.s > 0)
}

fn validate_prm(w: &MinWtWitness, field: &Field, d: u32, m: usize) -> Result<(TSDecomp, Vec<LinearForm>, Vec<u32>)> {
    let MinWtWitness::Prm { forms, omegas } = w else {
        return Err(Error::WitnessKind);
    };
    let ts = ts_decompose(d as i64, field.q() as u64, m as u64, Kind::Prm)?;
    let vectors: Vec<Vec<u32>> = forms.iter().map(|l| l.coeffs().to_vec()).collect();
    check_vectors(field, &vectors, m + 1, prm_form_count(ts))?;
    check_omegas(field, omegas, ts.s)?;
    Ok((ts, forms.clone(), omegas.clone()))
}

/// `Q = L_t prod_{i<t} (L_t^(q-1) - L_i^(q-1)) prod_j (L_{t+1} - w_j L_t)`,
/// unreduced.
pub fn prm_witness_poly(w: &MinWtWitness, field: &Field, d: u32, m: usize) -> Result<Poly> {
    let (ts, forms, omegas) = validate_prm(w, field, d, m)?;
    let q = field.q();
    let t = ts.t as usize;
    let lt = forms[t].to_poly(field);
    let lt_top = lt.pow(q - 1);
    let mut f = lt.clone();
    for form in &forms[..t] {
        f = &f * &(&lt_top - &form.to_poly(field).pow(q - 1));
    }
    if ts.s > 0 {
        let next = forms[t + 1].to_poly(field);
        for &w in &omegas {
            f = &f * &(&next - &lt.scale(w));
        }
    }
    Ok(f)
}

/// Value of the PRM witness product from the form values at one point.
#[inline]
fn prm_value(field: &Field, q: u32, values: &[u32], t: usize, omegas: &[u32]) -> u32 {
    let lt = values[t];
    if lt == 0 {
        return 0;
    }
    let lt_top = field.pow_u(lt, q - 1);
    let mut acc = lt;
    for &li in &values[..t] {
        acc = field.mul(acc, field.sub(lt_top, field.pow_u(li, q - 1)));
        if acc == 0 {
            return 0;
        }
    }
    if let Some(&next) = values.get(t + 1) {
        for &w in omegas {
            acc = field.mul(acc, field.sub(next, field.mul(w, lt)));
        }
    }
    acc
}

/// Codeword of a PRM witness, evaluated directly from the factored form.
pub fn prm_witness_codeword(w: &MinWtWitness, field: &Field, d: u32, m: usize, points: &PointList) -> Result<Codeword> {
    let (ts, forms, omegas) = validate_prm(w, field, d, m)?;
    let vectors: Vec<&[u32]> = forms.iter().map(LinearForm::coeffs).collect();
    Ok(factored_codeword(field, &vectors, ts.t as usize, &omegas, points))
}

fn factored_codeword(field: &Field, forms: &[&[u32]], t: usize, omegas: &[u32], points: &PointList) -> Codeword {
    let q = field.q();
    let mut values = vec![0u32; forms.len()];
    Codeword(
        points
            .points()
            .iter()
            .map(|p| {
                for (v, l) in values.iter_mut().zip(forms) {
                    *v = dot(field, l, p);
                }
                prm_value(field, q, &values, t, omegas)
            })
            .collect(),
    )
}

/// `f = w_0 prod_{i=1..t} (1 - l_i^(q-1)) prod_j (l_{t+1} - w_j)`.
///
/// The linear parts of the affine forms must be independent.
pub fn rm_witness_poly(w: &MinWtWitness, field: &Field, nu: u32, m: usize) -> Result<Poly> {
    let MinWtWitness::Rm { forms, omegas, omega0 } = w else {
        return Err(Error::WitnessKind);
    };
    let q = field.q();
    let ts = ts_decompose(nu as i64, q as u64, m as u64, Kind::Rm)?;
    let linear: Vec<Vec<u32>> = forms.iter().map(|f| f.linear.clone()).collect();
    check_vectors(field, &linear, m, rm_form_count(ts))?;
    if forms.iter().any(|f| f.constant >= q) {
        return Err(Error::NotAnElement {
            value: forms.iter().map(|f| f.constant).max().unwrap_or(0) as u64,
            q,
        });
    }
    check_omegas(field, omegas, ts.s)?;
    if *omega0 == 0 {
        return Err(Error::ZeroOmega0);
    }
    if *omega0 >= q {
        return Err(Error::NotAnElement {
            value: *omega0 as u64,
            q,
        });
    }
    let one = Poly::constant(field, m, 1);
    let mut f = Poly::constant(field, m, *omega0);
    let t = ts.t as usize;
    for form in &forms[..t] {
        f = &f * &(&one - &form.to_poly(field).pow(q - 1));
    }
    if ts.s > 0 {
        let last = forms[t].to_poly(field);
        for &w in omegas {
            f = &f * &(&last - &Poly::constant(field, m, w));
        }
    }
    Ok(f)
}

/// Evaluation of an RM witness over the affine points, from the factored form.
pub fn rm_witness_codeword(w: &MinWtWitness, field: &Field, nu: u32, m: usize, points: &PointList) -> Result<Codeword> {
    let f = rm_witness_poly(w, field, nu, m)?;
    let MinWtWitness::Rm { forms, omegas, omega0 } = w else {
        unreachable!("checked by rm_witness_poly");
    };
    debug_assert!(!f.is_zero());
    let q = field.q();
    let t = forms.len() - usize::from(!omegas.is_empty());
    Ok(Codeword(
        points
            .points()
            .iter()
            .map(|p| {
                let mut acc = *omega0;
                for form in &forms[..t] {
                    acc = field.mul(acc, field.sub(1, field.pow_u(form.evaluate(field, p), q - 1)));
                }
                if let Some(last) = forms.get(t) {
                    let v = last.evaluate(field, p);
                    for &w in omegas {
                        acc = field.mul(acc, field.sub(v, w));
                    }
                }
                acc
            })
            .collect(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub d: i64,
    pub m: u64,
    pub t: u32,
    pub s: u32,
    #[serde(serialize_with = "bigstr::serialize")]
    pub formula_count: BigInt,
    #[serde(serialize_with = "bigstr::serialize")]
    pub alt_count: BigInt,
    #[serde(serialize_with = "bigstr::option::serialize")]
    pub brute_count: Option<BigInt>,
    pub agree: bool,
}

fn exact_div(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::NonIntegral(format!("{what}: {num}/{den}")));
    }
    Ok(quot)
}

/// `(q-1) q^t [m t]_q M_s` with `M_s = C(q,s) [m-t 1]_q` for `s > 0` and 1
/// otherwise.
pub fn rm_min_weight_count(q: u64, nu: i64, m: u64) -> Result<BigInt> {
    let TSDecomp { t, s } = ts_decompose(nu, q, m, Kind::Rm)?;
    let (t, s, mi) = (t as i64, s as i64, m as i64);
    let ms = if s > 0 {
        binomial(q as i64, s) * gaussian_binomial(mi - t, 1, q)
    } else {
        BigInt::one()
    };
    Ok(BigInt::from(q - 1) * big_pow(q, t as u32) * gaussian_binomial(mi, t, q) * ms)
}

/// `(q^(m+1) - 1) [m t]_q N_s` with `N_s = C(q,s) [m-t 1]_q / (s+1)` for
/// `s > 0` and 1 otherwise. The division is carried out on the whole product.
pub fn prm_min_weight_count(q: u64, d: i64, m: u64) -> Result<BigInt> {
    let TSDecomp { t, s } = ts_decompose(d, q, m, Kind::Prm)?;
    let (t, s, mi) = (t as i64, s as i64, m as i64);
    let base = (big_pow(q, m as u32 + 1) - 1u32) * gaussian_binomial(mi, t, q);
    if s == 0 {
        return Ok(base);
    }
    let num = base * binomial(q as i64, s) * gaussian_binomial(mi - t, 1, q);
    exact_div(num, BigInt::from(s + 1), "minimum-weight count")
}

/// `(q^(m+1)-1)(q^m-1) / ((q+1)(q-1)) [m-1 t]_q C(q+1, s+1)` for `s > 0`;
/// delegates to [`prm_min_weight_count`] when `s = 0`.
pub fn prm_min_weight_count_alt(q: u64, d: i64, m: u64) -> Result<BigInt> {
    let TSDecomp { t, s } = ts_decompose(d, q, m, Kind::Prm)?;
    if s == 0 {
        return prm_min_weight_count(q, d, m);
    }
    let (t, s, mi) = (t as i64, s as i64, m as i64);
    let num = (big_pow(q, m as u32 + 1) - 1u32)
        * (big_pow(q, m as u32) - 1u32)
        * gaussian_binomial(mi - 1, t, q)
        * binomial(q as i64 + 1, s + 1);
    exact_div(num, BigInt::from((q + 1) * (q - 1)), "alternative minimum-weight count")
}

/// Both closed-form counts for `PRM_q(d, m)`; `brute` is filled in by callers
/// that ran the oracle.
pub fn count_report(q: u64, d: i64, m: u64, brute: Option<BigInt>) -> Result<CountReport> {
    let ts = ts_decompose(d, q, m, Kind::Prm)?;
    let formula_count = prm_min_weight_count(q, d, m)?;
    let alt_count = prm_min_weight_count_alt(q, d, m)?;
    let agree = formula_count == alt_count && brute.as_ref().map_or(true, |b| *b == formula_count);
    Ok(CountReport {
        q,
        d,
        m,
        t: ts.t,
        s: ts.s,
        formula_count,
        alt_count,
        brute_count: brute,
        agree,
    })
}

/// All `s`-subsets of `{0, .., q-1}`, each sorted, in lexicographic order.
pub fn subsets(q: u32, s: usize) -> Vec<Vec<u32>> {
    fn go(q: u32, s: usize, start: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if acc.len() == s {
            out.push(acc.clone());
            return;
        }
        for x in start..q {
            acc.push(x);
            go(q, s, x + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(q, s, 0, &mut Vec::new(), &mut out);
    out
}

fn guard_check(what: &'static str, needed: &BigInt, limit: u128) -> Result<()> {
    let needed_u = u128::try_from(needed).unwrap_or(u128::MAX);
    if needed_u > limit {
        return Err(Error::GuardExceeded {
            what,
            needed: needed_u,
            limit,
        });
    }
    Ok(())
}

/// The set of codewords of every PRM witness: all ordered tuples of
/// independent linear forms and all `s`-subsets of omegas, deduplicated.
/// The number of (tuple, subset) pairs must stay within `guard`.
pub fn enumerate_witness_codewords(field: &Field, d: u32, m: usize, guard: u128) -> Result<BTreeSet<Codeword>> {
    let q = field.q();
    let ts = ts_decompose(d as i64, q as u64, m as u64, Kind::Prm)?;
    let k = prm_form_count(ts);
    let n = m + 1;
    let omega_sets = subsets(q, ts.s as usize);
    let tuples: BigInt = (0..k as u32)
        .map(|i| big_pow(q as u64, n as u32) - big_pow(q as u64, i))
        .product();
    guard_check("witness tuples", &(tuples * omega_sets.len()), guard)?;

    let points = PointList::projective(field, m)?;
    let vectors: Vec<Vec<u32>> = linalg::all_vectors(q, n).into_iter().skip(1).collect();
    let t = ts.t as usize;
    let sets: Vec<BTreeSet<Codeword>> = vectors
        .par_iter()
        .map(|first| {
            let mut found = BTreeSet::new();
            let mut chosen = vec![first.clone()];
            extend_tuples(field, &vectors, k, &mut chosen, &mut |forms| {
                let refs: Vec<&[u32]> = forms.iter().map(Vec::as_slice).collect();
                for omegas in &omega_sets {
                    found.insert(factored_codeword(field, &refs, t, omegas, &points));
                }
            });
            found
        })
        .collect();
    Ok(sets.into_iter().flatten().collect())
}

fn extend_tuples(field: &Field, vectors: &[Vec<u32>], k: usize, chosen: &mut Vec<Vec<u32>>, f: &mut impl FnMut(&[Vec<u32>])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for v in vectors {
        chosen.push(v.clone());
        if linalg::is_independent(field, chosen) {
            extend_tuples(field, vectors, k, chosen, f);
        }
        chosen.pop();
    }
}

type Bits = Vec<u64>;

fn bits_from(len: usize, members: impl IntoIterator<Item = usize>) -> Bits {
    let mut b = vec![0u64; len.div_ceil(64)];
    for i in members {
        b[i / 64] |= 1 << (i % 64);
    }
    b
}

/// Point indices of the projective points in the span of `basis`.
fn subspace_points(field: &Field, basis: &[Vec<u32>], points: &PointList) -> Vec<usize> {
    let n = points.m() + 1;
    let mut idx: Vec<usize> = linalg::span(field, basis, n)
        .iter()
        .filter_map(|v| points.index_of_projective(field, v))
        .collect();
    idx.sort_unstable();
    idx.dedup();
    idx
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub q: u64,
    pub d: i64,
    pub m: u64,
    pub t: u32,
    pub s: u32,
    /// enumerated size of the incidence set
    pub j_size: u64,
    #[serde(serialize_with = "bigstr::serialize")]
    pub j_formula: BigInt,
    /// fiber size -> number of supports with that fiber size
    pub fiber_sizes: BTreeMap<u64, u64>,
    #[serde(serialize_with = "bigstr::serialize")]
    pub expected_fiber: BigInt,
    pub supports: u64,
    /// `(q-1)` times the number of supports
    #[serde(serialize_with = "bigstr::serialize")]
    pub count: BigInt,
    #[serde(serialize_with = "bigstr::serialize")]
    pub formula_count: BigInt,
    pub ok: bool,
}

/// Enumerates the incidence set of tuples `(E, L_t, L_{t+1}, S)`, where `E`
/// is a subspace of projective dimension `m - t`, `L_t, L_{t+1}` range over
/// all linear forms including zero and `S` over the `s`-subsets of the field,
/// subject to `E` not inside `V(L_t)` and `E n V(L_t)` not inside
/// `V(L_{t+1})`. Each tuple maps to the point set of `P` in `E` with
/// `L_t(P) != 0` and `L_{t+1}(P)/L_t(P)` outside `S`; the report gives the
/// fiber sizes of this map. Requires `s > 0`.
pub fn support_fiber_check(field: &Field, d: u32, m: usize, guard: u128) -> Result<FiberReport> {
    let q = field.q();
    let (qu, mu) = (q as u64, m as u64);
    let ts = ts_decompose(d as i64, qu, mu, Kind::Prm)?;
    if ts.s == 0 {
        return Err(Error::WrongCase {
            expected: "s > 0 (use the tau check for s = 0)",
            d: d as i64,
            s: 0,
        });
    }
    let t = ts.t as usize;
    let n = m + 1;
    let dim_e = m - t + 1;
    let omega_sets = subsets(q, ts.s as usize);
    let forms_sq = big_pow(qu, 2 * n as u32);
    let spaces_count = gaussian_binomial(n as i64, dim_e as i64, qu);
    guard_check("incidence tuples", &(&spaces_count * &forms_sq * omega_sets.len()), guard)?;

    let points = PointList::projective(field, m)?;
    let forms = linalg::all_vectors(q, n);
    let spaces = linalg::subspaces(q, n, dim_e);
    let partials: Vec<(u64, HashMap<Bits, u64>)> = spaces
        .par_iter()
        .map(|basis| {
            let e_points = subspace_points(field, basis, &points);
            let mut fibers: HashMap<Bits, u64> = HashMap::new();
            let mut size = 0u64;
            let mut lt_vals = vec![0u32; e_points.len()];
            let mut next_vals = vec![0u32; e_points.len()];
            for lt in &forms {
                for (v, &i) in lt_vals.iter_mut().zip(&e_points) {
                    *v = dot(field, lt, &points.points()[i]);
                }
                if lt_vals.iter().all(|&v| v == 0) {
                    continue;
                }
                for next in &forms {
                    for (v, &i) in next_vals.iter_mut().zip(&e_points) {
                        *v = dot(field, next, &points.points()[i]);
                    }
                    let escapes = lt_vals.iter().zip(&next_vals).any(|(&a, &b)| a == 0 && b != 0);
                    if !escapes {
                        continue;
                    }
                    for set in &omega_sets {
                        let members = e_points.iter().enumerate().filter_map(|(k, &i)| {
                            let a = lt_vals[k];
                            if a == 0 {
                                return None;
                            }
                            let ratio = field.div(next_vals[k], a).expect("nonzero");
                            (!set.contains(&ratio)).then_some(i)
                        });
                        *fibers.entry(bits_from(points.len(), members)).or_default() += 1;
                        size += 1;
                    }
                }
            }
            (size, fibers)
        })
        .collect();

    let mut j_size = 0;
    let mut fibers: HashMap<Bits, u64> = HashMap::new();
    for (size, part) in partials {
        j_size += size;
        for (k, v) in part {
            *fibers.entry(k).or_default() += v;
        }
    }
    let mut fiber_sizes = BTreeMap::new();
    for &v in fibers.values() {
        *fiber_sizes.entry(v).or_default() += 1;
    }
    let (t32, s) = (ts.t, ts.s as i64);
    let j_formula = &spaces_count
        * (big_pow(qu, n as u32) - big_pow(qu, t32))
        * (big_pow(qu, n as u32) - big_pow(qu, t32 + 1))
        * binomial(qu as i64, s);
    let expected_fiber = BigInt::from(s + 1) * BigInt::from((qu - 1) * (qu - 1)) * big_pow(qu, 2 * t32 + 1);
    let supports = fibers.len() as u64;
    let count = BigInt::from(qu - 1) * supports;
    let formula_count = prm_min_weight_count(qu, d as i64, mu)?;
    let ok = BigInt::from(j_size) == j_formula
        && fiber_sizes.len() == 1
        && fiber_sizes.keys().all(|&k| BigInt::from(k) == expected_fiber)
        && count == formula_count;
    Ok(FiberReport {
        q: qu,
        d: d as i64,
        m: mu,
        t: ts.t,
        s: ts.s,
        j_size,
        j_formula,
        fiber_sizes,
        expected_fiber,
        supports,
        count,
        formula_count,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauReport {
    pub q: u64,
    pub d: i64,
    pub m: u64,
    pub t: u32,
    pub pairs: u64,
    #[serde(serialize_with = "bigstr::serialize")]
    pub expected_pairs: BigInt,
    pub distinct_images: u64,
    pub injective: bool,
    #[serde(serialize_with = "bigstr::serialize")]
    pub count: BigInt,
    #[serde(serialize_with = "bigstr::serialize")]
    pub formula_count: BigInt,
    pub ok: bool,
}

/// Enumerates flags `H < E` of projective dimensions `m-t-1 < m-t` and maps
/// each to `E` minus `H`. Requires `s = 0` and `t >= 1`.
pub fn tau_bijection_check(field: &Field, d: u32, m: usize, guard: u128) -> Result<TauReport> {
    let q = field.q();
    let (qu, mu) = (q as u64, m as u64);
    let ts = ts_decompose(d as i64, qu, mu, Kind::Prm)?;
    if ts.s != 0 || ts.t == 0 {
        return Err(Error::WrongCase {
            expected: "s = 0 and t >= 1 (use the fiber check for s > 0)",
            d: d as i64,
            s: ts.s as i64,
        });
    }
    let n = m + 1;
    let dim_e = m - ts.t as usize + 1;
    let expected_pairs =
        gaussian_binomial(n as i64, dim_e as i64, qu) * gaussian_binomial(dim_e as i64, 1, qu);
    guard_check("flag pairs", &expected_pairs, guard)?;

    let points = PointList::projective(field, m)?;
    let hyperplanes_in_e = linalg::subspaces(q, dim_e, dim_e - 1);
    let images: Vec<Bits> = linalg::subspaces(q, n, dim_e)
        .par_iter()
        .flat_map_iter(|e| {
            let e_points = subspace_points(field, e, &points);
            let points = &points;
            hyperplanes_in_e.iter().map(move |coeffs| {
                // H is spanned by combinations of the rows of E
                let h_basis: Vec<Vec<u32>> = coeffs
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u32; n];
                        for (&a, row) in c.iter().zip(e) {
                            for (x, &y) in v.iter_mut().zip(row) {
                                *x = field.add(*x, field.mul(a, y));
                            }
                        }
                        v
                    })
                    .collect();
                let h_points = subspace_points(field, &h_basis, points);
                bits_from(
                    points.len(),
                    e_points.iter().copied().filter(|i| h_points.binary_search(i).is_err()),
                )
            })
        })
        .collect();
    let pairs = images.len() as u64;
    let distinct: BTreeSet<&Bits> = images.iter().collect();
    let distinct_images = distinct.len() as u64;
    let injective = distinct_images == pairs;
    let count = BigInt::from(qu - 1) * pairs;
    let formula_count = prm_min_weight_count(qu, d as i64, mu)?;
    let ok = injective && BigInt::from(pairs) == expected_pairs && count == formula_count;
    Ok(TauReport {
        q: qu,
        d: d as i64,
        m: mu,
        t: ts.t,
        pairs,
        expected_pairs,
        distinct_images,
        injective,
        count,
        formula_count,
        ok,
    })
}
