//! Sparse multivariate polynomials over GF(q).
//!
//! Monomials are exponent vectors of fixed length. Their canonical order is by
//! total degree, then by exponent vector in descending lexicographic order, so
//! `X0` precedes `X1` and `X0*X1^2` precedes `X2^3`. This order fixes the row
//! order of every generator matrix built from a monomial basis.
//!
//! The text format is `c*X0^a0*X1^a1*...` per term, terms joined by `" + "`,
//! with the coefficient printed as its canonical integer and omitted when it is
//! one, zero exponents omitted and exponent one written bare. The zero
//! polynomial prints as `0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::Field;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Index of the last variable with a positive exponent.
    pub fn last_var(&self) -> Option<usize> {
        self.0.iter().rposition(|&a| a > 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Projective reduction: every exponent before the last variable is
    /// brought into `[1, q-1]` modulo `q-1` when it is at least `q`, and the
    /// removed degree is added to the last variable.
    pub fn reduce_projective(&self, q: u32) -> Monomial {
        let Some(last) = self.last_var() else {
            return self.clone();
        };
        let mut out = self.0.clone();
        let mut deficit = 0;
        for a in &mut out[..last] {
            if *a >= q {
                let reduced = (*a - 1) % (q - 1) + 1;
                deficit += *a - reduced;
                *a = reduced;
            }
        }
        out[last] += deficit;
        Monomial(out)
    }

    pub fn is_projectively_reduced(&self, q: u32) -> bool {
        match self.last_var() {
            None => true,
            Some(last) => self.0[..last].iter().all(|&a| a < q),
        }
    }

    /// Reduced in the affine sense: every exponent at most `q - 1`.
    pub fn is_reduced_affine(&self, q: u32) -> bool {
        self.0.iter().all(|&a| a < q)
    }

    /// Value at `point`, with `0^0 = 1`.
    pub fn evaluate(&self, field: &Field, point: &[u32]) -> u32 {
        self.0
            .iter()
            .zip(point)
            .fold(1, |acc, (&a, &x)| field.mul(acc, field.pow_u(x, a)))
    }

    fn write_factors(&self, f: &mut fmt::Formatter<'_>, mut first: bool) -> fmt::Result {
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "X{i}")?;
            } else {
                write!(f, "X{i}^{a}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        self.write_factors(f, true)
    }
}

/// Polynomial in `nvars` variables over a fixed field; no zero coefficients
/// are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{:?}, {} vars]({})", self.field, self.nvars, self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (mono, &c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if mono.degree() == 0 {
                write!(f, "{c}")?;
            } else if c == 1 {
                mono.write_factors(f, true)?;
            } else {
                write!(f, "{c}")?;
                mono.write_factors(f, false)?;
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn zero(field: &Field, nvars: usize) -> Self {
        Poly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, nvars: usize, c: u32) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn var(field: &Field, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), 1)
    }

    pub fn term(field: &Field, mono: Monomial, c: u32) -> Self {
        let mut p = Self::zero(field, mono.nvars());
        p.add_term(mono, c);
        p
    }

    /// `c_0 X_0 + ... + c_{n-1} X_{n-1} + constant`.
    pub fn affine(field: &Field, linear: &[u32], constant: u32) -> Self {
        let n = linear.len();
        let mut p = Self::constant(field, n, constant);
        for (i, &c) in linear.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, mono: &Monomial) -> u32 {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, mono: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let field = &self.field;
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every stored monomial has degree `d` (vacuous for zero).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (m, &a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(&self.field, self.nvars, 1);
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

    fn check_ambient(&self, other: &Poly) {
        assert!(
            self.field == other.field && self.nvars == other.nvars,
            "polynomials live in different rings"
        );
    }

    pub fn evaluate(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if let Some(&bad) = point.iter().find(|&&x| x >= self.field.q()) {
            return Err(Error::NotAnElement {
                value: bad as u64,
                q: self.field.q(),
            });
        }
        Ok(self.eval_unchecked(point))
    }

    pub(crate) fn eval_unchecked(&self, point: &[u32]) -> u32 {
        self.terms.iter().fold(0, |acc, (m, &c)| {
            self.field
                .add(acc, self.field.mul(c, m.evaluate(&self.field, point)))
        })
    }

    pub fn reduce_projective(&self) -> Poly {
        let q = self.field.q();
        let mut out = Poly::zero(&self.field, self.nvars);
        for (m, &c) in &self.terms {
            out.add_term(m.reduce_projective(q), c);
        }
        out
    }

    pub fn is_projectively_reduced(&self) -> bool {
        let q = self.field.q();
        self.terms.keys().all(|m| m.is_projectively_reduced(q))
    }

    /// Composition `self(images[0], ..., images[n-1])`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target_vars = images.first().map_or(0, Poly::nvars);
        let mut power_cache: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::constant(&self.field, target_vars, 1), p.clone()])
            .collect();
        let mut out = Poly::zero(&self.field, target_vars);
        for (m, &c) in &self.terms {
            let mut prod = Poly::constant(&self.field, target_vars, c);
            for (i, &a) in m.exponents().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= a as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                prod = &prod * &cache[a as usize];
            }
            out = &out + &prod;
        }
        out
    }

    /// Parses the text format into a polynomial in `nvars` variables.
    pub fn parse(text: &str, field: &Field, nvars: usize) -> Result<Poly> {
        Parser::new(text, field, nvars).parse()
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.check_ambient(rhs);
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let mut out = Poly::zero(&self.field, self.nvars);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ambient(rhs);
        let mut out = Poly::zero(&self.field, self.nvars);
        for (ma, &a) in &self.terms {
            for (mb, &b) in &rhs.terms {
                out.add_term(ma.mul(mb), self.field.mul(a, b));
            }
        }
        out
    }
}

/// A nonzero homogeneous linear polynomial `c_0 X_0 + ... + c_m X_m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct LinearForm {
    coeffs: Vec<u32>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::ZeroLinearForm);
        }
        Ok(LinearForm { coeffs })
    }

    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut coeffs = vec![0; nvars];
        coeffs[i] = 1;
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn evaluate(&self, field: &Field, point: &[u32]) -> u32 {
        dot(field, &self.coeffs, point)
    }

    pub fn to_poly(&self, field: &Field) -> Poly {
        Poly::affine(field, &self.coeffs, 0)
    }
}

#[inline]
pub(crate) fn dot(field: &Field, a: &[u32], b: &[u32]) -> u32 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// Coordinate change `X -> X(Y)` with `L(X(Y)) = Y_m`, and its inverse.
struct LinearChange {
    /// images of `X_0..X_m` as polynomials in `Y`
    forward: Vec<Poly>,
    /// images of `Y_0..Y_m` as polynomials in `X`
    backward: Vec<Poly>,
}

impl LinearChange {
    fn new(field: &Field, l: &LinearForm) -> Result<Self> {
        let n = l.nvars();
        let k = l
            .coeffs
            .iter()
            .rposition(|&c| c != 0)
            .ok_or(Error::ZeroLinearForm)?;
        let last = n - 1;
        // X_i (i != k) becomes Y_slot(i); slots skip k and fill 0..m-1
        let slot = |i: usize| if i < k { i } else { i - 1 };
        let ck_inv = field.inv(l.coeffs[k])?;
        let mut forward = Vec::with_capacity(n);
        for i in 0..n {
            if i == k {
                let mut xk = Poly::var(field, n, last).scale(ck_inv);
                for (j, &c) in l.coeffs.iter().enumerate() {
                    if j != k && c != 0 {
                        let t = Poly::var(field, n, slot(j)).scale(field.mul(c, ck_inv));
                        xk = &xk - &t;
                    }
                }
                forward.push(xk);
            } else {
                forward.push(Poly::var(field, n, slot(i)));
            }
        }
        let mut backward = vec![Poly::zero(field, n); n];
        for i in (0..n).filter(|&i| i != k) {
            backward[slot(i)] = Poly::var(field, n, i);
        }
        backward[last] = l.to_poly(field);
        Ok(LinearChange { forward, backward })
    }
}

fn divide_by_last_var(g: &Poly) -> Option<Poly> {
    let last = g.nvars() - 1;
    let mut h = Poly::zero(g.field(), g.nvars());
    for (m, c) in g.terms() {
        let mut e = m.exponents().to_vec();
        if e[last] == 0 {
            return None;
        }
        e[last] -= 1;
        h.add_term(Monomial::new(e), c);
    }
    Some(h)
}

/// Exact polynomial divisibility by a linear form: returns `g` with
/// `f = L * g`, or `None` when `L` does not divide `f`.
pub fn divides_linear(l: &LinearForm, f: &Poly) -> Result<Option<Poly>> {
    if l.nvars() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            got: l.nvars(),
        });
    }
    let change = LinearChange::new(f.field(), l)?;
    let g = f.substitute(&change.forward);
    Ok(divide_by_last_var(&g).map(|h| h.substitute(&change.backward)))
}

/// Divisibility up to functions on `F_q^{m+1}`: returns `g` such that `L * g`
/// and `f` take the same value at every point, or `None` if no such `g`
/// exists. For homogeneous `f` this succeeds exactly when the hyperplane
/// `V(L)` lies in `V(f)`.
pub fn divides_linear_on_points(l: &LinearForm, f: &Poly) -> Result<Option<Poly>> {
    if l.nvars() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            got: l.nvars(),
        });
    }
    let change = LinearChange::new(f.field(), l)?;
    let g = f.substitute(&change.forward).reduce_projective();
    Ok(divide_by_last_var(&g).map(|h| h.substitute(&change.backward)))
}

/// Linear form vanishing at `a` but not at `b`: `a_i X_j - a_j X_i` for the
/// first pair `i < j` with `a_i b_j - a_j b_i != 0`.
pub fn separating_form(field: &Field, a: &[u32], b: &[u32]) -> Result<LinearForm> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.iter().all(|&x| x == 0) || b.iter().all(|&x| x == 0) {
        return Err(Error::ZeroLinearForm);
    }
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = field.sub(field.mul(a[i], b[j]), field.mul(a[j], b[i]));
            if det != 0 {
                let mut coeffs = vec![0; n];
                coeffs[j] = a[i];
                coeffs[i] = field.neg(a[j]);
                return LinearForm::new(coeffs);
            }
        }
    }
    Err(Error::SamePoint)
}

fn sorted(mut v: Vec<Monomial>) -> Vec<Monomial> {
    v.sort();
    v
}

/// All projectively reduced monomials of degree `d` in `m + 1` variables, in
/// canonical order. They form a basis of the space `C_q(d, m)`.
pub fn basis_c(q: u32, d: u32, m: usize) -> Vec<Monomial> {
    let n = m + 1;
    let mut out = Vec::new();
    // choose the last variable, its exponent, then a reduced prefix
    for last in 0..n {
        for top in 1..=d {
            let rest = d - top;
            let mut prefix = vec![0u32; last];
            fill_bounded(&mut prefix, 0, rest, q - 1, &mut |pre| {
                let mut e = vec![0u32; n];
                e[..last].copy_from_slice(pre);
                e[last] = top;
                out.push(Monomial::new(e));
            });
        }
    }
    if d == 0 {
        out.push(Monomial::one(n));
    }
    sorted(out)
}

/// Calls `f` on every vector with entries in `[0, bound]` summing to `total`.
fn fill_bounded(buf: &mut [u32], pos: usize, total: u32, bound: u32, f: &mut impl FnMut(&[u32])) {
    if pos == buf.len() {
        if total == 0 {
            f(buf);
        }
        return;
    }
    let remaining = (buf.len() - pos) as u32;
    if total > remaining * bound {
        return;
    }
    for a in 0..=bound.min(total) {
        buf[pos] = a;
        fill_bounded(buf, pos + 1, total - a, bound, f);
    }
    buf[pos] = 0;
}

/// Reduced monomials in `n` variables (each exponent at most `q - 1`) of total
/// degree at most `nu`, in canonical order.
pub fn reduced_monomials_affine(q: u32, nu: u32, n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let top = nu.min(n as u32 * (q - 1));
    let mut buf = vec![0u32; n];
    for deg in 0..=top {
        fill_bounded(&mut buf, 0, deg, q - 1, &mut |e| out.push(Monomial::new(e.to_vec())));
    }
    sorted(out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a Field,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, field: &'a Field, nvars: usize) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            field,
            nvars,
        }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> Error {
        let before = &self.chars[..at.min(self.chars.len())];
        let line = before.iter().filter(|&&c| c == '\n').count() + 1;
        let column = before.iter().rev().take_while(|&&c| c != '\n').count() + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(start, "expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| self.error(start, format!("number {s} is too large")))
    }

    fn parse(mut self) -> Result<Poly> {
        let mut poly = Poly::zero(self.field, self.nvars);
        if self.peek().is_none() {
            return Err(self.error(self.pos, "empty polynomial"));
        }
        loop {
            let (mono, c) = self.term()?;
            poly.add_term(mono, c);
            match self.peek() {
                None => return Ok(poly),
                Some('+') => self.pos += 1,
                Some(other) => {
                    return Err(self.error(self.pos, format!("unexpected '{other}'")));
                }
            }
        }
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let mut exps = vec![0u32; self.nvars];
        let mut coeff = 1u32;
        loop {
            match self.peek() {
                Some('X') | Some('x') => {
                    let at = self.pos;
                    self.pos += 1;
                    let idx = self.number()? as usize;
                    if idx >= self.nvars {
                        return Err(self.error(
                            at,
                            format!("variable X{idx} outside X0..X{}", self.nvars.saturating_sub(1)),
                        ));
                    }
                    let mut exp = 1u64;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        exp = self.number()?;
                    }
                    let e = u32::try_from(exp)
                        .ok()
                        .and_then(|e| exps[idx].checked_add(e))
                        .ok_or_else(|| self.error(at, "exponent too large"))?;
                    exps[idx] = e;
                }
                Some(c) if c.is_ascii_digit() => {
                    let at = self.pos;
                    let v = self.number()?;
                    if v >= self.field.q() as u64 {
                        return Err(self.error(
                            at,
                            format!("coefficient {v} is not an element of GF({})", self.field.q()),
                        ));
                    }
                    coeff = self.field.mul(coeff, v as u32);
                }
                Some(other) => {
                    return Err(self.error(self.pos, format!("unexpected '{other}'")));
                }
                None => return Err(self.error(self.pos, "unexpected end of input")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((Monomial::new(exps), coeff));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::{dim_gamma, rho};
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> Field {
        Field::from_order(q).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn all_points(q: u32, n: usize) -> Vec<Vec<u32>> {
        let total = (q as usize).pow(n as u32);
        (0..total)
            .map(|mut x| {
                let mut v = vec![0; n];
                for c in v.iter_mut().rev() {
                    *c = (x % q as usize) as u32;
                    x /= q as usize;
                }
                v
            })
            .collect()
    }

    fn random_homogeneous(rng: &mut ChaCha8Rng, field: &Field, nvars: usize, d: u32) -> Poly {
        let mut p = Poly::zero(field, nvars);
        for _ in 0..rng.gen_range(1..6) {
            let mut e = vec![0u32; nvars];
            for _ in 0..d {
                e[rng.gen_range(0..nvars)] += 1;
            }
            p.add_term(Monomial::new(e), rng.gen_range(0..field.q()));
        }
        p
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(mono(&[3, 2, 1]).reduce_projective(3), mono(&[1, 2, 3]));
        for q in [2, 3, 4, 5] {
            assert_eq!(mono(&[4, 0, 0]).reduce_projective(q), mono(&[4, 0, 0]));
        }
        assert_eq!(mono(&[0, 0, 0]).reduce_projective(3), mono(&[0, 0, 0]));
        assert!(mono(&[1, 2, 3]).is_projectively_reduced(3));
        assert!(!mono(&[3, 2, 1]).is_projectively_reduced(3));
        assert!(Poly::zero(&gf(3), 3).is_projectively_reduced());
        assert!(Poly::zero(&gf(3), 3).reduce_projective().is_zero());
    }

    #[test]
    fn reduction_collisions_sum() {
        // over GF(2), X0^2*X1 and X0*X1^2 both reduce to X0*X1^2
        let f2 = gf(2);
        let p = Poly::parse("X0^2*X1 + X0*X1^2", &f2, 2).unwrap();
        assert!(p.reduce_projective().is_zero());
        let f3 = gf(3);
        let p = Poly::parse("X0^3*X1 + X0*X1^3", &f3, 2).unwrap();
        assert_eq!(p.reduce_projective().to_string(), "2*X0*X1^3");
    }

    #[test]
    fn monomial_order() {
        let basis = reduced_monomials_affine(2, 2, 2);
        let text: Vec<String> = basis.iter().map(ToString::to_string).collect();
        assert_eq!(text, ["1", "X0", "X1", "X0*X1"]);
        assert_eq!(reduced_monomials_affine(2, 1, 2).len(), 3);
        assert_eq!(reduced_monomials_affine(5, 0, 3), vec![Monomial::one(3)]);
    }

    #[test]
    fn basis_sizes() {
        let b = basis_c(2, 1, 2);
        assert_eq!(b, vec![mono(&[1, 0, 0]), mono(&[0, 1, 0]), mono(&[0, 0, 1])]);
        assert_eq!(basis_c(2, 2, 2).len(), 6);
        assert_eq!(basis_c(3, 5, 2).len(), 13);
        assert!(basis_c(3, 4, 2).iter().all(|m| m.is_projectively_reduced(3) && m.degree() == 4));
    }

    #[test]
    fn basis_matches_gamma_and_brute_filter() {
        for q in [2u32, 3, 4, 5] {
            for m in 1..=3usize {
                for d in 1..=(m as u32 * (q - 1) + 1) {
                    let basis = basis_c(q, d, m);
                    assert_eq!(
                        BigInt::from(basis.len()),
                        dim_gamma(q as u64, d as i64, m as u64).unwrap(),
                        "q={q} d={d} m={m}"
                    );
                    // brute filter over all degree-d monomials
                    let mut all = Vec::new();
                    let mut buf = vec![0u32; m + 1];
                    fill_bounded(&mut buf, 0, d, d, &mut |e| all.push(Monomial::new(e.to_vec())));
                    let mut filtered: Vec<Monomial> =
                        all.into_iter().filter(|mo| mo.is_projectively_reduced(q)).collect();
                    filtered.sort();
                    assert_eq!(basis, filtered);
                }
            }
        }
    }

    #[test]
    fn affine_count_matches_rho() {
        for q in [2u32, 3, 4] {
            for n in 0..=3usize {
                for nu in 0..=(n as u32 * (q - 1) + 2) {
                    assert_eq!(
                        BigInt::from(reduced_monomials_affine(q, nu, n).len()),
                        rho(q as u64, nu as i64, n as u64)
                    );
                }
            }
        }
    }

    #[test]
    fn evaluation() {
        let f2 = gf(2);
        let p = Poly::parse("X0*X1", &f2, 3).unwrap();
        assert_eq!(p.evaluate(&[1, 1, 0]).unwrap(), 1);
        assert_eq!(
            p.evaluate(&[1, 1]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        );
        for q in [3u64, 4, 5] {
            let f = gf(q);
            let x0 = Poly::var(&f, 2, 0).pow(q as u32 - 1);
            for a in 1..q as u32 {
                for b in 0..q as u32 {
                    assert_eq!(x0.evaluate(&[a, b]).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn reduction_properties_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2u64, 3, 4, 5] {
            let f = gf(q);
            for _ in 0..1000 {
                let nvars = rng.gen_range(1..=4);
                let d = rng.gen_range(0..=3 * q as u32);
                let p = random_homogeneous(&mut rng, &f, nvars, d);
                let r = p.reduce_projective();
                assert_eq!(r.reduce_projective(), r);
                assert!(r.is_homogeneous(d));
                assert!(r.is_projectively_reduced());
            }
        }
    }

    #[test]
    fn reduction_preserves_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 4] {
            let f = gf(q);
            for m in 1..=3usize {
                let points = all_points(q as u32, m + 1);
                for _ in 0..40 {
                    let d = rng.gen_range(1..=2 * q as u32 + 2);
                    let p = random_homogeneous(&mut rng, &f, m + 1, d);
                    let r = p.reduce_projective();
                    for pt in &points {
                        assert_eq!(p.evaluate(pt).unwrap(), r.evaluate(pt).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn text_format() {
        let f3 = gf(3);
        let p = Poly::parse("2*X0*X1^2 + X2^3", &f3, 3).unwrap();
        assert_eq!(p.to_string(), "2*X0*X1^2 + X2^3");
        let p = Poly::parse("X0^3*X1^2*X2", &f3, 3).unwrap();
        assert_eq!(p.reduce_projective().to_string(), "X0*X1^2*X2^3");
        assert_eq!(Poly::parse("0", &f3, 2).unwrap().to_string(), "0");
        assert_eq!(Poly::parse("2 + X1", &f3, 2).unwrap().to_string(), "2 + X1");
        assert_eq!(Poly::parse("2*2*X0", &f3, 2).unwrap().to_string(), "X0");
        match Poly::parse("X0 + 3*X1", &f3, 2) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("{other:?}"),
        }
        match Poly::parse("X0 +\n X5", &f3, 2) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 2)),
            other => panic!("{other:?}"),
        }
        assert!(Poly::parse("X0 +", &f3, 2).is_err());
        assert!(Poly::parse("X0 ^ 2 Y", &f3, 2).is_err());
        assert!(Poly::parse("", &f3, 2).is_err());
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(terms in proptest::collection::vec(
            (proptest::collection::vec(0u32..5, 3), 0u32..4), 0..6))
        {
            let f4 = gf(4);
            let mut p = Poly::zero(&f4, 3);
            for (e, c) in terms {
                p.add_term(Monomial::new(e), c);
            }
            let back = Poly::parse(&p.to_string(), &f4, 3).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn reduction_idempotent_and_degree_preserving(
            e in proptest::collection::vec(0u32..12, 1..5), q in prop_oneof![Just(2u32), Just(3), Just(4), Just(5), Just(7)])
        {
            let m = Monomial::new(e);
            let r = m.reduce_projective(q);
            prop_assert_eq!(r.degree(), m.degree());
            prop_assert_eq!(r.reduce_projective(q), r.clone());
            prop_assert!(r.is_projectively_reduced(q));
        }
    }

    #[test]
    fn divides_examples() {
        let f2 = gf(2);
        let l = LinearForm::coordinate(3, 2);
        let f = Poly::parse("X0*X2 + X1*X2", &f2, 3).unwrap();
        let g = divides_linear(&l, &f).unwrap().unwrap();
        assert_eq!(g.to_string(), "X0 + X1");
        let l0 = LinearForm::coordinate(3, 0);
        let f = Poly::parse("X1^2", &f2, 3).unwrap();
        assert_eq!(divides_linear(&l0, &f).unwrap(), None);
    }

    #[test]
    fn divides_general_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2u64, 3, 4, 5] {
            let f = gf(q);
            for _ in 0..100 {
                let n = rng.gen_range(2..=4);
                let coeffs: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q as u32)).collect();
                let Ok(l) = LinearForm::new(coeffs) else { continue };
                let deg = rng.gen_range(0..4);
                let h = random_homogeneous(&mut rng, &f, n, deg);
                let prod = &l.to_poly(&f) * &h;
                let quotient = divides_linear(&l, &prod).unwrap().unwrap();
                assert_eq!(&l.to_poly(&f) * &quotient, prod);
            }
        }
    }

    #[test]
    fn reduced_polynomial_vanishing_on_hyperplane_need_not_be_a_multiple() {
        // reduce((X0+X1+X2) * X0*X1) = X0*X1*X2 over GF(2): it vanishes on
        // V(X0+X1+X2) but is not a polynomial multiple of X0+X1+X2
        let f2 = gf(2);
        let l = LinearForm::new(vec![1, 1, 1]).unwrap();
        let f = (&l.to_poly(&f2) * &Poly::parse("X0*X1", &f2, 3).unwrap()).reduce_projective();
        assert_eq!(f.to_string(), "X0*X1*X2");
        assert!(f.is_projectively_reduced());
        assert_eq!(divides_linear(&l, &f).unwrap(), None);
        let g = divides_linear_on_points(&l, &f).unwrap().unwrap();
        let lg = &l.to_poly(&f2) * &g;
        for pt in all_points(2, 3) {
            assert_eq!(lg.evaluate(&pt).unwrap(), f.evaluate(&pt).unwrap());
        }
    }

    #[test]
    fn hyperplane_containment_gives_linear_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2u64, 3, 4] {
            let f = gf(q);
            for m in 1..=3usize {
                let n = m + 1;
                let points = all_points(q as u32, n);
                for _ in 0..30 {
                    let coeffs: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q as u32)).collect();
                    let Ok(l) = LinearForm::new(coeffs) else { continue };
                    let d = rng.gen_range(1..=m as u32 * (q as u32 - 1) + 1);
                    let h = random_homogeneous(&mut rng, &f, n, d - 1);
                    let big_f = (&l.to_poly(&f) * &h).reduce_projective();
                    // containment V(L) in V(F)
                    for pt in &points {
                        if l.evaluate(&f, pt) == 0 {
                            assert_eq!(big_f.evaluate(pt).unwrap(), 0);
                        }
                    }
                    let g = divides_linear_on_points(&l, &big_f).unwrap().unwrap();
                    let lg = &l.to_poly(&f) * &g;
                    for pt in &points {
                        assert_eq!(lg.evaluate(pt).unwrap(), big_f.evaluate(pt).unwrap());
                    }
                    // for a coordinate hyperplane the quotient is exact
                    let xi = LinearForm::coordinate(n, rng.gen_range(0..n));
                    let h2 = random_homogeneous(&mut rng, &f, n, d - 1);
                    let f2 = (&xi.to_poly(&f) * &h2).reduce_projective();
                    if !f2.is_zero() {
                        let g2 = divides_linear(&xi, &f2).unwrap().unwrap();
                        assert_eq!(&xi.to_poly(&f) * &g2, f2);
                    }
                }
            }
        }
    }

    #[test]
    fn not_contained_means_no_factor() {
        let f3 = gf(3);
        let l = LinearForm::new(vec![1, 2, 0]).unwrap();
        let f = Poly::parse("X0^2", &f3, 3).unwrap();
        assert_eq!(divides_linear_on_points(&l, &f).unwrap(), None);
    }

    #[test]
    fn separating_examples() {
        let f2 = gf(2);
        let l = separating_form(&f2, &[1, 0, 0], &[0, 1, 0]).unwrap();
        assert_eq!(l.coeffs(), &[0, 1, 0]);
        // a_0 X_1 - a_1 X_0 = X0 + X1; the single variable X1 does not vanish at A
        let l = separating_form(&f2, &[1, 1, 0], &[1, 0, 0]).unwrap();
        assert_eq!(l.coeffs(), &[1, 1, 0]);
        assert_eq!(l.evaluate(&f2, &[1, 1, 0]), 0);
        assert_eq!(LinearForm::coordinate(3, 1).evaluate(&f2, &[1, 1, 0]), 1);
        assert_eq!(separating_form(&f2, &[1, 1, 0], &[1, 1, 0]), Err(Error::SamePoint));
        let f5 = gf(5);
        assert_eq!(separating_form(&f5, &[1, 2, 3], &[2, 4, 2]).unwrap().evaluate(&f5, &[1, 2, 3]), 0);
        assert_eq!(separating_form(&f5, &[1, 2, 3], &[2, 4, 6 % 5]), Err(Error::SamePoint));
    }

    #[test]
    fn separating_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = gf(4);
        for _ in 0..500 {
            let a: Vec<u32> = (0..4).map(|_| rng.gen_range(0..4)).collect();
            let b: Vec<u32> = (0..4).map(|_| rng.gen_range(0..4)).collect();
            match separating_form(&f, &a, &b) {
                Ok(l) => {
                    assert_eq!(l.evaluate(&f, &a), 0);
                    assert_ne!(l.evaluate(&f, &b), 0);
                }
                Err(_) => {}
            }
        }
    }
}
