//! Arithmetic in GF(q) for any prime power q = p^e with q <= 2^16.
//!
//! Elements are identified with their canonical integer in `[0, q)`: the base-p
//! digits of the integer are the coefficients (low degree first) of the
//! polynomial representative modulo the field's defining polynomial. That
//! polynomial is the lexicographically least monic irreducible of degree e,
//! with coefficient lists compared from the constant term upwards.
//!
//! [`Field`] is a cheap, shareable handle holding log/exp tables. Hot loops work
//! on raw `u32` encodings through its methods; [`FieldElement`] is the checked
//! variant that carries its field and refuses mixed-field arithmetic.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Parameters of GF(p^e) together with its defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    /// Monic irreducible of degree `e` over GF(p), coefficients `c_0..=c_e`.
    pub modulus: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
}

impl From<FieldSpec> for SpecRepr {
    fn from(s: FieldSpec) -> Self {
        SpecRepr {
            p: s.p,
            e: s.e,
            modulus: s.modulus,
        }
    }
}

impl TryFrom<SpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(r: SpecRepr) -> Result<Self> {
        let spec = FieldSpec::new(r.p as u64, r.e)?;
        if spec.modulus != r.modulus {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: format!(
                    "modulus {:?} is not the canonical modulus {:?} for GF({}^{})",
                    r.modulus, spec.modulus, r.p, r.e
                ),
            });
        }
        Ok(spec)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl FieldSpec {
    /// Validates `(p, e)` and selects the defining polynomial.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e < 1 {
            return Err(Error::BadExponent(e));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::FieldTooLarge(p.saturating_pow(e)))?;
        let p = p as u32;
        Ok(FieldSpec {
            p,
            e,
            q: q as u32,
            modulus: least_irreducible(p, e),
        })
    }

    /// Splits `q` into `p^e` and builds the `FieldSpec`.
    pub fn from_order(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut rest = q;
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        FieldSpec::new(p, e)
    }
}

// Polynomials over GF(p) as coefficient vectors, low degree first.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = (r[r.len() - 1] * lead_inv) % p;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (factor * c) % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime and small, so Fermat is fine
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    // a reducible f has a monic factor of degree <= deg / 2
    for k in 1..=deg / 2 {
        let count = (p as usize).pow(k as u32);
        for n in 0..count {
            let mut g = Vec::with_capacity(k + 1);
            let mut x = n;
            for _ in 0..k {
                g.push((x % p as usize) as u32);
                x /= p as usize;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `e` over GF(p),
/// comparing `c_0` first.
fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let total = (p as usize).pow(e as u32);
    for n in 0..total {
        // c_0 is the most significant digit of n
        let mut coeffs = vec![0u32; e + 1];
        let mut x = n;
        for i in (0..e).rev() {
            coeffs[i] = (x % p as usize) as u32;
            x /= p as usize;
        }
        coeffs[e] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

struct Tables {
    spec: FieldSpec,
    /// `exp[i] = g^i` for `i < 2(q-1)`
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// Shareable handle to GF(q) with precomputed tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.spec.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Ok(Self::from_spec(FieldSpec::new(p, e)?))
    }

    pub fn from_order(q: u64) -> Result<Self> {
        Ok(Self::from_spec(FieldSpec::from_order(q)?))
    }

    pub fn from_spec(spec: FieldSpec) -> Self {
        let q = spec.q as usize;
        let p = spec.p;
        let digits = |mut a: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(spec.e as usize);
            for _ in 0..spec.e {
                v.push(a % p);
                a /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let slow_mul = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a), digits(b));
            let mut prod = vec![0u32; da.len() + db.len()];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(&prod, &spec.modulus, p);
            r.resize(spec.e as usize, 0);
            encode(&r)
        };
        let slow_add = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a), digits(b));
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            encode(&sum)
        };

        let order_of = |g: u32| -> usize {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = slow_mul(x, g);
                k += 1;
            }
            k
        };
        let g = (1..q as u32).find(|&g| order_of(g) == q - 1).unwrap_or(1);
        let mut exp = Vec::with_capacity(2 * (q - 1));
        let mut x = 1u32;
        for _ in 0..2 * (q - 1) {
            exp.push(x);
            x = slow_mul(x, g);
        }
        let mut log = vec![0u32; q];
        for (i, &v) in exp.iter().take(q - 1).enumerate() {
            log[v as usize] = i as u32;
        }
        let neg: Vec<u32> = (0..q as u32)
            .map(|a| {
                let d: Vec<u32> = digits(a).iter().map(|&c| (p - c) % p).collect();
                encode(&d)
            })
            .collect();
        let add = (q <= 256 && spec.e > 1 && p != 2).then(|| {
            let mut t = vec![0u32; q * q];
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    t[a as usize * q + b as usize] = slow_add(a, b);
                }
            }
            t
        });
        Field(Arc::new(Tables {
            spec,
            exp,
            log,
            neg,
            add,
        }))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.spec.q
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    /// All elements in increasing canonical order.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.q())
            .map(|repr| FieldElement {
                field: self.clone(),
                repr,
            })
            .collect()
    }

    pub fn element(&self, repr: u64) -> Result<FieldElement> {
        if repr >= self.q() as u64 {
            return Err(Error::NotAnElement {
                value: repr,
                q: self.q(),
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            repr: repr as u32,
        })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let t = &self.0;
        let p = t.spec.p;
        if t.spec.e == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else if p == 2 {
            a ^ b
        } else if let Some(table) = &t.add {
            table[a as usize * t.spec.q as usize + b as usize]
        } else {
            let (mut a, mut b) = (a, b);
            let (mut out, mut place) = (0, 1);
            for _ in 0..t.spec.e {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero(self.q()));
        }
        let t = &self.0;
        let qm1 = t.spec.q - 1;
        Ok(t.exp[((qm1 - t.log[a as usize]) % qm1) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n` for any integer `n`; `0^0 = 1`, negative powers of zero fail.
    pub fn pow(&self, a: u32, n: i64) -> Result<u32> {
        if a == 0 {
            return match n {
                0 => Ok(1),
                n if n > 0 => Ok(0),
                _ => Err(Error::DivisionByZero(self.q())),
            };
        }
        let t = &self.0;
        let qm1 = (t.spec.q - 1) as i64;
        let k = (t.log[a as usize] as i64 * n.rem_euclid(qm1)).rem_euclid(qm1);
        Ok(t.exp[k as usize])
    }

    /// `a^n` for nonnegative `n`, never failing.
    #[inline]
    pub fn pow_u(&self, a: u32, n: u32) -> u32 {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &self.0;
        let qm1 = (t.spec.q - 1) as u64;
        t.exp[(t.log[a as usize] as u64 * (n as u64 % qm1) % qm1) as usize]
    }
}

/// A field element that knows its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    repr: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_GF({})", self.repr, self.field.q())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn repr(&self) -> u32 {
        self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.q(), other.field.q()));
        }
        Ok(())
    }

    fn with(&self, repr: u32) -> Self {
        FieldElement {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.repr, other.repr)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.repr, other.repr)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.repr, other.repr)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.div(self.repr, other.repr)?))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.repr))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.repr)?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        Ok(self.with(self.field.pow(self.repr, n)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields_up_to(limit: u64) -> Vec<Field> {
        (2..=limit)
            .filter_map(|q| Field::from_order(q).ok())
            .collect()
    }

    #[test]
    fn construction() {
        let f2 = FieldSpec::new(2, 1).unwrap();
        assert_eq!((f2.p, f2.e, f2.q), (2, 1, 2));
        let f4 = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f4.modulus, vec![1, 1, 1]);
        assert_eq!(FieldSpec::new(4, 1), Err(Error::NotPrime(4)));
        assert_eq!(FieldSpec::new(2, 0), Err(Error::BadExponent(0)));
        assert!(matches!(FieldSpec::new(2, 17), Err(Error::FieldTooLarge(_))));
        assert!(FieldSpec::new(2, 16).is_ok());
        assert_eq!(FieldSpec::from_order(6), Err(Error::NotPrimePower(6)));
        assert_eq!(FieldSpec::from_order(9).unwrap().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn least_irreducible_is_least() {
        // GF(8): x^3+x^2+1 = [1,0,1,1] precedes x^3+x+1 = [1,1,0,1]
        assert_eq!(FieldSpec::new(2, 3).unwrap().modulus, vec![1, 0, 1, 1]);
        assert_eq!(FieldSpec::new(3, 1).unwrap().modulus, vec![0, 1]);
    }

    #[test]
    fn small_examples() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.mul(2, 2), 3);
        let elems: Vec<u32> = f4.elements().iter().map(|a| a.repr()).collect();
        assert_eq!(elems, vec![0, 1, 2, 3]);
        assert_eq!(Field::new(2, 1).unwrap().elements().len(), 2);
    }

    #[test]
    fn element_errors() {
        let f3 = Field::new(3, 1).unwrap();
        let f5 = Field::new(5, 1).unwrap();
        let a = f3.element(1).unwrap();
        let b = f5.element(1).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch(3, 5)));
        assert_eq!(
            f3.element(0).unwrap().inv(),
            Err(Error::DivisionByZero(3))
        );
        assert!(f3.element(3).is_err());
        assert_eq!(f3.element(2).unwrap().pow(-1).unwrap().repr(), 2);
        assert_eq!(f3.element(0).unwrap().pow(0).unwrap().repr(), 1);
        assert!(f3.element(0).unwrap().pow(-2).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in fields_up_to(9) {
            let q = f.q();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_and_lagrange() {
        for f in fields_up_to(16) {
            let q = f.q();
            for a in 0..q {
                assert_eq!(f.pow_u(a, q), a, "x^q = x fails in GF({q})");
                if a != 0 {
                    assert_eq!(f.pow(a, (q - 1) as i64).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn spec_json_shape() {
        let spec = FieldSpec::new(2, 2).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"p":2,"e":2,"modulus":[1,1,1]}"#);
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"e":2,"modulus":[1,0,1]}"#).is_err());
    }

    #[test]
    fn large_field_tables() {
        let f = Field::new(2, 16).unwrap();
        let a = 12345;
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        let f = Field::new(3, 7).unwrap();
        assert_eq!(f.add(f.neg(1000), 1000), 0);
        assert_eq!(f.pow_u(1000, f.q()), 1000);
    }
}
