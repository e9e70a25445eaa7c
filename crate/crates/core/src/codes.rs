//! Point sets, evaluation maps and generator matrices for `RM_q(nu, m)` and
//! `PRM_q(d, m)`.
//!
//! Points are listed in lexicographic order of their coordinate tuples. The
//! projective list holds the standard representatives, whose last nonzero
//! coordinate is 1. Any other fixed order gives a permutation-equivalent code,
//! so weights, distances and counts do not depend on it; only the coordinate
//! indices of codewords do.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::combinatorics::p_k;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg;
use crate::poly::{basis_c, reduced_monomials_affine, Monomial, Poly};
use crate::{check_prm_order, check_rm_order};

/// Largest projective point count accepted by [`PointList::projective`].
pub const MAX_POINTS: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Affine,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointList {
    kind: PointKind,
    q: u32,
    m: usize,
    points: Vec<Vec<u32>>,
}

impl PointList {
    /// Standard representatives of `P^m(F_q)`.
    pub fn projective(field: &Field, m: usize) -> Result<Self> {
        let q = field.q();
        let count = p_k(q as u64, m as i64);
        if count > MAX_POINTS.into() {
            return Err(Error::GuardExceeded {
                what: "projective points",
                needed: u128::try_from(count).unwrap_or(u128::MAX),
                limit: MAX_POINTS as u128,
            });
        }
        let mut points = Vec::new();
        for j in 0..=m {
            for prefix in linalg::all_vectors(q, j) {
                let mut p = prefix;
                p.push(1);
                p.resize(m + 1, 0);
                points.push(p);
            }
        }
        points.sort();
        Ok(PointList {
            kind: PointKind::Projective,
            q,
            m,
            points,
        })
    }

    /// All of `F_q^m`.
    pub fn affine(field: &Field, m: usize) -> Result<Self> {
        let q = field.q();
        let count = (q as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if count > MAX_POINTS as u128 {
            return Err(Error::GuardExceeded {
                what: "affine points",
                needed: count,
                limit: MAX_POINTS as u128,
            });
        }
        Ok(PointList {
            kind: PointKind::Affine,
            q,
            m,
            points: linalg::all_vectors(q, m),
        })
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn get(&self, i: usize) -> Option<&[u32]> {
        self.points.get(i).map(Vec::as_slice)
    }

    pub fn index_of(&self, point: &[u32]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(point)).ok()
    }

    /// Index of the projective point spanned by a nonzero vector.
    pub fn index_of_projective(&self, field: &Field, v: &[u32]) -> Option<usize> {
        let last = v.iter().rposition(|&x| x != 0)?;
        let inv = field.inv(v[last]).ok()?;
        let rep: Vec<u32> = v.iter().map(|&x| field.mul(x, inv)).collect();
        self.index_of(&rep)
    }

    fn labels(&self) -> Vec<String> {
        self.points
            .iter()
            .map(|p| {
                let sep = match self.kind {
                    PointKind::Projective => ":",
                    PointKind::Affine => ",",
                };
                p.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Codeword(pub Vec<u32>);

impl Codeword {
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn to_csv(&self) -> String {
        self.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

/// Evaluation vector of `f` over `points`.
pub fn evaluate_on(f: &Poly, points: &PointList) -> Result<Codeword> {
    let expected = match points.kind {
        PointKind::Projective => points.m + 1,
        PointKind::Affine => points.m,
    };
    if f.nvars() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            got: f.nvars(),
        });
    }
    Ok(Codeword(points.points.iter().map(|p| f.eval_unchecked(p)).collect()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Rm,
    Prm,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Rm => "rm",
            Family::Prm => "prm",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    family: Family,
    field: Field,
    order: u32,
    m: usize,
    points: PointList,
    basis: Vec<Monomial>,
    rows: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    family: Family,
    q: u32,
    order: u32,
    m: usize,
    points: &'a [Vec<u32>],
    basis: Vec<String>,
    rows: &'a [Vec<u32>],
}

impl GeneratorMatrix {
    fn from_basis(family: Family, field: &Field, order: u32, m: usize, points: PointList, basis: Vec<Monomial>) -> Self {
        let rows = basis
            .iter()
            .map(|mono| points.points.iter().map(|p| mono.evaluate(field, p)).collect())
            .collect();
        GeneratorMatrix {
            family,
            field: field.clone(),
            order,
            m,
            points,
            basis,
            rows,
        }
    }

    /// A matrix with arbitrary rows over the same coordinates, used to
    /// re-base a code.
    pub fn with_rows(&self, rows: Vec<Vec<u32>>) -> Self {
        GeneratorMatrix {
            rows,
            basis: Vec::new(),
            ..self.clone()
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> &PointList {
        &self.points
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Number of rows, the dimension when rows are independent.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.field, &self.rows)
    }

    /// Codeword for the message `msg` (one coefficient per row).
    pub fn encode(&self, msg: &[u32]) -> Codeword {
        let f = &self.field;
        let mut out = vec![0u32; self.n()];
        for (&c, row) in msg.iter().zip(&self.rows) {
            if c != 0 {
                for (x, &y) in out.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
        }
        Codeword(out)
    }

    /// CSV with a header of point labels; the first column names the basis
    /// monomial of each row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("monomial");
        for label in self.points.labels() {
            write!(s, ",{label}").unwrap();
        }
        s.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            match self.basis.get(i) {
                Some(mono) => s.push_str(&mono.to_string()),
                None => write!(s, "row{i}").unwrap(),
            }
            for x in row {
                write!(s, ",{x}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson {
            family: self.family,
            q: self.field.q(),
            order: self.order,
            m: self.m,
            points: &self.points.points,
            basis: self.basis.iter().map(ToString::to_string).collect(),
            rows: &self.rows,
        })
        .expect("matrix serializes")
    }
}

/// Generator matrix of `RM_q(nu, m)` from the reduced monomials of degree at
/// most `nu`.
pub fn rm_generator_matrix(field: &Field, nu: u32, m: usize) -> Result<GeneratorMatrix> {
    check_rm_order(field.q() as u64, nu as i64, m as u64)?;
    let points = PointList::affine(field, m)?;
    let basis = reduced_monomials_affine(field.q(), nu, m);
    Ok(GeneratorMatrix::from_basis(Family::Rm, field, nu, m, points, basis))
}

/// Generator matrix of `PRM_q(d, m)` from the projectively reduced monomials
/// of degree `d`.
pub fn prm_generator_matrix(field: &Field, d: u32, m: usize) -> Result<GeneratorMatrix> {
    check_prm_order(field.q() as u64, d as i64, m as u64)?;
    let points = PointList::projective(field, m)?;
    let basis = basis_c(field.q(), d, m);
    Ok(GeneratorMatrix::from_basis(Family::Prm, field, d, m, points, basis))
}

/// Generator matrix for either family.
pub fn generator_matrix(family: Family, field: &Field, order: u32, m: usize) -> Result<GeneratorMatrix> {
    match family {
        Family::Rm => rm_generator_matrix(field, order, m),
        Family::Prm => prm_generator_matrix(field, order, m),
    }
}

/// Degree-`d` polynomial that is 1 at the projective point with 0-based
/// index `index` and 0 at every other point; requires `d >= m(q-1)+1`.
pub fn interpolation_poly(field: &Field, d: u32, m: usize, index: usize) -> Result<Poly> {
    let q = field.q();
    let floor = m as u32 * (q - 1) + 1;
    if d < floor {
        return Err(Error::OrderOutOfRange {
            order: d as i64,
            min: floor as i64,
            max: i64::MAX,
        });
    }
    let points = PointList::projective(field, m)?;
    let point = points.get(index).ok_or(Error::PointIndex {
        index,
        len: points.len(),
    })?;
    let n = m + 1;
    let j = point.iter().rposition(|&x| x != 0).expect("standard representative");
    let xj = Poly::var(field, n, j);
    let xj_top = xj.pow(q - 1);
    let mut f = xj.pow(d - m as u32 * (q - 1));
    for (i, &a) in point[..j].iter().enumerate() {
        let shifted = &Poly::var(field, n, i) - &xj.scale(a);
        f = &f * &(&xj_top - &shifted.pow(q - 1));
    }
    for k in j + 1..n {
        f = &f * &(&xj_top - &Poly::var(field, n, k).pow(q - 1));
    }
    Ok(f)
}
