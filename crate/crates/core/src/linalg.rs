//! Dense linear algebra over GF(q): elimination, rank, and enumeration of
//! subspaces by their reduced row echelon bases.

use crate::gf::Field;

/// Reduced row echelon form; zero rows are dropped.
pub fn rref(field: &Field, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut a: Vec<Vec<u32>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(a[r][c]).expect("pivot is nonzero");
        for x in &mut a[r] {
            *x = field.mul(*x, inv);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..ncols {
                    let t = field.mul(f, a[r][j]);
                    a[i][j] = field.sub(a[i][j], t);
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

pub fn rank(field: &Field, rows: &[Vec<u32>]) -> usize {
    rref(field, rows).len()
}

pub fn is_independent(field: &Field, rows: &[Vec<u32>]) -> bool {
    rank(field, rows) == rows.len()
}

/// All vectors of `F_q^n` in lexicographic order of their coordinates.
pub fn all_vectors(q: u32, n: usize) -> Vec<Vec<u32>> {
    let total = (q as usize).pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut v = vec![0u32; n];
    for _ in 0..total {
        out.push(v.clone());
        for c in v.iter_mut().rev() {
            *c += 1;
            if *c < q {
                break;
            }
            *c = 0;
        }
    }
    out
}

/// Every linear combination of `basis`, one per coefficient vector.
pub fn span(field: &Field, basis: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    all_vectors(field.q(), basis.len())
        .into_iter()
        .map(|coeffs| {
            let mut v = vec![0u32; n];
            for (c, row) in coeffs.iter().zip(basis) {
                if *c != 0 {
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = field.add(*x, field.mul(*c, y));
                    }
                }
            }
            v
        })
        .collect()
}

/// All `k`-dimensional subspaces of `F_q^n`, each as its RREF basis.
pub fn subspaces(q: u32, n: usize, k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    choose_pivots(n, k, 0, &mut pivots, &mut |piv| {
        // free positions: (row, column) right of the row's pivot, not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((piv[r] + 1)..n).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        for values in all_vectors(q, free.len()) {
            let mut basis = vec![vec![0u32; n]; k];
            for (r, &c) in piv.iter().enumerate() {
                basis[r][c] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&values) {
                basis[r][c] = v;
            }
            out.push(basis);
        }
    });
    out
}

fn choose_pivots(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for c in start..n {
        acc.push(c);
        choose_pivots(n, k, c + 1, acc, f);
        acc.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::gaussian_binomial;
    use num_bigint::BigInt;
    use std::collections::BTreeSet;

    #[test]
    fn rank_small() {
        let f = Field::from_order(3).unwrap();
        assert_eq!(rank(&f, &[vec![1, 2], vec![2, 1]]), 1);
        assert_eq!(rank(&f, &[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(rank(&f, &[]), 0);
        assert_eq!(rank(&f, &[vec![0, 0, 0]]), 0);
        assert!(!is_independent(&f, &[vec![1, 1], vec![2, 2]]));
    }

    #[test]
    fn subspace_counts_are_gaussian() {
        for q in [2u32, 3, 4] {
            for n in 0..=4 {
                for k in 0..=n {
                    let subs = subspaces(q, n, k);
                    assert_eq!(
                        BigInt::from(subs.len()),
                        gaussian_binomial(n as i64, k as i64, q as u64)
                    );
                    let f = Field::from_order(q as u64).unwrap();
                    let spans: BTreeSet<Vec<Vec<u32>>> = subs
                        .iter()
                        .map(|b| {
                            assert_eq!(rref(&f, b), *b);
                            let mut s = span(&f, b, n);
                            s.sort();
                            s
                        })
                        .collect();
                    assert_eq!(spans.len(), subs.len());
                }
            }
        }
    }
}
