//! Exact integer combinatorics: generalized binomials, Gaussian binomials,
//! projective point counts and bounded compositions.
//!
//! `binomial(a, b)` follows the falling-factorial convention: for `b >= 0` it is
//! `a(a-1)...(a-b+1) / b!` for every integer `a` (negative ones included), and it
//! is zero for `b < 0`. It vanishes exactly when `b < 0` or `b > a >= 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || (a >= 0 && b > a) {
        return BigInt::zero();
    }
    // for a >= 0 the smaller of b and a-b gives a shorter product
    let b = if a >= 0 { b.min(a - b) } else { b };
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= a - i;
        den *= i + 1;
    }
    num / den
}

/// Gaussian binomial `[a choose b]_q`, zero unless `0 <= b <= a`.
pub fn gaussian_binomial(a: i64, b: i64, q: u64) -> BigInt {
    if b < 0 || b > a {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..b {
        num *= num_traits::pow(q.clone(), (a - i) as usize) - 1;
        den *= num_traits::pow(q.clone(), (i + 1) as usize) - 1;
    }
    num / den
}

/// `1 + q + ... + q^k`, the number of points of `P^k(F_q)`; zero for `k < 0`.
pub fn p_k(q: u64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut sum = BigInt::zero();
    let mut power = BigInt::one();
    for _ in 0..=k {
        sum += &power;
        power *= &q;
    }
    sum
}

/// Number of ways to place `a` objects into `n` blocks with at most `b` per
/// block, by inclusion-exclusion over the overfull blocks.
pub fn bounded_compositions(a: u64, n: u64, b: u64) -> BigInt {
    let (a, n, b) = (a as i64, n as i64, b as i64);
    let mut total = BigInt::zero();
    for j in 0..=n {
        let rest = a - j * (b + 1);
        let term = binomial(n, j) * binomial(rest + n - 1, rest);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `q^k` as a big integer.
pub fn big_pow(q: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(q), k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(a: i64, k: i64) -> i64 {
        i64::try_from(binomial(a, k)).unwrap()
    }

    /// Direct count of n-tuples in [0, b] summing to a.
    fn brute_compositions(a: u64, n: u64, b: u64) -> u64 {
        if n == 0 {
            return (a == 0) as u64;
        }
        (0..=b.min(a))
            .map(|first| brute_compositions(a - first, n - 1, b))
            .sum()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(b(3, -1), 0);
        assert_eq!(b(-1, 0), 1);
        assert_eq!(b(2, 5), 0);
        assert_eq!(b(5, 2), 10);
        assert_eq!(b(-1, 1), -1);
        assert_eq!(b(-2, 3), -4);
        assert_eq!(b(0, 0), 1);
    }

    #[test]
    fn binomial_zero_set() {
        for a in -30..=30 {
            for k in -30..=30 {
                let zero = binomial(a, k).is_zero();
                assert_eq!(zero, k < 0 || (k > a && a >= 0), "({a}, {k})");
            }
        }
    }

    #[test]
    fn pascal_identity() {
        for a in -50..=50 {
            for k in -50..=50 {
                assert_eq!(
                    binomial(a, k - 1) + binomial(a, k),
                    binomial(a + 1, k),
                    "({a}, {k})"
                );
            }
        }
    }

    #[test]
    fn conditional_symmetry() {
        for a in -20..=20 {
            for k in -20..=20 {
                let symmetric = binomial(a, k) == binomial(a, a - k);
                assert_eq!(symmetric, a >= 0 || (a < k && k < 0), "({a}, {k})");
            }
        }
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(2, 1, 2), BigInt::from(3));
        assert_eq!(gaussian_binomial(2, 1, 3), BigInt::from(4));
        assert_eq!(gaussian_binomial(3, 5, 2), BigInt::zero());
        assert_eq!(gaussian_binomial(3, 2, 3), BigInt::from(13));
        assert_eq!(gaussian_binomial(4, 2, 2), BigInt::from(35));
        assert_eq!(gaussian_binomial(0, 0, 7), BigInt::one());
        assert_eq!(gaussian_binomial(3, -1, 2), BigInt::zero());
    }

    #[test]
    fn gaussian_symmetry_and_pascal() {
        for q in [2u64, 3, 4, 5] {
            for a in 1..8i64 {
                for k in 1..=a {
                    assert_eq!(gaussian_binomial(a, k, q), gaussian_binomial(a, a - k, q));
                    // q-Pascal: [a,k] = [a-1,k-1] + q^k [a-1,k]
                    assert_eq!(
                        gaussian_binomial(a, k, q),
                        gaussian_binomial(a - 1, k - 1, q)
                            + big_pow(q, k as u32) * gaussian_binomial(a - 1, k, q)
                    );
                }
            }
        }
    }

    #[test]
    fn p_k_examples() {
        assert_eq!(p_k(2, 2), BigInt::from(7));
        assert_eq!(p_k(3, 2), BigInt::from(13));
        assert_eq!(p_k(5, -3), BigInt::zero());
        assert_eq!(p_k(4, 0), BigInt::one());
        for q in 2..6u64 {
            for k in 0..5i64 {
                assert_eq!(p_k(q, k), gaussian_binomial(k + 1, 1, q));
            }
        }
    }

    #[test]
    fn bounded_composition_examples() {
        assert_eq!(bounded_compositions(2, 2, 1), BigInt::one());
        for n in 0..5 {
            for bound in 0..4 {
                assert_eq!(bounded_compositions(0, n, bound), BigInt::one());
            }
        }
        assert_eq!(bounded_compositions(3, 2, 1), BigInt::zero());
    }

    #[test]
    fn bounded_compositions_match_enumeration() {
        for a in 0..=12 {
            for n in 0..=4 {
                for bound in 0..=4 {
                    assert_eq!(
                        bounded_compositions(a, n, bound),
                        BigInt::from(brute_compositions(a, n, bound)),
                        "N({a},{n},{bound})"
                    );
                }
            }
        }
    }
}
