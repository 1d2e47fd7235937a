//! Closed-form counts by type, evaluated exactly.
//!
//! Every division is checked: a remainder means a transcription error in a
//! formula, so it panics rather than rounding.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::partition::TypePartition;

pub type Count = BigUint;

pub fn factorial(n: usize) -> Count {
    (2..=n).fold(Count::one(), |acc, i| acc * i)
}

/// `C(a, b)`, zero whenever `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> Count {
    if a < 0 || b < 0 || b > a {
        return Count::zero();
    }
    let b = b.min(a - b);
    let mut acc = Count::one();
    for i in 0..b {
        acc *= (a - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

/// `a (a-1) ... (a-m+1)`; the empty product is 1.
pub fn falling(a: usize, m: usize) -> Count {
    if m > a {
        return Count::zero();
    }
    (0..m).fold(Count::one(), |acc, i| acc * (a - i))
}

fn exact_div(num: Count, den: &Count) -> Count {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "inexact division {num} / {den}");
    q
}

/// Kreweras: `n(n-1)...(n-ℓ+2) / m_λ`, zero unless `|λ| = n`.
pub fn dyck_by_type(n: usize, lambda: &TypePartition) -> Count {
    if lambda.size() != n || n == 0 {
        return Count::zero();
    }
    let l = lambda.length();
    exact_div(falling(n, l - 1), &lambda.multiplicity_factor())
}

fn ell_arrangements(ell: usize, lambda: &TypePartition) -> Count {
    exact_div(factorial(ell), &lambda.multiplicity_factor())
}

pub fn large_schroder_by_type(n: usize, lambda: &TypePartition) -> Count {
    let (s, l) = (lambda.size() as i64, lambda.length() as i64);
    if s > n as i64 {
        return Count::zero();
    }
    let num = binomial(n as i64, s) * binomial(n as i64 + 1, l) * ell_arrangements(l as usize, lambda);
    exact_div(num, &Count::from((s + 1) as u64))
}

pub fn small_schroder_by_type(n: usize, lambda: &TypePartition) -> Count {
    let (s, l) = (lambda.size() as i64, lambda.length() as i64);
    let n = n as i64;
    let num = binomial(n - 1, s - 1) * binomial(n + 1, l) * ell_arrangements(l as usize, lambda);
    exact_div(num, &Count::from((n + 1) as u64))
}

/// Armstrong: `(kn)! / (m_λ (kn+1-ℓ)!)`, zero unless `|λ| = n`.
pub fn fuss_catalan_by_type(n: usize, k: usize, lambda: &TypePartition) -> Count {
    if lambda.size() != n || n == 0 {
        return Count::zero();
    }
    let kn = k * n;
    let den = lambda.multiplicity_factor() * factorial(kn + 1 - lambda.length());
    exact_div(factorial(kn), &den)
}

/// Small (k,r)-Fuss–Schröder paths of type λ, independent of r. Both forms
/// of the formula are evaluated and must agree.
pub fn small_fuss_by_type(n: usize, k: usize, lambda: &TypePartition) -> Count {
    let (s, l) = (lambda.size() as i64, lambda.length() as i64);
    let (ni, kn) = (n as i64, (k * n) as i64);
    let direct = if l == 0 {
        Count::zero()
    } else {
        exact_div(
            binomial(ni - 1, s - 1) * binomial(kn, l - 1) * factorial(l as usize - 1),
            &lambda.multiplicity_factor(),
        )
    };
    let via_free = exact_div(free_paths_by_type(n, k, lambda), &Count::from((kn + 1) as u64));
    assert_eq!(direct, via_free, "small Fuss-Schröder forms disagree at n={n} k={k} λ={lambda}");
    direct
}

/// Auxiliary free paths: diagonal rows chosen among 2k..nk, runs placed on
/// distinct lines in any order.
pub fn free_paths_by_type(n: usize, k: usize, lambda: &TypePartition) -> Count {
    let (s, l) = (lambda.size() as i64, lambda.length() as i64);
    binomial(n as i64 - 1, s - 1)
        * binomial((k * n) as i64 + 1, l)
        * ell_arrangements(l as usize, lambda)
}

pub fn catalan(n: usize) -> Count {
    exact_div(binomial(2 * n as i64, n as i64), &Count::from(n as u64 + 1))
}

pub fn fuss_catalan_total(n: usize, k: usize) -> Count {
    exact_div(
        binomial(((k + 1) * n) as i64, n as i64),
        &Count::from((k * n + 1) as u64),
    )
}

/// `(1/n) Σ_{j=1}^{n} C(n, j-1) C(n, j) 2^j`; 1 for n = 0.
pub fn large_schroder_total(n: usize) -> Count {
    if n == 0 {
        return Count::one();
    }
    let ni = n as i64;
    let sum = (1..=ni).fold(Count::zero(), |acc, j| {
        acc + binomial(ni, j - 1) * binomial(ni, j) * (Count::one() << j as usize)
    });
    exact_div(sum, &Count::from(n as u64))
}

/// Half the large count, except the empty path.
pub fn small_schroder_total(n: usize) -> Count {
    if n == 0 {
        return Count::one();
    }
    exact_div(large_schroder_total(n), &Count::from(2u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(v: &[usize]) -> TypePartition {
        TypePartition::new(v.to_vec()).unwrap()
    }

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), c(10));
        assert_eq!(binomial(1, -1), c(0));
        assert_eq!(binomial(3, 4), c(0));
        assert_eq!(binomial(0, 0), c(1));
        assert_eq!(binomial(-1, 0), c(0));
    }

    #[test]
    fn dyck() {
        assert_eq!(dyck_by_type(3, &tp(&[2, 1])), c(3));
        assert_eq!(dyck_by_type(3, &tp(&[1, 1, 1])), c(1));
        assert_eq!(dyck_by_type(3, &tp(&[3])), c(1));
        assert_eq!(dyck_by_type(3, &tp(&[2])), c(0));
    }

    #[test]
    fn schroder() {
        assert_eq!(large_schroder_by_type(2, &tp(&[1])), c(3));
        assert_eq!(large_schroder_by_type(2, &tp(&[2])), c(1));
        assert_eq!(large_schroder_by_type(2, &tp(&[])), c(1));
        assert_eq!(small_schroder_by_type(2, &tp(&[1])), c(1));
        assert_eq!(small_schroder_by_type(2, &tp(&[2])), c(1));
        assert_eq!(small_schroder_by_type(2, &tp(&[])), c(0));
    }

    #[test]
    fn fuss() {
        assert_eq!(fuss_catalan_by_type(2, 2, &tp(&[1, 1])), c(2));
        assert_eq!(fuss_catalan_by_type(2, 2, &tp(&[2])), c(1));
        for k in 1..6 {
            assert_eq!(fuss_catalan_by_type(1, k, &tp(&[1])), c(1));
        }
        assert_eq!(small_fuss_by_type(4, 2, &tp(&[2, 1])), c(24));
        assert_eq!(small_fuss_by_type(2, 2, &tp(&[1])), c(1));
        assert_eq!(small_fuss_by_type(3, 2, &tp(&[])), c(0));
        assert_eq!(free_paths_by_type(4, 2, &tp(&[2, 1])), c(216));
        assert_eq!(free_paths_by_type(1, 2, &tp(&[1])), c(3));
        assert_eq!(free_paths_by_type(2, 2, &tp(&[2])), c(5));
    }

    #[test]
    fn totals() {
        let cat: Vec<_> = (0..6).map(catalan).collect();
        assert_eq!(cat, [1u64, 1, 2, 5, 14, 42].map(c));
        let large: Vec<_> = (1..6).map(large_schroder_total).collect();
        assert_eq!(large, [2u64, 6, 22, 90, 394].map(c));
        let small: Vec<_> = (1..6).map(small_schroder_total).collect();
        assert_eq!(small, [1u64, 3, 11, 45, 197].map(c));
        assert_eq!(fuss_catalan_total(2, 2), c(3));
    }
}
