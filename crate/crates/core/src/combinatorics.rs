//! Exact binomials and the subspace counts built on them.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)` exactly; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` as a machine integer; panics on overflow (only used for small n).
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Number of `k`-dimensional subspaces of `GF(q)^n`.
///
/// `(q^n-1)(q^{n-1}-1)...(q^{n-k+1}-1) / ((q^k-1)...(q-1))`.
pub fn gaussian_binomial(k: u64, n: u64, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `|GL(m, q)| = q^{m(m-1)/2} (q^m-1)(q^{m-1}-1)...(q-1)`.
pub fn gl_order(m: u64, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let mut acc = qb.pow((m * m.saturating_sub(1) / 2) as u32);
    for i in 1..=m {
        acc *= qb.pow(i as u32) - 1u32;
    }
    acc
}

/// Number of points of `P^{m-1}(GF(q))`, i.e. `(q^m - 1)/(q - 1)`.
pub fn projective_points(m: u32, q: u64) -> u64 {
    (0..m).map(|i| q.pow(i)).sum()
}
