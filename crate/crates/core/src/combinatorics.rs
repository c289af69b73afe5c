//! Binomial coefficients and summation helpers shared by the state
//! constructors and the closed-form oracles.

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

/// Largest `n` for which binomials are computed in exact integer arithmetic.
pub const EXACT_BINOMIAL_LIMIT: u32 = 60;

fn binomial_exact(n: u32, k: u32) -> u64 {
    let k = k.min(n - k) as u64;
    let n = n as u64;
    // C(n, i+1) = C(n, i) * (n - i) / (i + 1) stays integral at every step
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `ln C(n, k)`; exact for `n <= 60`.
pub fn ln_binomial(n: u32, k: u32) -> f64 {
    assert!(k <= n, "binomial C({n}, {k}) out of range");
    if n <= EXACT_BINOMIAL_LIMIT {
        (binomial_exact(n, k) as f64).ln()
    } else {
        ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
    }
}

/// `C(n, k)` as a float. Zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        0.0
    } else if n <= EXACT_BINOMIAL_LIMIT {
        binomial_exact(n, k) as f64
    } else {
        ln_binomial(n, k).exp()
    }
}

/// `C(n, k)^(1/2)`.
pub fn sqrt_binomial(n: u32, k: u32) -> f64 {
    if k > n {
        0.0
    } else if n <= EXACT_BINOMIAL_LIMIT {
        (binomial_exact(n, k) as f64).sqrt()
    } else {
        (0.5 * ln_binomial(n, k)).exp()
    }
}

/// Falling factorial `n! / (n - k)!`, zero when `k > n`.
pub fn falling_factorial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    ((n - k + 1)..=n).map(f64::from).product()
}

/// Pairwise (tree) summation.
pub fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    match terms.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => terms[0],
        2 => terms[0] + terms[1],
        len => {
            let (lo, hi) = terms.split_at(len / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

pub fn pairwise_sum_real(terms: &[f64]) -> f64 {
    match terms.len() {
        0 => 0.0,
        1 => terms[0],
        2 => terms[0] + terms[1],
        len => {
            let (lo, hi) = terms.split_at(len / 2);
            pairwise_sum_real(lo) + pairwise_sum_real(hi)
        }
    }
}
