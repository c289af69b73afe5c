//! Closed-form moments of the spin coherent state and of its evolution
//! under a diagonal Hamiltonian.
//!
//! Nothing here touches operator matrices: these functions are the
//! independent side of every matrix-versus-formula comparison.

use num_complex::Complex64;

use crate::combinatorics::{falling_factorial, ln_binomial, pairwise_sum, EXACT_BINOMIAL_LIMIT, binomial};
use crate::error::{Error, Result};
use crate::expr::NonlinearFunction;
use crate::squeezing::DENOMINATOR_CUTOFF;

/// Number statistics `<N>`, `<N^2>` and `(Delta N)^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentSet {
    pub mean_n: f64,
    pub mean_n2: f64,
    pub var_n: f64,
}

fn order(k: i64) -> Result<u32> {
    u32::try_from(k).map_err(|_| Error::Argument(format!("order k must be nonnegative, got {k}")))
}

/// `G(lambda) = <lambda^N> = ((1 + lambda |eta|^2) / (1 + |eta|^2))^(2j)`.
pub fn generating_function(two_j: u32, eta: Complex64, lambda: f64) -> Result<f64> {
    let r = eta.norm_sqr();
    let base = 1.0 + lambda * r;
    if base.is_nan() || base <= 0.0 {
        return Err(Error::Argument(format!("1 + lambda |eta|^2 = {base} must be positive")));
    }
    Ok((base / (1.0 + r)).powi(two_j as i32))
}

/// `F(k) = |eta|^(2k) (2j)! / ((1+|eta|^2)^k (2j-k)!)`, the `k`-th derivative of
/// the generating function at `lambda = 1`. Zero for `k > 2j`.
pub fn factorial_moment(two_j: u32, eta: Complex64, k: i64) -> Result<f64> {
    let k = order(k)?;
    let r = eta.norm_sqr();
    let p = r / (1.0 + r);
    Ok(p.powi(k as i32) * falling_factorial(two_j, k))
}

pub fn scs_number_moments(two_j: u32, eta: Complex64) -> MomentSet {
    let r = eta.norm_sqr();
    let n = f64::from(two_j);
    let d = 1.0 + r;
    MomentSet {
        mean_n: n * r / d,
        mean_n2: (n * r + n * n * r * r) / (d * d),
        var_n: n * r / (d * d),
    }
}

/// `<J_-^k> = eta^k (2j)! / ((1+|eta|^2)^k (2j-k)!)`. Zero for `k > 2j`.
pub fn scs_jminus_k(two_j: u32, eta: Complex64, k: i64) -> Result<Complex64> {
    let k = order(k)?;
    let d = 1.0 + eta.norm_sqr();
    Ok(eta.powu(k) * falling_factorial(two_j, k) / d.powi(k as i32))
}

/// `(<J_x>, <J_y>, <J_z>)` written exactly as
/// `j(eta + eta*)/(1+|eta|^2)`, `j(eta* - eta)/(i(1+|eta|^2))`, `j(|eta|^2 - 1)/(1+|eta|^2)`.
pub fn scs_spin_means(two_j: u32, eta: Complex64) -> [f64; 3] {
    let j = f64::from(two_j) / 2.0;
    let r = eta.norm_sqr();
    let d = 1.0 + r;
    let x = j * (eta + eta.conj()) / d;
    let y = j * (eta.conj() - eta) / (Complex64::i() * d);
    [x.re, y.re, j * (r - 1.0) / d]
}

/// `((Delta J_x)^2, (Delta J_y)^2)` for the coherent state.
pub fn scs_variances_xy(two_j: u32, eta: Complex64) -> (f64, f64) {
    let j = f64::from(two_j) / 2.0;
    let r = eta.norm_sqr();
    let d = 1.0 + r;
    let sq = eta * eta + eta.conj() * eta.conj();
    let scale = j / (2.0 * d * d);
    (scale * (1.0 + r * r - sq.re), scale * (1.0 + r * r + sq.re))
}

/// `sum_{n=0}^{m} C(m,n) |eta|^(2n) / (1+|eta|^2)^m * exp(i t [F(n) - F(n+k)])`
/// with `m = 2j - k`. The weights are the binomial distribution with
/// success probability `|eta|^2 / (1 + |eta|^2)`.
fn phased_binomial_sum(m: u32, k: u32, r: f64, hamiltonian: &NonlinearFunction, t: f64) -> Result<Complex64> {
    let levels = hamiltonian.table(m + k)?;
    let p = r / (1.0 + r);
    let q = 1.0 / (1.0 + r);
    let weight = |n: u32| -> f64 {
        if m <= EXACT_BINOMIAL_LIMIT {
            binomial(m, n) * p.powi(n as i32) * q.powi((m - n) as i32)
        } else {
            (ln_binomial(m, n) + f64::from(n) * p.ln() + f64::from(m - n) * q.ln()).exp()
        }
    };
    let terms: Vec<Complex64> = (0..=m)
        .map(|n| {
            let phase = t * levels[n as usize] - t * levels[(n + k) as usize];
            Complex64::from_polar(weight(n), phase)
        })
        .collect();
    Ok(pairwise_sum(&terms))
}

/// `<J_-^k>` on `exp(-i t F(N)) |eta>`:
/// `eta^k (1+|eta|^2)^(-2j) (2j)!/(2j-k)! sum_{n=0}^{2j-k} C(2j-k,n) |eta|^(2n) e^{it[F(n)-F(n+k)]}`.
pub fn nlscs_jminus_k(
    two_j: u32,
    eta: Complex64,
    hamiltonian: &NonlinearFunction,
    t: f64,
    k: i64,
) -> Result<Complex64> {
    let k = order(k)?;
    if k > two_j {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let r = eta.norm_sqr();
    if r == 0.0 {
        return Ok(if k == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
    }
    let sum = phased_binomial_sum(two_j - k, k, r, hamiltonian, t)?;
    // (1+r)^(-2j) sum_n C(2j-k,n) r^n ... = (1+r)^(-k) * sum
    Ok(eta.powu(k) * falling_factorial(two_j, k) / (1.0 + r).powi(k as i32) * sum)
}

/// `xi_z^2 = 1 / |(1+|eta|^2)^(1-2j) sum_{n=0}^{2j-1} C(2j-1,n) |eta|^(2n) e^{it[F(n)-F(n+1)]}|^2`.
pub fn nlscs_xi_z(two_j: u32, eta: Complex64, hamiltonian: &NonlinearFunction, t: f64) -> Result<f64> {
    if two_j == 0 {
        return Err(Error::Argument("xi_z^2 needs 2j >= 1".into()));
    }
    let r = eta.norm_sqr();
    if r == 0.0 {
        return Err(Error::UndefinedDirection { denominator: 0.0 });
    }
    let sum = phased_binomial_sum(two_j - 1, 1, r, hamiltonian, t)?;
    // |<J_->|^2 = (2j)^2 r |sum|^2 / (1+r)^2 must clear the same cutoff as the matrix path
    let n = f64::from(two_j);
    let lowering = n * n * r * sum.norm_sqr() / ((1.0 + r) * (1.0 + r));
    if lowering.is_nan() || lowering < DENOMINATOR_CUTOFF {
        return Err(Error::UndefinedDirection { denominator: lowering });
    }
    Ok(1.0 / sum.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn f(src: &str) -> NonlinearFunction {
        NonlinearFunction::parse(src).unwrap()
    }

    #[test]
    fn generating_function_values() {
        for two_j in 0..10 {
            assert!((generating_function(two_j, c(0.3, 1.2), 1.0).unwrap() - 1.0).abs() < 1e-15);
            assert_eq!(generating_function(two_j, c(0.0, 0.0), 0.0).unwrap(), 1.0);
        }
        assert_eq!(generating_function(1, c(1.0, 0.0), 0.0).unwrap(), 0.5);
        assert!(generating_function(2, c(1.0, 0.0), -1.0).is_err());
    }

    /// `d^k/d lambda^k` at `lambda = 1` by central differences.
    fn central_derivative(g: impl Fn(f64) -> f64, k: u32, h: f64) -> f64 {
        match k {
            1 => (g(1.0 + h) - g(1.0 - h)) / (2.0 * h),
            2 => (g(1.0 + h) - 2.0 * g(1.0) + g(1.0 - h)) / (h * h),
            _ => unreachable!(),
        }
    }

    #[test]
    fn factorial_moments_are_generating_function_derivatives() {
        for two_j in 1..=20 {
            for eta in [c(0.1, 0.0), c(0.5, -0.2), c(1.0, 1.0), c(-2.0, 0.3)] {
                for k in 1..=2 {
                    let fd = central_derivative(|l| generating_function(two_j, eta, l).unwrap(), k, 1e-4);
                    let exact = factorial_moment(two_j, eta, i64::from(k)).unwrap();
                    assert!((fd - exact).abs() < 1e-5 * exact.max(1.0), "two_j={two_j} eta={eta} k={k}: {fd} vs {exact}");
                }
            }
        }
    }

    #[test]
    fn factorial_moment_values() {
        assert_eq!(factorial_moment(10, c(0.7, 0.1), 0).unwrap(), 1.0);
        assert!((factorial_moment(10, c(0.1, 0.0), 1).unwrap() - 0.1 / 1.01).abs() < 1e-15);
        assert!((factorial_moment(10, c(1e8, 0.0), 1).unwrap() - 10.0).abs() < 1e-12);
        assert_eq!(factorial_moment(3, c(0.5, 0.0), 4).unwrap(), 0.0);
        assert!(factorial_moment(3, c(0.5, 0.0), -1).is_err());
    }

    #[test]
    fn number_moment_examples() {
        let zero = scs_number_moments(10, c(0.0, 0.0));
        assert_eq!((zero.mean_n, zero.mean_n2, zero.var_n), (0.0, 0.0, 0.0));
        let half = scs_number_moments(1, c(1.0, 0.0));
        assert_eq!((half.mean_n, half.mean_n2, half.var_n), (0.5, 0.5, 0.25));
        let one = scs_number_moments(2, c(1.0, 0.0));
        assert_eq!((one.mean_n, one.var_n), (1.0, 0.5));
        for two_j in 0..30 {
            let m = scs_number_moments(two_j, c(0.8, -1.3));
            assert!((m.var_n - (m.mean_n2 - m.mean_n * m.mean_n)).abs() < 1e-12);
            assert!(m.var_n >= 0.0);
            let fm1 = factorial_moment(two_j, c(0.8, -1.3), 1).unwrap();
            let fm2 = factorial_moment(two_j, c(0.8, -1.3), 2).unwrap();
            assert!((m.mean_n - fm1).abs() < 1e-12);
            assert!((m.mean_n2 - (fm2 + fm1)).abs() < 1e-10);
        }
    }

    #[test]
    fn jminus_examples() {
        assert_eq!(scs_jminus_k(1, c(1.0, 0.0), 1).unwrap(), c(0.5, 0.0));
        assert_eq!(scs_jminus_k(6, c(0.0, 0.0), 1).unwrap(), c(0.0, 0.0));
        assert_eq!(scs_jminus_k(2, c(1.0, 0.0), 2).unwrap(), c(0.5, 0.0));
        assert_eq!(scs_jminus_k(2, c(1.0, 0.0), 3).unwrap(), c(0.0, 0.0));
        let eta = Complex64::from_polar(0.7, 0.4);
        let v = scs_jminus_k(8, eta, 3).unwrap();
        assert!((v.arg() - 1.2).abs() < 1e-12);
        assert!(scs_jminus_k(8, eta, -2).is_err());
    }

    #[test]
    fn spin_mean_examples() {
        assert_eq!(scs_spin_means(10, c(0.0, 0.0)), [0.0, 0.0, -5.0]);
        let at_i = scs_spin_means(2, c(0.0, 1.0));
        assert!(at_i[0].abs() < 1e-15 && (at_i[1] + 1.0).abs() < 1e-15 && at_i[2].abs() < 1e-15);
        assert_eq!(scs_spin_means(7, c(1.0, 0.0)), [3.5, 0.0, 0.0]);
    }

    #[test]
    fn variance_examples() {
        assert_eq!(scs_variances_xy(10, c(0.0, 0.0)), (2.5, 2.5));
        assert_eq!(scs_variances_xy(10, c(1.0, 0.0)), (0.0, 2.5));
        assert_eq!(scs_variances_xy(2, c(0.0, 1.0)), (0.5, 0.0));
        // each variance times 2j equals the transverse squared means
        for eta in [c(0.3, 0.9), c(-1.7, 0.2)] {
            let (vx, vy) = scs_variances_xy(9, eta);
            let [mx, my, mz] = scs_spin_means(9, eta);
            assert!((9.0 * vx - (my * my + mz * mz)).abs() < 1e-12);
            assert!((9.0 * vy - (mz * mz + mx * mx)).abs() < 1e-12);
        }
    }

    #[test]
    fn evolved_lowering_reduces_to_coherent() {
        let hams = [f("N^2"), f("sin(2*N)"), f("4.25")];
        for two_j in 1..=15 {
            let eta = c(0.4, -0.9);
            for k in 0..=3 {
                let scs = scs_jminus_k(two_j, eta, k).unwrap();
                for h in &hams {
                    let at_zero = nlscs_jminus_k(two_j, eta, h, 0.0, k).unwrap();
                    assert!((at_zero - scs).norm() <= 1e-12 * scs.norm().max(1.0));
                }
                let constant = nlscs_jminus_k(two_j, eta, &hams[2], 2.3, k).unwrap();
                assert!((constant - scs).norm() <= 1e-12 * scs.norm().max(1.0));
            }
        }
        assert_eq!(nlscs_jminus_k(2, eta_one(), &hams[0], 0.5, 3).unwrap(), c(0.0, 0.0));
    }

    fn eta_one() -> Complex64 {
        c(1.0, 0.0)
    }

    #[test]
    fn evolved_xi_z() {
        for two_j in [1, 5, 10, 20] {
            assert!((nlscs_xi_z(two_j, c(0.3, 0.1), &f("N^2"), 0.0).unwrap() - 1.0).abs() < 1e-12);
            assert!((nlscs_xi_z(two_j, c(0.3, 0.1), &f("7"), 1.9).unwrap() - 1.0).abs() < 1e-12);
        }
        let v = nlscs_xi_z(10, c(0.1, 0.0), &f("N^2"), 0.5).unwrap();
        assert!(v > 1.0);
        assert!(matches!(nlscs_xi_z(10, c(0.0, 0.0), &f("N^2"), 0.5), Err(Error::UndefinedDirection { .. })));
        assert!(nlscs_xi_z(0, c(0.5, 0.0), &f("N^2"), 0.5).is_err());
    }

    #[test]
    fn large_spaces_stay_finite() {
        let v = nlscs_xi_z(200, c(3.0, 1.0), &f("N^2"), 0.01).unwrap();
        assert!(v.is_finite() && v >= 1.0 - 1e-12);
        let m = nlscs_jminus_k(200, c(3.0, 1.0), &f("N^2"), 0.0, 1).unwrap();
        let e = scs_jminus_k(200, c(3.0, 1.0), 1).unwrap();
        assert!((m - e).norm() < 1e-9 * e.norm());
    }
}
