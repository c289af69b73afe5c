//! Spin coherent states and their evolution under diagonal Hamiltonians.
//!
//! The evolved state is `exp(-i t F(N)) |eta>`. It satisfies the ladder
//! equation `f(N) J_- psi = eta (2j - N) psi` with the level weights
//! `f(n) = exp(i t [F(n+1) - F(n)])`.

use num_complex::Complex64;

use crate::algebra::{ladder_lowering, number_operator, parity_operator, Operator, SpinSpace, StateVector};
use crate::combinatorics::sqrt_binomial;
use crate::error::{Error, Result};
use crate::expr::NonlinearFunction;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherentParams {
    pub space: SpinSpace,
    pub eta: Complex64,
}

impl CoherentParams {
    pub fn new(space: SpinSpace, eta: Complex64) -> Result<Self> {
        if !eta.is_finite() {
            return Err(Error::Argument(format!("eta = {eta} is not finite")));
        }
        Ok(Self { space, eta })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvolvedParams {
    pub base: CoherentParams,
    pub hamiltonian: NonlinearFunction,
    pub t: f64,
}

impl EvolvedParams {
    pub fn new(base: CoherentParams, hamiltonian: NonlinearFunction, t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::Argument(format!("t = {t} is not finite")));
        }
        Ok(Self { base, hamiltonian, t })
    }
}

/// The spin coherent state
/// `|eta> = (1+|eta|^2)^(-j) sum_n C(2j,n)^(1/2) eta^n |n>`.
pub fn scs(params: &CoherentParams) -> StateVector {
    let space = params.space;
    let two_j = space.two_j();
    let modulus = params.eta.norm();
    if modulus == 0.0 {
        return StateVector::number_state(space, 0).expect("ground state exists");
    }
    let phase = params.eta.arg();
    let j = space.j();
    let magnitude = |n: u32| -> f64 {
        let binom = sqrt_binomial(two_j, n);
        if modulus <= 1.0 {
            binom * modulus.powi(n as i32) * (1.0 + modulus * modulus).powf(-j)
        } else {
            // divide through by |eta|^(2j) so the top level stays O(1)
            let inv = modulus.recip();
            binom * inv.powi((two_j - n) as i32) * (1.0 + inv * inv).powf(-j)
        }
    };
    let amplitudes = (0..=two_j)
        .map(|n| Complex64::from_polar(magnitude(n), f64::from(n) * phase))
        .collect();
    StateVector::normalized(space, amplitudes).expect("coherent amplitudes are nonzero")
}

/// Multiplies each amplitude by `exp(-i t F(n))`.
pub fn evolve(psi: &StateVector, hamiltonian: &NonlinearFunction, t: f64) -> Result<StateVector> {
    let levels = hamiltonian.table(psi.space().two_j())?;
    let amplitudes = psi
        .amplitudes()
        .iter()
        .zip(&levels)
        .map(|(a, f)| a * Complex64::from_polar(1.0, -t * f))
        .collect();
    StateVector::new(psi.space(), amplitudes)
}

/// `exp(-i t F(N)) |eta>`.
pub fn nonlinear_scs(params: &EvolvedParams) -> Result<StateVector> {
    evolve(&scs(&params.base), &params.hamiltonian, params.t)
}

/// Complex weight attached to each number level, read as the diagonal
/// operator `f(N)`.
pub trait LevelFunction {
    fn weight(&self, n: u32) -> Result<Complex64>;
}

impl<F: Fn(u32) -> Complex64> LevelFunction for F {
    fn weight(&self, n: u32) -> Result<Complex64> {
        Ok(self(n))
    }
}

/// `f(n) = exp(i t [F(n+1) - F(n)])`.
#[derive(Clone, Debug)]
pub struct EffectiveNonlinearity {
    hamiltonian: NonlinearFunction,
    t: f64,
}

pub fn effective_nonlinearity(hamiltonian: &NonlinearFunction, t: f64) -> EffectiveNonlinearity {
    EffectiveNonlinearity { hamiltonian: hamiltonian.clone(), t }
}

impl LevelFunction for EffectiveNonlinearity {
    fn weight(&self, n: u32) -> Result<Complex64> {
        let upper = self.hamiltonian.evaluate(n + 1)?;
        let lower = self.hamiltonian.evaluate(n)?;
        // same rounding as the per-level phases applied by `evolve`
        Ok(Complex64::from_polar(1.0, self.t * upper - self.t * lower))
    }
}

/// `|| f(N) J_- psi - eta (2j - N) psi ||_2`.
pub fn ladder_residual(psi: &StateVector, eta: Complex64, f: &impl LevelFunction) -> Result<f64> {
    let space = psi.space();
    let two_j = f64::from(space.two_j());
    let lowered = ladder_lowering(space).apply(psi.amplitudes());
    let mut sum = 0.0;
    for (n, (low, amp)) in lowered.iter().zip(psi.amplitudes()).enumerate() {
        let lhs = f.weight(n as u32)? * low;
        let rhs = eta * (two_j - n as f64) * amp;
        sum += (lhs - rhs).norm_sqr();
    }
    Ok(sum.sqrt())
}

/// Builds `|eta, pi/2>` under `F(N) = N^2 - N` and returns
/// `|| Pi J_- psi - eta (2j - N) psi ||_2` using explicit operator matrices.
pub fn parity_identity_residual(params: &CoherentParams) -> Result<f64> {
    let space = params.space;
    let hamiltonian = NonlinearFunction::parse("N^2-N")?;
    let evolved = EvolvedParams::new(*params, hamiltonian, std::f64::consts::FRAC_PI_2)?;
    let psi = nonlinear_scs(&evolved)?;

    let lhs_op = &parity_operator(space) * &ladder_lowering(space);
    let two_j = Complex64::from(f64::from(space.two_j()));
    let rhs_op = (&Operator::identity(space).scale(two_j) - &number_operator(space)).scale(params.eta);
    let residual = &lhs_op - &rhs_op;
    let image = residual.apply(psi.amplitudes());
    Ok(image.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn params(two_j: u32, eta: Complex64) -> CoherentParams {
        CoherentParams::new(SpinSpace::with_two_j(two_j), eta).unwrap()
    }

    fn evolved(two_j: u32, eta: f64, f: &str, t: f64) -> EvolvedParams {
        EvolvedParams::new(params(two_j, eta.into()), NonlinearFunction::parse(f).unwrap(), t).unwrap()
    }

    fn unity(_: u32) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn scs_examples() {
        for two_j in 0..6 {
            let psi = scs(&params(two_j, 0.0.into()));
            assert_eq!(psi, StateVector::number_state(SpinSpace::with_two_j(two_j), 0).unwrap());
        }
        let half = scs(&params(1, 1.0.into()));
        assert!(max_diff(half.amplitudes(), &[FRAC_1_SQRT_2.into(), FRAC_1_SQRT_2.into()]) < 1e-15);

        // 2^(-1) * (1, sqrt 2, 1)
        let one = scs(&params(2, 1.0.into()));
        let expected = [0.5.into(), FRAC_1_SQRT_2.into(), 0.5.into()];
        assert!(max_diff(one.amplitudes(), &expected) < 1e-15);
        assert!((one.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scs_is_stable_for_extreme_eta() {
        for eta in [1e-3, 1e3, 1e8] {
            for two_j in [1, 20, 61, 150] {
                let psi = scs(&params(two_j, Complex64::from_polar(eta, 0.7)));
                assert!((psi.norm() - 1.0).abs() < 1e-12);
                assert!(psi.amplitudes().iter().all(|a| a.is_finite()));
            }
        }
        let top = scs(&params(150, 1e8.into()));
        assert!((top.amplitudes()[150].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn scs_ladder_equation() {
        for two_j in 1..=20 {
            for modulus in [0.1, 0.5, 1.0, 2.0] {
                for phase in [0.0, PI / 3.0, FRAC_PI_2] {
                    let eta = Complex64::from_polar(modulus, phase);
                    let r = ladder_residual(&scs(&params(two_j, eta)), eta, &unity).unwrap();
                    assert!(r <= 1e-10, "two_j={two_j} eta={eta} residual={r}");
                }
            }
        }
    }

    #[test]
    fn ground_state_residual_is_two_j() {
        for two_j in 0..8 {
            let ground = StateVector::number_state(SpinSpace::with_two_j(two_j), 0).unwrap();
            let r = ladder_residual(&ground, 1.0.into(), &unity).unwrap();
            assert!((r - f64::from(two_j)).abs() < 1e-15);
        }
    }

    #[test]
    fn evolved_state_ladder_equation() {
        for f in ["N^2", "N^3", "N^4", "sin(2*N)"] {
            let ham = NonlinearFunction::parse(f).unwrap();
            for step in 0..32 {
                let t = 2.0 * PI * f64::from(step) / 31.0;
                for two_j in [1, 4, 10] {
                    let eta = Complex64::new(0.3, -0.2);
                    let psi = nonlinear_scs(&EvolvedParams::new(params(two_j, eta), ham.clone(), t).unwrap()).unwrap();
                    let r = ladder_residual(&psi, eta, &effective_nonlinearity(&ham, t)).unwrap();
                    assert!(r <= 1e-10, "{f} t={t} two_j={two_j}: {r}");
                }
            }
        }
    }

    #[test]
    fn zero_time_is_the_coherent_state() {
        let p = evolved(10, 0.1, "N^3", 0.0);
        let a = nonlinear_scs(&p).unwrap();
        assert!(max_diff(a.amplitudes(), scs(&p.base).amplitudes()) <= 1e-14);
        let f = effective_nonlinearity(&p.hamiltonian, 0.0);
        for n in 0..10 {
            assert_eq!(f.weight(n).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn constant_hamiltonian_is_a_global_phase() {
        let t = 0.83;
        let p = evolved(6, 0.4, "2.5", t);
        let psi = nonlinear_scs(&p).unwrap();
        let base = scs(&p.base);
        let global = Complex64::from_polar(1.0, -t * 2.5);
        let rotated: Vec<_> = base.amplitudes().iter().map(|a| a * global).collect();
        assert!(max_diff(psi.amplitudes(), &rotated) < 1e-15);
    }

    #[test]
    fn quadratic_weights_match_closed_form() {
        let ham = NonlinearFunction::parse("N^2-N").unwrap();
        let t = 0.37;
        let f = effective_nonlinearity(&ham, t);
        for n in 0..12 {
            let expected = Complex64::from_polar(1.0, 2.0 * f64::from(n) * t);
            assert!((f.weight(n).unwrap() - expected).norm() < 1e-13);
        }
        let parity = effective_nonlinearity(&ham, FRAC_PI_2);
        for n in 0..12u32 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((parity.weight(n).unwrap() - Complex64::from(sign)).norm() < 1e-12);
        }
    }

    #[test]
    fn parity_identity() {
        assert_eq!(parity_identity_residual(&params(6, 0.0.into())).unwrap(), 0.0);
        assert!(parity_identity_residual(&params(10, 0.1.into())).unwrap() <= 1e-10);
        assert!(parity_identity_residual(&params(1, Complex64::new(0.5, 0.3))).unwrap() <= 1e-10);
        for two_j in 1..=20 {
            let r = parity_identity_residual(&params(two_j, Complex64::new(-0.7, 1.3))).unwrap();
            assert!(r <= 1e-10, "two_j={two_j}: {r}");
        }
    }

    #[test]
    fn evolution_composes_and_preserves_statistics() {
        let ham = NonlinearFunction::parse("N^3 - 2*N").unwrap();
        let base = params(12, Complex64::new(0.6, 0.2));
        let (t1, t2) = (0.41, 1.27);
        let first = nonlinear_scs(&EvolvedParams::new(base, ham.clone(), t1).unwrap()).unwrap();
        let composed = evolve(&first, &ham, t2).unwrap();
        let direct = nonlinear_scs(&EvolvedParams::new(base, ham, t1 + t2).unwrap()).unwrap();
        assert!(max_diff(composed.amplitudes(), direct.amplitudes()) <= 1e-12);
        let p0 = scs(&base).probabilities();
        for (a, b) in direct.probabilities().iter().zip(&p0) {
            assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn non_finite_hamiltonian_is_an_error() {
        let p = evolved(10, 0.2, "N^400", 1.0);
        assert!(matches!(nonlinear_scs(&p), Err(Error::Evaluation { .. })));
        assert!(CoherentParams::new(SpinSpace::with_two_j(2), Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(EvolvedParams::new(params(2, 0.1.into()), p.hamiltonian.clone(), f64::INFINITY).is_err());
    }
}
