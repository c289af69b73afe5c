//! Self-check suite: closed forms against the dense-matrix path, the
//! no-squeezing theorems, and qualitative features of the time sweeps.
//!
//! Every check is deterministic (fixed grids, seeded RNG), so the rendered
//! report is identical from run to run.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{expectation, variance, Direction, Operator, SpinOperators, SpinSpace, StateVector};
use crate::coherent::{
    effective_nonlinearity, evolve, ladder_residual, parity_identity_residual, scs, CoherentParams,
};
use crate::error::{Error, Result};
use crate::expr::NonlinearFunction;
use crate::oracles;
use crate::squeezing::{orthogonal_triad, Squeezer};
use crate::sweep::{run_sweep, Axis, SweepConfig, SweepTable};

/// Absolute tolerance on every identity, applied relative to `max(1, |expected|)`.
pub const TOLERANCE: f64 = 1e-10;

/// Hamiltonian families used throughout the figures.
pub const FAMILIES: [&str; 5] = ["N^2", "N^3", "N^4", "N^2-N", "sin(2*N)"];

/// Evolution times for the oracle comparisons.
pub const ORACLE_TIMES: [f64; 4] = [0.0, 0.3, 1.1, FRAC_PI_2];

/// A grid point counts as squeezed when `xi^2` is below this.
pub const SQUEEZED_BELOW: f64 = 1.0 - TOLERANCE;

const SEED: u64 = 0x5eed_5a1e;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Recorded observation that is not asserted.
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "NOTE",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: &'static str,
    pub status: Status,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn bounded(criterion: u8, name: &'static str, measured: f64, tolerance: f64, detail: String) -> Self {
        let status = if measured <= tolerance { Status::Pass } else { Status::Fail };
        Self { criterion, name, status, measured, tolerance, detail }
    }

    fn failed(criterion: u8, name: &'static str, detail: String) -> Self {
        Self { criterion, name, status: Status::Fail, measured: f64::NAN, tolerance: 0.0, detail }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: measured {:.3e}, tolerance {:.0e}; {}",
            self.status, self.criterion, self.name, self.measured, self.tolerance, self.detail
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        let failures = self.checks.iter().filter(|c| !c.passed()).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failures)
    }
}

/// Runs every check in criterion order.
pub fn run_verify() -> VerifyReport {
    let mut checks = vec![
        scs_nullity(),
        z_direction_bound(),
        oracle_equivalence(),
        ladder_identities(),
    ];
    checks.extend(figure1_reproduction());
    checks.push(figure2_reproduction());
    checks.push(triad_invariance());
    checks.push(sweep_format_stability());
    VerifyReport { checks }
}

/// `|a - b| / max(1, |b|)`
fn deviation(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn complex_deviation(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Moduli {0.1, 0.5, 1, 2} times ten phases `2 pi k / 10`.
pub fn eta_grid() -> Vec<Complex64> {
    let mut grid = Vec::with_capacity(40);
    for modulus in [0.1, 0.5, 1.0, 2.0] {
        for k in 0..10 {
            grid.push(Complex64::from_polar(modulus, TAU * f64::from(k) / 10.0));
        }
    }
    grid
}

fn coherent(two_j: u32, eta: Complex64) -> StateVector {
    scs(&CoherentParams { space: SpinSpace::with_two_j(two_j), eta })
}

fn families() -> Vec<NonlinearFunction> {
    FAMILIES.iter().map(|f| NonlinearFunction::parse(f).expect("builtin families parse")).collect()
}

/// Criterion 1 with the default squeezing evaluation.
pub fn scs_nullity() -> CheckResult {
    scs_nullity_with(&|psi, n| Squeezer::new(psi.space()).squeezing(psi, n).map(|r| r.xi2))
}

/// Criterion 1 with a caller-supplied `xi^2` evaluator.
pub fn scs_nullity_with(xi2: &dyn Fn(&StateVector, Direction) -> Result<f64>) -> CheckResult {
    const NAME: &str = "coherent state unsqueezed along x, y, z";
    let mut worst: f64 = 0.0;
    let mut evaluated = 0;
    let mut excluded = Vec::new();
    for two_j in 1..=20 {
        for eta in eta_grid() {
            let psi = coherent(two_j, eta);
            for axis in Axis::ALL {
                match xi2(&psi, axis.direction()) {
                    Ok(v) => {
                        evaluated += 1;
                        worst = worst.max((v - 1.0).abs());
                    }
                    Err(Error::UndefinedDirection { .. }) => excluded.push((two_j, eta, axis)),
                    Err(e) => return CheckResult::failed(1, NAME, format!("2j={two_j} eta={eta}: {e}")),
                }
            }
        }
    }
    let mut etas: Vec<String> = excluded.iter().map(|(_, eta, axis)| format!("{axis:?}@{eta:.3}")).collect();
    etas.dedup();
    etas.sort();
    etas.dedup();
    let detail = format!(
        "max |xi2 - 1| over {evaluated} cases; {} excluded by cutoff ({})",
        excluded.len(),
        etas.join(" ")
    );
    CheckResult::bounded(1, NAME, worst, TOLERANCE, detail)
}

/// Random integer polynomial of degree <= 4 with coefficients in -3..=3,
/// rendered in the expression grammar.
fn random_polynomial(rng: &mut ChaCha8Rng) -> String {
    let terms: Vec<String> = (0..=4)
        .filter_map(|power| {
            let c: i32 = rng.random_range(-3..=3);
            (c != 0).then(|| match power {
                0 => format!("{c}"),
                _ => format!("{c}*N^{power}"),
            })
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn random_eta(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.random_range(0.05..2.5), rng.random_range(0.0..TAU))
}

/// Criterion 2.
pub fn z_direction_bound() -> CheckResult {
    const NAME: &str = "no squeezing along z for evolved states";
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut min_matrix = f64::INFINITY;
    let mut min_closed = f64::INFINITY;
    let mut max_disagreement: f64 = 0.0;
    let mut undefined = 0;
    for case in 0..1000 {
        let two_j = rng.random_range(1..=20u32);
        let eta = random_eta(&mut rng);
        let source = random_polynomial(&mut rng);
        let t = rng.random_range(0.0..TAU);
        let hamiltonian = NonlinearFunction::parse(&source).expect("generated polynomial parses");
        let outcome = (|| -> Result<(Result<f64>, Result<f64>)> {
            let psi = evolve(&coherent(two_j, eta), &hamiltonian, t)?;
            let matrix = Squeezer::new(psi.space()).squeezing(&psi, Direction::Z).map(|r| r.xi2);
            let closed = oracles::nlscs_xi_z(two_j, eta, &hamiltonian, t);
            Ok((matrix, closed))
        })();
        match outcome {
            Ok((Ok(matrix), Ok(closed))) => {
                min_matrix = min_matrix.min(matrix);
                min_closed = min_closed.min(closed);
                max_disagreement = max_disagreement.max(deviation(matrix, closed));
            }
            Ok((Err(Error::UndefinedDirection { .. }), Err(Error::UndefinedDirection { .. }))) => undefined += 1,
            Ok((matrix, closed)) => {
                return CheckResult::failed(
                    2,
                    NAME,
                    format!("case {case} (2j={two_j}, eta={eta}, F={source}, t={t}): {matrix:?} vs {closed:?}"),
                )
            }
            Err(e) => return CheckResult::failed(2, NAME, format!("case {case}: {e}")),
        }
    }
    let shortfall = (1.0 - min_matrix.min(min_closed)).max(0.0);
    let measured = shortfall.max(max_disagreement);
    let detail = format!(
        "worst of (1 - min xi_z^2, path disagreement); min matrix {min_matrix:.12}, min closed form {min_closed:.12}, \
         disagreement {max_disagreement:.3e}, {undefined} undefined"
    );
    CheckResult::bounded(2, NAME, measured, TOLERANCE, detail)
}

/// Operators for the matrix side of the oracle comparison on one space.
struct MatrixMoments {
    ops: SpinOperators,
    lowering_sq: Operator,
    number_sq: Operator,
    /// `N (N-1) ... (N-k+1)` for k = 0..=4
    falling: Vec<Operator>,
    /// `lambda^N` for each entry of `LAMBDAS`
    powers: Vec<Operator>,
}

const LAMBDAS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

impl MatrixMoments {
    fn new(space: SpinSpace) -> Self {
        let ops = SpinOperators::new(space);
        let identity = Operator::identity(space);
        let mut falling = vec![identity.clone()];
        for k in 0..4 {
            let shifted = &ops.number - &identity.scale(Complex64::from(f64::from(k)));
            let next = &falling[k as usize] * &shifted;
            falling.push(next);
        }
        let dim = space.dim();
        let powers = LAMBDAS
            .iter()
            .map(|&lambda| {
                let diag = DMatrix::from_fn(dim, dim, |r, c| {
                    if r == c {
                        Complex64::from(lambda.powi(r as i32))
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                Operator::new(space, diag, true).expect("diagonal real matrix is hermitian")
            })
            .collect();
        Self {
            lowering_sq: &ops.lowering * &ops.lowering,
            number_sq: &ops.number * &ops.number,
            ops,
            falling,
            powers,
        }
    }
}

fn oracle_deviation_scs(two_j: u32, eta: Complex64, m: &MatrixMoments) -> Result<f64> {
    let psi = coherent(two_j, eta);
    let mut worst: f64 = 0.0;
    for (lambda, op) in LAMBDAS.iter().zip(&m.powers) {
        let g = oracles::generating_function(two_j, eta, *lambda)?;
        worst = worst.max(deviation(expectation(op, &psi)?.re, g));
    }
    for (k, op) in m.falling.iter().enumerate() {
        let f = oracles::factorial_moment(two_j, eta, k as i64)?;
        worst = worst.max(deviation(expectation(op, &psi)?.re, f));
    }
    let moments = oracles::scs_number_moments(two_j, eta);
    worst = worst.max(deviation(expectation(&m.ops.number, &psi)?.re, moments.mean_n));
    worst = worst.max(deviation(expectation(&m.number_sq, &psi)?.re, moments.mean_n2));
    worst = worst.max(deviation(variance(&m.ops.number, &psi)?, moments.var_n));
    worst = worst.max(complex_deviation(expectation(&m.ops.lowering, &psi)?, oracles::scs_jminus_k(two_j, eta, 1)?));
    worst = worst.max(complex_deviation(expectation(&m.lowering_sq, &psi)?, oracles::scs_jminus_k(two_j, eta, 2)?));
    let means = oracles::scs_spin_means(two_j, eta);
    for (op, mean) in [&m.ops.jx, &m.ops.jy, &m.ops.jz].into_iter().zip(means) {
        worst = worst.max(deviation(expectation(op, &psi)?.re, mean));
    }
    let (vx, vy) = oracles::scs_variances_xy(two_j, eta);
    worst = worst.max(deviation(variance(&m.ops.jx, &psi)?, vx));
    worst = worst.max(deviation(variance(&m.ops.jy, &psi)?, vy));
    Ok(worst)
}

fn oracle_deviation_evolved(
    two_j: u32,
    eta: Complex64,
    hamiltonian: &NonlinearFunction,
    t: f64,
    m: &MatrixMoments,
) -> Result<f64> {
    let psi = evolve(&coherent(two_j, eta), hamiltonian, t)?;
    let mut worst: f64 = 0.0;
    for (k, op) in [(1, &m.ops.lowering), (2, &m.lowering_sq)] {
        let closed = oracles::nlscs_jminus_k(two_j, eta, hamiltonian, t, k)?;
        worst = worst.max(complex_deviation(expectation(op, &psi)?, closed));
    }
    // number statistics do not depend on t
    let moments = oracles::scs_number_moments(two_j, eta);
    worst = worst.max(deviation(expectation(&m.ops.number, &psi)?.re, moments.mean_n));
    worst = worst.max(deviation(expectation(&m.number_sq, &psi)?.re, moments.mean_n2));
    worst = worst.max(deviation(variance(&m.ops.number, &psi)?, moments.var_n));
    Ok(worst)
}

/// Criterion 3.
pub fn oracle_equivalence() -> CheckResult {
    const NAME: &str = "closed forms match the dense-matrix path";
    let hamiltonians = families();
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for two_j in 1..=20 {
        let m = MatrixMoments::new(SpinSpace::with_two_j(two_j));
        for eta in eta_grid() {
            let result = oracle_deviation_scs(two_j, eta, &m).and_then(|mut w| {
                for h in &hamiltonians {
                    for t in ORACLE_TIMES {
                        w = w.max(oracle_deviation_evolved(two_j, eta, h, t, &m)?);
                        cases += 1;
                    }
                }
                Ok(w)
            });
            match result {
                Ok(w) => worst = worst.max(w),
                Err(e) => return CheckResult::failed(3, NAME, format!("2j={two_j} eta={eta}: {e}")),
            }
            cases += 1;
        }
    }
    let detail = format!("max relative deviation over {cases} states (G, F(k<=4), N moments, J_-^k, means, variances)");
    CheckResult::bounded(3, NAME, worst, TOLERANCE, detail)
}

/// Criterion 4.
pub fn ladder_identities() -> CheckResult {
    const NAME: &str = "ladder and parity identities";
    let hamiltonians = families();
    let unity = |_: u32| Complex64::new(1.0, 0.0);
    let run = || -> Result<(f64, f64, f64)> {
        let (mut coherent_max, mut evolved_max, mut parity_max) = (0.0f64, 0.0f64, 0.0f64);
        for two_j in 1..=20 {
            for eta in eta_grid() {
                let psi = coherent(two_j, eta);
                coherent_max = coherent_max.max(ladder_residual(&psi, eta, &unity)?);
                for h in &hamiltonians {
                    for t in ORACLE_TIMES {
                        let evolved = evolve(&psi, h, t)?;
                        let f = effective_nonlinearity(h, t);
                        evolved_max = evolved_max.max(ladder_residual(&evolved, eta, &f)?);
                    }
                }
                let params = CoherentParams::new(SpinSpace::with_two_j(two_j), eta)?;
                parity_max = parity_max.max(parity_identity_residual(&params)?);
            }
        }
        Ok((coherent_max, evolved_max, parity_max))
    };
    match run() {
        Ok((a, b, c)) => CheckResult::bounded(
            4,
            NAME,
            a.max(b).max(c),
            TOLERANCE,
            format!("max residual: coherent {a:.3e}, evolved {b:.3e}, parity at t=pi/2 {c:.3e}"),
        ),
        Err(e) => CheckResult::failed(4, NAME, e.to_string()),
    }
}

fn figure_sweep(f: &str, eta: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let config = SweepConfig {
        two_j: 10,
        eta: Complex64::new(eta, 0.0),
        f_expr: f.to_string(),
        axes: vec![Axis::X, Axis::Y],
        ..SweepConfig::default()
    };
    let table = run_sweep(&config)?;
    let column = |axis| -> Result<Vec<f64>> {
        table
            .column(axis)
            .expect("requested axis")
            .into_iter()
            .map(|c| c.value().ok_or(Error::UndefinedDirection { denominator: 0.0 }))
            .collect()
    };
    Ok((column(Axis::X)?, column(Axis::Y)?))
}

/// Criterion 5: early-time x squeezing, no simultaneous x/y squeezing, and
/// (recorded only) the trend of squeezed grid points with the power of `N`.
pub fn figure1_reproduction() -> Vec<CheckResult> {
    const NAME: &str = "F=N^k sweeps: x squeezed first, never x and y together";
    const TREND: &str = "F=N^k sweeps: squeezed grid points vs k";
    let mut counts = Vec::new();
    let mut simultaneous = Vec::new();
    let mut first = None;
    for f in ["N^2", "N^3", "N^4"] {
        let (x, y) = match figure_sweep(f, 0.1) {
            Ok(cols) => cols,
            Err(e) => return vec![CheckResult::failed(5, NAME, format!("{f}: {e}"))],
        };
        if first.is_none() {
            first = Some((x[1], y[1]));
        }
        simultaneous.push(x.iter().zip(&y).filter(|(a, b)| **a < SQUEEZED_BELOW && **b < SQUEEZED_BELOW).count());
        counts.push(x.iter().zip(&y).filter(|(a, b)| a.min(**b) < SQUEEZED_BELOW).count());
    }
    let (x1, y1) = first.expect("N^2 sweep ran");
    let ordered = x1 < 1.0 && y1 > 1.0;
    let both: usize = simultaneous.iter().sum();
    let status = if ordered && both == 0 { Status::Pass } else { Status::Fail };
    let main = CheckResult {
        criterion: 5,
        name: NAME,
        status,
        measured: both as f64,
        tolerance: 0.0,
        detail: format!(
            "N^2 at t=0.005: xi2_x={x1:.9}, xi2_y={y1:.9}; simultaneous counts (N^2, N^3, N^4) = {simultaneous:?}"
        ),
    };
    let monotone = counts.windows(2).all(|w| w[0] <= w[1]);
    let trend = CheckResult {
        criterion: 5,
        name: TREND,
        status: if monotone { Status::Pass } else { Status::Reported },
        measured: counts[2] as f64 - counts[0] as f64,
        tolerance: 0.0,
        detail: format!(
            "points with min(xi2_x, xi2_y) < 1 - 1e-10 on 601-point grid (N^2, N^3, N^4) = {counts:?}{}",
            if monotone { "" } else { "; not monotone on this grid, recorded only" }
        ),
    };
    vec![main, trend]
}

/// Criterion 6.
pub fn figure2_reproduction() -> CheckResult {
    const NAME: &str = "F=sin(2N) sweeps: y squeezed first, squeezing shrinks with eta";
    let mut fractions = Vec::new();
    let mut first = None;
    for eta in [0.1, 0.2, 0.3] {
        let (x, y) = match figure_sweep("sin(2*N)", eta) {
            Ok(cols) => cols,
            Err(e) => return CheckResult::failed(6, NAME, format!("eta={eta}: {e}")),
        };
        if first.is_none() {
            first = Some((x[1], y[1]));
        }
        let squeezed = x.iter().zip(&y).filter(|(a, b)| a.min(**b) < SQUEEZED_BELOW).count();
        fractions.push(squeezed as f64 / x.len() as f64);
    }
    let (x1, y1) = first.expect("eta=0.1 sweep ran");
    let ordered = y1 < 1.0 && x1 > 1.0;
    let decreasing = fractions.windows(2).all(|w| w[1] < w[0]);
    CheckResult {
        criterion: 6,
        name: NAME,
        status: if ordered && decreasing { Status::Pass } else { Status::Fail },
        measured: fractions[2] - fractions[0],
        tolerance: 0.0,
        detail: format!(
            "eta=0.1 at t=0.005: xi2_x={x1:.9}, xi2_y={y1:.9}; squeezed fraction (eta=0.1, 0.2, 0.3) = \
             [{:.4}, {:.4}, {:.4}]",
            fractions[0], fractions[1], fractions[2]
        ),
    }
}

fn random_direction(rng: &mut ChaCha8Rng) -> Direction {
    loop {
        let v: [f64; 3] = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let len2 = v.iter().map(|c| c * c).sum::<f64>();
        if len2 > 1e-2 && len2 <= 1.0 {
            return Direction::normalized(v[0], v[1], v[2]).expect("nonzero");
        }
    }
}

/// `(n2, n3)` rotated by `angle` about `n1`.
pub fn rotate_pair(n2: Direction, n3: Direction, angle: f64) -> (Direction, Direction) {
    let (s, c) = angle.sin_cos();
    let [a, b] = [n2.components(), n3.components()];
    let mix = |p: f64, q: f64| [0, 1, 2].map(|i| p * a[i] + q * b[i]);
    let r2 = mix(c, s);
    let r3 = mix(-s, c);
    (
        Direction::normalized(r2[0], r2[1], r2[2]).expect("rotated unit vector"),
        Direction::normalized(r3[0], r3[1], r3[2]).expect("rotated unit vector"),
    )
}

/// Criterion 7.
pub fn triad_invariance() -> CheckResult {
    const NAME: &str = "xi2 independent of the transverse frame";
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let hamiltonians = families();
    let mut worst: f64 = 0.0;
    let mut accepted = 0;
    let mut skipped = 0;
    while accepted < 100 {
        let two_j = rng.random_range(1..=20u32);
        let eta = random_eta(&mut rng);
        let h = &hamiltonians[rng.random_range(0..hamiltonians.len())];
        let t = rng.random_range(0.0..3.0);
        let n1 = random_direction(&mut rng);
        let angle = rng.random_range(0.0..TAU);
        let psi = match evolve(&coherent(two_j, eta), h, t) {
            Ok(psi) => psi,
            Err(e) => return CheckResult::failed(7, NAME, e.to_string()),
        };
        let squeezer = Squeezer::new(psi.space());
        let (n2, n3) = orthogonal_triad(n1);
        let (r2, r3) = rotate_pair(n2, n3, angle);
        match (squeezer.squeezing(&psi, n1), squeezer.squeezing_in_frame(&psi, n1, r2, r3)) {
            (Ok(a), Ok(b)) => {
                worst = worst.max(deviation(b.xi2, a.xi2));
                accepted += 1;
            }
            (Err(Error::UndefinedDirection { .. }), _) | (_, Err(Error::UndefinedDirection { .. })) => skipped += 1,
            (Err(e), _) | (_, Err(e)) => return CheckResult::failed(7, NAME, e.to_string()),
        }
    }
    let detail = format!("max relative change of xi2 over {accepted} random (state, n1, rotation) triples, {skipped} resampled");
    CheckResult::bounded(7, NAME, worst, TOLERANCE, detail)
}

/// Criterion 8 (the sweep half; report determinism is checked by running
/// the whole suite twice).
pub fn sweep_format_stability() -> CheckResult {
    const NAME: &str = "sweep CSV byte-stable across runs and re-emission";
    let config = SweepConfig::default();
    let outcome = (|| -> Result<(bool, bool)> {
        let first = run_sweep(&config)?.to_csv();
        let second = run_sweep(&config)?.to_csv();
        let reemitted = SweepTable::from_csv(&first)?.to_csv();
        Ok((first == second, first == reemitted))
    })();
    match outcome {
        Ok((repeat, reparse)) => {
            let mismatches = usize::from(!repeat) + usize::from(!reparse);
            CheckResult::bounded(
                8,
                NAME,
                mismatches as f64,
                0.0,
                format!("repeat run identical: {repeat}; parse and re-emit identical: {reparse}"),
            )
        }
        Err(e) => CheckResult::failed(8, NAME, e.to_string()),
    }
}
