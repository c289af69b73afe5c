//! Dense angular-momentum operator algebra on a single spin-j space.
//!
//! Basis vectors are the number states `|n> = |j, -j + n>`, `n = 0..=2j`,
//! so the number operator is `N = J_z + j` and `J_-` lowers `n` by one.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Unit-norm tolerance for states and directions; hermiticity tolerance for operators.
pub const UNIT_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// The `(2j+1)`-dimensional space, keyed by the integer `2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinSpace {
    two_j: u32,
}

impl SpinSpace {
    pub fn new(two_j: i64) -> Result<Self> {
        let two_j = u32::try_from(two_j)
            .map_err(|_| Error::Argument(format!("2j must be a nonnegative integer, got {two_j}")))?;
        Ok(Self { two_j })
    }

    pub const fn with_two_j(two_j: u32) -> Self {
        Self { two_j }
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    pub fn j(&self) -> f64 {
        f64::from(self.two_j) / 2.0
    }
}

impl fmt::Display for SpinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_j.is_multiple_of(2) {
            write!(f, "j={}", self.two_j / 2)
        } else {
            write!(f, "j={}/2", self.two_j)
        }
    }
}

/// Dense complex operator with a hermiticity flag set at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    space: SpinSpace,
    matrix: DMatrix<Complex64>,
    hermitian: bool,
}

impl Operator {
    /// Wraps a matrix. In debug builds a set `hermitian` flag is checked
    /// against the conjugate transpose.
    pub fn new(space: SpinSpace, matrix: DMatrix<Complex64>, hermitian: bool) -> Result<Self> {
        let dim = space.dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Argument(format!(
                "matrix is {}x{}, space {space} needs {dim}x{dim}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let op = Self { space, matrix, hermitian };
        if cfg!(debug_assertions) && hermitian {
            let defect = op.max_abs_diff(&op.adjoint());
            if defect > UNIT_TOLERANCE {
                return Err(Error::Argument(format!(
                    "operator flagged hermitian deviates from its adjoint by {defect:e}"
                )));
            }
        }
        Ok(op)
    }

    fn from_parts(space: SpinSpace, matrix: DMatrix<Complex64>, hermitian: bool) -> Self {
        Self { space, matrix, hermitian }
    }

    fn diagonal(space: SpinSpace, entry: impl Fn(u32) -> f64) -> Self {
        let dim = space.dim();
        let matrix = DMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                Complex64::new(entry(r as u32), 0.0)
            } else {
                ZERO
            }
        });
        Self::from_parts(space, matrix, true)
    }

    pub fn identity(space: SpinSpace) -> Self {
        Self::diagonal(space, |_| 1.0)
    }

    pub fn space(&self) -> SpinSpace {
        self.space
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn adjoint(&self) -> Self {
        Self::from_parts(self.space, self.matrix.adjoint(), self.hermitian)
    }

    /// Multiplies by a complex scalar; the flag survives only for real scalars.
    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_parts(self.space, &self.matrix * factor, self.hermitian && factor.im == 0.0)
    }

    /// `[self, other]`
    pub fn commutator(&self, other: &Operator) -> Self {
        &(self * other) - &(other * self)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Applies the operator to a raw amplitude vector of matching length.
    pub fn apply(&self, amplitudes: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(amplitudes.len(), self.space.dim(), "amplitude length mismatch");
        (0..self.space.dim())
            .map(|r| {
                self.matrix
                    .row(r)
                    .iter()
                    .zip(amplitudes)
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect()
    }

    fn check_space(&self, other: SpinSpace) {
        assert_eq!(self.space, other, "operators live on different spaces");
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        self.check_space(rhs.space);
        Operator::from_parts(self.space, &self.matrix * &rhs.matrix, false)
    }
}

impl Add for &Operator {
    type Output = Operator;

    fn add(self, rhs: &Operator) -> Operator {
        self.check_space(rhs.space);
        Operator::from_parts(self.space, &self.matrix + &rhs.matrix, self.hermitian && rhs.hermitian)
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        self.check_space(rhs.space);
        Operator::from_parts(self.space, &self.matrix - &rhs.matrix, self.hermitian && rhs.hermitian)
    }
}

/// Unit-norm pure state over the number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    space: SpinSpace,
    amplitudes: Vec<Complex64>,
}

fn l2_norm(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

impl StateVector {
    /// Accepts amplitudes that are already normalized to within `1e-12`.
    pub fn new(space: SpinSpace, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::check_len(space, &amplitudes)?;
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::Argument(format!("state norm is {norm}, expected 1")));
        }
        Ok(Self { space, amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(space: SpinSpace, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::check_len(space, &amplitudes)?;
        let norm = l2_norm(&amplitudes);
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Argument(format!("cannot normalize a vector of norm {norm}")));
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { space, amplitudes })
    }

    /// The number state `|n>`.
    pub fn number_state(space: SpinSpace, n: u32) -> Result<Self> {
        if n > space.two_j() {
            return Err(Error::Argument(format!("|{n}> is outside {space}")));
        }
        let mut amplitudes = vec![ZERO; space.dim()];
        amplitudes[n as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { space, amplitudes })
    }

    fn check_len(space: SpinSpace, amplitudes: &[Complex64]) -> Result<()> {
        if amplitudes.len() != space.dim() {
            return Err(Error::Argument(format!(
                "{} amplitudes given for a space of dimension {}",
                amplitudes.len(),
                space.dim()
            )));
        }
        Ok(())
    }

    pub fn space(&self) -> SpinSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// Number distribution `|c_n|^2`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Unit 3-vector selecting the component `J_n = n . J`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    x: f64,
    y: f64,
    z: f64,
}

impl Direction {
    pub const X: Direction = Direction { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Direction = Direction { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Direction = Direction { x: 0.0, y: 0.0, z: 1.0 };

    /// Accepts components whose squared length is within `1e-12` of one.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let len2 = x * x + y * y + z * z;
        if !len2.is_finite() || (len2 - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::Argument(format!(
                "direction ({x}, {y}, {z}) is not a unit vector"
            )));
        }
        Ok(Self { x, y, z })
    }

    /// Rescales any nonzero finite vector.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let len = (x * x + y * y + z * z).sqrt();
        if !(len.is_finite() && len > 0.0) {
            return Err(Error::Argument(format!("cannot normalize ({x}, {y}, {z})")));
        }
        Ok(Self { x: x / len, y: y / len, z: z / len })
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, v: [f64; 3]) -> f64 {
        self.x * v[0] + self.y * v[1] + self.z * v[2]
    }

    pub fn cross(&self, other: &Direction) -> [f64; 3] {
        [
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        ]
    }
}

/// Number operator `N = diag(0, 1, ..., 2j)`.
pub fn number_operator(space: SpinSpace) -> Operator {
    Operator::diagonal(space, f64::from)
}

/// `J_-|n> = sqrt(n (2j - n + 1)) |n-1>`.
pub fn ladder_lowering(space: SpinSpace) -> Operator {
    let dim = space.dim();
    let two_j = f64::from(space.two_j());
    let matrix = DMatrix::from_fn(dim, dim, |r, c| {
        if c == r + 1 {
            let n = c as f64;
            Complex64::new((n * (two_j - n + 1.0)).sqrt(), 0.0)
        } else {
            ZERO
        }
    });
    Operator::from_parts(space, matrix, false)
}

pub fn ladder_raising(space: SpinSpace) -> Operator {
    ladder_lowering(space).adjoint()
}

/// `(J_x, J_y, J_z)` with `J_x = (J_+ + J_-)/2`, `J_y = (J_+ - J_-)/(2i)`, `J_z = N - j`.
pub fn cartesian_components(space: SpinSpace) -> (Operator, Operator, Operator) {
    let lower = ladder_lowering(space);
    let raise = lower.adjoint();
    let half = Complex64::new(0.5, 0.0);
    let minus_half_i = Complex64::new(0.0, -0.5);
    let jx = Operator::from_parts(space, (&raise.matrix + &lower.matrix) * half, true);
    let jy = Operator::from_parts(space, (&raise.matrix - &lower.matrix) * minus_half_i, true);
    let two_j = f64::from(space.two_j());
    let jz = Operator::diagonal(space, |n| (2.0 * f64::from(n) - two_j) / 2.0);
    (jx, jy, jz)
}

/// `n_x J_x + n_y J_y + n_z J_z`.
pub fn direction_component(space: SpinSpace, n: Direction) -> Operator {
    let (jx, jy, jz) = cartesian_components(space);
    let matrix = &jx.matrix * Complex64::from(n.x)
        + &jy.matrix * Complex64::from(n.y)
        + &jz.matrix * Complex64::from(n.z);
    Operator::from_parts(space, matrix, true)
}

/// Parity `(-1)^N`.
pub fn parity_operator(space: SpinSpace) -> Operator {
    Operator::diagonal(space, |n| if n % 2 == 0 { 1.0 } else { -1.0 })
}

/// `<psi|op|psi>`.
pub fn expectation(op: &Operator, psi: &StateVector) -> Result<Complex64> {
    if op.space != psi.space {
        return Err(Error::SpaceMismatch {
            operator: op.space.two_j(),
            state: psi.space.two_j(),
        });
    }
    let image = op.apply(&psi.amplitudes);
    Ok(psi.amplitudes.iter().zip(&image).map(|(a, b)| a.conj() * b).sum())
}

/// `<op^2> - <op>^2` for a hermitian operator, evaluated as `||(op - <op>) psi||^2`.
pub fn variance(op: &Operator, psi: &StateVector) -> Result<f64> {
    if !op.hermitian {
        return Err(Error::NotHermitian);
    }
    let mean = expectation(op, psi)?.re;
    let image = op.apply(&psi.amplitudes);
    let spread: f64 = image
        .iter()
        .zip(&psi.amplitudes)
        .map(|(a, x)| (a - x * mean).norm_sqr())
        .sum();
    Ok(spread.max(0.0))
}

/// The operators used by every squeezing evaluation on one space.
#[derive(Clone, Debug)]
pub struct SpinOperators {
    pub number: Operator,
    pub lowering: Operator,
    pub jx: Operator,
    pub jy: Operator,
    pub jz: Operator,
}

impl SpinOperators {
    pub fn new(space: SpinSpace) -> Self {
        let (jx, jy, jz) = cartesian_components(space);
        Self {
            number: number_operator(space),
            lowering: ladder_lowering(space),
            jx,
            jy,
            jz,
        }
    }

    pub fn space(&self) -> SpinSpace {
        self.number.space()
    }

    /// `n . J` assembled from the cached components.
    pub fn along(&self, n: Direction) -> Operator {
        let matrix = &self.jx.matrix * Complex64::from(n.x)
            + &self.jy.matrix * Complex64::from(n.y)
            + &self.jz.matrix * Complex64::from(n.z);
        Operator::from_parts(self.space(), matrix, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::SymmetricEigen;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn diag(op: &Operator) -> Vec<f64> {
        op.matrix().diagonal().iter().map(|z| z.re).collect()
    }

    fn sorted_spectrum(op: &Operator) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(op.matrix().clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    #[test]
    fn space_dimensions() {
        assert_eq!(SpinSpace::new(1).unwrap().dim(), 2);
        assert_eq!(SpinSpace::new(10).unwrap().dim(), 11);
        assert_eq!(SpinSpace::new(10).unwrap().j(), 5.0);
        assert_eq!(SpinSpace::new(0).unwrap().dim(), 1);
        assert!(matches!(SpinSpace::new(-1), Err(Error::Argument(_))));
    }

    #[test]
    fn number_operator_diagonals() {
        assert_eq!(diag(&number_operator(SpinSpace::with_two_j(1))), vec![0.0, 1.0]);
        assert_eq!(diag(&number_operator(SpinSpace::with_two_j(2))), vec![0.0, 1.0, 2.0]);
        for two_j in 0..12 {
            let space = SpinSpace::with_two_j(two_j);
            let (_, _, jz) = cartesian_components(space);
            let shifted = &jz + &Operator::identity(space).scale(c(space.j()));
            assert!(number_operator(space).max_abs_diff(&shifted) <= 1e-14);
        }
    }

    #[test]
    fn lowering_matrix_elements() {
        let half = SpinSpace::with_two_j(1);
        let one = StateVector::number_state(half, 1).unwrap();
        assert_eq!(ladder_lowering(half).apply(one.amplitudes()), vec![c(1.0), c(0.0)]);

        // sqrt(j(j+1) - m(m-1)) with j = 1, m = 0
        let spin1 = SpinSpace::with_two_j(2);
        let mid = StateVector::number_state(spin1, 1).unwrap();
        let (j, m) = (1.0f64, 0.0f64);
        let expected = (j * (j + 1.0) - m * (m - 1.0)).sqrt();
        let image = ladder_lowering(spin1).apply(mid.amplitudes());
        assert!((image[0].re - expected).abs() < 1e-15);
        assert_eq!(image[1], c(0.0));

        let ground = StateVector::number_state(spin1, 0).unwrap();
        assert!(ladder_lowering(spin1).apply(ground.amplitudes()).iter().all(|a| *a == c(0.0)));
        assert!(!ladder_lowering(spin1).is_hermitian());
    }

    #[test]
    fn raising_lowering_commutator() {
        for two_j in 0..=20 {
            let space = SpinSpace::with_two_j(two_j);
            let (_, _, jz) = cartesian_components(space);
            let comm = ladder_raising(space).commutator(&ladder_lowering(space));
            assert!(comm.max_abs_diff(&jz.scale(c(2.0))) <= 1e-12, "two_j={two_j}");
        }
    }

    #[test]
    fn spin_half_matrices() {
        let (jx, jy, jz) = cartesian_components(SpinSpace::with_two_j(1));
        let i = Complex64::i();
        // basis order is (m=-1/2, m=+1/2)
        let sx = DMatrix::from_row_slice(2, 2, &[c(0.0), c(0.5), c(0.5), c(0.0)]);
        let sy = DMatrix::from_row_slice(2, 2, &[c(0.0), i * 0.5, -i * 0.5, c(0.0)]);
        let sz = DMatrix::from_row_slice(2, 2, &[c(-0.5), c(0.0), c(0.0), c(0.5)]);
        assert_eq!(jx.matrix(), &sx);
        assert_eq!(jy.matrix(), &sy);
        assert_eq!(jz.matrix(), &sz);
    }

    #[test]
    fn spin_one_jz_spectrum() {
        let (_, _, jz) = cartesian_components(SpinSpace::with_two_j(2));
        assert_eq!(sorted_spectrum(&jz), vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn su2_closure_and_casimir() {
        let i = Complex64::i();
        for two_j in 0..=40 {
            let space = SpinSpace::with_two_j(two_j);
            let (jx, jy, jz) = cartesian_components(space);
            assert!(jx.commutator(&jy).max_abs_diff(&jz.scale(i)) <= 1e-12);
            assert!(jy.commutator(&jz).max_abs_diff(&jx.scale(i)) <= 1e-12);
            assert!(jz.commutator(&jx).max_abs_diff(&jy.scale(i)) <= 1e-12);
            let casimir = &(&(&jx * &jx) + &(&jy * &jy)) + &(&jz * &jz);
            let j = space.j();
            let expected = Operator::identity(space).scale(c(j * (j + 1.0)));
            assert!(casimir.max_abs_diff(&expected) <= 1e-12, "two_j={two_j}");
        }
    }

    #[test]
    fn parity_properties() {
        assert_eq!(diag(&parity_operator(SpinSpace::with_two_j(1))), vec![1.0, -1.0]);
        assert_eq!(diag(&parity_operator(SpinSpace::with_two_j(2))), vec![1.0, -1.0, 1.0]);
        for two_j in 0..=15 {
            let space = SpinSpace::with_two_j(two_j);
            let parity = parity_operator(space);
            assert_eq!((&parity * &parity).max_abs_diff(&Operator::identity(space)), 0.0);
            let lower = ladder_lowering(space);
            let conj = &(&parity * &lower) * &parity;
            assert!(conj.max_abs_diff(&lower.scale(c(-1.0))) <= 1e-14);
        }
    }

    #[test]
    fn direction_components() {
        let space = SpinSpace::with_two_j(4);
        let (jx, _, jz) = cartesian_components(space);
        assert_eq!(direction_component(space, Direction::Z), jz);
        assert_eq!(direction_component(space, Direction::X), jx);

        let diag_dir = Direction::normalized(1.0, 1.0, 0.0).unwrap();
        let spectrum = sorted_spectrum(&direction_component(space, diag_dir));
        let reference = sorted_spectrum(&jz);
        for (a, b) in spectrum.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(Direction::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn expectations() {
        let space = SpinSpace::with_two_j(1);
        let n = number_operator(space);
        let ground = StateVector::number_state(space, 0).unwrap();
        assert_eq!(expectation(&n, &ground).unwrap(), c(0.0));

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = StateVector::new(space, vec![c(s), c(s)]).unwrap();
        assert!((expectation(&Operator::identity(space), &plus).unwrap() - c(1.0)).norm() < 1e-15);
        assert!((expectation(&n, &plus).unwrap().re - 0.5).abs() < 1e-15);
        assert!((variance(&n, &plus).unwrap() - 0.25).abs() < 1e-15);

        let other = StateVector::number_state(SpinSpace::with_two_j(2), 0).unwrap();
        assert!(matches!(expectation(&n, &other), Err(Error::SpaceMismatch { .. })));
        assert_eq!(variance(&ladder_lowering(space), &plus), Err(Error::NotHermitian));
    }

    #[test]
    fn eigenstates_have_zero_number_variance() {
        let space = SpinSpace::with_two_j(6);
        for k in 0..=6 {
            let psi = StateVector::number_state(space, k).unwrap();
            assert_eq!(variance(&number_operator(space), &psi).unwrap(), 0.0);
        }
    }

    #[test]
    fn ground_state_transverse_variance_is_half_j() {
        for two_j in 1..=12 {
            let space = SpinSpace::with_two_j(two_j);
            let (jx, jy, _) = cartesian_components(space);
            let ground = StateVector::number_state(space, 0).unwrap();
            assert!((variance(&jx, &ground).unwrap() - space.j() / 2.0).abs() < 1e-12);
            assert!((variance(&jy, &ground).unwrap() - space.j() / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_hermitian_flag_and_states() {
        let space = SpinSpace::with_two_j(1);
        let m = ladder_lowering(space).matrix().clone();
        if cfg!(debug_assertions) {
            assert!(Operator::new(space, m.clone(), true).is_err());
        }
        assert!(Operator::new(space, m, false).is_ok());
        assert!(StateVector::new(space, vec![c(1.0), c(1.0)]).is_err());
        assert!(StateVector::new(space, vec![c(1.0)]).is_err());
        assert!(StateVector::normalized(space, vec![c(0.0), c(0.0)]).is_err());
        assert!(StateVector::number_state(space, 2).is_err());
    }
}
