//! Spectroscopic squeezing parameter
//! `xi^2 = 2j (Delta J_n1)^2 / (<J_n2>^2 + <J_n3>^2)` along an arbitrary axis.

use crate::algebra::{expectation, variance, Direction, SpinOperators, SpinSpace, StateVector};
use crate::error::{Error, Result};

/// Below this the transverse mean spin is treated as zero and `xi^2` is undefined.
pub const DENOMINATOR_CUTOFF: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezingReport {
    pub n1: Direction,
    pub xi2: f64,
    pub variance_n1: f64,
    /// `(<J_x>, <J_y>, <J_z>)`
    pub mean_spin: [f64; 3],
    /// `<J_n2>^2 + <J_n3>^2`
    pub denominator: f64,
}

/// Completes `n1` to a right-handed orthonormal frame `(n1, n2, n3)`.
///
/// `n2` is the coordinate axis along which `n1` is smallest (first axis wins
/// ties), with its `n1` component projected out; `n3 = n1 x n2`.
pub fn orthogonal_triad(n1: Direction) -> (Direction, Direction) {
    let c = n1.components();
    let mut axis = 0;
    for k in 1..3 {
        if c[k].abs() < c[axis].abs() {
            axis = k;
        }
    }
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    let overlap = c[axis];
    let n2 = Direction::normalized(e[0] - overlap * c[0], e[1] - overlap * c[1], e[2] - overlap * c[2])
        .expect("smallest axis is never parallel to a unit vector");
    let [x, y, z] = n1.cross(&n2);
    let n3 = Direction::normalized(x, y, z).expect("cross product of orthonormal pair");
    (n2, n3)
}

/// Evaluates squeezing for many states on one space without rebuilding operators.
#[derive(Clone, Debug)]
pub struct Squeezer {
    ops: SpinOperators,
}

impl Squeezer {
    pub fn new(space: SpinSpace) -> Self {
        Self { ops: SpinOperators::new(space) }
    }

    pub fn space(&self) -> SpinSpace {
        self.ops.space()
    }

    pub fn mean_spin(&self, psi: &StateVector) -> Result<[f64; 3]> {
        Ok([
            expectation(&self.ops.jx, psi)?.re,
            expectation(&self.ops.jy, psi)?.re,
            expectation(&self.ops.jz, psi)?.re,
        ])
    }

    pub fn squeezing(&self, psi: &StateVector, n1: Direction) -> Result<SqueezingReport> {
        let (n2, n3) = orthogonal_triad(n1);
        self.squeezing_in_frame(psi, n1, n2, n3)
    }

    /// Same as [`Squeezer::squeezing`] with a caller-chosen transverse pair.
    pub fn squeezing_in_frame(
        &self,
        psi: &StateVector,
        n1: Direction,
        n2: Direction,
        n3: Direction,
    ) -> Result<SqueezingReport> {
        let dots = [
            n1.dot(n2.components()),
            n1.dot(n3.components()),
            n2.dot(n3.components()),
        ];
        if dots.iter().any(|d| d.abs() > 1e-10) {
            return Err(Error::Argument(format!("frame is not orthogonal: dot products {dots:?}")));
        }
        let mean_spin = self.mean_spin(psi)?;
        let variance_n1 = variance(&self.ops.along(n1), psi)?;
        let denominator = n2.dot(mean_spin).powi(2) + n3.dot(mean_spin).powi(2);
        if denominator.is_nan() || denominator < DENOMINATOR_CUTOFF {
            return Err(Error::UndefinedDirection { denominator });
        }
        let two_j = f64::from(self.space().two_j());
        Ok(SqueezingReport {
            n1,
            xi2: two_j * variance_n1 / denominator,
            variance_n1,
            mean_spin,
            denominator,
        })
    }

    /// Reports along x, y and z; each axis fails independently.
    pub fn xyz(&self, psi: &StateVector) -> [Result<SqueezingReport>; 3] {
        [Direction::X, Direction::Y, Direction::Z].map(|n| self.squeezing(psi, n))
    }

    /// `2j (Delta N)^2 / |<J_->|^2`, the number-statistics form of `xi_z^2`.
    pub fn xi_z_from_number_statistics(&self, psi: &StateVector) -> Result<f64> {
        let var_n = variance(&self.ops.number, psi)?;
        let lowering = expectation(&self.ops.lowering, psi)?.norm_sqr();
        if lowering.is_nan() || lowering < DENOMINATOR_CUTOFF {
            return Err(Error::UndefinedDirection { denominator: lowering });
        }
        Ok(f64::from(self.space().two_j()) * var_n / lowering)
    }
}

/// `(<J_x>, <J_y>, <J_z>)`.
pub fn mean_spin(psi: &StateVector) -> [f64; 3] {
    Squeezer::new(psi.space()).mean_spin(psi).expect("operators built on the state's space")
}

pub fn squeezing_parameter(psi: &StateVector, n1: Direction) -> Result<SqueezingReport> {
    Squeezer::new(psi.space()).squeezing(psi, n1)
}

pub fn squeezing_xyz(psi: &StateVector) -> [Result<SqueezingReport>; 3] {
    Squeezer::new(psi.space()).xyz(psi)
}
