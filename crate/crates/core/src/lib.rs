//! Spin coherent states, nonlinear spin coherent states obtained by evolving
//! them under diagonal Hamiltonians `F(N)`, and the spectroscopic
//! spin-squeezing parameter along arbitrary axes.
//!
//! Every closed-form moment of the coherent and evolved states is available
//! in [`oracles`] and is cross-checked against the dense-matrix path in
//! [`verify`].

pub mod algebra;
pub mod coherent;
pub mod combinatorics;
pub mod error;
pub mod expr;
pub mod oracles;
pub mod squeezing;
pub mod sweep;
pub mod verify;

pub use algebra::{Direction, Operator, SpinOperators, SpinSpace, StateVector};
pub use coherent::{nonlinear_scs, scs, CoherentParams, EvolvedParams};
pub use error::{Error, Result};
pub use expr::NonlinearFunction;
pub use num_complex::Complex64;
pub use squeezing::{squeezing_parameter, squeezing_xyz, SqueezingReport, Squeezer};
