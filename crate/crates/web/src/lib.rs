//! Browser bindings for the interactive squeezing explorer in `www/`.
//!
//! Each exported function has a plain Rust counterpart returning
//! `Result<_, String>` so the numerics can be tested without a browser.

use wasm_bindgen::prelude::*;

use spinsq::algebra::Direction;
use spinsq::coherent::{evolve, scs, CoherentParams};
use spinsq::sweep::{run_sweep, Axis, Cell, SweepConfig};
use spinsq::{Complex64, NonlinearFunction, SpinSpace, Squeezer};

fn coherent_params(two_j: u32, eta_re: f64, eta_im: f64) -> Result<CoherentParams, String> {
    CoherentParams::new(SpinSpace::with_two_j(two_j), Complex64::new(eta_re, eta_im)).map_err(|e| e.to_string())
}

/// Flattened rows `[t, xi2_x, xi2_y, xi2_z, t, ...]` with `NaN` for undefined cells.
pub fn squeezing_curves_impl(
    two_j: u32,
    eta_re: f64,
    eta_im: f64,
    f_expr: &str,
    t_max: f64,
    steps: u32,
) -> Result<Vec<f64>, String> {
    let config = SweepConfig {
        two_j,
        eta: Complex64::new(eta_re, eta_im),
        f_expr: f_expr.to_string(),
        t_min: 0.0,
        t_max,
        steps: steps as usize,
        axes: Axis::ALL.to_vec(),
    };
    let table = run_sweep(&config).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(table.rows.len() * 4);
    for row in &table.rows {
        out.push(row.t);
        out.extend(row.cells.iter().map(|c| match c {
            Cell::Value(v) => *v,
            Cell::Undef => f64::NAN,
        }));
    }
    Ok(out)
}

/// Number distribution `|<n|eta, t>|^2`, which does not depend on `t`.
pub fn number_distribution_impl(two_j: u32, eta_re: f64, eta_im: f64) -> Result<Vec<f64>, String> {
    Ok(scs(&coherent_params(two_j, eta_re, eta_im)?).probabilities())
}

/// `[xi2, variance, <J_x>, <J_y>, <J_z>]` along the (normalized) direction
/// `(nx, ny, nz)` at time `t`; `xi2` is `NaN` when undefined.
#[allow(clippy::too_many_arguments)]
pub fn squeezing_at_impl(
    two_j: u32,
    eta_re: f64,
    eta_im: f64,
    f_expr: &str,
    t: f64,
    nx: f64,
    ny: f64,
    nz: f64,
) -> Result<Vec<f64>, String> {
    let hamiltonian = NonlinearFunction::parse(f_expr).map_err(|e| e.to_string())?;
    let direction = Direction::normalized(nx, ny, nz).map_err(|e| e.to_string())?;
    let base = scs(&coherent_params(two_j, eta_re, eta_im)?);
    let psi = evolve(&base, &hamiltonian, t).map_err(|e| e.to_string())?;
    let squeezer = Squeezer::new(psi.space());
    let mean = squeezer.mean_spin(&psi).map_err(|e| e.to_string())?;
    match squeezer.squeezing(&psi, direction) {
        Ok(r) => Ok(vec![r.xi2, r.variance_n1, mean[0], mean[1], mean[2]]),
        Err(spinsq::Error::UndefinedDirection { .. }) => Ok(vec![f64::NAN, f64::NAN, mean[0], mean[1], mean[2]]),
        Err(e) => Err(e.to_string()),
    }
}

#[wasm_bindgen]
pub fn squeezing_curves(
    two_j: u32,
    eta_re: f64,
    eta_im: f64,
    f_expr: &str,
    t_max: f64,
    steps: u32,
) -> Result<Vec<f64>, JsError> {
    squeezing_curves_impl(two_j, eta_re, eta_im, f_expr, t_max, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn number_distribution(two_j: u32, eta_re: f64, eta_im: f64) -> Result<Vec<f64>, JsError> {
    number_distribution_impl(two_j, eta_re, eta_im).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn squeezing_at(
    two_j: u32,
    eta_re: f64,
    eta_im: f64,
    f_expr: &str,
    t: f64,
    nx: f64,
    ny: f64,
    nz: f64,
) -> Result<Vec<f64>, JsError> {
    squeezing_at_impl(two_j, eta_re, eta_im, f_expr, t, nx, ny, nz).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_layout() {
        let data = squeezing_curves_impl(10, 0.1, 0.0, "N^2", 3.0, 601).unwrap();
        assert_eq!(data.len(), 601 * 4);
        assert_eq!(data[0], 0.0);
        assert!((data[4] - 0.005).abs() < 1e-15);
        // x squeezed, y anti-squeezed at the first step
        assert!(data[5] < 1.0 && data[6] > 1.0);
        assert!(squeezing_curves_impl(10, 0.1, 0.0, "N^^2", 3.0, 10).unwrap_err().contains("offset 2"));
    }

    #[test]
    fn undefined_cells_become_nan() {
        let data = squeezing_curves_impl(4, 0.0, 0.0, "N^2", 1.0, 3).unwrap();
        assert!(data.chunks(4).all(|row| row[3].is_nan() && row[1].is_finite()));
    }

    #[test]
    fn distribution_is_binomial() {
        let p = number_distribution_impl(2, 1.0, 0.0).unwrap();
        let expected = [0.25, 0.5, 0.25];
        for (a, b) in p.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn single_direction() {
        let v = squeezing_at_impl(10, 0.1, 0.0, "N^2", 0.0, 0.0, 0.0, 2.0).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-10);
        assert!((v[4] + 4.900990099).abs() < 1e-8);
        assert!(squeezing_at_impl(10, 0.1, 0.0, "N^2", 0.0, 0.0, 0.0, 0.0).is_err());
    }
}
