//! Time sweeps of the squeezing parameters and their CSV form.
//!
//! CSV layout: header `t,xi2_x,xi2_y,xi2_z` restricted to the requested
//! axes, every number in scientific notation with 12 significant digits
//! (`1.23456789012e-03`), the literal `undef` where the transverse mean spin
//! falls below the cutoff, `\n` line endings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::algebra::{Direction, SpinSpace};
use crate::coherent::{evolve, scs, CoherentParams};
use crate::error::{Error, Result};
use crate::expr::NonlinearFunction;
use crate::squeezing::Squeezer;

pub const DEFAULT_STEPS: usize = 601;
pub const DEFAULT_T_MAX: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn direction(self) -> Direction {
        match self {
            Axis::X => Direction::X,
            Axis::Y => Direction::Y,
            Axis::Z => Direction::Z,
        }
    }

    pub fn column(self) -> &'static str {
        match self {
            Axis::X => "xi2_x",
            Axis::Y => "xi2_y",
            Axis::Z => "xi2_z",
        }
    }
}

/// Parses a comma-separated axis list such as `x,y`; output is sorted x, y, z.
pub fn parse_axes(s: &str) -> Result<Vec<Axis>> {
    let mut axes = Vec::new();
    for part in s.split(',') {
        let axis = match part.trim() {
            "x" | "X" => Axis::X,
            "y" | "Y" => Axis::Y,
            "z" | "Z" => Axis::Z,
            other => return Err(Error::Config(format!("unknown axis `{other}` (expected x, y or z)"))),
        };
        if !axes.contains(&axis) {
            axes.push(axis);
        }
    }
    axes.sort();
    Ok(axes)
}

/// Parses `RE`, `RE+IMi` or `RE-IMi` (no spaces), e.g. `0.5+0.3i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Config(format!("cannot parse complex number `{s}` (expected RE, RE+IMi or RE-IMi)"));
    let real = |t: &str| t.parse::<f64>().ok().filter(|v| v.is_finite());
    let Some(body) = s.strip_suffix('i') else {
        return real(s).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    // split at the last sign that is not a leading sign or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = real(&body[..k]).ok_or_else(bad)?;
            let im_text = &body[k..];
            let im = match im_text {
                "+" => 1.0,
                "-" => -1.0,
                _ => real(im_text).ok_or_else(bad)?,
            };
            Ok(Complex64::new(re, im))
        }
        None => real(body).map(|im| Complex64::new(0.0, im)).ok_or_else(bad),
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub two_j: u32,
    pub eta: Complex64,
    pub f_expr: String,
    pub t_min: f64,
    pub t_max: f64,
    pub steps: usize,
    pub axes: Vec<Axis>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            two_j: 10,
            eta: Complex64::new(0.1, 0.0),
            f_expr: "N^2".to_string(),
            t_min: 0.0,
            t_max: DEFAULT_T_MAX,
            steps: DEFAULT_STEPS,
            axes: Axis::ALL.to_vec(),
        }
    }
}

/// Keys accepted in configuration files (and mirrored by CLI flags).
pub const CONFIG_KEYS: [&str; 8] = ["two-j", "eta", "f", "t-min", "t-max", "steps", "axes", "out"];

/// Parses `key = value` lines; `#` starts a comment. Keys may use `_` or `-`.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut settings = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!("line {}: unknown key `{key}`", lineno + 1)));
        }
        settings.insert(key, value.trim().to_string());
    }
    Ok(settings)
}

impl SweepConfig {
    /// Starts from the defaults and applies every recognized setting
    /// (`out` is ignored here), then validates.
    pub fn from_settings(settings: &BTreeMap<String, String>) -> Result<Self> {
        let mut config = Self::default();
        for (key, value) in settings {
            let number = |what: &str| -> Result<f64> {
                value
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Config(format!("{what} must be a finite number, got `{value}`")))
            };
            match key.as_str() {
                "two-j" => {
                    config.two_j = value
                        .parse()
                        .map_err(|_| Error::Config(format!("two-j must be a nonnegative integer, got `{value}`")))?
                }
                "eta" => config.eta = parse_complex(value)?,
                "f" => config.f_expr = value.clone(),
                "t-min" => config.t_min = number("t-min")?,
                "t-max" => config.t_max = number("t-max")?,
                "steps" => {
                    config.steps = value
                        .parse()
                        .map_err(|_| Error::Config(format!("steps must be a positive integer, got `{value}`")))?
                }
                "axes" => config.axes = parse_axes(value)?,
                "out" => {}
                other => return Err(Error::Config(format!("unknown setting `{other}`"))),
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_min.is_finite() && self.t_max.is_finite()) {
            return Err(Error::Config("time bounds must be finite".into()));
        }
        if self.t_min > self.t_max {
            return Err(Error::Config(format!("t-min {} exceeds t-max {}", self.t_min, self.t_max)));
        }
        if self.steps == 0 {
            return Err(Error::Config("steps must be at least 1".into()));
        }
        if self.steps > 1 && self.t_min == self.t_max {
            return Err(Error::Config("several steps need t-max > t-min".into()));
        }
        if self.axes.is_empty() {
            return Err(Error::Config("at least one axis is required".into()));
        }
        if !self.eta.is_finite() {
            return Err(Error::Config(format!("eta = {} is not finite", self.eta)));
        }
        Ok(())
    }

    /// Evenly spaced grid including both end points.
    pub fn times(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.t_min];
        }
        let span = self.t_max - self.t_min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.t_max } else { self.t_min + span * (i as f64 / last) })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Value(f64),
    Undef,
}

impl Cell {
    pub fn value(self) -> Option<f64> {
        match self {
            Cell::Value(v) => Some(v),
            Cell::Undef => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Value(v) => f.write_str(&format_sci(*v)),
            Cell::Undef => f.write_str("undef"),
        }
    }
}

impl FromStr for Cell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "undef" {
            return Ok(Cell::Undef);
        }
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(Cell::Value)
            .ok_or_else(|| Error::Config(format!("bad CSV cell `{s}`")))
    }
}

/// 12 significant digits, signed two-digit (or wider) exponent.
pub fn format_sci(v: f64) -> String {
    let s = format!("{v:.11e}");
    let (mantissa, exp) = s.split_once('e').expect("LowerExp always has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    /// One cell per requested axis, in axis order.
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub axes: Vec<Axis>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn column(&self, axis: Axis) -> Option<Vec<Cell>> {
        let k = self.axes.iter().position(|a| *a == axis)?;
        Some(self.rows.iter().map(|r| r.cells[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for axis in &self.axes {
            out.push(',');
            out.push_str(axis.column());
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format_sci(row.t));
            for cell in &row.cells {
                out.push(',');
                out.push_str(&cell.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Config("empty CSV".into()))?;
        let mut columns = header.split(',');
        if columns.next() != Some("t") {
            return Err(Error::Config("CSV header must start with `t`".into()));
        }
        let axes = columns
            .map(|name| {
                Axis::ALL
                    .into_iter()
                    .find(|a| a.column() == name)
                    .ok_or_else(|| Error::Config(format!("unknown CSV column `{name}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let rows = lines
            .map(|line| {
                let mut fields = line.split(',');
                let t = fields
                    .next()
                    .and_then(|f| f.parse::<f64>().ok())
                    .ok_or_else(|| Error::Config(format!("bad CSV row `{line}`")))?;
                let cells = fields.map(str::parse).collect::<Result<Vec<Cell>>>()?;
                if cells.len() != axes.len() {
                    return Err(Error::Config(format!("row `{line}` has {} cells", cells.len())));
                }
                Ok(SweepRow { t, cells })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { axes, rows })
    }
}

/// Evaluates the requested squeezing parameters of `exp(-i t F(N)) |eta>`
/// on the configured time grid.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    let hamiltonian = NonlinearFunction::parse(&config.f_expr)?;
    // fail on non-finite levels before any state is built
    hamiltonian.table(config.two_j)?;

    let space = SpinSpace::with_two_j(config.two_j);
    let base = scs(&CoherentParams::new(space, config.eta)?);
    let squeezer = Squeezer::new(space);
    let rows = config
        .times()
        .into_iter()
        .map(|t| {
            let psi = evolve(&base, &hamiltonian, t)?;
            let cells = config
                .axes
                .iter()
                .map(|axis| match squeezer.squeezing(&psi, axis.direction()) {
                    Ok(report) => Ok(Cell::Value(report.xi2)),
                    Err(Error::UndefinedDirection { .. }) => Ok(Cell::Undef),
                    Err(e) => Err(e),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepRow { t, cells })
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(rows.windows(2).all(|w| w[0].t < w[1].t));
    Ok(SweepTable { axes: config.axes.clone(), rows })
}
