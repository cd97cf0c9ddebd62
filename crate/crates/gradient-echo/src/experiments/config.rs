//! Plain-text scenario configuration.
//!
//! The format is flat `key = value` pairs under `[section]` headers, with `#`
//! comments. Unknown sections or keys are rejected, as are duplicate keys.
//! See `docs/config.md` at the repository root for the full schema and one
//! annotated example per scenario.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{FlipSchedule, Grid, PhysicalParams, Pulse};
use num_complex::Complex64;

#[derive(Debug, Clone)]
struct RawValue {
    line: usize,
    value: String,
    consumed: bool,
}

#[derive(Debug, Default)]
struct RawConfig {
    path: String,
    sections: BTreeMap<String, BTreeMap<String, RawValue>>,
}

impl RawConfig {
    fn parse(path: &str, text: &str) -> Result<Self> {
        let mut cfg = RawConfig { path: path.to_string(), ..Default::default() };
        let mut section = String::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with('[') {
                if !line.ends_with(']') {
                    return Err(cfg.err(line_no, "malformed section header"));
                }
                section = line[1..line.len() - 1].trim().to_string();
                if section.is_empty() {
                    return Err(cfg.err(line_no, "empty section name"));
                }
                cfg.sections.entry(section.clone()).or_default();
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(cfg.err(line_no, "expected `key = value`"));
            };
            if section.is_empty() {
                return Err(cfg.err(line_no, "key outside of any [section]"));
            }
            let key = line[..eq].trim().to_string();
            let value = line[eq + 1..].trim().to_string();
            if key.is_empty() {
                return Err(cfg.err(line_no, "empty key"));
            }
            let entry = cfg.sections.get_mut(&section).unwrap();
            if entry.contains_key(&key) {
                return Err(cfg.err(line_no, &format!("duplicate key `{key}`")));
            }
            entry.insert(key, RawValue { line: line_no, value, consumed: false });
        }
        Ok(cfg)
    }

    fn err(&self, line: usize, message: &str) -> Error {
        Error::Config { path: self.path.clone(), line, message: message.to_string() }
    }

    fn take(&mut self, section: &str, key: &str) -> Option<(usize, String)> {
        self.sections.get_mut(section).and_then(|s| {
            s.get_mut(key).map(|v| {
                v.consumed = true;
                (v.line, v.value.clone())
            })
        })
    }

    fn finish(&self, known_sections: &[&str]) -> Result<()> {
        for (name, keys) in &self.sections {
            if !known_sections.contains(&name.as_str()) {
                let line = keys.values().map(|v| v.line).min().unwrap_or(0);
                return Err(self.err(line, &format!("unknown section `[{name}]`")));
            }
            for (key, v) in keys {
                if !v.consumed {
                    return Err(self.err(v.line, &format!("unknown key `{key}` in [{name}]")));
                }
            }
        }
        Ok(())
    }
}

/// Input pulse description.
#[derive(Debug, Clone)]
pub enum PulseSpec {
    Gaussian { center: f64, sigma: f64, amplitude: f64 },
    RaisedCosine { center: f64, half_width: f64, amplitude: f64 },
}

impl PulseSpec {
    pub fn build(&self) -> Result<Pulse> {
        match *self {
            PulseSpec::Gaussian { center, sigma, amplitude } => {
                Pulse::gaussian(center, sigma, Complex64::new(amplitude, 0.0))
            }
            PulseSpec::RaisedCosine { center, half_width, amplitude } => {
                Pulse::raised_cosine(center, half_width, Complex64::new(amplitude, 0.0))
            }
        }
    }
}

/// Network description for the beamsplitter scenarios.
#[derive(Debug, Clone, Copy)]
pub struct NetworkConfig {
    pub cells: usize,
    pub num_flips: usize,
    pub beta: f64,
}

/// Sweep ranges for the figure and convergence runners.
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub beta_min: f64,
    pub beta_max: f64,
    pub beta_steps: usize,
    pub d_min: f64,
    pub d_max: f64,
    pub d_steps: usize,
    pub num_echoes: usize,
    pub levels: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            beta_min: 0.0,
            beta_max: 1.2,
            beta_steps: 61,
            d_min: 0.0,
            d_max: 12.0,
            d_steps: 121,
            num_echoes: 4,
            levels: 3,
        }
    }
}

/// Pass/fail thresholds for scenario summaries. Scenario logic never
/// hard-codes these; they always come from here (with the documented defaults
/// when a config omits them).
#[derive(Debug, Clone, Copy)]
pub struct Checks {
    pub transmission_tolerance: f64,
    pub efficiency_tolerance: f64,
    pub echo_tolerance: f64,
    pub defect_tolerance: f64,
    pub fidelity_min: f64,
    pub residual_max: f64,
    pub vacuum_tolerance: f64,
    pub order_min: f64,
    pub phase_tolerance: f64,
    pub kspace_tolerance: f64,
}

impl Default for Checks {
    fn default() -> Self {
        Self {
            transmission_tolerance: 0.02,
            efficiency_tolerance: 0.02,
            echo_tolerance: 0.03,
            defect_tolerance: 0.02,
            fidelity_min: 0.99,
            residual_max: 0.02,
            vacuum_tolerance: 1e-10,
            order_min: 1.7,
            phase_tolerance: 1e-6,
            kspace_tolerance: 0.05,
        }
    }
}

/// Fully parsed scenario configuration.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: String,
    pub params: PhysicalParams,
    pub grid: Grid,
    pub pulse: PulseSpec,
    pub flips: Vec<f64>,
    pub network: Option<NetworkConfig>,
    pub sweep: SweepConfig,
    pub checks: Checks,
    pub output_prefix: String,
}

impl ScenarioConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str_named(&path.display().to_string(), &text)
    }

    pub fn from_str_named(path: &str, text: &str) -> Result<Self> {
        let mut raw = RawConfig::parse(path, text)?;

        let scenario = match raw.take("scenario", "name") {
            Some((_, v)) => v,
            None => {
                return Err(Error::Config {
                    path: path.to_string(),
                    line: 0,
                    message: "missing [scenario] name".into(),
                })
            }
        };

        let f = |raw: &mut RawConfig, sec: &str, key: &str, default: f64| -> Result<f64> {
            match raw.take(sec, key) {
                None => Ok(default),
                Some((line, v)) => v.trim().parse::<f64>().map_err(|_| Error::Config {
                    path: path.to_string(),
                    line,
                    message: format!("`{key}` must be a number, got `{v}`"),
                }),
            }
        };
        let u = |raw: &mut RawConfig, sec: &str, key: &str, default: usize| -> Result<usize> {
            match raw.take(sec, key) {
                None => Ok(default),
                Some((line, v)) => v.trim().parse::<usize>().map_err(|_| Error::Config {
                    path: path.to_string(),
                    line,
                    message: format!("`{key}` must be a nonnegative integer, got `{v}`"),
                }),
            }
        };

        // [params]: either a dimensionless beta or explicit g/n
        let eta = f(&mut raw, "params", "eta", 60.0)?;
        let gamma = f(&mut raw, "params", "gamma", 0.0)?;
        let z0 = f(&mut raw, "params", "z0", 1.0)?;
        let params = match raw.take("params", "beta") {
            Some((line, v)) => {
                let beta: f64 = v.parse().map_err(|_| Error::Config {
                    path: path.to_string(),
                    line,
                    message: format!("`beta` must be a number, got `{v}`"),
                })?;
                let n = f(&mut raw, "params", "n", 1.0)?;
                let g = (beta * eta.abs() / n).sqrt();
                PhysicalParams::new(g, n, eta, gamma, z0)
            }
            None => {
                let g = f(&mut raw, "params", "g", 0.0)?;
                let n = f(&mut raw, "params", "n", 1.0)?;
                PhysicalParams::new(g, n, eta, gamma, z0)
            }
        }
        .map_err(|e| Error::Config {
            path: path.to_string(),
            line: 0,
            message: format!("invalid [params]: {e}"),
        })?;

        let nz = u(&mut raw, "grid", "nz", 1351)?;
        let nt = u(&mut raw, "grid", "nt", 14_401)?;
        let t_min = f(&mut raw, "grid", "t_min", -12.0)?;
        let t_max = f(&mut raw, "grid", "t_max", 12.0)?;
        let grid = Grid::new(nz, nt, -params.z0, params.z0, t_min, t_max).map_err(|e| {
            Error::Config {
                path: path.to_string(),
                line: 0,
                message: format!("invalid [grid]: {e}"),
            }
        })?;

        let shape = raw
            .take("pulse", "shape")
            .map(|(_, v)| v)
            .unwrap_or_else(|| "gaussian".to_string());
        let center = f(&mut raw, "pulse", "center", -6.0)?;
        let amplitude = f(&mut raw, "pulse", "amplitude", 1.0)?;
        let pulse = match shape.as_str() {
            "gaussian" => PulseSpec::Gaussian {
                center,
                sigma: f(&mut raw, "pulse", "sigma", 1.0)?,
                amplitude,
            },
            "raised_cosine" => PulseSpec::RaisedCosine {
                center,
                half_width: f(&mut raw, "pulse", "half_width", 3.0)?,
                amplitude,
            },
            other => {
                return Err(Error::Config {
                    path: path.to_string(),
                    line: 0,
                    message: format!(
                        "unknown pulse shape `{other}` (expected gaussian or raised_cosine)"
                    ),
                })
            }
        };

        let flips = match raw.take("flips", "times") {
            None => vec![0.0],
            Some((line, v)) => {
                let mut out = Vec::new();
                for part in v.split(',') {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    out.push(part.parse::<f64>().map_err(|_| Error::Config {
                        path: path.to_string(),
                        line,
                        message: format!("`times` must be comma-separated numbers, got `{part}`"),
                    })?);
                }
                out
            }
        };
        FlipSchedule::new(flips.clone()).map_err(|e| Error::Config {
            path: path.to_string(),
            line: 0,
            message: format!("invalid [flips]: {e}"),
        })?;

        let network = if raw.sections.contains_key("network") {
            Some(NetworkConfig {
                cells: u(&mut raw, "network", "cells", 1)?,
                num_flips: u(&mut raw, "network", "num_flips", 1)?,
                beta: f(&mut raw, "network", "beta", params.beta())?,
            })
        } else {
            None
        };

        let sweep_default = SweepConfig::default();
        let sweep = SweepConfig {
            beta_min: f(&mut raw, "sweep", "beta_min", sweep_default.beta_min)?,
            beta_max: f(&mut raw, "sweep", "beta_max", sweep_default.beta_max)?,
            beta_steps: u(&mut raw, "sweep", "beta_steps", sweep_default.beta_steps)?,
            d_min: f(&mut raw, "sweep", "d_min", sweep_default.d_min)?,
            d_max: f(&mut raw, "sweep", "d_max", sweep_default.d_max)?,
            d_steps: u(&mut raw, "sweep", "d_steps", sweep_default.d_steps)?,
            num_echoes: u(&mut raw, "sweep", "num_echoes", sweep_default.num_echoes)?,
            levels: u(&mut raw, "sweep", "levels", sweep_default.levels)?,
        };

        let cd = Checks::default();
        let checks = Checks {
            transmission_tolerance: f(&mut raw, "checks", "transmission_tolerance", cd.transmission_tolerance)?,
            efficiency_tolerance: f(&mut raw, "checks", "efficiency_tolerance", cd.efficiency_tolerance)?,
            echo_tolerance: f(&mut raw, "checks", "echo_tolerance", cd.echo_tolerance)?,
            defect_tolerance: f(&mut raw, "checks", "defect_tolerance", cd.defect_tolerance)?,
            fidelity_min: f(&mut raw, "checks", "fidelity_min", cd.fidelity_min)?,
            residual_max: f(&mut raw, "checks", "residual_max", cd.residual_max)?,
            vacuum_tolerance: f(&mut raw, "checks", "vacuum_tolerance", cd.vacuum_tolerance)?,
            order_min: f(&mut raw, "checks", "order_min", cd.order_min)?,
            phase_tolerance: f(&mut raw, "checks", "phase_tolerance", cd.phase_tolerance)?,
            kspace_tolerance: f(&mut raw, "checks", "kspace_tolerance", cd.kspace_tolerance)?,
        };

        let output_prefix = raw
            .take("output", "prefix")
            .map(|(_, v)| v)
            .unwrap_or_else(|| scenario.clone());

        raw.finish(&[
            "scenario", "params", "grid", "pulse", "flips", "network", "sweep", "checks", "output",
        ])?;

        Ok(Self {
            scenario,
            params,
            grid,
            pulse,
            flips,
            network,
            sweep,
            checks,
            output_prefix,
        })
    }

    pub fn flip_schedule(&self) -> FlipSchedule {
        FlipSchedule::new(self.flips.clone()).expect("validated at parse time")
    }
}
