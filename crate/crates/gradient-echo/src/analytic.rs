//! Closed-form solutions for the two evolution regions of the memory cycle:
//! spectral transfer factors before and after the flip, the stored state in
//! spatial-frequency space at the flip instant, the ideal retrieved pulse, the
//! auxiliary input that makes retrieval complete at finite optical depth, and
//! the logarithmic phase excursion across the retrieved pulse.
//!
//! # Transform conventions
//!
//! Used once, everywhere:
//!
//! * time:  `F(omega) = int f(t) exp(-i omega t) dt`, inverse
//!   `f(t) = (1/2pi) int F(omega) exp(+i omega t) domega`. A component
//!   labelled `omega` oscillates as `exp(+i omega t)` and is resonant with
//!   the atom at `z = -omega/eta`.
//! * space: `F(k) = int E(z) exp(+i k z) dz`. Light absorbed at time `t_in`
//!   before a flip at `T` is stored at spatial frequency `k = eta (T - t_in) > 0`.
//!
//! Under these conventions the pre-flip transfer factor is
//! `exp(-beta pi H(omega + eta z)) |(omega + eta z)/(eta z0)|^{i beta}` with
//! `H(0) = 1/2`, and the post-flip factor is its mirror image in `z` with the
//! phase conjugated (the post-flip region is the time reverse of the pre-flip
//! one). The retrieved pulse for a flip at `T` is
//!
//! ```text
//! out(T + tau) = f_in(T - tau) * exp(-2 i beta ln(eta z0 tau)) * Gamma(i beta)/Gamma(-i beta)
//! ```
//!
//! for `tau > 0`: a time-reversed copy of the input under a unit-modulus
//! logarithmic chirp. All of these are validated against the time-domain
//! solver in the test suites.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::{complex_gamma_imag, gamma_ratio_phase};
use crate::model::{PhysicalParams, Pulse};

/// A complex amplitude sampled on a uniform angular-frequency grid.
#[derive(Debug, Clone)]
pub struct SpectralField {
    pub omega: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl SpectralField {
    /// Parseval energy `(1/2pi) int |F|^2 domega` by trapezoid.
    pub fn energy(&self) -> f64 {
        trapezoid_norm_sqr(&self.omega, &self.values) / (2.0 * std::f64::consts::PI)
    }
}

fn trapezoid_norm_sqr(x: &[f64], v: &[Complex64]) -> f64 {
    let mut sum = 0.0;
    for i in 1..x.len() {
        sum += 0.5 * (v[i].norm_sqr() + v[i - 1].norm_sqr()) * (x[i] - x[i - 1]);
    }
    sum
}

/// Forward transform of a pulse onto `n` uniform samples of
/// `[-omega_max, omega_max]`.
pub fn forward_spectrum(pulse: &Pulse, omega_max: f64, n: usize) -> SpectralField {
    let n = n.max(2);
    let omega: Vec<f64> = (0..n)
        .map(|i| -omega_max + 2.0 * omega_max * i as f64 / (n - 1) as f64)
        .collect();
    // trapezoid over the support window
    let (a, b) = pulse.support();
    let m = 4096;
    let dt = (b - a) / m as f64;
    let samples: Vec<(f64, Complex64)> = (0..=m)
        .map(|j| {
            let t = a + j as f64 * dt;
            (t, pulse.eval(t))
        })
        .collect();
    let values = omega
        .iter()
        .map(|&w| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &(t, f)) in samples.iter().enumerate() {
                let weight = if j == 0 || j == m { 0.5 } else { 1.0 };
                acc += weight * f * Complex64::from_polar(1.0, -w * t);
            }
            acc * dt
        })
        .collect();
    SpectralField { omega, values }
}

/// Inverse transform evaluated at the given times.
pub fn inverse_transform(field: &SpectralField, times: &[f64]) -> Vec<Complex64> {
    let n = field.omega.len();
    times
        .iter()
        .map(|&t| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, (&w, &v)) in field.omega.iter().zip(&field.values).enumerate() {
                let weight = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
                acc += weight * v * Complex64::from_polar(1.0, w * t);
            }
            acc * (field.omega[1] - field.omega[0]) / (2.0 * std::f64::consts::PI)
        })
        .collect()
}

fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Pre-flip transfer factor at position `z` for spectral component `omega`.
pub fn region_a_factor(params: &PhysicalParams, omega: f64, z: f64) -> Complex64 {
    let beta = params.beta();
    if beta == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let eta = params.eta.abs();
    let u = omega + eta * z;
    let mag = (-beta * std::f64::consts::PI * heaviside(u)).exp();
    if u == 0.0 {
        return Complex64::new(mag, 0.0);
    }
    let phase = beta * (u.abs() / (eta * params.z0)).ln();
    Complex64::from_polar(mag, phase)
}

/// Post-flip transfer factor: the pre-flip factor mirrored in `z` with the
/// phase conjugated.
pub fn region_b_factor(params: &PhysicalParams, omega: f64, z: f64) -> Complex64 {
    region_a_factor(params, omega, -z).conj()
}

/// Applies the pre-flip transfer factor to every spectral component.
pub fn region_a_spectrum(field: &SpectralField, z: f64, params: &PhysicalParams) -> SpectralField {
    SpectralField {
        omega: field.omega.clone(),
        values: field
            .omega
            .iter()
            .zip(&field.values)
            .map(|(&w, &v)| v * region_a_factor(params, w, z))
            .collect(),
    }
}

/// Applies the post-flip transfer factor to every spectral component.
pub fn region_b_spectrum(field: &SpectralField, z: f64, params: &PhysicalParams) -> SpectralField {
    SpectralField {
        omega: field.omega.clone(),
        values: field
            .omega
            .iter()
            .zip(&field.values)
            .map(|(&w, &v)| v * region_b_factor(params, w, z))
            .collect(),
    }
}

/// The pulse transmitted straight through the sample before any flip: the
/// input envelope attenuated by `exp(-beta pi)`.
pub fn transmitted_pulse(input: &Pulse, params: &PhysicalParams) -> Pulse {
    input.scaled(Complex64::new((-params.beta() * std::f64::consts::PI).exp(), 0.0))
}

/// Stored state at the flip instant, sampled on a spatial-frequency grid.
#[derive(Debug, Clone)]
pub struct KSpaceState {
    pub k: Vec<f64>,
    /// Field amplitude `E(k)` at the flip.
    pub field: Vec<Complex64>,
    /// Companion polarization amplitude, `alpha(k) = -k E(k) / (g N)`.
    pub polarization: Vec<Complex64>,
}

impl KSpaceState {
    /// Stored excitation in field-energy units,
    /// `N/(2pi) int |alpha(k)|^2 dk`. For a completed input this equals
    /// input energy minus transmitted energy.
    pub fn stored_excitation(&self, params: &PhysicalParams) -> f64 {
        params.n * trapezoid_norm_sqr(&self.k, &self.polarization) / (2.0 * std::f64::consts::PI)
    }
}

/// Common radial/phase profile of the stored state. `exponent_sign` is +1 for
/// the pre-flip (storage) side and -1 for the post-flip (retrieval) side;
/// the two sides carry conjugate phases.
fn kspace_profile(
    params: &PhysicalParams,
    beta: f64,
    k: f64,
    exponent_sign: f64,
) -> Result<Complex64> {
    let eta = params.eta.abs();
    if k <= 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let a = k / eta;
    let gamma_i = complex_gamma_imag(exponent_sign * beta)?;
    let pib = std::f64::consts::PI * beta;
    // beta/eta * Gamma(+-i beta) * (eta z0)^{-+i beta} * a^{-1 -+ i beta}
    //          * 2 sinh(pi beta) exp(-pi beta / 2)
    let radial = Complex64::from_polar(
        1.0 / a,
        -exponent_sign * beta * (a.ln() + (eta * params.z0).ln()),
    );
    let scale = (beta / eta) * 2.0 * pib.sinh() * (-pib / 2.0).exp();
    Ok(gamma_i * radial * scale)
}

/// Stored state at a flip at `flip_time`, computed from the input pulse
/// (storage side). `E(k)` is supported on `k > 0`; the component at `k` is the
/// input amplitude at time `flip_time - k/eta` under a unit-modulus
/// logarithmic phase and an overall `Gamma(i beta)`-weighted scale.
pub fn kspace_at_flip(
    input: &Pulse,
    params: &PhysicalParams,
    flip_time: f64,
    k: &[f64],
) -> Result<KSpaceState> {
    let beta = params.beta();
    if beta <= 0.0 {
        return Err(Error::BetaNotPositive);
    }
    let eta = params.eta.abs();
    let gn = params.g * params.n;
    let mut field = Vec::with_capacity(k.len());
    let mut pol = Vec::with_capacity(k.len());
    for &kk in k {
        let e = if kk <= 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            input.eval(flip_time - kk / eta) * kspace_profile(params, beta, kk, 1.0)?
        };
        field.push(e);
        pol.push(if gn > 0.0 { -kk * e / gn } else { Complex64::new(0.0, 0.0) });
    }
    Ok(KSpaceState { k: k.to_vec(), field, polarization: pol })
}

/// Stored state at the flip computed from the retrieval side: the state that
/// evolves into the output pulse `output` (and leaves every atom in the
/// ground state afterwards). Matching this against [`kspace_at_flip`] is what
/// singles out the ideal echo.
pub fn kspace_at_flip_from_output(
    output: &Pulse,
    params: &PhysicalParams,
    flip_time: f64,
    k: &[f64],
) -> Result<KSpaceState> {
    let beta = params.beta();
    if beta <= 0.0 {
        return Err(Error::BetaNotPositive);
    }
    let eta = params.eta.abs();
    let gn = params.g * params.n;
    let mut field = Vec::with_capacity(k.len());
    let mut pol = Vec::with_capacity(k.len());
    for &kk in k {
        let e = if kk <= 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            output.eval(flip_time + kk / eta) * kspace_profile(params, beta, kk, -1.0)?
        };
        field.push(e);
        pol.push(if gn > 0.0 { -kk * e / gn } else { Complex64::new(0.0, 0.0) });
    }
    Ok(KSpaceState { k: k.to_vec(), field, polarization: pol })
}

/// Asymmetry of the stored state between positive and negative spatial
/// frequencies: `cosh(pi beta/2) + sign(k) sinh(pi beta/2)`, i.e.
/// `exp(+pi beta/2)` on the stored side and `exp(-pi beta/2)` on the other.
pub fn winding_asymmetry(beta: f64, k: f64) -> f64 {
    let x = std::f64::consts::FRAC_PI_2 * beta;
    x.cosh() + k.signum() * x.sinh()
}

/// The ideal retrieved pulse for a flip at `flip_time`: the time-reversed
/// input under the unit-modulus factor
/// `exp(-s 2 i beta ln(eta z0 tau)) Gamma(s i beta)/Gamma(-s i beta)` with
/// `tau` the time since the flip and `s` the gradient orientation. Output
/// energy equals input energy exactly.
pub fn ideal_echo(input: &Pulse, params: &PhysicalParams, flip_time: f64) -> Result<Pulse> {
    let beta = params.beta();
    if beta <= 0.0 {
        return Err(Error::BetaNotPositive);
    }
    let s = params.gradient_sign();
    let chirp = -2.0 * beta * s;
    let const_phase = s * gamma_ratio_phase(beta)?;
    let log_offset = (params.eta.abs() * params.z0).ln();
    let inner = input.clone();
    let (a, b) = input.support();
    let echo_support = (2.0 * flip_time - b, 2.0 * flip_time - a);
    Pulse::new(
        move |t| {
            let tau = t - flip_time;
            if tau == 0.0 {
                // the chirp is singular at the flip instant; the envelope is
                // forced to zero there (retrieval supports never touch it)
                return Complex64::new(0.0, 0.0);
            }
            inner.eval(2.0 * flip_time - t)
                * Complex64::from_polar(1.0, chirp * (tau.abs().ln() + log_offset) + const_phase)
        },
        echo_support,
        input.bandwidth(),
    )
}

/// The auxiliary input that must accompany retrieval for the recall to be
/// complete at finite optical depth: the ideal echo attenuated by
/// `exp(-beta pi)`, injected at the input face while the echo leaves.
pub fn required_auxiliary(input: &Pulse, params: &PhysicalParams, flip_time: f64) -> Result<Pulse> {
    let echo = ideal_echo(input, params, flip_time)?;
    Ok(echo.scaled(Complex64::new((-params.beta() * std::f64::consts::PI).exp(), 0.0)))
}

/// Magnitude of the phase excursion `2 beta ln(t_end/t_start)` accumulated by
/// the retrieval chirp between two times after the flip.
pub fn phase_excursion(beta: f64, t_start: f64, t_end: f64) -> Result<f64> {
    if !t_start.is_finite() || !t_end.is_finite() || t_start <= 0.0 || t_end <= t_start {
        return Err(Error::InvalidParameter(format!(
            "need 0 < t_start < t_end, got t_start={t_start}, t_end={t_end}"
        )));
    }
    Ok(2.0 * beta * (t_end / t_start).ln())
}
