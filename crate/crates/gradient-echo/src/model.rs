//! Domain types shared by the solver, the closed-form solutions and the
//! network calculator: physical parameters, pulses, grids and flip schedules.
//!
//! Units are documentation-level only. The canonical dimensionless setup puts
//! the sample on `z in [-z0, z0]` with `z0 = 1` and controls the absorption
//! parameter `beta = g^2 N / |eta|` through the coupling alone.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Envelope values below this floor are treated as zero outside a pulse's
/// support window.
pub const SUPPORT_FLOOR: f64 = 1e-12;

/// Number of sample points used by the default pulse-energy quadrature.
pub const ENERGY_QUADRATURE_POINTS: usize = 4001;

/// Gaussian support is truncated at this many standard deviations.
pub const GAUSSIAN_SUPPORT_SIGMAS: f64 = 5.0;

/// Hard bound on `|eta| * z0 * dt`; beyond it the detuning phase per step is
/// too coarse for the output tolerances this crate promises.
pub const STABILITY_LIMIT: f64 = 0.1;

/// Residual excitation below this fraction of the input energy counts as
/// "all atoms back in the ground state".
pub const GROUND_STATE_FLOOR: f64 = 1e-4;

/// Atomic and sample parameters of the memory.
///
/// `eta` is the detuning gradient; its sign selects the gradient orientation
/// (a negative value describes a mirrored memory, used when chaining two
/// memories with opposite gradients). The absorption parameter
/// `beta = g^2 N / |eta|` is always nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Atomic transition coupling strength.
    pub g: f64,
    /// Atomic density.
    pub n: f64,
    /// Detuning gradient; detuning of the atom at position z is `eta * z`.
    pub eta: f64,
    /// Decay rate from the excited state.
    pub gamma: f64,
    /// Sample half-length; the sample spans `[-z0, +z0]`.
    pub z0: f64,
}

impl PhysicalParams {
    pub fn new(g: f64, n: f64, eta: f64, gamma: f64, z0: f64) -> Result<Self> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidParameter(format!("g must be >= 0, got {g}")));
        }
        if !n.is_finite() || n < 0.0 {
            return Err(Error::InvalidParameter(format!("N must be >= 0, got {n}")));
        }
        if !eta.is_finite() || eta == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eta must be nonzero and finite, got {eta}"
            )));
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gamma must be >= 0, got {gamma}"
            )));
        }
        if !z0.is_finite() || z0 <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "z0 must be > 0, got {z0}"
            )));
        }
        let p = Self { g, n, eta, gamma, z0 };
        if !p.beta().is_finite() {
            return Err(Error::InvalidParameter("beta = g^2 N / eta overflows".into()));
        }
        Ok(p)
    }

    /// Dimensionless setup: `z0 = 1`, `N = 1`, `gamma = 0`, coupling chosen so
    /// that `g^2 N / |eta|` equals the requested `beta`.
    pub fn dimensionless(beta: f64, eta: f64) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta must be >= 0, got {beta}"
            )));
        }
        Self::new((beta * eta.abs()).sqrt(), 1.0, eta, 0.0, 1.0)
    }

    /// The absorption parameter `g^2 N / |eta|`. Amplitude transmission
    /// through the full sample is `exp(-beta * pi)`.
    pub fn beta(&self) -> f64 {
        self.g * self.g * self.n / self.eta.abs()
    }

    /// +1 for the standard gradient orientation, -1 for the mirrored one.
    pub fn gradient_sign(&self) -> f64 {
        self.eta.signum()
    }

    /// Half-width `|eta| * z0` of the detuning window covered by the sample.
    pub fn detuning_window(&self) -> f64 {
        self.eta.abs() * self.z0
    }

    /// Copy of these parameters with the gradient orientation reversed.
    pub fn reversed_gradient(&self) -> Self {
        Self { eta: -self.eta, ..*self }
    }
}

/// Returns `g^2 N / |eta|` for the given parameters.
pub fn beta(params: &PhysicalParams) -> f64 {
    params.beta()
}

type Envelope = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A complex field envelope with a finite support window in time.
#[derive(Clone)]
pub struct Pulse {
    envelope: Envelope,
    support: (f64, f64),
    bandwidth: f64,
}

impl fmt::Debug for Pulse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Pulse")
            .field("support", &self.support)
            .field("bandwidth", &self.bandwidth)
            .finish_non_exhaustive()
    }
}

impl Pulse {
    /// Wraps an arbitrary envelope. The envelope is treated as zero outside
    /// `support`; `bandwidth` is the estimated spectral half-width used by the
    /// coverage check.
    pub fn new(
        envelope: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        support: (f64, f64),
        bandwidth: f64,
    ) -> Result<Self> {
        if support.0.is_nan() || support.1.is_nan() || support.0 >= support.1 {
            return Err(Error::InvalidParameter(format!(
                "pulse support must be a nonempty interval, got [{}, {}]",
                support.0, support.1
            )));
        }
        if !bandwidth.is_finite() || bandwidth < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "pulse bandwidth must be >= 0, got {bandwidth}"
            )));
        }
        Ok(Self { envelope: Arc::new(envelope), support, bandwidth })
    }

    /// `amplitude * exp(-(t - center)^2 / (2 sigma^2))`, support window
    /// `center +- 5 sigma`, bandwidth `1/sigma`.
    pub fn gaussian(center: f64, sigma: f64, amplitude: Complex64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "sigma must be > 0, got {sigma}"
            )));
        }
        let half = GAUSSIAN_SUPPORT_SIGMAS * sigma;
        Self::new(
            move |t| amplitude * (-(t - center) * (t - center) / (2.0 * sigma * sigma)).exp(),
            (center - half, center + half),
            1.0 / sigma,
        )
    }

    /// `amplitude * cos^2(pi (t - center) / (2 half_width))` on
    /// `|t - center| <= half_width`. A compactly supported, smooth alternative
    /// for shape-robustness checks.
    pub fn raised_cosine(center: f64, half_width: f64, amplitude: Complex64) -> Result<Self> {
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "half_width must be > 0, got {half_width}"
            )));
        }
        Self::new(
            move |t| {
                let x = (t - center) / half_width;
                if x.abs() >= 1.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    let c = (std::f64::consts::FRAC_PI_2 * x).cos();
                    amplitude * (c * c)
                }
            },
            (center - half_width, center + half_width),
            std::f64::consts::PI / half_width,
        )
    }

    /// The identically-zero pulse.
    pub fn null() -> Self {
        Self {
            envelope: Arc::new(|_| Complex64::new(0.0, 0.0)),
            support: (0.0, 1.0),
            bandwidth: 0.0,
        }
    }

    /// Envelope value at `t`; exactly zero outside the support window.
    pub fn eval(&self, t: f64) -> Complex64 {
        if t < self.support.0 || t > self.support.1 {
            Complex64::new(0.0, 0.0)
        } else {
            (self.envelope)(t)
        }
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// `int |envelope|^2 dt` by composite trapezoid over the support window.
    pub fn energy(&self) -> f64 {
        self.energy_with_resolution(ENERGY_QUADRATURE_POINTS)
    }

    pub fn energy_with_resolution(&self, points: usize) -> f64 {
        let n = points.max(2);
        let (a, b) = self.support;
        let dt = (b - a) / (n - 1) as f64;
        let mut sum = 0.0;
        for i in 0..n {
            let v = self.eval(a + i as f64 * dt).norm_sqr();
            let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            sum += w * v;
        }
        sum * dt
    }

    /// Same envelope scaled by a complex constant.
    pub fn scaled(&self, c: Complex64) -> Self {
        let inner = self.envelope.clone();
        Self {
            envelope: Arc::new(move |t| c * inner(t)),
            support: self.support,
            bandwidth: self.bandwidth,
        }
    }

    /// Same envelope translated by `shift` in time.
    pub fn shifted(&self, shift: f64) -> Self {
        let inner = self.envelope.clone();
        Self {
            envelope: Arc::new(move |t| inner(t - shift)),
            support: (self.support.0 + shift, self.support.1 + shift),
            bandwidth: self.bandwidth,
        }
    }

    /// Pointwise sum of two pulses.
    pub fn superpose(&self, other: &Pulse) -> Self {
        let a = self.envelope.clone();
        let (a0, a1) = self.support;
        let b = other.envelope.clone();
        let (b0, b1) = other.support;
        Self {
            envelope: Arc::new(move |t| {
                let mut v = Complex64::new(0.0, 0.0);
                if t >= a0 && t <= a1 {
                    v += a(t);
                }
                if t >= b0 && t <= b1 {
                    v += b(t);
                }
                v
            }),
            support: (a0.min(b0), a1.max(b1)),
            bandwidth: self.bandwidth.max(other.bandwidth),
        }
    }
}

/// Convenience free function mirroring [`Pulse::energy`].
pub fn pulse_energy(p: &Pulse) -> f64 {
    p.energy()
}

/// Outcome of the spectral-coverage validity check.
///
/// The closed-form solutions assume `beta * omega << eta * z0` over the whole
/// signal band and that the band sits inside the detuning window of the
/// sample. "Much less" is pinned at a factor of ten; "significant spectral
/// content" extends five bandwidths from the carrier.
#[derive(Debug, Clone, Copy)]
pub struct CoverageReport {
    /// `bandwidth * max(beta, 1) / (|eta| z0)`; must be <= 0.1.
    pub bandwidth_ratio: f64,
    /// `5 * bandwidth / (|eta| z0)`; must be <= 1.
    pub window_ratio: f64,
    pub passed: bool,
}

pub fn validate_spectral_coverage(params: &PhysicalParams, pulse: &Pulse) -> CoverageReport {
    let window = params.detuning_window();
    let bandwidth_ratio = pulse.bandwidth() * params.beta().max(1.0) / window;
    let window_ratio = 5.0 * pulse.bandwidth() / window;
    CoverageReport {
        bandwidth_ratio,
        window_ratio,
        passed: bandwidth_ratio <= 0.1 && window_ratio <= 1.0,
    }
}

/// Uniform space-time grid over the sample and the simulated interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    nz: usize,
    nt: usize,
    z_min: f64,
    z_max: f64,
    t_min: f64,
    t_max: f64,
}

impl Grid {
    pub fn new(nz: usize, nt: usize, z_min: f64, z_max: f64, t_min: f64, t_max: f64) -> Result<Self> {
        if nz < 2 || nt < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs nz >= 2 and nt >= 2, got nz={nz}, nt={nt}"
            )));
        }
        if [z_min, z_max, t_min, t_max].iter().any(|v| v.is_nan())
            || z_min >= z_max
            || t_min >= t_max
        {
            return Err(Error::InvalidParameter(
                "grid extents must satisfy z_min < z_max and t_min < t_max".into(),
            ));
        }
        Ok(Self { nz, nt, z_min, z_max, t_min, t_max })
    }

    /// Grid spanning `[-z0, z0] x [t_min, t_max]`.
    pub fn symmetric(params: &PhysicalParams, nz: usize, nt: usize, t_min: f64, t_max: f64) -> Result<Self> {
        Self::new(nz, nt, -params.z0, params.z0, t_min, t_max)
    }

    pub fn nz(&self) -> usize {
        self.nz
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn dz(&self) -> f64 {
        (self.z_max - self.z_min) / (self.nz - 1) as f64
    }

    pub fn dt(&self) -> f64 {
        (self.t_max - self.t_min) / (self.nt - 1) as f64
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn z_points(&self) -> Vec<f64> {
        (0..self.nz).map(|i| self.z_min + i as f64 * self.dz()).collect()
    }

    pub fn t_points(&self) -> Vec<f64> {
        (0..self.nt).map(|i| self.t_min + i as f64 * self.dt()).collect()
    }

    /// `|eta| * z0 * dt`, the detuning phase advanced per step at the sample
    /// edge.
    pub fn stability_product(&self, params: &PhysicalParams) -> f64 {
        params.eta.abs() * self.z_max.abs().max(self.z_min.abs()) * self.dt()
    }

    /// Enforces the stability invariant (with a hair of slack for rounding in
    /// `dt`).
    pub fn check_stability(&self, params: &PhysicalParams) -> Result<()> {
        let product = self.stability_product(params);
        if product > STABILITY_LIMIT * (1.0 + 1e-9) {
            return Err(Error::GridStability { product, limit: STABILITY_LIMIT });
        }
        Ok(())
    }
}

/// Ordered times at which the detuning sign flips. The sign starts at +1 and
/// negates at each entry.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlipSchedule {
    times: Vec<f64>,
}

impl FlipSchedule {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        for w in times.windows(2) {
            if w[0].is_nan() || w[1].is_nan() || w[0] >= w[1] {
                return Err(Error::InvalidParameter(format!(
                    "flip times must be strictly increasing, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { times })
    }

    /// No flips at all (pure absorption run).
    pub fn none() -> Self {
        Self { times: Vec::new() }
    }

    pub fn single(t: f64) -> Self {
        Self { times: vec![t] }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}
