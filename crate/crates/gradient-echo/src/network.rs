//! Beamsplitter-network model of the memory.
//!
//! One storage-or-retrieval stage of a memory with absorption parameter
//! `beta` acts on (light, stored excitation) like a two-port splitter with
//! amplitude transmission `t = exp(-beta pi)` and reflection
//! `r = sqrt(1 - t^2)` (unitarity forces `r^2 + t^2 = 1`; the two-reflection
//! echo energy `(1 - exp(-2 beta pi))^2` then comes out of `r^4`).
//!
//! Three network families are covered:
//!
//! * a single memory with repeated polarity switching (a chain of splitters:
//!   the k-th echo carries `r^4 t^{2(k-1)}`),
//! * `M` thin memories in series, modelling transverse broadening (the `M`
//!   constructive single-echo paths give `M^2 r^4 t^{2(M-1)}`, which tends to
//!   `d^2 e^{-d}` with `d = 2 beta pi M`),
//! * the combination of both: a 2-D array in (cell, switching period). Summing
//!   all paths with `k` storage episodes gives
//!
//!   ```text
//!   e_p = t^{2(M+p)} | sum_k C(M,k) C(p-1,k-1) (-r^2/t^2)^k |^2
//!   ```
//!
//!   whose thin limit is `e_p = exp(-d) | sum_k C(p-1,k-1) (-d)^k / k! |^2`.
//!
//! A brute-force path enumerator over the explicit network serves as the
//! independent oracle for every closed form here.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Amplitude coefficients of one analogue beamsplitter.
#[derive(Debug, Clone, Copy)]
pub struct SplitterParams {
    beta: f64,
    t_amp: f64,
    r_amp: f64,
}

impl SplitterParams {
    pub fn from_beta(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta must be >= 0, got {beta}"
            )));
        }
        let t_amp = (-beta * std::f64::consts::PI).exp();
        let r_amp = (1.0 - t_amp * t_amp).max(0.0).sqrt();
        Ok(Self { beta, t_amp, r_amp })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Amplitude transmission `exp(-beta pi)`.
    pub fn t_amp(&self) -> f64 {
        self.t_amp
    }

    /// Amplitude reflection `sqrt(1 - exp(-2 beta pi))`.
    pub fn r_amp(&self) -> f64 {
        self.r_amp
    }
}

/// Phase convention placed on the reflected port. Energy fractions are
/// identical for any fixed unitary choice; the oracle is run under both to
/// prove it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReflectionConvention {
    /// `i r` on both store and emit.
    ImaginaryReflection,
    /// `+r` on store, `-r` on emit (real orthogonal splitter).
    RealOrthogonal,
}

/// A stack of `cells` sub-memories switched `num_flips` times.
#[derive(Debug, Clone, Copy)]
pub struct NetworkSpec {
    pub cells: usize,
    pub num_flips: usize,
    pub cell: SplitterParams,
}

impl NetworkSpec {
    pub fn new(cells: usize, num_flips: usize, cell: SplitterParams) -> Result<Self> {
        if cells == 0 || num_flips == 0 {
            return Err(Error::InvalidParameter(
                "network needs at least one cell and one flip".into(),
            ));
        }
        Ok(Self { cells, num_flips, cell })
    }

    /// Optical depth `2 beta pi M` of the full stack.
    pub fn optical_depth(&self) -> f64 {
        2.0 * self.cell.beta * std::f64::consts::PI * self.cells as f64
    }
}

/// `(1 - exp(-2 beta pi))^2`: energy fraction of the first echo of a single
/// gradient memory.
pub fn single_memory_efficiency(beta: f64) -> f64 {
    let x = (-2.0 * std::f64::consts::PI * beta).exp();
    (1.0 - x) * (1.0 - x)
}

/// Where the energy goes for a single memory with one flip:
/// `(transmitted, echo, residual) = (x, (1-x)^2, x(1-x))` with
/// `x = exp(-2 beta pi)`. The triple sums to one.
pub fn single_memory_ledger(beta: f64) -> (f64, f64, f64) {
    let x = (-2.0 * std::f64::consts::PI * beta).exp();
    (x, (1.0 - x) * (1.0 - x), x * (1.0 - x))
}

/// Finite-stack single-echo efficiency `M^2 (1-exp(-2 beta pi))^2
/// exp(-2 beta pi (M-1))` for `M` thin memories in series.
pub fn transverse_efficiency(beta: f64, cells: usize) -> f64 {
    let m = cells as f64;
    let x = (-2.0 * std::f64::consts::PI * beta).exp();
    m * m * (1.0 - x) * (1.0 - x) * x.powf(m - 1.0)
}

/// Thin-stack limit `d^2 exp(-d)` of [`transverse_efficiency`] at fixed
/// optical depth `d = 2 beta pi M`.
pub fn thin_limit_efficiency(d: f64) -> f64 {
    d * d * (-d).exp()
}

pub fn optical_depth(beta: f64, cells: usize) -> f64 {
    2.0 * std::f64::consts::PI * beta * cells as f64
}

/// Energy fraction of the `k`-th echo (1-based) of a single gradient memory
/// under repeated switching: `(1 - x)^2 x^{k-1}` with `x = exp(-2 beta pi)`.
pub fn multiswitch_echo_energy(beta: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::EchoIndexOutOfRange { index: 0, flips: 0 });
    }
    let x = (-2.0 * std::f64::consts::PI * beta).exp();
    Ok((1.0 - x) * (1.0 - x) * x.powi(k as i32 - 1))
}

/// `p`-th echo energy fraction of a finite stack of `M` memories under
/// repeated switching (the 2-D splitter array summed in closed form).
pub fn finite_multiswitch_echo(beta: f64, cells: usize, p: usize) -> Result<f64> {
    if p == 0 {
        return Err(Error::EchoIndexOutOfRange { index: 0, flips: 0 });
    }
    let sp = SplitterParams::from_beta(beta)?;
    let (t2, r2) = (sp.t_amp * sp.t_amp, sp.r_amp * sp.r_amp);
    let mut sum = 0.0f64;
    let mut term_scale = 1.0f64; // (r^2/t^2)^k accumulated
    for k in 1..=p.min(cells) {
        term_scale *= r2 / t2;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binomial(cells, k) * binomial(p - 1, k - 1) * term_scale;
    }
    Ok(t2.powi((cells + p) as i32) * sum * sum)
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// `p`-th echo energy fraction of a transversely broadened memory at optical
/// depth `d`, in the thin-cell limit:
/// `e_p = exp(-d) |sum_{k=1}^{p} C(p-1,k-1) (-d)^k / k!|^2`.
///
/// The alternating sum is the degree-(p-1) generalized Laguerre polynomial,
/// `sum = -(d/p) L_{p-1}^{(1)}(d)`, and is evaluated through the stable
/// three-term recurrence; the raw sum cancels catastrophically for large `p`.
pub fn transverse_multiswitch_echo(d: f64, p: usize) -> Result<f64> {
    if p == 0 {
        return Err(Error::EchoIndexOutOfRange { index: 0, flips: 0 });
    }
    if !d.is_finite() || d < 0.0 {
        return Err(Error::InvalidParameter(format!("d must be >= 0, got {d}")));
    }
    let lag = laguerre_alpha1(p - 1, d);
    let amp = d / p as f64 * lag;
    Ok((-d).exp() * amp * amp)
}

/// Generalized Laguerre polynomial `L_n^{(1)}(x)` by forward recurrence.
fn laguerre_alpha1(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 - x;
    for m in 1..n {
        let mf = m as f64;
        let next = ((2.0 * mf + 2.0 - x) * cur - (mf + 1.0) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

const PATH_BUDGET: u64 = 10_000_000;

/// Total amplitude reaching the `p`-th echo output port, by explicit
/// enumeration of every path through the splitter network. Each path is a
/// product of `t` factors (passing a cell as light, or staying stored through
/// a flip) and reflection factors (absorption and emission events) under the
/// chosen phase convention; equivalent paths combine in phase.
pub fn path_sum_oracle(
    spec: &NetworkSpec,
    p: usize,
    convention: ReflectionConvention,
) -> Result<Complex64> {
    if p == 0 || p > spec.num_flips {
        return Err(Error::EchoIndexOutOfRange { index: p, flips: spec.num_flips });
    }
    let (store, emit) = match convention {
        ReflectionConvention::ImaginaryReflection => {
            (Complex64::new(0.0, spec.cell.r_amp), Complex64::new(0.0, spec.cell.r_amp))
        }
        ReflectionConvention::RealOrthogonal => {
            (Complex64::new(spec.cell.r_amp, 0.0), Complex64::new(-spec.cell.r_amp, 0.0))
        }
    };

    struct Walker {
        cells: usize,
        target_period: usize,
        t: f64,
        store: Complex64,
        emit: Complex64,
        total: Complex64,
        paths: u64,
    }

    impl Walker {
        /// Light entering the stack in `period` at cell index `cell` (1-based;
        /// everything before `cell` already traversed). It either leaves the
        /// stack in this period, or is absorbed at some downstream cell and
        /// re-emitted at a later flip.
        fn light(&mut self, cell: usize, period: usize, amp: Complex64) -> Result<()> {
            if period == self.target_period {
                self.paths += 1;
                if self.paths > PATH_BUDGET {
                    return Err(Error::EnumerationBudget(self.paths));
                }
                self.total += amp * self.t.powi((self.cells + 1 - cell) as i32);
            }
            for site in cell..=self.cells {
                let stored = amp * self.t.powi((site - cell) as i32) * self.store;
                // stay stored through later flips, emit at the start of a
                // later period
                for next in (period + 1)..=self.target_period {
                    let released = stored * self.t.powi((next - period - 1) as i32) * self.emit;
                    self.light(site + 1, next, released)?;
                }
            }
            Ok(())
        }
    }

    let mut walker = Walker {
        cells: spec.cells,
        target_period: p,
        t: spec.cell.t_amp,
        store,
        emit,
        total: Complex64::new(0.0, 0.0),
        paths: 0,
    };
    walker.light(1, 0, Complex64::new(1.0, 0.0))?;
    Ok(walker.total)
}

/// Per-echo energy fractions, the straight-through transmission and the
/// leftover excitation of a network, assembled from the closed forms.
#[derive(Debug, Clone)]
pub struct EchoReport {
    pub echo_fractions: Vec<f64>,
    pub transmitted: f64,
    /// `1 - transmitted - sum(echoes)` by definition.
    pub residual: f64,
    pub cumulative: f64,
}

pub fn echo_report(spec: &NetworkSpec, max_echo: usize) -> Result<EchoReport> {
    if max_echo == 0 {
        return Err(Error::EchoIndexOutOfRange { index: 0, flips: spec.num_flips });
    }
    let beta = spec.cell.beta;
    let mut fractions = Vec::with_capacity(max_echo);
    for p in 1..=max_echo.min(spec.num_flips) {
        fractions.push(finite_multiswitch_echo(beta, spec.cells, p)?);
    }
    let transmitted = spec.cell.t_amp.powi(2 * spec.cells as i32);
    let cumulative: f64 = fractions.iter().sum();
    Ok(EchoReport {
        echo_fractions: fractions,
        transmitted,
        residual: (1.0 - transmitted - cumulative).max(0.0),
        cumulative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn splitter_is_unitary() {
        for &beta in &[0.0, 0.05, 0.3, 2.0, 10.0] {
            let s = SplitterParams::from_beta(beta).unwrap();
            assert_relative_eq!(s.t_amp() * s.t_amp() + s.r_amp() * s.r_amp(), 1.0, epsilon = 1e-14);
        }
        assert!(SplitterParams::from_beta(-0.1).is_err());
    }

    #[test]
    fn single_memory_efficiency_values() {
        assert_eq!(single_memory_efficiency(0.0), 0.0);
        assert!(single_memory_efficiency(2.0) > 0.99999);
        assert_relative_eq!(single_memory_efficiency(2.0), 0.999_993, max_relative = 1e-5);
        // frozen from an independent evaluation of (1 - exp(-0.4 pi))^2
        assert_relative_eq!(
            single_memory_efficiency(0.2),
            0.511_783_505_485_884,
            max_relative = 1e-12
        );
    }

    #[test]
    fn single_memory_ledger_sums_to_one() {
        let (t, e, r) = single_memory_ledger(0.0);
        assert_eq!((t, e, r), (1.0, 0.0, 0.0));
        for &beta in &[0.01, 0.2, 0.7, 3.0] {
            let (t, e, r) = single_memory_ledger(beta);
            assert_relative_eq!(t + e + r, 1.0, epsilon = 1e-12);
        }
        let (t, e, r) = single_memory_ledger(0.2);
        assert_relative_eq!(t, 0.284_609_543_336_029, max_relative = 1e-12);
        assert_relative_eq!(e, 0.511_783_505_485_884, max_relative = 1e-12);
        assert_relative_eq!(r, 0.203_606_951_178_086, max_relative = 1e-12);
    }

    #[test]
    fn transverse_reductions() {
        for &beta in &[0.1, 0.5, 1.0] {
            assert_relative_eq!(
                transverse_efficiency(beta, 1),
                single_memory_efficiency(beta),
                epsilon = 1e-14
            );
        }
        assert_relative_eq!(thin_limit_efficiency(2.0), 4.0 * (-2.0f64).exp(), epsilon = 1e-15);
        assert_relative_eq!(thin_limit_efficiency(1.0), (-1.0f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn transverse_gap_shrinks_quadratically() {
        // exact identity: finite/thin = [sinh(u)/u]^2 with u = d/(2M); the
        // convergence is second order in 1/M (the stated first-order bound
        // C/M holds a fortiori)
        let d = 2.0;
        let gap = |m: usize| {
            let beta = d / (2.0 * PI * m as f64);
            (transverse_efficiency(beta, m) / thin_limit_efficiency(d) - 1.0).abs()
        };
        let (g3, g4) = (gap(1000), gap(10_000));
        let ratio = g3 / g4;
        assert!(ratio > 50.0 && ratio < 150.0, "gap ratio {ratio}");
        for &m in &[10usize, 100, 1000] {
            assert!(gap(m) <= 1.0 / m as f64, "first-order bound violated at M={m}");
            let u = d / (2.0 * m as f64);
            let exact = (u.sinh() / u).powi(2) - 1.0;
            assert_relative_eq!(gap(m), exact, max_relative = 1e-6);
        }
    }

    #[test]
    fn multiswitch_reduction_and_geometric_closure() {
        for &beta in &[0.1, 0.4] {
            assert_relative_eq!(
                multiswitch_echo_energy(beta, 1).unwrap(),
                single_memory_efficiency(beta),
                epsilon = 1e-14
            );
            let x = (-2.0 * PI * beta).exp();
            let total: f64 = (1..=400)
                .map(|k| multiswitch_echo_energy(beta, k).unwrap())
                .sum::<f64>()
                + x;
            assert_relative_eq!(total, 1.0, epsilon = 1e-10);
        }
        assert_relative_eq!(
            multiswitch_echo_energy(0.2, 2).unwrap(),
            0.145_658_469_783_250,
            max_relative = 1e-12
        );
        assert!(multiswitch_echo_energy(0.2, 0).is_err());
    }

    #[test]
    fn transverse_multiswitch_values() {
        // p = 1 reduces to d^2 e^{-d} identically
        for &d in &[0.0, 0.3, 1.0, 2.0, 5.0, 12.0] {
            assert_abs_diff_eq!(
                transverse_multiswitch_echo(d, 1).unwrap(),
                thin_limit_efficiency(d),
                epsilon = 1e-14
            );
        }
        // the second echo vanishes exactly at d = 2
        assert_abs_diff_eq!(transverse_multiswitch_echo(2.0, 2).unwrap(), 0.0, epsilon = 1e-28);
        assert!(transverse_multiswitch_echo(-1.0, 1).is_err());
        assert!(transverse_multiswitch_echo(1.0, 0).is_err());
    }

    #[test]
    fn laguerre_matches_direct_binomial_sum() {
        // independent route: the alternating binomial sum evaluated term by
        // term, fine for small p; the comparison tolerance scales with the
        // cancellation (largest term magnitude) the direct route suffers
        fn direct(d: f64, p: usize) -> (f64, f64) {
            let mut s = 0.0;
            let mut magnitude = 0.0f64;
            for k in 1..=p {
                let mut term = 1.0;
                for i in 0..(k - 1) {
                    term *= (p - 1 - i) as f64 / (i + 1) as f64;
                }
                let mut fact = 1.0;
                for i in 1..=k {
                    fact *= i as f64;
                }
                let t = term * (-d).powi(k as i32) / fact;
                s += t;
                magnitude = magnitude.max(t.abs());
            }
            ((-d).exp() * s * s, magnitude)
        }
        for &d in &[0.25, 1.0, 2.0, 4.0, 7.5, 12.0] {
            for p in 1..=20 {
                let a = transverse_multiswitch_echo(d, p).unwrap();
                let (b, magnitude) = direct(d, p);
                let tol = 1e-13 * (1.0 + (-d).exp() * magnitude * magnitude);
                assert_abs_diff_eq!(a, b, epsilon = tol.max(1e-13));
            }
        }
    }

    #[test]
    fn cumulative_hundred_echo_efficiency() {
        // scanning d: the 100-echo cumulative tops 0.92 near d ~ 4.8 and is
        // already >= 0.90 there
        let cumulative = |d: f64| -> f64 {
            (1..=100).map(|p| transverse_multiswitch_echo(d, p).unwrap()).sum()
        };
        let mut best = (0.0, 0.0);
        let mut d = 0.05;
        while d < 14.0 {
            let c = cumulative(d);
            if c > best.0 {
                best = (c, d);
            }
            d += 0.05;
        }
        assert!(best.0 >= 0.90, "best cumulative {} at d={}", best.0, best.1);
        assert!((best.1 - 4.85).abs() < 0.3, "optimum at d={}", best.1);
    }

    #[test]
    fn oracle_matches_every_closed_form() {
        for &m in &[1usize, 2, 3, 5] {
            for &flips in &[1usize, 2, 3] {
                for &beta in &[0.05, 0.1, 0.3] {
                    let spec =
                        NetworkSpec::new(m, flips, SplitterParams::from_beta(beta).unwrap())
                            .unwrap();
                    for p in 1..=flips {
                        let a = path_sum_oracle(&spec, p, ReflectionConvention::ImaginaryReflection)
                            .unwrap();
                        let b = path_sum_oracle(&spec, p, ReflectionConvention::RealOrthogonal)
                            .unwrap();
                        let closed = finite_multiswitch_echo(beta, m, p).unwrap();
                        assert_abs_diff_eq!(a.norm_sqr(), closed, epsilon = 1e-10);
                        assert_abs_diff_eq!(a.norm_sqr(), b.norm_sqr(), epsilon = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_spot_amplitudes() {
        // single memory: two reflections, amplitude r^2 (up to convention phase)
        let spec = NetworkSpec::new(1, 1, SplitterParams::from_beta(0.2).unwrap()).unwrap();
        let a = path_sum_oracle(&spec, 1, ReflectionConvention::ImaginaryReflection).unwrap();
        let r2 = spec.cell.r_amp() * spec.cell.r_amp();
        assert_relative_eq!(a.norm(), r2, epsilon = 1e-14);
        assert_relative_eq!(a.norm_sqr(), single_memory_efficiency(0.2), epsilon = 1e-14);
        // two cells: two constructive paths -> 4 (1-x)^2 x
        let spec = NetworkSpec::new(2, 1, SplitterParams::from_beta(0.2).unwrap()).unwrap();
        let a = path_sum_oracle(&spec, 1, ReflectionConvention::ImaginaryReflection).unwrap();
        let x = (-0.4 * PI).exp();
        assert_relative_eq!(a.norm_sqr(), 4.0 * (1.0 - x) * (1.0 - x) * x, epsilon = 1e-13);
        // echo index beyond the schedule is rejected
        assert!(path_sum_oracle(&spec, 2, ReflectionConvention::ImaginaryReflection).is_err());
    }

    #[test]
    fn oracle_approaches_thin_limit() {
        let m = 100;
        let d = 2.0;
        let beta = d / (2.0 * PI * m as f64);
        let spec = NetworkSpec::new(m, 4, SplitterParams::from_beta(beta).unwrap()).unwrap();
        for p in 1..=4 {
            let oracle = path_sum_oracle(&spec, p, ReflectionConvention::ImaginaryReflection)
                .unwrap()
                .norm_sqr();
            let thin = transverse_multiswitch_echo(d, p).unwrap();
            if thin > 1e-6 {
                assert_relative_eq!(oracle, thin, max_relative = 0.01);
            } else {
                assert_abs_diff_eq!(oracle, thin, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn echo_report_matches_single_memory_ledger() {
        let spec = NetworkSpec::new(1, 1, SplitterParams::from_beta(0.35).unwrap()).unwrap();
        let rep = echo_report(&spec, 1).unwrap();
        let (t, e, r) = single_memory_ledger(0.35);
        assert_relative_eq!(rep.transmitted, t, epsilon = 1e-14);
        assert_relative_eq!(rep.echo_fractions[0], e, epsilon = 1e-14);
        assert_relative_eq!(rep.residual, r, epsilon = 1e-12);
    }

    #[test]
    fn echo_report_cumulative_partial_sum() {
        let spec = NetworkSpec::new(1, 10, SplitterParams::from_beta(0.2).unwrap()).unwrap();
        let rep = echo_report(&spec, 10).unwrap();
        let x = (-0.4 * PI).exp();
        // geometric partial sum: (1-x)(1 - x^10)
        assert_relative_eq!(rep.cumulative, (1.0 - x) * (1.0 - x.powi(10)), max_relative = 1e-10);
        assert!((rep.cumulative - 0.7155).abs() < 2e-3);
    }

    proptest! {
        #[test]
        fn unitarity_closure_and_monotone_residual(
            beta in 0.05f64..1.0,
            cells in 1usize..4,
        ) {
            let spec = NetworkSpec::new(cells, 200, SplitterParams::from_beta(beta).unwrap()).unwrap();
            let mut prev_residual = f64::INFINITY;
            for max_echo in [1usize, 5, 20, 80, 200] {
                let rep = echo_report(&spec, max_echo).unwrap();
                prop_assert!(rep.residual <= prev_residual + 1e-12);
                prev_residual = rep.residual;
                for f in &rep.echo_fractions {
                    prop_assert!(*f >= 0.0 && *f <= 1.0);
                }
                prop_assert!(rep.transmitted + rep.cumulative <= 1.0 + 1e-9);
            }
            // closure at P = 200: stored amplitude survives each flip with at
            // most t, so the leftover is far below the tolerance
            let rep = echo_report(&spec, 200).unwrap();
            prop_assert!(rep.residual <= 1e-6,
                "residual {} at beta={} cells={}", rep.residual, beta, cells);
        }
    }

    #[test]
    fn gradient_unitarity_closure_at_reference_point() {
        let spec = NetworkSpec::new(1, 200, SplitterParams::from_beta(0.2).unwrap()).unwrap();
        let rep = echo_report(&spec, 200).unwrap();
        assert!(rep.residual <= 1e-6);
        assert_relative_eq!(rep.transmitted + rep.cumulative, 1.0, epsilon = 1e-12);
        assert_relative_eq!(
            rep.transmitted + rep.cumulative + rep.residual,
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn oracle_enumeration_budget_is_enforced() {
        // C(40,10) C(9,9) alone exceeds the path budget
        let spec = NetworkSpec::new(40, 10, SplitterParams::from_beta(0.1).unwrap()).unwrap();
        assert!(matches!(
            path_sum_oracle(&spec, 10, ReflectionConvention::ImaginaryReflection),
            Err(crate::error::Error::EnumerationBudget(_))
        ));
    }
}
