//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N (<name>): PASS/FAIL` line (run with `--nocapture` to see the
//! lines for passing tests). Tolerances are fixed here, in code.

use gradient_echo::analytic::{ideal_echo, phase_excursion};
use gradient_echo::gamma::complex_gamma_imag;
use gradient_echo::model::{FlipSchedule, Grid, PhysicalParams, Pulse};
use gradient_echo::network::{
    finite_multiswitch_echo, multiswitch_echo_energy, path_sum_oracle, single_memory_efficiency,
    thin_limit_efficiency, transverse_efficiency, transverse_multiswitch_echo, NetworkSpec,
    ReflectionConvention, SplitterParams,
};
use gradient_echo::solver::{
    auxiliary_recall_check, echo_fidelity, echo_window, energy_balance, fidelity_against,
    measure_efficiency, simulate, SimOptions,
};
use gradient_echo::Complex64;

const PI: f64 = std::f64::consts::PI;

fn report(criterion: usize, name: &str, passed: bool, detail: &str) {
    println!(
        "criterion {criterion} ({name}): {} — {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {criterion} ({name}) failed: {detail}");
}

/// Reference setup: detuning window eta z0 = 60, unit-sigma Gaussian centred
/// at t = -6, flip at t = 0, grid satisfying |eta| z0 dt <= 0.1.
fn reference(beta: f64) -> (PhysicalParams, Grid, Pulse, FlipSchedule) {
    let params = PhysicalParams::dimensionless(beta, 60.0).unwrap();
    let grid = Grid::symmetric(&params, 2_701, 14_401, -12.0, 12.0).unwrap();
    let input = Pulse::gaussian(-6.0, 1.0, Complex64::new(1.0, 0.0)).unwrap();
    (params, grid, input, FlipSchedule::single(0.0))
}

#[test]
fn criterion_01_transmission_law() {
    let mut detail = String::new();
    let mut pass = true;
    for &beta in &[0.1, 0.3, 1.0, 2.0] {
        let started = std::time::Instant::now();
        let (params, grid, input, schedule) = reference(beta);
        let r = simulate(&params, &grid, &input, &schedule, None, &SimOptions::default()).unwrap();
        let elapsed = started.elapsed();
        let ratio = (r.ledger.transmitted_energy / r.ledger.input_energy).sqrt();
        let expected = (-beta * PI).exp();
        let rel = (ratio / expected - 1.0).abs();
        pass &= rel <= 0.02 && elapsed.as_secs_f64() < 60.0;
        detail.push_str(&format!("beta={beta}: rel {rel:.1e} in {:.1}s; ", elapsed.as_secs_f64()));
    }
    report(1, "transmission law", pass, &detail);
}

#[test]
fn criterion_02_single_echo_efficiency() {
    let mut detail = String::new();
    let mut pass = true;
    for &beta in &[0.05, 0.1, 0.2, 0.5, 1.0] {
        let (params, grid, input, schedule) = reference(beta);
        let r = simulate(&params, &grid, &input, &schedule, None, &SimOptions::default()).unwrap();
        let eff = measure_efficiency(&r, echo_window(&input, &schedule, 1).unwrap()).unwrap();
        let x = (-2.0 * PI * beta).exp();
        let rel = (eff / ((1.0 - x) * (1.0 - x)) - 1.0).abs();
        pass &= rel <= 0.02;
        detail.push_str(&format!("beta={beta}: rel {rel:.1e}; "));
        if beta == 0.2 {
            // quoted spot value
            pass &= (eff / 0.51195 - 1.0).abs() <= 0.02;
        }
    }
    // high optical depth: five nines
    let (params, grid, input, schedule) = reference(2.0);
    let r = simulate(&params, &grid, &input, &schedule, None, &SimOptions::default()).unwrap();
    let eff = measure_efficiency(&r, echo_window(&input, &schedule, 1).unwrap()).unwrap();
    pass &= eff >= 0.9999;
    detail.push_str(&format!("beta=2: eff {eff:.6}"));
    report(2, "single-echo efficiency", pass, &detail);
}

#[test]
fn criterion_03_time_reversal_fidelity() {
    let (params, grid, input, schedule) = reference(2.0);
    let r = simulate(&params, &grid, &input, &schedule, None, &SimOptions::default()).unwrap();
    let fidelity = echo_fidelity(&r, &input, &params, 0.0).unwrap();
    // deliberately strip the logarithmic chirp from the prediction
    let stripped = Pulse::new(
        {
            let inner = input.clone();
            move |t: f64| inner.eval(-t)
        },
        (1.0, 11.0),
        input.bandwidth(),
    )
    .unwrap();
    let fidelity_stripped = fidelity_against(&r, &stripped).unwrap();
    let pass = fidelity >= 0.99 && fidelity_stripped < fidelity;
    report(
        3,
        "time reversal",
        pass,
        &format!("fidelity {fidelity:.5} vs phase-stripped {fidelity_stripped:.5}"),
    );
}

#[test]
fn criterion_04_multiple_switching() {
    let mut detail = String::new();
    let mut pass = true;
    for &beta in &[0.1, 0.3] {
        let params = PhysicalParams::dimensionless(beta, 30.0).unwrap();
        let grid = Grid::symmetric(&params, 1_601, 14_401, -12.0, 36.0).unwrap();
        let input = Pulse::gaussian(-6.0, 1.0, Complex64::new(1.0, 0.0)).unwrap();
        let schedule = FlipSchedule::new(vec![0.0, 12.0, 24.0]).unwrap();
        let r = simulate(&params, &grid, &input, &schedule, None, &SimOptions::default()).unwrap();
        for k in 1..=3usize {
            let frac = r.ledger.echo_energies[k - 1] / r.ledger.input_energy;
            let expected = multiswitch_echo_energy(beta, k).unwrap();
            let rel = (frac / expected - 1.0).abs();
            pass &= rel <= 0.03;
            detail.push_str(&format!("b={beta} k={k}: rel {rel:.1e}; "));
        }
        let defect = energy_balance(&r).defect;
        pass &= defect <= 0.02;
        detail.push_str(&format!("b={beta} defect {defect:.1e}; "));
    }
    report(4, "multiple switching", pass, &detail);
}

#[test]
fn criterion_05_transverse_limit() {
    let d = 2.0;
    let mut pass = true;
    let mut detail = String::new();
    // first-order bound: relative gap <= (d^2/12) / M (the measured decay is
    // in fact second order, ratio ~100 per decade of M)
    let gap = |m: usize| {
        let beta = d / (2.0 * PI * m as f64);
        (transverse_efficiency(beta, m) / thin_limit_efficiency(d) - 1.0).abs()
    };
    for &m in &[10usize, 100, 1_000, 10_000] {
        let g = gap(m);
        pass &= g <= (d * d / 12.0) / m as f64;
        detail.push_str(&format!("gap(M={m}) = {g:.2e}; "));
    }
    let ratio = gap(1_000) / gap(10_000);
    detail.push_str(&format!("decade ratio {ratio:.0} (second order); "));
    // the peak of d^2 e^{-d} sits at d = 2 with value 4/e^2
    let peak = thin_limit_efficiency(2.0);
    let four_over_e2 = 4.0 * (-2.0f64).exp();
    pass &= (peak - four_over_e2).abs() <= 1e-12;
    let mut scan_best = (0.0f64, 0.0f64);
    let mut dd = 0.0;
    while dd <= 8.0 {
        let v = thin_limit_efficiency(dd);
        if v > scan_best.0 {
            scan_best = (v, dd);
        }
        dd += 0.001;
    }
    pass &= (scan_best.1 - 2.0).abs() <= 0.002 && (scan_best.0 - four_over_e2).abs() <= 1e-6;
    detail.push_str(&format!("peak {peak:.12} at d={:.3}", scan_best.1));
    report(5, "transverse limit", pass, &detail);
}

#[test]
fn criterion_06_oracle_equivalence() {
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut printed_form_worst = 0.0f64;
    for &m in &[1usize, 2, 3, 5] {
        for &flips in &[1usize, 2, 3] {
            for &beta in &[0.05, 0.1, 0.3] {
                let spec = NetworkSpec::new(m, flips, SplitterParams::from_beta(beta).unwrap())
                    .unwrap();
                for p in 1..=flips {
                    let oracle =
                        path_sum_oracle(&spec, p, ReflectionConvention::ImaginaryReflection)
                            .unwrap()
                            .norm_sqr();
                    let closed = finite_multiswitch_echo(beta, m, p).unwrap();
                    let dev = (oracle - closed).abs();
                    worst = worst.max(dev);
                    pass &= dev <= 1e-10;
                    // a literal amplitude-coefficient reading of the printed
                    // finite-stack energy (t^{M+p} outside, 1/k! in place of
                    // the cell binomial) does not reproduce the oracle
                    let t = spec.cell.t_amp();
                    let r2 = spec.cell.r_amp() * spec.cell.r_amp();
                    let mut s = 0.0;
                    let mut fact = 1.0f64;
                    for k in 1..=p {
                        fact *= k as f64;
                        let mut c = 1.0f64;
                        for i in 0..(k - 1) {
                            c *= (p - 1 - i) as f64 / (i + 1) as f64;
                        }
                        s += c / fact * (-(r2 / (t * t))).powi(k as i32);
                    }
                    let literal = t.powi((m + p) as i32) * s * s;
                    printed_form_worst = printed_form_worst.max((oracle - literal).abs());
                }
            }
        }
    }
    // the discrepancy of the literal reading is the documented resolution of
    // the printed-exponent ambiguity
    pass &= printed_form_worst > 1e-3;
    report(
        6,
        "oracle equivalence",
        pass,
        &format!(
            "worst |oracle - closed| = {worst:.1e}; literal t^(M+p)/k! reading deviates by up \
             to {printed_form_worst:.2} (energies carry t^(2(M+p)) and the cell binomial C(M,k))"
        ),
    );
}

#[test]
fn criterion_07_transverse_multiswitch() {
    let cumulative = |d: f64| -> f64 {
        (1..=100).map(|p| transverse_multiswitch_echo(d, p).unwrap()).sum()
    };
    let mut best = (0.0f64, 0.0f64);
    let mut best_e1 = (0.0f64, 0.0f64);
    let mut d = 0.01;
    while d <= 14.0 {
        let c = cumulative(d);
        if c > best.0 {
            best = (c, d);
        }
        let e1 = transverse_multiswitch_echo(d, 1).unwrap();
        if e1 > best_e1.0 {
            best_e1 = (e1, d);
        }
        d += 0.01;
    }
    let e2_at_2 = transverse_multiswitch_echo(2.0, 2).unwrap();
    let pass = best.0 >= 0.90
        && (best_e1.0 - 0.5413).abs() <= 1e-3
        && e2_at_2 <= 1e-20;
    report(
        7,
        "transverse multiswitch",
        pass,
        &format!(
            "cumulative(P=100) max {:.4} at d = {:.2}; e1 max {:.4}; e2(d=2) = {e2_at_2:.1e}",
            best.0, best.1, best_e1.0
        ),
    );
}

#[test]
fn criterion_08_auxiliary_recall() {
    let beta = 0.3;
    let params = PhysicalParams::dimensionless(beta, 60.0).unwrap();
    let grid = Grid::symmetric(&params, 2_701, 14_401, -12.0, 12.0).unwrap();
    let input = Pulse::gaussian(-6.0, 1.0, Complex64::new(1.0, 0.0)).unwrap();
    let rep = auxiliary_recall_check(&params, &grid, &input, 0.0).unwrap();
    let x = (-2.0 * PI * beta).exp();
    let bare_expected = x * (1.0 - x);
    let pass = rep.residual_with <= 0.02
        && (rep.residual_without / bare_expected - 1.0).abs() <= 0.05
        && rep.overlap_with_ideal >= 0.99;
    report(
        8,
        "auxiliary-pulse recall",
        pass,
        &format!(
            "residual with {:.2e} vs without {:.4} (expected {bare_expected:.4}); overlap {:.5}",
            rep.residual_with, rep.residual_without, rep.overlap_with_ideal
        ),
    );
}

#[test]
fn criterion_09_gamma_identity() {
    let mut worst = 0.0f64;
    let n = 600;
    for i in 0..=n {
        let y = 1e-3 * (50.0f64 / 1e-3).powf(i as f64 / n as f64);
        let g = complex_gamma_imag(y).unwrap();
        let exact = PI / (y * (PI * y).sinh());
        worst = worst.max((g.norm_sqr() / exact - 1.0).abs());
        let c = complex_gamma_imag(-y).unwrap();
        assert_eq!(c.re, g.re);
        assert_eq!(c.im, -g.im);
    }
    report(
        9,
        "gamma special function",
        worst <= 1e-12,
        &format!("worst |Gamma(iy)|^2 identity error {worst:.2e}; conjugation exact"),
    );
}

#[test]
fn criterion_10_phase_law() {
    let exc = phase_excursion(2.0, 1.0, 2.0).unwrap();
    let mut pass = (exc - 4.0 * 2.0f64.ln()).abs() <= 1e-12 && exc < PI;
    // opposite-gradient series: the composed chirps cancel analytically
    let fwd = PhysicalParams::dimensionless(0.8, 60.0).unwrap();
    let input = Pulse::gaussian(-6.0, 1.0, Complex64::new(1.0, 0.0)).unwrap();
    let once = ideal_echo(&input, &fwd, 0.0).unwrap();
    let twice = ideal_echo(&once, &fwd.reversed_gradient(), 0.0).unwrap();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..400 {
        let t = -11.0 + 10.0 * i as f64 / 399.0;
        let f = input.eval(t);
        if f.norm() > 1e-3 {
            let ph = (twice.eval(t) / f).arg();
            lo = lo.min(ph);
            hi = hi.max(ph);
        }
    }
    pass &= (hi - lo) <= 1e-6;
    report(
        10,
        "retrieval phase law",
        pass,
        &format!("excursion(beta=2, ratio 2) = {exc:.4} rad < pi; series residual {:.1e} rad", hi - lo),
    );
}

#[test]
fn criterion_11_solver_properties() {
    // vacuum identity
    let vac_params = PhysicalParams::new(1.0, 0.0, 60.0, 0.0, 1.0).unwrap();
    let grid = Grid::symmetric(&vac_params, 201, 14_401, -12.0, 12.0).unwrap();
    let input = Pulse::gaussian(-6.0, 1.0, Complex64::new(1.0, 0.0)).unwrap();
    let r = simulate(&vac_params, &grid, &input, &FlipSchedule::none(), None, &SimOptions::default())
        .unwrap();
    let vacuum_dev = r
        .out_series
        .iter()
        .zip(&r.in_series)
        .map(|(o, i)| (o - i).norm())
        .fold(0.0, f64::max);
    let mut pass = vacuum_dev <= 1e-10;

    // linearity and superposition
    let params = PhysicalParams::dimensionless(0.3, 60.0).unwrap();
    let grid = Grid::symmetric(&params, 1_351, 14_401, -12.0, 12.0).unwrap();
    let schedule = FlipSchedule::single(0.0);
    let r1 = simulate(&params, &grid, &input, &schedule, None, &SimOptions::default()).unwrap();
    let c = Complex64::new(-0.3, 0.8);
    let rc = simulate(&params, &grid, &input.scaled(c), &schedule, None, &SimOptions::default())
        .unwrap();
    let lin = l2_relative(&rc.out_series, &r1.out_series.iter().map(|v| c * v).collect::<Vec<_>>());
    let p2 = Pulse::gaussian(-7.2, 0.7, Complex64::new(0.4, 0.2)).unwrap();
    let r2 = simulate(&params, &grid, &p2, &schedule, None, &SimOptions::default()).unwrap();
    let rs = simulate(&params, &grid, &input.superpose(&p2), &schedule, None, &SimOptions::default())
        .unwrap();
    let sup = l2_relative(
        &rs.out_series,
        &r1.out_series.iter().zip(&r2.out_series).map(|(a, b)| a + b).collect::<Vec<_>>(),
    );
    pass &= lin <= 1e-10 && sup <= 1e-10;

    // grid convergence of the echo efficiency, three refinement levels at a
    // detuning window small enough that the coarsest level is stable
    let beta = 0.2;
    let cparams = PhysicalParams::dimensionless(beta, 15.0).unwrap();
    let cinput = Pulse::gaussian(-6.0, 1.0, Complex64::new(1.0, 0.0)).unwrap();
    let expected = single_memory_efficiency(beta);
    let mut errors = Vec::new();
    let mut hs = Vec::new();
    for (nz, nt) in [(676, 3_601), (1_351, 7_201), (2_701, 14_401)] {
        let grid = Grid::symmetric(&cparams, nz, nt, -12.0, 12.0).unwrap();
        let rr = simulate(&cparams, &grid, &cinput, &schedule, None, &SimOptions::default()).unwrap();
        let eff = measure_efficiency(&rr, (1.0, 11.0)).unwrap();
        errors.push((eff / expected - 1.0).abs().max(1e-15));
        hs.push(grid.dt());
    }
    let n = errors.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (h, e) in hs.iter().zip(&errors) {
        let (x, y) = (h.ln(), e.ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    pass &= order >= 1.7 && errors[2] <= errors[0] / 4.0;

    report(
        11,
        "solver properties",
        pass,
        &format!(
            "vacuum {vacuum_dev:.1e}; linearity {lin:.1e}; superposition {sup:.1e}; \
             convergence order {order:.2} (errors {:.1e} -> {:.1e})",
            errors[0], errors[2]
        ),
    );
}

fn l2_relative(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in a.iter().zip(b) {
        num += (x - y).norm_sqr();
        den += y.norm_sqr();
    }
    (num / den).sqrt()
}
