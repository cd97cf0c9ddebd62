//! One storage/retrieval cycle: flip the detuning after the pulse is absorbed
//! and measure the echo energy against (1 - exp(-2 beta pi))^2, plus where
//! the rest of the energy went.
//!
//! ```sh
//! cargo run --release --example single_echo
//! ```

use gradient_echo::model::{FlipSchedule, Grid, PhysicalParams, Pulse};
use gradient_echo::network::single_memory_ledger;
use gradient_echo::solver::{echo_window, energy_balance, measure_efficiency, simulate, SimOptions};
use gradient_echo::Complex64;

fn main() -> gradient_echo::Result<()> {
    let input = Pulse::gaussian(-6.0, 1.0, Complex64::new(1.0, 0.0))?;
    let schedule = FlipSchedule::single(0.0);
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12} {:>10}",
        "beta", "echo (sim)", "echo (form)", "resid (sim)", "resid (form)", "defect"
    );
    for beta in [0.05, 0.2, 0.5, 1.0, 2.0] {
        let params = PhysicalParams::dimensionless(beta, 60.0)?;
        let grid = Grid::symmetric(&params, 2_701, 14_401, -12.0, 12.0)?;
        let result = simulate(&params, &grid, &input, &schedule, None, &SimOptions::default())?;
        let eff = measure_efficiency(&result, echo_window(&input, &schedule, 1)?)?;
        let (_, echo_pred, resid_pred) = single_memory_ledger(beta);
        let balance = energy_balance(&result);
        println!(
            "{beta:>6} {eff:>12.6} {echo_pred:>12.6} {:>12.4e} {resid_pred:>12.4e} {:>10.1e}",
            result.ledger.residual_fraction(),
            balance.defect
        );
    }
    Ok(())
}
