//! Flip the detuning repeatedly: each rephasing releases another echo,
//! (1 - x)^2 x^(k-1) of the input energy with x = exp(-2 beta pi), until
//! everything has left the sample.
//!
//! ```sh
//! cargo run --release --example multi_switch
//! ```

use gradient_echo::model::{FlipSchedule, Grid, PhysicalParams, Pulse};
use gradient_echo::network::multiswitch_echo_energy;
use gradient_echo::solver::{energy_balance, simulate, SimOptions};
use gradient_echo::Complex64;

fn main() -> gradient_echo::Result<()> {
    let beta = 0.3;
    let params = PhysicalParams::dimensionless(beta, 30.0)?;
    let grid = Grid::symmetric(&params, 1_601, 14_401, -12.0, 36.0)?;
    let input = Pulse::gaussian(-6.0, 1.0, Complex64::new(1.0, 0.0))?;
    let schedule = FlipSchedule::new(vec![0.0, 12.0, 24.0])?;
    let result = simulate(&params, &grid, &input, &schedule, None, &SimOptions::default())?;

    println!("beta = {beta}, flips at {:?}", schedule.times());
    println!("{:>4} {:>14} {:>14}", "k", "simulated", "closed form");
    for (k, &e) in result.ledger.echo_energies.iter().enumerate() {
        println!(
            "{:>4} {:>14.8} {:>14.8}",
            k + 1,
            e / result.ledger.input_energy,
            multiswitch_echo_energy(beta, k + 1)?
        );
    }
    let bal = energy_balance(&result);
    println!(
        "transmitted {:.6}, residual {:.2e}, closure defect {:.1e}",
        result.ledger.transmitted_energy / result.ledger.input_energy,
        result.ledger.residual_fraction(),
        bal.defect
    );
    Ok(())
}
