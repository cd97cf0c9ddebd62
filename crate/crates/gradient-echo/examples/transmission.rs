//! Straight-through transmission: the pulse that leaves the sample before the
//! flip is the input attenuated by exp(-beta pi).
//!
//! ```sh
//! cargo run --release --example transmission
//! ```

use gradient_echo::model::{FlipSchedule, Grid, PhysicalParams, Pulse};
use gradient_echo::solver::{simulate, SimOptions};
use gradient_echo::Complex64;

fn main() -> gradient_echo::Result<()> {
    let input = Pulse::gaussian(-6.0, 1.0, Complex64::new(1.0, 0.0))?;
    println!("{:>6} {:>14} {:>14} {:>12}", "beta", "simulated", "exp(-beta pi)", "rel error");
    for beta in [0.1, 0.3, 1.0, 2.0] {
        let params = PhysicalParams::dimensionless(beta, 60.0)?;
        let grid = Grid::symmetric(&params, 2_701, 14_401, -12.0, 12.0)?;
        let result = simulate(&params, &grid, &input, &FlipSchedule::single(0.0), None, &SimOptions::default())?;
        let ratio = (result.ledger.transmitted_energy / result.ledger.input_energy).sqrt();
        let expected = (-beta * std::f64::consts::PI).exp();
        println!(
            "{beta:>6} {ratio:>14.6e} {expected:>14.6e} {:>12.2e}",
            (ratio / expected - 1.0).abs()
        );
    }
    Ok(())
}
