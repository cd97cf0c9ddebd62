//! At finite optical depth the retrieval is incomplete unless an attenuated
//! copy of the outgoing echo is injected at the input face at the same time.
//! With it, the output reaches the full ideal echo and the atoms end in the
//! ground state.
//!
//! ```sh
//! cargo run --release --example auxiliary_recall
//! ```

use gradient_echo::model::{Grid, PhysicalParams, Pulse};
use gradient_echo::solver::auxiliary_recall_check;
use gradient_echo::Complex64;

fn main() -> gradient_echo::Result<()> {
    let beta = 0.3;
    let params = PhysicalParams::dimensionless(beta, 60.0)?;
    let grid = Grid::symmetric(&params, 1_351, 14_401, -12.0, 12.0)?;
    let input = Pulse::gaussian(-6.0, 1.0, Complex64::new(1.0, 0.0))?;
    let report = auxiliary_recall_check(&params, &grid, &input, 0.0)?;

    let x = (-2.0 * std::f64::consts::PI * beta).exp();
    println!("beta = {beta}");
    println!("auxiliary energy / input energy: {:.4} (= exp(-2 beta pi))", report.auxiliary_energy_ratio);
    println!("residual excitation without auxiliary: {:.4}  [x(1-x) = {:.4}]", report.residual_without, x * (1.0 - x));
    println!("residual excitation with auxiliary:    {:.2e}", report.residual_with);
    println!("overlap of assisted output with the full ideal echo: {:.6}", report.overlap_with_ideal);
    Ok(())
}
