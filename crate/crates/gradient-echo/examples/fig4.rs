//! Echo efficiencies of a repeatedly switched gradient memory as a function
//! of beta; writes `out/fig4_fig4.csv` and `out/fig4_fig4.svg`.
//!
//! ```sh
//! cargo run --release --example fig4
//! ```

use std::path::Path;

use gradient_echo::experiments::scenario::run_fig4;
use gradient_echo::experiments::ScenarioConfig;

fn main() -> gradient_echo::Result<()> {
    let cfg = ScenarioConfig::from_str_named(
        "fig4 (builtin)",
        "[scenario]\nname = fig4\n[sweep]\nbeta_min = 0.0\nbeta_max = 1.2\nbeta_steps = 61\nnum_echoes = 4\n[output]\nprefix = fig4\n",
    )?;
    let summary = run_fig4(&cfg, Path::new("out"))?;
    print!("{}", summary.render());
    Ok(())
}
