//! Echo efficiencies of a transversely broadened memory as a function of
//! optical depth, with cumulative sums over 1, 10 and 100 echoes; writes
//! `out/fig5_fig5.csv` and `out/fig5_fig5.svg`.
//!
//! ```sh
//! cargo run --release --example fig5
//! ```

use std::path::Path;

use gradient_echo::experiments::scenario::run_fig5;
use gradient_echo::experiments::ScenarioConfig;

fn main() -> gradient_echo::Result<()> {
    let cfg = ScenarioConfig::from_str_named(
        "fig5 (builtin)",
        "[scenario]\nname = fig5\n[sweep]\nd_min = 0.0\nd_max = 12.0\nd_steps = 121\n[output]\nprefix = fig5\n",
    )?;
    let summary = run_fig5(&cfg, Path::new("out"))?;
    print!("{}", summary.render());
    Ok(())
}
