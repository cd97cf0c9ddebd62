//! Grid-refinement study: the echo-efficiency error against the closed form
//! shrinks with better than second order as dz and dt are halved together.
//!
//! ```sh
//! cargo run --release --example convergence
//! ```

use std::path::Path;

use gradient_echo::experiments::scenario::run_converge;
use gradient_echo::experiments::ScenarioConfig;

fn main() -> gradient_echo::Result<()> {
    let cfg = ScenarioConfig::from_str_named(
        "convergence (builtin)",
        "[scenario]\nname = converge\n[params]\nbeta = 0.2\neta = 15.0\n\
         [grid]\nnz = 2701\nnt = 14401\n[sweep]\nlevels = 3\n[output]\nprefix = converge\n",
    )?;
    let summary = run_converge(&cfg, Path::new("out"))?;
    print!("{}", summary.render());
    Ok(())
}
