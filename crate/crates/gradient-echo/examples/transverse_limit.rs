//! Transverse broadening as a stack of thin memories: the single-echo
//! efficiency M^2 (1-exp(-2 beta pi))^2 exp(-2 beta pi (M-1)) tends to
//! d^2 e^{-d} at fixed optical depth d = 2 beta pi M, peaking at 4/e^2.
//!
//! ```sh
//! cargo run --release --example transverse_limit
//! ```

use gradient_echo::network::{thin_limit_efficiency, transverse_efficiency};

fn main() {
    let d = 2.0;
    println!("optical depth d = {d} (the peak of d^2 e^-d)");
    println!("{:>8} {:>14} {:>14} {:>12}", "M", "finite stack", "thin limit", "rel gap");
    let thin = thin_limit_efficiency(d);
    for m in [1usize, 3, 10, 100, 1_000, 10_000] {
        let beta = d / (2.0 * std::f64::consts::PI * m as f64);
        let finite = transverse_efficiency(beta, m);
        println!("{m:>8} {finite:>14.9} {thin:>14.9} {:>12.2e}", (finite / thin - 1.0).abs());
    }
    println!(
        "\npeak value 4/e^2 = {:.12}; the gap closes as d^2/(12 M^2)",
        4.0 * (-2.0f64).exp()
    );
}
