//! The memory as a pair of beamsplitters: closed-form energy bookkeeping for
//! one storage/retrieval cycle, cross-checked against the brute-force path
//! enumeration.
//!
//! ```sh
//! cargo run --release --example beamsplitter_ledger
//! ```

use gradient_echo::network::{
    echo_report, path_sum_oracle, single_memory_ledger, NetworkSpec, ReflectionConvention,
    SplitterParams,
};

fn main() -> gradient_echo::Result<()> {
    println!("{:>6} {:>12} {:>12} {:>12} {:>8}", "beta", "transmitted", "echo", "residual", "sum");
    for beta in [0.05, 0.2, 0.5, 1.0, 2.0] {
        let (t, e, r) = single_memory_ledger(beta);
        println!("{beta:>6} {t:>12.6} {e:>12.6} {r:>12.6} {:>8.3}", t + e + r);
    }

    let spec = NetworkSpec::new(2, 3, SplitterParams::from_beta(0.2)?)?;
    println!("\ntwo cells, three flips, beta = 0.2 per cell:");
    println!("{:>4} {:>14} {:>14}", "p", "oracle |amp|^2", "closed form");
    let report = echo_report(&spec, 3)?;
    for p in 1..=3 {
        let amp = path_sum_oracle(&spec, p, ReflectionConvention::ImaginaryReflection)?;
        println!("{p:>4} {:>14.10} {:>14.10}", amp.norm_sqr(), report.echo_fractions[p - 1]);
    }
    println!(
        "transmitted {:.6}, residual after 3 echoes {:.6}",
        report.transmitted, report.residual
    );
    Ok(())
}
