//! Norms of truncated convolution operators on growing windows approach
//! sup |ĝ| = √5 from below.
//!
//!     cargo run --release --example power_iteration

use lca_pego::compactness::paper_kernel;
use lca_pego::operator::{make_operator, opnorm_power_iteration};

fn main() -> lca_pego::Result<()> {
    println!(
        "{:>5} {:>12} {:>12} {:>6} {:>9}",
        "N", "estimate", "√5 − est", "iters", "residual"
    );
    for n in [16, 32, 64, 128, 256, 512] {
        let op = make_operator(paper_kernel(n)?, false)?;
        let run = opnorm_power_iteration(&op, 500, 42)?;
        println!(
            "{n:>5} {:>12.8} {:>12.3e} {:>6} {:>9.2e}{}",
            run.estimate,
            5f64.sqrt() - run.estimate,
            run.iterations,
            run.residual,
            if run.converged {
                ""
            } else {
                "  (not converged)"
            }
        );
    }
    Ok(())
}
