//! Replays the boundedness argument: a family that is equicontinuous and
//! vanishes uniformly at infinity is bounded by n + 2, where n is the number
//! of steps a witness needs to leave the compact window.
//!
//!     cargo run --release --example sudakov_bound

use lca_pego::claims::bound_replay_settings;
use lca_pego::compactness::{sudakov_bound, Generator, SudakovOutcome};

fn main() -> lca_pego::Result<()> {
    let settings = bound_replay_settings();
    for (tag, count) in [("gaussian_bumps", 8), ("indicator_shifts", 8)] {
        let fam = Generator::builtin(tag, count, 0, 0)?.generate(count)?;
        match sudakov_bound(&fam, &settings)? {
            SudakovOutcome::Bound(b) => println!(
                "{tag}: bound {} ≥ sup {:.4} (window {}, radius {}, witness {}, {} steps)",
                b.bound,
                b.family_sup,
                b.compact_window,
                b.equicontinuity_radius,
                b.witness,
                b.escape_steps
            ),
            SudakovOutcome::NotApplicable { reason } => println!("{tag}: not applicable: {reason}"),
        }
    }
    Ok(())
}
