//! Frequency-side compactness checks on two built-in families: a bounded set
//! in a finite-dimensional span (passes) and the shifts T_n g (fails on
//! equicontinuity of the transforms).
//!
//!     cargo run --release --example pego_families

use lca_pego::compactness::{oracle_cross_check, CheckSettings, Criteria, Generator};

fn main() -> lca_pego::Result<()> {
    let settings = CheckSettings::default();
    for (tag, count) in [("span_random", 64), ("modulations", 32)] {
        let fam = Generator::builtin(tag, count, 3, 42)?.generate(count)?;
        let cc = oracle_cross_check(&fam, &settings, Criteria::Pego)?;
        let report = &cc.report;
        println!("{tag} ({count} members)");
        for v in &report.verdicts {
            println!(
                "  {:<3} {:>12.6} vs {:<8} {}",
                v.criterion,
                v.value,
                v.threshold,
                if v.pass { "ok" } else { "FAIL" }
            );
        }
        println!("  N(ε) prefix  {:?}", cc.prefix.covering_numbers);
        println!("  N(ε) doubled {:?}", cc.doubled.covering_numbers);
        println!("  consistent   {}", cc.consistent);
    }
    Ok(())
}
