//! Space-side compactness: indicator shifts are bounded and equicontinuous
//! on ℤ but their mass escapes every finite window.
//!
//!     cargo run --example arzela_ascoli

use lca_pego::compactness::{aa_check, CheckSettings, Generator};

fn main() -> lca_pego::Result<()> {
    let fam = Generator::builtin("indicator_shifts", 16, 0, 0)?.generate(16)?;
    let report = aa_check(&fam, &CheckSettings::default())?;
    println!("carrier {}", report.carrier);
    for v in &report.verdicts {
        println!("{:<4} value {:<8} pass {}", v.criterion, v.value, v.pass);
    }
    println!("tail τ(m):");
    for t in report.equivanishing_tail.iter().step_by(4) {
        println!("  m = {:>2}  τ = {}", t.window, t.value);
    }
    for c in &report.covering_numbers {
        println!("N({}) = {}", c.eps, c.covering_number);
    }
    Ok(())
}
