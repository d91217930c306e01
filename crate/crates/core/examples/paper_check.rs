//! Recomputes every numeric claim the library pins and prints the table.
//!
//!     cargo run --release --example paper_check

fn main() -> lca_pego::Result<()> {
    let result = lca_pego::claims::paper_check()?;
    for c in &result.claims {
        println!(
            "{:<28} {:>14.8} {:?} {:<12} {}",
            c.id,
            c.computed,
            c.relation,
            c.expected,
            if c.pass { "PASS" } else { "FAIL" }
        );
    }
    println!("all claims hold: {}", result.pass);
    Ok(())
}
