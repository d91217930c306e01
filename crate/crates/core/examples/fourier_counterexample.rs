//! The kernel g = δ₀ + δ₁ − δ₂ on ℤ: ‖g‖₁ = 3 but sup |ĝ| = √5, so the
//! convolution operator is not an isometry from L¹.
//!
//!     cargo run --example fourier_counterexample

use lca_pego::compactness::paper_kernel;
use lca_pego::operator::isometry_gap;
use lca_pego::transform::{fourier, fourier_at, Norm, Sampled};

fn main() -> lca_pego::Result<()> {
    let g = paper_kernel(8)?;
    let gh = fourier(&g, Some(4096))?;
    let peak = gh.argmax_abs();

    println!("carrier        {}", g.group());
    println!("‖g‖₁           {:.12}", g.norm(Norm::L1));
    println!(
        "sup |ĝ| (grid) {:.12}  at α = {}",
        gh.norm(Norm::Linf),
        gh.dual().frequency(peak)[0]
    );
    println!("|ĝ(1/4)|       {:.12}", fourier_at(&g, &[0.25])?.norm());
    println!("√5             {:.12}", 5f64.sqrt());
    println!("isometry gap   {:.12}", isometry_gap(&g, Some(4096))?);
    Ok(())
}
