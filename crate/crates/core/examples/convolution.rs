//! Convolution on a window with the mass lost to truncation, next to the
//! exact convolution on a cyclic group.
//!
//!     cargo run --example convolution

use lca_pego::groups::GroupModel;
use lca_pego::transform::{convolve, convolve_tracked, GroupFunction, Norm, Sampled};

fn main() -> lca_pego::Result<()> {
    let window = GroupModel::z_window(3)?;
    let f = GroupFunction::from_pairs(window.clone(), &[(0, 1.0), (1, 1.0), (2, -1.0)])?;
    let h = GroupFunction::from_pairs(window, &[(1, 1.0), (2, 1.0)])?;
    let c = convolve_tracked(&f, &h)?;
    let real: Vec<f64> = c.result.values().iter().map(|v| v.re).collect();
    println!("f⋆h on [−3, 3]   {real:?}");
    println!("truncation loss  {}", c.truncation_loss);
    println!(
        "Young: ‖f⋆h‖₁ = {} ≤ ‖f‖₁‖h‖₁ = {}",
        c.result.norm(Norm::L1),
        f.norm(Norm::L1) * h.norm(Norm::L1)
    );

    let cyclic = GroupModel::finite(&[7])?;
    let f = GroupFunction::from_real(cyclic.clone(), &[1.0, 1.0, -1.0, 0.0, 0.0, 0.0, 0.0])?;
    let h = GroupFunction::from_real(cyclic, &[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0])?;
    let real: Vec<f64> = convolve(&f, &h)?.values().iter().map(|v| v.re).collect();
    println!("f⋆h on ℤ/7 (wraps around)  {real:?}");
    Ok(())
}
