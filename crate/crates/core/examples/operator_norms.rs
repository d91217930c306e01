//! Operator norm of a convolution on a finite group three ways: dense SVD,
//! sup of the transform, and the L¹ bound it never exceeds.
//!
//!     cargo run --example operator_norms

use lca_pego::groups::GroupModel;
use lca_pego::operator::{fourier_sup, make_operator, opnorm_exact};
use lca_pego::transform::{GroupFunction, Norm, Sampled};

fn main() -> lca_pego::Result<()> {
    let group = GroupModel::finite(&[16])?;
    let kernels = [
        ("g = δ₀ + δ₁ − δ₂", vec![(0, 1.0), (1, 1.0), (2, -1.0)]),
        ("nonnegative", vec![(0, 0.5), (3, 1.0), (7, 0.25)]),
        ("alternating", vec![(0, 1.0), (1, -1.0)]),
    ];
    println!(
        "{:<18} {:>10} {:>10} {:>10}",
        "kernel", "dense", "sup|f̂|", "‖f‖₁"
    );
    for (name, pairs) in kernels {
        let f = GroupFunction::from_pairs(group.clone(), &pairs)?;
        let dense = opnorm_exact(&make_operator(f.clone(), true)?)?;
        println!(
            "{name:<18} {dense:>10.6} {:>10.6} {:>10.6}",
            fourier_sup(&f, None)?,
            f.norm(Norm::L1)
        );
    }
    Ok(())
}
