//! Characters of a finite product and the orthogonality that makes the
//! transform invertible.
//!
//!     cargo run --example characters

use lca_pego::groups::{dual_of, GroupModel};
use lca_pego::transform::{fourier, inverse_fourier, GroupFunction};
use num_complex::Complex64;

fn main() -> lca_pego::Result<()> {
    let group = GroupModel::finite(&[3, 4])?;
    let dual = dual_of(&group, None)?;
    println!("{group}: {} elements, {dual}", group.len());

    // ⟨χ_j, χ_k⟩ = |G|·[j = k]
    let mut worst: f64 = 0.0;
    for j in 0..dual.len() {
        for k in 0..dual.len() {
            let (a, b) = (dual.character(j), dual.character(k));
            let inner: Complex64 = (0..group.len())
                .map(|i| {
                    let x = group.element(i);
                    a.eval(&x) * b.eval(&x).conj()
                })
                .sum();
            let expect = if j == k { group.len() as f64 } else { 0.0 };
            worst = worst.max((inner - expect).norm());
        }
    }
    println!("orthogonality defect {worst:.2e}");

    let x = group.element(5);
    let delta = GroupFunction::delta(group.clone(), &x)?;
    let dh = fourier(&delta, None)?;
    println!("δ at {x}: |δ̂| ranges over {:?}", minmax(dh.values()));
    let back = inverse_fourier(&dh)?;
    let err = back
        .values()
        .iter()
        .zip(delta.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("inverse transform error {err:.2e}");
    Ok(())
}

fn minmax(v: &[Complex64]) -> (f64, f64) {
    v.iter()
        .map(|z| z.norm())
        .fold((f64::INFINITY, 0.0), |(lo, hi), a| (lo.min(a), hi.max(a)))
}
