//! Greedy ε-nets and the covering numbers they produce.
//!
//!     cargo run --example epsilon_nets

use lca_pego::compactness::greedy_epsilon_net;
use lca_pego::transform::Norm;
use num_complex::Complex64;

fn main() {
    let points = [
        (3., 0.),
        (2., 4.),
        (1., 5.),
        (0., 4.),
        (0., 0.),
        (6., 1.),
        (6., 4.),
    ];
    let members: Vec<Vec<Complex64>> = points
        .iter()
        .map(|&(a, b)| vec![Complex64::new(a, 0.0), Complex64::new(b, 0.0)])
        .collect();
    let refs: Vec<&[Complex64]> = members.iter().map(|m| m.as_slice()).collect();

    for eps in [1.0, 2.0, 4.0, 5.0, 6.0, 8.0, 12.0] {
        let net = greedy_epsilon_net(&refs, 1.0, eps, Norm::L1);
        println!(
            "ε = {eps:>4}: N = {}  net {:?}",
            net.covering_number(),
            net.net
        );
    }
    // N(5) = 2 but N(6) = 3: the greedy scan is order dependent, so its size
    // can grow with ε.
}
