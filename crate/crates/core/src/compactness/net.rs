use num_complex::Complex64;
use serde::Serialize;

use crate::transform::{distance, Norm};

/// Greedy ε-net of a family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonNet {
    pub eps: f64,
    pub norm: Norm,
    /// Member indices selected into the net, in scan order.
    pub net: Vec<usize>,
    /// For every member, the net member it was assigned to.
    pub assignment: Vec<usize>,
}

impl EpsilonNet {
    pub fn covering_number(&self) -> usize {
        self.net.len()
    }
}

/// Scans members by index and keeps a member iff it is at distance `≥ eps`
/// from every member kept so far. Each skipped member is assigned to the
/// lowest-index net member within `eps`.
///
/// The net size is not monotone in `eps` for every input; reports flag it
/// when it happens instead of adjusting the count.
pub fn greedy_epsilon_net(
    members: &[&[Complex64]],
    weight: f64,
    eps: f64,
    norm: Norm,
) -> EpsilonNet {
    let mut net: Vec<usize> = Vec::new();
    let mut assignment = Vec::with_capacity(members.len());
    for (i, f) in members.iter().enumerate() {
        let near = net
            .iter()
            .copied()
            .find(|&j| distance(f, members[j], weight, norm) < eps);
        match near {
            Some(j) => assignment.push(j),
            None => {
                net.push(i);
                assignment.push(i);
            }
        }
    }
    EpsilonNet {
        eps,
        norm,
        net,
        assignment,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn member(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn orthogonal_indicators_are_all_kept() {
        let fs: Vec<Vec<Complex64>> = (0..5)
            .map(|i| {
                let mut v = vec![0.0; 5];
                v[i] = 1.0;
                member(&v)
            })
            .collect();
        let refs: Vec<&[Complex64]> = fs.iter().map(|v| v.as_slice()).collect();
        let net = greedy_epsilon_net(&refs, 1.0, 0.5, Norm::Linf);
        assert_eq!(net.covering_number(), 5);
        let net = greedy_epsilon_net(&refs, 1.0, 1.5, Norm::Linf);
        assert_eq!(net.covering_number(), 1);
    }

    #[test]
    fn greedy_size_is_not_monotone_in_eps() {
        let points = [
            (3., 0.),
            (2., 4.),
            (1., 5.),
            (0., 4.),
            (0., 0.),
            (6., 1.),
            (6., 4.),
        ];
        let fs: Vec<Vec<Complex64>> = points.iter().map(|&(a, b)| member(&[a, b])).collect();
        let refs: Vec<&[Complex64]> = fs.iter().map(|v| v.as_slice()).collect();
        let small = greedy_epsilon_net(&refs, 1.0, 5.0, Norm::L1);
        let large = greedy_epsilon_net(&refs, 1.0, 6.0, Norm::L1);
        assert_eq!((small.covering_number(), large.covering_number()), (2, 3));
    }

    #[test]
    fn duplicates_collapse() {
        let f = member(&[1.0, -2.0, 0.5]);
        let refs = [f.as_slice(), f.as_slice(), f.as_slice()];
        for eps in [1e-9, 0.1, 10.0] {
            let net = greedy_epsilon_net(&refs, 1.0, eps, Norm::L1);
            assert_eq!(net.covering_number(), 1);
            assert_eq!(net.assignment, vec![0, 0, 0]);
        }
    }
}
