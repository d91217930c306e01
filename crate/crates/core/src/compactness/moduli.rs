//! Sup-based moduli of a family sampled on a [`Lattice`].
//!
//! Offsets and windows are measured in grid steps with the Chebyshev norm;
//! periodic axes use the cyclic distance. Samples shifted off a non-periodic
//! axis read zero.

use num_complex::Complex64;
use serde::Serialize;

use crate::groups::Lattice;

/// `ω(r)` entry of an equicontinuity table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusValue {
    pub radius: usize,
    pub value: f64,
}

/// `τ(m)` entry of an equivanishing table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowValue {
    pub window: usize,
    pub value: f64,
}

/// `max_f |f(x)|` at every point.
pub fn pointwise_max(members: &[&[Complex64]], len: usize) -> Vec<f64> {
    let mut out = vec![0.0f64; len];
    for f in members {
        for (o, v) in out.iter_mut().zip(f.iter()) {
            *o = o.max(v.norm());
        }
    }
    out
}

/// All integer offsets with Chebyshev norm at most `r` in `dims` dimensions.
pub fn offsets_within(dims: usize, r: usize) -> Vec<Vec<i64>> {
    let r = r as i64;
    let mut out = vec![Vec::new()];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-r..=r).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

fn chebyshev(offset: &[i64]) -> usize {
    offset
        .iter()
        .map(|c| c.unsigned_abs() as usize)
        .max()
        .unwrap_or(0)
}

/// `max_{f, x ∈ points} |f(x + y) − f(x)|` for one offset `y`.
fn offset_modulus(
    lattice: &Lattice,
    members: &[&[Complex64]],
    points: &[usize],
    offset: &[i64],
) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    let mut best = 0.0f64;
    for &x in points {
        let shifted = lattice.shift(x, offset);
        for f in members {
            let moved = shifted.map_or(zero, |s| f[s]);
            best = best.max((moved - f[x]).norm());
        }
    }
    best
}

/// `ω(r) = max_{f, x ∈ points, |y| ≤ r} |f(x+y) − f(x)|` for each radius.
///
/// The returned table is nondecreasing in `r` by construction.
pub fn equicontinuity_table(
    lattice: &Lattice,
    members: &[&[Complex64]],
    points: &[usize],
    radii: &[usize],
) -> Vec<RadiusValue> {
    let mut radii = radii.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let Some(&largest) = radii.last() else {
        return Vec::new();
    };
    let mut by_norm = vec![0.0f64; largest + 1];
    for offset in offsets_within(lattice.dims(), largest) {
        let n = chebyshev(&offset);
        if n == 0 {
            continue;
        }
        let m = offset_modulus(lattice, members, points, &offset);
        by_norm[n] = by_norm[n].max(m);
    }
    for i in 1..by_norm.len() {
        by_norm[i] = by_norm[i].max(by_norm[i - 1]);
    }
    radii
        .into_iter()
        .map(|radius| RadiusValue {
            radius,
            value: by_norm[radius],
        })
        .collect()
}

/// `τ(m) = max_f sup_{|x| > m} |f(x)|` for every `m` in `0..=max_radius`.
///
/// Nonincreasing in `m`, and zero at the largest window.
pub fn tail_table(lattice: &Lattice, pointwise: &[f64]) -> Vec<WindowValue> {
    let max_r = lattice.max_radius();
    let mut bucket = vec![0.0f64; max_r + 1];
    for (i, &v) in pointwise.iter().enumerate() {
        let r = lattice.radius(i);
        bucket[r] = bucket[r].max(v);
    }
    let mut tail = vec![0.0f64; max_r + 1];
    for m in (0..max_r).rev() {
        tail[m] = tail[m + 1].max(bucket[m + 1]);
    }
    tail.into_iter()
        .enumerate()
        .map(|(window, value)| WindowValue { window, value })
        .collect()
}

/// Radii reported in an equicontinuity table: 0, the powers of two up to
/// `max(requested, 8)` and `requested` itself, all capped at the carrier size.
pub fn default_radii(lattice: &Lattice, requested: usize) -> Vec<usize> {
    let cap = lattice.max_radius();
    let top = requested.max(8).min(cap);
    let mut radii = vec![0];
    let mut r = 1;
    while r <= top {
        radii.push(r);
        r *= 2;
    }
    radii.push(requested.min(cap));
    radii.sort_unstable();
    radii.dedup();
    radii
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupModel;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn offsets_count() {
        assert_eq!(offsets_within(1, 2).len(), 5);
        assert_eq!(offsets_within(2, 1).len(), 9);
        assert_eq!(offsets_within(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn jump_modulus_on_window() {
        let g = GroupModel::z_window(3).unwrap();
        // indicator of {0}
        let mut v = vec![c(0.0); 7];
        v[3] = c(1.0);
        let members = [v.as_slice()];
        let all: Vec<usize> = (0..7).collect();
        let t = equicontinuity_table(g.lattice(), &members, &all, &[0, 1, 2]);
        assert_eq!(t[0].value, 0.0);
        assert_eq!(t[1].value, 1.0);
        assert_eq!(t[2].value, 1.0);
    }

    #[test]
    fn offsets_leaving_carrier_read_zero() {
        let g = GroupModel::z_window(1).unwrap();
        let v = vec![c(2.0); 3];
        let t = equicontinuity_table(g.lattice(), &[v.as_slice()], &[2], &[1]);
        // x = 1, y = +1 leaves the window: |0 − 2|
        assert_eq!(t[0].value, 2.0);
    }

    #[test]
    fn tail_of_indicator() {
        let g = GroupModel::z_window(4).unwrap();
        let mut p = vec![0.0; 9];
        p[4 + 3] = 1.0;
        let t = tail_table(g.lattice(), &p);
        let values: Vec<f64> = t.iter().map(|w| w.value).collect();
        assert_eq!(values, vec![1.0, 1.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn periodic_radius_wraps() {
        let g = GroupModel::finite(&[8]).unwrap();
        let mut p = vec![0.0; 8];
        p[7] = 1.0; // distance 1 from 0
        let t = tail_table(g.lattice(), &p);
        assert_eq!(t[0].value, 1.0);
        assert_eq!(t[1].value, 0.0);
    }

    #[test]
    fn radii_schedule() {
        let g = GroupModel::z_window(64).unwrap();
        assert_eq!(default_radii(g.lattice(), 1), vec![0, 1, 2, 4, 8]);
        assert_eq!(default_radii(g.lattice(), 12), vec![0, 1, 2, 4, 8, 12]);
        let small = GroupModel::z_window(3).unwrap();
        assert_eq!(default_radii(small.lattice(), 1), vec![0, 1, 2]);
    }
}
