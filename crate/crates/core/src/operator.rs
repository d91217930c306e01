//! The convolution operator `Ψ_f : φ ↦ f⋆φ` on `ℓ²` of a group model and
//! its operator norm, computed three ways:
//!
//! * dense singular values of the materialized matrix (finite products),
//! * power iteration on `A*A` for the truncated Toeplitz matrix of a window,
//! * the Fourier formula `‖Ψ_f‖ = ‖f̂‖_∞`.
//!
//! On a window the truncated matrix is Toeplitz, never wrapped to a circulant:
//! wrapping would replace its spectrum by the circulant one.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{MATERIALIZE_CAP, TOLERANCES};
use crate::error::{Error, Result};
use crate::groups::{GroupKind, GroupModel};
use crate::transform::{convolve, fourier, fourier_at, involution, GroupFunction, Norm, Sampled};

/// `Ψ_f` for a kernel `f`, optionally with its dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionOperator {
    kernel: GroupFunction,
    adjoint_kernel: GroupFunction,
    matrix: Option<DMatrix<Complex64>>,
}

/// Builds `Ψ_f`; `materialize` also stores the dense matrix.
pub fn make_operator(f: GroupFunction, materialize: bool) -> Result<ConvolutionOperator> {
    let matrix = if materialize {
        Some(dense_matrix(&f)?)
    } else {
        None
    };
    Ok(ConvolutionOperator {
        adjoint_kernel: involution(&f),
        kernel: f,
        matrix,
    })
}

/// Dense matrix with entry `(x, y) = f(x − y)·w`, zero where `x − y` leaves
/// the model.
pub fn dense_matrix(f: &GroupFunction) -> Result<DMatrix<Complex64>> {
    let g = f.group();
    let n = g.len();
    if n > MATERIALIZE_CAP {
        return Err(Error::TooLarge {
            points: n,
            cap: MATERIALIZE_CAP,
        });
    }
    let w = g.haar_weight();
    let values = f.values();
    Ok(DMatrix::from_fn(n, n, |x, y| {
        g.sub_index(x, y)
            .map_or(Complex64::new(0.0, 0.0), |d| values[d] * w)
    }))
}

impl ConvolutionOperator {
    pub fn kernel(&self) -> &GroupFunction {
        &self.kernel
    }

    pub fn group(&self) -> &GroupModel {
        self.kernel.group()
    }

    pub fn matrix(&self) -> Option<&DMatrix<Complex64>> {
        self.matrix.as_ref()
    }

    /// Stored matrix, or a freshly built one.
    pub fn dense(&self) -> Result<DMatrix<Complex64>> {
        match &self.matrix {
            Some(m) => Ok(m.clone()),
            None => dense_matrix(&self.kernel),
        }
    }

    /// `Ψ_f(φ) = f⋆φ`.
    pub fn apply(&self, phi: &GroupFunction) -> Result<GroupFunction> {
        convolve(&self.kernel, phi)
    }

    /// `Ψ_f*(φ) = f*⋆φ`, the adjoint of the (truncated) operator.
    pub fn apply_adjoint(&self, phi: &GroupFunction) -> Result<GroupFunction> {
        convolve(&self.adjoint_kernel, phi)
    }
}

/// Largest singular value of the dense matrix. Finite products only.
pub fn opnorm_exact(op: &ConvolutionOperator) -> Result<f64> {
    if !matches!(op.group().kind(), GroupKind::FiniteProduct { .. }) {
        return Err(Error::WrongModel(format!(
            "dense spectral norm needs a finite product, got {}",
            op.group()
        )));
    }
    let m = op.dense()?;
    Ok(m.singular_values().iter().copied().fold(0.0, f64::max))
}

/// `‖f̂‖_∞`, on the dual grid of size `grid_size` for windows.
pub fn fourier_sup(f: &GroupFunction, grid_size: Option<usize>) -> Result<f64> {
    Ok(fourier(f, grid_size)?.norm(Norm::Linf))
}

/// `‖f‖₁ − ‖f̂‖_∞`; a positive value certifies that `Ψ` is not isometric at `f`.
pub fn isometry_gap(f: &GroupFunction, grid_size: Option<usize>) -> Result<f64> {
    Ok(f.norm(Norm::L1) - fourier_sup(f, grid_size)?)
}

/// Outcome of [`opnorm_power_iteration`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerIteration {
    /// `sqrt` of the final Rayleigh quotient of `A*A`.
    pub estimate: f64,
    /// `‖A*Av − λv‖ / (λ‖v‖)` for the final iterate.
    pub residual: f64,
    pub iterations: usize,
    /// `false` flags non-convergence: the residual stayed above the tolerance.
    pub converged: bool,
}

const MAX_PEAKS: usize = 8;
const START_PERTURBATION: f64 = 1e-3;

/// Frequencies (in [`crate::groups::DualModel::frequency`] units) where `|f̂|`
/// attains its maximum.
pub fn spectral_peaks(f: &GroupFunction) -> Result<Vec<Vec<f64>>> {
    match f.group().kind() {
        GroupKind::FiniteProduct { .. } => {
            let fh = fourier(f, None)?;
            let top = fh.norm(Norm::Linf);
            Ok((0..fh.values().len())
                .filter(|&i| fh.values()[i].norm() >= top * (1.0 - 1e-9))
                .take(MAX_PEAKS)
                .map(|i| fh.dual().frequency(i))
                .collect())
        }
        GroupKind::ZWindow { .. } => window_peaks(f),
        GroupKind::RealGrid { .. } => Err(Error::WrongModel(
            "spectral peaks are computed on finite products and windows".into(),
        )),
    }
}

fn window_peaks(f: &GroupFunction) -> Result<Vec<Vec<f64>>> {
    let n = f.group().len();
    let m = (16 * n).next_power_of_two().max(64);
    let fh = fourier(f, Some(m))?;
    let mags: Vec<f64> = fh.values().iter().map(|v| v.norm()).collect();
    let top = mags.iter().copied().fold(0.0, f64::max);
    let mut candidates: Vec<usize> = (0..m)
        .filter(|&j| {
            let prev = mags[(j + m - 1) % m];
            let next = mags[(j + 1) % m];
            mags[j] >= prev && mags[j] >= next && mags[j] >= top * (1.0 - 1e-6)
        })
        .collect();
    candidates.sort_by(|a, b| mags[*b].total_cmp(&mags[*a]));

    let abs_at = |alpha: f64| fourier_at(f, &[alpha]).map(|v| v.norm());
    let mut peaks: Vec<(f64, f64)> = Vec::new();
    for j in candidates {
        let centre = j as f64 / m as f64;
        let (alpha, value) = golden_max(&abs_at, centre - 1.0 / m as f64, centre + 1.0 / m as f64)?;
        let alpha = alpha.rem_euclid(1.0);
        let min_sep = 1.0 / (2.0 * n as f64);
        let near = |p: &(f64, f64)| {
            let d = (p.0 - alpha).rem_euclid(1.0);
            d.min(1.0 - d) < min_sep
        };
        if !peaks.iter().any(near) {
            peaks.push((alpha, value));
        }
        if peaks.len() == MAX_PEAKS {
            break;
        }
    }
    let best = peaks.iter().map(|p| p.1).fold(0.0, f64::max);
    Ok(peaks
        .into_iter()
        .filter(|p| p.1 >= best * (1.0 - 1e-6))
        .map(|p| vec![p.0])
        .collect())
}

fn golden_max(h: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut hc, mut hd) = (h(c)?, h(d)?);
    for _ in 0..80 {
        if hc >= hd {
            b = d;
            d = c;
            hd = hc;
            c = b - ratio * (b - a);
            hc = h(c)?;
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + ratio * (b - a);
            hd = h(d)?;
        }
    }
    let x = (a + b) / 2.0;
    Ok((x, h(x)?))
}

/// Start vector concentrated near the maximizers of `|f̂|`: the characters at
/// the spectral peaks, tapered on windows by the lowest sine mode, plus a
/// small seeded complex perturbation.
fn start_vector(f: &GroupFunction, seed: u64) -> Result<Vec<Complex64>> {
    let g = f.group();
    let n = g.len();
    let peaks = spectral_peaks(f)?;
    let envelope = |i: usize| -> f64 {
        match g.kind() {
            GroupKind::ZWindow { half_width } => {
                let k = g.element(i).0[0];
                (PI * (k + *half_width as i64 + 1) as f64 / (n + 1) as f64).sin()
            }
            _ => 1.0,
        }
    };
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| {
            let pos = g.position(i);
            let wave: Complex64 = peaks
                .iter()
                .map(|p| {
                    let turns: f64 = p.iter().zip(&pos).map(|(a, b)| a * b).sum();
                    Complex64::cis(TAU * turns)
                })
                .sum();
            wave * envelope(i)
        })
        .collect();
    normalize(&mut v);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut noise: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    normalize(&mut noise);
    for (a, b) in v.iter_mut().zip(&noise) {
        *a += b * START_PERTURBATION;
    }
    normalize(&mut v);
    Ok(v)
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = l2(v);
    if n > 0.0 {
        v.iter_mut().for_each(|z| *z /= n);
    }
}

/// Power iteration on `A*A` for the (truncated) operator matrix `A`.
///
/// Stops as soon as the relative residual reaches the convergence tolerance
/// or after `iterations` steps; non-convergence is reported, not raised.
pub fn opnorm_power_iteration(
    op: &ConvolutionOperator,
    iterations: usize,
    seed: u64,
) -> Result<PowerIteration> {
    if iterations == 0 {
        return Err(Error::InvalidSpec(
            "power iteration needs at least one step".into(),
        ));
    }
    if matches!(op.group().kind(), GroupKind::RealGrid { .. }) {
        return Err(Error::WrongModel(
            "power iteration runs on finite products and windows".into(),
        ));
    }
    let group = op.group().clone();
    let tol = TOLERANCES.power_residual;
    if op.kernel().is_zero() {
        return Ok(PowerIteration {
            estimate: 0.0,
            residual: 0.0,
            iterations: 1,
            converged: true,
        });
    }

    let mut v = start_vector(op.kernel(), seed)?;
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    let mut used = 0;
    for it in 1..=iterations {
        used = it;
        let phi = GroupFunction::new(group.clone(), v.clone())?;
        let w = op.apply_adjoint(&op.apply(&phi)?)?.into_values();
        lambda = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (a.conj() * b).re)
            .sum::<f64>();
        let w_norm = l2(&w);
        if lambda <= 0.0 || w_norm == 0.0 {
            // v lies in the kernel of A
            lambda = lambda.max(0.0);
            residual = w_norm;
            break;
        }
        let r: Vec<Complex64> = w.iter().zip(&v).map(|(a, b)| a - b * lambda).collect();
        residual = l2(&r) / (lambda * l2(&v));
        if residual <= tol {
            break;
        }
        v = w.into_iter().map(|z| z / w_norm).collect();
    }
    Ok(PowerIteration {
        estimate: lambda.sqrt(),
        residual,
        iterations: used,
        converged: residual <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupElement;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn delta_gives_identity() {
        let z4 = GroupModel::finite(&[4]).unwrap();
        let d = GroupFunction::delta(z4, &GroupElement::scalar(0)).unwrap();
        let op = make_operator(d, true).unwrap();
        assert_eq!(op.matrix().unwrap(), &DMatrix::<Complex64>::identity(4, 4));
        assert!((opnorm_exact(&op).unwrap() - 1.0).abs() < 1e-12);
        let p = opnorm_power_iteration(&op, 1, 42).unwrap();
        assert_eq!(p.iterations, 1);
        assert!((p.estimate - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shift_kernel_is_cyclic_permutation() {
        let z4 = GroupModel::finite(&[4]).unwrap();
        let d1 = GroupFunction::delta(z4, &GroupElement::scalar(1)).unwrap();
        let m = dense_matrix(&d1).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                let expect = if x == (y + 1) % 4 { 1.0 } else { 0.0 };
                assert_eq!(m[(x, y)], c(expect));
            }
        }
    }

    #[test]
    fn materialization_cap() {
        let big = GroupFunction::zeros(GroupModel::finite(&[4097]).unwrap());
        assert!(matches!(
            make_operator(big, true),
            Err(Error::TooLarge { points: 4097, .. })
        ));
    }

    #[test]
    fn exact_route_rejects_windows() {
        let g = GroupFunction::zeros(GroupModel::z_window(3).unwrap());
        let op = make_operator(g, false).unwrap();
        assert!(matches!(opnorm_exact(&op), Err(Error::WrongModel(_))));
    }

    #[test]
    fn power_iteration_rejects_zero_budget() {
        let g = GroupFunction::zeros(GroupModel::z_window(3).unwrap());
        let op = make_operator(g, false).unwrap();
        assert!(opnorm_power_iteration(&op, 0, 1).is_err());
    }

    #[test]
    fn isometry_gap_examples() {
        let w = GroupModel::z_window(8).unwrap();
        let g = GroupFunction::from_pairs(w.clone(), &[(0, 1.0), (1, 1.0), (2, -1.0)]).unwrap();
        let gap = isometry_gap(&g, Some(4096)).unwrap();
        assert!((gap - (3.0 - 5f64.sqrt())).abs() < 1e-6);
        let d = GroupFunction::delta(w, &GroupElement::scalar(0)).unwrap();
        assert!(isometry_gap(&d, Some(64)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn peaks_of_paper_function() {
        let w = GroupModel::z_window(16).unwrap();
        let g = GroupFunction::from_pairs(w, &[(0, 1.0), (1, 1.0), (2, -1.0)]).unwrap();
        let mut peaks: Vec<f64> = spectral_peaks(&g)
            .unwrap()
            .into_iter()
            .map(|p| p[0])
            .collect();
        peaks.sort_by(f64::total_cmp);
        assert_eq!(peaks.len(), 2);
        // a flat maximum pins its location only to about sqrt(machine epsilon)
        assert!((peaks[0] - 0.25).abs() < 1e-6);
        assert!((peaks[1] - 0.75).abs() < 1e-6);
    }
}
