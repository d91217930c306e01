//! Functions on group and dual models and the operations acting on them:
//! Fourier transform and its inverse, convolution, involution, translation
//! and weighted `L^p` norms.
//!
//! Conventions: `f̂(χ) = Σ_x f(x)·conj(χ(x))·w` with the group's Haar weight
//! `w`, and `f(x) = Σ_χ F(χ)·χ(x)·w_dual` for the inverse. Transforms are
//! direct sums evaluated axis by axis, so they are exact up to rounding on
//! finite products and are trigonometric-polynomial evaluations on dual grids.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{dual_of, DualModel, GroupElement, GroupModel};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn check_values(expected: usize, values: &[Complex64]) -> Result<()> {
    if values.len() != expected {
        return Err(Error::ShapeMismatch {
            expected,
            found: values.len(),
        });
    }
    if let Some(i) = values
        .iter()
        .position(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(Error::NonFinite(i));
    }
    Ok(())
}

/// Weighted `L^p` norm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    L2,
    Linf,
}

/// Anything sampled on a weighted point set.
pub trait Sampled {
    fn samples(&self) -> &[Complex64];
    /// Measure of a single sample point.
    fn point_weight(&self) -> f64;

    fn norm(&self, p: Norm) -> f64 {
        norm(self.samples(), self.point_weight(), p)
    }
}

/// Weighted `L^p` norm of raw samples; the weight is ignored for `Linf`.
pub fn norm(values: &[Complex64], weight: f64, p: Norm) -> f64 {
    match p {
        Norm::L1 => values.iter().map(|v| v.norm()).sum::<f64>() * weight,
        Norm::L2 => (values.iter().map(|v| v.norm_sqr()).sum::<f64>() * weight).sqrt(),
        Norm::Linf => values.iter().map(|v| v.norm()).fold(0.0, f64::max),
    }
}

/// Weighted distance `‖a − b‖_p` between two sample vectors of equal length.
pub fn distance(a: &[Complex64], b: &[Complex64], weight: f64, p: Norm) -> f64 {
    let diffs = a.iter().zip(b).map(|(x, y)| (x - y).norm());
    match p {
        Norm::L1 => diffs.sum::<f64>() * weight,
        Norm::L2 => (diffs.map(|d| d * d).sum::<f64>() * weight).sqrt(),
        Norm::Linf => diffs.fold(0.0, f64::max),
    }
}

/// Complex function on the points of a group model.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    group: GroupModel,
    values: Vec<Complex64>,
    name: Option<String>,
}

impl GroupFunction {
    pub fn new(group: GroupModel, values: Vec<Complex64>) -> Result<Self> {
        check_values(group.len(), &values)?;
        Ok(GroupFunction {
            group,
            values,
            name: None,
        })
    }

    pub fn from_real(group: GroupModel, values: &[f64]) -> Result<Self> {
        Self::new(
            group,
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    pub fn zeros(group: GroupModel) -> Self {
        let values = vec![ZERO; group.len()];
        GroupFunction {
            group,
            values,
            name: None,
        }
    }

    /// Samples `f(index, element)` at every point.
    pub fn from_fn(
        group: GroupModel,
        mut f: impl FnMut(usize, &GroupElement) -> Complex64,
    ) -> Result<Self> {
        let values = (0..group.len()).map(|i| f(i, &group.element(i))).collect();
        Self::new(group, values)
    }

    /// Point mass with value 1 at `x`.
    pub fn delta(group: GroupModel, x: &GroupElement) -> Result<Self> {
        Self::indicator(group, std::slice::from_ref(x))
    }

    pub fn indicator(group: GroupModel, points: &[GroupElement]) -> Result<Self> {
        let mut f = Self::zeros(group);
        for x in points {
            let i = f
                .group
                .index_of(x)
                .ok_or_else(|| Error::InvalidSpec(format!("point {x} is not in {}", f.group)))?;
            f.values[i] = Complex64::new(1.0, 0.0);
        }
        Ok(f)
    }

    /// Function on a one-dimensional model given by `(coordinate, value)` pairs,
    /// zero elsewhere.
    pub fn from_pairs(group: GroupModel, pairs: &[(i64, f64)]) -> Result<Self> {
        let mut f = Self::zeros(group);
        for &(k, v) in pairs {
            let i = f
                .group
                .index_of(&GroupElement::scalar(k))
                .ok_or_else(|| Error::InvalidSpec(format!("point {k} is not in {}", f.group)))?;
            f.values[i] = Complex64::new(v, 0.0);
        }
        Ok(f)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Value at `x`, zero when `x` lies outside the model.
    pub fn at(&self, x: &GroupElement) -> Complex64 {
        self.group.index_of(x).map_or(ZERO, |i| self.values[i])
    }

    pub fn scaled(&self, a: Complex64) -> GroupFunction {
        GroupFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * a).collect(),
            name: None,
        }
    }

    pub fn plus(&self, other: &GroupFunction) -> Result<GroupFunction> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
            name: None,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == ZERO)
    }
}

impl Sampled for GroupFunction {
    fn samples(&self) -> &[Complex64] {
        &self.values
    }

    fn point_weight(&self) -> f64 {
        self.group.haar_weight()
    }
}

/// Complex function on the sample points of a dual model.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFunction {
    dual: DualModel,
    values: Vec<Complex64>,
    name: Option<String>,
}

impl DualFunction {
    pub fn new(dual: DualModel, values: Vec<Complex64>) -> Result<Self> {
        check_values(dual.len(), &values)?;
        Ok(DualFunction {
            dual,
            values,
            name: None,
        })
    }

    pub fn constant(dual: DualModel, c: Complex64) -> Self {
        let values = vec![c; dual.len()];
        DualFunction {
            dual,
            values,
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn dual(&self) -> &DualModel {
        &self.dual
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Haar integral over the dual samples.
    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.dual.weight()
    }

    /// Index of the first sample attaining `max |F|`.
    pub fn argmax_abs(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.values.iter().enumerate() {
            if v.norm() > self.values[best].norm() {
                best = i;
            }
        }
        best
    }
}

impl Sampled for DualFunction {
    fn samples(&self) -> &[Complex64] {
        &self.values
    }

    fn point_weight(&self) -> f64 {
        self.dual.weight()
    }
}

/// One axis of a separable character sum: `out[k] = Σ_j in[j]·e^{±2πi k j / m}`.
struct AxisMap<'a> {
    in_coords: &'a [i64],
    out_coords: &'a [i64],
    modulus: usize,
}

fn separable_sum(input: &[Complex64], maps: &[AxisMap<'_>], sign: f64) -> Vec<Complex64> {
    let mut dims: Vec<usize> = maps.iter().map(|m| m.in_coords.len()).collect();
    let mut data = input.to_vec();
    for (a, map) in maps.iter().enumerate() {
        let m = map.modulus as i64;
        let roots: Vec<Complex64> = (0..map.modulus)
            .map(|r| Complex64::cis(sign * TAU * r as f64 / map.modulus as f64))
            .collect();
        let outer: usize = dims[..a].iter().product();
        let inner: usize = dims[a + 1..].iter().product();
        let n_in = dims[a];
        let n_out = map.out_coords.len();
        let out_start = map.out_coords[0];
        let mut out = vec![ZERO; outer * n_out * inner];
        for o in 0..outer {
            for (jj, &xj) in map.in_coords.iter().enumerate() {
                let xr = xj.rem_euclid(m);
                let src = &data[(o * n_in + jj) * inner..(o * n_in + jj + 1) * inner];
                if src.iter().all(|v| *v == ZERO) {
                    continue;
                }
                let mut r = (out_start.rem_euclid(m) * xr) % m;
                for kk in 0..n_out {
                    debug_assert_eq!(r, (map.out_coords[kk] * xj).rem_euclid(m));
                    let w = roots[r as usize];
                    let dst = &mut out[(o * n_out + kk) * inner..(o * n_out + kk + 1) * inner];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d += w * s;
                    }
                    r += xr;
                    if r >= m {
                        r -= m;
                    }
                }
            }
        }
        dims[a] = n_out;
        data = out;
    }
    data
}

fn axis_coords(axes: &[crate::groups::Axis]) -> Vec<Vec<i64>> {
    axes.iter()
        .map(|a| (0..a.len).map(|p| a.coord(p)).collect())
        .collect()
}

/// Fourier transform onto an explicit dual model.
pub fn fourier_on(f: &GroupFunction, dual: &DualModel) -> Result<DualFunction> {
    if dual.source() != f.group() {
        return Err(Error::GroupMismatch);
    }
    let g_coords = axis_coords(f.group().lattice().axes());
    let d_coords = axis_coords(dual.lattice().axes());
    let maps: Vec<AxisMap<'_>> = g_coords
        .iter()
        .zip(&d_coords)
        .zip(dual.phase_moduli())
        .map(|((i, o), &m)| AxisMap {
            in_coords: i,
            out_coords: o,
            modulus: m,
        })
        .collect();
    let w = f.group().haar_weight();
    let values = separable_sum(f.values(), &maps, -1.0)
        .into_iter()
        .map(|v| v * w)
        .collect();
    let mut out = DualFunction::new(dual.clone(), values)?;
    out.name = f.name.as_ref().map(|n| format!("{n}^"));
    Ok(out)
}

/// Fourier transform; `grid_size` selects the dual grid for windows and grids.
pub fn fourier(f: &GroupFunction, grid_size: Option<usize>) -> Result<DualFunction> {
    let dual = dual_of(f.group(), grid_size)?;
    fourier_on(f, &dual)
}

/// `f̂` at an arbitrary frequency, in the units of [`DualModel::frequency`].
pub fn fourier_at(f: &GroupFunction, frequency: &[f64]) -> Result<Complex64> {
    let g = f.group();
    if frequency.len() != g.dims() {
        return Err(Error::ShapeMismatch {
            expected: g.dims(),
            found: frequency.len(),
        });
    }
    let mut acc = ZERO;
    for (i, v) in f.values().iter().enumerate() {
        if *v == ZERO {
            continue;
        }
        let turns: f64 = g
            .position(i)
            .iter()
            .zip(frequency)
            .map(|(x, xi)| x * xi)
            .sum();
        acc += v * Complex64::cis(-TAU * turns);
    }
    Ok(acc * g.haar_weight())
}

/// Inverse transform back onto the source group of `F`'s dual model.
pub fn inverse_fourier(big_f: &DualFunction) -> Result<GroupFunction> {
    let dual = big_f.dual();
    let g = dual.source();
    let g_coords = axis_coords(g.lattice().axes());
    let d_coords = axis_coords(dual.lattice().axes());
    let maps: Vec<AxisMap<'_>> = d_coords
        .iter()
        .zip(&g_coords)
        .zip(dual.phase_moduli())
        .map(|((i, o), &m)| AxisMap {
            in_coords: i,
            out_coords: o,
            modulus: m,
        })
        .collect();
    let w = dual.weight();
    let values = separable_sum(big_f.values(), &maps, 1.0)
        .into_iter()
        .map(|v| v * w)
        .collect();
    GroupFunction::new(g.clone(), values)
}

/// Convolution result with the mass lost to window truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct Convolution {
    pub result: GroupFunction,
    /// `L¹` mass of the untruncated convolution lying outside the window.
    /// Always zero on finite products.
    pub truncation_loss: f64,
}

fn nonzero(values: &[Complex64]) -> Vec<(usize, Complex64)> {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != ZERO)
        .map(|(i, v)| (i, *v))
        .collect()
}

/// `(f⋆g)(x) = Σ_y f(x−y)·g(y)·w`, truncated to the model of `f` and `g`.
pub fn convolve(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    Ok(convolve_tracked(f, g)?.result)
}

/// [`convolve`] that also reports the truncation loss, measured on the
/// doubled window where the untruncated result always fits.
pub fn convolve_tracked(f: &GroupFunction, g: &GroupFunction) -> Result<Convolution> {
    if f.group() != g.group() {
        return Err(Error::GroupMismatch);
    }
    let group = f.group();
    let w = group.haar_weight();
    let nz_f = nonzero(f.values());
    let nz_g = nonzero(g.values());

    let Some(doubled) = group.doubled() else {
        let mut out = vec![ZERO; group.len()];
        for &(a, fa) in &nz_f {
            for &(b, gb) in &nz_g {
                let s = group.add_index(a, b).expect("finite products are closed");
                out[s] += fa * gb;
            }
        }
        out.iter_mut().for_each(|v| *v *= w);
        return Ok(Convolution {
            result: GroupFunction::new(group.clone(), out)?,
            truncation_loss: 0.0,
        });
    };

    let embed = |i: usize| {
        group
            .embed_index(i, &doubled)
            .expect("window embeds in its double")
    };
    let nz_g: Vec<(usize, Complex64)> = nz_g.into_iter().map(|(b, v)| (embed(b), v)).collect();
    let mut full = vec![ZERO; doubled.len()];
    for &(a, fa) in &nz_f {
        let ea = embed(a);
        for &(eb, gb) in &nz_g {
            let s = doubled
                .add_index(ea, eb)
                .expect("sums of window points lie in the doubled window");
            full[s] += fa * gb;
        }
    }
    let mut inside = vec![false; doubled.len()];
    let mut out = Vec::with_capacity(group.len());
    for i in 0..group.len() {
        let e = embed(i);
        inside[e] = true;
        out.push(full[e] * w);
    }
    let truncation_loss = full
        .iter()
        .zip(&inside)
        .filter(|(_, &inside)| !inside)
        .map(|(v, _)| v.norm() * w)
        .sum();
    Ok(Convolution {
        result: GroupFunction::new(group.clone(), out)?,
        truncation_loss,
    })
}

/// `f*(x) = conj(f(−x))`.
pub fn involution(f: &GroupFunction) -> GroupFunction {
    let g = f.group();
    let values = (0..g.len())
        .map(|i| f.values[g.neg_index(i)].conj())
        .collect();
    GroupFunction {
        group: g.clone(),
        values,
        name: f.name.as_ref().map(|n| format!("{n}*")),
    }
}

/// `(T_y f)(x) = f(x − y)`; on windows, values shifted out are dropped.
pub fn translate_fn(f: &GroupFunction, y: &GroupElement) -> Result<GroupFunction> {
    let g = f.group();
    let yi = g
        .index_of(y)
        .ok_or_else(|| Error::InvalidSpec(format!("shift {y} is not in {g}")))?;
    let values = (0..g.len())
        .map(|i| g.sub_index(i, yi).map_or(ZERO, |j| f.values[j]))
        .collect();
    Ok(GroupFunction {
        group: g.clone(),
        values,
        name: None,
    })
}
