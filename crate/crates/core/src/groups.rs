//! Desk-scale models of locally compact abelian groups and their duals.
//!
//! Three group models are supported:
//!
//! * finite products `ℤ_{n_1} × … × ℤ_{n_d}` with counting measure,
//! * a symmetric window `{-N, …, N}` of `ℤ` with counting measure; functions
//!   are extended by zero outside the window,
//! * a uniform grid on `[-L, L]^d` modelling `ℝ^d`, weighted by cell volume.
//!
//! Every model is laid out as a row-major [`Lattice`] of integer coordinates.
//! Characters are evaluated with exact integer phase reduction, so
//! `χ(x + y) = χ(x)·χ(y)` holds to rounding.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{Error, Result};

/// One coordinate axis of a [`Lattice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Axis {
    pub len: usize,
    /// Integer coordinate stored at position 0.
    pub min: i64,
    /// Periodic axes wrap modulo `len`; the others read zero past their ends.
    pub periodic: bool,
}

impl Axis {
    fn periodic(len: usize) -> Self {
        Axis {
            len,
            min: 0,
            periodic: true,
        }
    }

    fn centered(len: usize) -> Self {
        Axis {
            len,
            min: -((len / 2) as i64),
            periodic: false,
        }
    }

    pub fn coord(&self, pos: usize) -> i64 {
        self.min + pos as i64
    }

    /// Storage position of an integer coordinate, if it lies on the axis.
    pub fn pos(&self, coord: i64) -> Option<usize> {
        if self.periodic {
            Some(coord.rem_euclid(self.len as i64) as usize)
        } else {
            let p = coord - self.min;
            (p >= 0 && (p as usize) < self.len).then_some(p as usize)
        }
    }

    /// Distance of a coordinate from the axis origin, in steps.
    pub fn radius(&self, coord: i64) -> usize {
        if self.periodic {
            let n = self.len as i64;
            let r = coord.rem_euclid(n);
            r.min(n - r) as usize
        } else {
            coord.unsigned_abs() as usize
        }
    }

    /// Largest [`Axis::radius`] attained on the axis.
    pub fn max_radius(&self) -> usize {
        if self.periodic {
            self.len / 2
        } else {
            self.coord(0)
                .unsigned_abs()
                .max(self.coord(self.len - 1).unsigned_abs()) as usize
        }
    }
}

/// Row-major grid of integer points shared by group and dual models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    axes: Vec<Axis>,
    strides: Vec<usize>,
    len: usize,
}

impl Lattice {
    pub fn new(axes: Vec<Axis>) -> Self {
        let mut strides = vec![1; axes.len()];
        for i in (0..axes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * axes[i + 1].len;
        }
        let len = axes.iter().map(|a| a.len).product();
        Lattice { axes, strides, len }
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dims(&self) -> usize {
        self.axes.len()
    }

    /// A lattice is compact when every axis wraps.
    pub fn is_compact(&self) -> bool {
        self.axes.iter().all(|a| a.periodic)
    }

    pub fn coords(&self, index: usize) -> Vec<i64> {
        self.axes
            .iter()
            .zip(&self.strides)
            .map(|(a, &s)| a.coord((index / s) % a.len))
            .collect()
    }

    pub fn index(&self, coords: &[i64]) -> Option<usize> {
        if coords.len() != self.axes.len() {
            return None;
        }
        let mut idx = 0;
        for ((a, &s), &c) in self.axes.iter().zip(&self.strides).zip(coords) {
            idx += a.pos(c)? * s;
        }
        Some(idx)
    }

    /// Index of the point `coords(index) + offset`, `None` when it leaves
    /// a non-periodic axis.
    pub fn shift(&self, index: usize, offset: &[i64]) -> Option<usize> {
        let mut idx = 0;
        for ((a, &s), &o) in self.axes.iter().zip(&self.strides).zip(offset) {
            let c = a.coord((index / s) % a.len) + o;
            idx += a.pos(c)? * s;
        }
        Some(idx)
    }

    /// Index of `coords(i) + sign·coords(j)`, computed without allocation.
    fn combine(&self, i: usize, j: usize, sign: i64) -> Option<usize> {
        let mut idx = 0;
        for (a, &s) in self.axes.iter().zip(&self.strides) {
            let ci = a.coord((i / s) % a.len);
            let cj = a.coord((j / s) % a.len);
            idx += a.pos(ci + sign * cj)? * s;
        }
        Some(idx)
    }

    /// Chebyshev distance of a point from the origin, in steps.
    pub fn radius(&self, index: usize) -> usize {
        self.axes
            .iter()
            .zip(&self.strides)
            .map(|(a, &s)| a.radius(a.coord((index / s) % a.len)))
            .max()
            .unwrap_or(0)
    }

    pub fn max_radius(&self) -> usize {
        self.axes.iter().map(Axis::max_radius).max().unwrap_or(0)
    }
}

/// Parameters of a group model, in the JSON layout of `--group`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupKind {
    #[serde(rename = "finite")]
    FiniteProduct {
        moduli: Vec<usize>,
    },
    ZWindow {
        half_width: usize,
    },
    RealGrid {
        dims: usize,
        half_extent: f64,
        points_per_axis: usize,
    },
}

/// Point of a group model, stored as integer coordinates.
///
/// Finite-product coordinates are reduced modulo their axis; window and grid
/// coordinates are centred on zero (grid point `j` sits at `j·step`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<i64>);

impl GroupElement {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        GroupElement(coords.into())
    }

    pub fn scalar(k: i64) -> Self {
        GroupElement(vec![k])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [k] => write!(f, "{k}"),
            cs => write!(f, "{cs:?}"),
        }
    }
}

/// A validated group model together with its Haar weight.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupModel {
    kind: GroupKind,
    lattice: Lattice,
    haar_weight: f64,
    step: f64,
}

fn checked_count(sizes: &[usize], cap: usize) -> Result<usize> {
    let mut n: usize = 1;
    for &s in sizes {
        n = n
            .checked_mul(s)
            .filter(|&n| n <= cap)
            .ok_or(Error::TooLarge {
                points: sizes.iter().fold(1usize, |acc, &s| acc.saturating_mul(s)),
                cap,
            })?;
    }
    Ok(n)
}

impl GroupModel {
    /// Validates `kind` against the point cap from the environment.
    pub fn new(kind: GroupKind) -> Result<Self> {
        Self::with_cap(kind, config::max_points())
    }

    pub fn with_cap(kind: GroupKind, cap: usize) -> Result<Self> {
        let (axes, haar_weight, step) = match &kind {
            GroupKind::FiniteProduct { moduli } => {
                if moduli.is_empty() {
                    return Err(Error::InvalidSpec("moduli list is empty".into()));
                }
                if let Some(pos) = moduli.iter().position(|&n| n == 0) {
                    return Err(Error::InvalidSpec(format!(
                        "modulus at position {pos} must be at least 1"
                    )));
                }
                let axes: Vec<Axis> = moduli.iter().map(|&n| Axis::periodic(n)).collect();
                (axes, 1.0, 1.0)
            }
            GroupKind::ZWindow { half_width } => {
                let len = half_width
                    .checked_mul(2)
                    .and_then(|n| n.checked_add(1))
                    .ok_or(Error::TooLarge {
                        points: usize::MAX,
                        cap,
                    })?;
                (vec![Axis::centered(len)], 1.0, 1.0)
            }
            GroupKind::RealGrid {
                dims,
                half_extent,
                points_per_axis,
            } => {
                if *dims == 0 {
                    return Err(Error::InvalidSpec("real grid needs dims >= 1".into()));
                }
                if !(half_extent.is_finite() && *half_extent > 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "half_extent must be positive and finite, got {half_extent}"
                    )));
                }
                if *points_per_axis == 0 || points_per_axis % 2 == 0 {
                    return Err(Error::InvalidSpec(format!(
                        "points_per_axis must be odd, got {points_per_axis}"
                    )));
                }
                let step = 2.0 * half_extent / *points_per_axis as f64;
                let axes = vec![Axis::centered(*points_per_axis); *dims];
                (axes, step.powi(*dims as i32), step)
            }
        };
        let sizes: Vec<usize> = axes.iter().map(|a| a.len).collect();
        checked_count(&sizes, cap)?;
        Ok(GroupModel {
            kind,
            lattice: Lattice::new(axes),
            haar_weight,
            step,
        })
    }

    pub fn finite(moduli: &[usize]) -> Result<Self> {
        Self::new(GroupKind::FiniteProduct {
            moduli: moduli.to_vec(),
        })
    }

    pub fn z_window(half_width: usize) -> Result<Self> {
        Self::new(GroupKind::ZWindow { half_width })
    }

    pub fn real_grid(dims: usize, half_extent: f64, points_per_axis: usize) -> Result<Self> {
        Self::new(GroupKind::RealGrid {
            dims,
            half_extent,
            points_per_axis,
        })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn haar_weight(&self) -> f64 {
        self.haar_weight
    }

    /// Distance between neighbouring points (1 on discrete models).
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn dims(&self) -> usize {
        self.lattice.dims()
    }

    pub fn is_compact(&self) -> bool {
        matches!(self.kind, GroupKind::FiniteProduct { .. })
    }

    pub fn is_discrete(&self) -> bool {
        !matches!(self.kind, GroupKind::RealGrid { .. })
    }

    pub fn half_width(&self) -> Option<usize> {
        match self.kind {
            GroupKind::ZWindow { half_width } => Some(half_width),
            _ => None,
        }
    }

    pub fn neutral(&self) -> GroupElement {
        GroupElement(vec![0; self.dims()])
    }

    pub fn neutral_index(&self) -> usize {
        self.lattice
            .index(&vec![0; self.dims()])
            .expect("every model contains its neutral element")
    }

    pub fn element(&self, index: usize) -> GroupElement {
        GroupElement(self.lattice.coords(index))
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.lattice.index(&x.0)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.index_of(x).is_some()
    }

    fn wrap(&self, coords: Vec<i64>) -> Option<GroupElement> {
        let idx = self.lattice.index(&coords)?;
        Some(self.element(idx))
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Option<GroupElement> {
        self.wrap(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
    }

    /// `x − y`; `None` marks a result outside the window or grid.
    pub fn translate(&self, x: &GroupElement, y: &GroupElement) -> Option<GroupElement> {
        self.wrap(x.0.iter().zip(&y.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        self.wrap(x.0.iter().map(|a| -a).collect())
            .expect("windows and grids are symmetric about zero")
    }

    pub fn add_index(&self, i: usize, j: usize) -> Option<usize> {
        self.lattice.combine(i, j, 1)
    }

    pub fn sub_index(&self, i: usize, j: usize) -> Option<usize> {
        self.lattice.combine(i, j, -1)
    }

    pub fn neg_index(&self, i: usize) -> usize {
        self.lattice
            .combine(self.neutral_index(), i, -1)
            .expect("windows and grids are symmetric about zero")
    }

    /// Physical coordinates of a point.
    pub fn position(&self, index: usize) -> Vec<f64> {
        self.lattice
            .coords(index)
            .into_iter()
            .map(|c| c as f64 * self.step)
            .collect()
    }

    /// Same model with every non-periodic axis doubled in half-width.
    ///
    /// The sum of two points of `self` always lies in the doubled model.
    pub fn doubled(&self) -> Option<GroupModel> {
        let kind = match &self.kind {
            GroupKind::FiniteProduct { .. } => return None,
            GroupKind::ZWindow { half_width } => GroupKind::ZWindow {
                half_width: 2 * half_width,
            },
            GroupKind::RealGrid {
                dims,
                half_extent,
                points_per_axis,
            } => GroupKind::RealGrid {
                dims: *dims,
                half_extent: half_extent * (2 * points_per_axis - 1) as f64
                    / *points_per_axis as f64,
                points_per_axis: 2 * points_per_axis - 1,
            },
        };
        // The doubled model shares the step, so it is built directly rather than
        // through the capped constructor.
        let axes: Vec<Axis> = self
            .lattice
            .axes()
            .iter()
            .map(|a| Axis::centered(2 * a.len - 1))
            .collect();
        Some(GroupModel {
            kind,
            lattice: Lattice::new(axes),
            haar_weight: self.haar_weight,
            step: self.step,
        })
    }

    /// Index in `other` of the point with the same coordinates.
    pub fn embed_index(&self, index: usize, other: &GroupModel) -> Option<usize> {
        other.lattice.index(&self.lattice.coords(index))
    }
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::FiniteProduct { moduli } => {
                let parts: Vec<String> = moduli.iter().map(|n| format!("Z_{n}")).collect();
                write!(f, "{}", parts.join(" x "))
            }
            GroupKind::ZWindow { half_width } => write!(f, "Z[-{half_width}, {half_width}]"),
            GroupKind::RealGrid {
                dims,
                half_extent,
                points_per_axis,
            } => write!(
                f,
                "R^{dims} on [-{half_extent}, {half_extent}] with {points_per_axis} points per axis"
            ),
        }
    }
}

/// Sample set of a dual group.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DualKind {
    /// Characters of a finite product, indexed like the group itself.
    FiniteDual { moduli: Vec<usize> },
    /// `α_j = j / M` on the circle `[0, 1)`, identified with the dual of `ℤ`.
    CircleGrid { grid_size: usize },
    /// Frequencies `ξ_k = k / (M·step)` per axis, `k` centred on zero.
    RealGridDual {
        dims: usize,
        half_extent: f64,
        points_per_axis: usize,
        grid_size: usize,
    },
}

/// Dual model paired with the group it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct DualModel {
    kind: DualKind,
    source: GroupModel,
    lattice: Lattice,
    /// Phase modulus per axis: `χ_k(x) = exp(2πi Σ k_i x_i / m_i)`.
    phase_moduli: Vec<usize>,
    weight: f64,
    step: f64,
}

/// Builds the dual of `g`; `grid_size` is required for windows and grids.
pub fn dual_of(g: &GroupModel, grid_size: Option<usize>) -> Result<DualModel> {
    let need_grid = || -> Result<usize> {
        match grid_size {
            None => Err(Error::UnconfiguredDualGrid),
            Some(m) if m < 2 => Err(Error::InvalidSpec(format!(
                "dual grid size must be at least 2, got {m}"
            ))),
            Some(m) => Ok(m),
        }
    };
    let cap = config::max_points();
    let (kind, axes, phase_moduli, weight, step) = match g.kind() {
        GroupKind::FiniteProduct { moduli } => (
            DualKind::FiniteDual {
                moduli: moduli.clone(),
            },
            moduli
                .iter()
                .map(|&n| Axis::periodic(n))
                .collect::<Vec<_>>(),
            moduli.clone(),
            1.0 / g.len() as f64,
            1.0,
        ),
        GroupKind::ZWindow { .. } => {
            let m = need_grid()?;
            (
                DualKind::CircleGrid { grid_size: m },
                vec![Axis::periodic(m)],
                vec![m],
                1.0 / m as f64,
                1.0 / m as f64,
            )
        }
        GroupKind::RealGrid {
            dims,
            half_extent,
            points_per_axis,
        } => {
            let m = need_grid()?;
            let dxi = 1.0 / (m as f64 * g.step());
            (
                DualKind::RealGridDual {
                    dims: *dims,
                    half_extent: *half_extent,
                    points_per_axis: *points_per_axis,
                    grid_size: m,
                },
                vec![Axis::centered(m); *dims],
                vec![m; *dims],
                dxi.powi(*dims as i32),
                dxi,
            )
        }
    };
    let sizes: Vec<usize> = axes.iter().map(|a| a.len).collect();
    checked_count(&sizes, cap)?;
    Ok(DualModel {
        kind,
        source: g.clone(),
        lattice: Lattice::new(axes),
        phase_moduli,
        weight,
        step,
    })
}

impl DualModel {
    pub fn kind(&self) -> &DualKind {
        &self.kind
    }

    pub fn source(&self) -> &GroupModel {
        &self.source
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Haar weight of one dual point.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Spacing of the dual samples (1 for finite duals).
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn phase_moduli(&self) -> &[usize] {
        &self.phase_moduli
    }

    /// Compact duals carry a normalized Haar measure.
    pub fn is_compact(&self) -> bool {
        !matches!(self.kind, DualKind::RealGridDual { .. })
    }

    pub fn grid_size(&self) -> Option<usize> {
        match self.kind {
            DualKind::CircleGrid { grid_size } | DualKind::RealGridDual { grid_size, .. } => {
                Some(grid_size)
            }
            DualKind::FiniteDual { .. } => None,
        }
    }

    /// Physical parameter of a dual point: `α ∈ [0,1)` on the circle,
    /// frequency per axis on a real grid, `k_i / n_i` on a finite dual.
    pub fn frequency(&self, index: usize) -> Vec<f64> {
        let coords = self.lattice.coords(index);
        match self.kind {
            DualKind::FiniteDual { .. } | DualKind::CircleGrid { .. } => coords
                .iter()
                .zip(&self.phase_moduli)
                .map(|(&k, &m)| k as f64 / m as f64)
                .collect(),
            DualKind::RealGridDual { .. } => coords.iter().map(|&k| k as f64 * self.step).collect(),
        }
    }

    pub fn character(&self, index: usize) -> Character {
        Character {
            dual_index: self.lattice.coords(index),
            phase_moduli: self.phase_moduli.clone(),
        }
    }
}

impl fmt::Display for DualModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DualKind::FiniteDual { .. } => write!(f, "dual of {}", self.source),
            DualKind::CircleGrid { grid_size } => write!(f, "circle grid with {grid_size} points"),
            DualKind::RealGridDual {
                dims, grid_size, ..
            } => {
                write!(
                    f,
                    "frequency grid of R^{dims} with {grid_size} points per axis"
                )
            }
        }
    }
}

/// A character `x ↦ exp(2πi Σ k_i x_i / m_i)`.
///
/// On a circle grid this is `χ_α(k) = e^{2πikα}` with `α = j/M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub dual_index: Vec<i64>,
    pub phase_moduli: Vec<usize>,
}

impl Character {
    pub fn eval(&self, x: &GroupElement) -> Complex64 {
        let turns: f64 = self
            .dual_index
            .iter()
            .zip(&x.0)
            .zip(&self.phase_moduli)
            .map(|((&k, &c), &m)| (k * c).rem_euclid(m as i64) as f64 / m as f64)
            .sum();
        Complex64::cis(TAU * turns.fract())
    }
}

/// `Σ_j F(j)·w` over the dual samples: the Haar integral on the dual.
pub fn dual_integrate(d: &DualModel, values: &[Complex64]) -> Result<Complex64> {
    if values.len() != d.len() {
        return Err(Error::ShapeMismatch {
            expected: d.len(),
            found: values.len(),
        });
    }
    Ok(values.iter().sum::<Complex64>() * d.weight())
}
