//! Desk-scale replay of the argument that equicontinuity plus equivanishing
//! force a uniform bound when some element escapes every compact set.

use num_complex::Complex64;
use serde::Serialize;

use super::{aa_check, moduli, CheckSettings, FunctionFamily};
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupKind, GroupModel};

/// Largest radius from the descending schedule `2^k, …, 2, 1` (grid steps)
/// at which every member moves by less than `eps` on `k`.
///
/// `None` when even one step is too coarse.
pub fn uniform_equicontinuity_on_compact(
    fam: &FunctionFamily,
    k: &[GroupElement],
    eps: f64,
) -> Result<Option<usize>> {
    let g = fam.group();
    let points = k
        .iter()
        .map(|x| {
            g.index_of(x)
                .ok_or_else(|| Error::InvalidSpec(format!("point {x} is outside {g}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let max = g.lattice().max_radius();
    if max == 0 {
        return Ok(None);
    }
    let mut schedule = vec![1usize];
    while schedule.last().unwrap() * 2 <= max {
        schedule.push(schedule.last().unwrap() * 2);
    }
    let samples: Vec<&[Complex64]> = fam.members().iter().map(|f| f.values()).collect();
    let table = moduli::equicontinuity_table(g.lattice(), &samples, &points, &schedule);
    Ok(table.iter().rev().find(|r| r.value < eps).map(|r| r.radius))
}

/// An element within `r` grid steps whose multiples leave every centred window.
pub fn sudakov_witness(carrier: &GroupModel, r: usize) -> Option<GroupElement> {
    if r == 0 {
        return None;
    }
    match carrier.kind() {
        GroupKind::FiniteProduct { .. } => None,
        GroupKind::ZWindow { .. } => Some(GroupElement::scalar(1)),
        GroupKind::RealGrid { dims, .. } => {
            let mut step = vec![0; *dims];
            step[0] = 1;
            Some(GroupElement::new(step))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SudakovBound {
    /// `n + 2`.
    pub bound: f64,
    /// Directly computed `max_f ‖f‖_∞`, for comparison.
    pub family_sup: f64,
    pub dominates: bool,
    /// Radius of the centred window `K` outside which every member is below 1.
    pub compact_window: usize,
    pub equicontinuity_radius: usize,
    pub witness: GroupElement,
    /// Smallest `n` with `n·x_* + K` disjoint from `K`.
    pub escape_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SudakovOutcome {
    Bound(SudakovBound),
    NotApplicable { reason: String },
}

impl SudakovOutcome {
    pub fn bound(&self) -> Option<&SudakovBound> {
        match self {
            SudakovOutcome::Bound(b) => Some(b),
            SudakovOutcome::NotApplicable { .. } => None,
        }
    }
}

fn not_applicable(reason: impl Into<String>) -> SudakovOutcome {
    SudakovOutcome::NotApplicable {
        reason: reason.into(),
    }
}

/// Explicit sup-norm bound derived only from equicontinuity and equivanishing.
///
/// Outside `K` every member is below 1. A point of `K` reaches the outside
/// after `n` witness steps, and each step changes the value by less than 1,
/// so `|f| < n + 1 ≤ n + 2` on `K` as well.
pub fn sudakov_bound(fam: &FunctionFamily, settings: &CheckSettings) -> Result<SudakovOutcome> {
    let g = fam.group();
    if g.is_compact() {
        return Ok(not_applicable("compact group: no element escapes"));
    }
    let aa = aa_check(fam, settings)?;
    for label in ["AA2", "AA3"] {
        if aa.verdict(label).is_some_and(|v| !v.pass) {
            return Ok(not_applicable(format!(
                "{label} fails at the configured thresholds"
            )));
        }
    }
    let Some(step) = sudakov_witness(g, 1) else {
        return Ok(not_applicable("no witness element"));
    };

    let lattice = g.lattice();
    let m = aa
        .equivanishing_tail
        .iter()
        .find(|w| w.value < 1.0)
        .map(|w| w.window)
        .expect("the tail vanishes at the largest window");
    let k: Vec<usize> = (0..g.len()).filter(|&i| lattice.radius(i) <= m).collect();

    let in_k = |c: &[i64]| c.iter().all(|x| x.unsigned_abs() as usize <= m);
    let disjoint = |n: i64| {
        k.iter().all(|&i| {
            let moved: Vec<i64> = lattice
                .coords(i)
                .iter()
                .zip(step.coords())
                .map(|(x, s)| x + n * s)
                .collect();
            !in_k(&moved)
        })
    };
    let n = (1..).find(|&n| disjoint(n)).expect("windows are bounded");

    // Every point visited by the chain x, x + x_*, …, x + n·x_* from K.
    let reach = m + n as usize;
    let chain: Vec<GroupElement> = (0..g.len())
        .filter(|&i| lattice.radius(i) <= reach)
        .map(|i| g.element(i))
        .collect();
    let radius = match uniform_equicontinuity_on_compact(fam, &chain, 1.0)? {
        Some(r) => r,
        None => return Ok(not_applicable("no radius keeps every step below 1")),
    };
    let Some(witness) = sudakov_witness(g, radius) else {
        return Ok(not_applicable(
            "no witness within the equicontinuity radius",
        ));
    };

    let bound = (n + 2) as f64;
    let family_sup = fam.sup_norm();
    Ok(SudakovOutcome::Bound(SudakovBound {
        bound,
        family_sup,
        dominates: bound >= family_sup,
        compact_window: m,
        equicontinuity_radius: radius,
        witness,
        escape_steps: n as usize,
    }))
}
