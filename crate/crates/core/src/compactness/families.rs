use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FunctionFamily;
use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupKind, GroupModel};
use crate::transform::{translate_fn, GroupFunction};

/// Size of the coefficient design `span_random` draws from.
const SPAN_DESIGN: usize = 16;
/// Carrier half-width of `span_random`.
const SPAN_HALF_WIDTH: usize = 16;

/// Parametrized family whose first members a [`FunctionFamily`] samples.
///
/// Every generator keeps its carrier fixed, so prefixes of any length are
/// directly comparable.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// `𝟙_{n}` for `n = 1, 2, …`.
    IndicatorShifts { group: GroupModel },
    /// `T_n base` for `n = 0, 1, …`; on the dual side these are modulations of
    /// the transform of `base`.
    Modulations { base: GroupFunction },
    /// Members of a fixed span of Gaussians, with coefficients drawn in
    /// shuffled blocks from a seeded finite design.
    SpanRandom {
        group: GroupModel,
        dim: usize,
        seed: u64,
    },
    /// `e^{−|x − c_j|²}` with centres `c_j = j·spacing` along the first axis.
    GaussianBumps { group: GroupModel, spacing: f64 },
}

impl Generator {
    pub const TAGS: [&'static str; 4] = [
        "indicator_shifts",
        "modulations",
        "span_random",
        "gaussian_bumps",
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Generator::IndicatorShifts { .. } => "indicator_shifts",
            Generator::Modulations { .. } => "modulations",
            Generator::SpanRandom { .. } => "span_random",
            Generator::GaussianBumps { .. } => "gaussian_bumps",
        }
    }

    /// Built-in generator with a carrier large enough for `2·count` members,
    /// so that the doubled prefix stays on the same carrier.
    pub fn builtin(tag: &str, count: usize, dim: usize, seed: u64) -> Result<Generator> {
        if count == 0 {
            return Err(Error::EmptyFamily);
        }
        match tag {
            "indicator_shifts" => Ok(Generator::IndicatorShifts {
                group: GroupModel::z_window(2 * count)?,
            }),
            "modulations" => Ok(Generator::Modulations {
                base: paper_kernel(2 * count + 2)?,
            }),
            "span_random" => {
                if dim == 0 {
                    return Err(Error::InvalidSpec("span dimension must be positive".into()));
                }
                Ok(Generator::SpanRandom {
                    group: GroupModel::z_window(SPAN_HALF_WIDTH)?,
                    dim,
                    seed,
                })
            }
            "gaussian_bumps" => Ok(Generator::GaussianBumps {
                group: GroupModel::real_grid(1, 8.0, 257)?,
                spacing: 0.1,
            }),
            other => Err(Error::InvalidSpec(format!(
                "unknown builtin `{other}`, expected one of {}",
                Generator::TAGS.join(", ")
            ))),
        }
    }

    pub fn group(&self) -> &GroupModel {
        match self {
            Generator::IndicatorShifts { group }
            | Generator::SpanRandom { group, .. }
            | Generator::GaussianBumps { group, .. } => group,
            Generator::Modulations { base } => base.group(),
        }
    }

    /// The first `count` members, tagged with this generator.
    pub fn generate(&self, count: usize) -> Result<FunctionFamily> {
        if count == 0 {
            return Err(Error::EmptyFamily);
        }
        let members = match self {
            Generator::IndicatorShifts { group } => indicator_shifts(group, count)?,
            Generator::Modulations { base } => modulations(base, count)?,
            Generator::SpanRandom { group, dim, seed } => span_random(group, *dim, *seed, count)?,
            Generator::GaussianBumps { group, spacing } => gaussian_bumps(group, *spacing, count)?,
        };
        Ok(FunctionFamily::new(members)?.with_generator(self.clone()))
    }
}

/// `g(0) = g(1) = 1`, `g(2) = −1` on `ℤ ∩ [−n, n]`.
pub fn paper_kernel(half_width: usize) -> Result<GroupFunction> {
    let group = GroupModel::z_window(half_width)?;
    Ok(GroupFunction::from_pairs(group, &[(0, 1.0), (1, 1.0), (2, -1.0)])?.with_name("g"))
}

fn too_small(group: &GroupModel, count: usize) -> Error {
    Error::InvalidSpec(format!("{group} is too small for {count} members"))
}

fn indicator_shifts(group: &GroupModel, count: usize) -> Result<Vec<GroupFunction>> {
    (1..=count as i64)
        .map(|n| {
            let x = GroupElement::scalar(n);
            if !group.contains(&x) {
                return Err(too_small(group, count));
            }
            Ok(GroupFunction::indicator(group.clone(), &[x])?.with_name(format!("1_{n}")))
        })
        .collect()
}

fn modulations(base: &GroupFunction, count: usize) -> Result<Vec<GroupFunction>> {
    let group = base.group();
    if !matches!(group.kind(), GroupKind::ZWindow { .. }) {
        return Err(Error::WrongModel(
            "modulations need a window carrier".into(),
        ));
    }
    // The support must stay inside the window for every shift.
    let reach = (0..group.len())
        .filter(|&i| base.values()[i] != Complex64::new(0.0, 0.0))
        .map(|i| group.lattice().coords(i)[0])
        .max()
        .unwrap_or(0);
    let last = GroupElement::scalar(reach + count as i64 - 1);
    if !group.contains(&last) {
        return Err(too_small(group, count));
    }
    (0..count as i64)
        .map(|n| Ok(translate_fn(base, &GroupElement::scalar(n))?.with_name(format!("T{n}"))))
        .collect()
}

fn span_random(
    group: &GroupModel,
    dim: usize,
    seed: u64,
    count: usize,
) -> Result<Vec<GroupFunction>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let design: Vec<Vec<f64>> = (0..SPAN_DESIGN)
        .map(|_| (0..dim).map(|_| rng.random_range(-0.5..0.5)).collect())
        .collect();
    let centre = |j: usize| j as f64 - (dim as f64 - 1.0) / 2.0;
    let mut order: Vec<usize> = Vec::with_capacity(count + SPAN_DESIGN);
    while order.len() < count {
        let mut block: Vec<usize> = (0..SPAN_DESIGN).collect();
        block.shuffle(&mut rng);
        order.extend(block);
    }
    order
        .into_iter()
        .take(count)
        .enumerate()
        .map(|(i, d)| {
            let coeffs = &design[d];
            GroupFunction::from_fn(group.clone(), |_, x| {
                let k = x.coords()[0] as f64;
                let v: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, a)| a * (-(k - centre(j)).powi(2) / 2.0).exp())
                    .sum();
                Complex64::new(v, 0.0)
            })
            .map(|f| f.with_name(format!("span{i}")))
        })
        .collect()
}

fn gaussian_bumps(group: &GroupModel, spacing: f64, count: usize) -> Result<Vec<GroupFunction>> {
    if !matches!(group.kind(), GroupKind::RealGrid { .. }) {
        return Err(Error::WrongModel("gaussian bumps need a real grid".into()));
    }
    (0..count)
        .map(|j| {
            let c = spacing * j as f64;
            GroupFunction::from_fn(group.clone(), |i, _| {
                let p = group.position(i);
                let r2: f64 = p
                    .iter()
                    .enumerate()
                    .map(|(a, x)| if a == 0 { (x - c).powi(2) } else { x * x })
                    .sum();
                Complex64::new((-r2).exp(), 0.0)
            })
            .map(|f| f.with_name(format!("bump{j}")))
        })
        .collect()
}
