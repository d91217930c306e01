//! Compactness diagnostics for finite prefixes of function families.
//!
//! A literal finite family is always relatively compact, so every verdict here
//! is a statement about the generated family the prefix samples. The evidence
//! is twofold: the quantitative moduli at fixed thresholds, and how greedy
//! covering numbers behave when the prefix doubles ([`oracle_cross_check`]).

mod cross_check;
mod families;
pub mod moduli;
mod net;
mod sudakov;

use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{DEFAULT_EPS_SCHEDULE, PINNED};
use crate::error::{Error, Result};
use crate::groups::{dual_of, GroupModel, Lattice};
use crate::transform::{fourier_on, GroupFunction, Norm};

pub use cross_check::{oracle_cross_check, ConsistencyReport, PrefixSummary};
pub use families::{paper_kernel, Generator};
pub use moduli::{RadiusValue, WindowValue};
pub use net::{greedy_epsilon_net, EpsilonNet};
pub use sudakov::{
    sudakov_bound, sudakov_witness, uniform_equicontinuity_on_compact, SudakovBound, SudakovOutcome,
};

/// Ordered, nonempty family of functions on one carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionFamily {
    members: Vec<GroupFunction>,
    generator: Option<Generator>,
}

impl FunctionFamily {
    /// Unnamed members are called `f<index>`; names must end up unique.
    pub fn new(members: Vec<GroupFunction>) -> Result<Self> {
        let first = members.first().ok_or(Error::EmptyFamily)?;
        let group = first.group().clone();
        let mut seen = HashSet::new();
        let mut named = Vec::with_capacity(members.len());
        for (i, f) in members.into_iter().enumerate() {
            if f.group() != &group {
                return Err(Error::CarrierMismatch);
            }
            let f = match f.name() {
                Some(_) => f,
                None => f.with_name(format!("f{i}")),
            };
            let name = f.name().unwrap_or_default().to_string();
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateName(name));
            }
            named.push(f);
        }
        Ok(FunctionFamily {
            members: named,
            generator: None,
        })
    }

    /// Records the generator this family is a prefix of.
    pub fn with_generator(mut self, generator: Generator) -> Self {
        self.generator = Some(generator);
        self
    }

    pub fn members(&self) -> &[GroupFunction] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn group(&self) -> &GroupModel {
        self.members[0].group()
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    pub fn generator_tag(&self) -> Option<&'static str> {
        self.generator.as_ref().map(Generator::tag)
    }

    /// The first `count` members of the generated family.
    pub fn extended(&self, count: usize) -> Result<FunctionFamily> {
        self.generator
            .as_ref()
            .ok_or(Error::GeneratorUnavailable)?
            .generate(count)
    }

    /// Largest sup-norm over members.
    pub fn sup_norm(&self) -> f64 {
        self.members
            .iter()
            .flat_map(|f| f.values().iter().map(|v| v.norm()))
            .fold(0.0, f64::max)
    }

    fn samples(&self) -> Vec<&[Complex64]> {
        self.members.iter().map(|f| f.values()).collect()
    }
}

/// Pass/fail thresholds. Radii and windows count grid steps of the carrier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub bound: f64,
    pub radius: usize,
    pub eps_cont: f64,
    /// Defaults to a quarter of the carrier's largest radius.
    pub window: Option<usize>,
    pub eps_tail: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            bound: 1e3,
            radius: 1,
            eps_cont: 1e-2,
            window: None,
            eps_tail: 1e-2,
        }
    }
}

impl Thresholds {
    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("bound", self.bound),
            ("eps_cont", self.eps_cont),
            ("eps_tail", self.eps_tail),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "threshold {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Everything a check needs besides the family.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckSettings {
    pub thresholds: Thresholds,
    pub eps_schedule: Vec<f64>,
    /// Dual grid size for windows and real grids.
    pub dual_grid: Option<usize>,
}

impl Default for CheckSettings {
    fn default() -> Self {
        CheckSettings {
            thresholds: Thresholds::default(),
            eps_schedule: DEFAULT_EPS_SCHEDULE.to_vec(),
            dual_grid: Some(PINNED.dual_grid),
        }
    }
}

impl CheckSettings {
    fn validate(&self) -> Result<()> {
        self.thresholds.validate()?;
        if self.eps_schedule.is_empty() {
            return Err(Error::InvalidSpec("eps schedule is empty".into()));
        }
        if let Some(e) = self
            .eps_schedule
            .iter()
            .find(|e| !(e.is_finite() && **e > 0.0))
        {
            return Err(Error::InvalidSpec(format!("eps must be positive, got {e}")));
        }
        Ok(())
    }
}

/// Which set of criteria a report evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criteria {
    /// Boundedness, equicontinuity and equivanishing of the transformed family.
    Pego,
    /// The same three properties of the family itself.
    ArzelaAscoli,
}

impl Criteria {
    fn labels(self) -> [&'static str; 3] {
        match self {
            Criteria::Pego => ["P1", "P2", "P3"],
            Criteria::ArzelaAscoli => ["AA1", "AA2", "AA3"],
        }
    }

    fn net_norm(self) -> Norm {
        match self {
            Criteria::Pego => Norm::L1,
            Criteria::ArzelaAscoli => Norm::Linf,
        }
    }
}

/// One criterion evaluated at its threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub criterion: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `N(ε)` together with the net that realizes it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoveringNumber {
    pub eps: f64,
    pub covering_number: usize,
    pub net: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactnessReport {
    pub criteria: Criteria,
    /// Where the moduli were computed: the dual for Pego, the group otherwise.
    pub carrier: String,
    pub member_count: usize,
    pub generator: Option<&'static str>,
    pub pointwise_bound: f64,
    pub pointwise_max: Vec<f64>,
    pub equicontinuity_modulus: Vec<RadiusValue>,
    /// Empty when the carrier is compact.
    pub equivanishing_tail: Vec<WindowValue>,
    pub net_norm: Norm,
    pub covering_numbers: Vec<CoveringNumber>,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl CompactnessReport {
    pub fn verdict(&self, criterion: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.criterion == criterion)
    }

    pub fn covering_number(&self, eps: f64) -> Option<usize> {
        self.covering_numbers
            .iter()
            .find(|c| c.eps == eps)
            .map(|c| c.covering_number)
    }

    pub fn tail(&self, window: usize) -> Option<f64> {
        self.equivanishing_tail.get(window).map(|w| w.value)
    }

    pub fn modulus(&self, radius: usize) -> Option<f64> {
        self.equicontinuity_modulus
            .iter()
            .find(|r| r.radius == radius)
            .map(|r| r.value)
    }

    /// Violated structural invariants; empty for a well-formed report.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for w in self.equicontinuity_modulus.windows(2) {
            if w[1].value < w[0].value {
                out.push(format!(
                    "equicontinuity modulus decreases between r = {} and r = {}",
                    w[0].radius, w[1].radius
                ));
            }
        }
        for w in self.equivanishing_tail.windows(2) {
            if w[1].value > w[0].value {
                out.push(format!(
                    "equivanishing tail increases between m = {} and m = {}",
                    w[0].window, w[1].window
                ));
            }
        }
        let mut by_eps: Vec<&CoveringNumber> = self.covering_numbers.iter().collect();
        by_eps.sort_by(|a, b| a.eps.total_cmp(&b.eps));
        for w in by_eps.windows(2) {
            if w[1].covering_number > w[0].covering_number {
                out.push(format!(
                    "covering number grows from eps = {} to eps = {}",
                    w[0].eps, w[1].eps
                ));
            }
        }
        for c in &self.covering_numbers {
            if c.covering_number > self.member_count {
                out.push(format!("N({}) exceeds the member count", c.eps));
            }
        }
        out
    }
}

/// Moduli inputs shared by both checks.
struct Carrier<'a> {
    name: String,
    lattice: &'a Lattice,
    compact: bool,
    /// Singleton neighbourhoods are open, so equicontinuity holds vacuously.
    discrete: bool,
}

fn assess(
    criteria: Criteria,
    fam: &FunctionFamily,
    carrier: Carrier<'_>,
    samples: &[&[Complex64]],
    settings: &CheckSettings,
) -> CompactnessReport {
    let t = &settings.thresholds;
    let lattice = carrier.lattice;
    let [bounded, continuous, vanishing] = criteria.labels();
    let mut notes = Vec::new();

    let pointwise = moduli::pointwise_max(samples, lattice.len());
    let bound = pointwise.iter().copied().fold(0.0, f64::max);

    let all_points: Vec<usize> = (0..lattice.len()).collect();
    let radii = moduli::default_radii(lattice, t.radius);
    let omega = moduli::equicontinuity_table(lattice, samples, &all_points, &radii);
    let radius = t.radius.min(lattice.max_radius());
    let omega_at = omega
        .iter()
        .find(|r| r.radius == radius)
        .map_or(0.0, |r| r.value);
    let continuity = if carrier.discrete {
        Verdict {
            criterion: continuous,
            value: 0.0,
            threshold: t.eps_cont,
            pass: true,
            note: Some("discrete carrier: singleton neighbourhoods, vacuous at radius 0".into()),
        }
    } else {
        Verdict {
            criterion: continuous,
            value: omega_at,
            threshold: t.eps_cont,
            pass: omega_at < t.eps_cont,
            note: (radius != t.radius)
                .then(|| format!("radius capped at the carrier size {radius}")),
        }
    };

    let (tail, vanishing) = if carrier.compact {
        (
            Vec::new(),
            Verdict {
                criterion: vanishing,
                value: 0.0,
                threshold: t.eps_tail,
                pass: true,
                note: Some("trivially satisfied: compact carrier".into()),
            },
        )
    } else {
        let tail = moduli::tail_table(lattice, &pointwise);
        let window = t
            .window
            .unwrap_or(lattice.max_radius() / 4)
            .min(lattice.max_radius());
        let value = tail[window].value;
        (
            tail,
            Verdict {
                criterion: vanishing,
                value,
                threshold: t.eps_tail,
                pass: value < t.eps_tail,
                note: Some(format!("window m = {window}")),
            },
        )
    };

    let bounded = Verdict {
        criterion: bounded,
        value: bound,
        threshold: t.bound,
        pass: bound <= t.bound,
        note: None,
    };

    let net_norm = criteria.net_norm();
    let net_samples = fam.samples();
    let weight = fam.group().haar_weight();
    let covering_numbers = settings
        .eps_schedule
        .iter()
        .map(|&eps| {
            let net = greedy_epsilon_net(&net_samples, weight, eps, net_norm);
            CoveringNumber {
                eps,
                covering_number: net.covering_number(),
                net: net.net,
            }
        })
        .collect();

    let verdicts = vec![bounded, continuity, vanishing];
    let pass = verdicts.iter().all(|v| v.pass);
    let mut report = CompactnessReport {
        criteria,
        carrier: carrier.name,
        member_count: fam.len(),
        generator: fam.generator_tag(),
        pointwise_bound: bound,
        pointwise_max: pointwise,
        equicontinuity_modulus: omega,
        equivanishing_tail: tail,
        net_norm,
        covering_numbers,
        verdicts,
        pass,
        notes: Vec::new(),
    };
    notes.extend(report.invariant_violations());
    report.notes = notes;
    report
}

/// Pego criteria: the transformed family must be bounded, equicontinuous and
/// equivanishing on the dual carrier.
pub fn pego_check(fam: &FunctionFamily, settings: &CheckSettings) -> Result<CompactnessReport> {
    settings.validate()?;
    let dual = dual_of(fam.group(), settings.dual_grid)?;
    let transformed: Vec<Vec<Complex64>> = fam
        .members()
        .iter()
        .map(|f| fourier_on(f, &dual).map(|d| d.values().to_vec()))
        .collect::<Result<_>>()?;
    let samples: Vec<&[Complex64]> = transformed.iter().map(|v| v.as_slice()).collect();
    let mut report = assess(
        Criteria::Pego,
        fam,
        Carrier {
            name: dual.to_string(),
            lattice: dual.lattice(),
            compact: dual.is_compact(),
            discrete: false,
        },
        &samples,
        settings,
    );
    if !dual.is_compact() {
        report
            .notes
            .push("non-compact dual: equicontinuity is the uniform modulus over the grid".into());
    }
    Ok(report)
}

/// Arzelà–Ascoli criteria on the family's own carrier.
pub fn aa_check(fam: &FunctionFamily, settings: &CheckSettings) -> Result<CompactnessReport> {
    settings.validate()?;
    let g = fam.group();
    let samples = fam.samples();
    Ok(assess(
        Criteria::ArzelaAscoli,
        fam,
        Carrier {
            name: g.to_string(),
            lattice: g.lattice(),
            compact: g.is_compact(),
            discrete: g.is_discrete(),
        },
        &samples,
        settings,
    ))
}

/// Runs the check selected by `criteria`.
pub fn check(
    criteria: Criteria,
    fam: &FunctionFamily,
    settings: &CheckSettings,
) -> Result<CompactnessReport> {
    match criteria {
        Criteria::Pego => pego_check(fam, settings),
        Criteria::ArzelaAscoli => aa_check(fam, settings),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupElement;

    fn paper_g(n: usize) -> GroupFunction {
        GroupFunction::from_pairs(
            GroupModel::z_window(n).unwrap(),
            &[(0, 1.0), (1, 1.0), (2, -1.0)],
        )
        .unwrap()
    }

    #[test]
    fn family_validation() {
        assert_eq!(FunctionFamily::new(vec![]), Err(Error::EmptyFamily));
        let a = paper_g(4);
        let b = paper_g(5);
        assert_eq!(
            FunctionFamily::new(vec![a.clone(), b]),
            Err(Error::CarrierMismatch)
        );
        let dup = FunctionFamily::new(vec![a.clone().with_name("x"), a.clone().with_name("x")]);
        assert_eq!(dup, Err(Error::DuplicateName("x".into())));
        let fam = FunctionFamily::new(vec![a.clone(), a]).unwrap();
        assert_eq!(fam.members()[1].name(), Some("f1"));
        assert_eq!(fam.extended(4), Err(Error::GeneratorUnavailable));
    }

    #[test]
    fn thresholds_fill_defaults() {
        let t: Thresholds = serde_json::from_str(r#"{"eps_cont": 0.1}"#).unwrap();
        assert_eq!(t.eps_cont, 0.1);
        assert_eq!(t.bound, 1e3);
        assert!(serde_json::from_str::<Thresholds>(r#"{"nope": 1}"#).is_err());
    }

    #[test]
    fn delta_pego_passes() {
        let g = GroupModel::z_window(8).unwrap();
        let fam = FunctionFamily::new(vec![
            GroupFunction::delta(g, &GroupElement::scalar(0)).unwrap()
        ])
        .unwrap();
        let r = pego_check(&fam, &CheckSettings::default()).unwrap();
        assert!((r.pointwise_bound - 1.0).abs() < 1e-12);
        assert!(r.pass);
        assert!(r.equivanishing_tail.is_empty());
        assert!(r.notes.is_empty());
    }

    #[test]
    fn unconfigured_grid() {
        let fam = FunctionFamily::new(vec![paper_g(4)]).unwrap();
        let settings = CheckSettings {
            dual_grid: None,
            ..CheckSettings::default()
        };
        assert_eq!(
            pego_check(&fam, &settings),
            Err(Error::UnconfiguredDualGrid)
        );
    }

    #[test]
    fn duplicates_match_singleton() {
        let s = CheckSettings::default();
        let one = pego_check(&FunctionFamily::new(vec![paper_g(8)]).unwrap(), &s).unwrap();
        let three = pego_check(&FunctionFamily::new(vec![paper_g(8); 3]).unwrap(), &s).unwrap();
        assert_eq!(one.pointwise_max, three.pointwise_max);
        assert_eq!(one.equicontinuity_modulus, three.equicontinuity_modulus);
        assert_eq!(one.verdicts, three.verdicts);
        assert_eq!(three.covering_number(0.5), Some(1));
    }

    #[test]
    fn zero_singleton_passes_aa() {
        let g = GroupModel::real_grid(1, 2.0, 33).unwrap();
        let fam = FunctionFamily::new(vec![GroupFunction::zeros(g)]).unwrap();
        let r = aa_check(&fam, &CheckSettings::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.pointwise_bound, 0.0);
        assert!(r.equivanishing_tail.iter().all(|w| w.value == 0.0));
    }

    #[test]
    fn finite_group_aa_is_compact() {
        let g = GroupModel::finite(&[6]).unwrap();
        let fam = FunctionFamily::new(vec![GroupFunction::from_real(
            g,
            &[1.0, 0.0, 2.0, 0.0, 0.0, 3.0],
        )
        .unwrap()])
        .unwrap();
        let r = aa_check(&fam, &CheckSettings::default()).unwrap();
        assert!(r.pass);
        assert!(r
            .verdict("AA3")
            .unwrap()
            .note
            .as_deref()
            .unwrap()
            .contains("compact"));
        assert!(r
            .verdict("AA2")
            .unwrap()
            .note
            .as_deref()
            .unwrap()
            .contains("vacuous"));
    }

    #[test]
    fn bad_settings_rejected() {
        let fam = FunctionFamily::new(vec![paper_g(4)]).unwrap();
        let s = CheckSettings {
            eps_schedule: vec![0.5, 0.0],
            ..CheckSettings::default()
        };
        assert!(matches!(aa_check(&fam, &s), Err(Error::InvalidSpec(_))));
        let mut s = CheckSettings::default();
        s.thresholds.eps_tail = -1.0;
        assert!(matches!(aa_check(&fam, &s), Err(Error::InvalidSpec(_))));
    }
}
