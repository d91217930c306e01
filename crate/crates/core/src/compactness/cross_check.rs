use serde::Serialize;

use super::{check, CheckSettings, CompactnessReport, Criteria, FunctionFamily};
use crate::error::Result;

/// Verdict and covering numbers of one prefix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrefixSummary {
    pub members: usize,
    pub pass: bool,
    pub covering_numbers: Vec<(f64, usize)>,
}

impl PrefixSummary {
    fn of(report: &CompactnessReport) -> Self {
        PrefixSummary {
            members: report.member_count,
            pass: report.pass,
            covering_numbers: report
                .covering_numbers
                .iter()
                .map(|c| (c.eps, c.covering_number))
                .collect(),
        }
    }
}

/// Agreement between the criteria and the covering-number oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub criteria: Criteria,
    pub generator: Option<&'static str>,
    pub prefix: PrefixSummary,
    pub doubled: PrefixSummary,
    /// Some `N(ε)` increased when the prefix doubled.
    pub growth: bool,
    /// Every `N(ε)` stayed the same.
    pub stable: bool,
    pub consistent: bool,
    pub inconsistencies: Vec<String>,
    /// Full report of the original prefix; serialized separately.
    #[serde(skip)]
    pub report: CompactnessReport,
}

/// Checks the prefix and its doubling: a failing verdict must come with
/// covering-number growth, a passing one with stable covering numbers, and
/// both prefixes must agree. Disagreements are listed, never reconciled.
pub fn oracle_cross_check(
    fam: &FunctionFamily,
    settings: &CheckSettings,
    criteria: Criteria,
) -> Result<ConsistencyReport> {
    let doubled_fam = fam.extended(2 * fam.len())?;
    let report = check(criteria, fam, settings)?;
    let doubled_report = check(criteria, &doubled_fam, settings)?;
    let prefix = PrefixSummary::of(&report);
    let doubled = PrefixSummary::of(&doubled_report);

    let pairs: Vec<(f64, usize, usize)> = prefix
        .covering_numbers
        .iter()
        .zip(&doubled.covering_numbers)
        .map(|(&(eps, a), &(_, b))| (eps, a, b))
        .collect();
    let growth = pairs.iter().any(|&(_, a, b)| b > a);
    let stable = pairs.iter().all(|&(_, a, b)| a == b);

    let mut inconsistencies = Vec::new();
    if prefix.pass != doubled.pass {
        inconsistencies.push(format!(
            "verdict changes from {} to {} when the prefix doubles",
            verdict_word(prefix.pass),
            verdict_word(doubled.pass)
        ));
    }
    if !prefix.pass && !growth {
        inconsistencies.push("criteria fail but no covering number grows".into());
    }
    if prefix.pass && !stable {
        for &(eps, a, b) in pairs.iter().filter(|p| p.1 != p.2) {
            inconsistencies.push(format!("criteria pass but N({eps}) moves from {a} to {b}"));
        }
    }
    for (which, r) in [("prefix", &report), ("doubled prefix", &doubled_report)] {
        for v in r.invariant_violations() {
            inconsistencies.push(format!("{which}: {v}"));
        }
    }

    Ok(ConsistencyReport {
        criteria,
        generator: fam.generator_tag(),
        prefix,
        doubled,
        growth,
        stable,
        consistent: inconsistencies.is_empty(),
        inconsistencies,
        report,
    })
}

fn verdict_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compactness::Generator;

    fn run(tag: &str, count: usize) -> ConsistencyReport {
        let fam = Generator::builtin(tag, count, 3, 42)
            .unwrap()
            .generate(count)
            .unwrap();
        oracle_cross_check(&fam, &CheckSettings::default(), Criteria::Pego).unwrap()
    }

    #[test]
    fn indicator_shifts_fail_and_grow() {
        let r = run("indicator_shifts", 32);
        assert!(!r.prefix.pass && r.growth && r.consistent, "{r:?}");
    }

    #[test]
    fn span_passes_and_stabilizes() {
        let r = run("span_random", 64);
        assert!(
            r.prefix.pass && r.stable && r.consistent,
            "{:?}",
            r.inconsistencies
        );
    }
}
