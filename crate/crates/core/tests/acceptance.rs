//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use lca_pego::claims::bound_replay_settings;
use lca_pego::compactness::{
    aa_check, oracle_cross_check, paper_kernel, sudakov_bound, CheckSettings, Criteria,
    FunctionFamily, Generator,
};
use lca_pego::config::{BOUND_REPLAY, PINNED};
use lca_pego::groups::{dual_of, GroupElement, GroupModel};
use lca_pego::operator::{
    dense_matrix, fourier_sup, make_operator, opnorm_exact, opnorm_power_iteration,
};
use lca_pego::transform::{
    convolve, fourier, fourier_on, involution, translate_fn, GroupFunction, Norm, Sampled,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < limit, || format!("took {spent:?}, limit {limit:?}"))
}

fn err(e: lca_pego::Error) -> String {
    e.to_string()
}

fn random_complex(group: &GroupModel, rng: &mut ChaCha8Rng) -> GroupFunction {
    let values = (0..group.len())
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    GroupFunction::new(group.clone(), values).unwrap()
}

fn random_nonneg(group: &GroupModel, rng: &mut ChaCha8Rng) -> GroupFunction {
    let values: Vec<f64> = (0..group.len())
        .map(|_| rng.random_range(0.0..1.0))
        .collect();
    GroupFunction::from_real(group.clone(), &values).unwrap()
}

fn counterexample_constants() -> Check {
    let start = Instant::now();
    let g = paper_kernel(8).map_err(err)?;
    let l1 = g.norm(Norm::L1);
    ensure(l1 == 3.0, || format!("‖g‖₁ = {l1}"))?;
    let gh = fourier(&g, Some(4096)).map_err(err)?;
    let sup = gh.norm(Norm::Linf);
    ensure((sup - 5f64.sqrt()).abs() <= 1e-6, || {
        format!("sup |ĝ| = {sup}")
    })?;
    let mut worst = 0.0f64;
    for (i, v) in gh.values().iter().enumerate() {
        let alpha = gh.dual().frequency(i)[0];
        let exact = 3.0 - 2.0 * (4.0 * std::f64::consts::PI * alpha).cos();
        worst = worst.max((v.norm_sqr() - exact).abs());
    }
    ensure(worst <= 1e-9, || format!("|ĝ|² deviates by {worst:e}"))?;
    within_time(start, Duration::from_secs(1))?;
    Ok(format!(
        "‖g‖₁ = 3, sup |ĝ| = {sup:.10}, |ĝ|² error {worst:.1e}"
    ))
}

fn operator_norm_identity() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(PINNED.seed);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.random_range(2..=64usize);
        let group = GroupModel::finite(&[n]).map_err(err)?;
        let f = random_complex(&group, &mut rng);
        let dense = opnorm_exact(&make_operator(f.clone(), true).map_err(err)?).map_err(err)?;
        let spectral = fourier_sup(&f, None).map_err(err)?;
        worst = worst.max((dense - spectral).abs() / spectral);
    }
    ensure(worst <= 1e-9, || format!("relative gap {worst:e}"))?;
    within_time(start, Duration::from_secs(30))?;
    Ok(format!("200 kernels, worst relative gap {worst:.1e}"))
}

fn nonnegative_norm_equality() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(PINNED.seed);
    let z16 = GroupModel::finite(&[16]).map_err(err)?;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let f = random_nonneg(&z16, &mut rng);
        let l1 = f.norm(Norm::L1);
        let dense = opnorm_exact(&make_operator(f.clone(), true).map_err(err)?).map_err(err)?;
        let spectral = fourier_sup(&f, None).map_err(err)?;
        worst = worst
            .max((dense - l1).abs() / l1)
            .max((spectral - l1).abs() / l1);
    }
    ensure(worst <= 1e-9, || format!("finite routes off by {worst:e}"))?;

    let window = GroupModel::z_window(256).map_err(err)?;
    let mut deficit = 0.0f64;
    for _ in 0..10 {
        let pairs: Vec<(i64, f64)> = (-4..=4).map(|k| (k, rng.random_range(0.0..1.0))).collect();
        let f = GroupFunction::from_pairs(window.clone(), &pairs).map_err(err)?;
        let l1 = f.norm(Norm::L1);
        let run = opnorm_power_iteration(
            &make_operator(f, false).map_err(err)?,
            PINNED.iterations,
            PINNED.seed,
        )
        .map_err(err)?;
        deficit = deficit.max((run.estimate - l1).abs());
    }
    ensure(deficit <= 1e-3, || {
        format!("window estimate off by {deficit:e}")
    })?;
    Ok(format!(
        "ℤ_16 worst relative error {worst:.1e}; N=256 worst gap {deficit:.1e}"
    ))
}

fn truncated_convergence() -> Check {
    let mut previous = 0.0;
    let mut last = None;
    let mut line = Vec::new();
    for n in [32, 64, 128, 256, 512] {
        let g = paper_kernel(n).map_err(err)?;
        let run = opnorm_power_iteration(
            &make_operator(g, false).map_err(err)?,
            PINNED.iterations,
            PINNED.seed,
        )
        .map_err(err)?;
        ensure(run.estimate + 1e-9 >= previous, || {
            format!("estimate drops at N={n}: {} < {previous}", run.estimate)
        })?;
        previous = run.estimate;
        line.push(format!("{:.6}", run.estimate));
        last = Some(run);
    }
    let last = last.expect("five runs");
    let gap = (last.estimate - 5f64.sqrt()).abs();
    ensure(gap <= 1e-3, || format!("N=512 gap {gap:e}"))?;
    ensure(last.residual <= 1e-6 && last.iterations <= 500, || {
        format!(
            "residual {:e} after {} iterations",
            last.residual, last.iterations
        )
    })?;
    Ok(format!(
        "estimates {}; N=512 residual {:.1e} at iteration {}",
        line.join(", "),
        last.residual,
        last.iterations
    ))
}

fn indicator_refutation() -> Check {
    let generator = Generator::IndicatorShifts {
        group: GroupModel::z_window(64).map_err(err)?,
    };
    let settings = CheckSettings {
        eps_schedule: vec![0.5],
        ..CheckSettings::default()
    };
    let fam = generator.generate(32).map_err(err)?;
    let report = aa_check(&fam, &settings).map_err(err)?;
    let aa2 = report.verdict("AA2").ok_or("no AA2")?;
    ensure(aa2.pass && aa2.value == 0.0 && aa2.note.is_some(), || {
        format!("AA2 not a vacuous pass: {aa2:?}")
    })?;
    ensure(!report.verdict("AA3").ok_or("no AA3")?.pass, || {
        "AA3 passes".into()
    })?;
    ensure((0..32).all(|m| report.tail(m) == Some(1.0)), || {
        "τ(m) ≠ 1 for some m < 32".into()
    })?;
    let n32 = report.covering_number(0.5);
    ensure(n32 == Some(32), || format!("N(1/2) = {n32:?}"))?;
    let doubled = aa_check(&generator.generate(64).map_err(err)?, &settings).map_err(err)?;
    let n64 = doubled.covering_number(0.5);
    ensure(n64 == Some(64), || format!("doubled N(1/2) = {n64:?}"))?;
    Ok("AA2 vacuous, τ ≡ 1 below 32, N(1/2): 32 → 64".into())
}

fn pego_cross_check() -> Check {
    let settings = CheckSettings::default();
    let mut parts = Vec::new();
    for (tag, count) in [
        ("indicator_shifts", 32),
        ("modulations", 32),
        ("span_random", 64),
    ] {
        let fam = Generator::builtin(tag, count, 3, PINNED.seed)
            .and_then(|g| g.generate(count))
            .map_err(err)?;
        let r = oracle_cross_check(&fam, &settings, Criteria::Pego).map_err(err)?;
        ensure(r.consistent, || format!("{tag}: {:?}", r.inconsistencies))?;
        match tag {
            "span_random" => {
                ensure(r.prefix.pass && r.stable, || format!("{tag}: {r:?}"))?;
                ensure(
                    r.prefix.covering_numbers == r.doubled.covering_numbers,
                    || format!("{tag}: N(ε) differs"),
                )?;
            }
            "modulations" => {
                let p2 = r.report.verdict("P2").ok_or("no P2")?;
                ensure(!p2.pass && r.growth, || format!("{tag}: {p2:?}"))?;
            }
            _ => ensure(!r.prefix.pass && r.growth, || format!("{tag}: {r:?}"))?,
        }
        let verdict = if r.prefix.pass { "pass" } else { "fail" };
        parts.push(format!("{tag} {verdict}"));
    }
    Ok(format!("consistent: {}", parts.join(", ")))
}

fn matrix_of(f: &GroupFunction) -> DMatrix<Complex64> {
    dense_matrix(f).unwrap()
}

fn structural_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(PINNED.seed);
    let groups = [
        GroupModel::finite(&[8]).map_err(err)?,
        GroupModel::finite(&[3, 5]).map_err(err)?,
        GroupModel::finite(&[2, 6]).map_err(err)?,
        GroupModel::finite(&[13]).map_err(err)?,
    ];
    let (mut plancherel, mut conv, mut cov, mut young, mut hom) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for case in 0..200 {
        let group = &groups[case % groups.len()];
        let dual = dual_of(group, None).map_err(err)?;
        let f = random_complex(group, &mut rng);
        let g = random_complex(group, &mut rng);
        let fh = fourier_on(&f, &dual).map_err(err)?;
        let gh = fourier_on(&g, &dual).map_err(err)?;

        let l2 = f.norm(Norm::L2).powi(2);
        plancherel = plancherel.max((l2 - fh.norm(Norm::L2).powi(2)).abs() / l2);

        let fg = convolve(&f, &g).map_err(err)?;
        let fgh = fourier_on(&fg, &dual).map_err(err)?;
        for ((c, a), b) in fgh.values().iter().zip(fh.values()).zip(gh.values()) {
            conv = conv.max((c - a * b).norm());
        }

        let star = fourier_on(&involution(&f), &dual).map_err(err)?;
        for (s, a) in star.values().iter().zip(fh.values()) {
            cov = cov.max((s - a.conj()).norm());
        }
        let y = group.element(rng.random_range(0..group.len()));
        let shifted = fourier_on(&translate_fn(&f, &y).map_err(err)?, &dual).map_err(err)?;
        for (j, (s, a)) in shifted.values().iter().zip(fh.values()).enumerate() {
            let chi = dual.character(j).eval(&y);
            cov = cov.max((s - chi.conj() * a).norm());
        }

        for p in [Norm::L1, Norm::L2, Norm::Linf] {
            let lhs = fg.norm(p);
            let rhs = f.norm(Norm::L1) * g.norm(p);
            young = young.max(lhs - rhs);
        }

        let z8 = &groups[0];
        let a = random_complex(z8, &mut rng);
        let b = random_complex(z8, &mut rng);
        let (ma, mb) = (matrix_of(&a), matrix_of(&b));
        let prod = matrix_of(&convolve(&a, &b).map_err(err)?);
        hom = hom.max((prod - &ma * &mb).camax());
        hom = hom.max((matrix_of(&involution(&a)) - ma.adjoint()).camax());
        let (s, t) = (Complex64::new(0.3, -1.2), Complex64::new(-0.7, 0.4));
        let comb = a.scaled(s).plus(&b.scaled(t)).map_err(err)?;
        hom = hom.max((matrix_of(&comb) - (ma * s + mb * t)).camax());
    }
    ensure(plancherel <= 1e-9, || format!("Plancherel {plancherel:e}"))?;
    ensure(conv <= 1e-10, || format!("convolution theorem {conv:e}"))?;
    ensure(cov <= 1e-10, || format!("covariance {cov:e}"))?;
    ensure(young <= 1e-12, || format!("Young violated by {young:e}"))?;
    ensure(hom <= 1e-9, || format!("homomorphism {hom:e}"))?;
    Ok(format!(
        "Plancherel {plancherel:.1e}, convolution {conv:.1e}, covariance {cov:.1e}, \
         Young excess {young:.1e}, homomorphism {hom:.1e}"
    ))
}

fn sudakov_replay() -> Check {
    let fam = Generator::builtin("gaussian_bumps", BOUND_REPLAY.count, 0, 0)
        .and_then(|g| g.generate(BOUND_REPLAY.count))
        .map_err(err)?;
    let outcome = sudakov_bound(&fam, &bound_replay_settings()).map_err(err)?;
    let b = outcome.bound().ok_or_else(|| format!("{outcome:?}"))?;
    let sup = fam.sup_norm();
    ensure(b.bound.is_finite() && b.bound >= sup, || {
        format!("bound {} below sup {sup}", b.bound)
    })?;
    let finite = GroupModel::finite(&[12]).map_err(err)?;
    let delta = GroupFunction::delta(finite, &GroupElement::scalar(0)).map_err(err)?;
    let fam = FunctionFamily::new(vec![delta]).map_err(err)?;
    let other = sudakov_bound(&fam, &CheckSettings::default()).map_err(err)?;
    ensure(other.bound().is_none(), || {
        format!("finite carrier gave {other:?}")
    })?;
    Ok(format!(
        "bound {} ≥ sup {sup}; finite carrier not applicable",
        b.bound
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 counterexample constants", counterexample_constants),
        ("2 operator norm equals Fourier sup", operator_norm_identity),
        (
            "3 nonnegative kernels attain the L1 norm",
            nonnegative_norm_equality,
        ),
        (
            "4 truncated power iteration converges",
            truncated_convergence,
        ),
        ("5 indicator family is not compact", indicator_refutation),
        (
            "6 Pego verdicts agree with covering numbers",
            pego_cross_check,
        ),
        ("7 structural identities", structural_identities),
        ("8 sup bound from equicontinuity and tails", sudakov_replay),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        let spent = start.elapsed();
        match result {
            Ok(detail) => println!("PASS criterion {name} ({spent:.2?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} ({spent:.2?}): {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
