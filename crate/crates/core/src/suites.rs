//! Named verification suites, as run by the command-line tool.
//!
//! | suite | contents |
//! |-------|----------|
//! | `core` | stored constants, integral routes to `M` and `M₁`, `ζ'` |
//! | `m-routes` | every series route to `M` and `M₁` against the references, plus spreads |
//! | `identities` | closed-form series identities and the partial-sum checks |
//! | `bounds` | zeta-tail, Hurwitz and `S_n` inequalities, as violation counts |
//! | `genfun` | every generating-function identity on the default grid |
//! | `transforms` | summation by parts, Euler transform, derivative re-expansions |
//! | `all` | everything above |

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constants::{ConstantsRegistry, M1_REFERENCE, M_REFERENCE};
use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::genfun::{eq12_point_check, run_grid, GenfunId, GridSpec, PointOutcome};
use crate::numerics::{harmonic, hurwitz_zeta, skew_harmonic, zeta_minus_one, zeta_prime};
use crate::quadrature::{
    ein_integral_h, eq21_left_integral, log_integral_i, m1_integral, m_integral,
};
use crate::report::{ResultRow, RunConfig, SuiteReport};
use crate::series::{
    fixed_identity, m1_series_with, m_series_with, prop1_partial_sum_check, prop2_check_with, s_n,
    s_n_upper_bound, zeta_tail_majorant, FIXED_IDENTITIES, M1_METHODS, M_METHODS,
};
use crate::transforms::{
    abel_transform_check, euler_transform_coeffs, euler_transformed_m_partial, harmonic_rep_check,
    laguerre_binomial_check, lemma3_geometric_check, lemma3_zeta_check, skew_rep_check,
    FiniteSequence, ABEL_REL_TOL,
};

pub const SUITES: [&str; 6] = [
    "core",
    "m-routes",
    "identities",
    "bounds",
    "genfun",
    "transforms",
];

/// Expands `all` and rejects unknown names.
pub fn resolve_suites(names: &[String]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for name in names {
        if name == "all" {
            out.extend(SUITES);
            continue;
        }
        let s = SUITES
            .iter()
            .find(|s| **s == name.as_str())
            .ok_or_else(|| Error::UnknownId(format!("suite {name}")))?;
        out.push(*s);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Runs the configured suites and collects one report.
pub fn run_suites(cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let start = Instant::now();
    let names = resolve_suites(&cfg.suites)?;
    let mut rows = Vec::new();
    for name in &names {
        rows.extend(suite_rows(name, cfg)?);
    }
    let label = if names.len() == SUITES.len() {
        "all".to_string()
    } else {
        names.join(",")
    };
    Ok(SuiteReport::new(
        label,
        cfg.clone(),
        rows,
        start.elapsed().as_millis() as u64,
    ))
}

pub fn suite_rows(name: &str, cfg: &RunConfig) -> Result<Vec<ResultRow>> {
    match name {
        "core" => core_rows(cfg),
        "m-routes" => m_route_rows(cfg),
        "identities" => identity_rows(cfg),
        "bounds" => Ok(bound_rows()),
        "genfun" => genfun_rows(cfg),
        "transforms" => transform_rows(cfg),
        other => Err(Error::UnknownId(format!("suite {other}"))),
    }
}

/// Every route to `M` (series and integrals), labelled by id.
pub fn m_routes(cfg: &RunConfig) -> Result<Vec<(&'static str, EvalResult)>> {
    let tol = cfg.tolerance;
    let sc = cfg.series_config();
    let mut out = Vec::new();
    for m in M_METHODS {
        out.push((m.id(), m_series_with(m, tol, &sc)?));
    }
    out.push(("m.integral", m_integral(tol)?.into_eval("m.integral")));
    out.push(("thm1.h", ein_integral_h(tol)?.into_eval("thm1.h")));
    out.push(("thm1.i", log_integral_i(tol)?.into_eval("thm1.i")));
    Ok(out)
}

/// Every route to `M₁`.
pub fn m1_routes(cfg: &RunConfig) -> Result<Vec<(&'static str, EvalResult)>> {
    let tol = cfg.tolerance;
    let sc = cfg.series_config();
    let mut out = Vec::new();
    for m in M1_METHODS {
        out.push((m.id(), m1_series_with(m, tol, &sc)?));
    }
    out.push(("m1.integral", m1_integral(tol)?.into_eval("m1.integral")));
    out.push(("eq21.left", eq21_left_integral(tol)?.into_eval("eq21.left")));
    Ok(out)
}

/// Largest minus smallest value.
pub fn spread(routes: &[(&'static str, EvalResult)]) -> (f64, f64) {
    let max = routes
        .iter()
        .map(|r| r.1.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let min = routes
        .iter()
        .map(|r| r.1.value)
        .fold(f64::INFINITY, f64::min);
    (max, min)
}

fn core_rows(cfg: &RunConfig) -> Result<Vec<ResultRow>> {
    let tol = cfg.tolerance;
    let reg = ConstantsRegistry::default();
    let mut rows: Vec<ResultRow> = reg
        .cross_check_table()?
        .into_iter()
        .map(|(name, stored, computed)| {
            ResultRow::new(
                format!("const.{name}"),
                stored,
                computed,
                crate::constants::CROSS_CHECK_TOL,
            )
        })
        .collect();
    let quad =
        |id: &str, value: f64, reference: f64| ResultRow::new(id, value, reference, 2.0 * tol);
    rows.push(quad("m.integral", m_integral(tol)?.value, M_REFERENCE));
    rows.push(quad("thm1.h", ein_integral_h(tol)?.value, M_REFERENCE));
    rows.push(quad("thm1.i", log_integral_i(tol)?.value, M_REFERENCE));
    rows.push(quad("m1.integral", m1_integral(tol)?.value, M1_REFERENCE));
    rows.push(quad(
        "eq21.left",
        eq21_left_integral(tol)?.value,
        M1_REFERENCE,
    ));
    for p in [1.5, 2.0, 3.0] {
        // five-point stencil in s, truncation error h⁴ ζ⁽⁵⁾/30
        let h = 1e-3;
        let z = |s: f64| hurwitz_zeta(s, 1.0);
        let fd =
            (z(p - 2.0 * h)? - 8.0 * z(p - h)? + 8.0 * z(p + h)? - z(p + 2.0 * h)?) / (12.0 * h);
        rows.push(ResultRow::new(
            format!("zeta_prime@p={p}"),
            zeta_prime(p)?,
            fd,
            1e-8,
        ));
    }
    Ok(rows)
}

fn m_route_rows(cfg: &RunConfig) -> Result<Vec<ResultRow>> {
    let tol = cfg.tolerance;
    let mut rows = Vec::new();
    let m = m_routes(cfg)?;
    for (id, r) in &m {
        rows.push(ResultRow::new(*id, r.value, M_REFERENCE, 2.0 * tol));
    }
    let (hi, lo) = spread(&m);
    rows.push(ResultRow::new("m.spread", hi, lo, 2.0 * tol));
    let m1 = m1_routes(cfg)?;
    for (id, r) in &m1 {
        rows.push(ResultRow::new(*id, r.value, M1_REFERENCE, 2.0 * tol));
    }
    let (hi, lo) = spread(&m1);
    rows.push(ResultRow::new("m1.spread", hi, lo, 2.0 * tol));
    Ok(rows)
}

fn identity_rows(cfg: &RunConfig) -> Result<Vec<ResultRow>> {
    let tol = cfg.tolerance;
    let mut rows = Vec::new();
    for m in FIXED_IDENTITIES {
        let r = fixed_identity(m, tol)?;
        rows.push(ResultRow::new(
            r.identity_id.clone(),
            r.lhs.value,
            r.rhs.value,
            2.0 * tol,
        ));
    }
    for m in [2, 10, 50] {
        rows.push((&prop1_partial_sum_check(m)?).into());
    }
    for p in [2.0, 3.0, 20.0] {
        let r = prop2_check_with(p, tol, &cfg.series_config())?;
        rows.push(ResultRow::new(
            r.identity_id.clone(),
            r.lhs.value,
            r.rhs.value,
            2.0 * tol,
        ));
    }
    Ok(rows)
}

/// Violation counts for the inequalities behind every geometric tail bound.
pub fn bound_rows() -> Vec<ResultRow> {
    let mut zeta = 0;
    let mut s_bounds = 0;
    let mut harmonic_terms = 0;
    for n in 2..=60u32 {
        let z = zeta_minus_one(n).unwrap_or(f64::NAN);
        let lo = 0.5f64.powi(n as i32);
        if !(lo < z && z < zeta_tail_majorant(n)) {
            zeta += 1;
        }
        let s = s_n(n);
        if !(lo < s && s < s_n_upper_bound(n)) {
            s_bounds += 1;
        }
        // 0 < H_n (ζ(n+1) - 1) < (1 + ln n) 2^{-n-1} (n+2)/n
        let t = harmonic(n as u64) * zeta_minus_one(n + 1).unwrap_or(f64::NAN);
        let nf = n as f64;
        let cap = (1.0 + nf.ln()) * 0.5f64.powi(n as i32 + 1) * (nf + 2.0) / nf;
        if !(0.0 < t && t < cap) {
            harmonic_terms += 1;
        }
    }
    let mut hurwitz = 0;
    for &s in &[1.5, 2.0, 2.5, 3.0, 5.0, 10.0, 20.0, 40.0] {
        for &a in &[0.25, 0.5, 1.0, 2.0, 3.7, 10.0] {
            // ζ(s, a) - a^{-s} = ζ(s, a+1), which avoids the subtraction
            let rest = hurwitz_zeta(s, a + 1.0).unwrap_or(f64::NAN);
            let first = (a + 1.0f64).powf(-s);
            if !(first < rest && rest <= first * (s + a) / (s - 1.0)) {
                hurwitz += 1;
            }
        }
    }
    let skew = (0..=1000u64)
        .filter(|&n| !(skew_harmonic(n).abs() <= harmonic(n)))
        .count();
    vec![
        ResultRow::violations("bounds.zeta_tail", zeta),
        ResultRow::violations("bounds.hurwitz_tail", hurwitz),
        ResultRow::violations("bounds.s_n", s_bounds),
        ResultRow::violations("bounds.harmonic_zeta_term", harmonic_terms),
        ResultRow::violations("bounds.skew_vs_harmonic", skew),
    ]
}

fn genfun_rows(cfg: &RunConfig) -> Result<Vec<ResultRow>> {
    let grid = GridSpec::default();
    let mut rows = Vec::new();
    for gid in GenfunId::ALL {
        let report = run_grid(gid, &grid, cfg.tolerance)?;
        for p in &report.points {
            if let PointOutcome::Evaluated(r) = p {
                rows.push(r.into());
            }
        }
    }
    rows.push((&eq12_point_check(cfg.tolerance)?).into());
    Ok(rows)
}

/// Random sequence with values spread over several orders of magnitude.
fn random_sequence(rng: &mut ChaCha8Rng, start: i64, len: usize) -> FiniteSequence {
    let values = (0..len)
        .map(|_| rng.random_range(-1.0..1.0) * 10f64.powf(rng.random_range(-3.0..3.0)))
        .collect();
    FiniteSequence::new(start, values).expect("non-empty")
}

/// Failures of summation by parts on `count` seeded random sequence pairs.
pub fn abel_random_failures(seed: u64, count: usize) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..count {
        let len = rng.random_range(2..=50);
        let start = rng.random_range(-5..=5);
        let a = random_sequence(&mut rng, start, len);
        let b = random_sequence(&mut rng, start, len);
        let r = abel_transform_check(&a, &b, start + len as i64 - 1)?;
        if !r.passed() {
            failures += 1;
        }
    }
    Ok(failures)
}

/// Failures of `T(αa + βc) = αT(a) + βT(c)` on seeded random inputs,
/// measured relative to `|α|T(|a|) + |β|T(|c|)`.
pub fn euler_linearity_failures(seed: u64, count: usize) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut failures = 0;
    for _ in 0..count {
        let n = rng.random_range(1..=40);
        let a: Vec<f64> = (0..=n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let c: Vec<f64> = (0..=n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let alpha: f64 = rng.random_range(-3.0..3.0);
        let beta: f64 = rng.random_range(-3.0..3.0);
        let combined = euler_transform_coeffs(|k| alpha * a[k] + beta * c[k], n)?;
        let separate = alpha * euler_transform_coeffs(|k| a[k], n)?
            + beta * euler_transform_coeffs(|k| c[k], n)?;
        let scale = alpha.abs() * euler_transform_coeffs(|k| a[k].abs(), n)?
            + beta.abs() * euler_transform_coeffs(|k| c[k].abs(), n)?;
        if !((combined - separate).abs() <= ABEL_REL_TOL * scale.max(f64::MIN_POSITIVE)) {
            failures += 1;
        }
    }
    Ok(failures)
}

fn transform_rows(cfg: &RunConfig) -> Result<Vec<ResultRow>> {
    let mut rows = vec![
        ResultRow::violations("lemma2.random", abel_random_failures(cfg.seed, 100)?),
        ResultRow::violations("euler.linearity", euler_linearity_failures(cfg.seed, 100)?),
    ];
    let a = FiniteSequence::from_fn(1, 30, |k| if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64)?;
    let b = FiniteSequence::from_fn(1, 30, |k| zeta_minus_one(k as u32 + 1).unwrap_or(f64::NAN))?;
    let mut r = abel_transform_check(&a, &b, 30)?;
    r.identity_id = "lemma2.zeta@n=30".into();
    rows.push((&r).into());
    rows.push(ResultRow::new(
        "thm1.j.inner",
        euler_transformed_m_partial(60)?,
        M_REFERENCE,
        2.0 * cfg.tolerance,
    ));
    for x in [0.1, 0.3, 0.45] {
        rows.push((&lemma3_geometric_check(x, false, 1e-10)?).into());
    }
    for x in [0.05, 0.15, 0.3] {
        rows.push((&lemma3_geometric_check(x, true, 1e-10)?).into());
    }
    for x in [0.25, 0.5, 0.8] {
        rows.push((&lemma3_zeta_check(2.0, x, false, 1e-10)?).into());
    }
    for x in [0.2, 0.4, 0.6] {
        rows.push((&lemma3_zeta_check(2.0, x, true, 1e-10)?).into());
    }
    for n in 1..=12 {
        rows.push((&laguerre_binomial_check(n, 1e-8)?).into());
    }
    for n in [1, 3, 50] {
        rows.push((&harmonic_rep_check(n)?).into());
        rows.push((&skew_rep_check(n)?).into());
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_expands_all() {
        assert_eq!(resolve_suites(&["all".into()]).unwrap().len(), SUITES.len());
        assert_eq!(
            resolve_suites(&["bounds".into(), "bounds".into()]).unwrap(),
            vec!["bounds"]
        );
        assert!(resolve_suites(&["nosuch".into()]).is_err());
    }

    #[test]
    fn bounds_have_no_violations() {
        for r in bound_rows() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn every_suite_passes() {
        let report = run_suites(&RunConfig::default()).unwrap();
        let failed: Vec<_> = report.results.iter().filter(|r| !r.passed()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert_eq!(report.suite, "all");
        assert!(report.results.windows(2).all(|w| w[0].id <= w[1].id));
    }

    #[test]
    fn tiny_budget_is_unreachable() {
        let cfg = RunConfig {
            max_terms: 100,
            suites: vec!["m-routes".into()],
            ..RunConfig::default()
        };
        assert!(matches!(
            run_suites(&cfg),
            Err(Error::ToleranceUnreachable { .. })
        ));
    }
}
