use super::fit::{fit_linear_model, fit_log_linear};
use super::report::{Check, ExperimentReport, Series, Table, Verdict};
use crate::discretize::PaddedHilbertDifference;
use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Scalar};
use crate::operators::phi;
use crate::spectra::{
    hilbert_factor_singular_values, hilbert_factor_singular_values_low_rank, hilbert_singular_values, top_singular_pair,
    DEFAULT_MAX_ITER,
};

/// Largest `n` handled by exact elimination in the Beckermann experiment.
pub const EXACT_LIMIT: usize = 200;
pub const NORM_TOLERANCE: f64 = 1e-12;

fn beckermann<S: Scalar>(n: usize, i_max: usize, ctx: &PrecisionContext) -> Result<ExperimentReport> {
    let digits = ctx.digits();
    let mut report = ExperimentReport::new("beckermann");
    report.param("n", n);
    report.param("i_max", i_max);
    report.param("digits", digits);
    let (sv, method) = if n <= EXACT_LIMIT {
        (hilbert_factor_singular_values::<S>(n, ctx)?, "exact-pivoted")
    } else {
        let rank = (4 * i_max + 20).min(n);
        (hilbert_factor_singular_values_low_rank::<S>(n, rank, ctx)?, "low-rank")
    };
    report.metric("method", method, digits, None);
    let floor = sv.trust_floor.to_f64();
    let sigma1 = sv.values[0].clone();
    let p: S = phi(n as u64, ctx)?;
    report.metric("sigma_1_h", sigma1.clone().square().to_f64(), digits, None);
    report.metric("phi", p.to_f64(), digits, None);
    report.metric("trusted_count", sv.trusted_count(), digits, Some(floor));

    let two = S::from_i64(2, ctx);
    let mut table = Table::new("factor_singular_values", &["i", "sigma_l", "trusted", "bound", "ratio"]);
    let mut verdicts = Vec::new();
    let upto = i_max.min(sv.len());
    for k in 0..upto {
        let bound = two.clone() * &p.powi(k as i32) * &sigma1;
        let s = &sv.values[k];
        let verdict = if sv.trusted[k] {
            Verdict::from_bool(*s <= bound, format!("i={}", k + 1))
        } else {
            Verdict::Untrusted
        };
        let ratio = (s.clone() / &bound).to_f64();
        table.push(vec![(k + 1).into(), s.to_f64().into(), sv.trusted[k].into(), bound.to_f64().into(), ratio.into()]);
        verdicts.push(verdict);
    }
    report.check("beckermann_bound", Check::aggregate(verdicts, digits, Some(floor)));

    let window = sv.trusted_count().min(upto);
    if window >= 3 {
        let fit = fit_log_linear(&sv.to_f64(), 1..=window)?;
        report.metric("fitted_k", -fit.slope, digits, Some(floor));
        report.metric("bound_k", -p.ln().to_f64(), digits, None);
    } else {
        report.notice("fewer than three trusted values; no decay rate fitted");
    }
    let values = sv.to_f64();
    report.series.push(Series {
        name: "sigma_i(L_n)".into(),
        points: (0..window).map(|k| ((k + 1) as f64, values[k])).collect(),
    });
    report.series.push(Series {
        name: "2 phi^(i-1) sigma_1(L_n)".into(),
        points: (0..window)
            .map(|k| ((k + 1) as f64, (two.clone() * &p.powi(k as i32) * &sigma1).to_f64()))
            .collect(),
    });
    report.tables.push(table);
    Ok(report)
}

/// Singular values of the Cholesky factor `L_n` of `H_n` against the bound
/// `2 φ(n)^(i-1) σ_1(H_n)^(1/2)`.
///
/// Exact elimination is used up to [`EXACT_LIMIT`]; beyond it a pivoted
/// partial factorization of rank `4 i_max + 20` supplies the leading values.
pub fn run_beckermann(n: usize, i_max: usize, digits: u32) -> Result<ExperimentReport> {
    if n == 0 || i_max == 0 {
        return Err(Error::InvalidArgument("n and i_max must be positive".into()));
    }
    let ctx = PrecisionContext::new(digits)?;
    dispatch!(ctx, beckermann(n, i_max, &ctx))
}

fn asymptotics<S: Scalar>(n_min: usize, n_max: usize, ctx: &PrecisionContext) -> Result<ExperimentReport> {
    let digits = ctx.digits();
    let mut report = ExperimentReport::new("hilbert-asymptotics");
    report.param("n_min", n_min);
    report.param("n_max", n_max);
    report.param("digits", digits);
    let mut table = Table::new("smallest_singular_value", &["n", "sigma_n", "ln_sigma_n", "log_ratio", "local_slope"]);
    let mut ns = Vec::new();
    let mut logs = Vec::new();
    let mut last_n = None;
    for n in n_min..=n_max {
        let sv = hilbert_singular_values::<S>(n, ctx)?;
        let smallest = sv.values.last().expect("n >= 1").clone();
        if !sv.trusted.last().copied().unwrap_or(false) {
            report.notice(format!("sigma_{n}(H_{n}) below the trust floor at {digits} digits; stopped at n = {}", n - 1));
            break;
        }
        let ln = smallest.ln().to_f64();
        let local = match (last_n, logs.last()) {
            (Some(m), Some(prev)) if m + 1 == n => ln - prev,
            _ => f64::NAN,
        };
        table.push(vec![
            n.into(),
            smallest.to_f64().into(),
            ln.into(),
            (ln / n as f64).into(),
            local.into(),
        ]);
        ns.push(n as f64);
        logs.push(ln);
        last_n = Some(n);
    }
    let Some(top) = last_n else {
        return Err(Error::Domain {
            op: "hilbert_asymptotics",
            detail: format!("no trusted smallest singular value at {digits} digits"),
        });
    };
    let ratios: Vec<f64> = ns.iter().zip(&logs).map(|(n, l)| l / n).collect();
    report.metric("n_reached", top, digits, None);
    report.metric("log_ratio_at_n_max", *ratios.last().expect("nonempty"), digits, None);
    if logs.len() >= 2 {
        report.metric("local_slope_at_n_max", logs[logs.len() - 1] - logs[logs.len() - 2], digits, None);
    }
    if ns.len() >= 4 {
        let c = fit_linear_model(&ns, &logs, &[|_| 1.0, |x| x, f64::ln])?;
        report.metric("fitted_limit_slope", c[1], digits, None);
    }
    let verdicts = ratios.windows(2).zip(&ns[1..]).map(|(w, n)| Verdict::from_bool(w[1] < w[0], format!("n={n}")));
    report.check("log_ratio_decreasing", Check::aggregate(verdicts.collect::<Vec<_>>(), digits, None));
    report.series.push(Series {
        name: "ln sigma_n(H_n) / n".into(),
        points: ns.iter().copied().zip(ratios).collect(),
    });
    report.tables.push(table);
    Ok(report)
}

/// `ln σ_n(H_n) / n` for `n` in `n_min..=n_max`, stopping early when the
/// smallest value falls below the trust floor.
pub fn run_hilbert_asymptotics(n_min: usize, n_max: usize, digits: u32) -> Result<ExperimentReport> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::InvalidArgument(format!("need 1 <= n_min <= n_max, got {n_min}..={n_max}")));
    }
    let ctx = PrecisionContext::new(digits)?;
    dispatch!(ctx, asymptotics(n_min, n_max, &ctx))
}

/// `‖H_n - H_base ⊕ 0‖₂` by matrix-free power iteration for each `n`.
pub fn run_norm_difference(base: usize, n_list: &[usize]) -> Result<ExperimentReport> {
    if base == 0 || n_list.iter().any(|n| *n < base) {
        return Err(Error::InvalidArgument(format!("need n >= base >= 1, got base {base}, n {n_list:?}")));
    }
    let ctx = PrecisionContext::hardware();
    let digits = ctx.digits();
    let mut report = ExperimentReport::new("norm-diff");
    report.param("base", base);
    report.param("n", n_list.iter().map(ToString::to_string).collect::<Vec<_>>().join(";"));
    report.param("digits", digits);
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut table = Table::new("norm_difference", &["n", "norm", "iterations", "converged"]);
    let mut norms = Vec::new();
    for &n in &ns {
        let op = PaddedHilbertDifference::<f64>::new(n, base, &ctx)?;
        let (norm, iterations, converged) = if op.is_zero() {
            (0.0, 0, true)
        } else {
            let pair = top_singular_pair(&op, &NORM_TOLERANCE, DEFAULT_MAX_ITER, &ctx)?;
            (pair.sigma, pair.iterations, pair.converged)
        };
        if !converged {
            report.converged = false;
            report.notice(format!("power iteration did not converge for n = {n}"));
        }
        table.push(vec![n.into(), norm.into(), iterations.into(), converged.into()]);
        norms.push((n, norm, converged));
    }
    if let Some((n, norm, _)) = norms.last() {
        report.metric(&format!("norm_at_{n}"), *norm, digits, None);
    }
    let pi = std::f64::consts::PI;
    let below = norms
        .iter()
        .map(|(n, v, c)| if *c { Verdict::from_bool(*v < pi, format!("n={n}")) } else { Verdict::Untrusted });
    report.check("below_pi", Check::aggregate(below.collect::<Vec<_>>(), digits, None));
    let monotone = norms.windows(2).map(|w| {
        if w[0].2 && w[1].2 {
            Verdict::from_bool(w[1].1 >= w[0].1 * (1.0 - NORM_TOLERANCE), format!("n={}", w[1].0))
        } else {
            Verdict::Untrusted
        }
    });
    report.check("nondecreasing", Check::aggregate(monotone.collect::<Vec<_>>(), digits, None));
    report.series.push(Series {
        name: format!("||H_n - H_{base}||"),
        points: norms.iter().map(|(n, v, _)| (*n as f64, *v)).collect(),
    });
    report.tables.push(table);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beckermann_exact_small() {
        let r = run_beckermann(30, 20, 60).unwrap();
        assert!(!r.has_violation(), "{:?}", r.violations());
        assert_eq!(r.metrics["method"].value, "exact-pivoted".into());
        assert!(r.metric_f64("fitted_k").unwrap() > 0.0);
    }

    #[test]
    fn asymptotics_stop_at_floor() {
        let r = run_hilbert_asymptotics(2, 30, 15).unwrap();
        let reached = r.metric_f64("n_reached").unwrap();
        assert!(reached < 30.0);
        assert!(!r.notices.is_empty());
        assert!(!r.has_violation());
    }

    #[test]
    fn norm_difference_small() {
        let r = run_norm_difference(100, &[100, 200, 400]).unwrap();
        assert!(!r.has_violation(), "{:?}", r.violations());
        let col = r.table("norm_difference").unwrap().column("norm").unwrap().iter().map(|v| v.as_f64().unwrap()).collect::<Vec<_>>();
        assert_eq!(col[0], 0.0);
        assert!(col[2] > col[1]);
        assert!(run_norm_difference(100, &[50]).is_err());
    }
}
