use super::fit::{classify_decay, fit_log_linear, fit_power_law, DecayType};
use super::report::{Check, ExperimentReport, Series, Table, Verdict};
use crate::discretize::{
    a_matrix_numeric, bh_matrix_numeric, j_matrix_numeric, legendre_gramian, DiscretizationScheme, GridSpec,
};
use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Scalar};
use crate::operators::j_singular_value;
use crate::spectra::{default_tolerance, singular_values, SpectralResult};

/// Relative slack allowed when comparing nested spectra.
const INTERLACE_SLACK: f64 = 1e-12;
pub const J_RELATIVE_TOLERANCE: f64 = 1e-2;

fn decay_fits(report: &mut ExperimentReport, prefix: &str, values: &[f64], window: usize) -> Result<Option<DecayType>> {
    if window < 3 {
        report.notice(format!("{prefix}: only {window} trusted values, no decay fit"));
        return Ok(None);
    }
    let exp = fit_log_linear(values, 1..=window)?;
    let pow = fit_power_law(values, 1..=window)?;
    let kind = classify_decay(&exp, &pow);
    let digits = report.parameters.get("digits").and_then(|v| v.as_f64()).unwrap_or(15.0) as u32;
    report.metric(&format!("{prefix}_fit_slope"), exp.slope, digits, None);
    report.metric(&format!("{prefix}_fit_intercept"), exp.intercept, digits, None);
    report.metric(&format!("{prefix}_fit_residual_rms"), exp.residual_rms, digits, None);
    report.metric(&format!("{prefix}_power_law_exponent"), -pow.slope, digits, None);
    report.metric(&format!("{prefix}_power_law_residual_rms"), pow.residual_rms, digits, None);
    report.metric(&format!("{prefix}_fit_window"), format!("1..={window}"), digits, None);
    report.metric(
        &format!("{prefix}_decay_type"),
        match kind {
            DecayType::Exponential => "exponential",
            DecayType::Polynomial => "polynomial",
        },
        digits,
        None,
    );
    Ok(Some(kind))
}

fn semilog(name: &str, values: &[f64], trusted: usize) -> Series {
    Series {
        name: name.into(),
        points: values[..trusted].iter().enumerate().map(|(k, v)| ((k + 1) as f64, *v)).collect(),
    }
}

fn gramian_spectrum<S: Scalar>(n: usize, ctx: &PrecisionContext) -> Result<SpectralResult<S>> {
    singular_values(&legendre_gramian(n)?.to_scalar::<S>(ctx), ctx, &default_tolerance(ctx))
}

fn gramian_decay<S: Scalar>(n: usize, i_max: usize, ctx: &PrecisionContext) -> Result<ExperimentReport> {
    let digits = ctx.digits();
    let mut report = ExperimentReport::new("gramian-decay");
    report.param("n", n);
    report.param("i_max", i_max);
    report.param("digits", digits);

    let sv = gramian_spectrum::<S>(n, ctx)?;
    let values = sv.to_f64();
    let floor = sv.trust_floor.to_f64();
    let trusted = sv.trusted_count();
    report.metric("sigma_1", values[0], digits, Some(floor));
    report.metric("trusted_count", trusted, digits, Some(floor));
    report.metric("sweeps", sv.iterations, digits, None);
    decay_fits(&mut report, "gramian", &values, trusted.min(i_max))?;

    let bound = 2.0 / std::f64::consts::PI.sqrt();
    report.check(
        "norm_bound",
        Check::single(Verdict::from_bool(values[0] <= bound, format!("sigma_1 = {}", values[0])), digits),
    );

    if n >= 2 {
        let half = gramian_spectrum::<S>(n / 2, ctx)?;
        let verdicts = (0..half.len()).map(|k| {
            if !half.trusted[k] {
                Verdict::Untrusted
            } else {
                let (small, big) = (half.values[k].to_f64(), values[k]);
                Verdict::from_bool(small <= big * (1.0 + INTERLACE_SLACK), format!("i={}", k + 1))
            }
        });
        report.check("nested_monotone", Check::aggregate(verdicts.collect::<Vec<_>>(), digits, Some(floor)));
    }

    let mut table = Table::new("gramian_singular_values", &["i", "sigma", "trusted", "reference"]);
    for (k, v) in values.iter().enumerate().take(i_max.min(n)) {
        let i = (k + 1) as f64;
        table.push(vec![(k + 1).into(), (*v).into(), sv.trusted[k].into(), (-1.2 * i + 2.0).exp().into()]);
    }
    report.tables.push(table);
    report.series.push(semilog("sigma_i(G_n)", &values, trusted.min(i_max)));
    report.series.push(Series {
        name: "exp(-1.2 i + 2)".into(),
        points: (1..=trusted.min(i_max)).map(|i| (i as f64, (-1.2 * i as f64 + 2.0).exp())).collect(),
    });
    Ok(report)
}

/// Singular values of the Legendre-moment Gramian `𝔾_n` with decay fits on
/// the trusted leading window (at most `i_max` values).
pub fn run_gramian_decay(n: usize, i_max: usize, digits: u32) -> Result<ExperimentReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let ctx = PrecisionContext::new(digits)?;
    dispatch!(ctx, gramian_decay(n, i_max.max(1), &ctx))
}

fn discretized_decay<S: Scalar>(n: usize, scheme: DiscretizationScheme, ctx: &PrecisionContext) -> Result<ExperimentReport> {
    let digits = ctx.digits();
    let g = GridSpec::new(n)?;
    let mut report = ExperimentReport::new("discretized-decay");
    report.param("n", n);
    report.param("scheme", scheme.to_string());
    report.param("digits", digits);
    let tol = default_tolerance::<S>(ctx);

    let a = singular_values(&a_matrix_numeric::<S>(g, scheme, ctx), ctx, &tol)?;
    let b = singular_values(&bh_matrix_numeric::<S>(g, n, ctx), ctx, &tol)?;
    let j = singular_values(&j_matrix_numeric::<S>(g, ctx), ctx, &tol)?;
    let (av, bv, jv) = (a.to_f64(), b.to_f64(), j.to_f64());
    let analytic: Vec<f64> = (1..=n).map(|i| j_singular_value::<f64>(i, &PrecisionContext::hardware())).collect::<Result<_>>()?;

    report.metric("sigma_1_a", av[0], digits, Some(a.trust_floor.to_f64()));
    report.metric("sigma_1_b", bv[0], digits, Some(b.trust_floor.to_f64()));
    report.metric("sigma_1_j", jv[0], digits, Some(j.trust_floor.to_f64()));
    report.metric("trusted_count_a", a.trusted_count(), digits, Some(a.trust_floor.to_f64()));
    report.metric("trusted_count_b", b.trusted_count(), digits, Some(b.trust_floor.to_f64()));

    let j_window = (n / 100).max(1);
    let j_checks = (0..j_window).map(|k| {
        let rel = (jv[k] - analytic[k]).abs() / analytic[k];
        Verdict::from_bool(rel <= J_RELATIVE_TOLERANCE, format!("i={}, relative error {rel:e}", k + 1))
    });
    report.check("j_matches_analytic", Check::aggregate(j_checks.collect::<Vec<_>>(), digits, None));
    let b_bound = std::f64::consts::PI.sqrt();
    report.check(
        "b_norm_bound",
        Check::single(Verdict::from_bool(bv[0] <= b_bound, format!("sigma_1(B) = {}", bv[0])), digits),
    );

    let window = a.trusted_count();
    match decay_fits(&mut report, "a", &av, window)? {
        Some(kind) => {
            let slope = report.metric_f64("a_fit_slope").unwrap_or(0.0);
            let ok = kind == DecayType::Exponential && slope < 0.0;
            report.check(
                "a_exponential_decay",
                Check::aggregate([Verdict::from_bool(ok, format!("slope {slope}, decay {kind:?}"))], digits, Some(a.trust_floor.to_f64())),
            );
        }
        None => report.check("a_exponential_decay", Check::aggregate([Verdict::Untrusted], digits, None)),
    }
    decay_fits(&mut report, "b", &bv, b.trusted_count())?;

    let mut table = Table::new(
        "singular_values",
        &["i", "sigma_a", "trusted_a", "sigma_b", "trusted_b", "sigma_j", "trusted_j", "sigma_j_analytic"],
    );
    for k in 0..n {
        table.push(vec![
            (k + 1).into(),
            av[k].into(),
            a.trusted[k].into(),
            bv[k].into(),
            b.trusted[k].into(),
            jv[k].into(),
            j.trusted[k].into(),
            analytic[k].into(),
        ]);
    }
    report.tables.push(table);
    report.series.push(semilog("sigma_i(A_n)", &av, a.trusted_count()));
    report.series.push(semilog("sigma_i(B_n)", &bv, b.trusted_count()));
    report.series.push(semilog("sigma_i(J_n)", &jv, j.trusted_count()));
    Ok(report)
}

/// Spectra of `A_n`, `B_n` and `J_n` on the `n`-cell grid.
pub fn run_discretized_decay(n: usize, scheme: DiscretizationScheme, digits: u32) -> Result<ExperimentReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let ctx = PrecisionContext::new(digits)?;
    dispatch!(ctx, discretized_decay(n, scheme, &ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gramian_small() {
        let r = run_gramian_decay(30, 30, 60).unwrap();
        assert!(!r.has_violation(), "{:?}", r.violations());
        assert!(r.metric_f64("gramian_fit_slope").unwrap() < -0.5);
        assert_eq!(r.metrics["gramian_decay_type"].value, "exponential".into());
    }

    #[test]
    fn discretized_small() {
        let r = run_discretized_decay(40, DiscretizationScheme::ExactGramian, 15).unwrap();
        assert!(!r.has_violation(), "{:?}", r.violations());
        assert_eq!(r.table("singular_values").unwrap().rows.len(), 40);
        let p = run_discretized_decay(40, DiscretizationScheme::ProductForm, 15).unwrap();
        assert_eq!(p.parameters["scheme"], "product".into());
    }
}
