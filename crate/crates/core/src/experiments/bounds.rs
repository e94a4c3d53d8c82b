use super::report::{Check, ExperimentReport, Series, Table, Verdict};
use crate::discretize::{a_matrix_numeric, j_matrix_numeric, DiscretizationScheme, GridSpec};
use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Scalar};
use crate::spectra::{default_tolerance, hilbert_factor_singular_values, singular_values};

fn product_bound<S: Scalar>(n: usize, ctx: &PrecisionContext) -> Result<ExperimentReport> {
    let digits = ctx.digits();
    let g = GridSpec::new(n)?;
    let mut report = ExperimentReport::new("product-bound");
    report.param("n", n);
    report.param("digits", digits);
    let tol = default_tolerance::<S>(ctx);
    let a = singular_values(&a_matrix_numeric::<S>(g, DiscretizationScheme::ExactGramian, ctx), ctx, &tol)?;
    let l = hilbert_factor_singular_values::<S>(n, ctx)?;
    let j = singular_values(&j_matrix_numeric::<S>(g, ctx), ctx, &tol)?;
    report.metric("trust_floor_a", a.trust_floor.to_f64(), digits, None);
    report.metric("trust_floor_l", l.trust_floor.to_f64(), digits, None);
    report.metric("trust_floor_j", j.trust_floor.to_f64(), digits, None);

    let mut table = Table::new(
        "product_bound",
        &["i", "sigma_2i_a", "sigma_i_l", "sigma_i_j", "product", "verdict", "sigma_i_a_over_product"],
    );
    let mut verdicts = Vec::new();
    let mut heuristic = Vec::new();
    for k in 0..n / 2 {
        let lhs = &a.values[2 * k + 1];
        let product = l.values[k].clone() * &j.values[k];
        let verdict = if a.trusted[2 * k + 1] && l.trusted[k] && j.trusted[k] {
            Verdict::from_bool(*lhs <= product, format!("i={}", k + 1))
        } else {
            Verdict::Untrusted
        };
        let ratio = (a.values[k].clone() / &product).to_f64();
        let label = match &verdict {
            Verdict::Holds => "holds",
            Verdict::Violated { .. } => "violated",
            Verdict::Untrusted => "untrusted",
        };
        table.push(vec![
            (k + 1).into(),
            lhs.to_f64().into(),
            l.values[k].to_f64().into(),
            j.values[k].to_f64().into(),
            product.to_f64().into(),
            label.into(),
            ratio.into(),
        ]);
        if a.trusted[k] && l.trusted[k] && j.trusted[k] {
            heuristic.push(((k + 1) as f64, ratio));
        }
        verdicts.push(verdict);
    }
    let floor = a.trust_floor.to_f64();
    report.check("product_bound", Check::aggregate(verdicts, digits, Some(floor)));
    if let Some(max) = heuristic.iter().map(|(_, r)| *r).reduce(f64::max) {
        report.metric("max_heuristic_ratio", max, digits, None);
    }
    report.series.push(Series {
        name: "sigma_i(A_n) / (sigma_i(L_n) sigma_i(J_n))".into(),
        points: heuristic,
    });
    report.tables.push(table);
    Ok(report)
}

/// `σ_{2i}(A_n) ≤ σ_i(L_n) σ_i(J_n)` for `i ≤ n/2`, with the heuristic
/// same-index ratio tabulated alongside.
pub fn run_product_bound(n: usize, digits: u32) -> Result<ExperimentReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let ctx = PrecisionContext::new(digits)?;
    dispatch!(ctx, product_bound(n, &ctx))
}
