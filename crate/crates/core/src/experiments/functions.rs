use super::report::{Check, ExperimentReport, Series, Table, Verdict};
use crate::discretize::{a_matrix_numeric, j_matrix_numeric, DiscretizationScheme, GridSpec};
use crate::error::{Error, Result};
use crate::numerics::PrecisionContext;
use crate::operators::{j_singular_triple, midpoint};
use crate::spectra::singular_vector;

pub const MAX_DEVIATION: f64 = 5e-2;
pub const SIMILARITY_THRESHOLD: f64 = 0.9;

fn first_vector(m: &crate::numerics::DenseMatrix<f64>, i: usize, ctx: &PrecisionContext) -> Result<(f64, Vec<f64>)> {
    let v = singular_vector(m, i, ctx)?;
    if !v.is_simple() {
        return Err(Error::Domain {
            op: "singular_vector",
            detail: format!("sigma_{i} lies in the cluster {:?}", v.cluster),
        });
    }
    let sigma = v.sigma;
    Ok((sigma, v.vectors.into_iter().next().expect("one vector")))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `i`-th singular functions of `A_n` and `J_n` on the `n`-cell grid,
/// reported as function values `√n · v_k` at the cell midpoints.
pub fn run_singular_functions(n: usize, i: usize) -> Result<ExperimentReport> {
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= n, got i = {i}, n = {n}")));
    }
    let ctx = PrecisionContext::hardware();
    let digits = ctx.digits();
    let g = GridSpec::new(n)?;
    let mut report = ExperimentReport::new("singular-functions");
    report.param("n", n);
    report.param("i", i);
    report.param("digits", digits);

    let (sigma_j, v_j) = first_vector(&j_matrix_numeric::<f64>(g, &ctx), i, &ctx)?;
    let (sigma_a, v_a) = first_vector(&a_matrix_numeric::<f64>(g, DiscretizationScheme::ExactGramian, &ctx), i, &ctx)?;
    let triple = j_singular_triple::<f64>(i, n, &ctx)?;
    let scale = (n as f64).sqrt();
    let analytic: Vec<f64> = triple.u.values().to_vec();
    let analytic_unit: Vec<f64> = analytic.iter().map(|x| x / scale).collect();

    let max_dev = v_j
        .iter()
        .zip(&analytic)
        .map(|(v, u)| (v * scale - u).abs())
        .fold(0.0, f64::max);
    let norm_analytic = dot(&analytic_unit, &analytic_unit).sqrt();
    let sim_a_j = dot(&v_a, &v_j).abs();
    let sim_a_analytic = dot(&v_a, &analytic_unit).abs() / norm_analytic;
    let sim_j_analytic = dot(&v_j, &analytic_unit).abs() / norm_analytic;

    report.metric("sigma_j", sigma_j, digits, None);
    report.metric("sigma_j_analytic", triple.sigma, digits, None);
    report.metric("sigma_a", sigma_a, digits, None);
    report.metric("max_deviation_j_vs_analytic", max_dev, digits, None);
    report.metric("cos_similarity_a_j", sim_a_j, digits, None);
    report.metric("cos_similarity_a_analytic", sim_a_analytic, digits, None);
    report.metric("cos_similarity_j_analytic", sim_j_analytic, digits, None);
    report.check(
        "j_matches_analytic",
        Check::single(Verdict::from_bool(max_dev <= MAX_DEVIATION, format!("max deviation {max_dev:e}")), digits),
    );
    report.check(
        "a_differs_from_j",
        Check::single(
            Verdict::from_bool(sim_a_j < SIMILARITY_THRESHOLD, format!("|cos similarity| {sim_a_j}")),
            digits,
        ),
    );

    let mut table = Table::new("singular_functions", &["k", "t", "u_a", "u_j", "u_j_analytic"]);
    for k in 0..n {
        let t: f64 = midpoint(k, n, &ctx);
        table.push(vec![
            (k + 1).into(),
            t.into(),
            (v_a[k] * scale).into(),
            (v_j[k] * scale).into(),
            analytic[k].into(),
        ]);
    }
    report.tables.push(table);
    let curve = |name: &str, v: &[f64], s: f64| Series {
        name: name.into(),
        points: (0..n).map(|k| (midpoint::<f64>(k, n, &ctx), v[k] * s)).collect(),
    };
    report.series.push(curve(&format!("u_{i}(A_n)"), &v_a, scale));
    report.series.push(curve(&format!("u_{i}(J_n)"), &v_j, scale));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_function_is_half_cosine_arch() {
        let r = run_singular_functions(64, 1).unwrap();
        let u: Vec<f64> = r.table("singular_functions").unwrap().column("u_j").unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
        assert!(u.iter().all(|x| *x > 0.0));
        assert!(u.windows(2).all(|w| w[1] < w[0]));
        assert!(r.metric_f64("max_deviation_j_vs_analytic").unwrap() < 1e-2);
    }

    #[test]
    fn moderate_grid() {
        let r = run_singular_functions(200, 10).unwrap();
        assert!(!r.has_violation(), "{:?}", r.violations());
        assert!(run_singular_functions(5, 6).is_err());
    }
}
