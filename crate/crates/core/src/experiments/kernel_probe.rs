use super::report::{Check, ExperimentReport, Series, Table, Verdict};
use crate::error::Result;
use crate::numerics::PrecisionContext;
use crate::operators::{kernel_ds_partial_sum, kernel_k, kernel_series};

pub const DEFAULT_RESOLUTION: usize = 21;
pub const DEFAULT_EPSILONS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
const SERIES_TERMS: usize = 2000;
const DS_TERMS: usize = 100_000;

/// `Σ_{j>J} x^j / j²`; Euler-Maclaurin for `x = 1`, direct summation below.
fn dilog_tail(x: f64, terms: usize) -> f64 {
    let big_j = terms as f64;
    if x == 1.0 {
        return 1.0 / big_j - 0.5 / big_j.powi(2) + 1.0 / (6.0 * big_j.powi(3)) - 1.0 / (30.0 * big_j.powi(5));
    }
    let mut sum = 0.0;
    let mut p = x.powi(terms as i32);
    for j in terms + 1.. {
        p *= x;
        let t = p / (j * j) as f64;
        sum += t;
        if t <= 1e-20 * sum.abs() || p == 0.0 {
            break;
        }
    }
    sum
}

/// Series value with the truncation tail added back.
fn series_with_tail(s: f64, t: f64, ctx: &PrecisionContext) -> Result<f64> {
    let head = kernel_series(&s, &t, SERIES_TERMS, ctx)?;
    let tail = dilog_tail(1.0, SERIES_TERMS) - dilog_tail(s, SERIES_TERMS) - dilog_tail(t, SERIES_TERMS)
        + dilog_tail(s * t, SERIES_TERMS);
    Ok(head + tail)
}

/// Samples the kernel of `A*A` on a grid over the closed unit square and
/// probes the blow-up of `∂k/∂s` at `s = 1`.
pub fn run_kernel_probe(resolution: usize, epsilons: &[f64]) -> Result<ExperimentReport> {
    let ctx = PrecisionContext::hardware();
    let digits = ctx.digits();
    let res = resolution.max(2);
    let mut report = ExperimentReport::new("kernel-probe");
    report.param("resolution", res);
    report.param("digits", digits);
    report.param("epsilons", epsilons.iter().map(|e| format!("{e:e}")).collect::<Vec<_>>().join(";"));

    let grid: Vec<f64> = (0..res).map(|a| a as f64 / (res - 1) as f64).collect();
    let mut samples = Table::new("kernel_grid", &["s", "t", "k", "series"]);
    let mut asym: f64 = 0.0;
    let mut edge: f64 = 0.0;
    let mut series_dev: f64 = 0.0;
    let mut finite = true;
    for &s in &grid {
        for &t in &grid {
            let k = kernel_k(&s, &t, &ctx)?;
            let kt = kernel_k(&t, &s, &ctx)?;
            let series = series_with_tail(s, t, &ctx)?;
            finite &= k.is_finite();
            asym = asym.max((k - kt).abs());
            if s == 1.0 || t == 1.0 {
                edge = edge.max(k.abs());
            }
            series_dev = series_dev.max((k - series).abs());
            samples.push(vec![s.into(), t.into(), k.into(), series.into()]);
        }
    }
    report.metric("max_asymmetry", asym, digits, None);
    report.metric("max_edge_value", edge, digits, None);
    report.metric("max_series_deviation", series_dev, digits, None);
    report.check("finite", Check::single(Verdict::from_bool(finite, "grid"), digits));
    report.check("symmetric", Check::single(Verdict::from_bool(asym == 0.0, format!("max |k(s,t)-k(t,s)| = {asym:e}")), digits));
    report.check("zero_on_edges", Check::single(Verdict::from_bool(edge == 0.0, format!("max edge |k| = {edge:e}")), digits));
    report.check(
        "series_agreement",
        Check::single(Verdict::from_bool(series_dev <= 1e-10, format!("deviation {series_dev:e}")), digits),
    );
    report.tables.push(samples);

    let mut quotients = Table::new("difference_quotients", &["t", "epsilon", "quotient", "ds_partial_sum"]);
    let mut growth = Vec::new();
    let mut at_zero = Vec::new();
    for &t in &[0.0, 0.5] {
        let mut prev: Option<f64> = None;
        for &eps in epsilons {
            let s = 1.0 - eps;
            let q = (kernel_k(&1.0, &t, &ctx)? - kernel_k(&s, &t, &ctx)?) / eps;
            let partial = kernel_ds_partial_sum(&s, &t, DS_TERMS, &ctx)?;
            quotients.push(vec![t.into(), eps.into(), q.into(), partial.into()]);
            if let Some(p) = prev {
                growth.push(Verdict::from_bool(q.abs() > p.abs(), format!("t={t}, eps={eps:e}")));
            }
            prev = Some(q);
            if t == 0.0 {
                at_zero.push((eps, q));
            }
        }
    }
    report.check("quotient_growth", Check::aggregate(growth, digits, None));
    let find = |e: f64| at_zero.iter().find(|(x, _)| (*x / e - 1.0).abs() < 1e-9).map(|(_, q)| *q);
    if let (Some(q2), Some(q4)) = (find(1e-2), find(1e-4)) {
        let ratio = q4 / q2;
        report.metric("quotient_ratio_1e-4_over_1e-2", ratio, digits, None);
        let ok = (ratio / 2.0 - 1.0).abs() <= 0.25;
        report.check("logarithmic_ratio", Check::single(Verdict::from_bool(ok, format!("ratio {ratio}")), digits));
    }
    report.series.push(Series {
        name: "|difference quotient| at t=0".into(),
        points: at_zero.iter().map(|(e, q)| (-e.log10(), q.abs())).collect(),
    });
    report.tables.push(quotients);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tails() {
        let exact: f64 = (1..=10_000_000).rev().map(|j| 1.0 / (j as f64 * j as f64)).sum();
        let pi2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!(((pi2 - exact) - dilog_tail(1.0, 10_000_000)).abs() < 1e-15);
        assert!(dilog_tail(0.5, 2000) < 1e-300);
    }

    #[test]
    fn coarse_probe() {
        let r = run_kernel_probe(5, &DEFAULT_EPSILONS).unwrap();
        assert!(!r.has_violation(), "{:?}", r.violations());
        assert_eq!(r.table("kernel_grid").unwrap().rows.len(), 25);
    }
}
