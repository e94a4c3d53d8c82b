use super::report::{ExperimentReport, Table};
use crate::numerics::PrecisionContext;
use crate::operators::phi;

pub const TABLE1_N: [u64; 5] = [100, 1_000, 10_000, 1_000_000, 1_000_000_000];
pub const TABLE1_I: [u32; 4] = [2, 4, 10, 51];

/// `φ(n)^(i-1)` over the standard grid of `n` and `i`.
pub fn run_table1() -> ExperimentReport {
    let ctx = PrecisionContext::hardware();
    let mut report = ExperimentReport::new("table1");
    report.param("digits", ctx.digits());
    let mut table = Table::new("phi_powers", &["n", "i", "phi_pow"]);
    for n in TABLE1_N {
        let p: f64 = phi(n, &ctx).expect("n >= 1");
        report.metric(&format!("phi_{n}"), p, ctx.digits(), None);
        for i in TABLE1_I {
            table.push(vec![n.into(), i.into(), p.powi(i as i32 - 1).into()]);
        }
    }
    report.tables.push(table);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape_and_monotonicity() {
        let r = run_table1();
        let t = r.table("phi_powers").unwrap();
        assert_eq!(t.rows.len(), 20);
        let vals: Vec<f64> = t.column("phi_pow").unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
        for row in vals.chunks(4) {
            assert!(row.windows(2).all(|w| w[1] < w[0]));
        }
        for col in 0..4 {
            let down: Vec<f64> = vals.iter().skip(col).step_by(4).copied().collect();
            assert!(down.windows(2).all(|w| w[1] > w[0]));
        }
    }
}
