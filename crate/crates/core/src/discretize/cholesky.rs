use crate::error::{Error, Result};
use crate::numerics::{DenseMatrix, PrecisionContext, Rational, Scalar, Surd};

fn check_square<T>(m: &DenseMatrix<T>, op: &'static str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            op,
            left: m.shape(),
            right: (m.cols(), m.rows()),
        });
    }
    Ok(())
}

/// Numeric Cholesky `m = L Lᵀ` at working precision.
///
/// A pivot that is not strictly positive is reported as
/// [`Error::PrecisionExhausted`] with its 1-based index.
pub fn cholesky_factor<S: Scalar>(m: &DenseMatrix<S>, ctx: &PrecisionContext) -> Result<DenseMatrix<S>> {
    check_square(m, "cholesky_factor")?;
    let tol = S::pow10(ctx.default_tol_exponent(), ctx);
    m.check_symmetric(&tol, ctx)?;
    let n = m.rows();
    let mut l = DenseMatrix::<S>::zeros(n, n, ctx).with_label(format!("chol({})", m.label()));
    for j in 0..n {
        let mut d = m.get(j, j).clone();
        for k in 0..j {
            let v = l.get(j, k).clone();
            d -= v.square();
        }
        if !d.is_finite() || d <= S::zero(ctx) {
            return Err(Error::PrecisionExhausted { pivot: j + 1 });
        }
        let djj = d.sqrt();
        for i in (j + 1)..n {
            let mut s = m.get(i, j).clone();
            for k in 0..j {
                let (a, b) = (l.get(i, k).clone(), l.get(j, k));
                s -= a * b;
            }
            *l.get_mut(i, j) = s / &djj;
        }
        *l.get_mut(j, j) = djj;
    }
    Ok(l)
}

/// `‖L Lᵀ - m‖_F / ‖m‖_F`
pub fn cholesky_residual<S: Scalar>(l: &DenseMatrix<S>, m: &DenseMatrix<S>, ctx: &PrecisionContext) -> Result<S> {
    let llt = l.matmul(&l.transpose(), ctx)?;
    Ok(llt.sub(m)?.frobenius(ctx) / m.frobenius(ctx))
}

/// Exact `Pᵀ m P = L D Lᵀ` with unit lower `L`.
#[derive(Clone, Debug)]
pub struct ExactLdl {
    /// `perm[k]` is the original index eliminated at step `k`.
    pub perm: Vec<usize>,
    pub unit_lower: DenseMatrix<Rational>,
    pub diagonal: Vec<Rational>,
}

impl ExactLdl {
    /// `F = P L √D`, so `F Fᵀ = m`. Lower triangular when no pivoting happened.
    pub fn factor(&self) -> DenseMatrix<Surd> {
        let n = self.diagonal.len();
        let mut inverse = vec![0; n];
        for (k, &p) in self.perm.iter().enumerate() {
            inverse[p] = k;
        }
        DenseMatrix::from_fn(n, n, "F", |i, k| {
            let l = self.unit_lower.get(inverse[i], k);
            if l.is_zero() {
                Surd::zero()
            } else {
                Surd::new(l.clone(), self.diagonal[k].clone())
            }
        })
    }
}

/// Exact rational LDLᵀ, optionally with symmetric diagonal pivoting
/// (largest remaining diagonal first).
pub fn exact_ldl(m: &DenseMatrix<Rational>, pivoting: bool) -> Result<ExactLdl> {
    check_square(m, "exact_ldl")?;
    let n = m.rows();
    for i in 0..n {
        for j in 0..i {
            if m.get(i, j) != m.get(j, i) {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    let mut w: Vec<Vec<Rational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut lower = DenseMatrix::from_fn(n, n, "L", |_, _| Rational::zero());
    let mut diagonal = Vec::with_capacity(n);
    for k in 0..n {
        if pivoting {
            let p = (k..n).max_by(|&a, &b| w[a][a].cmp(&w[b][b]).then(b.cmp(&a))).expect("nonempty");
            if p != k {
                w.swap(k, p);
                for row in w.iter_mut() {
                    row.swap(k, p);
                }
                perm.swap(k, p);
                for c in 0..k {
                    let t = lower.get(k, c).clone();
                    *lower.get_mut(k, c) = lower.get(p, c).clone();
                    *lower.get_mut(p, c) = t;
                }
            }
        }
        let d = w[k][k].clone();
        if d.signum() <= 0 {
            return Err(Error::Domain {
                op: "exact_ldl",
                detail: format!("pivot {} is {d}; matrix is not positive definite", k + 1),
            });
        }
        let column: Vec<Rational> = (k + 1..n).map(|i| w[i][k].clone()).collect();
        let inv = d.recip()?;
        for (a, ci) in column.iter().enumerate() {
            let i = k + 1 + a;
            let li = ci * &inv;
            for (b, cj) in column.iter().enumerate().take(a + 1) {
                let j = k + 1 + b;
                let update = &li * cj;
                w[i][j] = &w[i][j] - &update;
                if i != j {
                    w[j][i] = w[i][j].clone();
                }
            }
            *lower.get_mut(i, k) = li;
        }
        *lower.get_mut(k, k) = Rational::one();
        diagonal.push(d);
    }
    Ok(ExactLdl {
        perm,
        unit_lower: lower,
        diagonal,
    })
}

/// Exact Cholesky factor with entries `l_ik √d_k`, rounded once per entry by
/// [`DenseMatrix::to_scalar`].
pub fn exact_cholesky(m: &DenseMatrix<Rational>) -> Result<DenseMatrix<Surd>> {
    Ok(exact_ldl(m, false)?.factor().with_label(format!("chol({})", m.label())))
}

/// Diagonally pivoted factor `F` with `F Fᵀ = m`. Its columns are graded,
/// which keeps one-sided Jacobi relatively accurate on the smallest values.
pub fn exact_pivoted_cholesky(m: &DenseMatrix<Rational>) -> Result<DenseMatrix<Surd>> {
    Ok(exact_ldl(m, true)?.factor().with_label(format!("pchol({})", m.label())))
}

/// Truncated `m ≈ P Pᵀ` from greedy diagonal pivoting.
#[derive(Clone)]
pub struct LowRankCholesky<S> {
    /// `n x rank`
    pub factor: DenseMatrix<S>,
    pub pivots: Vec<usize>,
    /// Trace of the neglected positive semidefinite remainder.
    pub residual_trace: S,
}

/// Pivoted partial Cholesky of an `n x n` positive semidefinite matrix given
/// by `entry(i, j)`. Entries are generated on demand, one column per step.
pub fn pivoted_cholesky<S: Scalar>(
    n: usize,
    mut entry: impl FnMut(usize, usize) -> S,
    max_rank: usize,
    rel_tol: &S,
    ctx: &PrecisionContext,
) -> Result<LowRankCholesky<S>> {
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    let mut diag: Vec<S> = (0..n).map(|i| entry(i, i)).collect();
    let initial = diag.iter().fold(S::zero(ctx), |a, d| a + d);
    let stop = initial.clone() * rel_tol;
    let mut columns: Vec<Vec<S>> = Vec::new();
    let mut pivots = Vec::new();
    let mut trace = initial;
    let rank = max_rank.min(n);
    while columns.len() < rank && trace > stop {
        let (p, dp) = diag
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .fold((usize::MAX, S::zero(ctx)), |best, (i, d)| if *d > best.1 { (i, d.clone()) } else { best });
        if p == usize::MAX {
            break;
        }
        let root = dp.sqrt();
        let mut col = Vec::with_capacity(n);
        for i in 0..n {
            if pivots.contains(&i) {
                col.push(S::zero(ctx));
                continue;
            }
            let mut v = entry(i, p);
            for c in &columns {
                let t = c[i].clone() * &c[p];
                v -= t;
            }
            col.push(v / &root);
        }
        col[p] = root;
        for (d, c) in diag.iter_mut().zip(&col) {
            *d -= c.square();
        }
        diag[p] = S::zero(ctx);
        pivots.push(p);
        columns.push(col);
        trace = diag
            .iter()
            .enumerate()
            .filter(|(i, _)| !pivots.contains(i))
            .fold(S::zero(ctx), |a, (_, d)| if d.is_sign_negative() { a } else { a + d });
    }
    let r = columns.len();
    let factor = DenseMatrix::from_fn(n, r, format!("lowrank_{r}"), |i, k| columns[k][i].clone());
    Ok(LowRankCholesky {
        factor,
        pivots,
        residual_trace: trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize::hilbert_segment;
    use crate::numerics::BigFloat;

    #[test]
    fn hand_factor_of_h2() {
        let ctx = PrecisionContext::hardware();
        let h2: DenseMatrix<f64> = hilbert_segment(2).unwrap().to_scalar(&ctx);
        let l = cholesky_factor(&h2, &ctx).unwrap();
        assert_eq!(*l.get(0, 0), 1.0);
        assert_eq!(*l.get(0, 1), 0.0);
        assert!((l.get(1, 0) - 0.5).abs() < 1e-16);
        assert!((l.get(1, 1) - 1.0 / (2.0 * 3f64.sqrt())).abs() < 1e-16);
        let h1: DenseMatrix<f64> = hilbert_segment(1).unwrap().to_scalar(&ctx);
        assert_eq!(*cholesky_factor(&h1, &ctx).unwrap().get(0, 0), 1.0);
    }

    #[test]
    fn exact_factor_of_h2() {
        let l = exact_cholesky(&hilbert_segment(2).unwrap()).unwrap();
        assert_eq!(l.get(1, 1).square(), Rational::new(1, 12).unwrap());
        assert!(l.get(0, 1).is_zero());
        assert_eq!(l.get(1, 0).square(), Rational::new(1, 4).unwrap());
    }

    #[test]
    fn hardware_pivot_failure_on_h50() {
        let ctx = PrecisionContext::hardware();
        let h: DenseMatrix<f64> = hilbert_segment(50).unwrap().to_scalar(&ctx);
        match cholesky_factor(&h, &ctx) {
            Err(Error::PrecisionExhausted { pivot }) => assert!((10..=20).contains(&pivot), "pivot {pivot}"),
            other => panic!("expected pivot failure, got {other:?}"),
        }
    }

    #[test]
    fn high_precision_residual_on_h50() {
        let ctx = PrecisionContext::new(100).unwrap();
        let h: DenseMatrix<BigFloat> = hilbert_segment(50).unwrap().to_scalar(&ctx);
        let l = cholesky_factor(&h, &ctx).unwrap();
        assert!(cholesky_residual(&l, &h, &ctx).unwrap().to_f64() < 1e-95);
    }

    #[test]
    fn pivoted_factor_reproduces_matrix() {
        let h = hilbert_segment(8).unwrap();
        let ldl = exact_ldl(&h, true).unwrap();
        assert_ne!(ldl.perm, (0..8).collect::<Vec<_>>());
        let f = ldl.factor();
        for i in 0..8 {
            for j in 0..8 {
                // Σ_k F_ik F_jk with common radicand d_k is exact.
                let s: Rational = (0..8)
                    .map(|k| f.get(i, k).coeff() * f.get(j, k).coeff() * f.get(i, k).radicand())
                    .sum();
                assert_eq!(&s, h.get(i, j));
            }
        }
    }

    #[test]
    fn not_positive_definite() {
        let m = DenseMatrix::from_rows(
            vec![vec![Rational::one(), Rational::from(2)], vec![Rational::from(2), Rational::one()]],
            "m",
        )
        .unwrap();
        assert!(exact_ldl(&m, false).is_err());
        let ctx = PrecisionContext::hardware();
        assert!(matches!(
            cholesky_factor(&m.to_scalar::<f64>(&ctx), &ctx),
            Err(Error::PrecisionExhausted { pivot: 2 })
        ));
    }

    #[test]
    fn low_rank_captures_hilbert() {
        let ctx = PrecisionContext::hardware();
        let tol = 1e-14;
        let lr = pivoted_cholesky(40, |i, j| 1.0 / (i + j + 1) as f64, 40, &tol, &ctx).unwrap();
        assert!(lr.factor.cols() < 25);
        assert!(lr.residual_trace <= 1e-14 * 3.0);
        let approx = lr.factor.matmul(&lr.factor.transpose(), &ctx).unwrap();
        for i in 0..40 {
            for j in 0..40 {
                assert!((approx.get(i, j) - 1.0 / (i + j + 1) as f64).abs() < 1e-12);
            }
        }
    }
}
