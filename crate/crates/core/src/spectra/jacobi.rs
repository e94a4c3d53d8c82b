use super::result::SpectralResult;
use crate::error::{Error, Result};
use crate::numerics::{DenseMatrix, PrecisionContext, Scalar};

pub const MAX_SWEEPS: usize = 100;

/// `Σ a_i b_i` with four interleaved accumulators.
pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S], ctx: &PrecisionContext) -> S {
    let mut acc = [S::zero(ctx), S::zero(ctx), S::zero(ctx), S::zero(ctx)];
    let mut ca = a.chunks_exact(4);
    let mut cb = b.chunks_exact(4);
    for (x, y) in (&mut ca).zip(&mut cb) {
        acc[0].mul_add_assign(&x[0], &y[0]);
        acc[1].mul_add_assign(&x[1], &y[1]);
        acc[2].mul_add_assign(&x[2], &y[2]);
        acc[3].mul_add_assign(&x[3], &y[3]);
    }
    for (x, y) in ca.remainder().iter().zip(cb.remainder()) {
        acc[0].mul_add_assign(x, y);
    }
    let [a0, a1, a2, a3] = acc;
    (a0 + a1) + (a2 + a3)
}

/// `t = sign(ζ) / (|ζ| + sqrt(1 + ζ²))` with `ζ = (q - p) / (2 γ)`, the
/// smaller rotation angle annihilating `γ`.
pub(crate) fn rotation<S: Scalar>(app: &S, aqq: &S, apq: &S, ctx: &PrecisionContext) -> (S, S, S) {
    let one = S::one(ctx);
    let zeta = (aqq.clone() - app) / (S::from_i64(2, ctx) * apq);
    let root = (one.clone() + zeta.square()).sqrt();
    let mut t = one.clone() / (zeta.abs() + root);
    if zeta.is_sign_negative() {
        t = -t;
    }
    let c = one.clone() / (one + t.square()).sqrt();
    let s = t.clone() * &c;
    (t, c, s)
}

/// Cyclic (row-by-row) Jacobi eigenvalues of a symmetric matrix.
///
/// Sweeps continue until no off-diagonal entry is large relative to its
/// diagonal neighbours; the result is reported as converged when the
/// remaining off-diagonal Frobenius mass is at most `tol * ‖m‖_F`.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_eigenvalues<S: Scalar>(m: &DenseMatrix<S>, ctx: &PrecisionContext, tol: &S) -> Result<SpectralResult<S>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            op: "symmetric_eigenvalues",
            left: m.shape(),
            right: (m.cols(), m.rows()),
        });
    }
    m.check_symmetric(tol, ctx)?;
    m.ensure_finite()?;
    let n = m.rows();
    let norm = m.frobenius(ctx);
    let mut a: Vec<Vec<S>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let u = S::unit_roundoff(ctx);
    let floor = u.clone() * &u * &norm;
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q].clone();
                let scale = (a[p][p].abs() * a[q][q].abs()).sqrt() * &u;
                if apq.abs() <= scale || apq.abs() <= floor {
                    continue;
                }
                rotated = true;
                let (t, c, s) = rotation(&a[p][p], &a[q][q], &apq, ctx);
                let shift = t * &apq;
                a[p][p] -= &shift;
                a[q][q] += &shift;
                a[p][q] = S::zero(ctx);
                a[q][p] = S::zero(ctx);
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r][p].clone();
                    let arq = a[r][q].clone();
                    let new_p = c.clone() * &arp - s.clone() * &arq;
                    let new_q = s.clone() * &arp + c.clone() * &arq;
                    a[r][p] = new_p.clone();
                    a[p][r] = new_p;
                    a[r][q] = new_q.clone();
                    a[q][r] = new_q;
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps >= MAX_SWEEPS {
            break;
        }
    }
    let mut off = S::zero(ctx);
    for (p, row) in a.iter().enumerate() {
        for (q, v) in row.iter().enumerate() {
            if p != q {
                off.mul_add_assign(v, v);
            }
        }
    }
    let residual = if norm.is_zero() { 0.0 } else { (off.sqrt() / &norm).to_f64() };
    let converged = residual <= tol.to_f64();
    if !converged {
        return Err(Error::NotConverged {
            op: "symmetric_eigenvalues",
            iterations: sweeps,
            residual,
        });
    }
    let values = (0..n).map(|i| a[i][i].clone()).collect();
    Ok(SpectralResult::new(values, sweeps, residual, converged, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretize::hilbert_segment;
    use crate::numerics::BigFloat;

    #[test]
    fn identity_and_h2() {
        let ctx = PrecisionContext::hardware();
        let tol = 1e-5;
        let i3 = DenseMatrix::<f64>::identity(3, &ctx);
        assert_eq!(symmetric_eigenvalues(&i3, &ctx, &tol).unwrap().values, vec![1.0; 3]);
        let h2: DenseMatrix<f64> = hilbert_segment(2).unwrap().to_scalar(&ctx);
        let r = symmetric_eigenvalues(&h2, &ctx, &tol).unwrap();
        let s13 = 13f64.sqrt();
        assert!((r.values[0] - (4.0 + s13) / 6.0).abs() < 1e-15);
        assert!((r.values[1] - (4.0 - s13) / 6.0).abs() < 1e-15);
    }

    #[test]
    fn trace_and_norm_preserved() {
        let ctx = PrecisionContext::new(40).unwrap();
        let h: DenseMatrix<BigFloat> = hilbert_segment(8).unwrap().to_scalar(&ctx);
        let tol = BigFloat::pow10(-30, &ctx);
        let r = symmetric_eigenvalues(&h, &ctx, &tol).unwrap();
        let trace = (0..8).fold(BigFloat::zero(&ctx), |a, i| a + h.get(i, i));
        let sum = r.values.iter().fold(BigFloat::zero(&ctx), |a, v| a + v);
        assert!((trace - sum).abs().to_f64() < 1e-37);
        let sq = r.values.iter().fold(BigFloat::zero(&ctx), |a, v| a + v.clone().square());
        assert!((h.frobenius(&ctx).square() - sq).abs().to_f64() < 1e-37);
    }

    #[test]
    fn h10_at_high_precision_is_fully_trusted() {
        let ctx = PrecisionContext::new(100).unwrap();
        let h: DenseMatrix<BigFloat> = hilbert_segment(10).unwrap().to_scalar(&ctx);
        let tol = BigFloat::pow10(-90, &ctx);
        let r = symmetric_eigenvalues(&h, &ctx, &tol).unwrap();
        assert_eq!(r.trusted_count(), 10);
        let smallest = r.values[9].to_f64();
        assert!(smallest > 1e-14 && smallest < 1e-12, "{smallest}");
    }

    #[test]
    fn rejects_nonsymmetric() {
        let ctx = PrecisionContext::hardware();
        let m = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![0.0, 1.0]], "m").unwrap();
        assert!(matches!(symmetric_eigenvalues(&m, &ctx, &1e-5), Err(Error::NotSymmetric { .. })));
    }
}
