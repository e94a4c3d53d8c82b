use std::fmt;

use super::precision::PrecisionContext;
use super::rational::Rational;
use super::scalar::Scalar;
use super::surd::Surd;
use crate::error::{Error, Result};

/// Row-major dense matrix with a provenance label such as `"H_n"` or `"G_n^A"`.
///
/// The entry type is either exact (`Rational`, `Surd`) or a working-precision
/// [`Scalar`].
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    label: String,
}

impl<T> DenseMatrix<T> {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        label: impl Into<String>,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix {
            rows,
            cols,
            data,
            label: label.into(),
        }
    }

    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        label: impl Into<String>,
        mut f: impl FnMut(usize, usize) -> Result<T>,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(DenseMatrix {
            rows,
            cols,
            data,
            label: label.into(),
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>, label: impl Into<String>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::InvalidArgument("matrix must be non-empty".into()));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Ok(DenseMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
            label: label.into(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            label: self.label.clone(),
        }
    }
}

impl<T: Clone> DenseMatrix<T> {
    pub fn transpose(&self) -> Self {
        DenseMatrix::from_fn(self.cols, self.rows, format!("{}^T", self.label), |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Leading `rows x cols` block.
    pub fn leading_block(&self, rows: usize, cols: usize) -> Self {
        DenseMatrix::from_fn(rows, cols, self.label.clone(), |i, j| self.get(i, j).clone())
    }
}

impl DenseMatrix<Rational> {
    pub fn to_scalar<S: Scalar>(&self, ctx: &PrecisionContext) -> DenseMatrix<S> {
        self.map(|r| S::from_rational(r, ctx))
    }
}

impl DenseMatrix<Surd> {
    pub fn to_scalar<S: Scalar>(&self, ctx: &PrecisionContext) -> DenseMatrix<S> {
        self.map(|s| s.to_scalar(ctx))
    }
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize, ctx: &PrecisionContext) -> Self {
        DenseMatrix::from_fn(rows, cols, "0", |_, _| S::zero(ctx))
    }

    pub fn identity(n: usize, ctx: &PrecisionContext) -> Self {
        DenseMatrix::from_fn(n, n, format!("I_{n}"), |i, j| {
            if i == j {
                S::one(ctx)
            } else {
                S::zero(ctx)
            }
        })
    }

    pub fn ensure_finite(&self) -> Result<()> {
        if self.data.iter().all(Scalar::is_finite) {
            Ok(())
        } else {
            Err(Error::NonFinite { op: "DenseMatrix" })
        }
    }

    /// Matrix product accumulated in working precision. The label joins the
    /// operand labels.
    pub fn matmul(&self, other: &DenseMatrix<S>, ctx: &PrecisionContext) -> Result<DenseMatrix<S>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let label = format!("{}*{}", self.label, other.label);
        let mut out = DenseMatrix::<S>::zeros(self.rows, other.cols, ctx).with_label(label);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j].mul_add_assign(a, other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn mat_vec(&self, x: &[S], ctx: &PrecisionContext) -> Vec<S> {
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero(ctx);
                for (a, b) in self.row(i).iter().zip(x) {
                    acc.mul_add_assign(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "sub",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b)
                .collect(),
            label: format!("{}-{}", self.label, other.label),
        })
    }

    pub fn frobenius(&self, ctx: &PrecisionContext) -> S {
        let mut acc = S::zero(ctx);
        for x in &self.data {
            acc.mul_add_assign(x, x);
        }
        acc.sqrt()
    }

    pub fn max_abs(&self, ctx: &PrecisionContext) -> S {
        self.data
            .iter()
            .fold(S::zero(ctx), |m, x| m.max_of(x.abs()))
    }

    /// Fails with the first `(row, col)` where `|a_ij - a_ji| > tol * max|a|`.
    pub fn check_symmetric(&self, tol: &S, ctx: &PrecisionContext) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                op: "check_symmetric",
                left: self.shape(),
                right: (self.cols, self.rows),
            });
        }
        let scale = self.max_abs(ctx) * tol;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let d = (self.get(i, j).clone() - self.get(j, i)).abs();
                if d > scale {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn to_f64(&self) -> DenseMatrix<f64> {
        self.map(Scalar::to_f64)
    }
}

impl<T: fmt::Display> fmt::Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} ({}x{})", self.label, self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            let row: Vec<String> = (0..self.cols.min(8))
                .map(|j| format!("{}", self.data[i * self.cols + j]))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw() -> PrecisionContext {
        PrecisionContext::hardware()
    }

    #[test]
    fn identity_product() {
        let ctx = hw();
        let m = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]], "M").unwrap();
        let i2 = DenseMatrix::<f64>::identity(2, &ctx);
        let p = i2.matmul(&m, &ctx).unwrap();
        assert_eq!(p.entries(), m.entries());
        assert_eq!(p.label(), "I_2*M");
    }

    #[test]
    fn hand_product() {
        let ctx = hw();
        let a = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]], "A").unwrap();
        let b = DenseMatrix::from_rows(vec![vec![1.0], vec![1.0]], "b").unwrap();
        let p = a.matmul(&b, &ctx).unwrap();
        assert_eq!(p.shape(), (2, 1));
        assert_eq!(p.entries(), &[3.0, 7.0]);
    }

    #[test]
    fn dimension_mismatch() {
        let ctx = hw();
        let a = DenseMatrix::<f64>::zeros(2, 3, &ctx);
        let err = a.matmul(&a, &ctx).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn frobenius_examples() {
        let ctx = hw();
        assert_eq!(DenseMatrix::<f64>::zeros(3, 3, &ctx).frobenius(&ctx), 0.0);
        let i3 = DenseMatrix::<f64>::identity(3, &ctx);
        assert!((i3.frobenius(&ctx) - 3f64.sqrt()).abs() < 1e-15);
        let h2 = DenseMatrix::from_rows(vec![vec![1.0, 0.5], vec![0.5, 1.0 / 3.0]], "H_2").unwrap();
        let expected = (1.0f64 + 2.0 * 0.25 + 1.0 / 9.0).sqrt();
        assert!((h2.frobenius(&ctx) - expected).abs() < 1e-15);
        assert!((expected - 1.26930).abs() < 1e-5);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(DenseMatrix::from_rows(vec![vec![1.0], vec![1.0, 2.0]], "x").is_err());
    }
}
