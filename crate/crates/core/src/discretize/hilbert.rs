use crate::error::{Error, Result};
use crate::numerics::{DenseMatrix, PrecisionContext, Rational, Scalar};

/// Exact `H_n = (1/(i+j-1))`.
pub fn hilbert_segment(n: usize) -> Result<DenseMatrix<Rational>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Hilbert segment needs n >= 1".into()));
    }
    Ok(DenseMatrix::from_fn(n, n, format!("H_{n}"), |i, j| {
        Rational::recip_int((i + j + 1) as i64).expect("positive index")
    }))
}

fn check_padding(n: usize, base: usize) -> Result<()> {
    if base == 0 || n < base {
        return Err(Error::InvalidArgument(format!(
            "padded difference needs n >= base >= 1, got n = {n}, base = {base}"
        )));
    }
    Ok(())
}

/// Exact `H_n - H_base` with `H_base` padded by zeros to `n x n`.
pub fn padded_difference(n: usize, base: usize) -> Result<DenseMatrix<Rational>> {
    check_padding(n, base)?;
    Ok(DenseMatrix::from_fn(n, n, format!("H_{n}-H_{base}"), |i, j| {
        if i < base && j < base {
            Rational::zero()
        } else {
            Rational::recip_int((i + j + 1) as i64).expect("positive index")
        }
    }))
}

/// Matrix-free action of a linear map, enough for power iteration.
pub trait LinearOperator<S: Scalar> {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn apply(&self, x: &[S], ctx: &PrecisionContext) -> Vec<S>;
    fn apply_transpose(&self, x: &[S], ctx: &PrecisionContext) -> Vec<S>;
}

impl<S: Scalar> LinearOperator<S> for DenseMatrix<S> {
    fn rows(&self) -> usize {
        DenseMatrix::rows(self)
    }

    fn cols(&self) -> usize {
        DenseMatrix::cols(self)
    }

    fn apply(&self, x: &[S], ctx: &PrecisionContext) -> Vec<S> {
        self.mat_vec(x, ctx)
    }

    fn apply_transpose(&self, x: &[S], ctx: &PrecisionContext) -> Vec<S> {
        let mut out = vec![S::zero(ctx); DenseMatrix::cols(self)];
        for (i, xi) in x.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                o.mul_add_assign(a, xi);
            }
        }
        out
    }
}

/// `H_n - H_base` applied without storing the `n x n` matrix. Only the
/// `2n - 1` distinct reciprocals are kept.
#[derive(Clone, Debug)]
pub struct PaddedHilbertDifference<S> {
    n: usize,
    base: usize,
    reciprocals: Vec<S>,
}

impl<S: Scalar> PaddedHilbertDifference<S> {
    pub fn new(n: usize, base: usize, ctx: &PrecisionContext) -> Result<Self> {
        check_padding(n, base)?;
        let one = S::one(ctx);
        let reciprocals = (1..2 * n).map(|m| one.clone() / S::from_i64(m as i64, ctx)).collect();
        Ok(PaddedHilbertDifference { n, base, reciprocals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.n == self.base
    }
}

impl<S: Scalar> LinearOperator<S> for PaddedHilbertDifference<S> {
    fn rows(&self) -> usize {
        self.n
    }

    fn cols(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[S], ctx: &PrecisionContext) -> Vec<S> {
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let start = if i < self.base { self.base } else { 0 };
            let mut acc = S::zero(ctx);
            for (r, xj) in self.reciprocals[i + start..i + self.n].iter().zip(&x[start..]) {
                acc.mul_add_assign(r, xj);
            }
            out.push(acc);
        }
        out
    }

    fn apply_transpose(&self, x: &[S], ctx: &PrecisionContext) -> Vec<S> {
        self.apply(x, ctx)
    }
}
