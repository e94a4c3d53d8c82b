//! Operator matrices against normalized indicators `û_k = h^{-1/2} 1_{cell k}`
//! (columns) and unit vectors `e^(j)` or Legendre polynomials (rows).

use std::fmt;
use std::str::FromStr;

use rug::Integer;
use serde::Serialize;

use super::cholesky::exact_cholesky;
use super::hilbert::hilbert_segment;
use crate::error::{Error, Result};
use crate::numerics::{DenseMatrix, PrecisionContext, Rational, Scalar, Surd};
use crate::operators::legendre;

/// Uniform partition of [0, 1] into `n` cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    n: usize,
}

impl GridSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("grid needs n >= 1".into()));
        }
        Ok(GridSpec { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> Rational {
        Rational::recip_int(self.n as i64).expect("n >= 1")
    }

    /// `‖û_k‖² = h · (1/h)` exactly; supports are disjoint by construction.
    pub fn basis_is_orthonormal(&self) -> bool {
        let h = self.h();
        let height_sq = h.recip().expect("h > 0");
        h * height_sq == Rational::one()
    }

    fn sqrt_n(&self) -> Rational {
        Rational::from(self.n as i64)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscretizationScheme {
    /// Exact `<A û_k, e^(j)>`.
    #[default]
    ExactGramian,
    /// `B_n · J_n`
    ProductForm,
}

impl fmt::Display for DiscretizationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiscretizationScheme::ExactGramian => "exact-gramian",
            DiscretizationScheme::ProductForm => "product",
        })
    }
}

impl FromStr for DiscretizationScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-gramian" => Ok(DiscretizationScheme::ExactGramian),
            "product" | "product-form" => Ok(DiscretizationScheme::ProductForm),
            other => Err(Error::InvalidArgument(format!("unknown scheme `{other}`"))),
        }
    }
}

fn ipow(base: usize, exp: usize) -> Integer {
    Integer::from(Integer::u_pow_u(base as u32, exp as u32))
}

/// `J_n`: `h` below the diagonal, `h/2` on it.
pub fn j_matrix(g: GridSpec) -> DenseMatrix<Rational> {
    let h = g.h();
    let half = Rational::new(1, 2 * g.n as i64).expect("n >= 1");
    DenseMatrix::from_fn(g.n, g.n, format!("J_{}", g.n), |m, k| match m.cmp(&k) {
        std::cmp::Ordering::Greater => h.clone(),
        std::cmp::Ordering::Equal => half.clone(),
        std::cmp::Ordering::Less => Rational::zero(),
    })
}

/// `B_n`: entry `(j, k) = ((kh)^j - ((k-1)h)^j) / (j √h)`.
pub fn bh_matrix(g: GridSpec, rows: usize) -> DenseMatrix<Surd> {
    let n = g.n;
    DenseMatrix::from_fn(rows, n, format!("B_{n}"), |r, c| {
        let (j, k) = (r + 1, c + 1);
        let numer = ipow(k, j) - ipow(k - 1, j);
        let denom = ipow(n, j) * Integer::from(j);
        Surd::new(Rational::new(numer, denom).expect("nonzero"), g.sqrt_n())
    })
}

/// `A_n` with `n` moments and `n` cells.
pub fn a_matrix(g: GridSpec, scheme: DiscretizationScheme) -> DenseMatrix<Surd> {
    let n = g.n;
    DenseMatrix::from_fn(n, n, format!("A_{n}"), |r, c| {
        let (j, k) = (r + 1, c + 1);
        let (numer, denom) = match scheme {
            DiscretizationScheme::ExactGramian => {
                let cell = Integer::from(j) * (ipow(k, j + 1) - ipow(k - 1, j + 1))
                    - Integer::from(j + 1) * Integer::from(k - 1) * (ipow(k, j) - ipow(k - 1, j));
                let tail = Integer::from(j + 1) * (ipow(n, j) - ipow(k, j));
                (cell + tail, Integer::from(j * (j + 1)) * ipow(n, j + 1))
            }
            DiscretizationScheme::ProductForm => {
                let numer = Integer::from(2) * (ipow(n, j) - ipow(k, j)) + ipow(k, j) - ipow(k - 1, j);
                (numer, Integer::from(2 * j) * ipow(n, j + 1))
            }
        };
        Surd::new(Rational::new(numer, denom).expect("nonzero"), g.sqrt_n())
    })
}

/// `<A L_i, e^(j)>` with rows indexed by the Legendre basis and columns by
/// the moment: `1/(j+1)` for `i = 1` and `<L_i, t^j>/j` otherwise.
pub fn legendre_gramian(n: usize) -> Result<DenseMatrix<Surd>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Gramian needs n >= 1".into()));
    }
    let polys = (1..=n).map(legendre).collect::<Result<Vec<_>>>()?;
    Ok(DenseMatrix::from_fn(n, n, format!("G_{n}"), |r, c| {
        let j = c + 1;
        if r == 0 {
            Surd::rational(Rational::recip_int(j as i64 + 1).expect("positive"))
        } else {
            polys[r]
                .dot_monomial(j)
                .scale(&Rational::recip_int(j as i64).expect("positive"))
        }
    }))
}

/// `<L_m, J û_k>` for `m = 1..=rows`, integrated exactly.
pub fn qj_gramian(g: GridSpec, rows: usize) -> Result<DenseMatrix<Surd>> {
    let n = g.n;
    let h = g.h();
    let polys = (1..=rows).map(legendre).collect::<Result<Vec<_>>>()?;
    Ok(DenseMatrix::from_fn(rows, n, format!("QJ_{n}"), |r, c| {
        let k = c + 1;
        let a = Rational::new((k - 1) as i64, n as i64).expect("n >= 1");
        let b = Rational::new(k as i64, n as i64).expect("n >= 1");
        let mut acc = Rational::zero();
        for (p, coeff) in polys[r].coefficients().iter().enumerate() {
            if *coeff == 0 {
                continue;
            }
            let p1 = (p + 1) as u32;
            let p2 = (p + 2) as u32;
            let ramp = (b.pow(p2) - a.pow(p2)) * Rational::recip_int(p2 as i64).expect("positive")
                - (b.pow(p1) - a.pow(p1)) * &a * Rational::recip_int(p1 as i64).expect("positive");
            let flat = (Rational::one() - b.pow(p1)) * &h * Rational::recip_int(p1 as i64).expect("positive");
            acc = acc + Rational::from(coeff.clone()) * (ramp + flat);
        }
        let radicand = Rational::from(polys[r].normalization_radicand() as i64) * g.sqrt_n();
        Surd::new(acc, radicand)
    }))
}

/// Signs `(-1)^(m-1)` of `<t^(m-1), L_m>`: the lower-triangular factor `𝕃`
/// with `B = 𝕃 Q` equals the Cholesky factor of `H` times `diag(signs)`.
pub fn legendre_orientation(n: usize) -> Vec<i32> {
    (0..n).map(|m| if m % 2 == 0 { 1 } else { -1 }).collect()
}

/// Largest entry of `|𝕃_n · QJ_n - A_n|` with `𝕃_n` from the exact Cholesky
/// factor of `H_n` and `A_n` from the exact-Gramian scheme.
pub fn factorization_defect<S: Scalar>(n: usize, ctx: &PrecisionContext) -> Result<S> {
    let g = GridSpec::new(n)?;
    let signs = legendre_orientation(n);
    let l = exact_cholesky(&hilbert_segment(n)?)?;
    let oriented = DenseMatrix::from_fn(n, n, "L", |i, m| {
        if signs[m] < 0 {
            l.get(i, m).neg()
        } else {
            l.get(i, m).clone()
        }
    })
    .to_scalar::<S>(ctx);
    let qj = qj_gramian(g, n)?.to_scalar::<S>(ctx);
    let a = a_matrix(g, DiscretizationScheme::ExactGramian).to_scalar::<S>(ctx);
    Ok(oriented.matmul(&qj, ctx)?.sub(&a)?.max_abs(ctx))
}

/// `1 - (1 - y)^p` without cancellation.
fn one_minus_pow<S: Scalar>(y: &S, p: usize, ctx: &PrecisionContext) -> S {
    if *y == S::one(ctx) {
        return S::one(ctx);
    }
    let e = S::from_i64(p as i64, ctx) * (-y.clone()).ln_1p();
    -e.exp_m1()
}

/// `(1 - y)^(j+1) - 1 + (j+1) y`, the second-order remainder of the binomial
/// expansion.
fn binomial_remainder<S: Scalar>(y: &S, j: usize, ctx: &PrecisionContext) -> S {
    let q = S::from_i64(j as i64 + 1, ctx);
    let z = q.clone() * y;
    if z >= S::from_f64(0.5, ctx) {
        let e = q * (-y.clone()).ln_1p();
        return e.exp_m1() + z;
    }
    let u = S::unit_roundoff(ctx);
    let mut term = S::from_i64(((j + 1) * j / 2) as i64, ctx) * y * y;
    let mut sum = term.clone();
    let mut m = 2usize;
    while m < j + 1 {
        term *= -(S::from_i64((j + 1 - m) as i64, ctx) * y) / S::from_i64(m as i64 + 1, ctx);
        sum += &term;
        m += 1;
        if term.abs() <= u.clone() * sum.abs() {
            break;
        }
    }
    sum
}

struct CellPowers<S> {
    /// `(k/n)^j`
    b_pow: S,
    /// `1 - ((k-1)/k)^j`
    omp: S,
    /// `1 - (k/n)^j`
    tail: S,
}

fn cell_powers<S: Scalar>(n: usize, j: usize, k: usize, ctx: &PrecisionContext) -> CellPowers<S> {
    let nn = S::from_i64(n as i64, ctx);
    let b = S::from_i64(k as i64, ctx) / &nn;
    let y = S::one(ctx) / S::from_i64(k as i64, ctx);
    let gap = S::from_i64((n - k) as i64, ctx) / &nn;
    CellPowers {
        b_pow: b.powi(j as i32),
        omp: one_minus_pow(&y, j, ctx),
        tail: one_minus_pow(&gap, j, ctx),
    }
}

/// `J_n` at working precision.
pub fn j_matrix_numeric<S: Scalar>(g: GridSpec, ctx: &PrecisionContext) -> DenseMatrix<S> {
    let h = S::one(ctx) / S::from_i64(g.n as i64, ctx);
    let half = h.clone() / S::from_i64(2, ctx);
    DenseMatrix::from_fn(g.n, g.n, format!("J_{}", g.n), |m, k| match m.cmp(&k) {
        std::cmp::Ordering::Greater => h.clone(),
        std::cmp::Ordering::Equal => half.clone(),
        std::cmp::Ordering::Less => S::zero(ctx),
    })
}

/// `B_n` at working precision, for grids too fine for exact integers.
pub fn bh_matrix_numeric<S: Scalar>(g: GridSpec, rows: usize, ctx: &PrecisionContext) -> DenseMatrix<S> {
    let root = S::from_i64(g.n as i64, ctx).sqrt();
    DenseMatrix::from_fn(rows, g.n, format!("B_{}", g.n), |r, c| {
        let (j, k) = (r + 1, c + 1);
        let cp = cell_powers::<S>(g.n, j, k, ctx);
        cp.b_pow * cp.omp * &root / S::from_i64(j as i64, ctx)
    })
}

/// `A_n` at working precision, for grids too fine for exact integers.
pub fn a_matrix_numeric<S: Scalar>(g: GridSpec, scheme: DiscretizationScheme, ctx: &PrecisionContext) -> DenseMatrix<S> {
    let n = g.n;
    let root = S::from_i64(n as i64, ctx).sqrt();
    let h = S::one(ctx) / S::from_i64(n as i64, ctx);
    DenseMatrix::from_fn(n, n, format!("A_{n}"), |r, c| {
        let (j, k) = (r + 1, c + 1);
        let cp = cell_powers::<S>(n, j, k, ctx);
        let jj = S::from_i64(j as i64, ctx);
        let value = match scheme {
            DiscretizationScheme::ExactGramian => {
                let b = S::from_i64(k as i64, ctx) * &h;
                let y = S::one(ctx) / S::from_i64(k as i64, ctx);
                let cell = cp.b_pow * b * binomial_remainder(&y, j, ctx) / (jj.clone() * S::from_i64(j as i64 + 1, ctx));
                cell + h.clone() * cp.tail / jj
            }
            DiscretizationScheme::ProductForm => {
                let half = S::from_i64(2, ctx);
                h.clone() * (cp.tail + cp.b_pow * cp.omp / half) / jj
            }
        };
        value * &root
    })
}
