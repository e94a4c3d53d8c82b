use super::jacobi::{dot, rotation, MAX_SWEEPS};
use super::result::SpectralResult;
use crate::error::{Error, Result};
use crate::numerics::{DenseMatrix, PrecisionContext, Scalar};

/// Columns after one-sided Jacobi: mutually orthogonal up to rounding.
struct Orthogonalized<S> {
    columns: Vec<Vec<S>>,
    norms_sq: Vec<S>,
    sweeps: usize,
    /// Largest `|<a_p, a_q>| / (‖a_p‖ ‖a_q‖)` seen in the final sweep.
    residual: f64,
}

fn columns_of<S: Scalar>(m: &DenseMatrix<S>) -> Vec<Vec<S>> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

fn rows_of<S: Scalar>(m: &DenseMatrix<S>) -> Vec<Vec<S>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Hestenes one-sided Jacobi with de Rijk ordering: before each pivot row
/// the largest remaining column is moved into place.
fn orthogonalize<S: Scalar>(mut cols: Vec<Vec<S>>, ctx: &PrecisionContext) -> Orthogonalized<S> {
    let k = cols.len();
    let len = cols.first().map_or(0, Vec::len);
    let u = S::unit_roundoff(ctx);
    let threshold = u.clone() * S::from_i64(len.max(1) as i64, ctx).sqrt();
    let recompute_ratio = S::from_i64(16, ctx);
    let mut norms: Vec<S> = cols.iter().map(|c| dot(c, c, ctx)).collect();
    let mut sweeps = 0;
    let mut residual;
    loop {
        let mut rotated = false;
        residual = 0.0f64;
        for p in 0..k {
            let best = (p..k).fold(p, |b, i| if norms[i] > norms[b] { i } else { b });
            if best != p {
                cols.swap(p, best);
                norms.swap(p, best);
            }
            if norms[p].is_zero() {
                continue;
            }
            for q in (p + 1)..k {
                if norms[q].is_zero() {
                    continue;
                }
                let gamma = dot(&cols[p], &cols[q], ctx);
                let scale = (norms[p].clone() * &norms[q]).sqrt();
                let rel = gamma.abs() / &scale;
                residual = residual.max(rel.to_f64());
                if rel <= threshold {
                    continue;
                }
                rotated = true;
                let (t, c, s) = rotation(&norms[p], &norms[q], &gamma, ctx);
                let (left, right) = cols.split_at_mut(q);
                for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let xp = x.clone();
                    *x = c.clone() * &*x - s.clone() * &*y;
                    *y = s.clone() * xp + c.clone() * &*y;
                }
                let shift = t * &gamma;
                let old_p = norms[p].clone();
                norms[p] -= &shift;
                norms[q] += &shift;
                if norms[p].clone() * &recompute_ratio < old_p || norms[p].is_sign_negative() {
                    norms[p] = dot(&cols[p], &cols[p], ctx);
                }
                if norms[q].is_sign_negative() {
                    norms[q] = dot(&cols[q], &cols[q], ctx);
                }
            }
        }
        sweeps += 1;
        if !rotated || sweeps >= MAX_SWEEPS {
            break;
        }
        for (n, c) in norms.iter_mut().zip(&cols) {
            *n = dot(c, c, ctx);
        }
    }
    for (n, c) in norms.iter_mut().zip(&cols) {
        *n = dot(c, c, ctx);
    }
    Orthogonalized {
        columns: cols,
        norms_sq: norms,
        sweeps,
        residual,
    }
}

/// All singular values by one-sided Jacobi on the columns (or on the rows
/// when the matrix is wide). Relatively accurate on column-graded input.
pub fn singular_values<S: Scalar>(m: &DenseMatrix<S>, ctx: &PrecisionContext, tol: &S) -> Result<SpectralResult<S>> {
    m.ensure_finite()?;
    let cols = if m.rows() >= m.cols() { columns_of(m) } else { rows_of(m) };
    let o = orthogonalize(cols, ctx);
    if o.residual > tol.to_f64() {
        return Err(Error::NotConverged {
            op: "singular_values",
            iterations: o.sweeps,
            residual: o.residual,
        });
    }
    let values = o.norms_sq.iter().map(Scalar::sqrt).collect();
    Ok(SpectralResult::new(values, o.sweeps, o.residual, true, ctx))
}

/// Unit singular vectors belonging to `σ_i`; more than one when `σ_i` is not
/// separated from a neighbour.
#[derive(Clone, Debug)]
pub struct SingularVectors<S> {
    pub index: usize,
    pub sigma: S,
    /// 1-based indices of the cluster containing `σ_i`.
    pub cluster: std::ops::RangeInclusive<usize>,
    pub vectors: Vec<Vec<S>>,
}

impl<S> SingularVectors<S> {
    pub fn is_simple(&self) -> bool {
        self.vectors.len() == 1
    }
}

/// Domain-side singular vector of `σ_i` (1-based): the unit `v` with
/// `‖m v‖ = σ_i`, sign fixed so that its first significant entry is positive.
///
/// Computed as a left vector of `mᵀ`, which one-sided Jacobi yields without
/// accumulating rotations.
pub fn singular_vector<S: Scalar>(m: &DenseMatrix<S>, i: usize, ctx: &PrecisionContext) -> Result<SingularVectors<S>> {
    let count = m.rows().min(m.cols());
    if i == 0 || i > count {
        return Err(Error::InvalidArgument(format!("index {i} outside 1..={count}")));
    }
    m.ensure_finite()?;
    let o = orthogonalize(rows_of(m), ctx);
    let mut order: Vec<usize> = (0..o.norms_sq.len()).collect();
    order.sort_by(|&a, &b| o.norms_sq[b].partial_cmp(&o.norms_sq[a]).unwrap_or(std::cmp::Ordering::Equal).then(a.cmp(&b)));
    let sigmas: Vec<S> = order.iter().map(|&k| o.norms_sq[k].sqrt()).collect();
    let floor = sigmas[0].clone() * S::pow10(ctx.trust_exponent(), ctx);
    if sigmas[i - 1] < floor || sigmas[i - 1].is_zero() {
        return Err(Error::InvalidArgument(format!(
            "sigma_{i} = {} is below the trust floor {floor}",
            sigmas[i - 1]
        )));
    }
    let gap = floor.clone().max_of(sigmas[i - 1].clone() * S::pow10(ctx.trust_exponent(), ctx));
    let mut lo = i;
    while lo > 1 && (sigmas[lo - 2].clone() - &sigmas[lo - 1]).abs() <= gap {
        lo -= 1;
    }
    let mut hi = i;
    while hi < count && (sigmas[hi - 1].clone() - &sigmas[hi]).abs() <= gap {
        hi += 1;
    }
    let mut vectors = Vec::with_capacity(hi - lo + 1);
    for idx in lo..=hi {
        let k = order[idx - 1];
        let sigma = &sigmas[idx - 1];
        let mut v: Vec<S> = o.columns[k].iter().map(|x| x.clone() / sigma).collect();
        let big = v.iter().fold(S::zero(ctx), |a, x| a.max_of(x.abs()));
        let significant = big * S::pow10(ctx.trust_exponent(), ctx);
        if let Some(first) = v.iter().find(|x| x.abs() > significant) {
            if first.is_sign_negative() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
        }
        vectors.push(v);
    }
    Ok(SingularVectors {
        index: i,
        sigma: sigmas[i - 1].clone(),
        cluster: lo..=hi,
        vectors,
    })
}
