//! Rectangular Toeplitz windows over a family of sequences and the
//! block-Toeplitz determinants Δ^(k)(n) assembled from them.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::matrix::ExactMatrix;
use crate::rational::sign;
use crate::ring::Ring;
use crate::series::TruncatedSeries;

/// Sequences a^0..a^{L-1}; a^i_j = 0 for j < 0 is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable<R: Ring> {
    ctx: R::Ctx,
    seqs: Vec<Vec<R>>,
}

impl<R: Ring> MomentTable<R> {
    pub fn new(ctx: &R::Ctx, seqs: Vec<Vec<R>>) -> Result<Self> {
        if seqs.len() < 2 {
            bail!(Usage, "a moment table needs L >= 2 sequences, got {}", seqs.len());
        }
        Ok(MomentTable { ctx: ctx.clone(), seqs })
    }

    /// Coefficient sequences of a vector of series.
    pub fn from_series(f: &[TruncatedSeries<R>]) -> Result<Self> {
        let Some(first) = f.first() else {
            bail!(Usage, "empty series vector");
        };
        let ctx = first.ring_ctx();
        Self::new(&ctx, f.iter().map(|s| s.coeffs().to_vec()).collect())
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.seqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seqs.is_empty()
    }

    /// Number of stored terms of the shortest sequence.
    pub fn depth(&self) -> usize {
        self.seqs.iter().map(|s| s.len()).min().unwrap_or(0)
    }

    pub fn get(&self, i: usize, j: i64) -> Result<R> {
        let Some(s) = self.seqs.get(i) else {
            bail!(Usage, "sequence index {i} out of range 0..{}", self.seqs.len());
        };
        if j < 0 {
            return Ok(R::zero_in(&self.ctx));
        }
        match s.get(j as usize) {
            Some(v) => Ok(v.clone()),
            None => bail!(Usage, "term a^{i}_{j} beyond stored depth {}", s.len()),
        }
    }

    pub fn sequence(&self, i: usize) -> &[R] {
        &self.seqs[i]
    }
}

/// k×l Toeplitz window A^i_j(k, l): entry (r, c) = a^i_{j+r-c}.
pub fn rect_toeplitz<R: Ring>(
    t: &MomentTable<R>,
    i: usize,
    j: i64,
    k: usize,
    l: usize,
) -> Result<ExactMatrix<R>> {
    if i >= t.len() {
        bail!(Usage, "sequence index {i} out of range 0..{}", t.len());
    }
    let mut data = Vec::with_capacity(k * l);
    for r in 0..k {
        for c in 0..l {
            data.push(t.get(i, j + r as i64 - c as i64)?);
        }
    }
    ExactMatrix::new(t.ctx(), k, l, data)
}

/// Horizontal concatenation of windows `(i, j, l)`, all with `k` rows.
pub fn hblocks<R: Ring>(t: &MomentTable<R>, k: usize, blocks: &[(usize, i64, usize)]) -> Result<ExactMatrix<R>> {
    let mut m = ExactMatrix::zeros(t.ctx(), k, 0);
    for &(i, j, l) in blocks {
        if l == 0 {
            continue;
        }
        m = m.hstack(&rect_toeplitz(t, i, j, k, l)?)?;
    }
    Ok(m)
}

/// Vertical stack of windows `(i, j, k)`, all with `l` columns.
pub fn vblocks<R: Ring>(t: &MomentTable<R>, l: usize, blocks: &[(usize, i64, usize)]) -> Result<ExactMatrix<R>> {
    let mut m = ExactMatrix::zeros(t.ctx(), 0, l);
    for &(i, j, k) in blocks {
        if k == 0 {
            continue;
        }
        m = m.vstack(&rect_toeplitz(t, i, j, k, l)?)?;
    }
    Ok(m)
}

fn check_delta_args<R: Ring>(t: &MomentTable<R>, k: usize, n: &[usize]) -> Result<()> {
    if n.len() != t.len() {
        bail!(Usage, "index vector has {} entries for L = {}", n.len(), t.len());
    }
    if k > t.len() {
        bail!(Usage, "k = {k} outside 0..={}", t.len());
    }
    Ok(())
}

/// The square block matrix whose determinant is Δ^(k)(n).
pub fn delta_matrix<R: Ring>(t: &MomentTable<R>, k: usize, n: &[usize]) -> Result<ExactMatrix<R>> {
    check_delta_args(t, k, n)?;
    let total: usize = n.iter().sum();
    let blocks: Vec<(usize, i64, usize)> = n
        .iter()
        .enumerate()
        .map(|(a, &na)| (a, if a < k { na as i64 } else { na as i64 - 1 }, na))
        .collect();
    hblocks(t, total, &blocks)
}

/// Δ^(k)(n), with Δ^(k)(0) = 1.
pub fn block_toeplitz_delta<R: Ring>(t: &MomentTable<R>, k: usize, n: &[usize]) -> Result<R> {
    delta_matrix(t, k, n)?.det()
}

/// Δ^(k)(n) through the stacked form, including its sign (−1)^{Σ_{i<j} n_i n_j}.
pub fn block_toeplitz_delta_transposed<R: Ring>(t: &MomentTable<R>, k: usize, n: &[usize]) -> Result<R> {
    check_delta_args(t, k, n)?;
    let total: usize = n.iter().sum();
    let blocks: Vec<(usize, i64, usize)> = n
        .iter()
        .enumerate()
        .map(|(a, &na)| (a, if a < k { total as i64 } else { total as i64 - 1 }, na))
        .collect();
    let d = vblocks(t, total, &blocks)?.det()?;
    let mut e: i64 = 0;
    for i in 0..n.len() {
        for j in i + 1..n.len() {
            e += (n[i] * n[j]) as i64;
        }
    }
    Ok(d.scale(&sign(e)))
}

/// Δ^(i) of the f₀ = 1 shorthand: blocks of size m = n(L−1) built from a^1..a^{L−1}.
pub fn shorthand_delta<R: Ring>(t: &MomentTable<R>, n: usize, i: usize) -> Result<R> {
    let l = t.len();
    if i == 0 || i > l {
        bail!(Usage, "shorthand index {i} outside 1..={l}");
    }
    let m = n * (l - 1);
    let blocks: Vec<(usize, i64, usize)> = (1..l)
        .map(|a| (a, if a < i { n as i64 } else { n as i64 - 1 }, n))
        .collect();
    hblocks(t, m, &blocks)?.det()
}
