use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::params::HGParams;
use crate::error::{bail, Result};
use crate::jet::{JetCtx, ParamJet};
use crate::rational::{factorial, int, pochhammer, Rational};
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use crate::toeplitz::{block_toeplitz_delta, MomentTable};

/// Exponent vectors of N variables with total degree at most `order`.
fn multi_indices(nvars: usize, order: u32) -> Vec<Vec<u32>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for d in 0..=order - used {
                let mut v = e.clone();
                v.push(d);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// F_{L,N}(α, β; γ; x) up to total degree `ctx.order`.
pub fn f_ln_series(ctx: &JetCtx, alpha: &[Rational], beta: &[Rational], gamma: &[Rational]) -> Result<ParamJet> {
    if beta.len() != ctx.nvars {
        bail!(Usage, "{} betas for {} variables", beta.len(), ctx.nvars);
    }
    let mut terms = Vec::new();
    for m in multi_indices(ctx.nvars, ctx.order) {
        let total: usize = m.iter().map(|&d| d as usize).sum();
        let mut den = int(1);
        for g in gamma {
            den *= pochhammer(g, total);
        }
        if den.is_zero() {
            bail!(Parameter, "Pochhammer symbol of gamma vanishes at degree {total}");
        }
        let mut c = int(1);
        for a in alpha {
            c *= pochhammer(a, total);
        }
        for (b, &d) in beta.iter().zip(&m) {
            c *= pochhammer(b, d as usize) / factorial(d as usize);
        }
        terms.push((m, c / den));
    }
    Ok(ParamJet::from_terms(ctx, terms))
}

/// m^k_j = h^k_j / P_0 with β shifted by `shift`.
pub fn normalized_moment(p: &HGParams, k: usize, j: usize, shift: &[i64]) -> Result<ParamJet> {
    let l = p.l();
    if k >= l {
        bail!(Usage, "moment index {k} outside 0..{l}");
    }
    let mut pre = int(1);
    let mut alpha = Vec::with_capacity(l - 1);
    let mut gamma = Vec::with_capacity(l - 1);
    for idx in 0..l - 1 {
        let lv = idx + 1;
        let s = if k > 0 && lv < k { j + 1 } else { j };
        let t = if k > 0 && lv <= k { j + 1 } else { j };
        let (a, g) = (&p.alpha[idx], &p.gamma[idx]);
        let den = pochhammer(g, t);
        if den.is_zero() {
            bail!(Parameter, "(gamma_{lv})_{t} vanishes");
        }
        pre = pre * pochhammer(a, s) / den;
        if lv == k {
            pre *= g - a;
        }
        alpha.push(a + int(s as i64));
        gamma.push(g + int(t as i64));
    }
    let beta = shifted_beta(p, shift)?;
    Ok(f_ln_series(&p.jet_ctx(), &alpha, &beta, &gamma)?.scale(&pre))
}

fn shifted_beta(p: &HGParams, shift: &[i64]) -> Result<Vec<Rational>> {
    if shift.len() != p.n_vars() {
        bail!(Usage, "beta shift has length {}, expected {}", shift.len(), p.n_vars());
    }
    Ok(p.beta.iter().zip(shift).map(|(b, s)| b + int(*s)).collect())
}

/// Moment tables for β, ℓ_i β and ℓ_i^{-1} β, built once.
#[derive(Clone, Debug)]
pub struct Moments {
    params: HGParams,
    depth: usize,
    tables: BTreeMap<Vec<i64>, MomentTable<ParamJet>>,
}

impl Moments {
    /// Tables with entries j = 0..depth−1.
    pub fn new(params: &HGParams, depth: usize) -> Result<Self> {
        let nv = params.n_vars();
        let mut shifts = alloc::vec![alloc::vec![0i64; nv]];
        for i in 0..nv {
            for s in [-1, 1] {
                let mut v = alloc::vec![0i64; nv];
                v[i] = s;
                shifts.push(v);
            }
        }
        let mut tables = BTreeMap::new();
        for sh in shifts {
            let seqs = (0..params.l())
                .map(|k| (0..depth).map(|j| normalized_moment(params, k, j, &sh)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            tables.insert(sh, MomentTable::new(&params.jet_ctx(), seqs)?);
        }
        Ok(Moments { params: params.clone(), depth, tables })
    }

    /// Depth sufficient for shift n: type-I systems and every Δ window.
    pub fn for_shift(params: &HGParams, n: usize) -> Result<Self> {
        Self::new(params, n * params.l() + n + 3)
    }

    pub fn params(&self) -> &HGParams {
        &self.params
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn ctx(&self) -> JetCtx {
        self.params.jet_ctx()
    }

    fn key(&self, var: Option<(usize, i64)>) -> Vec<i64> {
        let mut v = alloc::vec![0i64; self.params.n_vars()];
        if let Some((i, s)) = var {
            v[i] = s;
        }
        v
    }

    /// Table for β (None) or β with entry `i` (0-based) shifted by ±1.
    pub fn table(&self, var: Option<(usize, i64)>) -> Result<&MomentTable<ParamJet>> {
        match self.tables.get(&self.key(var)) {
            Some(t) => Ok(t),
            None => bail!(Usage, "no moment table for that beta shift"),
        }
    }

    pub fn get(&self, k: usize, j: usize) -> Result<ParamJet> {
        self.table(None)?.get(k, j as i64)
    }

    /// Δ^(k)(n) over the normalized moments.
    pub fn delta(&self, k: usize, n: &[usize], var: Option<(usize, i64)>) -> Result<ParamJet> {
        if n.len() != self.params.l() {
            bail!(Usage, "n-vector has length {}, expected {}", n.len(), self.params.l());
        }
        let total: usize = n.iter().sum();
        let top = n.iter().max().copied().unwrap_or(0) + total;
        if total > 0 && top > self.depth {
            bail!(Usage, "moment depth {} too small for n = {:?}", self.depth, n);
        }
        block_toeplitz_delta(self.table(var)?, k, n)
    }

    /// f = (1, f_1, …, f_{L−1}) with f_k = Σ_j m^k_j w^j, known to w^{depth−1}.
    pub fn stieltjes_vector(&self) -> Result<Vec<TruncatedSeries<ParamJet>>> {
        let ctx = self.ctx();
        let order = self.depth - 1;
        let mut out = alloc::vec![TruncatedSeries::from_slice('w', &ctx, &[ParamJet::one_in(&ctx)], order)];
        let t = self.table(None)?;
        for k in 1..self.params.l() {
            out.push(TruncatedSeries::from_slice('w', &ctx, t.sequence(k), order));
        }
        Ok(out)
    }
}

/// Σ_{k≥1} m^k_j = m^0_j − m^0_{j+1}.
pub fn contiguity_sum_holds(m: &Moments, j: usize) -> Result<bool> {
    let mut lhs = ParamJet::zero(&m.ctx());
    for k in 1..m.params().l() {
        lhs = lhs.plus(&m.get(k, j)?);
    }
    Ok(lhs == m.get(0, j)?.minus(&m.get(0, j + 1)?))
}

/// m^k_j − x_i m^k_{j+1} = ℓ_i(m^k_j), with `i` 0-based.
pub fn contiguity_shift_holds(m: &Moments, i: usize, k: usize, j: usize) -> Result<bool> {
    let lhs = m.get(k, j)?.minus(&m.get(k, j + 1)?.mul_var(i));
    Ok(lhs == m.table(Some((i, -1)))?.get(k, j as i64)?)
}
