use alloc::format;
use alloc::vec::Vec;

use super::moments::Moments;
use super::params::HGParams;
use crate::duality::{build_multiplier, SchlesingerMultiplier};
use crate::error::{bail, Error, Result};
use crate::fuchsian::{schlesinger_transform, ExponentData, FuchsianSystem};
use crate::jet::{hirota, JetCtx, ParamJet};
use crate::local::LocalFraction;
use crate::matrix::ExactMatrix;
use crate::poly::Poly;
use crate::rational::{sign, Rational};
use crate::ring::Ring;
use crate::type1::{solve_type_i_all, TypeIProblem};
use crate::type2::solve_type_ii_all;

type Lf = LocalFraction;

/// Extra jet order carried internally so that derivatives and the
/// divisions by x_i still leave the requested order intact.
pub const GUARD: u32 = 2;

/// Where a solution came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// q = 0 with p from moment ratios.
    Hypergeometric,
    /// Block-Toeplitz formulas after a Schlesinger shift by n.
    Transformed { n: usize },
    /// Read off the transformed residue matrices.
    MatrixPath { n: usize },
}

/// Canonical variables q[i][k] = q_{k+1}^{(i+1)}, p likewise.
#[derive(Clone, Debug)]
pub struct HLNSolution {
    pub l: usize,
    pub n_vars: usize,
    pub q: Vec<Vec<Lf>>,
    pub p: Vec<Vec<Lf>>,
    pub exponents: ExponentData,
    pub provenance: Provenance,
    /// Jet order the caller asked for.
    pub order: u32,
}

fn working(p: &HGParams) -> HGParams {
    p.with_order(p.order + GUARD)
}

fn inv(j: &ParamJet, what: &str) -> Result<ParamJet> {
    j.try_inverse().map_err(|_| Error::NonGeneric(format!("{what} has zero constant term")))
}

fn unit_vec(l: usize, k: usize) -> Vec<usize> {
    let mut v = alloc::vec![0; l];
    v[k] = 1;
    v
}

fn nvec(l: usize, n: usize) -> Vec<usize> {
    let mut v = alloc::vec![n; l];
    v[0] = 0;
    v
}

fn plus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn minus(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// q = 0 and p_k^(i) = θ_i y_k^(i)/y_0 with y_k^(i) = −ℓ_i^{-1}(m^k_0), y_0 = m^0_0.
pub fn hgsol_build(p: &HGParams) -> Result<HLNSolution> {
    let w = working(p);
    let m = Moments::new(&w, 2)?;
    let ex = p.exponent_data(0)?;
    let ctx = w.jet_ctx();
    let y0inv = inv(&m.get(0, 0)?, "y_0")?;
    let mut q = Vec::new();
    let mut pp = Vec::new();
    for i in 0..p.n_vars() {
        let theta = &ex.theta[i + 1];
        let t = m.table(Some((i, 1)))?;
        let mut row = Vec::new();
        for k in 1..p.l() {
            let y = t.get(k, 0)?.negated();
            row.push(Lf::from_jet(y.mul(&y0inv).scale(theta)));
        }
        q.push(alloc::vec![Lf::zero_in(&ctx); p.l() - 1]);
        pp.push(row);
    }
    Ok(HLNSolution { l: p.l(), n_vars: p.n_vars(), q, p: pp, exponents: ex, provenance: Provenance::Hypergeometric, order: p.order })
}

/// The reducible Fuchsian system attached to the hypergeometric solution.
pub fn hgsol_system(p: &HGParams) -> Result<FuchsianSystem> {
    let w = working(p);
    hgsol_system_from(&Moments::new(&w, 2)?)
}

fn hgsol_system_from(m: &Moments) -> Result<FuchsianSystem> {
    let p = m.params();
    let ex = p.exponent_data(0)?;
    let ctx = p.jet_ctx();
    let l = p.l();
    let lf = |j: ParamJet| Lf::from_jet(j);
    let c = |r: &Rational| Lf::lift(&ctx, r);
    let y0 = m.get(0, 0)?;
    let y0inv = inv(&y0, "y_0")?;
    let mut residues = Vec::new();
    let b0: Vec<Lf> = (0..l).map(|k| if k == 0 { Lf::zero_in(&ctx) } else { lf(y0.scale(&ex.kappa[k])) }).collect();
    let c0: Vec<Lf> = (0..l).map(|k| if k == 0 { Lf::one_in(&ctx) } else { lf(y0inv.negated()) }).collect();
    residues.push(ExactMatrix::from_fn(&ctx, l, l, |r, s| b0[r].times(&c0[s])));
    for i in 0..p.n_vars() {
        let theta = &ex.theta[i + 1];
        let t = m.table(Some((i, 1)))?;
        let mut b = alloc::vec![c(&-theta.clone())];
        for k in 1..l {
            b.push(lf(t.get(k, 0)?.scale(theta).negated()));
        }
        residues.push(ExactMatrix::from_fn(&ctx, l, l, |r, s| if s == 0 { b[r].clone() } else { Lf::zero_in(&ctx) }));
    }
    let mut sum = ExactMatrix::<Lf>::zeros(&ctx, l, l);
    for a in &residues {
        sum = sum.add(a)?;
    }
    residues.push(ExactMatrix::from_fn(&ctx, l, l, |r, s| {
        if r == s {
            c(&ex.e[r])
        } else if s > r {
            sum.get(r, s).negated()
        } else {
            Lf::zero_in(&ctx)
        }
    }));
    FuchsianSystem::new(&ctx, residues, Some(ex))
}

/// Δ-path data for the shift by n.
pub struct DeltaPath {
    m: Moments,
    n: usize,
}

impl DeltaPath {
    pub fn new(p: &HGParams, n: usize) -> Result<Self> {
        if n == 0 {
            bail!(Usage, "the block-Toeplitz formulas need n >= 1");
        }
        Ok(DeltaPath { m: Moments::for_shift(&working(p), n)?, n })
    }

    pub fn moments(&self) -> &Moments {
        &self.m
    }

    fn l(&self) -> usize {
        self.m.params().l()
    }

    fn nv(&self) -> Vec<usize> {
        nvec(self.l(), self.n)
    }

    /// Δ^(k)(n + shift) on the table for β shifted at `var`.
    pub fn d(&self, k: usize, v: &[usize], var: Option<(usize, i64)>) -> Result<ParamJet> {
        self.m.delta(k, v, var)
    }

    fn theta(&self, i: usize) -> Rational {
        -self.m.params().beta[i].clone()
    }

    /// q̂_k^(i); `i` and `k` are 0-based into (1..=N, 1..L).
    pub fn q_hat(&self, i: usize, k: usize) -> Result<ParamJet> {
        let (l, nv, kk) = (self.l(), self.nv(), k + 1);
        let e0 = unit_vec(l, 0);
        let ek = unit_vec(l, kk);
        let ell = Some((i, -1));
        let num = self.d(0, &plus(&nv, &e0), None)?.mul(&self.d(kk + 1, &minus(&nv, &ek), ell)?);
        let den = self.d(kk + 1, &minus(&plus(&nv, &e0), &ek), None)?.mul(&self.d(0, &nv, ell)?);
        Ok(num.mul(&inv(&den, "q-hat denominator")?).mul_var(i).negated())
    }

    /// q̂p̂ = −x_i D_i Δ^(k)·Δ^(k+1) / (Δ^(k) Δ^(k+1)).
    pub fn qp_hirota(&self, i: usize, k: usize) -> Result<ParamJet> {
        let nv = self.nv();
        let a = self.d(k + 1, &nv, None)?;
        let b = self.d(k + 2, &nv, None)?;
        let den = inv(&a.mul(&b), "Delta^(k) Delta^(k+1)")?;
        Ok(hirota(i, &a, &b).mul(&den).mul_var(i).negated())
    }

    /// θ_i x_i ℓ_i^{-1}(Δ^(k)(n+e_k)) ℓ_i(Δ^(k+1)(n−e_k)) / (Δ^(k) Δ^(k+1)).
    pub fn qp_alternative(&self, i: usize, k: usize) -> Result<ParamJet> {
        let (l, nv, kk) = (self.l(), self.nv(), k + 1);
        let ek = unit_vec(l, kk);
        let num = self.d(kk, &plus(&nv, &ek), Some((i, 1)))?.mul(&self.d(kk + 1, &minus(&nv, &ek), Some((i, -1)))?);
        let den = self.d(kk, &nv, None)?.mul(&self.d(kk + 1, &nv, None)?);
        Ok(num.mul(&inv(&den, "Delta^(k) Delta^(k+1)")?).mul_var(i).scale(&self.theta(i)))
    }

    /// p̂ = (q̂p̂/x_i)/(q̂/x_i), without dividing by x_i.
    pub fn p_hat(&self, i: usize, k: usize) -> Result<ParamJet> {
        let (l, nv, kk) = (self.l(), self.nv(), k + 1);
        let e0 = unit_vec(l, 0);
        let ek = unit_vec(l, kk);
        let ell = Some((i, -1));
        let a = self.d(kk, &nv, None)?;
        let b = self.d(kk + 1, &nv, None)?;
        let num = hirota(i, &a, &b).mul(&self.d(kk + 1, &minus(&plus(&nv, &e0), &ek), None)?).mul(&self.d(0, &nv, ell)?);
        let den = a.mul(&b).mul(&self.d(0, &plus(&nv, &e0), None)?).mul(&self.d(kk + 1, &minus(&nv, &ek), ell)?);
        Ok(num.mul(&inv(&den, "p-hat denominator")?))
    }

    /// ĉ^(0)_k = (−1)^{nk+1} Δ^(L) Δ^(k+1)(n+e_0−e_k) / (Δ^(k) Δ^(0)(n+e_0)).
    pub fn c_hat_zero(&self, k: usize) -> Result<ParamJet> {
        let (l, nv, kk) = (self.l(), self.nv(), k + 1);
        let e0 = unit_vec(l, 0);
        let ek = unit_vec(l, kk);
        let num = self.d(l, &nv, None)?.mul(&self.d(kk + 1, &minus(&plus(&nv, &e0), &ek), None)?);
        let den = self.d(kk, &nv, None)?.mul(&self.d(0, &plus(&nv, &e0), None)?);
        Ok(num.mul(&inv(&den, "c-hat(0) denominator")?).scale(&sign((self.n * kk) as i64 + 1)))
    }

    /// ĉ^(i)_k = (−1)^{nk} x_i Δ^(L) ℓ_i(Δ^(k+1)(n−e_k)) / (Δ^(k) ℓ_i(Δ^(0))).
    pub fn c_hat(&self, i: usize, k: usize) -> Result<ParamJet> {
        let (l, nv, kk) = (self.l(), self.nv(), k + 1);
        let ek = unit_vec(l, kk);
        let ell = Some((i, -1));
        let num = self.d(l, &nv, None)?.mul(&self.d(kk + 1, &minus(&nv, &ek), ell)?);
        let den = self.d(kk, &nv, None)?.mul(&self.d(0, &nv, ell)?);
        Ok(num.mul(&inv(&den, "c-hat denominator")?).mul_var(i).scale(&sign((self.n * kk) as i64)))
    }

    /// x_i D_i Δ^(p)·Δ^(q)/(Δ^(p)Δ^(q)) for the pairs (L,1), (1,2), …, (L−1,L).
    pub fn dhat_diagonal(&self, i: usize) -> Result<Vec<ParamJet>> {
        let l = self.l();
        let nv = self.nv();
        let mut out = Vec::with_capacity(l);
        for idx in 0..l {
            let (a, b) = if idx == 0 { (l, 1) } else { (idx, idx + 1) };
            let da = self.d(a, &nv, None)?;
            let db = self.d(b, &nv, None)?;
            out.push(hirota(i, &da, &db).mul(&inv(&da.mul(&db), "Delta pair")?).mul_var(i));
        }
        Ok(out)
    }
}

/// Solution after the shift by n, from the block-Toeplitz formulas.
pub fn hgi_build(p: &HGParams, n: usize) -> Result<HLNSolution> {
    let dp = DeltaPath::new(p, n)?;
    let mut q = Vec::new();
    let mut pp = Vec::new();
    for i in 0..p.n_vars() {
        let mut qr = Vec::new();
        let mut pr = Vec::new();
        for k in 0..p.l() - 1 {
            qr.push(Lf::from_jet(dp.q_hat(i, k)?));
            pr.push(Lf::from_jet(dp.p_hat(i, k)?));
        }
        q.push(qr);
        pp.push(pr);
    }
    Ok(HLNSolution {
        l: p.l(),
        n_vars: p.n_vars(),
        q,
        p: pp,
        exponents: p.exponent_data(n)?,
        provenance: Provenance::Transformed { n },
        order: p.order,
    })
}

/// Both q̂p̂ expressions, indexed [i][k].
pub fn qp_forms(p: &HGParams, n: usize) -> Result<(Vec<Vec<ParamJet>>, Vec<Vec<ParamJet>>)> {
    let dp = DeltaPath::new(p, n)?;
    let mut h = Vec::new();
    let mut a = Vec::new();
    for i in 0..p.n_vars() {
        h.push((0..p.l() - 1).map(|k| dp.qp_hirota(i, k)).collect::<Result<Vec<_>>>()?);
        a.push((0..p.l() - 1).map(|k| dp.qp_alternative(i, k)).collect::<Result<Vec<_>>>()?);
    }
    Ok((h, a))
}

/// Matrix path: the hypergeometric system, the multiplier R built from
/// the Stieltjes vector, and the certified transform.
pub struct MatrixPath {
    pub original: FuchsianSystem,
    pub multiplier: SchlesingerMultiplier<Lf>,
    pub transformed: FuchsianSystem,
}

pub fn matrix_path(p: &HGParams, n: usize) -> Result<MatrixPath> {
    let w = working(p);
    let m = Moments::for_shift(&w, n)?;
    let original = hgsol_system_from(&m)?;
    let ctx = w.jet_ctx();
    let multiplier = if n == 0 {
        SchlesingerMultiplier::identity(&ctx, p.l())
    } else {
        let problem = TypeIProblem::new(m.stieltjes_vector()?, n)?;
        let q = solve_type_i_all(&problem)?;
        let pp = solve_type_ii_all(&problem)?;
        let mj = build_multiplier(&q, &pp)?;
        let lift = |mat: &ExactMatrix<Poly<ParamJet>>| mat.map(&ctx, |e| e.map(&ctx, |c| Lf::from_jet(c.clone())));
        SchlesingerMultiplier { n, r: lift(&mj.r), rinv: lift(&mj.rinv) }
    };
    let transformed = schlesinger_transform(&original, &multiplier)?;
    Ok(MatrixPath { original, multiplier, transformed })
}

/// Rank-one factors Â_i = b̂ ĉ with ĉ_0 = 1, for 0 ≤ i ≤ N.
pub fn rank_one_factors(sys: &FuchsianSystem, i: usize) -> Result<(Vec<Lf>, Vec<Lf>)> {
    let a = sys.residue(i);
    let l = a.rows();
    let b: Vec<Lf> = (0..l).map(|r| a.get(r, 0).clone()).collect();
    for r in 0..l {
        if let Some(piv) = a.get(r, 0).inverse() {
            let c: Vec<Lf> = (0..l).map(|s| a.get(r, s).times(&piv)).collect();
            let back = ExactMatrix::from_fn(a.ctx(), l, l, |x, y| b[x].times(&c[y]));
            if back != a {
                bail!(InvariantViolation, "residue {i} is not of rank one with c_0 = 1");
            }
            return Ok((b, c));
        }
    }
    bail!(NonGeneric, "no invertible entry in the first column of residue {i}")
}

/// q_k^(i) = c_k^(i)/c_k^(0), p_k^(i) = −b_k^(i) c_k^(0), read off a system.
pub fn canonical_from_system(sys: &FuchsianSystem, order: u32, provenance: Provenance) -> Result<HLNSolution> {
    let l = sys.l();
    let (_, c0) = rank_one_factors(sys, 0)?;
    let mut q = Vec::new();
    let mut pp = Vec::new();
    for i in 1..=sys.n_points() {
        let (b, c) = rank_one_factors(sys, i)?;
        let mut qr = Vec::new();
        let mut pr = Vec::new();
        for k in 1..l {
            let Some(c0inv) = c0[k].inverse() else {
                bail!(NonGeneric, "c_{k}^(0) is not invertible");
            };
            qr.push(c[k].times(&c0inv));
            pr.push(b[k].times(&c0[k]).negated());
        }
        q.push(qr);
        pp.push(pr);
    }
    let Some(exponents) = sys.exponents.clone() else {
        bail!(Usage, "system carries no exponent data");
    };
    Ok(HLNSolution { l, n_vars: sys.n_points(), q, p: pp, exponents, provenance, order })
}

/// Jet context used internally for a requested order.
pub fn working_ctx(p: &HGParams) -> JetCtx {
    working(p).jet_ctx()
}
