use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::solutions::HLNSolution;
use crate::error::{bail, Result};
use crate::fuchsian::ExponentData;
use crate::jet::{JetCtx, ParamJet};
use crate::local::{Factor, LocalFraction};
use crate::rational::Rational;
use crate::ring::Ring;

type Lf = LocalFraction;

/// Polynomial in the canonical variables q_k^(i), p_k^(i) (1 ≤ i ≤ N,
/// 1 ≤ k ≤ L−1) with local-fraction coefficients. Variable order: all q
/// first, then all p, each block ordered by (i, k).
#[derive(Clone, Debug)]
pub struct CanonPoly {
    l: usize,
    n: usize,
    ctx: JetCtx,
    terms: BTreeMap<Vec<u8>, Lf>,
}

impl CanonPoly {
    fn nvars(l: usize, n: usize) -> usize {
        2 * n * (l - 1)
    }

    pub fn zero(ctx: &JetCtx, l: usize, n: usize) -> Self {
        CanonPoly { l, n, ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &JetCtx, l: usize, n: usize, c: Lf) -> Self {
        let mut p = Self::zero(ctx, l, n);
        p.add_term(alloc::vec![0; Self::nvars(l, n)], c);
        p
    }

    pub fn rational(ctx: &JetCtx, l: usize, n: usize, c: &Rational) -> Self {
        Self::constant(ctx, l, n, Lf::lift(ctx, c))
    }

    /// Index of q_k^(i) (both 1-based).
    pub fn q_index(&self, i: usize, k: usize) -> usize {
        (i - 1) * (self.l - 1) + (k - 1)
    }

    pub fn p_index(&self, i: usize, k: usize) -> usize {
        self.n * (self.l - 1) + self.q_index(i, k)
    }

    fn var(&self, idx: usize) -> Self {
        let mut e = alloc::vec![0u8; Self::nvars(self.l, self.n)];
        e[idx] = 1;
        let mut p = Self::zero(&self.ctx, self.l, self.n);
        p.add_term(e, Lf::one_in(&self.ctx));
        p
    }

    pub fn q(&self, i: usize, k: usize) -> Self {
        self.var(self.q_index(i, k))
    }

    pub fn p(&self, i: usize, k: usize) -> Self {
        self.var(self.p_index(i, k))
    }

    fn add_term(&mut self, e: Vec<u8>, c: Lf) {
        if c.is_exact_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                *old = old.plus(&c);
                if old.is_exact_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Lf::lift(&self.ctx, &Rational::from_integer((-1).into()))))
    }

    pub fn scale(&self, c: &Lf) -> Self {
        let mut r = Self::zero(&self.ctx, self.l, self.n);
        for (e, v) in &self.terms {
            r.add_term(e.clone(), v.times(c));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(&self.ctx, self.l, self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, ca.times(cb));
            }
        }
        r
    }

    /// ∂/∂ of the variable with the given index.
    pub fn partial(&self, idx: usize) -> Self {
        let mut r = Self::zero(&self.ctx, self.l, self.n);
        for (e, c) in &self.terms {
            if e[idx] > 0 {
                let mut f = e.clone();
                f[idx] -= 1;
                r.add_term(f, c.scale(&Rational::from_integer(e[idx].into())));
            }
        }
        r
    }

    /// Largest total degree of a monomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.vanishes())
            .map(|(e, _)| e.iter().map(|&d| d as u32).sum())
            .max()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.values().filter(|c| !c.vanishes()).count()
    }

    /// Substitute values for all variables, in index order.
    pub fn eval(&self, values: &[Lf]) -> Lf {
        let mut acc = Lf::zero_in(&self.ctx);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &d) in values.iter().zip(e) {
                if d > 0 {
                    t = t.times(&v.pow(d as usize));
                }
            }
            acc = acc.plus(&t);
        }
        acc
    }
}

impl fmt::Display for CanonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let half = self.n * (self.l - 1);
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]")?;
            for (v, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let (name, w) = if v < half { ("q", v) } else { ("p", v - half) };
                write!(f, "*{name}{}_{}", w / (self.l - 1) + 1, w % (self.l - 1) + 1)?;
                if d > 1 {
                    write!(f, "^{d}")?;
                }
            }
        }
        Ok(())
    }
}

/// x_j/(x_i − x_j) with x_0 = 1; `i`, `j` 1-based, i ≠ j.
fn cross_coeff(ctx: &JetCtx, i: usize, j: usize) -> Result<Lf> {
    let xi = ParamJet::var(ctx, i - 1);
    if j == 0 {
        return Lf::new(ParamJet::one_in(ctx), [(Factor::Unit(xi.minus(&ParamJet::one_in(ctx))), 1)]);
    }
    Lf::new(ParamJet::var(ctx, j - 1), [(Factor::Diff(i - 1, j - 1), 1)])
}

/// H_i (1 ≤ i ≤ N) with p_0^(i) and p_l^(0) substituted.
pub fn hamiltonian(ex: &ExponentData, ctx: &JetCtx, i: usize) -> Result<CanonPoly> {
    let l = ex.l();
    let n = ex.theta.len() - 1;
    if i == 0 || i > n || ctx.nvars != n {
        bail!(Usage, "Hamiltonian index {i} outside 1..={n} or jet context mismatch");
    }
    let base = CanonPoly::zero(ctx, l, n);
    let one = CanonPoly::rational(ctx, l, n, &Rational::from_integer(1.into()));
    let q = |j: usize, k: usize| if j == 0 || k == 0 { one.clone() } else { base.q(j, k) };
    // p[j][k] including the dependent ones
    let mut p: Vec<Vec<CanonPoly>> = alloc::vec![Vec::new(); n + 1];
    for j in 1..=n {
        let mut s = CanonPoly::rational(ctx, l, n, &ex.theta[j]);
        for k in 1..l {
            s = s.sub(&base.q(j, k).mul(&base.p(j, k)));
        }
        p[j].push(s);
        for k in 1..l {
            p[j].push(base.p(j, k));
        }
    }
    for k in 0..l {
        let mut s = CanonPoly::rational(ctx, l, n, &ex.kappa[k]);
        for j in 1..=n {
            s = s.sub(&q(j, k).mul(&p[j][k]));
        }
        p[0].push(s);
    }
    let mut xh = CanonPoly::zero(ctx, l, n);
    for k in 0..l {
        xh = xh.add(&q(i, k).mul(&p[i][k]).scale(&Lf::lift(ctx, &ex.e[k])));
    }
    for j in 0..=n {
        for k in 0..l {
            for m in k + 1..l {
                xh = xh.add(&q(i, k).mul(&p[j][k]).mul(&q(j, m)).mul(&p[i][m]));
            }
        }
    }
    for j in 0..=n {
        if j == i {
            continue;
        }
        let mut s = CanonPoly::zero(ctx, l, n);
        for k in 0..l {
            for m in 0..l {
                s = s.add(&q(i, k).mul(&p[j][k]).mul(&q(j, m)).mul(&p[i][m]));
            }
        }
        xh = xh.add(&s.scale(&cross_coeff(ctx, i, j)?));
    }
    Ok(xh.scale(&Lf::inv_var(ctx, i - 1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualKind {
    /// ∂q/∂x_j − ∂H_j/∂p.
    Q,
    /// ∂p/∂x_j + ∂H_j/∂q.
    P,
}

/// One residual, cleared of its denominator; indices 1-based.
#[derive(Clone, Debug)]
pub struct ResidualEntry {
    pub kind: ResidualKind,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub numerator: ParamJet,
}

#[derive(Clone, Debug)]
pub struct HamiltonReport {
    pub entries: Vec<ResidualEntry>,
    /// Every numerator vanishes as far as it is known.
    pub vanishes: bool,
    /// Smallest order to which a numerator is known.
    pub checked_order: u32,
}

impl HamiltonReport {
    /// Zero through total degree `order`.
    pub fn zero_to(&self, order: u32) -> bool {
        self.vanishes && self.checked_order >= order
    }
}

/// Residuals of ∂q/∂x_j = ∂H_j/∂p, ∂p/∂x_j = −∂H_j/∂q for every (i, j, k).
pub fn hamilton_residual(sol: &HLNSolution) -> Result<HamiltonReport> {
    let (l, n) = (sol.l, sol.n_vars);
    let Some(sample) = sol.p.first().and_then(|r| r.first()) else {
        bail!(Usage, "empty solution");
    };
    let ctx = sample.ctx();
    let mut values = Vec::with_capacity(2 * n * (l - 1));
    for row in &sol.q {
        values.extend(row.iter().cloned());
    }
    for row in &sol.p {
        values.extend(row.iter().cloned());
    }
    let mut entries = Vec::new();
    for j in 1..=n {
        let h = hamiltonian(&sol.exponents, &ctx, j)?;
        for i in 1..=n {
            for k in 1..l {
                let dq = sol.q[i - 1][k - 1].partial(j - 1);
                let dp = sol.p[i - 1][k - 1].partial(j - 1);
                let hp = h.partial(h.p_index(i, k)).eval(&values);
                let hq = h.partial(h.q_index(i, k)).eval(&values);
                for (kind, r) in [(ResidualKind::Q, dq.minus(&hp)), (ResidualKind::P, dp.plus(&hq))] {
                    entries.push(ResidualEntry { kind, i, j, k, numerator: r.reduce().numerator().clone() });
                }
            }
        }
    }
    let vanishes = entries.iter().all(|e| e.numerator.vanishes());
    let checked_order = entries.iter().map(|e| e.numerator.order()).min().unwrap_or(0);
    Ok(HamiltonReport { entries, vanishes, checked_order })
}
