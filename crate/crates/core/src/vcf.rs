//! Vector continued-fraction expansion by repeated reciprocals.

use alloc::vec::Vec;

use crate::error::{bail, Error, Result};
use crate::matrix::ExactMatrix;
use crate::poly::Poly;
use crate::rational::sign;
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use crate::type1::{solve_type_i_all, TypeIProblem};

/// ι(φ) = (φ_2/φ_1, …, φ_{L-1}/φ_1, 1/φ_1).
pub fn reciprocal_iota<R: Ring>(phi: &[TruncatedSeries<R>]) -> Result<Vec<TruncatedSeries<R>>> {
    let Some(first) = phi.first() else {
        bail!(Usage, "empty vector");
    };
    let inv = match first.reciprocal() {
        Ok(v) => v,
        Err(_) => bail!(Singular, "phi_1(0) is not invertible"),
    };
    let mut out = phi[1..].iter().map(|p| p.mul(&inv)).collect::<Result<Vec<_>>>()?;
    out.push(inv);
    Ok(out)
}

/// f[k] with its constant terms a[k].
#[derive(Clone, Debug, PartialEq)]
pub struct VcfState<R: Ring> {
    pub step: usize,
    pub f: Vec<TruncatedSeries<R>>,
    pub a: Vec<R>,
}

impl<R: Ring> VcfState<R> {
    /// Step 0; every f_i(0) has to be invertible.
    pub fn new(f: Vec<TruncatedSeries<R>>) -> Result<Self> {
        if f.len() < 2 {
            bail!(Usage, "need at least two series");
        }
        Self::at(0, f)
    }

    fn at(step: usize, f: Vec<TruncatedSeries<R>>) -> Result<Self> {
        let a: Vec<R> = f.iter().map(|s| s.constant_term().clone()).collect();
        if let Some(index) = a.iter().position(|c| !c.is_unit()) {
            return Err(Error::Breakdown { step, index });
        }
        Ok(VcfState { step, f, a })
    }

    pub fn l(&self) -> usize {
        self.f.len()
    }
}

/// T[k] stored as w·T[k], a polynomial matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct StepMatrix<R: Ring> {
    pub w_times: ExactMatrix<Poly<R>>,
}

impl<R: Ring> StepMatrix<R> {
    /// w^L det T[k], which has to equal (−1)^{L−1} w.
    pub fn det_times_w_l(&self) -> Result<Poly<R>> {
        self.w_times.det()
    }

    /// det T[k] = (−w)^{1−L}, checked through w^L det T[k].
    pub fn det_is_canonical(&self) -> Result<bool> {
        let l = self.w_times.rows();
        let ctx = self.w_times.ctx().clone();
        let expect = Poly::monomial(R::lift(&ctx, &sign(l as i64 - 1)), 1);
        Ok(self.det_times_w_l()? == expect)
    }
}

fn step_matrix<R: Ring>(a: &[R]) -> StepMatrix<R> {
    let l = a.len();
    let ctx = a[0].ctx();
    let w = Poly::monomial(R::one_in(&ctx), 1);
    let m = ExactMatrix::from_fn(&ctx, l, l, |r, c| {
        if r == 0 {
            if c == l - 1 { w.clone() } else { Poly::zero(&ctx) }
        } else if c + 1 == r {
            Poly::one_in(&ctx)
        } else if c == r {
            let ratio = a[r - 1].times(&a[r].inverse().expect("checked unit"));
            Poly::constant(ratio.negated())
        } else {
            Poly::zero(&ctx)
        }
    });
    StepMatrix { w_times: m }
}

/// T[k]^{-1}, which is polynomial.
pub fn inverse_step<R: Ring>(a: &[R]) -> ExactMatrix<Poly<R>> {
    let l = a.len();
    let ctx = a[0].ctx();
    let inv: Vec<R> = a.iter().map(|c| c.inverse().expect("checked unit")).collect();
    ExactMatrix::from_fn(&ctx, l, l, |i, c| {
        if c == 0 {
            Poly::constant(a[i].times(&inv[l - 1]))
        } else if c > i && c < l {
            Poly::monomial(a[i].times(&inv[c - 1]), 1)
        } else {
            Poly::zero(&ctx)
        }
    })
}

/// One step: T[k] and f[k+1] = T[k] f[k].
pub fn vcf_step<R: Ring>(s: &VcfState<R>) -> Result<(StepMatrix<R>, VcfState<R>)> {
    let l = s.l();
    let order = s.f[0].order();
    if order == 0 {
        bail!(Usage, "series exhausted after {} steps", s.step);
    }
    let t = step_matrix(&s.a);
    let mut next = Vec::with_capacity(l);
    next.push(s.f[l - 1].truncate(order - 1));
    for r in 1..l {
        let c = s.a[r - 1].times(&s.a[r].inverse().expect("checked unit"));
        let num = s.f[r - 1].sub(&s.f[r].scale_by(&c))?;
        next.push(num.div_w()?);
    }
    Ok((t, VcfState::at(s.step + 1, next)?))
}

/// The first `count` states f[0], …, f[count−1] and their step matrices.
#[allow(clippy::type_complexity)]
pub fn expand<R: Ring>(f: Vec<TruncatedSeries<R>>, count: usize) -> Result<(Vec<StepMatrix<R>>, Vec<VcfState<R>>)> {
    let mut states = alloc::vec![VcfState::new(f)?];
    while states.len() < count {
        let (_, next) = vcf_step(states.last().expect("nonempty"))?;
        states.push(next);
    }
    states.truncate(count.max(1));
    let steps = states.iter().map(|s| step_matrix(&s.a)).collect();
    Ok((steps, states))
}

/// Π_k as numerator/denominator polynomial pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct Convergent<R: Ring> {
    pub k: usize,
    pub numerators: Vec<Poly<R>>,
    pub denominator: Poly<R>,
}

impl<R: Ring> Convergent<R> {
    /// Order of contact of φ − Π_k, read as min valuation of ϖ_0 φ_i − ϖ_i.
    pub fn contact_order(&self, phi: &[TruncatedSeries<R>]) -> Result<usize> {
        let mut best = phi[0].order() + 1;
        for (p, num) in phi.iter().zip(&self.numerators) {
            let d = p.mul_poly(&self.denominator).sub(&TruncatedSeries::from_poly(p.var(), num, p.order()))?;
            best = best.min(d.valuation().unwrap_or(p.order() + 1));
        }
        Ok(best)
    }
}

/// Π_k from ϖ = T[0]^{-1}…T[k−1]^{-1} e_0, certified φ − Π_k = O(w^k).
pub fn convergent<R: Ring>(f: &[TruncatedSeries<R>], k: usize) -> Result<Convergent<R>> {
    let (_, states) = expand(f.to_vec(), k)?;
    let l = f.len();
    let ctx = f[0].ring_ctx();
    let mut v: ExactMatrix<Poly<R>> =
        ExactMatrix::from_fn(&ctx, l, 1, |i, _| if i == 0 { Poly::one_in(&ctx) } else { Poly::zero(&ctx) });
    for s in states.iter().take(k).rev() {
        v = inverse_step(&s.a).mul(&v)?;
    }
    let denominator = v.get(0, 0).clone();
    if !denominator.coeff(0).is_unit() {
        bail!(NonGeneric, "denominator of the convergent vanishes at w = 0");
    }
    let numerators = (1..l).map(|i| v.get(i, 0).clone()).collect();
    let c = Convergent { k, numerators, denominator };
    let phi = phis(f)?;
    if c.contact_order(&phi)? < k.min(phi[0].order() + 1) {
        bail!(InvariantViolation, "convergent {k} does not reach contact order {k}");
    }
    Ok(c)
}

/// Inhomogeneous coordinates φ_i = f_i/f_0.
pub fn phis<R: Ring>(f: &[TruncatedSeries<R>]) -> Result<Vec<TruncatedSeries<R>>> {
    let inv = f[0].reciprocal()?;
    f[1..].iter().map(|s| s.mul(&inv)).collect()
}

/// w^L T[L−1]…T[0] against the n = 1 type-I matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport<R: Ring> {
    pub product: ExactMatrix<Poly<R>>,
    pub shape_ok: bool,
    pub matches_type_one: bool,
}

pub fn schlesinger_equivalence<R: Ring>(f: &[TruncatedSeries<R>]) -> Result<EquivalenceReport<R>> {
    let l = f.len();
    let (steps, _) = expand(f.to_vec(), l)?;
    let ctx = f[0].ring_ctx();
    let mut prod = ExactMatrix::<Poly<R>>::identity(&ctx, l);
    for t in &steps {
        prod = t.w_times.mul(&prod)?;
    }
    let mut shape_ok = true;
    for i in 0..l {
        for j in 0..l {
            let e = prod.get(i, j);
            let ok = if i == j {
                e.degree() == Some(1) && e.leading().is_some_and(|c| c.is_unit())
            } else if i < j {
                e.degree().is_none_or(|d| d <= 1) && e.coeff(0).vanishes()
            } else {
                e.degree().is_none_or(|d| d == 0)
            };
            shape_ok &= ok;
        }
    }
    let problem = TypeIProblem::new(f.to_vec(), 1)?;
    let q = solve_type_i_all(&problem)?.q_tilde_matrix();
    let mut matches = shape_ok;
    if shape_ok {
        for i in 0..l {
            let lead = prod.get(i, i).leading().expect("degree one").clone();
            let inv = Poly::constant(lead.inverse().expect("unit"));
            for j in 0..l {
                matches &= prod.get(i, j).mul(&inv) == *q.get(i, j);
            }
        }
    }
    let report = EquivalenceReport { product: prod, shape_ok, matches_type_one: matches };
    if !report.shape_ok || !report.matches_type_one {
        bail!(InvariantViolation, "T-product does not reproduce the n = 1 type-I matrix");
    }
    Ok(report)
}
