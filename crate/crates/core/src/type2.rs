//! Simultaneous Padé approximation: column vectors P̃^(j) whose cross
//! differences f_a P̃_b − f_b P̃_a vanish to high order.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::poly::Poly;
use crate::rational::sign;
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use crate::toeplitz::{shorthand_delta, vblocks, MomentTable};
use crate::type1::TypeIProblem;

/// One column P̃^(j).
#[derive(Clone, Debug, PartialEq)]
pub struct TypeIICol<R: Ring> {
    pub j: usize,
    /// P_i^(j), degree ≤ m − 1 + δ_ij.
    pub p: Vec<Poly<R>>,
    /// (wP_0, …, wP_{j-1}, P_j, …, P_{L-1}).
    pub p_tilde: Vec<Poly<R>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeIISolution<R: Ring> {
    pub n: usize,
    pub cols: Vec<TypeIICol<R>>,
}

/// The problem with every series divided by f_0.
fn normalized<R: Ring>(p: &TypeIProblem<R>) -> Result<Vec<TruncatedSeries<R>>> {
    let r = p.f()[0].reciprocal()?;
    p.f().iter().map(|s| s.mul(&r)).collect()
}

fn degree_m<R: Ring>(p: &TypeIProblem<R>) -> usize {
    p.n() * (p.l() - 1)
}

/// Row blocks (sequence, top-left index, rows) of the system for P_0^(j).
fn blocks<R: Ring>(p: &TypeIProblem<R>, j: usize) -> Vec<(usize, i64, usize)> {
    let (l, n, m) = (p.l(), p.n(), degree_m(p) as i64);
    (1..l)
        .map(|i| {
            if j == 0 || i < j {
                (i, m, n)
            } else if i == j {
                (i, m, n - 1)
            } else {
                (i, m - 1, n)
            }
        })
        .collect()
}

fn width<R: Ring>(p: &TypeIProblem<R>, j: usize) -> usize {
    degree_m(p) + usize::from(j == 0)
}

fn section_poly<R: Ring>(f: &TruncatedSeries<R>, p0: &Poly<R>, hi: i64) -> Poly<R> {
    let ctx = f.ring_ctx();
    if hi < 0 {
        return Poly::zero(&ctx);
    }
    let prod = f.mul_poly(p0);
    Poly::new(&ctx, prod.coeffs()[..=hi as usize].to_vec())
}

/// P_i^(j) for i ≥ 1 from P_0^(j) by the section formulas.
fn sections<R: Ring>(f: &[TruncatedSeries<R>], j: usize, m: usize, p0: &Poly<R>) -> Vec<Poly<R>> {
    let m = m as i64;
    let mut out = alloc::vec![p0.clone()];
    for (i, fi) in f.iter().enumerate().skip(1) {
        let p = if j == 0 || i < j {
            section_poly(fi, p0, m - 1)
        } else if i == j {
            section_poly(fi, p0, m - 1).shift(1)
        } else {
            section_poly(fi, p0, m - 2).shift(1)
        };
        out.push(p);
    }
    out
}

/// Value used for monic normalization: the coefficient that becomes the lead of P_j^(j).
fn diagonal_lead<R: Ring>(f: &[TruncatedSeries<R>], j: usize, m: usize, p0: &Poly<R>) -> R {
    if j == 0 {
        p0.coeff(m)
    } else {
        f[j].mul_poly(p0).coeff(m - 1).clone()
    }
}

fn tilde<R: Ring>(j: usize, p: &[Poly<R>]) -> Vec<Poly<R>> {
    p.iter().enumerate().map(|(i, q)| if i < j { q.shift(1) } else { q.clone() }).collect()
}

fn finish<R: Ring>(p: &TypeIProblem<R>, j: usize, p0: Poly<R>) -> Result<TypeIICol<R>> {
    let f = normalized(p)?;
    let m = degree_m(p);
    let lead = diagonal_lead(&f, j, m, &p0);
    let Some(inv) = lead.inverse() else {
        bail!(NonGeneric, "leading coefficient of P_{j}^({j}) is not invertible");
    };
    let p0 = p0.scale_by(&inv);
    let polys = sections(&f, j, m, &p0);
    let col = TypeIICol { j, p_tilde: tilde(j, &polys), p: polys };
    check_cross_orders(p, &col)?;
    Ok(col)
}

/// Column j from the kernel of the P_0^(j) system.
pub fn solve_type_ii<R: Ring>(p: &TypeIProblem<R>, j: usize) -> Result<TypeIICol<R>> {
    if j >= p.l() {
        bail!(Usage, "column index {j} out of range 0..{}", p.l());
    }
    let t = MomentTable::from_series(&normalized(p)?)?;
    let a = vblocks(&t, width(p, j), &blocks(p, j))?;
    let v = a.kernel_vector()?;
    finish(p, j, Poly::new(&p.ring_ctx(), v))
}

pub fn solve_type_ii_all<R: Ring>(p: &TypeIProblem<R>) -> Result<TypeIISolution<R>> {
    let cols = (0..p.l()).map(|j| solve_type_ii(p, j)).collect::<Result<Vec<_>>>()?;
    Ok(TypeIISolution { n: p.n(), cols })
}

/// f_a P̃_b − f_b P̃_a = O(w^{nL+1}) for a, b < j and O(w^{nL}) otherwise.
pub fn check_cross_orders<R: Ring>(p: &TypeIProblem<R>, col: &TypeIICol<R>) -> Result<()> {
    let nl = p.n() * p.l();
    let f = p.f();
    for a in 0..p.l() {
        for b in a + 1..p.l() {
            let d = f[a].mul_poly(&col.p_tilde[b]).sub(&f[b].mul_poly(&col.p_tilde[a]))?;
            let need = if a < col.j && b < col.j { nl + 1 } else { nl };
            if !d.is_big_o(need) {
                bail!(
                    InvariantViolation,
                    "cross difference ({a},{b}) of column {} is not O(w^{need})",
                    col.j
                );
            }
        }
    }
    Ok(())
}

/// P_0^(j) from the bordered determinant, normalized by the Δ form of NP^(j).
pub fn det_rep_p0<R: Ring>(p: &TypeIProblem<R>, j: usize) -> Result<Poly<R>> {
    if j >= p.l() {
        bail!(Usage, "column index {j} out of range 0..{}", p.l());
    }
    let t = MomentTable::from_series(&normalized(p)?)?;
    let a = vblocks(&t, width(p, j), &blocks(p, j))?;
    let inv = match np_delta(p, j)?.inverse() {
        Some(v) => v,
        None => bail!(NonGeneric, "normalizing constant NP^({j}) is not invertible"),
    };
    let coeffs = (0..width(p, j))
        .map(|c| Ok(a.drop_col(c).det()?.scale(&sign(c as i64)).times(&inv)))
        .collect::<Result<Vec<R>>>()?;
    Ok(Poly::new(&p.ring_ctx(), coeffs))
}

/// NP^(0) = (−1)^{m(m−n)/2 + n(L−1)} Δ^(L), NP^(j) = (−1)^{m(m−n)/2 + n(j−1)} Δ^(j).
pub fn np_delta<R: Ring>(p: &TypeIProblem<R>, j: usize) -> Result<R> {
    let t = MomentTable::from_series(&normalized(p)?)?;
    let (l, n, m) = (p.l(), p.n(), degree_m(p));
    let base = (m * (m - n) / 2) as i64;
    if j == 0 {
        Ok(shorthand_delta(&t, n, l)?.scale(&sign(base + (n * (l - 1)) as i64)))
    } else {
        Ok(shorthand_delta(&t, n, j)?.scale(&sign(base + (n * (j - 1)) as i64)))
    }
}

/// NP^(j) as the bordered determinant whose border reads off the lead of P_j^(j).
pub fn np_bordered<R: Ring>(p: &TypeIProblem<R>, j: usize) -> Result<R> {
    let f = normalized(p)?;
    let t = MomentTable::from_series(&f)?;
    let a = vblocks(&t, width(p, j), &blocks(p, j))?;
    let m = degree_m(p);
    let ctx = p.ring_ctx();
    let border: Vec<R> = if j == 0 {
        (0..=m).map(|c| if c == m { R::one_in(&ctx) } else { R::zero_in(&ctx) }).collect()
    } else {
        (0..m).map(|c| t.get(j, (m - 1 - c) as i64)).collect::<Result<Vec<R>>>()?
    };
    let top = crate::matrix::ExactMatrix::from_rows(&ctx, alloc::vec![border])?;
    top.vstack(&a)?.det()
}
