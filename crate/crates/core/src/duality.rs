//! Mahler duality between the two approximation problems and the
//! polynomial Schlesinger multiplier R(z) it produces.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::matrix::ExactMatrix;
use crate::poly::Poly;
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use crate::type1::TypeISolution;
use crate::type2::TypeIISolution;

/// R(z) = z^n Q̃(1/z) and its polynomial inverse z^m P̃(1/z).
#[derive(Clone, Debug, PartialEq)]
pub struct SchlesingerMultiplier<R: Ring> {
    pub n: usize,
    pub r: ExactMatrix<Poly<R>>,
    pub rinv: ExactMatrix<Poly<R>>,
}

impl<R: Ring> SchlesingerMultiplier<R> {
    pub fn l(&self) -> usize {
        self.r.rows()
    }

    /// The identity multiplier (n = 0).
    pub fn identity(ctx: &R::Ctx, l: usize) -> Self {
        let id = ExactMatrix::<Poly<R>>::identity(ctx, l);
        SchlesingerMultiplier { n: 0, r: id.clone(), rinv: id }
    }

    /// Coefficient matrix of z^d in R.
    pub fn r_coeff(&self, d: usize) -> ExactMatrix<R> {
        coeff_matrix(&self.r, d)
    }
}

/// Coefficient matrix of z^d in a polynomial matrix.
pub fn coeff_matrix<R: Ring>(m: &ExactMatrix<Poly<R>>, d: usize) -> ExactMatrix<R> {
    m.map(m.ctx(), |p| p.coeff(d))
}

/// Rows Q̃^(i) times columns P̃^(j).
pub fn product_matrix<R: Ring>(q: &TypeISolution<R>, p: &TypeIISolution<R>) -> Result<ExactMatrix<Poly<R>>> {
    let l = q.l();
    if p.cols.len() != l || q.n != p.n {
        bail!(Usage, "type-I and type-II data do not belong to the same problem");
    }
    let ctx = q.rows[0].q[0].ctx().clone();
    let pt = ExactMatrix::from_fn(&ctx, l, l, |i, j| p.cols[j].p_tilde[i].clone());
    q.q_tilde_matrix().mul(&pt)
}

/// Degree bounds deg M_ij ≤ nL (i ≤ j) and ≤ nL − 1 (i > j).
pub fn degree_bounds_hold<R: Ring>(m: &ExactMatrix<Poly<R>>, n: usize) -> bool {
    let nl = n * m.rows();
    (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| {
            let bound = if i <= j { nl } else { nl - 1 };
            m.get(i, j).degree().is_none_or(|d| d <= bound)
        })
    })
}

/// Checks Q̃·P̃ = w^{nL}·D with D constant diagonal and returns D.
pub fn verify_duality<R: Ring>(q: &TypeISolution<R>, p: &TypeIISolution<R>) -> Result<ExactMatrix<R>> {
    let m = product_matrix(q, p)?;
    let nl = q.n * q.l();
    let ctx = m.ctx().clone();
    let mut d = ExactMatrix::<R>::zeros(&ctx, q.l(), q.l());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let e = m.get(i, j);
            let c = e.coeff(nl);
            let rest = e.sub(&Poly::monomial(c.clone(), nl));
            if !rest.vanishes() || (i != j && !c.vanishes()) {
                bail!(InvariantViolation, "entry ({i},{j}) of the duality product is {e}");
            }
            d.set(i, j, c);
        }
    }
    Ok(d)
}

/// R(z) = z^n [Q̃^(i)(1/z)].
pub fn build_r<R: Ring>(q: &TypeISolution<R>) -> Result<ExactMatrix<Poly<R>>> {
    let qt = q.q_tilde_matrix();
    let rows = (0..qt.rows())
        .map(|i| (0..qt.cols()).map(|j| qt.get(i, j).reversed(q.n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(qt.ctx(), rows)
}

/// R(z)^{-1} = z^m [P̃^(j)(1/z)] with m = n(L−1).
pub fn build_rinv<R: Ring>(p: &TypeIISolution<R>) -> Result<ExactMatrix<Poly<R>>> {
    let l = p.cols.len();
    let m = p.n * (l - 1);
    let ctx = p.cols[0].p[0].ctx().clone();
    let mut rows = Vec::with_capacity(l);
    for i in 0..l {
        let row = (0..l).map(|j| p.cols[j].p_tilde[i].reversed(m)).collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    ExactMatrix::from_rows(&ctx, rows)
}

/// Assemble R and R^{-1}, certifying det R = 1, R·R^{-1} = I and the unit
/// upper-triangular constant term of R.
pub fn build_multiplier<R: Ring>(q: &TypeISolution<R>, p: &TypeIISolution<R>) -> Result<SchlesingerMultiplier<R>> {
    let r = build_r(q)?;
    let rinv = build_rinv(p)?;
    let ctx = r.ctx().clone();
    let one = Poly::<R>::one_in(&ctx);
    if r.det()? != one {
        bail!(InvariantViolation, "det R is not 1");
    }
    if r.mul(&rinv)? != ExactMatrix::identity(&ctx, r.rows()) {
        bail!(InvariantViolation, "R * Rinv is not the identity");
    }
    let r0 = coeff_matrix(&r, 0);
    if !r0.is_upper_triangular() || r0.diagonal().iter().any(|d| *d != R::one_in(&ctx)) {
        bail!(InvariantViolation, "constant term of R is not unit upper triangular");
    }
    Ok(SchlesingerMultiplier { n: q.n, r, rinv })
}

/// Outcome of the exponent-shift certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentShiftReport {
    /// w^n R(1/w) f = O(w^{nL}), i.e. R(1/w) f = O(w^{n(L−1)}).
    pub contact: bool,
    /// w^n R(1/w) at w = 0 is lower triangular with vanishing (0,0) entry.
    pub shape: bool,
}

pub fn exponent_shift_check<R: Ring>(
    s: &SchlesingerMultiplier<R>,
    f: &[TruncatedSeries<R>],
) -> Result<ExponentShiftReport> {
    let l = s.l();
    if f.len() != l {
        bail!(Usage, "series vector of length {} for L = {l}", f.len());
    }
    let n = s.n;
    let mut contact = true;
    let ctx = s.r.ctx().clone();
    let mut w0 = ExactMatrix::<R>::zeros(&ctx, l, l);
    for i in 0..l {
        let mut acc: Option<TruncatedSeries<R>> = None;
        for (j, fj) in f.iter().enumerate() {
            let q = s.r.get(i, j).reversed(n)?;
            w0.set(i, j, q.coeff(0));
            let t = fj.mul_poly(&q);
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t)?,
            });
        }
        if !acc.expect("L >= 2").is_big_o(n * l) {
            contact = false;
        }
    }
    let shape = w0.is_lower_triangular() && w0.get(0, 0).vanishes();
    let report = ExponentShiftReport { contact, shape };
    if !contact || !shape {
        bail!(InvariantViolation, "exponent shift certificate failed: {report:?}");
    }
    Ok(report)
}
