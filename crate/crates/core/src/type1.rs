//! Hermite–Padé approximation of type I: row vectors Q̃^(i) with
//! Q̃^(i)·f = O(w^{nL}).

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::matrix::ExactMatrix;
use crate::poly::Poly;
use crate::rational::sign;
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use crate::toeplitz::{hblocks, shorthand_delta, MomentTable};

/// Series f_0..f_{L-1} and the approximation order n.
#[derive(Clone, Debug)]
pub struct TypeIProblem<R: Ring> {
    f: Vec<TruncatedSeries<R>>,
    n: usize,
}

impl<R: Ring> TypeIProblem<R> {
    pub fn new(f: Vec<TruncatedSeries<R>>, n: usize) -> Result<Self> {
        let l = f.len();
        if l < 2 {
            bail!(Usage, "need at least two series, got {l}");
        }
        if n == 0 {
            bail!(Usage, "approximation order n must be positive");
        }
        let (var, order) = (f[0].var(), f[0].order());
        if f.iter().any(|s| s.var() != var || s.order() != order) {
            bail!(Usage, "all series must share variable and order");
        }
        if order < n * l + n {
            bail!(Usage, "series order {order} below the required n*L + n = {}", n * l + n);
        }
        if !f[0].constant_term().is_unit() {
            bail!(Singular, "f_0(0) is not invertible");
        }
        Ok(TypeIProblem { f, n })
    }

    pub fn f(&self) -> &[TruncatedSeries<R>] {
        &self.f
    }

    pub fn l(&self) -> usize {
        self.f.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring_ctx(&self) -> R::Ctx {
        self.f[0].ring_ctx()
    }

    pub fn table(&self) -> MomentTable<R> {
        MomentTable::from_series(&self.f).expect("validated on construction")
    }

    /// Degree bound n − 1 + δ_ij of Q_j^(i).
    fn width(&self, i: usize, j: usize) -> usize {
        self.n + usize::from(i == j)
    }

    /// Column of b_{j,d} in the unknown vector for row i.
    fn col(&self, i: usize, j: usize, d: usize) -> usize {
        (0..j).map(|a| self.width(i, a)).sum::<usize>() + d
    }

    /// The nL × (nL+1) coefficient matrix of the linear system for row i.
    pub fn system_matrix(&self, i: usize) -> Result<ExactMatrix<R>> {
        self.system_matrix_rows(i, self.n * self.l())
    }

    fn system_matrix_rows(&self, i: usize, rows: usize) -> Result<ExactMatrix<R>> {
        if i >= self.l() {
            bail!(Usage, "row index {i} out of range 0..{}", self.l());
        }
        let blocks: Vec<(usize, i64, usize)> = (0..self.l())
            .map(|j| (j, if j <= i { 0 } else { -1 }, self.width(i, j)))
            .collect();
        hblocks(&self.table(), rows, &blocks)
    }
}

/// One row Q̃^(i) with its remainder.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeIRow<R: Ring> {
    pub i: usize,
    /// Q_j^(i), degree ≤ n − 1 + δ_ij.
    pub q: Vec<Poly<R>>,
    /// (Q_0, …, Q_i, wQ_{i+1}, …, wQ_{L-1}).
    pub q_tilde: Vec<Poly<R>>,
    /// ρ_i = Q̃^(i)·f.
    pub remainder: TruncatedSeries<R>,
}

/// All L rows, monic on the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeISolution<R: Ring> {
    pub n: usize,
    pub rows: Vec<TypeIRow<R>>,
}

impl<R: Ring> TypeISolution<R> {
    pub fn l(&self) -> usize {
        self.rows.len()
    }

    /// The polynomial matrix with rows Q̃^(i).
    pub fn q_tilde_matrix(&self) -> ExactMatrix<Poly<R>> {
        let ctx = self.rows[0].q[0].ctx().clone();
        let rows = self.rows.iter().map(|r| r.q_tilde.clone()).collect();
        ExactMatrix::from_rows(&ctx, rows).expect("square by construction")
    }
}

fn tilde<R: Ring>(i: usize, q: &[Poly<R>]) -> Vec<Poly<R>> {
    q.iter().enumerate().map(|(j, p)| if j <= i { p.clone() } else { p.shift(1) }).collect()
}

fn remainder<R: Ring>(p: &TypeIProblem<R>, qt: &[Poly<R>]) -> TruncatedSeries<R> {
    let mut rho = p.f[0].mul_poly(&qt[0]);
    for (fj, qj) in p.f.iter().zip(qt).skip(1) {
        rho = rho.add(&fj.mul_poly(qj)).expect("same shape");
    }
    rho
}

fn assemble<R: Ring>(p: &TypeIProblem<R>, i: usize, coeffs: &[R]) -> Result<TypeIRow<R>> {
    let ctx = p.ring_ctx();
    let q: Vec<Poly<R>> = (0..p.l())
        .map(|j| {
            let start = p.col(i, j, 0);
            Poly::new(&ctx, coeffs[start..start + p.width(i, j)].to_vec())
        })
        .collect();
    let q_tilde = tilde(i, &q);
    let rho = remainder(p, &q_tilde);
    let nl = p.n * p.l();
    if !rho.is_big_o(nl) {
        bail!(InvariantViolation, "remainder of row {i} is not O(w^{nl})");
    }
    Ok(TypeIRow { i, q, q_tilde, remainder: rho })
}

/// Row i from the one-dimensional kernel, rescaled so Q_i^(i) is monic.
pub fn solve_type_i<R: Ring>(p: &TypeIProblem<R>, i: usize) -> Result<TypeIRow<R>> {
    let a = p.system_matrix(i)?;
    let v = a.kernel_vector()?;
    let lead = &v[p.col(i, i, p.n)];
    let Some(inv) = lead.inverse() else {
        bail!(NonGeneric, "leading coefficient of Q_{i}^({i}) is not invertible");
    };
    let v: Vec<R> = v.iter().map(|c| c.times(&inv)).collect();
    assemble(p, i, &v)
}

pub fn solve_type_i_all<R: Ring>(p: &TypeIProblem<R>) -> Result<TypeISolution<R>> {
    let rows = (0..p.l()).map(|i| solve_type_i(p, i)).collect::<Result<Vec<_>>>()?;
    Ok(TypeISolution { n: p.n, rows })
}

/// (−1)^c det of the system matrix with column c removed: the cofactor of a
/// unit placed at column c of the bordering row.
fn bordered_cofactor<R: Ring>(a: &ExactMatrix<R>, c: usize) -> Result<R> {
    Ok(a.drop_col(c).det()?.scale(&sign(c as i64)))
}

/// NQ^(i): the bordered determinant whose border selects the leading coefficient of Q_i^(i).
pub fn nq<R: Ring>(p: &TypeIProblem<R>, i: usize) -> Result<R> {
    bordered_cofactor(&p.system_matrix(i)?, p.col(i, i, p.n))
}

fn nq_inverse<R: Ring>(p: &TypeIProblem<R>, i: usize) -> Result<R> {
    let v = nq(p, i)?;
    match v.inverse() {
        Some(x) => Ok(x),
        None => bail!(NonGeneric, "normalizing constant NQ^({i}) is not invertible"),
    }
}

/// Q_j^(i) from the bordered determinant, normalized by NQ^(i).
pub fn det_rep_q<R: Ring>(p: &TypeIProblem<R>, i: usize, j: usize) -> Result<Poly<R>> {
    if j >= p.l() {
        bail!(Usage, "column index {j} out of range 0..{}", p.l());
    }
    let a = p.system_matrix(i)?;
    let inv = nq_inverse(p, i)?;
    let coeffs = (0..p.width(i, j))
        .map(|d| Ok(bordered_cofactor(&a, p.col(i, j, d))?.times(&inv)))
        .collect::<Result<Vec<R>>>()?;
    Ok(Poly::new(&p.ring_ctx(), coeffs))
}

/// ρ^i_{nL} from the (nL+1)-row determinant.
pub fn remainder_leading<R: Ring>(p: &TypeIProblem<R>, i: usize) -> Result<R> {
    let nl = p.n * p.l();
    let big = p.system_matrix_rows(i, nl + 1)?;
    let inv = nq_inverse(p, i)?;
    Ok(big.det()?.times(&inv).scale(&sign(nl as i64)))
}

/// Q_i^(i)(0) from the bordered determinant, 1 ≤ i ≤ L − 1.
pub fn diag_constant_term<R: Ring>(p: &TypeIProblem<R>, i: usize) -> Result<R> {
    if i == 0 || i >= p.l() {
        bail!(Usage, "diagonal constant term needs 1 <= i <= L-1, got {i}");
    }
    let a = p.system_matrix(i)?;
    Ok(bordered_cofactor(&a, p.col(i, i, 0))?.times(&nq_inverse(p, i)?))
}

fn require_f0_one<R: Ring>(p: &TypeIProblem<R>) -> Result<()> {
    let one = R::one_in(&p.ring_ctx());
    let f0 = &p.f[0];
    if *f0.coeff(0) != one || f0.coeffs().iter().skip(1).any(|c| !c.vanishes()) {
        bail!(Usage, "the block-Toeplitz formulas need f_0 = 1");
    }
    Ok(())
}

fn ratio<R: Ring>(num: R, den: R, what: &str) -> Result<R> {
    match den.inverse() {
        Some(inv) => Ok(num.times(&inv)),
        None => bail!(NonGeneric, "{what} has a non-invertible denominator"),
    }
}

/// Q_i^(i)(0) = (−1)^n Δ^(i)/Δ^(i+1) when f_0 = 1.
pub fn diag_constant_term_delta<R: Ring>(p: &TypeIProblem<R>, i: usize) -> Result<R> {
    require_f0_one(p)?;
    if i == 0 || i >= p.l() {
        bail!(Usage, "diagonal constant term needs 1 <= i <= L-1, got {i}");
    }
    let t = p.table();
    let v = ratio(shorthand_delta(&t, p.n, i)?, shorthand_delta(&t, p.n, i + 1)?, "Δ^(i)/Δ^(i+1)")?;
    Ok(v.scale(&sign(p.n as i64)))
}

/// ρ^0_{nL} = (−1)^m Δ^(L)/Δ^(1) when f_0 = 1.
pub fn remainder_leading_delta<R: Ring>(p: &TypeIProblem<R>) -> Result<R> {
    require_f0_one(p)?;
    let t = p.table();
    let l = p.l();
    let m = p.n * (l - 1);
    let v = ratio(shorthand_delta(&t, p.n, l)?, shorthand_delta(&t, p.n, 1)?, "Δ^(L)/Δ^(1)")?;
    Ok(v.scale(&sign(m as i64)))
}

/// NQ^(i) = (−1)^{n(i+1)} Δ^(i+1) when f_0 = 1.
pub fn nq_delta<R: Ring>(p: &TypeIProblem<R>, i: usize) -> Result<R> {
    require_f0_one(p)?;
    let t = p.table();
    Ok(shorthand_delta(&t, p.n, i + 1)?.scale(&sign((p.n * (i + 1)) as i64)))
}
