use alloc::vec::Vec;
use core::fmt;

use crate::error::{bail, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::ring::Ring;

/// Dense row-major matrix over an exact ring.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<R: Ring> {
    rows: usize,
    cols: usize,
    ctx: R::Ctx,
    data: Vec<R>,
}

impl<R: Ring> ExactMatrix<R> {
    pub fn new(ctx: &R::Ctx, rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            bail!(Usage, "{} entries for a {rows}x{cols} matrix", data.len());
        }
        Ok(ExactMatrix { rows, cols, ctx: ctx.clone(), data })
    }

    pub fn from_rows(ctx: &R::Ctx, rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        if rows.iter().any(|v| v.len() != c) {
            bail!(Usage, "ragged rows");
        }
        Self::new(ctx, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(ctx: &R::Ctx, rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, ctx: ctx.clone(), data }
    }

    pub fn zeros(ctx: &R::Ctx, rows: usize, cols: usize) -> Self {
        Self::from_fn(ctx, rows, cols, |_, _| R::zero_in(ctx))
    }

    pub fn identity(ctx: &R::Ctx, n: usize) -> Self {
        Self::from_fn(ctx, n, n, |i, j| if i == j { R::one_in(ctx) } else { R::zero_in(ctx) })
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> ExactMatrix<S> {
        ExactMatrix { rows: self.rows, cols: self.cols, ctx: ctx.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            bail!(Usage, "cannot multiply {}x{} by {}x{}", self.rows, self.cols, o.rows, o.cols);
        }
        let mut out = Self::zeros(&self.ctx, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_exact_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_exact_zero() {
                        continue;
                    }
                    let v = out.get(i, j).plus(&a.times(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, o: &Self, f: impl Fn(&R, &R) -> R) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            bail!(Usage, "shape mismatch {}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols);
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, ctx: self.ctx.clone(), data })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.plus(b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a.minus(b))
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(&self.ctx, |a| a.times(c))
    }

    pub fn negated(&self) -> Self {
        self.map(&self.ctx, |a| a.negated())
    }

    /// [A, B] = AB − BA.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.vanishes())
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j).vanishes()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).vanishes()))
    }

    pub fn diagonal(&self) -> Vec<R> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> R {
        self.diagonal().iter().fold(R::zero_in(&self.ctx), |a, b| a.plus(b))
    }

    /// Delete row `r` and column `c`.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix { rows: self.rows - 1, cols: self.cols - 1, ctx: self.ctx.clone(), data }
    }

    /// Delete column `c` only.
    pub fn drop_col(&self, c: usize) -> Self {
        Self::from_fn(&self.ctx, self.rows, self.cols - 1, |i, j| {
            self.get(i, if j < c { j } else { j + 1 }).clone()
        })
    }

    /// Stack vertically.
    pub fn vstack(&self, o: &Self) -> Result<Self> {
        if self.cols != o.cols {
            bail!(Usage, "vstack of {} and {} columns", self.cols, o.cols);
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(ExactMatrix { rows: self.rows + o.rows, cols: self.cols, ctx: self.ctx.clone(), data })
    }

    /// Concatenate horizontally.
    pub fn hstack(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows {
            bail!(Usage, "hstack of {} and {} rows", self.rows, o.rows);
        }
        let cols = self.cols + o.cols;
        Ok(Self::from_fn(&self.ctx, self.rows, cols, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { o.get(i, j - self.cols).clone() }
        }))
    }

    /// Determinant by elimination on unit pivots.
    ///
    /// When a column has no unit below the diagonal the remaining block is
    /// expanded along that column, which keeps the routine exact over rings
    /// that are not fields.
    pub fn det(&self) -> Result<R> {
        if !self.is_square() {
            bail!(Usage, "determinant of a {}x{} matrix", self.rows, self.cols);
        }
        Ok(det_rows(&self.ctx, self.to_rows()))
    }

    /// Plain cofactor expansion along the first row, O(n!).
    pub fn det_cofactor(&self) -> Result<R> {
        if !self.is_square() {
            bail!(Usage, "determinant of a {}x{} matrix", self.rows, self.cols);
        }
        Ok(cofactor(&self.ctx, &self.to_rows()))
    }

    pub fn adjugate(&self) -> Result<Self> {
        if !self.is_square() {
            bail!(Usage, "adjugate of a {}x{} matrix", self.rows, self.cols);
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(&self.ctx, 1));
        }
        let mut out = Self::zeros(&self.ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(i, j).det()?;
                out.set(j, i, if (i + j) % 2 == 0 { d } else { d.negated() });
            }
        }
        Ok(out)
    }

    /// Inverse via Gauss–Jordan on unit pivots.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            bail!(Usage, "inverse of a {}x{} matrix", self.rows, self.cols);
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.ctx, n))?;
        let mut a = aug.to_rows();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r][c].is_unit()) else {
                bail!(Singular, "no invertible pivot in column {c}");
            };
            a.swap(c, p);
            let inv = a[c][c].inverse().expect("unit pivot");
            a[c] = a[c].iter().map(|v| v.times(&inv)).collect();
            for r in 0..n {
                if r == c || a[r][c].is_exact_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = x.minus(&f.times(y));
                }
            }
        }
        let rows = a.into_iter().map(|r| r[n..].to_vec()).collect();
        Self::from_rows(&self.ctx, rows)
    }

    /// The unique-up-to-scale kernel vector of a matrix of corank one.
    ///
    /// The pivot column of every row must be a unit; a column whose remaining
    /// entries are nonzero but not units cannot be decided and is reported as
    /// non-generic, as is a kernel of dimension other than one.
    pub fn kernel_vector(&self) -> Result<Vec<R>> {
        let (rref, pivots, free) = self.rref()?;
        if free.len() != 1 {
            bail!(
                NonGeneric,
                "kernel of the {}x{} system has dimension {}, expected 1",
                self.rows,
                self.cols,
                free.len()
            );
        }
        let f = free[0];
        let mut v: Vec<R> = (0..self.cols).map(|_| R::zero_in(&self.ctx)).collect();
        v[f] = R::one_in(&self.ctx);
        for (k, &c) in pivots.iter().enumerate() {
            v[c] = rref[k][f].negated();
        }
        Ok(v)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    #[allow(clippy::type_complexity)]
    fn rref(&self) -> Result<(Vec<Vec<R>>, Vec<usize>, Vec<usize>)> {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut free = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let p = (r..self.rows).find(|&i| a[i][c].is_unit());
            let Some(p) = p else {
                if (r..self.rows).any(|i| !a[i][c].vanishes()) {
                    bail!(NonGeneric, "column {c} has no invertible pivot");
                }
                free.push(c);
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inverse().expect("unit pivot");
            a[r] = a[r].iter().map(|v| v.times(&inv)).collect();
            for i in 0..self.rows {
                if i == r || a[i][c].is_exact_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = x.minus(&f.times(y));
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((a, pivots, free))
    }
}

fn det_rows<R: Ring>(ctx: &R::Ctx, mut a: Vec<Vec<R>>) -> R {
    let n = a.len();
    let mut acc = R::one_in(ctx);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c].is_unit()) else {
            let block: Vec<Vec<R>> = a[c..].iter().map(|row| row[c..].to_vec()).collect();
            return acc.times(&expand_first_col(ctx, &block));
        };
        if p != c {
            a.swap(c, p);
            acc = acc.negated();
        }
        let inv = a[c][c].inverse().expect("unit pivot");
        acc = acc.times(&a[c][c]);
        for r in c + 1..n {
            if a[r][c].is_exact_zero() {
                continue;
            }
            let f = a[r][c].times(&inv);
            let pivot_row = a[c].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot_row).skip(c) {
                *x = x.minus(&f.times(y));
            }
        }
    }
    acc
}

fn expand_first_col<R: Ring>(ctx: &R::Ctx, a: &[Vec<R>]) -> R {
    let mut total = R::zero_in(ctx);
    for r in 0..a.len() {
        if a[r][0].is_exact_zero() {
            continue;
        }
        let sub: Vec<Vec<R>> = a
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let t = a[r][0].times(&det_rows(ctx, sub));
        total = if r % 2 == 0 { total.plus(&t) } else { total.minus(&t) };
    }
    total
}

fn cofactor<R: Ring>(ctx: &R::Ctx, a: &[Vec<R>]) -> R {
    let n = a.len();
    if n == 0 {
        return R::one_in(ctx);
    }
    let mut total = R::zero_in(ctx);
    for c in 0..n {
        let sub: Vec<Vec<R>> = a[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let t = a[0][c].times(&cofactor(ctx, &sub));
        total = if c % 2 == 0 { total.plus(&t) } else { total.minus(&t) };
    }
    total
}

impl ExactMatrix<Rational> {
    /// det(λI − A) by the Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> Result<Poly<Rational>> {
        if !self.is_square() {
            bail!(Usage, "characteristic polynomial of a non-square matrix");
        }
        let n = self.rows;
        let mut c: Vec<Rational> = alloc::vec![Rational::from_integer(0.into()); n + 1];
        c[n] = Rational::from_integer(1.into());
        let id = Self::identity(&(), n);
        let mut m = Self::zeros(&(), n, n);
        for k in 1..=n {
            m = self.mul(&m)?.add(&id.scale_by(&c[n - k + 1]))?;
            let am = self.mul(&m)?;
            c[n - k] = -am.trace() / Rational::from_integer((k as i64).into());
        }
        Ok(Poly::new(&(), c))
    }
}

impl<R: Ring> fmt::Display for ExactMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
