use alloc::vec::Vec;
use core::fmt;

use crate::error::{bail, Result};
use crate::rational::Rational;
use crate::ring::Ring;

/// Dense polynomial with coefficients in ascending powers.
///
/// Trailing exact zeros are trimmed. Coefficients that only vanish to their
/// known order stay stored; `degree` and `leading` skip them.
#[derive(Clone, Debug)]
pub struct Poly<R: Ring> {
    ctx: R::Ctx,
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(ctx: &R::Ctx, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        Poly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &R::Ctx) -> Self {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        let ctx = c.ctx();
        Poly::new(&ctx, alloc::vec![c])
    }

    /// c·z^d.
    pub fn monomial(c: R, d: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs: Vec<R> = (0..d).map(|_| R::zero_in(&ctx)).collect();
        coeffs.push(c);
        Poly::new(&ctx, coeffs)
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.vanishes())
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(|| R::zero_in(&self.ctx))
    }

    pub fn leading(&self) -> Option<&R> {
        self.degree().map(|d| &self.coeffs[d])
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == R::one_in(&self.ctx))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).plus(&o.coeff(k))).collect();
        Poly::new(&self.ctx, coeffs)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).minus(&o.coeff(k))).collect();
        Poly::new(&self.ctx, coeffs)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Poly::zero(&self.ctx);
        }
        let mut coeffs: Vec<R> =
            (0..self.coeffs.len() + o.coeffs.len() - 1).map(|_| R::zero_in(&self.ctx)).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        Poly::new(&self.ctx, coeffs)
    }

    pub fn scale_by(&self, c: &R) -> Self {
        Poly::new(&self.ctx, self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn negated(&self) -> Self {
        Poly::new(&self.ctx, self.coeffs.iter().map(|a| a.negated()).collect())
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs: Vec<R> = (0..k).map(|_| R::zero_in(&self.ctx)).collect();
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(&self.ctx, coeffs)
    }

    pub fn eval(&self, z: &R) -> R {
        let mut acc = R::zero_in(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.times(z).plus(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
            .collect();
        Poly::new(&self.ctx, coeffs)
    }

    /// z^d p(1/z); needs deg p ≤ d.
    pub fn reversed(&self, d: usize) -> Result<Self> {
        if let Some(deg) = self.degree().filter(|&deg| deg > d) {
            bail!(InvariantViolation, "degree {deg} exceeds reversal degree {d}");
        }
        let coeffs = (0..=d).map(|k| self.coeff(d - k)).collect();
        Ok(Poly::new(&self.ctx, coeffs))
    }

    /// Divide by z^k when the low coefficients vanish.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.vanishes()) {
            bail!(InvariantViolation, "polynomial is not divisible by z^{k}");
        }
        Ok(Poly::new(&self.ctx, self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn map<S: Ring>(&self, ctx: &S::Ctx, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(ctx, self.coeffs.iter().map(f).collect())
    }
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).coeffs.iter().all(|c| c.vanishes())
    }
}

impl<R: Ring> Ring for Poly<R> {
    type Ctx = R::Ctx;

    fn ctx(&self) -> R::Ctx {
        self.ctx.clone()
    }
    fn zero_in(ctx: &R::Ctx) -> Self {
        Poly::zero(ctx)
    }
    fn one_in(ctx: &R::Ctx) -> Self {
        Poly::constant(R::one_in(ctx))
    }
    fn lift(ctx: &R::Ctx, r: &Rational) -> Self {
        Poly::new(ctx, alloc::vec![R::lift(ctx, r)])
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        Poly::negated(self)
    }
    fn scale(&self, r: &Rational) -> Self {
        Poly::new(&self.ctx, self.coeffs.iter().map(|a| a.scale(r)).collect())
    }
    fn vanishes(&self) -> bool {
        self.coeffs.iter().all(|c| c.vanishes())
    }
    fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn inverse(&self) -> Option<Self> {
        if self.degree() == Some(0) {
            self.coeffs[0].inverse().map(Poly::constant)
        } else {
            None
        }
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vanishes() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.vanishes() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}
