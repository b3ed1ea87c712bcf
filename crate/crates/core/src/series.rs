use alloc::vec::Vec;
use core::fmt;

use crate::error::{bail, Result};
use crate::poly::Poly;
use crate::ring::Ring;

/// c_0 + c_1 w + ... + c_K w^K, everything beyond w^K unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    var: char,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    pub fn new(var: char, coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            bail!(Usage, "a truncated series needs at least one coefficient");
        }
        Ok(TruncatedSeries { var, coeffs })
    }

    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn from_slice(var: char, ctx: &R::Ctx, coeffs: &[R], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|k| coeffs.get(k).cloned().unwrap_or_else(|| R::zero_in(ctx)))
            .collect();
        TruncatedSeries { var, coeffs }
    }

    pub fn from_poly(var: char, p: &Poly<R>, order: usize) -> Self {
        Self::from_slice(var, p.ctx(), p.coeffs(), order)
    }

    pub fn constant(var: char, c: R, order: usize) -> Self {
        let ctx = c.ctx();
        Self::from_slice(var, &ctx, &[c], order)
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ring_ctx(&self) -> R::Ctx {
        self.coeffs[0].ctx()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of w^k; zero past the stored range is not implied, so this panics there.
    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    /// Coefficient of w^k with zero for negative k.
    pub fn coeff_or_zero(&self, k: i64) -> R {
        if k < 0 {
            self.coeffs[0].zero_like()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn constant_term(&self) -> &R {
        &self.coeffs[0]
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            bail!(Usage, "series in {} and {} cannot be combined", self.var, o.var);
        }
        if self.order() != o.order() {
            bail!(Usage, "series orders {} and {} differ", self.order(), o.order());
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.plus(b)).collect();
        Ok(TruncatedSeries { var: self.var, coeffs })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.minus(b)).collect();
        Ok(TruncatedSeries { var: self.var, coeffs })
    }

    /// Cauchy product truncated at K.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let k = self.order();
        let mut coeffs = Vec::with_capacity(k + 1);
        for n in 0..=k {
            let mut acc = self.coeffs[0].zero_like();
            for i in 0..=n {
                if self.coeffs[i].is_exact_zero() || o.coeffs[n - i].is_exact_zero() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[i].times(&o.coeffs[n - i]));
            }
            coeffs.push(acc);
        }
        Ok(TruncatedSeries { var: self.var, coeffs })
    }

    pub fn scale_by(&self, c: &R) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.times(c)).collect();
        TruncatedSeries { var: self.var, coeffs }
    }

    pub fn negated(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.negated()).collect();
        TruncatedSeries { var: self.var, coeffs }
    }

    /// r with f·r = 1 + O(w^{K+1}).
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = match self.coeffs[0].inverse() {
            Some(v) => v,
            None => bail!(Singular, "series constant term {} is not invertible", self.coeffs[0]),
        };
        let k = self.order();
        let mut r: Vec<R> = Vec::with_capacity(k + 1);
        r.push(inv0.clone());
        for n in 1..=k {
            let mut acc = self.coeffs[0].zero_like();
            for i in 1..=n {
                if self.coeffs[i].is_exact_zero() {
                    continue;
                }
                acc = acc.plus(&self.coeffs[i].times(&r[n - i]));
            }
            r.push(acc.times(&inv0).negated());
        }
        Ok(TruncatedSeries { var: self.var, coeffs: r })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.mul(&o.reciprocal()?)
    }

    /// Section Σ_{k=a}^{b} c_k w^k, other coefficients zero.
    pub fn section(&self, a: usize, b: usize) -> Result<Self> {
        if a > b || b > self.order() {
            bail!(Usage, "section [{a}, {b}] outside 0..={}", self.order());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k >= a && k <= b { c.clone() } else { c.zero_like() })
            .collect();
        Ok(TruncatedSeries { var: self.var, coeffs })
    }

    /// The predicate f = O(w^r): c_0 = ... = c_{r-1} = 0.
    pub fn is_big_o(&self, r: usize) -> bool {
        self.coeffs.iter().take(r).all(|c| c.vanishes())
    }

    /// Index of the first nonzero stored coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.vanishes())
    }

    /// f/w for a series without constant term; the order drops by one.
    pub fn div_w(&self) -> Result<Self> {
        if !self.coeffs[0].vanishes() {
            bail!(Usage, "division by {} needs a zero constant term", self.var);
        }
        if self.order() == 0 {
            bail!(Usage, "division by {} exhausts the series", self.var);
        }
        Ok(TruncatedSeries { var: self.var, coeffs: self.coeffs[1..].to_vec() })
    }

    /// w·f, keeping the order.
    pub fn mul_w(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(self.coeffs[0].zero_like());
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        TruncatedSeries { var: self.var, coeffs }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let ctx = self.ring_ctx();
        Self::from_slice(self.var, &ctx, &self.coeffs, order.min(self.order()))
    }

    /// Product with a polynomial, truncated at K.
    pub fn mul_poly(&self, p: &Poly<R>) -> Self {
        let q = TruncatedSeries::from_poly(self.var, p, self.order());
        self.mul(&q).expect("same variable and order")
    }
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{k}", self.var)?,
            }
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}
