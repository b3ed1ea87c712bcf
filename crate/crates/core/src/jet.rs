use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{bail, Result};
use crate::rational::Rational;
use crate::ring::Ring;

/// Number of deformation variables and total-degree truncation order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JetCtx {
    pub nvars: usize,
    pub order: u32,
}

impl JetCtx {
    pub fn new(nvars: usize, order: u32) -> Self {
        JetCtx { nvars, order }
    }
}

/// Truncated power series in x_1..x_N, known modulo total degree > `order`.
///
/// Variables are indexed from 0. Products keep the smaller order, a partial
/// derivative or an exact division by x_i lowers it by one.
#[derive(Clone, Debug)]
pub struct ParamJet {
    nvars: usize,
    order: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
    /// Structural zero: known to vanish to every order.
    exact: bool,
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl ParamJet {
    pub fn zero(ctx: &JetCtx) -> Self {
        ParamJet { nvars: ctx.nvars, order: ctx.order, terms: BTreeMap::new(), exact: false }
    }

    pub fn constant(ctx: &JetCtx, c: Rational) -> Self {
        let mut j = Self::zero(ctx);
        j.insert(vec![0; ctx.nvars], c);
        j
    }

    /// The coordinate function x_i.
    pub fn var(ctx: &JetCtx, i: usize) -> Self {
        assert!(i < ctx.nvars, "jet variable out of range");
        let mut e = vec![0; ctx.nvars];
        e[i] = 1;
        Self::monomial(ctx, e, Rational::one())
    }

    pub fn monomial(ctx: &JetCtx, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), ctx.nvars);
        let mut j = Self::zero(ctx);
        j.insert(exps, c);
        j
    }

    pub fn from_terms(ctx: &JetCtx, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut j = Self::zero(ctx);
        for (e, c) in terms {
            assert_eq!(e.len(), ctx.nvars);
            j.add_term(e, &c);
        }
        j
    }

    fn insert(&mut self, e: Vec<u32>, c: Rational) {
        if degree(&e) <= self.order && !c.is_zero() {
            self.terms.insert(e, c);
        } else {
            self.terms.remove(&e);
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: &Rational) {
        if degree(&e) > self.order || c.is_zero() {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn jet_ctx(&self) -> JetCtx {
        JetCtx::new(self.nvars, self.order)
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Forget everything above total degree `order`.
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| degree(e) <= order)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        ParamJet { nvars: self.nvars, order, terms, exact: self.exact }
    }

    /// Zero on every coefficient of total degree at most `order`.
    pub fn vanishes_to(&self, order: u32) -> bool {
        self.terms.keys().all(|e| degree(e) > order)
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).min()
    }

    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars, "jet variable out of range");
        let mut r = ParamJet {
            nvars: self.nvars,
            order: self.order.saturating_sub(1),
            terms: BTreeMap::new(),
            exact: self.exact,
        };
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            r.insert(d, c * Rational::from_integer(e[i].into()));
        }
        r
    }

    /// Multiply by x_i; a homogeneous degree-one factor raises the known order.
    pub fn mul_var(&self, i: usize) -> Self {
        let mut r = ParamJet { nvars: self.nvars, order: self.order + 1, terms: BTreeMap::new(), exact: self.exact };
        for (e, c) in &self.terms {
            let mut d = e.clone();
            d[i] += 1;
            r.insert(d, c.clone());
        }
        r
    }

    /// Exact division by x_i, if every known coefficient allows it.
    pub fn div_var(&self, i: usize) -> Option<Self> {
        if self.exact {
            return Some(self.clone());
        }
        if self.order == 0 {
            return None;
        }
        let mut r = ParamJet { nvars: self.nvars, order: self.order - 1, terms: BTreeMap::new(), exact: false };
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return None;
            }
            let mut d = e.clone();
            d[i] -= 1;
            r.insert(d, c.clone());
        }
        Some(r)
    }

    /// Evaluate the stored polynomial at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in point.iter().zip(e) {
                for _ in 0..*k {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }

    /// Multiply two jets; the result is known to the smaller order.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "jet variable count mismatch");
        if self.exact {
            return self.clone();
        }
        if o.exact {
            return o.clone();
        }
        let order = self.order.min(o.order);
        let mut r = ParamJet { nvars: self.nvars, order, terms: BTreeMap::new(), exact: false };
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            if da > order {
                continue;
            }
            for (eb, cb) in &o.terms {
                if da + degree(eb) > order {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, &(ca * cb));
            }
        }
        r
    }

    fn combine(&self, o: &Self, s: i8) -> Self {
        assert_eq!(self.nvars, o.nvars, "jet variable count mismatch");
        if o.exact {
            return self.clone();
        }
        if self.exact {
            return if s > 0 { o.clone() } else { o.negate() };
        }
        let order = self.order.min(o.order);
        let mut r = self.truncate(order);
        for (e, c) in &o.terms {
            if s > 0 {
                r.add_term(e.clone(), c);
            } else {
                r.add_term(e.clone(), &-c);
            }
        }
        r
    }

    /// Inverse of a unit via the geometric series in the non-constant part.
    pub fn try_inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            bail!(Singular, "jet with zero constant term is not invertible");
        }
        let inv0 = c0.recip();
        let mut g = self.scale_by(&inv0);
        g.insert(vec![0; self.nvars], Rational::zero());
        let g = g.negate();
        let one = ParamJet::constant(&self.jet_ctx(), Rational::one());
        let mut r = one.clone();
        let mut term = one;
        for _ in 0..self.order {
            term = term.mul(&g);
            if term.terms.is_empty() {
                break;
            }
            r = r.combine(&term, 1);
        }
        Ok(r.scale_by(&inv0))
    }

    fn scale_by(&self, r: &Rational) -> Self {
        let mut out = ParamJet { nvars: self.nvars, order: self.order, terms: BTreeMap::new(), exact: self.exact };
        if r.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * r);
        }
        out
    }

    fn negate(&self) -> Self {
        self.scale_by(&-Rational::one())
    }
}

/// Hirota bilinear derivative (∂_i f)g − f(∂_i g).
pub fn hirota(i: usize, f: &ParamJet, g: &ParamJet) -> ParamJet {
    f.partial(i).mul(g).minus(&f.mul(&g.partial(i)))
}

impl PartialEq for ParamJet {
    /// Agreement on every coefficient both sides know.
    fn eq(&self, o: &Self) -> bool {
        if self.nvars != o.nvars {
            return false;
        }
        let order = self.order.min(o.order);
        let a = self.terms.iter().filter(|(e, _)| degree(e) <= order);
        let b = o.terms.iter().filter(|(e, _)| degree(e) <= order);
        a.eq(b)
    }
}

impl Ring for ParamJet {
    type Ctx = JetCtx;

    fn ctx(&self) -> JetCtx {
        self.jet_ctx()
    }
    fn zero_in(ctx: &JetCtx) -> Self {
        ParamJet { exact: true, ..ParamJet::zero(ctx) }
    }
    fn one_in(ctx: &JetCtx) -> Self {
        ParamJet::constant(ctx, Rational::one())
    }
    fn lift(ctx: &JetCtx, r: &Rational) -> Self {
        ParamJet::constant(ctx, r.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self.combine(o, 1)
    }
    fn minus(&self, o: &Self) -> Self {
        self.combine(o, -1)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.negate()
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_by(r)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn is_exact_zero(&self) -> bool {
        self.exact
    }
    fn inverse(&self) -> Option<Self> {
        self.try_inverse().ok()
    }
    fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }
}

impl fmt::Display for ParamJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            return write!(f, "0");
        }
        if self.terms.is_empty() {
            return write!(f, "0 + O(x^{})", self.order + 1);
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, p)?,
                }
            }
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}
