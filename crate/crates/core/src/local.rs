use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{bail, Result};
use crate::jet::{JetCtx, ParamJet};
use crate::rational::Rational;
use crate::ring::Ring;

/// Allowed denominator factor when building a [`LocalFraction`].
#[derive(Clone, Debug)]
pub enum Factor {
    /// A jet with nonzero constant term.
    Unit(ParamJet),
    /// x_i.
    Var(usize),
    /// x_i − x_j, i ≠ j.
    Diff(usize, usize),
}

/// Non-unit factor kept in a denominator; `Diff(a, b)` means x_a − x_b with a < b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pole {
    Var(usize),
    Diff(usize, usize),
}

impl Pole {
    pub fn jet(&self, ctx: &JetCtx) -> ParamJet {
        match *self {
            Pole::Var(i) => ParamJet::var(ctx, i),
            Pole::Diff(a, b) => ParamJet::var(ctx, a).minus(&ParamJet::var(ctx, b)),
        }
    }

    fn mul_into(&self, j: &ParamJet) -> ParamJet {
        match *self {
            Pole::Var(i) => j.mul_var(i),
            Pole::Diff(a, b) => j.mul_var(a).minus(&j.mul_var(b)),
        }
    }
}

/// A jet divided by a product of powers of x_i and (x_i − x_j).
///
/// Unit factors are absorbed into the numerator on construction, so the
/// stored denominator holds only genuine poles at x = 0.
#[derive(Clone, Debug)]
pub struct LocalFraction {
    num: ParamJet,
    den: BTreeMap<Pole, u32>,
}

impl LocalFraction {
    pub fn new(num: ParamJet, factors: impl IntoIterator<Item = (Factor, u32)>) -> Result<Self> {
        let mut r = LocalFraction { num, den: BTreeMap::new() };
        for (f, m) in factors {
            match f {
                Factor::Unit(u) => {
                    let inv = u.try_inverse()?;
                    for _ in 0..m {
                        r.num = r.num.mul(&inv);
                    }
                }
                Factor::Var(i) => r.add_pole(Pole::Var(i), m),
                Factor::Diff(a, b) => {
                    if a == b {
                        bail!(Usage, "x_{a} - x_{a} is not an allowed factor");
                    }
                    if a < b {
                        r.add_pole(Pole::Diff(a, b), m);
                    } else {
                        r.add_pole(Pole::Diff(b, a), m);
                        if m % 2 == 1 {
                            r.num = r.num.negated();
                        }
                    }
                }
            }
        }
        Ok(r)
    }

    pub fn from_jet(num: ParamJet) -> Self {
        LocalFraction { num, den: BTreeMap::new() }
    }

    /// 1/x_i.
    pub fn inv_var(ctx: &JetCtx, i: usize) -> Self {
        let mut den = BTreeMap::new();
        den.insert(Pole::Var(i), 1);
        LocalFraction { num: ParamJet::one_in(ctx), den }
    }

    fn add_pole(&mut self, p: Pole, m: u32) {
        if m > 0 {
            *self.den.entry(p).or_insert(0) += m;
        }
    }

    pub fn numerator(&self) -> &ParamJet {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&Pole, &u32)> {
        self.den.iter()
    }

    pub fn is_jet(&self) -> bool {
        self.den.is_empty()
    }

    /// Rewrite over the given denominator, which must be a multiple of ours.
    fn lift_to(&self, target: &BTreeMap<Pole, u32>) -> ParamJet {
        let mut n = self.num.clone();
        for (p, m) in target {
            let have = self.den.get(p).copied().unwrap_or(0);
            for _ in have..*m {
                n = p.mul_into(&n);
            }
        }
        n
    }

    fn lcm(&self, o: &Self) -> BTreeMap<Pole, u32> {
        let mut d = self.den.clone();
        for (p, m) in &o.den {
            let e = d.entry(*p).or_insert(0);
            *e = (*e).max(*m);
        }
        d
    }

    /// Cancel x_i from the denominator wherever the numerator is divisible.
    pub fn reduce(&self) -> Self {
        let mut r = self.clone();
        let vars: Vec<usize> = r
            .den
            .keys()
            .filter_map(|p| if let Pole::Var(i) = p { Some(*i) } else { None })
            .collect();
        for i in vars {
            while r.den.get(&Pole::Var(i)).copied().unwrap_or(0) > 0 {
                match r.num.div_var(i) {
                    Some(q) => {
                        r.num = q;
                        let m = r.den.get_mut(&Pole::Var(i)).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            r.den.remove(&Pole::Var(i));
                        }
                    }
                    None => break,
                }
            }
        }
        r
    }

    /// The jet itself, if the denominator cancels completely.
    pub fn to_jet(&self) -> Option<ParamJet> {
        let r = self.reduce();
        if r.den.is_empty() {
            Some(r.num)
        } else {
            None
        }
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = LocalFraction { num: self.num.partial(i), den: self.den.clone() };
        for (p, m) in &self.den {
            let dp = match *p {
                Pole::Var(k) if k == i => Rational::one(),
                Pole::Diff(a, _) if a == i => Rational::one(),
                Pole::Diff(_, b) if b == i => -Rational::one(),
                _ => continue,
            };
            let mut den = self.den.clone();
            *den.get_mut(p).unwrap() += 1;
            let term = LocalFraction {
                num: self.num.scale(&(dp * Rational::from_integer((*m).into()))),
                den,
            };
            out = out.minus(&term);
        }
        out
    }

    /// Equality after clearing both denominators.
    pub fn same_as(&self, o: &Self) -> bool {
        self.minus(o).num.vanishes()
    }

    fn try_invert(&self) -> Option<Self> {
        let mut num = self.num.clone();
        let mut extra = BTreeMap::new();
        for i in 0..num.nvars() {
            while !num.vanishes() && !num.is_unit() {
                match num.div_var(i) {
                    Some(q) => {
                        num = q;
                        *extra.entry(Pole::Var(i)).or_insert(0) += 1;
                    }
                    None => break,
                }
            }
        }
        let mut top = num.try_inverse().ok()?;
        for (p, m) in &self.den {
            for _ in 0..*m {
                top = p.mul_into(&top);
            }
        }
        Some(LocalFraction { num: top, den: extra }.reduce())
    }
}

impl PartialEq for LocalFraction {
    fn eq(&self, o: &Self) -> bool {
        self.same_as(o)
    }
}

impl Ring for LocalFraction {
    type Ctx = JetCtx;

    fn ctx(&self) -> JetCtx {
        self.num.jet_ctx()
    }
    fn zero_in(ctx: &JetCtx) -> Self {
        LocalFraction::from_jet(ParamJet::zero_in(ctx))
    }
    fn one_in(ctx: &JetCtx) -> Self {
        LocalFraction::from_jet(ParamJet::one_in(ctx))
    }
    fn lift(ctx: &JetCtx, r: &Rational) -> Self {
        LocalFraction::from_jet(ParamJet::constant(ctx, r.clone()))
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return LocalFraction { num: self.num.plus(&o.num), den: self.den.clone() };
        }
        let d = self.lcm(o);
        LocalFraction { num: self.lift_to(&d).plus(&o.lift_to(&d)), den: d }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        let mut den = self.den.clone();
        for (p, m) in &o.den {
            *den.entry(*p).or_insert(0) += m;
        }
        LocalFraction { num: self.num.mul(&o.num), den }
    }
    fn negated(&self) -> Self {
        LocalFraction { num: self.num.negated(), den: self.den.clone() }
    }
    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return LocalFraction::from_jet(self.num.scale(r));
        }
        LocalFraction { num: self.num.scale(r), den: self.den.clone() }
    }
    fn vanishes(&self) -> bool {
        self.num.vanishes()
    }
    fn is_exact_zero(&self) -> bool {
        self.num.is_exact_zero()
    }
    fn inverse(&self) -> Option<Self> {
        self.try_invert()
    }
}

impl From<ParamJet> for LocalFraction {
    fn from(j: ParamJet) -> Self {
        LocalFraction::from_jet(j)
    }
}

impl fmt::Display for LocalFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (k, (p, m)) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            match p {
                Pole::Var(i) => write!(f, "x{}", i + 1)?,
                Pole::Diff(a, b) => write!(f, "(x{}-x{})", a + 1, b + 1)?,
            }
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        write!(f, ")")
    }
}
