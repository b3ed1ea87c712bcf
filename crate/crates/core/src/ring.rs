use core::fmt::{Debug, Display};

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Exact commutative coefficient ring.
///
/// Elements carry a context (number of jet variables, truncation order) so
/// that constants can be created without a sample element in hand. Only
/// units are invertible; for a field every nonzero element is a unit.
pub trait Ring: Clone + Debug + Display + PartialEq {
    type Ctx: Clone + Debug + PartialEq;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn lift(ctx: &Self::Ctx, r: &Rational) -> Self;

    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;

    /// Zero as far as the element is known.
    fn vanishes(&self) -> bool;

    /// Zero with nothing left unknown; only these are dropped from
    /// polynomials, so truncated zeros keep their precision.
    fn is_exact_zero(&self) -> bool {
        self.vanishes()
    }
    fn inverse(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    fn zero_like(&self) -> Self {
        Self::zero_in(&self.ctx())
    }

    fn one_like(&self) -> Self {
        Self::one_in(&self.ctx())
    }

    fn pow(&self, k: usize) -> Self {
        let mut r = self.one_like();
        for _ in 0..k {
            r = r.times(self);
        }
        r
    }
}

impl Ring for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero_in(_: &()) -> Self {
        Rational::zero()
    }
    fn one_in(_: &()) -> Self {
        Rational::one()
    }
    fn lift(_: &(), r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
}

pub fn sum<R: Ring>(ctx: &R::Ctx, items: impl IntoIterator<Item = R>) -> R {
    items.into_iter().fold(R::zero_in(ctx), |a, b| a.plus(&b))
}
