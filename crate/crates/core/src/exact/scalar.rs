use std::fmt::{Debug, Display};

use num_traits::{One, Zero};

use super::rational::Rational;

/// Coefficient ring operations shared by rationals and polynomials.
///
/// `zero_like`/`one_like` exist because polynomial constants carry their
/// variable set.
pub trait Scalar: Clone + PartialEq + Debug + Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn constant_like(&self, r: &Rational) -> Self;

    fn is_unity(&self) -> bool {
        *self == self.one_like()
    }

    fn scaled(&self, r: &Rational) -> Self {
        self.times(&self.constant_like(r))
    }

    fn power(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn constant_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn scaled(&self, r: &Rational) -> Self {
        self * r
    }
}
