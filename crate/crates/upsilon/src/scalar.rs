//! The coefficient field of the invariants.
//!
//! A [`Scalar`] is `f0 + f1*w`, where `f0`, `f1` are rational functions in
//! `u, v, a, b, x, y, z, s` and the extra element `w` obeys the rescaling
//! relation `w^2 = (a + (1 - v)*b)/(a*u)`. Products are reduced so the
//! representation always has `w`-degree at most 1, which makes componentwise
//! comparison of the two rational functions a complete equality test: the
//! right-hand side of the relation is not a square, so `w` never collapses
//! into the ground field.

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Var};
use crate::ratfun::RationalFunction;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    f0: RationalFunction,
    f1: RationalFunction,
}

/// `w^2` as a rational function: `(a + (1 - v)*b)/(a*u)`.
pub fn w_square() -> RationalFunction {
    let a = Polynomial::var(Var::A);
    let b = Polynomial::var(Var::B);
    let v = Polynomial::var(Var::V);
    let u = Polynomial::var(Var::U);
    let num = a.add(&Polynomial::one().sub(&v).mul(&b));
    RationalFunction::new(num, a.mul(&u)).expect("a*u is nonzero")
}

impl Scalar {
    pub fn new(f0: RationalFunction, f1: RationalFunction) -> Self {
        Scalar { f0, f1 }
    }

    pub fn zero() -> Self {
        Scalar::new(RationalFunction::zero(), RationalFunction::zero())
    }

    pub fn one() -> Self {
        Scalar::new(RationalFunction::one(), RationalFunction::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(RationalFunction::from_int(n), RationalFunction::zero())
    }

    pub fn var(v: Var) -> Self {
        Scalar::new(RationalFunction::var(v), RationalFunction::zero())
    }

    pub fn w() -> Self {
        Scalar::new(RationalFunction::zero(), RationalFunction::one())
    }

    pub fn from_ratfun(f: RationalFunction) -> Self {
        Scalar::new(f, RationalFunction::zero())
    }

    pub fn w_free_part(&self) -> &RationalFunction {
        &self.f0
    }

    pub fn w_part(&self) -> &RationalFunction {
        &self.f1
    }

    pub fn is_zero(&self) -> bool {
        self.f0.is_zero() && self.f1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.f1.is_zero() && self.f0.is_one()
    }

    /// Multiplicative inverse: `(f0 - f1*w)/(f0^2 - f1^2*W)`.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = self
            .f0
            .mul(&self.f0)
            .sub(&self.f1.mul(&self.f1).mul(&w_square()));
        let norm_inv = norm.inverse()?;
        Ok(Scalar::new(
            self.f0.mul(&norm_inv),
            self.f1.neg().mul(&norm_inv),
        ))
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inverse()?)
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i32) -> Result<Scalar> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Simultaneous substitution on both `w`-components. Bindings are
    /// rational functions in the ground variables, so they never touch `w`;
    /// after substitution the relation for `w^2` is the substituted one and
    /// the representation needs no further reduction.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RationalFunction>) -> Result<Scalar> {
        Ok(Scalar::new(
            self.f0.substitute(bindings)?,
            self.f1.substitute(bindings)?,
        ))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(self.f0.add(&rhs.f0), self.f1.add(&rhs.f1))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(self.f0.sub(&rhs.f0), self.f1.sub(&rhs.f1))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(self.f0.neg(), self.f1.neg())
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (f0 + f1 w)(g0 + g1 w) = f0 g0 + f1 g1 W + (f0 g1 + f1 g0) w.
        let f0 = if self.f1.is_zero() || rhs.f1.is_zero() {
            self.f0.mul(&rhs.f0)
        } else {
            self.f0
                .mul(&rhs.f0)
                .add(&self.f1.mul(&rhs.f1).mul(&w_square()))
        };
        let f1 = self.f0.mul(&rhs.f1).add(&self.f1.mul(&rhs.f0));
        Scalar::new(f0, f1)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.f1.is_zero() {
            return write!(f, "{}", self.f0);
        }
        let w_part = format!("w*({})", self.f1);
        if self.f0.is_zero() {
            f.write_str(&w_part)
        } else {
            write!(f, "{} + {}", self.f0, w_part)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: Var) -> Scalar {
        Scalar::var(v)
    }

    #[test]
    fn w_squared_reduces() {
        let w = Scalar::w();
        assert_eq!(&w * &w, Scalar::from_ratfun(w_square()));
    }

    #[test]
    fn identity_and_expansion() {
        let x = sv(Var::X);
        assert_eq!(&x * &Scalar::one(), x);
        // (1 + w)(1 - w) = 1 - W.
        let one = Scalar::one();
        let w = Scalar::w();
        let lhs = &(&one + &w) * &(&one - &w);
        let rhs = &one - &Scalar::from_ratfun(w_square());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverses() {
        // w^{-1} = w*u*a/(a + (1-v)b); checked both against the closed form
        // and by multiplying back.
        let w = Scalar::w();
        let winv = w.inverse().unwrap();
        let closed = &(&w * &sv(Var::U)) * &sv(Var::A);
        let den = &(&Scalar::one() - &sv(Var::V)) * &sv(Var::B);
        let closed = closed.div(&(&sv(Var::A) + &den)).unwrap();
        assert_eq!(winv, closed);
        assert!((&w * &winv).is_one());

        assert_eq!(sv(Var::U).inverse().unwrap(), Scalar::one().div(&sv(Var::U)).unwrap());

        // (a*w)^{-1} = w*u/(a + (1-v)b).
        let aw = &sv(Var::A) * &w;
        let awinv = aw.inverse().unwrap();
        let expect = (&w * &sv(Var::U)).div(&(&sv(Var::A) + &den)).unwrap();
        assert_eq!(awinv, expect);
        assert!((&aw * &awinv).is_one());

        assert_eq!(Scalar::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn equality_cases() {
        let w = Scalar::w();
        assert_ne!(w, -&w);
        assert_eq!(&w * &w, Scalar::from_ratfun(w_square()));
        // u/v == (u*a)/(v*a).
        let lhs = sv(Var::U).div(&sv(Var::V)).unwrap();
        let rhs = (&sv(Var::U) * &sv(Var::A))
            .div(&(&sv(Var::V) * &sv(Var::A)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_examples() {
        // {u -> 1, v -> s - 1/s + 1} sends u - 1 to 0.
        let mut bind = BTreeMap::new();
        bind.insert(Var::U, RationalFunction::one());
        let s = RationalFunction::var(Var::S);
        let v_image = s
            .sub(&RationalFunction::one().div(&s).unwrap())
            .add(&RationalFunction::one());
        bind.insert(Var::V, v_image);
        let expr = &sv(Var::U) - &Scalar::one();
        assert!(expr.substitute(&bind).unwrap().is_zero());

        // {z -> 0} in x + y + z.
        let mut zb = BTreeMap::new();
        zb.insert(Var::Z, RationalFunction::zero());
        let expr = &(&sv(Var::X) + &sv(Var::Y)) + &sv(Var::Z);
        assert_eq!(
            expr.substitute(&zb).unwrap(),
            &sv(Var::X) + &sv(Var::Y)
        );
    }
}
