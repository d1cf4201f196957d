//! Rational functions: quotients of canonical polynomials.
//!
//! Canonical form keeps the denominator monic (graded-lex leading coefficient
//! 1), strips the common monomial content of numerator and denominator, and
//! collapses exact polynomial quotients. No multivariate gcd is computed:
//! equality is decided by cross-multiplication of canonical polynomials, which
//! is exact regardless of how far the fraction was reduced.

use crate::error::{Error, Result};
use crate::poly::{Coeff, Polynomial, Var};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Build `num/den` in canonical form. Fails on a zero denominator.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: Polynomial::one(),
            });
        }
        let mut num = num;
        let mut den = den;
        // Common monomial factors.
        let content = num.monomial_content().gcd(&den.monomial_content());
        if !content.is_one() {
            num = num.div_monomial(&content);
            den = den.div_monomial(&content);
        }
        // Exact quotients collapse the fraction to a polynomial (or its
        // reciprocal); this keeps denominators from piling up powers of the
        // same factor during long computations.
        if !den.is_one() {
            if let Some(q) = num.div_exact(&den) {
                num = q;
                den = Polynomial::one();
            } else if let Some(q) = den.div_exact(&num) {
                den = q;
                num = Polynomial::one();
            }
        }
        // Monic denominator.
        let lead = den.leading().expect("nonzero").1.clone();
        if !lead.is_one() {
            let inv = Coeff::one() / lead;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Polynomial::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Polynomial::var(v))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (num, den) = if self.den == rhs.den {
            (self.num.add(&rhs.num), self.den.clone())
        } else if let Some(q) = rhs.den.div_exact(&self.den) {
            // self.den divides rhs.den: widen only the left numerator.
            (self.num.mul(&q).add(&rhs.num), rhs.den.clone())
        } else if let Some(q) = self.den.div_exact(&rhs.den) {
            (self.num.add(&rhs.num.mul(&q)), self.den.clone())
        } else {
            (
                self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
                self.den.mul(&rhs.den),
            )
        };
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // Cross-cancel exact factors before multiplying out.
        let mut ln = self.num.clone();
        let mut ld = self.den.clone();
        let mut rn = rhs.num.clone();
        let mut rd = rhs.den.clone();
        if !rd.is_one() {
            if let Some(q) = ln.div_exact(&rd) {
                ln = q;
                rd = Polynomial::one();
            }
        }
        if !ld.is_one() {
            if let Some(q) = rn.div_exact(&ld) {
                rn = q;
                ld = Polynomial::one();
            }
        }
        Self::new(ln.mul(&rn), ld.mul(&rd)).expect("nonzero denominator")
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inverse()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Simultaneous substitution of variables by rational functions.
    /// Variables absent from `bindings` are left alone. Fails when a
    /// denominator becomes identically zero.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RationalFunction>) -> Result<Self> {
        let num = substitute_poly(&self.num, bindings);
        let den = substitute_poly(&self.den, bindings);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.div(&den)
    }
}

/// Evaluate a polynomial under a variable-to-rational-function map.
pub fn substitute_poly(
    p: &Polynomial,
    bindings: &BTreeMap<Var, RationalFunction>,
) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut term = RationalFunction::from_poly(Polynomial::constant(c.clone()));
        for (v, e) in m.vars() {
            let base = bindings
                .get(&v)
                .cloned()
                .unwrap_or_else(|| RationalFunction::var(v));
            term = term.mul(&base.pow(e as u32));
        }
        acc = acc.add(&term);
    }
    acc
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        // Cross-multiplication; canonical polynomials compare structurally.
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> RationalFunction {
        RationalFunction::var(Var::U)
    }

    fn v() -> RationalFunction {
        RationalFunction::var(Var::V)
    }

    #[test]
    fn common_factor_equality() {
        // u/v == (u*a)/(v*a) by cross-multiplication.
        let a = RationalFunction::var(Var::A);
        let lhs = u().div(&v()).unwrap();
        let rhs = u().mul(&a).div(&v().mul(&a)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn denominator_zero_is_an_error() {
        assert_eq!(
            RationalFunction::new(Polynomial::one(), Polynomial::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(RationalFunction::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn add_with_nested_denominators() {
        // 1/u + 1/u^2 = (u + 1)/u^2 without forming u^3 denominators.
        let one_u = RationalFunction::one().div(&u()).unwrap();
        let one_u2 = RationalFunction::one().div(&u().mul(&u())).unwrap();
        let sum = one_u.add(&one_u2);
        assert_eq!(sum.den(), u().mul(&u()).num());
        assert_eq!(
            sum,
            u().add(&RationalFunction::one()).div(&u().mul(&u())).unwrap()
        );
    }

    #[test]
    fn exact_quotient_collapses() {
        // (u^2 - v^2)/(u + v) reduces to u - v.
        let diff = u().mul(&u()).sub(&v().mul(&v()));
        let q = diff.div(&u().add(&v())).unwrap();
        assert_eq!(q, u().sub(&v()));
        assert!(q.den().is_one());
    }

    #[test]
    fn substitution() {
        // v -> u in (v - 1)/u gives (u - 1)/u.
        let expr = v().sub(&RationalFunction::one()).div(&u()).unwrap();
        let mut bind = BTreeMap::new();
        bind.insert(Var::V, u());
        let got = expr.substitute(&bind).unwrap();
        assert_eq!(got, u().sub(&RationalFunction::one()).div(&u()).unwrap());

        // u -> 0 in 1/u is a division by zero.
        let mut bad = BTreeMap::new();
        bad.insert(Var::U, RationalFunction::zero());
        assert_eq!(
            RationalFunction::one().div(&u()).unwrap().substitute(&bad),
            Err(Error::DivisionByZero)
        );
    }
}
