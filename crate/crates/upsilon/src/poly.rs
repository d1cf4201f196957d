//! Multivariate polynomials over the rationals in the eight ground variables.
//!
//! Monomials are exponent vectors over the fixed variable set; polynomials are
//! sorted term maps. The term order is graded lexicographic: total degree
//! first, ties broken by the exponent of the earliest variable in the order
//! `u, v, a, b, x, y, z, s`. Every constructor and operation returns the
//! canonical form (no zero coefficients stored), so structural equality is
//! polynomial equality.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Rational coefficient of a polynomial term.
pub type Coeff = BigRational;

/// The ground variables, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    V,
    A,
    B,
    X,
    Y,
    Z,
    S,
}

pub const VAR_COUNT: usize = 8;

pub const ALL_VARS: [Var; VAR_COUNT] = [
    Var::U,
    Var::V,
    Var::A,
    Var::B,
    Var::X,
    Var::Y,
    Var::Z,
    Var::S,
];

impl Var {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::V => "v",
            Var::A => "a",
            Var::B => "b",
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::S => "s",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        ALL_VARS.iter().copied().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over the eight variables. Absent variables have exponent 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; VAR_COUNT],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        let mut m = Monomial::default();
        m.exps[v.index()] = 1;
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.exps[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, r) in exps.iter_mut().zip(rhs.exps.iter()) {
            *e += r;
        }
        Monomial { exps }
    }

    /// Componentwise quotient when `rhs` divides `self`.
    pub fn try_div(&self, rhs: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps;
        for (e, r) in exps.iter_mut().zip(rhs.exps.iter()) {
            *e = e.checked_sub(*r)?;
        }
        Some(Monomial { exps })
    }

    /// Componentwise minimum.
    pub fn gcd(&self, rhs: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, r) in exps.iter_mut().zip(rhs.exps.iter()) {
            *e = (*e).min(*r);
        }
        Monomial { exps }
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        ALL_VARS
            .iter()
            .copied()
            .filter_map(|v| match self.exps[v.index()] {
                0 => None,
                e => Some((v, e)),
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in canonical form: a term map with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Polynomial::constant(Coeff::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Polynomial::monomial(Monomial::var(v), Coeff::one())
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// Leading term under the graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.last_key_value()
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, Coeff>, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            Self::insert_term(&mut terms, *m, c.clone());
        }
        Polynomial { terms }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            Self::insert_term(&mut terms, *m, -c.clone());
        }
        Polynomial { terms }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (ml, cl) in &self.terms {
            for (mr, cr) in &rhs.terms {
                Self::insert_term(&mut terms, ml.mul(mr), cl * cr);
            }
        }
        Polynomial { terms }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Greatest monomial dividing every term. The zero polynomial reports 1.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(*first, |acc, m| acc.gcd(m))
    }

    /// Divide every term by `m`; `m` must divide the content.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.try_div(m).expect("monomial divides content"), c.clone()))
                .collect(),
        }
    }

    /// Exact polynomial division: `Some(q)` with `self = q * rhs`, else `None`.
    pub fn div_exact(&self, rhs: &Polynomial) -> Option<Polynomial> {
        let (lead_m, lead_c) = rhs.leading()?;
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let mut rem = self.clone();
        let mut quo = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.try_div(lead_m)?;
            let qc = rc / lead_c;
            rem = rem.sub(&rhs.mul_monomial(&qm).scale(&qc));
            Self::insert_term(&mut quo, qm, qc);
        }
        Some(Polynomial { terms: quo })
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

fn fmt_coeff(c: &Coeff) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Leading term first.
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if i == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                f.write_str(&fmt_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&mag))?;
            }
        }
        Ok(())
    }
}
