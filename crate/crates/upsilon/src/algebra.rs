//! The two-parameter algebra of braids and ties at level `n`.
//!
//! Elements are kept in normal form on the semidirect basis
//! `{ E_I T_w : I a set partition of the strands, w a permutation }`,
//! which has `Bell(n) * n!` members. The defining data are the braid
//! generators `R_i`, the tie idempotents `E_i = E_{{i,i+1}}`, and the
//! quadratic relation
//!
//! ```text
//! R_i^2 = 1 + (u - 1) E_i + (v - 1) E_i R_i .
//! ```
//!
//! Multiplication never leaves the basis: ties move across braid factors by
//! the action rule `T_w E_I = E_{w(I)} T_w`, products of tie idempotents are
//! joins of partitions, and a product `T_w R_i` either extends a reduced
//! word (when the length grows) or is resolved through the quadratic
//! relation (when it shrinks). The permutation-action convention is
//! "rightmost factor acts first" throughout; the relation test suite pins it.

use crate::error::{Error, Result};
use crate::partition::{Permutation, SetPartition};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Basis label `E_I T_w`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisKey {
    pub ties: SetPartition,
    pub perm: Permutation,
}

impl BasisKey {
    pub fn unit(n: usize) -> Self {
        BasisKey {
            ties: SetPartition::trivial(n),
            perm: Permutation::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.ties.n()
    }

    /// Whether both the ties and the permutation leave the last strand alone.
    pub fn fixes_last_strand(&self) -> bool {
        let n = self.n();
        n == 0
            || (self.perm.image(n) == n
                && self.ties.blocks().iter().all(|b| !b.contains(&n) || b.len() == 1))
    }
}

/// Finitely supported scalar combination of basis keys at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<BasisKey, Scalar>,
}

/// Generators of the algebra at a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    /// Braid generator `R_i`.
    R(usize),
    /// Tie idempotent `E_i`.
    E(usize),
    /// Inverse braid generator `R_i^{-1}`.
    RInv(usize),
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        AlgebraElement::from_key(BasisKey::unit(n), Scalar::one())
    }

    pub fn from_key(key: BasisKey, coeff: Scalar) -> Self {
        let n = key.n();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        AlgebraElement { n, terms }
    }

    /// `T_w` as a single basis term.
    pub fn from_perm(n: usize, w: Permutation) -> Self {
        AlgebraElement::from_key(
            BasisKey {
                ties: SetPartition::trivial(n),
                perm: w,
            },
            Scalar::one(),
        )
    }

    /// `E_I` as a single basis term.
    pub fn from_ties(ties: SetPartition) -> Self {
        let n = ties.n();
        AlgebraElement::from_key(
            BasisKey {
                ties,
                perm: Permutation::identity(n),
            },
            Scalar::one(),
        )
    }

    pub fn generator(n: usize, gen: Gen) -> Result<Self> {
        let check = |i: usize| -> Result<usize> {
            if i == 0 || i + 1 > n {
                Err(Error::IndexOutOfRange { index: i, n })
            } else {
                Ok(i)
            }
        };
        match gen {
            Gen::R(i) => {
                let i = check(i)?;
                Ok(AlgebraElement::from_perm(
                    n,
                    Permutation::transposition(n, i)?,
                ))
            }
            Gen::E(i) => {
                let i = check(i)?;
                Ok(AlgebraElement::from_ties(SetPartition::pair(n, i, i + 1)?))
            }
            Gen::RInv(i) => {
                // R_i^{-1} = R_i + (1-v)/u E_i + (1-u)/u E_i R_i, written on
                // the basis: the E_i R_i term sits at key (mu_{i,i+1}, s_i).
                let i = check(i)?;
                let u = Scalar::var(crate::poly::Var::U);
                let v = Scalar::var(crate::poly::Var::V);
                let one = Scalar::one();
                let mu = SetPartition::pair(n, i, i + 1)?;
                let s = Permutation::transposition(n, i)?;
                let mut elem = AlgebraElement::zero(n);
                elem.add_term(
                    BasisKey {
                        ties: SetPartition::trivial(n),
                        perm: s.clone(),
                    },
                    one.clone(),
                );
                elem.add_term(
                    BasisKey {
                        ties: mu.clone(),
                        perm: Permutation::identity(n),
                    },
                    (&one - &v).div(&u)?,
                );
                elem.add_term(
                    BasisKey { ties: mu, perm: s },
                    (&one - &u).div(&u)?,
                );
                Ok(elem)
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &BasisKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, key: BasisKey, coeff: Scalar) {
        debug_assert_eq!(key.n(), self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &AlgebraElement) -> Result<AlgebraElement> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch(self.n, rhs.n));
        }
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.n);
        }
        let mut out = AlgebraElement::zero(self.n);
        for (k, coeff) in &self.terms {
            out.add_term(k.clone(), coeff * c);
        }
        out
    }

    /// Right-multiply a single basis key by `R_i`, accumulating into `out`.
    ///
    /// If the permutation gets longer the key just extends; otherwise the
    /// quadratic relation contributes three terms, with the freshly tied
    /// pair `{w(i), w(i+1)}`.
    fn key_times_r(n: usize, key: &BasisKey, coeff: &Scalar, i: usize, out: &mut AlgebraElement) {
        let s = Permutation::transposition(n, i).expect("index checked by caller");
        let ws = key.perm.compose(&s);
        if ws.length() > key.perm.length() {
            out.add_term(
                BasisKey {
                    ties: key.ties.clone(),
                    perm: ws,
                },
                coeff.clone(),
            );
            return;
        }
        let pair = SetPartition::pair(n, key.perm.image(i), key.perm.image(i + 1))
            .expect("strand images in range");
        let tied = key.ties.join(&pair).expect("same level");
        let u_minus_1 = &Scalar::var(crate::poly::Var::U) - &Scalar::one();
        let v_minus_1 = &Scalar::var(crate::poly::Var::V) - &Scalar::one();
        out.add_term(
            BasisKey {
                ties: key.ties.clone(),
                perm: ws.clone(),
            },
            coeff.clone(),
        );
        out.add_term(
            BasisKey {
                ties: tied.clone(),
                perm: ws,
            },
            coeff * &u_minus_1,
        );
        out.add_term(
            BasisKey {
                ties: tied,
                perm: key.perm.clone(),
            },
            coeff * &v_minus_1,
        );
    }

    /// Right-multiply by the generator `R_i` or `E_i`.
    pub fn times_gen(&self, gen: Gen) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.n);
        match gen {
            Gen::R(i) => {
                if i == 0 || i + 1 > self.n {
                    return Err(Error::IndexOutOfRange { index: i, n: self.n });
                }
                for (key, coeff) in &self.terms {
                    Self::key_times_r(self.n, key, coeff, i, &mut out);
                }
            }
            Gen::E(i) => {
                if i == 0 || i + 1 > self.n {
                    return Err(Error::IndexOutOfRange { index: i, n: self.n });
                }
                for (key, coeff) in &self.terms {
                    // T_w E_i = E_{w({i,i+1})} T_w.
                    let pair = SetPartition::pair(self.n, key.perm.image(i), key.perm.image(i + 1))?;
                    out.add_term(
                        BasisKey {
                            ties: key.ties.join(&pair)?,
                            perm: key.perm.clone(),
                        },
                        coeff.clone(),
                    );
                }
            }
            Gen::RInv(i) => {
                return self.mul(&AlgebraElement::generator(self.n, Gen::RInv(i))?);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &AlgebraElement) -> Result<AlgebraElement> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch(self.n, rhs.n));
        }
        let mut out = AlgebraElement::zero(self.n);
        for (rkey, rcoeff) in &rhs.terms {
            // E_I T_w * E_J T_v = E_{I v w(J)} T_w T_v; expand T_v token by
            // token along one of its reduced words.
            let word = rkey.perm.reduced_word();
            for (lkey, lcoeff) in &self.terms {
                let fused = lkey.ties.join(&rkey.ties.permute(&lkey.perm)?)?;
                let mut acc = AlgebraElement::from_key(
                    BasisKey {
                        ties: fused,
                        perm: lkey.perm.clone(),
                    },
                    lcoeff * rcoeff,
                );
                for &i in &word {
                    let mut next = AlgebraElement::zero(self.n);
                    for (key, coeff) in &acc.terms {
                        Self::key_times_r(self.n, key, coeff, i, &mut next);
                    }
                    acc = next;
                }
                for (k, c) in acc.terms {
                    out.add_term(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Product of a sequence of factors, left to right.
    pub fn product(n: usize, factors: &[AlgebraElement]) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::one(n);
        for f in factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    /// `T_w^{-1}` for a bare permutation: inverse generators along the
    /// reversed reduced word.
    pub fn perm_inverse_elem(n: usize, w: &Permutation) -> Result<AlgebraElement> {
        let mut acc = AlgebraElement::one(n);
        let mut word = w.reduced_word();
        word.reverse();
        for i in word {
            acc = acc.mul(&AlgebraElement::generator(n, Gen::RInv(i))?)?;
        }
        Ok(acc)
    }

    /// View at a higher level, new strands untouched.
    pub fn include(&self, n: usize) -> Result<AlgebraElement> {
        if n < self.n {
            return Err(Error::SizeMismatch(self.n, n));
        }
        let extra = n - self.n;
        let mut out = AlgebraElement::zero(n);
        for (key, coeff) in &self.terms {
            let mut ties = key.ties.clone();
            for _ in 0..extra {
                ties = ties.add_singleton();
            }
            out.add_term(
                BasisKey {
                    ties,
                    perm: key.perm.extend(extra),
                },
                coeff.clone(),
            );
        }
        Ok(out)
    }

    /// Strip the last strand from every key; each key must fix it.
    pub fn restrict(&self) -> Result<AlgebraElement> {
        if self.n == 0 {
            return Err(Error::SizeMismatch(0, 0));
        }
        let n = self.n - 1;
        let mut out = AlgebraElement::zero(n);
        for (key, coeff) in &self.terms {
            if !key.fixes_last_strand() {
                return Err(Error::SizeMismatch(self.n, n));
            }
            let ties = key.ties.drop_point(self.n)?;
            let images: Vec<usize> = (1..=n).map(|p| key.perm.image(p)).collect();
            out.add_term(
                BasisKey {
                    ties,
                    perm: Permutation::from_images(images)?,
                },
                coeff.clone(),
            );
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (key, coeff)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({coeff})*[{}; {}]", key.ties, key.perm)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn gen(n: usize, g: Gen) -> AlgebraElement {
        AlgebraElement::generator(n, g).unwrap()
    }

    fn u() -> Scalar {
        Scalar::var(Var::U)
    }

    fn v() -> Scalar {
        Scalar::var(Var::V)
    }

    #[test]
    fn generator_forms() {
        let r = gen(2, Gen::R(1));
        assert_eq!(r.num_terms(), 1);
        let key = BasisKey {
            ties: SetPartition::trivial(2),
            perm: Permutation::transposition(2, 1).unwrap(),
        };
        assert!(r.coeff(&key).is_one());

        let rinv = gen(2, Gen::RInv(1));
        assert_eq!(rinv.num_terms(), 3);
        let mu = SetPartition::pair(2, 1, 2).unwrap();
        assert_eq!(
            rinv.coeff(&BasisKey {
                ties: mu.clone(),
                perm: Permutation::identity(2)
            }),
            (&Scalar::one() - &v()).div(&u()).unwrap()
        );
        assert_eq!(
            rinv.coeff(&BasisKey {
                ties: mu,
                perm: Permutation::transposition(2, 1).unwrap()
            }),
            (&Scalar::one() - &u()).div(&u()).unwrap()
        );

        assert!(AlgebraElement::generator(2, Gen::R(2)).is_err());
    }

    #[test]
    fn tie_idempotent() {
        let e = gen(2, Gen::E(1));
        assert_eq!(e.mul(&e).unwrap(), e);
    }

    #[test]
    fn quadratic_relation() {
        // R_1^2 = 1 + (u-1) E_1 + (v-1) E_1 R_1.
        let r = gen(2, Gen::R(1));
        let sq = r.mul(&r).unwrap();
        let mu = SetPartition::pair(2, 1, 2).unwrap();
        let s1 = Permutation::transposition(2, 1).unwrap();
        assert_eq!(sq.num_terms(), 3);
        assert!(sq.coeff(&BasisKey::unit(2)).is_one());
        assert_eq!(
            sq.coeff(&BasisKey {
                ties: mu.clone(),
                perm: Permutation::identity(2)
            }),
            &u() - &Scalar::one()
        );
        assert_eq!(
            sq.coeff(&BasisKey { ties: mu, perm: s1 }),
            &v() - &Scalar::one()
        );
    }

    #[test]
    fn inverse_generators() {
        for n in 2..=4 {
            for i in 1..n {
                let r = gen(n, Gen::R(i));
                let rinv = gen(n, Gen::RInv(i));
                assert_eq!(r.mul(&rinv).unwrap(), AlgebraElement::one(n), "n={n} i={i}");
                assert_eq!(rinv.mul(&r).unwrap(), AlgebraElement::one(n), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn mixed_braid_relation() {
        // E_1 R_2 R_1 = R_2 R_1 E_2 and the braid relation itself.
        let lhs = AlgebraElement::product(3, &[gen(3, Gen::E(1)), gen(3, Gen::R(2)), gen(3, Gen::R(1))]).unwrap();
        let rhs = AlgebraElement::product(3, &[gen(3, Gen::R(2)), gen(3, Gen::R(1)), gen(3, Gen::E(2))]).unwrap();
        assert_eq!(lhs, rhs);

        let b1 = AlgebraElement::product(3, &[gen(3, Gen::R(1)), gen(3, Gen::R(2)), gen(3, Gen::R(1))]).unwrap();
        let b2 = AlgebraElement::product(3, &[gen(3, Gen::R(2)), gen(3, Gen::R(1)), gen(3, Gen::R(2))]).unwrap();
        assert_eq!(b1, b2);
    }

    #[test]
    fn conjugation_moves_ties() {
        // T_w E_I = E_{w(I)} T_w for every basis permutation and partition at n = 3.
        let parts = SetPartition::enumerate(3);
        let perms: Vec<Permutation> = {
            let mut out = vec![Permutation::identity(3)];
            let s1 = Permutation::transposition(3, 1).unwrap();
            let s2 = Permutation::transposition(3, 2).unwrap();
            out.push(s1.clone());
            out.push(s2.clone());
            out.push(s1.compose(&s2));
            out.push(s2.compose(&s1));
            out.push(s1.compose(&s2).compose(&s1));
            out
        };
        for w in &perms {
            let tw = AlgebraElement::from_perm(3, w.clone());
            for i in &parts {
                let lhs = tw.mul(&AlgebraElement::from_ties(i.clone())).unwrap();
                let rhs = AlgebraElement::from_ties(i.permute(w).unwrap()).mul(&tw).unwrap();
                assert_eq!(lhs, rhs, "w = {w}, I = {i}");
            }
        }
    }

    #[test]
    fn include_restrict_round_trip() {
        let x = AlgebraElement::product(3, &[gen(3, Gen::R(1)), gen(3, Gen::E(2))]).unwrap();
        let up = x.include(5).unwrap();
        assert_eq!(up.restrict().unwrap().restrict().unwrap(), x);
        // Restriction refuses when the last strand is touched.
        assert!(gen(3, Gen::R(2)).restrict().is_err());
        assert!(gen(3, Gen::E(2)).restrict().is_err());
    }
}
