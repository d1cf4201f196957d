//! Representations of the singular braid monoid and the link invariants.
//!
//! Two monoid homomorphisms land in the algebra of braids and ties:
//!
//! ```text
//! rho:    s_i -> w R_i,   s_i^-1 -> w^-1 R_i^-1,   t_i -> x + y w R_i + z w^-1 R_i^-1
//! varrho: s_i -> w R_i,   s_i^-1 -> w^-1 R_i^-1,   t_i -> x E_i + y w E_i R_i
//! ```
//!
//! both extended to tied words by `e_i -> E_i`. Composing with the Markov
//! trace and normalizing by `(1/(a w))^(n-1)` gives the invariants
//! `Upsilon_{x,y,z}` and `Upsilon'_{x,y}` of singular links; the rescaling
//! relation for `w` is exactly what makes the composite stable under both
//! Markov moves.
//!
//! Ties between closure components enter algebraically: a partition `J` of
//! the components pulls back to a partition of the strands and contributes a
//! left factor `E_J`. Strands of one component always share a block of the
//! pullback; for the trivial `J` the factor is omitted entirely, which the
//! within-component insensitivity tests justify.

use crate::algebra::{AlgebraElement, Gen};
use crate::braid::{TokKind, Word};
use crate::error::{Error, Result};
use crate::partition::SetPartition;
use crate::poly::Var;
use crate::ratfun::RationalFunction;
use crate::scalar::Scalar;
use crate::trace::markov_trace;
use std::collections::BTreeMap;

/// Which invariant to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantMode {
    /// `Upsilon_{x,y,z}`, through `rho`.
    Upsilon,
    /// `Upsilon'_{x,y}`, through `varrho`.
    UpsilonPrime,
}

/// Specializations that recover the one-parameter invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Specialization {
    /// `z = 0`, `v = u`.
    Psi,
    /// `z = 0`, `u = 1`, `v = s - 1/s + 1` (`s` standing for the square root
    /// of the original parameter).
    PsiPrime,
}

/// Image of a word under `rho` (`Upsilon`) or `varrho` (`UpsilonPrime`),
/// with ties mapped to the tie idempotents.
pub fn repr(word: &Word, mode: InvariantMode) -> Result<AlgebraElement> {
    let n = word.n();
    let w = Scalar::w();
    let w_inv = w.inverse().expect("w is invertible");
    let mut acc = AlgebraElement::one(n);
    for tok in word.toks() {
        let i = tok.index;
        let image = match tok.kind {
            TokKind::Sigma => AlgebraElement::generator(n, Gen::R(i))?.scale(&w),
            TokKind::SigmaInv => AlgebraElement::generator(n, Gen::RInv(i))?.scale(&w_inv),
            TokKind::Tie => AlgebraElement::generator(n, Gen::E(i))?,
            TokKind::Tau => match mode {
                InvariantMode::Upsilon => {
                    let r = AlgebraElement::generator(n, Gen::R(i))?;
                    let rinv = AlgebraElement::generator(n, Gen::RInv(i))?;
                    AlgebraElement::one(n)
                        .scale(&Scalar::var(Var::X))
                        .add(&r.scale(&(&Scalar::var(Var::Y) * &w)))?
                        .add(&rinv.scale(&(&Scalar::var(Var::Z) * &w_inv)))?
                }
                InvariantMode::UpsilonPrime => {
                    let e = AlgebraElement::generator(n, Gen::E(i))?;
                    let er = e.times_gen(Gen::R(i))?;
                    e.scale(&Scalar::var(Var::X))
                        .add(&er.scale(&(&Scalar::var(Var::Y) * &w)))?
                }
            },
        };
        acc = acc.mul(&image)?;
    }
    Ok(acc)
}

/// Pull a partition of the closure components back to the strands. Strands
/// of one component are always tied; strands of distinct components are tied
/// exactly when their components share a block.
pub fn strand_ties(word: &Word, components: &SetPartition) -> Result<SetPartition> {
    let (count, strand_to_component) = word.closure_components();
    if components.n() != count {
        return Err(Error::ComponentMismatch {
            got: components.n(),
            expected: count,
        });
    }
    let n = word.n();
    let mut ties = SetPartition::trivial(n);
    for p in 1..=n {
        for q in p + 1..=n {
            let (cp, cq) = (strand_to_component[p - 1], strand_to_component[q - 1]);
            if cp == cq || components.same_block(cp, cq)? {
                ties = ties.merge(p, q)?;
            }
        }
    }
    Ok(ties)
}

/// `(1/(a w))^(n-1)`, the closure normalization at `n` strands.
pub fn closure_normalization(n: usize) -> Scalar {
    let aw = &Scalar::var(Var::A) * &Scalar::w();
    aw.inverse()
        .expect("a w is invertible")
        .pow((n - 1) as i32)
        .expect("nonnegative power")
}

/// The invariant of the closure of `word`, optionally as a link with tied
/// components. The word must not contain tie tokens; ties are supplied as a
/// partition of the closure components.
pub fn invariant(
    word: &Word,
    components: Option<&SetPartition>,
    mode: InvariantMode,
) -> Result<Scalar> {
    if word.has_ties() {
        return Err(Error::Parse(
            "tie tokens are not allowed here; pass component ties as a partition".into(),
        ));
    }
    let image = repr(word, mode)?;
    let tied = match components {
        Some(j) if !j.is_trivial() => {
            let ties = strand_ties(word, j)?;
            AlgebraElement::from_ties(ties).mul(&image)?
        }
        Some(j) => {
            // Still validates the component count.
            strand_ties(word, j)?;
            image
        }
        None => image,
    };
    Ok(&closure_normalization(word.n()) * &markov_trace(&tied))
}

/// Apply one of the recovery specializations to a computed value.
pub fn specialize(value: &Scalar, which: Specialization) -> Result<Scalar> {
    let mut bindings: BTreeMap<Var, RationalFunction> = BTreeMap::new();
    bindings.insert(Var::Z, RationalFunction::zero());
    match which {
        Specialization::Psi => {
            bindings.insert(Var::V, RationalFunction::var(Var::U));
        }
        Specialization::PsiPrime => {
            bindings.insert(Var::U, RationalFunction::one());
            let s = RationalFunction::var(Var::S);
            let v_image = s
                .sub(&RationalFunction::one().div(&s)?)
                .add(&RationalFunction::one());
            bindings.insert(Var::V, v_image);
        }
    }
    value.substitute(&bindings)
}
