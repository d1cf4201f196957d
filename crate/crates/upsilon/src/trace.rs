//! The Markov trace on the algebra of braids and ties.
//!
//! The trace is the unique family of linear maps with `Tr(1) = 1` that is
//! cyclic and satisfies the strand-removal rules
//!
//! ```text
//! Tr(X R_n) = Tr(X E_n R_n) = a * Tr(X),      Tr(X E_n) = b * Tr(X)
//! ```
//!
//! for `X` one level down. On a basis term `E_I T_w` at level `n` the
//! computation removes the last strand by cases:
//!
//! * `w` fixes `n`, `{n}` a singleton of `I`: drop the strand and recurse.
//! * `w` fixes `n`, `n` tied into a block `B`: peel one tie `E_{{j,n}}` off
//!   as a conjugate `T_c E_{n-1} T_c^{-1}` of the last tie generator, rotate
//!   it to the back by cyclicity and apply the `b`-rule.
//! * `w` moves `n`: split `T_w = T_x R_{n-1} T_y` with additive lengths,
//!   rotate to put `R_{n-1}` last, carry ties touching strand `n` across it
//!   (`E_{{j,n}} R_{n-1} = R_{n-1} E_{{j,n-1}}`), and apply the `a`-rule,
//!   which absorbs an adjacent `E_{n-1}` if one was produced.
//!
//! The cases leave several choices open (which tie to peel, which
//! conjugator, which side to split from). Any choice computes the same
//! value because the trace with these properties is unique; the choices are
//! exposed as a [`TraceStrategy`] so that independence can be tested rather
//! than assumed.

use crate::algebra::{AlgebraElement, BasisKey};
use crate::partition::{Permutation, SetPartition};
use crate::poly::Var;
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Which strand tied to `n` gets peeled in the tied-strand case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePick {
    #[default]
    Largest,
    Smallest,
}

/// Conjugator carrying the peeled tie onto the last tie generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Conjugator {
    #[default]
    Cycle,
    Transposition,
}

/// Side from which `T_w` is split around `R_{n-1}` in the moved-strand case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitSide {
    #[default]
    TailRight,
    HeadLeft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TraceStrategy {
    pub tie_pick: TiePick,
    pub conjugator: Conjugator,
    pub split_side: SplitSide,
}

impl TraceStrategy {
    pub fn all() -> Vec<TraceStrategy> {
        let mut out = Vec::new();
        for &tie_pick in &[TiePick::Largest, TiePick::Smallest] {
            for &conjugator in &[Conjugator::Cycle, Conjugator::Transposition] {
                for &split_side in &[SplitSide::TailRight, SplitSide::HeadLeft] {
                    out.push(TraceStrategy {
                        tie_pick,
                        conjugator,
                        split_side,
                    });
                }
            }
        }
        out
    }

    fn code(&self) -> u8 {
        (self.tie_pick == TiePick::Smallest) as u8
            | ((self.conjugator == Conjugator::Transposition) as u8) << 1
            | ((self.split_side == SplitSide::HeadLeft) as u8) << 2
    }
}

/// Trace of an element under the default reduction strategy.
pub fn markov_trace(x: &AlgebraElement) -> Scalar {
    markov_trace_with(x, TraceStrategy::default())
}

/// Trace of an element under an explicit reduction strategy.
pub fn markov_trace_with(x: &AlgebraElement, strategy: TraceStrategy) -> Scalar {
    let mut acc = Scalar::zero();
    for (key, coeff) in x.terms() {
        acc = &acc + &(coeff * &trace_key(key, strategy));
    }
    acc
}

impl AlgebraElement {
    /// See [`markov_trace`].
    pub fn trace(&self) -> Scalar {
        markov_trace(self)
    }
}

/// Per-strategy cache of basis-key traces. Values are pure functions of the
/// key, so the cache only ever stores one value per entry; keeping strategies
/// apart preserves the independence of the cross-strategy agreement tests.
fn cache() -> &'static Mutex<HashMap<(u8, BasisKey), Scalar>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, BasisKey), Scalar>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn trace_key(key: &BasisKey, strategy: TraceStrategy) -> Scalar {
    let n = key.n();
    if n <= 1 {
        return Scalar::one();
    }
    let cache_key = (strategy.code(), key.clone());
    if let Some(hit) = cache().lock().unwrap().get(&cache_key) {
        return hit.clone();
    }
    let value = trace_key_uncached(key, strategy);
    cache().lock().unwrap().insert(cache_key, value.clone());
    value
}

fn trace_key_uncached(key: &BasisKey, strategy: TraceStrategy) -> Scalar {
    let n = key.n();
    let w = &key.perm;
    if w.image(n) == n {
        let block: Vec<usize> = (1..n)
            .filter(|&p| key.ties.same_block(p, n).expect("in range"))
            .collect();
        if block.is_empty() {
            // Fixed singleton strand: drop it.
            return trace_key(&restrict_key(key), strategy);
        }
        // Tied strand: peel E_{{j,n}} = T_c E_{n-1} T_c^{-1} with c(n-1) = j
        // and rotate the tie generator to the back:
        //   Tr(E_I T_w) = Tr(T_c^{-1} T_w E_{I'} T_c * E_{n-1}) = b * Tr(Z).
        let j = match strategy.tie_pick {
            TiePick::Largest => *block.last().expect("nonempty"),
            TiePick::Smallest => block[0],
        };
        let c = match strategy.conjugator {
            Conjugator::Cycle => cycle_up(n, j, n - 1),
            Conjugator::Transposition => swap_perm(n, j, n - 1),
        };
        let detached = key.ties.detach(n).expect("in range");
        let z = AlgebraElement::perm_inverse_elem(n, &c)
            .expect("indices in range")
            .mul(&AlgebraElement::from_perm(n, w.clone()))
            .and_then(|x| x.mul(&AlgebraElement::from_ties(detached)))
            .and_then(|x| x.mul(&AlgebraElement::from_perm(n, c)))
            .expect("same level");
        let reduced = z.restrict().expect("all factors fix the last strand");
        return &Scalar::var(Var::B) * &markov_trace_with(&reduced, strategy);
    }

    // Moved strand: split T_w around R_{n-1} with additive lengths and
    // rotate cyclically so the crossing sits at the end.
    let rotated = match strategy.split_side {
        SplitSide::TailRight => {
            // w = x . s_{n-1} . y with y = s_{n-2} ... s_m, m = w^{-1}(n).
            let m = w.inverse().image(n);
            let tail_inv = up_shift(n, m);
            let x = w.compose(&tail_inv);
            let y = down_cycle(n, m);
            debug_assert_eq!(x.length() + 1 + y.length(), w.length());
            debug_assert_eq!(x.image(n), n);
            AlgebraElement::from_perm(n, y)
                .mul(&AlgebraElement::from_ties(key.ties.clone()))
                .and_then(|e| e.mul(&AlgebraElement::from_perm(n, x)))
                .expect("same level")
        }
        SplitSide::HeadLeft => {
            // w = x . s_{n-1} . y with x = s_p ... s_{n-2}, p = w(n).
            let p = w.image(n);
            let x = down_cycle(n, p);
            let h_inv = x
                .compose(&Permutation::transposition(n, n - 1).expect("n >= 2"))
                .inverse();
            let y = h_inv.compose(w);
            debug_assert_eq!(x.length() + 1 + y.length(), w.length());
            debug_assert_eq!(y.image(n), n);
            AlgebraElement::from_perm(n, y)
                .mul(&AlgebraElement::from_ties(key.ties.clone()))
                .and_then(|e| e.mul(&AlgebraElement::from_perm(n, x)))
                .expect("same level")
        }
    };

    // Every term of the rotation is E_K T_s R_{n-1} with s fixing n. Carry
    // the ties that touch strand n across the crossing and apply the a-rule;
    // a pair {n-1, n} becomes the adjacent tie generator, which the a-rule
    // absorbs unchanged.
    let mut acc = Scalar::zero();
    let a = Scalar::var(Var::A);
    for (term, coeff) in rotated.terms() {
        debug_assert_eq!(term.perm.image(n), n);
        let mut carried = term.ties.detach(n).expect("in range");
        for p in 1..n {
            if term.ties.same_block(p, n).expect("in range") {
                let q = term.perm.inverse().image(p);
                if q < n - 1 {
                    carried = carried
                        .join(&SetPartition::pair(n, q, n - 1).expect("in range"))
                        .expect("same level");
                }
            }
        }
        let reduced_key = restrict_key(&BasisKey {
            ties: carried,
            perm: term.perm.clone(),
        });
        acc = &acc + &(&(coeff * &a) * &trace_key(&reduced_key, strategy));
    }
    acc
}

/// Drop the last strand from a key that fixes it.
fn restrict_key(key: &BasisKey) -> BasisKey {
    let n = key.n();
    debug_assert!(key.fixes_last_strand());
    let ties = key.ties.drop_point(n).expect("in range");
    let images: Vec<usize> = (1..n).map(|p| key.perm.image(p)).collect();
    BasisKey {
        ties,
        perm: Permutation::from_images(images).expect("bijection"),
    }
}

/// The cycle `lo -> lo+1 -> ... -> hi -> lo` (sends `hi` to `lo`).
fn cycle_up(n: usize, lo: usize, hi: usize) -> Permutation {
    let images: Vec<usize> = (1..=n)
        .map(|x| {
            if x == hi {
                lo
            } else if (lo..hi).contains(&x) {
                x + 1
            } else {
                x
            }
        })
        .collect();
    Permutation::from_images(images).expect("bijection")
}

/// The transposition of `p` and `q`.
fn swap_perm(n: usize, p: usize, q: usize) -> Permutation {
    let images: Vec<usize> = (1..=n)
        .map(|x| {
            if x == p {
                q
            } else if x == q {
                p
            } else {
                x
            }
        })
        .collect();
    Permutation::from_images(images).expect("bijection")
}

/// `x -> x+1` on `[m, n)`, `n -> m`: inverse of the tail cycle at `m`.
fn up_shift(n: usize, m: usize) -> Permutation {
    let images: Vec<usize> = (1..=n)
        .map(|x| {
            if x == n {
                m
            } else if (m..n).contains(&x) {
                x + 1
            } else {
                x
            }
        })
        .collect();
    Permutation::from_images(images).expect("bijection")
}

/// `x -> x-1` on `(m, n-1]`, `m -> n-1`: the word `s_{n-2} ... s_m`.
fn down_cycle(n: usize, m: usize) -> Permutation {
    let images: Vec<usize> = (1..=n)
        .map(|x| {
            if x == m {
                n - 1
            } else if (m + 1..=n - 1).contains(&x) {
                x - 1
            } else {
                x
            }
        })
        .collect();
    Permutation::from_images(images).expect("bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Gen;
    use crate::scalar::w_square;

    fn gen(n: usize, g: Gen) -> AlgebraElement {
        AlgebraElement::generator(n, g).unwrap()
    }

    fn sv(v: Var) -> Scalar {
        Scalar::var(v)
    }

    #[test]
    fn level_two_values() {
        assert!(markov_trace(&AlgebraElement::one(2)).is_one());
        assert_eq!(markov_trace(&gen(2, Gen::E(1))), sv(Var::B));
        assert_eq!(markov_trace(&gen(2, Gen::R(1))), sv(Var::A));
        let er = gen(2, Gen::E(1)).mul(&gen(2, Gen::R(1))).unwrap();
        assert_eq!(markov_trace(&er), sv(Var::A));
        // Tr(R_1^2) = 1 + (u-1)b + (v-1)a.
        let sq = gen(2, Gen::R(1)).mul(&gen(2, Gen::R(1))).unwrap();
        let expect = &(&Scalar::one() + &(&(&sv(Var::U) - &Scalar::one()) * &sv(Var::B)))
            + &(&(&sv(Var::V) - &Scalar::one()) * &sv(Var::A));
        assert_eq!(markov_trace(&sq), expect);
        // Tr(R_1^{-1}) = a * w^2.
        assert_eq!(
            markov_trace(&gen(2, Gen::RInv(1))),
            &sv(Var::A) * &Scalar::from_ratfun(w_square())
        );
    }

    #[test]
    fn level_three_values() {
        // Tr(R_1 R_2) = a^2 via the moved-strand case.
        let x = gen(3, Gen::R(1)).mul(&gen(3, Gen::R(2))).unwrap();
        assert_eq!(markov_trace(&x), &sv(Var::A) * &sv(Var::A));
        // A non-adjacent tie {1,3} traces to b.
        let e13 = AlgebraElement::from_ties(SetPartition::pair(3, 1, 3).unwrap());
        assert_eq!(markov_trace(&e13), sv(Var::B));
        // E_{{1,3}} R_2 R_1 mixes tie transport into the moved-strand case.
        let x = e13
            .mul(&gen(3, Gen::R(2)))
            .unwrap()
            .mul(&gen(3, Gen::R(1)))
            .unwrap();
        assert_eq!(markov_trace(&x), &sv(Var::A) * &sv(Var::A));
        // And one level up: a non-adjacent tie across two strands.
        let e14 = AlgebraElement::from_ties(SetPartition::pair(4, 1, 4).unwrap());
        assert_eq!(markov_trace(&e14), sv(Var::B));
    }

    #[test]
    fn strand_rules_at_level_three() {
        // Tr(X R_2) = Tr(X E_2 R_2) = a Tr(X), Tr(X E_2) = b Tr(X) for X in
        // the image of level 2.
        let xs = [
            AlgebraElement::one(2),
            gen(2, Gen::R(1)),
            gen(2, Gen::E(1)),
            gen(2, Gen::RInv(1)),
            gen(2, Gen::E(1)).mul(&gen(2, Gen::R(1))).unwrap(),
        ];
        for x in &xs {
            let up = x.include(3).unwrap();
            let t = markov_trace(x);
            assert_eq!(
                markov_trace(&up.times_gen(Gen::R(2)).unwrap()),
                &sv(Var::A) * &t
            );
            assert_eq!(
                markov_trace(&up.times_gen(Gen::E(2)).unwrap().times_gen(Gen::R(2)).unwrap()),
                &sv(Var::A) * &t
            );
            assert_eq!(
                markov_trace(&up.times_gen(Gen::E(2)).unwrap()),
                &sv(Var::B) * &t
            );
            assert_eq!(markov_trace(&up), t);
        }
    }

    #[test]
    fn strategies_agree_on_every_basis_key_at_level_three() {
        let parts = SetPartition::enumerate(3);
        let mut perms = Vec::new();
        let s1 = Permutation::transposition(3, 1).unwrap();
        let s2 = Permutation::transposition(3, 2).unwrap();
        perms.push(Permutation::identity(3));
        perms.push(s1.clone());
        perms.push(s2.clone());
        perms.push(s1.compose(&s2));
        perms.push(s2.compose(&s1));
        perms.push(s1.compose(&s2).compose(&s1));
        for ties in &parts {
            for perm in &perms {
                let key = BasisKey {
                    ties: ties.clone(),
                    perm: perm.clone(),
                };
                let elem = AlgebraElement::from_key(key.clone(), Scalar::one());
                let reference = markov_trace(&elem);
                for strategy in TraceStrategy::all() {
                    assert_eq!(
                        markov_trace_with(&elem, strategy),
                        reference,
                        "key {ties} ; {perm}, strategy {strategy:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn cyclicity_spot_checks() {
        let words: [&[Gen]; 4] = [
            &[Gen::R(1), Gen::E(2)],
            &[Gen::RInv(2), Gen::R(1), Gen::E(1)],
            &[Gen::E(1), Gen::R(2), Gen::R(2)],
            &[Gen::R(2), Gen::RInv(1), Gen::E(2), Gen::R(1)],
        ];
        for (k, w) in words.iter().enumerate() {
            let factors: Vec<AlgebraElement> = w.iter().map(|&g| gen(3, g)).collect();
            let x = AlgebraElement::product(3, &factors[..1]).unwrap();
            let y = AlgebraElement::product(3, &factors[1..]).unwrap();
            assert_eq!(
                markov_trace(&x.mul(&y).unwrap()),
                markov_trace(&y.mul(&x).unwrap()),
                "word {k}"
            );
        }
    }
}
