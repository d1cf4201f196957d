//! Words in the singular braid monoid and its tied extension.
//!
//! A [`Word`] is a plain token sequence over `n` strands; no rewriting
//! happens at this level. Crossings `s<i>`/`s<i>^-1`, singular crossings
//! `t<i>` and ties `e<i>` all use 1-based positions `1 <= i <= n-1`.

use crate::error::{Error, Result};
use crate::partition::Permutation;
use rand::prelude::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TokKind {
    Sigma,
    SigmaInv,
    Tau,
    Tie,
}

pub const ALL_KINDS: [TokKind; 4] = [TokKind::Sigma, TokKind::SigmaInv, TokKind::Tau, TokKind::Tie];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenTok {
    pub kind: TokKind,
    pub index: usize,
}

impl GenTok {
    pub fn sigma(i: usize) -> Self {
        GenTok { kind: TokKind::Sigma, index: i }
    }

    pub fn sigma_inv(i: usize) -> Self {
        GenTok { kind: TokKind::SigmaInv, index: i }
    }

    pub fn tau(i: usize) -> Self {
        GenTok { kind: TokKind::Tau, index: i }
    }

    pub fn tie(i: usize) -> Self {
        GenTok { kind: TokKind::Tie, index: i }
    }

    /// Inverse token for the Markov moves; singular crossings and ties have
    /// none in the monoid.
    pub fn inverse(&self) -> Option<GenTok> {
        match self.kind {
            TokKind::Sigma => Some(GenTok::sigma_inv(self.index)),
            TokKind::SigmaInv => Some(GenTok::sigma(self.index)),
            TokKind::Tau | TokKind::Tie => None,
        }
    }
}

impl fmt::Display for GenTok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TokKind::Sigma => write!(f, "s{}", self.index),
            TokKind::SigmaInv => write!(f, "s{}^-1", self.index),
            TokKind::Tau => write!(f, "t{}", self.index),
            TokKind::Tie => write!(f, "e{}", self.index),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    toks: Vec<GenTok>,
}

impl Word {
    pub fn new(n: usize, toks: Vec<GenTok>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("a word needs at least one strand".into()));
        }
        for t in &toks {
            if t.index == 0 || t.index + 1 > n {
                return Err(Error::IndexOutOfRange { index: t.index, n });
            }
        }
        Ok(Word { n, toks })
    }

    pub fn empty(n: usize) -> Self {
        Word { n, toks: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn toks(&self) -> &[GenTok] {
        &self.toks
    }

    pub fn len(&self) -> usize {
        self.toks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.toks.is_empty()
    }

    /// Number of singular crossings.
    pub fn singular_degree(&self) -> usize {
        self.toks.iter().filter(|t| t.kind == TokKind::Tau).count()
    }

    pub fn has_ties(&self) -> bool {
        self.toks.iter().any(|t| t.kind == TokKind::Tie)
    }

    /// Exponent sum of the classical crossings.
    pub fn writhe(&self) -> i64 {
        self.toks
            .iter()
            .map(|t| match t.kind {
                TokKind::Sigma => 1,
                TokKind::SigmaInv => -1,
                _ => 0,
            })
            .sum()
    }

    /// View the same tokens on a wider ambient strand count.
    pub fn include(&self, n: usize) -> Result<Word> {
        if n < self.n {
            return Err(Error::SizeMismatch(self.n, n));
        }
        Ok(Word { n, toks: self.toks.clone() })
    }

    pub fn concat(&self, rhs: &Word) -> Result<Word> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch(self.n, rhs.n));
        }
        let mut toks = self.toks.clone();
        toks.extend_from_slice(&rhs.toks);
        Ok(Word { n: self.n, toks })
    }

    pub fn push(&self, tok: GenTok) -> Result<Word> {
        let mut toks = self.toks.clone();
        toks.push(tok);
        Word::new(self.n, toks)
    }

    /// Cyclic rotation by `k` tokens (conjugation on the closure).
    pub fn rotate(&self, k: usize) -> Word {
        if self.toks.is_empty() {
            return self.clone();
        }
        let k = k % self.toks.len();
        let mut toks = self.toks[k..].to_vec();
        toks.extend_from_slice(&self.toks[..k]);
        Word { n: self.n, toks }
    }

    /// Markov stabilization: the word on `n+1` strands with a trailing
    /// `s_n` (`positive`) or `s_n^-1`.
    pub fn stabilize(&self, positive: bool) -> Word {
        let mut toks = self.toks.clone();
        toks.push(if positive {
            GenTok::sigma(self.n)
        } else {
            GenTok::sigma_inv(self.n)
        });
        Word { n: self.n + 1, toks }
    }

    /// Underlying permutation: crossings and singular crossings project to
    /// the transposition of their strands, ties to the identity. Tokens
    /// compose left to right with the leftmost factor outermost.
    pub fn underlying_permutation(&self) -> Permutation {
        let mut perm = Permutation::identity(self.n);
        for t in &self.toks {
            match t.kind {
                TokKind::Sigma | TokKind::SigmaInv | TokKind::Tau => {
                    let s = Permutation::transposition(self.n, t.index).expect("validated");
                    perm = perm.compose(&s);
                }
                TokKind::Tie => {}
            }
        }
        perm
    }

    /// Components of the closure: cycles of the underlying permutation,
    /// numbered by their smallest strand. Returns the component count and
    /// the 1-based component of each strand.
    pub fn closure_components(&self) -> (usize, Vec<usize>) {
        let cycles = self.underlying_permutation().cycles();
        let mut strand_to_component = vec![0usize; self.n];
        for (c, cycle) in cycles.iter().enumerate() {
            for &p in cycle {
                strand_to_component[p - 1] = c + 1;
            }
        }
        (cycles.len(), strand_to_component)
    }

    /// Reproducible pseudo-random word over the requested alphabet.
    pub fn random(n: usize, len: usize, alphabet: &[TokKind], seed: u64) -> Result<Word> {
        if n == 0 {
            return Err(Error::Parse("a word needs at least one strand".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut toks = Vec::with_capacity(len);
        if n >= 2 && !alphabet.is_empty() {
            let indices: Vec<usize> = (1..n).collect();
            for _ in 0..len {
                let kind = *alphabet.choose(&mut rng).expect("nonempty");
                let index = *indices.choose(&mut rng).expect("n >= 2");
                toks.push(GenTok { kind, index });
            }
        }
        Word::new(n, toks)
    }

    /// Parse whitespace-separated tokens; the strand count defaults to one
    /// more than the largest index used.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Word> {
        let mut toks = Vec::new();
        let mut max_index = 0usize;
        for raw in text.split_whitespace() {
            let tok = parse_token(raw)?;
            max_index = max_index.max(tok.index);
            toks.push(tok);
        }
        let inferred = if toks.is_empty() { 1 } else { max_index + 1 };
        let n = strands.unwrap_or(inferred);
        Word::new(n, toks)
    }
}

fn parse_token(raw: &str) -> Result<GenTok> {
    let bad = || Error::Parse(format!("unknown token '{raw}'"));
    let (head, inverted) = match raw.strip_suffix("^-1") {
        Some(head) => (head, true),
        None => (raw, false),
    };
    let mut chars = head.chars();
    let kind_ch = chars.next().ok_or_else(bad)?;
    let index: usize = chars.as_str().parse().map_err(|_| bad())?;
    if index == 0 {
        return Err(bad());
    }
    let tok = match (kind_ch, inverted) {
        ('s', false) => GenTok::sigma(index),
        ('s', true) => GenTok::sigma_inv(index),
        ('t', false) => GenTok::tau(index),
        ('e', false) => GenTok::tie(index),
        _ => return Err(bad()),
    };
    Ok(tok)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.toks.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, text: &str) -> Word {
        Word::parse(text, Some(n)).unwrap()
    }

    #[test]
    fn underlying_permutation_examples() {
        // A single crossing projects to s_1.
        let w = word(2, "s1");
        assert_eq!(w.underlying_permutation(), Permutation::transposition(2, 1).unwrap());
        // A singular crossing projects like a crossing, so t1 s1^-1 is flat.
        assert!(word(2, "t1 s1^-1").underlying_permutation().is_identity());
        // s1 s2 is a 3-cycle: 1 -> 2 -> 3 -> 1 under leftmost-outermost composition.
        let w = word(3, "s1 s2").underlying_permutation();
        assert_eq!(
            (w.image(1), w.image(2), w.image(3)),
            (2, 3, 1)
        );
    }

    #[test]
    fn homomorphism_property() {
        for seed in 0..20 {
            let u = Word::random(4, 5, &ALL_KINDS, seed).unwrap();
            let v = Word::random(4, 5, &ALL_KINDS, seed + 1000).unwrap();
            let uv = u.concat(&v).unwrap();
            assert_eq!(
                uv.underlying_permutation(),
                u.underlying_permutation().compose(&v.underlying_permutation())
            );
        }
    }

    #[test]
    fn closure_components_examples() {
        assert_eq!(Word::empty(1).closure_components().0, 1);
        // The trefoil word closes to a knot.
        let (k, map) = word(2, "s1 s1 s1").closure_components();
        assert_eq!(k, 1);
        assert_eq!(map, vec![1, 1]);
        // t1 s1^-1 closes to two components.
        let (k, map) = word(2, "t1 s1^-1").closure_components();
        assert_eq!(k, 2);
        assert_eq!(map, vec![1, 2]);
    }

    #[test]
    fn markov_moves_preserve_component_count() {
        for seed in 0..30 {
            let w = Word::random(4, 6, &ALL_KINDS, seed).unwrap();
            let k = w.closure_components().0;
            assert_eq!(w.rotate(seed as usize % 7).closure_components().0, k);
            assert_eq!(w.stabilize(true).closure_components().0, k);
            assert_eq!(w.stabilize(false).closure_components().0, k);
        }
    }

    #[test]
    fn random_words() {
        assert!(Word::random(2, 0, &ALL_KINDS, 7).unwrap().is_empty());
        assert_eq!(
            Word::random(3, 6, &ALL_KINDS, 42).unwrap(),
            Word::random(3, 6, &ALL_KINDS, 42).unwrap()
        );
        let alphabet = [TokKind::Sigma, TokKind::SigmaInv, TokKind::Tau];
        let w = Word::random(3, 6, &alphabet, 42).unwrap();
        assert_eq!(w.len(), 6);
        assert!(!w.has_ties());
        assert!(w.toks().iter().all(|t| (1..=2).contains(&t.index)));
    }

    #[test]
    fn parse_and_display() {
        let w = word(3, "s1 s2^-1 t1 e2");
        assert_eq!(w.to_string(), "s1 s2^-1 t1 e2");
        // Strand inference: 1 + max index.
        assert_eq!(Word::parse("s2", None).unwrap().n(), 3);
        assert_eq!(Word::parse("", None).unwrap().n(), 1);
        assert!(Word::parse("x1", None).is_err());
        assert!(Word::parse("e2^-1", None).is_err());
        assert!(Word::parse("s0", None).is_err());
        // Index out of range for the requested strand count.
        assert!(matches!(
            Word::parse("s3", Some(2)),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        ));
    }
}
