//! The monoid of set partitions of `{1..n}` and the symmetric group action.
//!
//! A partition is stored as its restricted growth string: `code[p]` is the
//! block of point `p`, blocks numbered by first appearance. This encoding is
//! canonical, so structural equality is partition equality and the codes
//! order the partitions deterministically. The product is the join (least
//! common coarsening); the identity is the partition into singletons.
//!
//! Points are 1-based in the public interface, matching the usual indexing
//! of strands and link components.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    code: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    // images[p] is the 0-based image of 0-based point p.
    images: Vec<u8>,
}

/// Canonicalize arbitrary block labels into a restricted growth string.
fn canonical_code(labels: &[u8]) -> Vec<u8> {
    let mut map: Vec<Option<u8>> = vec![None; labels.len() + 1];
    let mut next = 0u8;
    labels
        .iter()
        .map(|&l| {
            *map[l as usize].get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            })
        })
        .collect()
}

impl SetPartition {
    /// The partition of `{1..n}` into singletons (the monoid identity).
    pub fn trivial(n: usize) -> Self {
        SetPartition {
            code: (0..n as u8).collect(),
        }
    }

    /// The partition whose unique non-singleton block is `{i, j}`.
    pub fn pair(n: usize, i: usize, j: usize) -> Result<Self> {
        let mut p = SetPartition::trivial(n);
        p = p.merge(i, j)?;
        Ok(p)
    }

    pub fn from_code(code: Vec<u8>) -> Result<Self> {
        let mut max_seen: Option<u8> = None;
        for (p, &c) in code.iter().enumerate() {
            let limit = max_seen.map_or(0, |m| m + 1);
            if c > limit {
                return Err(Error::Parse(format!(
                    "code[{p}] = {c} breaks restricted growth"
                )));
            }
            max_seen = Some(max_seen.map_or(c, |m| m.max(c)));
        }
        Ok(SetPartition { code })
    }

    /// Build from explicit blocks over `{1..n}`; omitted points are singletons.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut p = SetPartition::trivial(n);
        for block in blocks {
            for pair in block.windows(2) {
                p = p.merge(pair[0], pair[1])?;
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.code.len()
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    pub fn block_count(&self) -> usize {
        self.code.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.code.iter().enumerate().all(|(p, &c)| c as usize == p)
    }

    fn check_point(&self, p: usize) -> Result<()> {
        if p == 0 || p > self.n() {
            return Err(Error::IndexOutOfRange {
                index: p,
                n: self.n(),
            });
        }
        Ok(())
    }

    pub fn same_block(&self, p: usize, q: usize) -> Result<bool> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok(self.code[p - 1] == self.code[q - 1])
    }

    /// Blocks as sorted 1-based point lists, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); self.block_count()];
        for (p, &c) in self.code.iter().enumerate() {
            blocks[c as usize].push(p + 1);
        }
        blocks
    }

    /// Join: the least partition coarser than both operands.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        let n = self.n();
        let mut uf = UnionFind::new(n);
        for part in [self, other] {
            let mut first: Vec<Option<usize>> = vec![None; n];
            for (p, &c) in part.code.iter().enumerate() {
                match first[c as usize] {
                    Some(q) => uf.union(p, q),
                    None => first[c as usize] = Some(p),
                }
            }
        }
        let labels: Vec<u8> = (0..n).map(|p| uf.find(p) as u8).collect();
        Ok(SetPartition {
            code: canonical_code(&labels),
        })
    }

    /// Image under a permutation: every point is replaced by its image.
    pub fn permute(&self, w: &Permutation) -> Result<SetPartition> {
        if self.n() != w.n() {
            return Err(Error::SizeMismatch(self.n(), w.n()));
        }
        let mut labels = vec![0u8; self.n()];
        for (p, &c) in self.code.iter().enumerate() {
            labels[w.images[p] as usize] = c;
        }
        Ok(SetPartition {
            code: canonical_code(&labels),
        })
    }

    /// `I^+`: extend by the singleton `{n+1}`.
    pub fn add_singleton(&self) -> SetPartition {
        let mut code = self.code.clone();
        let next = self.block_count() as u8;
        code.push(next);
        SetPartition { code }
    }

    /// `I_{i,j}`: join the blocks containing `i` and `j`.
    pub fn merge(&self, i: usize, j: usize) -> Result<SetPartition> {
        self.check_point(i)?;
        self.check_point(j)?;
        let (bi, bj) = (self.code[i - 1], self.code[j - 1]);
        if bi == bj {
            return Ok(self.clone());
        }
        let labels: Vec<u8> = self
            .code
            .iter()
            .map(|&c| if c == bj { bi } else { c })
            .collect();
        Ok(SetPartition {
            code: canonical_code(&labels),
        })
    }

    /// Pull point `p` out of its block, leaving it a singleton.
    pub fn detach(&self, p: usize) -> Result<SetPartition> {
        self.check_point(p)?;
        let mut labels = self.code.clone();
        labels[p - 1] = self.n() as u8;
        Ok(SetPartition {
            code: canonical_code(&labels),
        })
    }

    /// Omit point `j` and renumber the points above it down by one.
    pub fn drop_point(&self, j: usize) -> Result<SetPartition> {
        self.check_point(j)?;
        let mut labels = self.code.clone();
        labels.remove(j - 1);
        Ok(SetPartition {
            code: canonical_code(&labels),
        })
    }

    /// Adjoin a new point `n+1` to the block containing `i`.
    pub fn attach(&self, i: usize) -> Result<SetPartition> {
        self.check_point(i)?;
        let mut code = self.code.clone();
        code.push(self.code[i - 1]);
        Ok(SetPartition { code })
    }

    /// All partitions of `{1..n}` in lexicographic code order.
    pub fn enumerate(n: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut code = vec![0u8; n];
        fn rec(code: &mut Vec<u8>, pos: usize, max: u8, n: usize, out: &mut Vec<SetPartition>) {
            if pos == n {
                out.push(SetPartition {
                    code: code[..n].to_vec(),
                });
                return;
            }
            for c in 0..=max + 1 {
                code[pos] = c;
                rec(code, pos + 1, max.max(c), n, out);
            }
        }
        if n == 0 {
            out.push(SetPartition { code: Vec::new() });
        } else {
            code[0] = 0;
            rec(&mut code, 1, 0, n, &mut out);
        }
        out
    }

    /// `I` refines `J`: every block of `J` is a union of blocks of `I`.
    pub fn refines(&self, coarser: &SetPartition) -> Result<bool> {
        if self.n() != coarser.n() {
            return Err(Error::SizeMismatch(self.n(), coarser.n()));
        }
        let mut image: Vec<Option<u8>> = vec![None; self.n().max(1)];
        for (p, &c) in self.code.iter().enumerate() {
            let target = coarser.code[p];
            match image[c as usize] {
                Some(t) if t != target => return Ok(false),
                Some(_) => {}
                None => image[c as usize] = Some(target),
            }
        }
        Ok(true)
    }

    /// Parse the `1,2|4,6` block syntax; singletons may be omitted.
    pub fn parse(text: &str, n: usize) -> Result<SetPartition> {
        let mut p = SetPartition::trivial(n);
        let text = text.trim();
        if text.is_empty() {
            return Ok(p);
        }
        for block in text.split('|') {
            let mut prev: Option<usize> = None;
            for item in block.split(',') {
                let item = item.trim();
                if item.is_empty() {
                    return Err(Error::Parse(format!("empty member in block '{block}'")));
                }
                let point: usize = item
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point '{item}'")))?;
                if point == 0 || point > n {
                    return Err(Error::IndexOutOfRange { index: point, n });
                }
                if let Some(q) = prev {
                    p = p.merge(q, point)?;
                }
                prev = Some(point);
            }
        }
        Ok(p)
    }
}

impl fmt::Display for SetPartition {
    /// Non-singleton blocks only, in the customary `1,2|4,6` form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for block in self.blocks() {
            if block.len() < 2 {
                continue;
            }
            if !first {
                f.write_str("|")?;
            }
            first = false;
            for (k, p) in block.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut p: usize) -> usize {
        while self.parent[p] != p {
            self.parent[p] = self.parent[self.parent[p]];
            p = self.parent[p];
        }
        p
    }

    fn union(&mut self, p: usize, q: usize) {
        let (rp, rq) = (self.find(p), self.find(q));
        if rp != rq {
            self.parent[rp.max(rq)] = rp.min(rq);
        }
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// The adjacent transposition `s_i` swapping `i` and `i+1` (1-based).
    pub fn transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i + 1 > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// Build from 1-based images; must be a bijection of `{1..n}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im == 0 || im > n || seen[im - 1] {
                return Err(Error::Parse(format!("images {images:?} not a bijection")));
            }
            seen[im - 1] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|im| (im - 1) as u8).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of a 1-based point.
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &im)| im as usize == p)
    }

    /// Composition `self ∘ rhs`: the right factor acts first.
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), rhs.n());
        Permutation {
            images: rhs.images.iter().map(|&im| self.images[im as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.n()];
        for (p, &im) in self.images.iter().enumerate() {
            images[im as usize] = p as u8;
        }
        Permutation { images }
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let mut len = 0;
        for p in 0..self.n() {
            for q in p + 1..self.n() {
                if self.images[p] > self.images[q] {
                    len += 1;
                }
            }
        }
        len
    }

    /// Smallest `i` with `w(i) > w(i+1)`, if any.
    pub fn first_descent(&self) -> Option<usize> {
        (1..self.n()).find(|&i| self.images[i - 1] > self.images[i])
    }

    /// A reduced word: indices `[i_1, ..., i_l]` with
    /// `self = s_{i_1} ∘ ... ∘ s_{i_l}` and `l` the Coxeter length.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut cur = self.clone();
        let mut word = Vec::new();
        while let Some(i) = cur.first_descent() {
            // cur has a descent at i, so cur ∘ s_i is one inversion shorter
            // and cur = (cur ∘ s_i) ∘ s_i puts i at the end of the word.
            let s = Permutation::transposition(self.n(), i).expect("in range");
            cur = cur.compose(&s);
            word.push(i);
        }
        word.reverse();
        word
    }

    /// Cycles as 1-based point lists, each starting at its least element,
    /// ordered by least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Extend to `n + extra` points, fixing the new ones.
    pub fn extend(&self, extra: usize) -> Permutation {
        let mut images = self.images.clone();
        for k in 0..extra {
            images.push((self.n() + k) as u8);
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (p, &im) in self.images.iter().enumerate() {
            if p > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", im + 1)?;
        }
        f.write_str("]")
    }
}
