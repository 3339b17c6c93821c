//! Tits' solution of the word problem.
//!
//! A word is reduced iff no word reachable from it by braid moves contains two
//! equal adjacent letters, and any two reduced words for the same element are
//! connected by braid moves. Reduction therefore alternates between exploring
//! the braid class of the current word and deleting a `ss` pair as soon as one
//! shows up. Once a class contains no such pair it is exactly the set of
//! reduced words of the element, and its lexicographic minimum is the
//! ShortLex normal form.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{CoxeterSystem, Gen};
use crate::error::{Error, Result};

/// A finite sequence of generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn new(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    /// `s t s t ...` with `len` letters.
    pub fn alternating(s: Gen, t: Gen, len: usize) -> Self {
        Word((0..len).map(|i| if i % 2 == 0 { s } else { t }).collect())
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Gen>> for Word {
    fn from(v: Vec<Gen>) -> Self {
        Word(v)
    }
}

/// A group element, stored as its ShortLex normal form.
///
/// Equality of elements is equality of normal forms. Elements order by
/// ShortLex: first by length, then lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Element(pub(crate) Vec<Gen>);

impl Element {
    pub fn identity() -> Self {
        Element(Vec::new())
    }

    pub fn normal_form(&self) -> &[Gen] {
        &self.0
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Letters used by the normal form. For a standard parabolic `W_T`, an
    /// element lies in `W_T` iff its support is contained in `T`.
    pub fn support(&self) -> u64 {
        super::mask_of(&self.0)
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

enum Explored {
    Shorter(Vec<Gen>),
    Reduced(Vec<Gen>),
}

impl CoxeterSystem {
    pub fn reduce_word(&self, word: &Word) -> Result<Element> {
        self.reduce(word.letters())
    }

    pub fn reduce(&self, letters: &[Gen]) -> Result<Element> {
        debug_assert!(letters.iter().all(|&s| (s as usize) < self.rank()));
        let mut current = free_reduce(letters);
        loop {
            match self.explore_braid_class(&current)? {
                Explored::Shorter(w) => current = free_reduce(&w),
                Explored::Reduced(min) => return Ok(Element(min)),
            }
        }
    }

    /// Breadth-first search through the braid class of `word`.
    fn explore_braid_class(&self, word: &[Gen]) -> Result<Explored> {
        if let Some(i) = adjacent_pair(word) {
            return Ok(Explored::Shorter(delete_pair(word, i)));
        }
        let mut seen: HashSet<Vec<Gen>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.to_vec());
        queue.push_back(word.to_vec());
        let mut min = word.to_vec();

        while let Some(w) = queue.pop_front() {
            if w < min {
                min = w.clone();
            }
            for i in 0..w.len().saturating_sub(1) {
                let (s, t) = (w[i], w[i + 1]);
                let Some(m) = self.order(s, t).finite() else {
                    continue;
                };
                let m = m as usize;
                if i + m > w.len() || !is_alternating(&w[i..i + m], s, t) {
                    continue;
                }
                let mut next = w.clone();
                for (k, slot) in next[i..i + m].iter_mut().enumerate() {
                    *slot = if k % 2 == 0 { t } else { s };
                }
                if seen.contains(&next) {
                    continue;
                }
                if let Some(j) = adjacent_pair(&next) {
                    return Ok(Explored::Shorter(delete_pair(&next, j)));
                }
                if seen.len() >= self.memo_cap() {
                    return Err(Error::ResourceLimit {
                        what: "word-problem memo table",
                        limit: self.memo_cap(),
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        Ok(Explored::Reduced(min))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        let mut w = a.0.clone();
        w.extend_from_slice(&b.0);
        self.reduce(&w)
    }

    /// `a * s` for a single generator.
    pub fn multiply_gen(&self, a: &Element, s: Gen) -> Result<Element> {
        let mut w = a.0.clone();
        w.push(s);
        self.reduce(&w)
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        let w: Vec<Gen> = a.0.iter().rev().copied().collect();
        self.reduce(&w)
    }

    /// `a b a^{-1}`.
    pub fn conjugate(&self, a: &Element, b: &Element) -> Result<Element> {
        let mut w = a.0.clone();
        w.extend_from_slice(&b.0);
        w.extend(a.0.iter().rev());
        self.reduce(&w)
    }

    /// The reflection `u s u^{-1}`.
    pub fn reflection(&self, u: &Element, s: Gen) -> Result<Element> {
        let mut w = u.0.clone();
        w.push(s);
        w.extend(u.0.iter().rev());
        self.reduce(&w)
    }

    pub fn element_from_gen(&self, s: Gen) -> Element {
        Element(vec![s])
    }
}

fn is_alternating(w: &[Gen], s: Gen, t: Gen) -> bool {
    w.iter()
        .enumerate()
        .all(|(k, &x)| x == if k % 2 == 0 { s } else { t })
}

fn adjacent_pair(w: &[Gen]) -> Option<usize> {
    w.windows(2).position(|p| p[0] == p[1])
}

fn delete_pair(w: &[Gen], i: usize) -> Vec<Gen> {
    let mut out = Vec::with_capacity(w.len() - 2);
    out.extend_from_slice(&w[..i]);
    out.extend_from_slice(&w[i + 2..]);
    out
}

/// Cancels adjacent equal letters with a stack.
fn free_reduce(w: &[Gen]) -> Vec<Gen> {
    let mut out: Vec<Gen> = Vec::with_capacity(w.len());
    for &s in w {
        if out.last() == Some(&s) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}
