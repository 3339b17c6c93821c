//! Coxeter systems: the order matrix, the word problem, finite-type
//! classification of parabolic subgroups, and Cayley balls.

mod ball;
mod classify;
mod parse;
mod word;

pub use ball::CayleyBall;
pub use classify::FiniteType;
pub use word::{Element, Word};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::DEFAULT_MEMO_CAP;

/// Index of a generator in the declared order of its system.
pub type Gen = u8;

/// Largest supported number of generators (subsets are stored as `u64` masks).
pub const MAX_RANK: usize = 64;

/// An off-diagonal Coxeter matrix entry, or the diagonal `1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(m) => write!(f, "{m}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// A Coxeter system `(W, S)` given by its generator names and order matrix.
///
/// The declared generator order is part of the system's identity: it fixes
/// the ShortLex normal forms of all elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSystem {
    names: Vec<String>,
    orders: Vec<Vec<Order>>,
    memo_cap: usize,
}

impl CoxeterSystem {
    pub fn new(names: Vec<String>, orders: Vec<Vec<Order>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("at least one generator is required".into()));
        }
        if n > MAX_RANK {
            return Err(Error::InvalidMatrix(format!(
                "{n} generators exceeds the supported maximum of {MAX_RANK}"
            )));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || a.chars().any(char::is_whitespace) {
                return Err(Error::InvalidMatrix(format!("bad generator name {a:?}")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidMatrix(format!("duplicate generator name {a}")));
            }
        }
        if orders.len() != n || orders.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMatrix(format!("matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if orders[i][i] != Order::Finite(1) {
                return Err(Error::InvalidMatrix(format!(
                    "diagonal entry ({0},{0}) must be 1, found {1}",
                    names[i], orders[i][i]
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if orders[i][j] != orders[j][i] {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric entries m({a},{b}) = {} and m({b},{a}) = {}",
                        orders[i][j],
                        orders[j][i],
                        a = names[i],
                        b = names[j]
                    )));
                }
                if let Order::Finite(m) = orders[i][j] {
                    if m < 2 {
                        return Err(Error::InvalidMatrix(format!(
                            "off-diagonal entry m({},{}) = {m} must be at least 2",
                            names[i], names[j]
                        )));
                    }
                }
            }
        }
        Ok(CoxeterSystem {
            names,
            orders,
            memo_cap: DEFAULT_MEMO_CAP,
        })
    }

    /// Builds a system from a closure over unordered pairs `i < j`.
    pub fn from_fn(names: Vec<String>, mut m: impl FnMut(usize, usize) -> Order) -> Result<Self> {
        let n = names.len();
        let mut orders = vec![vec![Order::Finite(1); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let o = m(i, j);
                orders[i][j] = o;
                orders[j][i] = o;
            }
        }
        Self::new(names, orders)
    }

    /// Right-angled Coxeter system of a graph: `m = 2` on edges, `inf` otherwise.
    pub fn right_angled(names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_fn(names, |i, j| {
            if edges.iter().any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i)) {
                Order::Finite(2)
            } else {
                Order::Infinite
            }
        })
    }

    pub fn with_memo_cap(mut self, cap: usize) -> Self {
        self.memo_cap = cap.max(1);
        self
    }

    pub fn memo_cap(&self) -> usize {
        self.memo_cap
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Gen) -> &str {
        &self.names[s as usize]
    }

    pub fn generator(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| i as Gen)
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        (0..self.rank()).map(|i| i as Gen)
    }

    pub fn order(&self, s: Gen, t: Gen) -> Order {
        self.orders[s as usize][t as usize]
    }

    pub fn orders(&self) -> &[Vec<Order>] {
        &self.orders
    }

    fn off_diagonal(&self) -> impl Iterator<Item = Order> + '_ {
        let n = self.rank();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| self.orders[i][j]))
    }

    /// Every off-diagonal entry is `2` or `inf`.
    pub fn is_right_angled(&self) -> bool {
        self.off_diagonal()
            .all(|o| matches!(o, Order::Finite(2) | Order::Infinite))
    }

    /// Every finite off-diagonal entry is even.
    pub fn is_even(&self) -> bool {
        self.off_diagonal()
            .all(|o| o.finite().is_none_or(|m| m % 2 == 0))
    }

    /// Renders a word with generator names separated by `.`; the empty word is `1`.
    pub fn format_word(&self, letters: &[Gen]) -> String {
        if letters.is_empty() {
            return "1".to_string();
        }
        letters
            .iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Parses the output of [`format_word`](Self::format_word) (also accepts
    /// whitespace-separated names).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::default());
        }
        let letters = text
            .split(|c: char| c == '.' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                self.generator(t)
                    .ok_or_else(|| Error::parse(1, format!("unknown generator {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::new(letters))
    }

    pub fn format_subset(&self, subset: &[Gen]) -> String {
        let inner: Vec<&str> = subset.iter().map(|&s| self.name(s)).collect();
        format!("{{{}}}", inner.join(","))
    }

    pub(crate) fn check_subset(&self, subset: &[Gen]) {
        debug_assert!(subset.iter().all(|&s| (s as usize) < self.rank()));
    }
}

pub fn mask_of(subset: &[Gen]) -> u64 {
    subset.iter().fold(0u64, |m, &s| m | (1u64 << s))
}

pub fn members_of(mask: u64) -> Vec<Gen> {
    (0..64u8).filter(|&s| mask & (1u64 << s) != 0).collect()
}
