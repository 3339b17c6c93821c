//! Text format for complexes.
//!
//! ```text
//! # a square
//! complex 4
//! a b c d
//! a b
//! b c
//! c d
//! d a
//! ```
//!
//! The header gives the vertex count, the next line the vertex labels (absent
//! when the count is zero), and each further line one simplex. A line `()`
//! stands for the empty simplex, so `complex 0` followed by `()` is `{∅}`
//! and `complex 0` alone is the void complex.

use std::collections::HashMap;

use super::SimplicialComplex;
use crate::error::{Error, Result};

impl SimplicialComplex {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing 'complex <n>' header"))?;
        let mut it = header.split_whitespace();
        if it.next() != Some("complex") {
            return Err(Error::parse(hline, "expected 'complex <n>'"));
        }
        let n: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(hline, "vertex count must be a non-negative integer"))?;
        if it.next().is_some() {
            return Err(Error::parse(hline, "trailing tokens after vertex count"));
        }

        let labels: Vec<String> = if n == 0 {
            Vec::new()
        } else {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| Error::parse(hline + 1, "missing vertex label line"))?;
            let labels: Vec<String> = l.split_whitespace().map(str::to_string).collect();
            if labels.len() != n {
                return Err(Error::parse(
                    ln,
                    format!("expected {n} labels, found {}", labels.len()),
                ));
            }
            labels
        };
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != labels.len() {
            return Err(Error::parse(hline + 1, "duplicate vertex label"));
        }

        let mut facets = Vec::new();
        let mut has_empty = false;
        for (ln, l) in lines {
            if l == "()" {
                has_empty = true;
                continue;
            }
            let s = l
                .split_whitespace()
                .map(|t| {
                    index
                        .get(t)
                        .copied()
                        .ok_or_else(|| Error::parse(ln, format!("unknown vertex '{t}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            facets.push(s);
        }
        if n == 0 {
            if !facets.is_empty() {
                return Err(Error::parse(hline, "simplices given for a complex with no vertices"));
            }
            return Ok(if has_empty {
                Self::empty_simplex()
            } else {
                Self::void()
            });
        }
        Self::new(labels, facets)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("complex {}\n", self.vertex_count());
        if self.vertex_count() > 0 {
            out.push_str(&self.labels().join(" "));
            out.push('\n');
        }
        for f in self.facets() {
            if f.is_empty() {
                out.push_str("()\n");
            } else {
                let names: Vec<&str> = f.iter().map(|&v| self.label(v)).collect();
                out.push_str(&names.join(" "));
                out.push('\n');
            }
        }
        out
    }
}
