//! Coxeter matrix file format.
//!
//! ```text
//! coxeter 3
//! a b c
//! 1 3 2
//! 3 1 5
//! 2 5 1
//! ```
//!
//! `#` starts a comment; entries are positive integers or `inf`.

use super::{CoxeterSystem, Order};
use crate::error::{Error, Result};

impl CoxeterSystem {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (lineno, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty file, expected `coxeter <n>`"))?;
        let mut head = header.split_whitespace();
        if head.next() != Some("coxeter") {
            return Err(Error::parse(lineno, "expected `coxeter <n>` header"));
        }
        let n: usize = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::parse(lineno, "missing or malformed generator count"))?;
        if head.next().is_some() {
            return Err(Error::parse(lineno, "trailing tokens after generator count"));
        }

        let (lineno, names_line) = lines
            .next()
            .ok_or_else(|| Error::parse(lineno + 1, "missing generator names"))?;
        let names: Vec<String> = names_line.split_whitespace().map(String::from).collect();
        if names.len() != n {
            return Err(Error::parse(
                lineno,
                format!("expected {n} generator names, found {}", names.len()),
            ));
        }

        let mut orders = Vec::with_capacity(n);
        let mut last = lineno;
        for row in 0..n {
            let (lineno, line) = lines
                .next()
                .ok_or_else(|| Error::parse(last + 1, format!("missing matrix row {}", row + 1)))?;
            last = lineno;
            let entries = line
                .split_whitespace()
                .map(|tok| parse_entry(tok).ok_or_else(|| Error::parse(lineno, format!("bad entry {tok:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if entries.len() != n {
                return Err(Error::parse(
                    lineno,
                    format!("expected {n} entries, found {}", entries.len()),
                ));
            }
            orders.push(entries);
        }
        if let Some((lineno, _)) = lines.next() {
            return Err(Error::parse(lineno, "unexpected content after matrix"));
        }
        CoxeterSystem::new(names, orders)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("coxeter {}\n{}\n", self.rank(), self.names.join(" "));
        for row in &self.orders {
            let cells: Vec<String> = row.iter().map(Order::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

fn parse_entry(tok: &str) -> Option<Order> {
    if tok == "inf" {
        return Some(Order::Infinite);
    }
    let m: u32 = tok.parse().ok()?;
    (m >= 1).then_some(Order::Finite(m))
}
