//! Finite-type recognition of standard parabolic subgroups.
//!
//! The Coxeter diagram induced on `T` is split into connected components and
//! each component is matched against the irreducible finite types. Orders
//! come from the closed formulas for each type.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{CoxeterSystem, Gen, Order};
use crate::error::{Error, Result};

/// Irreducible finite Coxeter types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    /// Dihedral `I_2(m)` with `m >= 3`; `I_2(3) = A_2`, `I_2(4) = B_2`.
    I2(u32),
}

impl FiniteType {
    pub fn rank(self) -> usize {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 | FiniteType::H4 => 4,
            FiniteType::H3 => 3,
            FiniteType::I2(_) => 2,
        }
    }

    pub fn order(self) -> BigUint {
        let fact = |n: usize| (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k);
        match self {
            FiniteType::A(n) => fact(n + 1),
            FiniteType::B(n) => (BigUint::one() << n) * fact(n),
            FiniteType::D(n) => (BigUint::one() << (n - 1)) * fact(n),
            FiniteType::E6 => BigUint::from(51_840u64),
            FiniteType::E7 => BigUint::from(2_903_040u64),
            FiniteType::E8 => BigUint::from(696_729_600u64),
            FiniteType::F4 => BigUint::from(1_152u64),
            FiniteType::H3 => BigUint::from(120u64),
            FiniteType::H4 => BigUint::from(14_400u64),
            FiniteType::I2(m) => BigUint::from(2 * m as u64),
        }
    }

    /// Number of reflections (positive roots).
    pub fn reflection_count(self) -> usize {
        match self {
            FiniteType::A(n) => n * (n + 1) / 2,
            FiniteType::B(n) => n * n,
            FiniteType::D(n) => n * (n - 1),
            FiniteType::E6 => 36,
            FiniteType::E7 => 63,
            FiniteType::E8 => 120,
            FiniteType::F4 => 24,
            FiniteType::H3 => 15,
            FiniteType::H4 => 60,
            FiniteType::I2(m) => m as usize,
        }
    }

    pub fn label(self) -> String {
        match self {
            FiniteType::A(n) => format!("A{n}"),
            FiniteType::B(n) => format!("B{n}"),
            FiniteType::D(n) => format!("D{n}"),
            FiniteType::E6 => "E6".into(),
            FiniteType::E7 => "E7".into(),
            FiniteType::E8 => "E8".into(),
            FiniteType::F4 => "F4".into(),
            FiniteType::H3 => "H3".into(),
            FiniteType::H4 => "H4".into(),
            FiniteType::I2(m) => format!("I2({m})"),
        }
    }
}

impl CoxeterSystem {
    /// Connected components of the diagram on `subset` (edges where `m >= 3`).
    pub fn diagram_components(&self, subset: &[Gen]) -> Vec<Vec<Gen>> {
        self.check_subset(subset);
        let mut seen = vec![false; subset.len()];
        let mut out = Vec::new();
        for start in 0..subset.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![subset[start]];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..subset.len() {
                    if !seen[j] && self.order(subset[i], subset[j]) != Order::Finite(2) {
                        seen[j] = true;
                        comp.push(subset[j]);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Finite types of the irreducible components of `W_T`, or `None` if `W_T`
    /// is infinite.
    pub fn classify(&self, subset: &[Gen]) -> Option<Vec<FiniteType>> {
        self.diagram_components(subset)
            .iter()
            .map(|c| self.classify_irreducible(c))
            .collect()
    }

    pub fn is_spherical(&self, subset: &[Gen]) -> bool {
        self.classify(subset).is_some()
    }

    /// `|W_T|` for spherical `T`.
    pub fn spherical_order(&self, subset: &[Gen]) -> Result<BigUint> {
        let types = self
            .classify(subset)
            .ok_or_else(|| Error::NotSpherical(self.format_subset(subset)))?;
        Ok(types
            .into_iter()
            .fold(BigUint::one(), |acc, t| acc * t.order()))
    }

    /// Number of reflections in the finite parabolic `W_T`.
    pub fn reflection_count(&self, subset: &[Gen]) -> Result<usize> {
        let types = self
            .classify(subset)
            .ok_or_else(|| Error::NotSpherical(self.format_subset(subset)))?;
        Ok(types.into_iter().map(FiniteType::reflection_count).sum())
    }

    fn classify_irreducible(&self, comp: &[Gen]) -> Option<FiniteType> {
        let k = comp.len();
        if k == 1 {
            return Some(FiniteType::A(1));
        }
        // adjacency within the component, with labels
        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); k];
        let mut edges = 0usize;
        for i in 0..k {
            for j in i + 1..k {
                match self.order(comp[i], comp[j]) {
                    Order::Finite(2) => {}
                    Order::Infinite => return None,
                    Order::Finite(m) => {
                        adj[i].push((j, m));
                        adj[j].push((i, m));
                        edges += 1;
                    }
                }
            }
        }
        if edges != k - 1 {
            return None; // contains a cycle
        }
        if k == 2 {
            return Some(FiniteType::I2(adj[0][0].1));
        }
        let max_deg = adj.iter().map(Vec::len).max().unwrap_or(0);
        match max_deg {
            2 => classify_path(&adj),
            3 => classify_branched(&adj),
            _ => None,
        }
    }
}

fn classify_path(adj: &[Vec<(usize, u32)>]) -> Option<FiniteType> {
    let k = adj.len();
    let start = adj.iter().position(|a| a.len() == 1)?;
    let mut labels = Vec::with_capacity(k - 1);
    let (mut prev, mut cur) = (usize::MAX, start);
    loop {
        let next = adj[cur].iter().find(|&&(v, _)| v != prev);
        let Some(&(v, m)) = next else { break };
        labels.push(m);
        prev = cur;
        cur = v;
    }
    // orient so that a distinguished label sits at the front
    if labels.last() > labels.first() {
        labels.reverse();
    }
    let rest_are_3 = |ls: &[u32]| ls.iter().all(|&m| m == 3);
    match labels.as_slice() {
        ls if rest_are_3(ls) => Some(FiniteType::A(k)),
        [4, rest @ ..] if rest_are_3(rest) => Some(FiniteType::B(k)),
        [3, 4, 3] => Some(FiniteType::F4),
        [5, 3] => Some(FiniteType::H3),
        [5, 3, 3] => Some(FiniteType::H4),
        _ => None,
    }
}

fn classify_branched(adj: &[Vec<(usize, u32)>]) -> Option<FiniteType> {
    if adj.iter().any(|a| a.iter().any(|&(_, m)| m != 3)) {
        return None;
    }
    let branches: Vec<usize> = (0..adj.len()).filter(|&i| adj[i].len() == 3).collect();
    let &[centre] = branches.as_slice() else {
        return None;
    };
    let mut arms: Vec<usize> = adj[centre]
        .iter()
        .map(|&(first, _)| {
            let (mut prev, mut cur, mut len) = (centre, first, 1);
            while let Some(&(v, _)) = adj[cur].iter().find(|&&(v, _)| v != prev) {
                prev = cur;
                cur = v;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    let k = adj.len();
    match arms.as_slice() {
        [1, 1, _] => Some(FiniteType::D(k)),
        [1, 2, 2] => Some(FiniteType::E6),
        [1, 2, 3] => Some(FiniteType::E7),
        [1, 2, 4] => Some(FiniteType::E8),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("s{i}")).collect()
    }

    fn path(labels: &[u32]) -> CoxeterSystem {
        let n = labels.len() + 1;
        CoxeterSystem::from_fn(names(n), |i, j| {
            if j == i + 1 {
                Order::Finite(labels[i])
            } else {
                Order::Finite(2)
            }
        })
        .unwrap()
    }

    fn all(w: &CoxeterSystem) -> Vec<Gen> {
        w.generators().collect()
    }

    fn order_of(w: &CoxeterSystem) -> Option<u64> {
        w.spherical_order(&all(w))
            .ok()
            .map(|o| o.try_into().unwrap())
    }

    #[test]
    fn empty_subset_is_trivial_group() {
        let w = path(&[3]);
        assert!(w.is_spherical(&[]));
        assert_eq!(w.spherical_order(&[]).unwrap(), BigUint::one());
    }

    #[test]
    fn classical_paths() {
        assert_eq!(order_of(&path(&[3, 3])), Some(24)); // A3
        assert_eq!(order_of(&path(&[4, 3])), Some(48)); // B3
        assert_eq!(order_of(&path(&[3, 4])), Some(48)); // B3 reversed
        assert_eq!(order_of(&path(&[5, 3])), Some(120)); // H3
        assert_eq!(order_of(&path(&[3, 5])), Some(120));
        assert_eq!(order_of(&path(&[5, 3, 3])), Some(14_400)); // H4
        assert_eq!(order_of(&path(&[3, 4, 3])), Some(1_152)); // F4
        assert_eq!(order_of(&path(&[5])), Some(10)); // I2(5)
        assert_eq!(order_of(&path(&[3, 6])), None); // affine G2
        assert_eq!(order_of(&path(&[4, 4])), None); // affine C2
        assert_eq!(order_of(&path(&[5, 3, 3, 3])), None); // H5 does not exist
        assert_eq!(order_of(&path(&[3, 3, 4, 3])), None);
        assert_eq!(order_of(&path(&[4, 3, 4])), None);
    }

    #[test]
    fn branched_diagrams() {
        // D4: centre 1 with arms 0, 2, 3
        let d4 = CoxeterSystem::from_fn(names(4), |i, j| {
            if i == 1 || j == 1 {
                Order::Finite(3)
            } else {
                Order::Finite(2)
            }
        })
        .unwrap();
        assert_eq!(order_of(&d4), Some(192));

        // E6: centre 2, arms 2-5 (1), 2-1-0 (2), 2-3-4 (2)
        let e6_edges = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)];
        let e6 = CoxeterSystem::from_fn(names(6), |i, j| {
            if e6_edges.contains(&(i, j)) {
                Order::Finite(3)
            } else {
                Order::Finite(2)
            }
        })
        .unwrap();
        assert_eq!(order_of(&e6), Some(51_840));

        // affine D4: centre with four arms
        let d4_affine = CoxeterSystem::from_fn(names(5), |i, _| {
            if i == 0 {
                Order::Finite(3)
            } else {
                Order::Finite(2)
            }
        })
        .unwrap();
        assert_eq!(order_of(&d4_affine), None);
    }

    #[test]
    fn infinite_edges_and_cycles() {
        let dinf = CoxeterSystem::from_fn(names(2), |_, _| Order::Infinite).unwrap();
        assert!(!dinf.is_spherical(&[0, 1]));
        assert!(dinf.is_spherical(&[0]));
        let triangle = CoxeterSystem::from_fn(names(3), |_, _| Order::Finite(3)).unwrap();
        assert!(!triangle.is_spherical(&[0, 1, 2]));
        assert!(matches!(
            triangle.spherical_order(&[0, 1, 2]),
            Err(Error::NotSpherical(_))
        ));
    }

    #[test]
    fn reducible_orders_multiply() {
        let w = CoxeterSystem::from_fn(names(3), |i, j| match (i, j) {
            (0, 1) => Order::Finite(5),
            _ => Order::Finite(2),
        })
        .unwrap();
        assert_eq!(order_of(&w), Some(20)); // I2(5) x A1
    }
}
