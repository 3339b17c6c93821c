//! Simplicial chain complexes, chain maps and integral homology.

use num_traits::ToPrimitive;
use serde::Serialize;
use std::collections::HashMap;

use super::smith::smith_invariants;
use super::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::limits;

/// Integer matrix as `(row, col, value)` triplets; duplicates add up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(smith_invariants(self)?.rank)
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for &(r, c, v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
        for &(r, k, v) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, w) in row {
                    *acc.entry((r, c)).or_default() += v * w;
                }
            }
        }
        let mut entries: Vec<_> = acc
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        entries.sort_unstable();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        let mut acc: HashMap<(usize, usize), i64> = HashMap::new();
        for &(r, c, v) in &self.entries {
            *acc.entry((r, c)).or_default() += v;
        }
        acc.values().all(|&v| v == 0)
    }

    fn negated(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&(r, c, v)| (r, c, -v)).collect(),
        }
    }

    /// Copies the entries into `out` at the given offsets.
    fn place(&self, out: &mut Vec<(usize, usize, i64)>, row_off: usize, col_off: usize) {
        out.extend(
            self.entries
                .iter()
                .map(|&(r, c, v)| (r + row_off, c + col_off, v)),
        );
    }
}

/// `C_0 <- C_1 <- ... <- C_top`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    /// `boundaries[k]` is `∂_k : C_k -> C_{k-1}`; `boundaries[0]` is the
    /// zero map to the zero module.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Chain complex of the given simplices (grouped by dimension, sorted,
    /// closed under faces). Simplices are oriented by increasing vertex index.
    pub fn from_simplices(by_dim: &[Vec<Simplex>]) -> Result<Self> {
        let total: usize = by_dim.iter().map(Vec::len).sum();
        if total > limits::max_cells() {
            return Err(Error::ResourceLimit {
                what: "chain complex cells",
                limit: limits::max_cells(),
            });
        }
        let dims: Vec<usize> = by_dim.iter().map(Vec::len).collect();
        let mut boundaries = Vec::with_capacity(dims.len());
        if let Some(&d0) = dims.first() {
            boundaries.push(SparseMatrix::zero(0, d0));
        }
        for k in 1..by_dim.len() {
            let index: HashMap<&[usize], usize> = by_dim[k - 1]
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect();
            let mut entries = Vec::with_capacity(by_dim[k].len() * (k + 1));
            let mut face = Vec::with_capacity(k);
            for (j, s) in by_dim[k].iter().enumerate() {
                for skip in 0..s.len() {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                    let i = *index.get(face.as_slice()).ok_or_else(|| {
                        Error::SimplexNotFound(format!("face {face:?} missing from chain basis"))
                    })?;
                    entries.push((i, j, if skip % 2 == 0 { 1 } else { -1 }));
                }
            }
            boundaries.push(SparseMatrix {
                rows: dims[k - 1],
                cols: dims[k],
                entries,
            });
        }
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn top(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    fn boundary(&self, k: usize) -> SparseMatrix {
        match self.boundaries.get(k) {
            Some(m) => m.clone(),
            None => SparseMatrix::zero(if k == 0 { 0 } else { self.dim(k - 1) }, self.dim(k)),
        }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let n = self.dims.len().max(other.dims.len());
        let dims: Vec<usize> = (0..n).map(|k| self.dim(k) + other.dim(k)).collect();
        let boundaries = (0..n)
            .map(|k| {
                let (a, b) = (self.boundary(k), other.boundary(k));
                let mut entries = Vec::new();
                a.place(&mut entries, 0, 0);
                b.place(&mut entries, a.rows, a.cols);
                SparseMatrix {
                    rows: a.rows + b.rows,
                    cols: a.cols + b.cols,
                    entries,
                }
            })
            .collect();
        ChainComplex { dims, boundaries }
    }

    /// `∂∘∂ = 0` in every degree.
    pub fn is_valid(&self) -> bool {
        (2..self.dims.len()).all(|k| self.boundaries[k - 1].mul(&self.boundaries[k]).is_zero())
    }

    /// Homology groups `H_0 .. H_{top-1}`.
    pub fn homology(&self) -> Result<Vec<HomologyGroup>> {
        let n = self.dims.len();
        let mut ranks = Vec::with_capacity(n + 1);
        let mut torsion = Vec::with_capacity(n + 1);
        for k in 0..=n {
            if k == 0 || k == n {
                ranks.push(0);
                torsion.push(Vec::new());
                continue;
            }
            let s = smith_invariants(&self.boundaries[k])?;
            ranks.push(s.rank);
            torsion.push(
                s.torsion
                    .iter()
                    .map(|t| {
                        t.to_u64().ok_or(Error::ResourceLimit {
                            what: "torsion coefficient size",
                            limit: u64::MAX as usize,
                        })
                    })
                    .collect::<Result<Vec<u64>>>()?,
            );
        }
        Ok((0..n)
            .map(|k| HomologyGroup {
                rank: self.dims[k] - ranks[k] - ranks[k + 1],
                torsion: torsion[k + 1].clone(),
            })
            .collect())
    }

    pub fn betti_numbers(&self) -> Result<Vec<usize>> {
        Ok(self.homology()?.into_iter().map(|g| g.rank).collect())
    }
}

/// Degree-wise matrices `target_k x source_k`.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub degrees: Vec<SparseMatrix>,
}

impl ChainMap {
    /// Chain map induced by a simplicial vertex map. Simplices whose image
    /// has fewer vertices go to zero; otherwise the sign is that of the
    /// permutation sorting the image.
    pub fn from_vertex_map(
        source: &[Vec<Simplex>],
        target: &[Vec<Simplex>],
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let mut degrees = Vec::with_capacity(source.len());
        for (k, simplices) in source.iter().enumerate() {
            let tgt: &[Simplex] = target.get(k).map_or(&[], Vec::as_slice);
            let index: HashMap<&[usize], usize> =
                tgt.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            let mut entries = Vec::with_capacity(simplices.len());
            for (j, s) in simplices.iter().enumerate() {
                let image: Vec<usize> = s.iter().map(|&v| f(v)).collect();
                let (sorted, sign) = sort_with_sign(image);
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let i = *index.get(sorted.as_slice()).ok_or_else(|| {
                    Error::SimplexNotFound(format!("image {sorted:?} missing from target"))
                })?;
                entries.push((i, j, sign));
            }
            degrees.push(SparseMatrix {
                rows: tgt.len(),
                cols: simplices.len(),
                entries,
            });
        }
        Ok(ChainMap { degrees })
    }

    fn degree(&self, k: usize, rows: usize, cols: usize) -> SparseMatrix {
        self.degrees
            .get(k)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zero(rows, cols))
    }

    /// `c -> (self c, other c)` into the direct sum of targets.
    pub fn pair(&self, other: &ChainMap) -> ChainMap {
        let n = self.degrees.len().max(other.degrees.len());
        let degrees = (0..n)
            .map(|k| {
                let a = self.degrees.get(k);
                let b = other.degrees.get(k);
                let cols = a.or(b).map_or(0, |m| m.cols);
                let a = a.cloned().unwrap_or_else(|| SparseMatrix::zero(0, cols));
                let b = b.cloned().unwrap_or_else(|| SparseMatrix::zero(0, cols));
                let mut entries = Vec::new();
                a.place(&mut entries, 0, 0);
                b.place(&mut entries, a.rows, 0);
                SparseMatrix {
                    rows: a.rows + b.rows,
                    cols,
                    entries,
                }
            })
            .collect();
        ChainMap { degrees }
    }

    /// `(a, b) -> self a + other b` from the direct sum of sources.
    pub fn copair(&self, other: &ChainMap) -> ChainMap {
        let n = self.degrees.len().max(other.degrees.len());
        let degrees = (0..n)
            .map(|k| {
                let a = self.degrees.get(k);
                let b = other.degrees.get(k);
                let rows = a.or(b).map_or(0, |m| m.rows);
                let a = a.cloned().unwrap_or_else(|| SparseMatrix::zero(rows, 0));
                let b = b.cloned().unwrap_or_else(|| SparseMatrix::zero(rows, 0));
                let mut entries = Vec::new();
                a.place(&mut entries, 0, 0);
                b.place(&mut entries, 0, a.cols);
                SparseMatrix {
                    rows,
                    cols: a.cols + b.cols,
                    entries,
                }
            })
            .collect();
        ChainMap { degrees }
    }

    pub fn negated(&self) -> ChainMap {
        ChainMap {
            degrees: self.degrees.iter().map(SparseMatrix::negated).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> ChainMap {
        let n = self.degrees.len().min(first.degrees.len());
        ChainMap {
            degrees: (0..n).map(|k| self.degrees[k].mul(&first.degrees[k])).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(SparseMatrix::is_zero)
    }

    /// Ranks of the induced maps `H_k(source) -> H_k(target)` over `Q`,
    /// read off from the long exact sequence of the mapping cone.
    pub fn homology_ranks(&self, source: &ChainComplex, target: &ChainComplex) -> Result<Vec<usize>> {
        let cone = self.cone(source, target);
        let bs = source.betti_numbers()?;
        let bt = target.betti_numbers()?;
        let bc = cone.betti_numbers()?;
        let n = source.dims.len().max(target.dims.len());
        let get = |v: &[usize], k: usize| v.get(k).copied().unwrap_or(0) as i64;
        let mut out = Vec::with_capacity(n);
        let mut prev = 0i64;
        for k in 0..n {
            let below = if k == 0 { 0 } else { get(&bs, k - 1) };
            let rho = get(&bt, k) + below - prev - get(&bc, k);
            debug_assert!(rho >= 0);
            out.push(rho.max(0) as usize);
            prev = rho;
        }
        Ok(out)
    }

    /// `Cone_k = A_{k-1} ⊕ B_k` with `∂(a, b) = (-∂a, f a + ∂b)`.
    fn cone(&self, a: &ChainComplex, b: &ChainComplex) -> ChainComplex {
        let n = a.dims.len().max(b.dims.len()) + 1;
        let ad = |k: isize| if k < 0 { 0 } else { a.dim(k as usize) };
        let dims: Vec<usize> = (0..n).map(|k| ad(k as isize - 1) + b.dim(k)).collect();
        let mut boundaries = vec![SparseMatrix::zero(0, dims[0])];
        for k in 1..n {
            let mut entries = Vec::new();
            let a_below = ad(k as isize - 2);
            let a_here = ad(k as isize - 1);
            if k >= 2 {
                a.boundary(k - 1).negated().place(&mut entries, 0, 0);
            }
            self.degree(k - 1, b.dim(k - 1), a_here)
                .place(&mut entries, a_below, 0);
            b.boundary(k).place(&mut entries, a_below, a_here);
            boundaries.push(SparseMatrix {
                rows: dims[k - 1],
                cols: dims[k],
                entries,
            });
        }
        ChainComplex { dims, boundaries }
    }
}

fn sort_with_sign(mut v: Vec<usize>) -> (Vec<usize>, i64) {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (v, sign)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_z(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

/// Homology of a simplicial complex, optionally reduced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub reduced: bool,
    /// Rank of the reduced group in degree -1 (one exactly for `{∅}`).
    pub minus_one: usize,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn group(&self, k: usize) -> HomologyGroup {
        self.groups.get(k).cloned().unwrap_or(HomologyGroup {
            rank: 0,
            torsion: Vec::new(),
        })
    }

    pub fn betti(&self, k: usize) -> usize {
        self.groups.get(k).map_or(0, |g| g.rank)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    /// All (reduced) groups vanish, including degree -1.
    pub fn is_acyclic(&self) -> bool {
        self.minus_one == 0 && self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Reduced homology of a `d`-sphere (`d = -1` allowed).
    pub fn is_sphere_like(&self, d: isize) -> bool {
        assert!(self.reduced, "sphere test needs reduced homology");
        if d == -1 {
            return self.minus_one == 1 && self.groups.iter().all(HomologyGroup::is_zero);
        }
        self.minus_one == 0
            && self
                .groups
                .iter()
                .enumerate()
                .all(|(k, g)| if k as isize == d { g.is_z() } else { g.is_zero() })
            && self.groups.len() as isize > d
    }

    pub fn euler_characteristic(&self) -> i64 {
        let base: i64 = self
            .groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum();
        base - self.minus_one as i64
    }
}

impl std::fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.minus_one > 0 {
            parts.push(format!("H-1=Z^{}", self.minus_one));
        }
        for (k, g) in self.groups.iter().enumerate() {
            parts.push(format!("H{k}={g}"));
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl SimplicialComplex {
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        ChainComplex::from_simplices(&self.simplices_by_dim())
    }

    pub fn homology(&self, reduced: bool) -> Result<HomologyProfile> {
        if self.is_void() {
            return Ok(HomologyProfile {
                reduced,
                minus_one: 0,
                groups: Vec::new(),
            });
        }
        if self.vertex_count() == 0 {
            // {∅}
            return Ok(HomologyProfile {
                reduced,
                minus_one: usize::from(reduced),
                groups: Vec::new(),
            });
        }
        let mut groups = self.chain_complex()?.homology()?;
        if reduced {
            groups[0].rank -= 1;
        }
        Ok(HomologyProfile {
            reduced,
            minus_one: 0,
            groups,
        })
    }

    pub fn reduced_homology(&self) -> Result<HomologyProfile> {
        self.homology(true)
    }

    pub fn is_acyclic(&self) -> Result<bool> {
        Ok(self.reduced_homology()?.is_acyclic())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> SimplicialComplex {
        // 7-vertex Möbius torus
        let mut f = Vec::new();
        for i in 0..7usize {
            f.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            f.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        SimplicialComplex::new((0..7).map(|i| format!("t{i}")).collect(), f).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        SimplicialComplex::new(
            (0..6).map(|i| format!("p{i}")).collect(),
            vec![
                vec![0, 1, 2],
                vec![0, 2, 3],
                vec![0, 3, 4],
                vec![0, 4, 5],
                vec![0, 5, 1],
                vec![1, 2, 4],
                vec![2, 3, 5],
                vec![3, 4, 1],
                vec![4, 5, 2],
                vec![5, 1, 3],
            ],
        )
        .unwrap()
    }

    #[test]
    fn sphere_homology() {
        let s2 = SimplicialComplex::simplex_boundary(&["a", "b", "c", "d"]).unwrap();
        let h = s2.reduced_homology().unwrap();
        assert!(h.is_sphere_like(2));
        assert_eq!(h.to_string(), "H0=0 H1=0 H2=Z");
        assert!(s2.chain_complex().unwrap().is_valid());
    }

    #[test]
    fn torus_and_projective_plane() {
        let t = torus().homology(false).unwrap();
        assert_eq!(t.betti_numbers(), vec![1, 2, 1]);
        let p = rp2().homology(false).unwrap();
        assert_eq!(p.betti_numbers(), vec![1, 0, 0]);
        assert_eq!(p.group(1).torsion, vec![2]);
        assert_eq!(p.euler_characteristic(), 1);
    }

    #[test]
    fn degenerate_complexes() {
        let e = SimplicialComplex::empty_simplex().reduced_homology().unwrap();
        assert!(e.is_sphere_like(-1));
        assert!(!e.is_acyclic());
        let v = SimplicialComplex::void().reduced_homology().unwrap();
        assert!(v.is_acyclic());
        let pt = SimplicialComplex::simplex(&["x"]).unwrap();
        assert!(pt.is_acyclic().unwrap());
        let s0 = SimplicialComplex::from_labeled(&[vec!["a"], vec!["b"]]).unwrap();
        assert!(s0.reduced_homology().unwrap().is_sphere_like(0));
    }

    #[test]
    fn inclusion_ranks() {
        // circle into disk kills H1
        let c = SimplicialComplex::simplex_boundary(&["a", "b", "c"]).unwrap();
        let d = SimplicialComplex::simplex(&["a", "b", "c"]).unwrap();
        let cc = c.chain_complex().unwrap();
        let dc = d.chain_complex().unwrap();
        let f = ChainMap::from_vertex_map(&c.simplices_by_dim(), &d.simplices_by_dim(), |v| v)
            .unwrap();
        assert_eq!(f.homology_ranks(&cc, &dc).unwrap(), vec![1, 0, 0]);
        // identity on the circle
        let id = ChainMap::from_vertex_map(&c.simplices_by_dim(), &c.simplices_by_dim(), |v| v)
            .unwrap();
        assert_eq!(id.homology_ranks(&cc, &cc).unwrap(), vec![1, 1]);
    }

    #[test]
    fn degree_two_map_of_circle() {
        // hexagon wrapping twice around a triangle
        let hex = SimplicialComplex::cycle(6, "h").unwrap();
        let tri = SimplicialComplex::cycle(3, "t").unwrap();
        let f = ChainMap::from_vertex_map(&hex.simplices_by_dim(), &tri.simplices_by_dim(), |v| {
            v % 3
        })
        .unwrap();
        let ranks = f
            .homology_ranks(&hex.chain_complex().unwrap(), &tri.chain_complex().unwrap())
            .unwrap();
        assert_eq!(ranks, vec![1, 1]);
        // collapsing map to a point
        let pt = SimplicialComplex::simplex(&["p"]).unwrap();
        let g = ChainMap::from_vertex_map(&hex.simplices_by_dim(), &pt.simplices_by_dim(), |_| 0)
            .unwrap();
        let ranks = g
            .homology_ranks(&hex.chain_complex().unwrap(), &pt.chain_complex().unwrap())
            .unwrap();
        assert_eq!(ranks, vec![1, 0]);
    }

    #[test]
    fn composition_and_sums() {
        let c = SimplicialComplex::cycle(4, "c").unwrap();
        let s = c.simplices_by_dim();
        let id = ChainMap::from_vertex_map(&s, &s, |v| v).unwrap();
        let diff = id.copair(&id.negated()).after(&id.pair(&id));
        assert!(diff.is_zero());
        let cc = c.chain_complex().unwrap();
        let sum = cc.direct_sum(&cc);
        assert_eq!(sum.betti_numbers().unwrap(), vec![2, 2]);
    }
}
