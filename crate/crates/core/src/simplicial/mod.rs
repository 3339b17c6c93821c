//! Finite abstract simplicial complexes.
//!
//! A complex is stored by its labelled vertices and its facets (maximal
//! simplices, each a sorted list of vertex indices). Two special complexes
//! are distinguished: the *void* complex with no simplices at all, and the
//! complex `{∅}` whose only simplex is the empty one (the (-1)-sphere).

mod chain;
mod io;
mod iso;
mod smith;
mod sphere;

pub use chain::{ChainComplex, ChainMap, HomologyGroup, HomologyProfile, SparseMatrix};
pub use smith::SmithInvariants;
pub use sphere::{DiskCertificate, DiskVerdict, SphereCertificate, SphereVerdict, TopologyCheck};

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::limits;

pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Simplex>,
}

impl SimplicialComplex {
    /// Builds a complex from vertex labels and a list of simplices.
    ///
    /// The simplices need not be maximal; non-maximal ones are dropped.
    /// Vertices not covered by any simplex become 0-simplices.
    pub fn new(labels: Vec<String>, simplices: Vec<Simplex>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::LabelCollision(l.clone()));
            }
        }
        let n = labels.len();
        let mut covered = vec![false; n];
        let mut facets: Vec<Simplex> = Vec::with_capacity(simplices.len());
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if let Some(&v) = s.iter().find(|&&v| v >= n) {
                return Err(Error::SimplexNotFound(format!("vertex index {v} out of range")));
            }
            for &v in &s {
                covered[v] = true;
            }
            facets.push(s);
        }
        for (v, c) in covered.iter().enumerate() {
            if !c {
                facets.push(vec![v]);
            }
        }
        Ok(SimplicialComplex {
            labels,
            facets: maximal_only(facets),
        })
    }

    /// Builds a complex whose facets are given by label lists; vertices are
    /// numbered in order of first appearance.
    pub fn from_labeled<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut simplices = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = Vec::with_capacity(f.len());
            for l in f {
                let l = l.as_ref();
                let v = *index.entry(l.to_string()).or_insert_with(|| {
                    labels.push(l.to_string());
                    labels.len() - 1
                });
                s.push(v);
            }
            simplices.push(s);
        }
        Self::new(labels, simplices)
    }

    /// The complex with no simplices.
    pub fn void() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            facets: Vec::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty_simplex() -> Self {
        SimplicialComplex {
            labels: Vec::new(),
            facets: vec![Vec::new()],
        }
    }

    /// The full simplex on the given labels.
    pub fn simplex<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let n = labels.len();
        Self::new(labels, vec![(0..n).collect()])
    }

    /// The boundary of the simplex on `labels` (a sphere of dimension `len - 2`).
    pub fn simplex_boundary<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let n = labels.len();
        let facets = (0..n)
            .map(|skip| (0..n).filter(|&v| v != skip).collect())
            .collect();
        Self::new(labels, facets)
    }

    /// The `n`-cycle on vertices `{prefix}0 .. {prefix}{n-1}`.
    pub fn cycle(n: usize, prefix: &str) -> Result<Self> {
        let labels = (0..n).map(|i| format!("{prefix}{i}")).collect();
        let facets = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        Self::new(labels, facets)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn simplex_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Simplex> {
        let mut s = labels
            .iter()
            .map(|l| {
                self.vertex(l.as_ref())
                    .ok_or_else(|| Error::SimplexNotFound(l.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        s.sort_unstable();
        Ok(s)
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension; `-1` for `{∅}` and for the void complex.
    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.len() as isize - 1 == d)
    }

    pub fn contains_simplex(&self, s: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(s, f))
    }

    /// All non-empty simplices, grouped by dimension, each group sorted.
    pub fn simplices_by_dim(&self) -> Vec<Vec<Simplex>> {
        closure_by_dim(&self.facets)
    }

    pub fn simplex_count(&self) -> usize {
        self.f_vector().iter().sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices_by_dim().iter().map(Vec::len).collect()
    }

    /// Alternating sum of face counts (the empty simplex is not counted).
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// `{ τ : τ ∩ σ = ∅, τ ∪ σ ∈ K }`.
    pub fn link(&self, sigma: &[usize]) -> Result<Self> {
        let mut sigma = sigma.to_vec();
        sigma.sort_unstable();
        sigma.dedup();
        let containing: Vec<&Simplex> =
            self.facets.iter().filter(|f| is_subset(&sigma, f)).collect();
        if containing.is_empty() {
            let names: Vec<&str> = sigma
                .iter()
                .map(|&v| self.labels.get(v).map_or("?", String::as_str))
                .collect();
            return Err(Error::SimplexNotFound(format!("{{{}}}", names.join(","))));
        }
        let pieces: Vec<Simplex> = containing
            .into_iter()
            .map(|f| f.iter().copied().filter(|v| sigma.binary_search(v).is_err()).collect())
            .collect();
        Ok(self.sub_from_simplices(pieces))
    }

    pub fn link_by_labels<S: AsRef<str>>(&self, sigma: &[S]) -> Result<Self> {
        let s = self.simplex_by_labels(sigma)?;
        self.link(&s)
    }

    /// The closed star of `sigma`: all facets containing it, with their faces.
    pub fn closed_star(&self, sigma: &[usize]) -> Self {
        let pieces = self
            .facets
            .iter()
            .filter(|f| is_subset(sigma, f))
            .cloned()
            .collect();
        self.sub_from_simplices(pieces)
    }

    /// Subcomplex generated by `simplices` (indices into this complex),
    /// keeping only the vertices that occur.
    pub fn sub_from_simplices(&self, simplices: Vec<Simplex>) -> Self {
        if simplices.is_empty() {
            return Self::void();
        }
        let used: BTreeSet<usize> = simplices.iter().flatten().copied().collect();
        let remap: HashMap<usize, usize> =
            used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = used.iter().map(|&v| self.labels[v].clone()).collect();
        let facets = simplices
            .into_iter()
            .map(|s| {
                let mut t: Simplex = s.iter().map(|v| remap[v]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        SimplicialComplex {
            labels,
            facets: maximal_only(facets),
        }
    }

    /// Full subcomplex on a vertex set.
    pub fn induced(&self, vertices: &BTreeSet<usize>) -> Self {
        let pieces: Vec<Simplex> = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|v| vertices.contains(v)).collect::<Vec<_>>())
            .filter(|s: &Vec<usize>| !s.is_empty())
            .collect();
        self.sub_from_simplices(pieces)
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.labels.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for f in &self.facets {
            for w in f.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_unstable();
        out
    }

    /// Components as standalone complexes.
    pub fn component_complexes(&self) -> Vec<Self> {
        self.components()
            .into_iter()
            .map(|c| self.induced(&c.into_iter().collect()))
            .collect()
    }

    pub fn cone(&self, apex: &str) -> Result<Self> {
        if self.vertex(apex).is_some() {
            return Err(Error::LabelCollision(apex.to_string()));
        }
        let mut labels = self.labels.clone();
        labels.push(apex.to_string());
        let a = labels.len() - 1;
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.push(a);
                g
            })
            .collect();
        Self::new(labels, facets)
    }

    /// Simplicial join; facets are the pairwise unions of facets.
    pub fn join(&self, other: &Self) -> Result<Self> {
        for l in &other.labels {
            if self.vertex(l).is_some() {
                return Err(Error::LabelCollision(l.clone()));
            }
        }
        let shift = self.labels.len();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                let mut h = f.clone();
                h.extend(g.iter().map(|v| v + shift));
                facets.push(h);
            }
        }
        if facets.is_empty() {
            return Ok(Self::void());
        }
        Ok(SimplicialComplex {
            labels,
            facets: maximal_only(facets),
        })
    }

    /// Label used for the barycentre of a simplex: `{a,b,c}`.
    pub fn simplex_label(&self, s: &[usize]) -> String {
        let names: Vec<&str> = s.iter().map(|&v| self.labels[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Vertices are the non-empty simplices; facets are the maximal chains.
    pub fn barycentric_subdivision(&self) -> Result<Self> {
        let chain_count: usize = self
            .facets
            .iter()
            .map(|f| (1..=f.len()).product::<usize>())
            .sum();
        if chain_count > limits::max_cells() {
            return Err(Error::ResourceLimit {
                what: "barycentric subdivision facets",
                limit: limits::max_cells(),
            });
        }
        let simplices: Vec<Simplex> = self.simplices_by_dim().into_iter().flatten().collect();
        let index: HashMap<&Simplex, usize> =
            simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let labels = simplices.iter().map(|s| self.simplex_label(s)).collect();
        let mut facets = Vec::with_capacity(chain_count);
        for f in &self.facets {
            if f.is_empty() {
                continue;
            }
            for perm in permutations(f) {
                let mut chain = Vec::with_capacity(perm.len());
                let mut prefix: Vec<usize> = Vec::with_capacity(perm.len());
                for v in perm {
                    prefix.push(v);
                    let mut key = prefix.clone();
                    key.sort_unstable();
                    chain.push(index[&key]);
                }
                facets.push(chain);
            }
        }
        if facets.is_empty() {
            return Ok(if self.is_void() { Self::void() } else { Self::empty_simplex() });
        }
        Self::new(labels, facets)
    }

    /// Adjacency lists of the 1-skeleton.
    pub fn neighbours(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.labels.len()];
        for f in &self.facets {
            for (i, &a) in f.iter().enumerate() {
                for &b in &f[i + 1..] {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        adj
    }

    /// True iff every clique of the 1-skeleton spans a simplex.
    pub fn is_flag(&self) -> bool {
        self.missing_face().is_none()
    }

    /// A maximal clique of the 1-skeleton that does not span a simplex.
    pub fn missing_face(&self) -> Option<Simplex> {
        let adj = self.neighbours();
        let mut found = None;
        let all: BTreeSet<usize> = (0..self.labels.len()).collect();
        bron_kerbosch(&adj, Vec::new(), all, BTreeSet::new(), &mut |clique| {
            if found.is_none() {
                let mut c = clique.to_vec();
                c.sort_unstable();
                if !self.contains_simplex(&c) {
                    found = Some(c);
                }
            }
        });
        found
    }

    /// `(d-1)`-simplices lying in exactly one facet, for pure `d`-dimensional
    /// complexes; the generated subcomplex is the pseudomanifold boundary.
    pub fn boundary_ridges(&self) -> Vec<Simplex> {
        let d = self.dim();
        if d < 1 {
            return Vec::new();
        }
        let mut count: HashMap<Simplex, usize> = HashMap::new();
        for f in self.facets.iter().filter(|f| f.len() as isize - 1 == d) {
            for skip in 0..f.len() {
                let r: Simplex = f
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *count.entry(r).or_default() += 1;
            }
        }
        let mut out: Vec<Simplex> = count
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(r, _)| r)
            .collect();
        out.sort_unstable();
        out
    }

    /// The relabelled copy of this complex with every label prefixed.
    pub fn with_prefix(&self, prefix: &str) -> Self {
        SimplicialComplex {
            labels: self.labels.iter().map(|l| format!("{prefix}{l}")).collect(),
            facets: self.facets.clone(),
        }
    }
}

/// Non-empty faces of the given simplices (sorted vertex lists), grouped by
/// dimension, each group sorted.
pub fn closure_by_dim(simplices: &[Simplex]) -> Vec<Vec<Simplex>> {
    let d = simplices.iter().map(Vec::len).max().unwrap_or(0);
    let mut sets: Vec<HashSet<Simplex>> = vec![HashSet::new(); d];
    for f in simplices {
        for_each_face(f, |face| {
            if !face.is_empty() {
                sets[face.len() - 1].insert(face.to_vec());
            }
        });
    }
    sets.into_iter()
        .map(|s| {
            let mut v: Vec<Simplex> = s.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect()
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    // both sorted
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Calls `f` on every face (including the empty face and `s` itself).
pub(crate) fn for_each_face(s: &[usize], mut f: impl FnMut(&[usize])) {
    let n = s.len();
    assert!(n < 32, "simplex too large to enumerate faces");
    let mut buf = Vec::with_capacity(n);
    for mask in 0u32..(1u32 << n) {
        buf.clear();
        for (i, &v) in s.iter().enumerate() {
            if mask & (1 << i) != 0 {
                buf.push(v);
            }
        }
        f(&buf);
    }
}

fn maximal_only(mut facets: Vec<Simplex>) -> Vec<Simplex> {
    for f in facets.iter_mut() {
        f.sort_unstable();
        f.dedup();
    }
    facets.sort_unstable();
    facets.dedup();
    // index facets by vertex to find supersets quickly
    let mut by_vertex: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for &v in f {
            by_vertex.entry(v).or_default().push(i);
        }
    }
    let keep: Vec<bool> = facets
        .iter()
        .enumerate()
        .map(|(i, f)| match f.first() {
            None => facets.len() == 1,
            Some(v) => !by_vertex[v]
                .iter()
                .any(|&j| j != i && facets[j].len() > f.len() && is_subset(f, &facets[j])),
        })
        .collect();
    facets
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(f, _)| f)
        .collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn bron_kerbosch(
    adj: &[BTreeSet<usize>],
    r: Vec<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    report: &mut impl FnMut(&[usize]),
) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            report(&r);
        }
        return;
    }
    let pivot = *p.union(&x).max_by_key(|&&u| adj[u].intersection(&p).count()).unwrap();
    let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.intersection(&adj[v]).copied().collect();
        let x2 = x.intersection(&adj[v]).copied().collect();
        bron_kerbosch(adj, r2, p2, x2, report);
        p.remove(&v);
        x.insert(v);
    }
}
