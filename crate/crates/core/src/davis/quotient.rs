//! Finite quotients `phi: W -> Q`, their kernels `Γ`, and the Γ-orbit
//! structure of walls.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::walls::{walls_through_vertices, UnionFind};
use super::{ChamberComplex, Realization, Wall};
use crate::coxeter::{CoxeterSystem, Element, Gen, Order};
use crate::error::{Error, Result};
use crate::nerve::Nerve;

/// How the images of the generators were obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum QuotientKind {
    /// Integral reflection representation reduced mod `p`, as `dim x dim`
    /// matrices.
    ReflectionModP { p: u64, dim: usize },
    /// Permutations of `{1..degree}`.
    Permutation { degree: usize },
    /// Every generator maps to the identity, so `Γ = W`.
    Trivial,
}

/// A homomorphism from `W` onto a finite group, given by generator images.
/// Group elements are flat `u64` vectors (matrix entries or a permutation).
#[derive(Debug, Clone)]
pub struct FiniteQuotient {
    pub kind: QuotientKind,
    images: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelWitness {
    pub subset: String,
    pub element: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionFreeCertificate {
    pub maximal_subsets: usize,
    pub witnesses: Vec<KernelWitness>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossingWitness {
    pub wall: String,
    pub translate: String,
    pub shared_vertex: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrivialIntersectionCertificate {
    pub walls: usize,
    /// Γ-orbit classes of walls met in the ball, as reflection words.
    pub classes: Vec<Vec<String>>,
    pub witnesses: Vec<CrossingWitness>,
    pub pass: bool,
}

impl FiniteQuotient {
    /// Reflection representation over `Z` reduced mod an odd prime `p`.
    ///
    /// Uses the generalized Cartan matrix `A` with `A_ss = 2` and, for
    /// `s != t`: `0` when `m = 2`; `(-1, -2)` when `m = 4`; `(-1, -3)` when
    /// `m = 6`; `(-2, -2)` when `m = ∞`. The product `A_st A_ts` is
    /// `4 cos²(π/m)` (or 4), so `s t` has order `m`. Generator `s` acts by
    /// `v -> v - (A_s · v) e_s`.
    pub fn reflection_mod_p(w: &CoxeterSystem, p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !(3..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::UnsupportedRecipe(format!("{p} is not an odd prime")));
        }
        if !(w.is_right_angled() || w.is_even()) {
            return Err(Error::UnsupportedRecipe(
                "reflection-mod-p needs a right-angled or even system".into(),
            ));
        }
        let n = w.rank();
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            for j in i + 1..n {
                let (x, y) = match w.order(i as Gen, j as Gen) {
                    Order::Finite(2) => (0, 0),
                    Order::Finite(4) => (-1, -2),
                    Order::Finite(6) => (-1, -3),
                    Order::Infinite => (-2, -2),
                    Order::Finite(m) => {
                        return Err(Error::UnsupportedRecipe(format!(
                            "no integral reflection representation for m = {m}"
                        )))
                    }
                };
                a[i][j] = x;
                a[j][i] = y;
            }
        }
        let images = (0..n)
            .map(|i| {
                let mut m = vec![0u64; n * n];
                for r in 0..n {
                    m[r * n + r] = 1;
                }
                for c in 0..n {
                    let v = (m[i * n + c] as i64 - a[i][c]).rem_euclid(p as i64);
                    m[i * n + c] = v as u64;
                }
                m
            })
            .collect();
        let q = FiniteQuotient {
            kind: QuotientKind::ReflectionModP { p, dim: n },
            images,
        };
        q.check_relations(w)?;
        Ok(q)
    }

    /// Parses lines `s: (1 2)(3 4)`; `()` or nothing after the colon is the
    /// identity. Every generator must appear exactly once.
    pub fn from_permutations(w: &CoxeterSystem, text: &str) -> Result<Self> {
        let mut cycles: Vec<Option<Vec<Vec<usize>>>> = vec![None; w.rank()];
        let mut degree = 0;
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (name, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, "expected '<generator>: <cycles>'"))?;
            let s = w
                .generator(name.trim())
                .ok_or_else(|| Error::parse(ln, format!("unknown generator '{}'", name.trim())))?;
            if cycles[s as usize].is_some() {
                return Err(Error::parse(ln, format!("generator '{}' given twice", name.trim())));
            }
            let parsed = parse_cycles(rest, ln)?;
            for c in &parsed {
                degree = degree.max(c.iter().copied().max().unwrap_or(0));
            }
            cycles[s as usize] = Some(parsed);
        }
        let mut images = Vec::with_capacity(w.rank());
        for (s, c) in cycles.into_iter().enumerate() {
            let c = c.ok_or_else(|| {
                Error::parse(0, format!("no image given for generator '{}'", w.name(s as Gen)))
            })?;
            let mut perm: Vec<u64> = (0..degree as u64).collect();
            for cycle in c {
                for k in 0..cycle.len() {
                    let from = cycle[k] - 1;
                    let to = cycle[(k + 1) % cycle.len()] - 1;
                    perm[from] = to as u64;
                }
            }
            images.push(perm);
        }
        let q = FiniteQuotient {
            kind: QuotientKind::Permutation { degree },
            images,
        };
        q.check_relations(w)?;
        Ok(q)
    }

    pub fn trivial(w: &CoxeterSystem) -> Self {
        FiniteQuotient {
            kind: QuotientKind::Trivial,
            images: vec![Vec::new(); w.rank()],
        }
    }

    /// Recipe names: `trivial`, `mod-p` (p = 3) or `mod-<p>`.
    pub fn from_recipe(w: &CoxeterSystem, recipe: &str) -> Result<Self> {
        match recipe {
            "trivial" => Ok(Self::trivial(w)),
            "mod-p" => Self::reflection_mod_p(w, 3),
            r => match r.strip_prefix("mod-").and_then(|p| p.parse().ok()) {
                Some(p) => Self::reflection_mod_p(w, p),
                None => Err(Error::UnsupportedRecipe(r.to_string())),
            },
        }
    }

    pub fn recipe(&self) -> String {
        match &self.kind {
            QuotientKind::ReflectionModP { p, .. } => format!("reflection-mod-{p}"),
            QuotientKind::Permutation { degree } => format!("permutation-degree-{degree}"),
            QuotientKind::Trivial => "trivial".into(),
        }
    }

    pub fn generator_image(&self, s: Gen) -> &[u64] {
        &self.images[s as usize]
    }

    pub fn identity(&self) -> Vec<u64> {
        match &self.kind {
            QuotientKind::ReflectionModP { dim, .. } => {
                let mut m = vec![0; dim * dim];
                for i in 0..*dim {
                    m[i * dim + i] = 1;
                }
                m
            }
            QuotientKind::Permutation { degree } => (0..*degree as u64).collect(),
            QuotientKind::Trivial => Vec::new(),
        }
    }

    /// `a * b`, meaning "apply `b` first" for permutations and the matrix
    /// product for matrices.
    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        match &self.kind {
            QuotientKind::ReflectionModP { p, dim } => {
                let n = *dim;
                let mut out = vec![0u64; n * n];
                for i in 0..n {
                    for k in 0..n {
                        let x = a[i * n + k];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..n {
                            out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % p;
                        }
                    }
                }
                out
            }
            QuotientKind::Permutation { .. } => b.iter().map(|&i| a[i as usize]).collect(),
            QuotientKind::Trivial => Vec::new(),
        }
    }

    pub fn image_of_word(&self, letters: &[Gen]) -> Vec<u64> {
        letters
            .iter()
            .fold(self.identity(), |acc, &s| self.mul(&acc, &self.images[s as usize]))
    }

    pub fn image(&self, e: &Element) -> Vec<u64> {
        self.image_of_word(e.normal_form())
    }

    fn check_relations(&self, w: &CoxeterSystem) -> Result<()> {
        let id = self.identity();
        for s in w.generators() {
            let g = &self.images[s as usize];
            if self.mul(g, g) != id {
                return Err(Error::RelationViolation(format!("{}^2 != 1", w.name(s))));
            }
            for t in w.generators().filter(|&t| t > s) {
                let Some(m) = w.order(s, t).finite() else {
                    continue;
                };
                let st = self.mul(g, &self.images[t as usize]);
                let mut acc = id.clone();
                for _ in 0..m {
                    acc = self.mul(&acc, &st);
                }
                if acc != id {
                    return Err(Error::RelationViolation(format!(
                        "({}{})^{m} != 1",
                        w.name(s),
                        w.name(t)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Γ = ker phi` is torsion-free iff `phi` is injective on every maximal
    /// spherical `W_T`.
    pub fn torsion_free_check(&self, w: &CoxeterSystem, nerve: &Nerve) -> Result<TorsionFreeCertificate> {
        let maximal = nerve.maximal_subsets();
        let mut witnesses = Vec::new();
        for t in &maximal {
            let cap = crate::limits::max_chambers();
            let elements = w
                .enumerate_parabolic(t, cap)?
                .ok_or(Error::ResourceLimit {
                    what: "spherical parabolic size",
                    limit: cap,
                })?;
            let mut seen: HashMap<Vec<u64>, &Element> = HashMap::new();
            for e in &elements {
                let img = self.image(e);
                if let Some(prev) = seen.get(&img) {
                    // prev^{-1} e is a non-trivial kernel element
                    let k = w.multiply(&w.inverse(prev)?, e)?;
                    witnesses.push(KernelWitness {
                        subset: w.format_subset(t),
                        element: w.format_word(k.normal_form()),
                    });
                    break;
                }
                seen.insert(img, e);
            }
        }
        Ok(TorsionFreeCertificate {
            maximal_subsets: maximal.len(),
            pass: witnesses.is_empty(),
            witnesses,
        })
    }

    /// Order of the image group by closure under the generators, or `None`
    /// if it exceeds `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut seen: HashSet<Vec<u64>> = HashSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(g) = frontier.pop() {
            for s in &self.images {
                let h = self.mul(&g, s);
                if !seen.contains(&h) {
                    if seen.len() >= cap {
                        return None;
                    }
                    seen.insert(h.clone());
                    frontier.push(h);
                }
            }
        }
        Some(seen.len())
    }

    /// Γ-orbit label of a panel `{u, us}`: the pair `{phi(u), phi(us)}` with `s`.
    pub(crate) fn panel_type(&self, u: &ChamberComplex, p: &super::Panel) -> (Gen, Vec<u64>, Vec<u64>) {
        let a = self.image(u.element(p.lo));
        let b = self.image(u.element(p.hi));
        if a <= b {
            (p.gen, a, b)
        } else {
            (p.gen, b, a)
        }
    }

    /// Walls of the same class must be equal or have disjoint carriers.
    pub fn trivial_intersection_check(
        &self,
        u: &ChamberComplex,
        real: &Realization,
        walls: &[Wall],
    ) -> TrivialIntersectionCertificate {
        let classes = wall_classes(self, u, walls);
        let mut class_of = vec![0; walls.len()];
        for (c, members) in classes.iter().enumerate() {
            for &i in members {
                class_of[i] = c;
            }
        }
        let through = walls_through_vertices(u, real, walls);
        let mut vertices: Vec<&usize> = through.keys().collect();
        vertices.sort();
        let mut witnesses = Vec::new();
        let mut reported: BTreeSet<(usize, usize)> = BTreeSet::new();
        for v in vertices {
            let ws = &through[v];
            for (a, &i) in ws.iter().enumerate() {
                for &j in &ws[a + 1..] {
                    if class_of[i] == class_of[j] && reported.insert((i, j)) && witnesses.len() < 8
                    {
                        witnesses.push(CrossingWitness {
                            wall: u.wall_name(&walls[i]),
                            translate: u.wall_name(&walls[j]),
                            shared_vertex: real.complex.label(*v).to_string(),
                        });
                    }
                }
            }
        }
        TrivialIntersectionCertificate {
            walls: walls.len(),
            classes: classes
                .iter()
                .map(|c| c.iter().map(|&i| u.wall_name(&walls[i])).collect())
                .collect(),
            pass: reported.is_empty(),
            witnesses,
        }
    }
}

/// Classes of walls identified by Γ within the ball: two walls are joined
/// when they have panels in the same Γ-orbit. Classes are listed by their
/// smallest wall; wall indices inside a class are increasing.
pub fn wall_classes(q: &FiniteQuotient, u: &ChamberComplex, walls: &[Wall]) -> Vec<Vec<usize>> {
    let mut first: HashMap<(Gen, Vec<u64>, Vec<u64>), usize> = HashMap::new();
    let mut uf = UnionFind::new(walls.len());
    for (i, wall) in walls.iter().enumerate() {
        for p in &wall.panels {
            let key = q.panel_type(u, p);
            match first.get(&key) {
                Some(&j) => uf.union(i, j),
                None => {
                    first.insert(key, i);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..walls.len() {
        let r = uf.find(i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn parse_cycles(text: &str, ln: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(ln, "cycle must start with '('"))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::parse(ln, "unterminated cycle"))?;
        let body = &open[..close];
        let points = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(p) if p >= 1 => Ok(p),
                _ => Err(Error::parse(ln, format!("bad point '{t}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let distinct: BTreeSet<usize> = points.iter().copied().collect();
        if distinct.len() != points.len() {
            return Err(Error::parse(ln, "repeated point in a cycle"));
        }
        if points.len() > 1 {
            out.push(points);
        }
        rest = open[close + 1..].trim_start();
    }
    let all: Vec<usize> = out.iter().flatten().copied().collect();
    let distinct: BTreeSet<usize> = all.iter().copied().collect();
    if distinct.len() != all.len() {
        return Err(Error::parse(ln, "cycles are not disjoint"));
    }
    Ok(out)
}
