//! The basic construction `U(W, X)` on a ball of chambers.
//!
//! A chamber complex is a set of chambers (group elements) together with the
//! state of each panel `{w, ws}`: glued, cut open, missing because `ws` lies
//! outside the ball, or severed because `ws` was dropped from the chamber set.
//! The realization glues copies `(w, x)` of the model vertices along glued
//! panels, which for a full ball is exactly `(w, x) ~ (w', x)` iff
//! `w^{-1} w' ∈ W_{S(x)}`.

mod quotient;
mod walls;

pub use quotient::{
    wall_classes, CrossingWitness, FiniteQuotient, KernelWitness, QuotientKind,
    TorsionFreeCertificate, TrivialIntersectionCertificate,
};
pub use walls::{
    HalfspaceCertificate, LocalArrangementCertificate, SeparationCertificate,
    VertexLinkCertificate, Wall,
};

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Element, Gen};
use crate::error::{Error, Result};
use crate::limits;
use crate::nerve::MirroredComplex;
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "state", content = "neighbour")]
pub enum Side {
    /// Glued to the neighbouring chamber.
    Open(usize),
    /// Cut open: the neighbour is present but the mirror is not glued.
    Cut(usize),
    /// The neighbour lies outside the ball.
    Truncated,
    /// The neighbour exists but is not part of this chamber set.
    Severed(usize),
}

/// The panel between chambers `lo < hi` with `hi = lo * gen`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Panel {
    pub lo: usize,
    pub hi: usize,
    pub gen: Gen,
}

#[derive(Debug)]
struct Base {
    system: CoxeterSystem,
    model: MirroredComplex,
    radius: usize,
    exhausted: bool,
    chambers: Vec<Element>,
    index: HashMap<Element, usize>,
}

#[derive(Debug, Clone)]
pub struct ChamberComplex {
    base: Arc<Base>,
    /// Chambers taking part, sorted.
    members: Vec<usize>,
    sides: Vec<Vec<Side>>,
}

/// Simplicial realization of a chamber complex.
#[derive(Debug, Clone)]
pub struct Realization {
    pub complex: SimplicialComplex,
    /// Realized vertex of `(chamber, model vertex)`; empty for non-members.
    vertex_of: Vec<Vec<usize>>,
    /// Canonical `(chamber, model vertex)` of each realized vertex.
    pub rep: Vec<(usize, usize)>,
    /// The vertex lies on a truncated or severed mirror.
    pub truncation: Vec<bool>,
    /// The vertex lies on a cut mirror.
    pub cut: Vec<bool>,
}

impl Realization {
    pub fn vertex(&self, chamber: usize, x: usize) -> usize {
        self.vertex_of[chamber][x]
    }

    pub fn is_interior(&self, v: usize) -> bool {
        !self.truncation[v]
    }

    /// Chambers whose copy of the model contains `v`.
    pub fn chambers_at(&self, v: usize) -> Vec<usize> {
        let (_, x) = self.rep[v];
        (0..self.vertex_of.len())
            .filter(|&c| self.vertex_of[c].get(x) == Some(&v))
            .collect()
    }
}

/// Builds the ball of radius `r` in `U(W, X)` with every interior panel glued.
pub fn basic_construction(
    system: &CoxeterSystem,
    model: &MirroredComplex,
    radius: usize,
) -> Result<ChamberComplex> {
    if model.mirror_count() != system.rank() {
        return Err(Error::InvalidMatrix(format!(
            "model has {} mirrors but the system has {} generators",
            model.mirror_count(),
            system.rank()
        )));
    }
    let ball = system.cayley_ball(radius)?;
    let n = ball.len();
    let estimate = n.saturating_mul(model.complex.facets().len());
    if estimate > limits::max_cells() {
        return Err(Error::ResourceLimit {
            what: "chamber complex facets",
            limit: limits::max_cells(),
        });
    }
    let mut sides = vec![vec![Side::Truncated; system.rank()]; n];
    for &(i, j, s) in &ball.edges {
        sides[i][s as usize] = Side::Open(j);
        sides[j][s as usize] = Side::Open(i);
    }
    let index = ball
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    Ok(ChamberComplex {
        base: Arc::new(Base {
            system: system.clone(),
            model: model.clone(),
            radius,
            exhausted: ball.exhausted,
            chambers: ball.elements,
            index,
        }),
        members: (0..n).collect(),
        sides,
    })
}

impl ChamberComplex {
    pub fn system(&self) -> &CoxeterSystem {
        &self.base.system
    }

    pub fn model(&self) -> &MirroredComplex {
        &self.base.model
    }

    pub fn radius(&self) -> usize {
        self.base.radius
    }

    /// True when the ball is the whole (finite) group.
    pub fn is_exhausted(&self) -> bool {
        self.base.exhausted
    }

    pub fn chamber_count(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn element(&self, chamber: usize) -> &Element {
        &self.base.chambers[chamber]
    }

    pub fn all_elements(&self) -> &[Element] {
        &self.base.chambers
    }

    pub fn chamber_of(&self, e: &Element) -> Option<usize> {
        self.base.index.get(e).copied()
    }

    pub fn chamber_name(&self, chamber: usize) -> String {
        self.base
            .system
            .format_word(self.base.chambers[chamber].normal_form())
    }

    pub fn side(&self, chamber: usize, s: Gen) -> Side {
        self.sides[chamber][s as usize]
    }

    pub fn panel_name(&self, p: &Panel) -> String {
        format!(
            "{}|{}",
            self.chamber_name(p.lo),
            self.base.system.name(p.gen)
        )
    }

    fn is_member(&self, c: usize) -> bool {
        self.members.binary_search(&c).is_ok()
    }

    fn panels_where(&self, keep: impl Fn(Side) -> bool) -> Vec<Panel> {
        let mut out = Vec::new();
        for &i in &self.members {
            for (s, &side) in self.sides[i].iter().enumerate() {
                let j = match side {
                    Side::Open(j) | Side::Cut(j) => j,
                    _ => continue,
                };
                if i < j && keep(side) {
                    out.push(Panel {
                        lo: i,
                        hi: j,
                        gen: s as Gen,
                    });
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Panels between two member chambers, glued or cut.
    pub fn interior_panels(&self) -> Vec<Panel> {
        self.panels_where(|_| true)
    }

    pub fn open_panels(&self) -> Vec<Panel> {
        self.panels_where(|s| matches!(s, Side::Open(_)))
    }

    pub fn cut_panels(&self) -> Vec<Panel> {
        self.panels_where(|s| matches!(s, Side::Cut(_)))
    }

    pub fn truncated_side_count(&self) -> usize {
        self.members
            .iter()
            .flat_map(|&i| self.sides[i].iter())
            .filter(|s| matches!(s, Side::Truncated | Side::Severed(_)))
            .count()
    }

    pub fn is_open(&self, p: &Panel) -> bool {
        self.sides[p.lo][p.gen as usize] == Side::Open(p.hi)
    }

    /// Cuts the given panels open.
    pub fn cut_open(&self, panels: &[Panel]) -> Result<ChamberComplex> {
        let mut next = self.clone();
        for p in panels {
            if !self.is_member(p.lo) || !self.is_member(p.hi) || !next.is_open(p) {
                return Err(Error::PanelNotActive(self.panel_name(p)));
            }
            next.sides[p.lo][p.gen as usize] = Side::Cut(p.hi);
            next.sides[p.hi][p.gen as usize] = Side::Cut(p.lo);
        }
        Ok(next)
    }

    /// Restriction to a set of chambers; panels leaving the set are severed.
    pub fn restrict(&self, chambers: &[usize]) -> ChamberComplex {
        let mut members: Vec<usize> = chambers.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut next = ChamberComplex {
            base: Arc::clone(&self.base),
            members,
            sides: self.sides.clone(),
        };
        for &i in &next.members.clone() {
            for s in 0..next.sides[i].len() {
                if let Side::Open(j) | Side::Cut(j) = next.sides[i][s] {
                    if !next.is_member(j) {
                        next.sides[i][s] = Side::Severed(j);
                    }
                }
            }
        }
        next
    }

    /// Components of the chamber graph along glued panels.
    pub fn chamber_components(&self) -> Vec<Vec<usize>> {
        let mut comp: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &start in &self.members {
            if comp.contains_key(&start) {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp.insert(start, id);
            let mut members = Vec::new();
            while let Some(i) = stack.pop() {
                members.push(i);
                for side in &self.sides[i] {
                    if let Side::Open(j) = *side {
                        if let std::collections::hash_map::Entry::Vacant(e) = comp.entry(j) {
                            e.insert(id);
                            stack.push(j);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn realize(&self) -> Result<Realization> {
        let model = &self.base.model;
        let nx = model.complex.vertex_count();
        let n = self.base.chambers.len();
        let facet_total = self.members.len().saturating_mul(model.complex.facets().len());
        if facet_total > limits::max_cells() {
            return Err(Error::ResourceLimit {
                what: "realization facets",
                limit: limits::max_cells(),
            });
        }
        let mirrors: Vec<Vec<usize>> = (0..model.mirror_count())
            .map(|s| model.mirror_vertices(s as Gen))
            .collect();

        let node = |c: usize, x: usize| c * nx + x;
        let mut parent: Vec<usize> = (0..n * nx).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        let mut truncated_nodes = Vec::new();
        let mut cut_nodes = Vec::new();
        for &i in &self.members {
            for (s, side) in self.sides[i].iter().enumerate() {
                match *side {
                    Side::Open(j) if i < j => {
                        for &x in &mirrors[s] {
                            let (a, b) = (find(&mut parent, node(i, x)), find(&mut parent, node(j, x)));
                            // keep the smaller chamber as root so labels are canonical
                            if a < b {
                                parent[b] = a;
                            } else if b < a {
                                parent[a] = b;
                            }
                        }
                    }
                    Side::Truncated | Side::Severed(_) => {
                        truncated_nodes.extend(mirrors[s].iter().map(|&x| node(i, x)));
                    }
                    Side::Cut(_) => cut_nodes.extend(mirrors[s].iter().map(|&x| node(i, x))),
                    Side::Open(_) => {}
                }
            }
        }

        let mut vertex_of = vec![Vec::new(); n];
        let mut root_vertex: HashMap<usize, usize> = HashMap::new();
        let mut rep = Vec::new();
        let mut labels = Vec::new();
        for &i in &self.members {
            let mut row = Vec::with_capacity(nx);
            for x in 0..nx {
                let r = find(&mut parent, node(i, x));
                let v = *root_vertex.entry(r).or_insert_with(|| {
                    let (c, y) = (r / nx, r % nx);
                    rep.push((c, y));
                    labels.push(format!("{}|{}", self.chamber_name(c), model.complex.label(y)));
                    rep.len() - 1
                });
                row.push(v);
            }
            vertex_of[i] = row;
        }
        let mut truncation = vec![false; rep.len()];
        let mut cut = vec![false; rep.len()];
        for (nodes, flags) in [(&truncated_nodes, &mut truncation), (&cut_nodes, &mut cut)] {
            for &nd in nodes {
                let r = find(&mut parent, nd);
                flags[root_vertex[&r]] = true;
            }
        }
        let mut facets = Vec::with_capacity(facet_total);
        for &i in &self.members {
            for f in model.complex.facets() {
                facets.push(f.iter().map(|&x| vertex_of[i][x]).collect());
            }
        }
        let complex = SimplicialComplex::new(labels, facets)?;
        Ok(Realization {
            complex,
            vertex_of,
            rep,
            truncation,
            cut,
        })
    }

    /// The set of realized vertices on the mirrors of the given panels (both
    /// sides, which differ once the panel is cut).
    pub fn panel_vertices(&self, real: &Realization, panels: &[Panel]) -> BTreeSet<usize> {
        let model = &self.base.model;
        let mut out = BTreeSet::new();
        for p in panels {
            for x in model.mirror_vertices(p.gen) {
                for c in [p.lo, p.hi] {
                    if let Some(&v) = real.vertex_of[c].get(x) {
                        out.insert(v);
                    }
                }
            }
        }
        out
    }

    /// Simplices of the realization lying in the mirrors of the given panels.
    pub fn panel_simplices(&self, real: &Realization, panels: &[Panel]) -> Vec<Vec<usize>> {
        let model = &self.base.model;
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut mirror_cache: HashMap<Gen, SimplicialComplex> = HashMap::new();
        for p in panels {
            let mirror = mirror_cache.entry(p.gen).or_insert_with(|| model.mirror(p.gen));
            for c in [p.lo, p.hi] {
                if real.vertex_of[c].is_empty() {
                    continue;
                }
                for f in mirror.facets() {
                    let mut s: Vec<usize> = f
                        .iter()
                        .map(|&y| {
                            let x = model.complex.vertex(mirror.label(y)).unwrap();
                            real.vertex_of[c][x]
                        })
                        .collect();
                    s.sort_unstable();
                    out.insert(s);
                }
            }
        }
        out.into_iter().collect()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coxeter::Order;
    use crate::nerve::build_chamber;

    pub(crate) fn pentagon() -> CoxeterSystem {
        let names = (1..=5).map(|i| format!("s{i}")).collect();
        CoxeterSystem::right_angled(names, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    pub(crate) fn davis(w: &CoxeterSystem, r: usize) -> ChamberComplex {
        let k = build_chamber(&w.build_nerve().unwrap()).unwrap();
        basic_construction(w, &k, r).unwrap()
    }

    #[test]
    fn doubling_an_edge() {
        let w = CoxeterSystem::from_fn(vec!["s".into()], |_, _| Order::Finite(1)).unwrap();
        let u = davis(&w, 1);
        let real = u.realize().unwrap();
        assert_eq!(real.complex.f_vector(), vec![3, 2]);
        assert!(u.is_exhausted());
        assert!(real.truncation.iter().all(|t| !t));
    }

    #[test]
    fn infinite_dihedral_line() {
        let w = CoxeterSystem::from_fn(vec!["a".into(), "b".into()], |_, _| Order::Infinite)
            .unwrap();
        let u = davis(&w, 3);
        assert_eq!(u.chamber_count(), 7);
        let real = u.realize().unwrap();
        // 7 subdivided intervals in a row
        assert_eq!(real.complex.f_vector(), vec![15, 14]);
        assert!(real.complex.reduced_homology().unwrap().is_acyclic());
        assert_eq!(real.truncation.iter().filter(|&&t| t).count(), 2);
    }

    #[test]
    fn pentagon_radius_one() {
        let u = davis(&pentagon(), 1);
        assert_eq!(u.chamber_count(), 6);
        let real = u.realize().unwrap();
        assert!(real.complex.is_acyclic().unwrap());
        assert_eq!(u.open_panels().len(), 5);
    }

    #[test]
    fn cutting_and_restriction() {
        let w = CoxeterSystem::from_fn(vec!["a".into(), "b".into()], |_, _| Order::Infinite)
            .unwrap();
        let u = davis(&w, 1);
        let p = u.open_panels()[0];
        let cut = u.cut_open(&[p]).unwrap();
        assert_eq!(cut.chamber_components().len(), 2);
        assert_eq!(cut.realize().unwrap().complex.components().len(), 2);
        assert!(matches!(cut.cut_open(&[p]), Err(Error::PanelNotActive(_))));
        let half = u.restrict(&[0]);
        assert_eq!(half.chamber_count(), 1);
        assert!(half.interior_panels().is_empty());
    }

    #[test]
    fn hexagon_tiles_a_disk() {
        let w = CoxeterSystem::from_fn(vec!["a".into(), "b".into()], |_, _| Order::Finite(3))
            .unwrap();
        let u = davis(&w, 5);
        assert!(u.is_exhausted());
        assert_eq!(u.chamber_count(), 6);
        let real = u.realize().unwrap();
        // six chambers around the vertex {a,b} tile a disk
        assert!(real.complex.is_acyclic().unwrap());
        assert_eq!(real.complex.f_vector(), vec![13, 24, 12]);
        assert_eq!(real.complex.boundary_ridges().len(), 12);
    }
}
