//! Walls of a chamber complex and the certificates that only involve walls.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::{ChamberComplex, Panel, Realization, Side};
use crate::coxeter::{members_of, Element};
use crate::error::Result;
use crate::simplicial::SimplicialComplex;

const MAX_WITNESSES: usize = 8;

/// The panels of one reflection `r = u s u^{-1}` inside the ball.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    pub reflection: Element,
    pub panels: Vec<Panel>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationCertificate {
    pub chambers: usize,
    pub components: usize,
    pub non_isomorphic: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HalfspaceCertificate {
    pub walls: usize,
    /// Walls whose removal does not leave exactly two connected sides.
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalArrangementCertificate {
    pub checked: usize,
    pub excluded_boundary: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexLinkCertificate {
    pub checked: usize,
    pub excluded_boundary: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

impl ChamberComplex {
    /// Groups all interior panels (glued or cut) by their reflection.
    pub fn walls(&self) -> Result<Vec<Wall>> {
        let panels = self.interior_panels();
        let w = self.system();
        let refl: Vec<Element> = panels
            .par_iter()
            .map(|p| w.reflection(self.element(p.lo), p.gen))
            .collect::<Result<_>>()?;
        let mut by_refl: BTreeMap<Element, Vec<Panel>> = BTreeMap::new();
        for (p, r) in panels.into_iter().zip(refl) {
            by_refl.entry(r).or_default().push(p);
        }
        Ok(by_refl
            .into_iter()
            .map(|(reflection, panels)| Wall { reflection, panels })
            .collect())
    }

    pub fn wall_name(&self, wall: &Wall) -> String {
        self.system().format_word(wall.reflection.normal_form())
    }

    /// Cutting every panel leaves one component per chamber, each a copy of
    /// the model.
    pub fn separation_check(&self) -> Result<SeparationCertificate> {
        let all = self.open_panels();
        let cut = self.cut_open(&all)?;
        let real = cut.realize()?;
        let comps = real.complex.component_complexes();
        let model = &self.model().complex;
        let non_isomorphic: Vec<String> = comps
            .par_iter()
            .filter(|c| !c.is_isomorphic(model))
            .map(|c| c.label(0).to_string())
            .collect();
        let pass = comps.len() == self.chamber_count() && non_isomorphic.is_empty();
        Ok(SeparationCertificate {
            chambers: self.chamber_count(),
            components: comps.len(),
            non_isomorphic: non_isomorphic.into_iter().take(MAX_WITNESSES).collect(),
            pass,
        })
    }

    /// For each wall, removing its panels from the chamber graph leaves two
    /// connected sides, and every panel of the wall joins the two sides.
    pub fn halfspace_check(&self, walls: &[Wall]) -> HalfspaceCertificate {
        let adjacency: Vec<(usize, usize, Panel)> = self
            .interior_panels()
            .into_iter()
            .map(|p| (p.lo, p.hi, p))
            .collect();
        let failures: Vec<String> = walls
            .par_iter()
            .filter_map(|wall| {
                let removed: BTreeSet<Panel> = wall.panels.iter().copied().collect();
                let mut uf = UnionFind::new(self.base.chambers.len());
                for (a, b, p) in &adjacency {
                    if !removed.contains(p) {
                        uf.union(*a, *b);
                    }
                }
                let sides: BTreeSet<usize> =
                    self.members().iter().map(|&c| uf.find(c)).collect();
                let crossing = wall.panels.iter().all(|p| uf.find(p.lo) != uf.find(p.hi));
                (sides.len() != 2 || !crossing).then(|| {
                    format!("{} leaves {} sides", self.wall_name(wall), sides.len())
                })
            })
            .collect();
        HalfspaceCertificate {
            walls: walls.len(),
            pass: failures.is_empty(),
            failures: failures.into_iter().take(MAX_WITNESSES).collect(),
        }
    }

    /// At every interior vertex of type `T = S(x)`, the walls through it are
    /// as many as the reflections of `W_T`.
    pub fn local_arrangement_check(
        &self,
        real: &Realization,
        walls: &[Wall],
    ) -> Result<LocalArrangementCertificate> {
        let through = walls_through_vertices(self, real, walls);
        let mut checked = 0;
        let mut excluded = 0;
        let mut failures = Vec::new();
        let mut expected: HashMap<u64, usize> = HashMap::new();
        for v in 0..real.rep.len() {
            if !real.is_interior(v) || real.cut[v] {
                excluded += 1;
                continue;
            }
            let (_, x) = real.rep[v];
            let mask = self.model().s_of[x];
            let want = match expected.get(&mask) {
                Some(&n) => n,
                None => {
                    let n = self.system().reflection_count(&members_of(mask))?;
                    expected.insert(mask, n);
                    n
                }
            };
            checked += 1;
            let got = through.get(&v).map_or(0, Vec::len);
            if got != want && failures.len() < MAX_WITNESSES {
                failures.push(format!(
                    "{}: {got} walls, {want} reflections",
                    real.complex.label(v)
                ));
            }
        }
        Ok(LocalArrangementCertificate {
            checked,
            excluded_boundary: excluded,
            pass: failures.is_empty(),
            failures,
        })
    }

    /// Links of interior vertices. The link of a chamber centre (the model
    /// vertex labelled `*`) must be isomorphic to `centre_link`, the nerve as
    /// it is triangulated inside a chamber. Every other interior vertex must
    /// have the same link as the first interior vertex of its type, since `W`
    /// permutes the vertices of each type transitively.
    pub fn vertex_link_check(
        &self,
        real: &Realization,
        centre_link: &SimplicialComplex,
    ) -> VertexLinkCertificate {
        let model = self.model();
        let interior: Vec<usize> = (0..real.rep.len()).filter(|&v| real.is_interior(v)).collect();
        let links: Vec<Option<SimplicialComplex>> = interior
            .par_iter()
            .map(|&v| real.complex.link(&[v]).ok())
            .collect();
        let mut reference: HashMap<usize, usize> = HashMap::new();
        let mut failures = Vec::new();
        for (k, &v) in interior.iter().enumerate() {
            let x = real.rep[v].1;
            let Some(lk) = &links[k] else {
                failures.push(real.complex.label(v).to_string());
                continue;
            };
            let ok = if model.complex.label(x) == "*" && model.s_of[x] == 0 {
                lk.is_isomorphic(centre_link)
            } else {
                match reference.get(&x) {
                    Some(&r) => links[r].as_ref().is_some_and(|l| l.is_isomorphic(lk)),
                    None => {
                        reference.insert(x, k);
                        true
                    }
                }
            };
            if !ok && failures.len() < MAX_WITNESSES {
                failures.push(real.complex.label(v).to_string());
            }
        }
        VertexLinkCertificate {
            checked: interior.len(),
            excluded_boundary: real.rep.len() - interior.len(),
            pass: failures.is_empty(),
            failures,
        }
    }

    /// Interior vertices whose links are not homology spheres of dimension
    /// `d - 1` (empty for a homology `d`-manifold away from the boundary).
    pub fn interior_link_failures(&self, real: &Realization, d: isize) -> Vec<String> {
        (0..real.rep.len())
            .into_par_iter()
            .filter(|&v| real.is_interior(v) && !real.cut[v])
            .filter(|&v| {
                !real.complex.link(&[v]).is_ok_and(|lk| {
                    lk.reduced_homology()
                        .is_ok_and(|h| h.is_sphere_like(d - 1))
                })
            })
            .map(|v| real.complex.label(v).to_string())
            .collect::<Vec<_>>()
            .into_iter()
            .take(MAX_WITNESSES)
            .collect()
    }
}

/// Realized vertex -> indices of the walls whose carrier contains it.
pub(crate) fn walls_through_vertices(
    u: &ChamberComplex,
    real: &Realization,
    walls: &[Wall],
) -> HashMap<usize, Vec<usize>> {
    let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, wall) in walls.iter().enumerate() {
        for v in u.panel_vertices(real, &wall.panels) {
            out.entry(v).or_default().push(i);
        }
    }
    out
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

impl Side {
    pub fn neighbour(self) -> Option<usize> {
        match self {
            Side::Open(j) | Side::Cut(j) | Side::Severed(j) => Some(j),
            Side::Truncated => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{davis, pentagon};
    use crate::coxeter::{CoxeterSystem, Order};

    fn dihedral(m: Order) -> CoxeterSystem {
        CoxeterSystem::from_fn(vec!["a".into(), "b".into()], |_, _| m).unwrap()
    }

    #[test]
    fn line_walls_are_single_panels() {
        let u = davis(&dihedral(Order::Infinite), 3);
        let walls = u.walls().unwrap();
        assert_eq!(walls.len(), 6);
        assert!(walls.iter().all(|w| w.panels.len() == 1));
        assert!(u.halfspace_check(&walls).pass);
    }

    #[test]
    fn hexagon_has_three_walls_of_two_panels() {
        let u = davis(&dihedral(Order::Finite(3)), 3);
        let walls = u.walls().unwrap();
        assert_eq!(walls.len(), 3);
        assert!(walls.iter().all(|w| w.panels.len() == 2));
        assert!(u.halfspace_check(&walls).pass);
        let real = u.realize().unwrap();
        let cert = u.local_arrangement_check(&real, &walls).unwrap();
        assert!(cert.pass, "{cert:?}");
    }

    #[test]
    fn pentagon_separation_and_links() {
        let w = pentagon();
        let u = davis(&w, 2);
        assert!(u.separation_check().unwrap().pass);
        let walls = u.walls().unwrap();
        assert!(u.halfspace_check(&walls).pass);
        let real = u.realize().unwrap();
        assert!(u.local_arrangement_check(&real, &walls).unwrap().pass);
        let bl = w.build_nerve().unwrap().complex.barycentric_subdivision().unwrap();
        let cert = u.vertex_link_check(&real, &bl);
        assert!(cert.pass, "{cert:?}");
        assert!(cert.checked > u.chamber_count());
        assert!(cert.excluded_boundary > 0);
        assert!(u.interior_link_failures(&real, 2).is_empty());
    }
}
