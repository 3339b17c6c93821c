//! The reflection group trick for a compact manifold with flag boundary.
//!
//! The boundary `L = ∂M` gives the right-angled system `W_L`. The model
//! chamber is the barycentric subdivision `bM`: the vertex of a simplex
//! `σ ⊆ ∂M` lies on the mirrors of the vertices of `σ`, so each mirror is the
//! closed star of a boundary vertex in `b∂M`, and interior simplices lie on
//! no mirror.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::coxeter::{mask_of, CoxeterSystem, Gen};
use crate::davis::{
    basic_construction, ChamberComplex, FiniteQuotient, LocalArrangementCertificate,
    TrivialIntersectionCertificate,
};
use crate::error::{Error, Result};
use crate::hierarchy::{check_tidy, run_hierarchy, HierarchyTrace, WallFamily};
use crate::nerve::MirroredComplex;
use crate::simplicial::{Simplex, SimplicialComplex, TopologyCheck};

const MAX_WITNESSES: usize = 8;
const QUOTIENT_ORDER_CAP: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct MirroredManifold {
    pub manifold: SimplicialComplex,
    pub boundary: SimplicialComplex,
    pub system: CoxeterSystem,
    pub model: MirroredComplex,
}

#[derive(Debug, Clone, Serialize)]
pub struct PanelOrbitCertificate {
    /// Γ-orbits of panels met in the ball.
    pub panel_types: usize,
    pub quotient_order: Option<usize>,
    /// `|S| |Q| / 2`, the number of Γ-orbits of panels in `U`.
    pub bound: Option<usize>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrickOutput {
    pub generators: Vec<String>,
    pub quotient: String,
    pub radius: usize,
    pub chambers: usize,
    pub nerve_matches_boundary: bool,
    pub walls: usize,
    pub classes: usize,
    /// Every wall is pure of codimension one with acyclic components.
    pub walls_acyclic: TopologyCheck,
    /// Each class is a disjoint union of walls.
    pub trivial_intersection: TrivialIntersectionCertificate,
    pub intersections_acyclic: TopologyCheck,
    pub panel_orbits: PanelOrbitCertificate,
    pub local_arrangement: LocalArrangementCertificate,
    /// Interior vertex links are homology spheres.
    pub interior_links: TopologyCheck,
    pub hierarchy: HierarchyTrace,
    pub pass: bool,
}

fn check(failures: Vec<String>) -> TopologyCheck {
    TopologyCheck {
        pass: failures.is_empty(),
        witnesses: failures.into_iter().take(MAX_WITNESSES).collect(),
    }
}

/// Checks that `boundary` is the closed, flag boundary of `m` and builds
/// `W_L` with the mirrored model `bM`.
pub fn prepare_mirrored_manifold(
    m: &SimplicialComplex,
    boundary: &SimplicialComplex,
) -> Result<MirroredManifold> {
    let to_m: Vec<usize> = boundary
        .labels()
        .iter()
        .map(|l| {
            m.vertex(l)
                .ok_or_else(|| Error::NotClosedBoundary(format!("vertex {l} is not in M")))
        })
        .collect::<Result<_>>()?;
    let mapped: BTreeSet<Simplex> = boundary
        .facets()
        .iter()
        .map(|f| {
            let mut s: Simplex = f.iter().map(|&v| to_m[v]).collect();
            s.sort_unstable();
            s
        })
        .collect();
    let ridges: BTreeSet<Simplex> = m.boundary_ridges().into_iter().collect();
    if ridges.is_empty() {
        return Err(Error::NotClosedBoundary("M has no boundary".into()));
    }
    if mapped != ridges {
        let extra = mapped.symmetric_difference(&ridges).next().unwrap();
        return Err(Error::NotClosedBoundary(format!(
            "{} is not a boundary face of M, or is missing",
            m.simplex_label(extra)
        )));
    }
    if boundary.dim() >= 1 && !boundary.boundary_ridges().is_empty() {
        return Err(Error::NotClosedBoundary("the boundary has a boundary".into()));
    }
    if let Some(face) = boundary.missing_face() {
        return Err(Error::NotFlag(boundary.simplex_label(&face)));
    }
    if boundary.vertex_count() > crate::coxeter::MAX_RANK {
        return Err(Error::InvalidMatrix(format!(
            "{} boundary vertices exceed the rank limit",
            boundary.vertex_count()
        )));
    }

    let edges: Vec<(usize, usize)> = boundary
        .simplices_by_dim()
        .get(1)
        .map(|e| e.iter().map(|s| (s[0], s[1])).collect())
        .unwrap_or_default();
    let system = CoxeterSystem::right_angled(boundary.labels().to_vec(), &edges)?;

    let from_m: HashMap<usize, Gen> =
        to_m.iter().enumerate().map(|(b, &v)| (v, b as Gen)).collect();
    let bm = m.barycentric_subdivision()?;
    let on_boundary: BTreeSet<String> = {
        let mut all = BTreeSet::new();
        for f in &mapped {
            crate::simplicial::closure_by_dim(std::slice::from_ref(f))
                .into_iter()
                .flatten()
                .for_each(|s| {
                    all.insert(m.simplex_label(&s));
                });
        }
        all
    };
    let label_mask: HashMap<String, u64> = m
        .simplices_by_dim()
        .into_iter()
        .flatten()
        .filter_map(|s| {
            let label = m.simplex_label(&s);
            on_boundary.contains(&label).then(|| {
                let gens: Vec<Gen> = s.iter().map(|v| from_m[v]).collect();
                (label, mask_of(&gens))
            })
        })
        .collect();
    let s_of = bm
        .labels()
        .iter()
        .map(|l| label_mask.get(l).copied().unwrap_or(0))
        .collect();
    let model = MirroredComplex::new(bm, s_of, boundary.labels().to_vec());
    Ok(MirroredManifold {
        manifold: m.clone(),
        boundary: boundary.clone(),
        system,
        model,
    })
}

fn walls_acyclic(u: &ChamberComplex, walls: &[crate::davis::Wall]) -> Result<TopologyCheck> {
    let real = u.realize()?;
    let d = u.model().complex.dim();
    let failures: Vec<Option<String>> = walls
        .par_iter()
        .map(|wall| -> Result<Option<String>> {
            let simplices = u.panel_simplices(&real, &wall.panels);
            if simplices.iter().any(|s| s.len() as isize != d) {
                return Ok(Some(format!("{} is not of codimension one", u.wall_name(wall))));
            }
            let carrier = real.complex.sub_from_simplices(simplices);
            for c in carrier.component_complexes() {
                if !c.is_acyclic()? {
                    return Ok(Some(format!("{} is not acyclic", u.wall_name(wall))));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    Ok(check(failures.into_iter().flatten().collect()))
}

pub fn run_trick(mm: &MirroredManifold, radius: usize, quotient: &FiniteQuotient) -> Result<TrickOutput> {
    let w = &mm.system;
    let u = basic_construction(w, &mm.model, radius)?;
    let walls = u.walls()?;
    let real = u.realize()?;
    let nerve = w.build_nerve()?;
    let nerve_matches_boundary = nerve.complex.labels() == mm.boundary.labels()
        && nerve.complex.simplices_by_dim() == mm.boundary.simplices_by_dim();

    let walls_acyclic = walls_acyclic(&u, &walls)?;
    let trivial_intersection = quotient.trivial_intersection_check(&u, &real, &walls);
    let family = WallFamily::from_quotient(&u, &walls, quotient);
    let tidy = check_tidy(&u, &family)?;

    let types: BTreeSet<_> = u
        .interior_panels()
        .iter()
        .map(|p| quotient.panel_type(&u, p))
        .collect();
    let quotient_order = quotient.order(QUOTIENT_ORDER_CAP);
    let bound = quotient_order.map(|q| w.rank() * q.div_ceil(2));
    let panel_orbits = PanelOrbitCertificate {
        panel_types: types.len(),
        quotient_order,
        bound,
        pass: bound.is_none_or(|b| types.len() <= b),
    };
    let local_arrangement = u.local_arrangement_check(&real, &walls)?;
    let n = mm.manifold.dim();
    let interior_links = check(u.interior_link_failures(&real, n));

    let hierarchy = run_hierarchy(&u, &family, false)?;
    let pass = nerve_matches_boundary
        && walls_acyclic.pass
        && trivial_intersection.pass
        && tidy.intersections_acyclic.pass
        && panel_orbits.pass
        && local_arrangement.pass
        && interior_links.pass
        && hierarchy.pass;
    Ok(TrickOutput {
        generators: w.names().to_vec(),
        quotient: quotient.recipe(),
        radius,
        chambers: u.chamber_count(),
        nerve_matches_boundary,
        walls: walls.len(),
        classes: family.len(),
        walls_acyclic,
        trivial_intersection,
        intersections_acyclic: tidy.intersections_acyclic,
        panel_orbits,
        local_arrangement,
        interior_links,
        hierarchy,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone_on_cycle(n: usize) -> (SimplicialComplex, SimplicialComplex) {
        let cycle = SimplicialComplex::cycle(n, "v").unwrap();
        (cycle.cone("o").unwrap(), cycle)
    }

    #[test]
    fn triangle_boundary_is_not_flag() {
        let m = SimplicialComplex::simplex(&["a", "b", "c"]).unwrap();
        let b = SimplicialComplex::simplex_boundary(&["a", "b", "c"]).unwrap();
        assert!(matches!(
            prepare_mirrored_manifold(&m, &b),
            Err(Error::NotFlag(_))
        ));
    }

    #[test]
    fn boundary_must_be_the_whole_boundary() {
        let (m, _) = cone_on_cycle(5);
        let partial = SimplicialComplex::from_labeled(&[vec!["v0", "v1"]]).unwrap();
        assert!(matches!(
            prepare_mirrored_manifold(&m, &partial),
            Err(Error::NotClosedBoundary(_))
        ));
        let closed = SimplicialComplex::cycle(5, "v").unwrap();
        assert!(matches!(
            prepare_mirrored_manifold(&closed, &closed),
            Err(Error::NotClosedBoundary(_))
        ));
    }

    #[test]
    fn square_gives_four_commuting_pairs() {
        let (m, b) = cone_on_cycle(4);
        let mm = prepare_mirrored_manifold(&m, &b).unwrap();
        assert_eq!(mm.system.rank(), 4);
        let n = mm.system.build_nerve().unwrap();
        assert!(n.complex.is_isomorphic(&b));
        assert!(mm.model.mirror_nerve().unwrap().is_isomorphic(&b));
    }

    #[test]
    fn interval_doubles_to_a_line() {
        let m = SimplicialComplex::from_labeled(&[vec!["p", "q"]]).unwrap();
        let b = SimplicialComplex::from_labeled(&[vec!["p"], vec!["q"]]).unwrap();
        let mm = prepare_mirrored_manifold(&m, &b).unwrap();
        let q = FiniteQuotient::from_permutations(&mm.system, "p: (1 2)\nq: (1 2)\n").unwrap();
        let out = run_trick(&mm, 3, &q).unwrap();
        assert!(out.pass, "{out:#?}");
        assert_eq!(out.hierarchy.terminal.components, 7);
    }

    #[test]
    fn pentagon_disk() {
        let (m, b) = cone_on_cycle(5);
        let mm = prepare_mirrored_manifold(&m, &b).unwrap();
        let q = FiniteQuotient::reflection_mod_p(&mm.system, 3).unwrap();
        let out = run_trick(&mm, 2, &q).unwrap();
        assert!(out.pass, "{out:#?}");
        assert!(out.nerve_matches_boundary);
        assert_eq!(out.hierarchy.terminal.isomorphic_to_model, out.chambers);
    }
}
