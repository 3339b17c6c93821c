//! The four tidiness conditions for a chamber complex and a wall family.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::WallFamily;
use crate::davis::{ChamberComplex, LocalArrangementCertificate, Realization};
use crate::error::{Error, Result};
use crate::simplicial::{closure_by_dim, Simplex, SimplicialComplex, TopologyCheck};

const MAX_WITNESSES: usize = 8;
/// Classes meeting at one vertex beyond which intersections are not enumerated.
const MAX_CLASSES_AT_VERTEX: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct TidyCertificate {
    /// Every component of `M` is acyclic.
    pub components_acyclic: TopologyCheck,
    /// Walls of one class are pairwise disjoint and every component of a
    /// class is acyclic.
    pub classes_acyclic: TopologyCheck,
    /// Components of every non-empty intersection of two or more classes are
    /// acyclic.
    pub intersections_acyclic: TopologyCheck,
    pub intersections_checked: usize,
    /// `E ∩ ∂M = ∂E` on codimension-one faces of each class.
    pub boundary_neat: TopologyCheck,
    pub local_arrangement: LocalArrangementCertificate,
    /// Contractibility is certified only as integral acyclicity.
    pub acyclicity_only: bool,
    pub pass: bool,
}

/// Face-closed simplex set of a class carrier in the realization.
fn carrier(u: &ChamberComplex, real: &Realization, family: &WallFamily, i: usize) -> Vec<Simplex> {
    u.panel_simplices(real, &family.classes[i].panels())
}

fn face_set(facets: &[Simplex]) -> HashSet<Simplex> {
    closure_by_dim(facets).into_iter().flatten().collect()
}

fn acyclic_components(ambient: &SimplicialComplex, simplices: Vec<Simplex>) -> Result<Vec<bool>> {
    let sub = ambient.sub_from_simplices(simplices);
    sub.component_complexes()
        .par_iter()
        .map(|c| c.is_acyclic())
        .collect()
}

fn check(failures: Vec<String>) -> TopologyCheck {
    TopologyCheck {
        pass: failures.is_empty(),
        witnesses: failures.into_iter().take(MAX_WITNESSES).collect(),
    }
}

/// Ridges of a pure complex given by facets, split into those lying in one
/// facet and all of them.
fn ridges(facets: &[Simplex]) -> (BTreeSet<Simplex>, BTreeSet<Simplex>) {
    let mut count: HashMap<Simplex, usize> = HashMap::new();
    for f in facets.iter().filter(|f| f.len() > 1) {
        for skip in 0..f.len() {
            let mut r = f.clone();
            r.remove(skip);
            *count.entry(r).or_default() += 1;
        }
    }
    let all = count.keys().cloned().collect();
    let once = count.into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r).collect();
    (once, all)
}

pub fn check_tidy(m: &ChamberComplex, family: &WallFamily) -> Result<TidyCertificate> {
    for class in &family.classes {
        for p in class.panels() {
            if !m.is_open(&p) || !m.members().contains(&p.lo) || !m.members().contains(&p.hi) {
                return Err(Error::PanelNotActive(m.panel_name(&p)));
            }
        }
    }
    let real = m.realize()?;
    let complex = &real.complex;

    let comps = complex.component_complexes();
    let comp_ok: Vec<bool> = comps
        .par_iter()
        .map(|c| c.is_acyclic())
        .collect::<Result<_>>()?;
    let components_acyclic = check(
        comps
            .iter()
            .zip(&comp_ok)
            .filter(|(_, ok)| !**ok)
            .map(|(c, _)| format!("component at {} is not acyclic", c.label(0)))
            .collect(),
    );

    let carriers: Vec<Vec<Simplex>> = (0..family.classes.len())
        .map(|i| carrier(m, &real, family, i))
        .collect();

    // classes: disjoint walls, acyclic components
    let mut class_failures = Vec::new();
    for (i, class) in family.classes.iter().enumerate() {
        let mut owner: HashMap<usize, usize> = HashMap::new();
        for (k, wall) in class.walls.iter().enumerate() {
            for v in m.panel_vertices(&real, &wall.panels) {
                if let Some(&other) = owner.get(&v) {
                    if other != k {
                        class_failures.push(format!(
                            "class {}: walls {} and {} meet at {}",
                            class.name,
                            m.wall_name(&class.walls[other]),
                            m.wall_name(wall),
                            complex.label(v)
                        ));
                    }
                } else {
                    owner.insert(v, k);
                }
            }
        }
        let ok = acyclic_components(complex, carriers[i].clone())?;
        if ok.iter().any(|b| !b) {
            class_failures.push(format!("class {} has a component that is not acyclic", class.name));
        }
    }
    class_failures.dedup();
    let classes_acyclic = check(class_failures);

    // intersections of two or more classes that share a vertex
    let mut classes_at: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, c) in carriers.iter().enumerate() {
        for v in c.iter().flatten() {
            classes_at.entry(*v).or_default().insert(i);
        }
    }
    let mut subsets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut crowded = Vec::new();
    for (v, set) in &classes_at {
        let set: Vec<usize> = set.iter().copied().collect();
        if set.len() < 2 {
            continue;
        }
        if set.len() > MAX_CLASSES_AT_VERTEX {
            crowded.push(format!("{} classes meet at {}", set.len(), complex.label(*v)));
            continue;
        }
        for mask in 1u32..(1 << set.len()) {
            if mask.count_ones() >= 2 {
                subsets.insert(
                    (0..set.len())
                        .filter(|b| mask & (1 << b) != 0)
                        .map(|b| set[b])
                        .collect(),
                );
            }
        }
    }
    let faces: Vec<HashSet<Simplex>> = carriers.iter().map(|c| face_set(c)).collect();
    let subsets: Vec<Vec<usize>> = subsets.into_iter().collect();
    let mut inter_failures: Vec<String> = subsets
        .par_iter()
        .map(|sub| {
            let smallest = *sub.iter().min_by_key(|&&i| faces[i].len()).unwrap();
            let common: Vec<Simplex> = faces[smallest]
                .iter()
                .filter(|s| sub.iter().all(|&i| faces[i].contains(*s)))
                .cloned()
                .collect();
            let ok = acyclic_components(complex, common)?;
            Ok(ok.iter().any(|b| !b).then(|| {
                let names: Vec<&str> = sub.iter().map(|&i| family.classes[i].name.as_str()).collect();
                format!("intersection of {} is not acyclic", names.join(" & "))
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    inter_failures.extend(crowded);
    let intersections_acyclic = check(inter_failures);

    // E ∩ ∂M = ∂E
    let boundary = face_set(&complex.boundary_ridges());
    let mut neat_failures = Vec::new();
    for (i, c) in carriers.iter().enumerate() {
        let (edge, all) = ridges(c);
        let on_boundary: BTreeSet<Simplex> =
            all.into_iter().filter(|r| boundary.contains(r)).collect();
        if on_boundary != edge {
            let bad = on_boundary.symmetric_difference(&edge).next().unwrap();
            let names: Vec<&str> = bad.iter().map(|&v| complex.label(v)).collect();
            neat_failures.push(format!(
                "class {} at {{{}}}",
                family.classes[i].name,
                names.join(",")
            ));
        }
    }
    let boundary_neat = check(neat_failures);

    let walls = m.walls()?;
    let local_arrangement = m.local_arrangement_check(&real, &walls)?;

    let pass = components_acyclic.pass
        && classes_acyclic.pass
        && intersections_acyclic.pass
        && boundary_neat.pass
        && local_arrangement.pass;
    Ok(TidyCertificate {
        components_acyclic,
        classes_acyclic,
        intersections_acyclic,
        intersections_checked: subsets.len(),
        boundary_neat,
        local_arrangement,
        acyclicity_only: true,
        pass,
    })
}

impl TidyCertificate {
    /// First failed condition, for error messages.
    pub fn first_failure(&self) -> Option<String> {
        let named = [
            ("components", &self.components_acyclic),
            ("classes", &self.classes_acyclic),
            ("intersections", &self.intersections_acyclic),
            ("boundary", &self.boundary_neat),
        ];
        for (name, c) in named {
            if !c.pass {
                return Some(format!("{name}: {}", c.witnesses.join("; ")));
            }
        }
        (!self.local_arrangement.pass)
            .then(|| format!("local arrangement: {}", self.local_arrangement.failures.join("; ")))
    }
}
