//! Hierarchies of cuts along wall families.
//!
//! A family is an ordered list of wall classes. Running it cuts the classes
//! in order; each cut is certified by a Mayer–Vietoris certificate and the
//! remaining family is checked for tidiness again. The run ends when every
//! class is cut, and the pieces are compared with the model of a chamber.

mod mv;
mod tidy;

pub use mv::{mayer_vietoris, MayerVietorisCertificate, MvDegree};
pub use tidy::{check_tidy, TidyCertificate};

use rayon::prelude::*;
use serde::Serialize;

use crate::davis::{wall_classes, ChamberComplex, FiniteQuotient, Panel, Wall};
use crate::error::{Error, Result};
use crate::simplicial::{HomologyProfile, TopologyCheck};

pub const CAVEAT_ACYCLIC: &str =
    "contractibility is certified as integral acyclicity; simple connectivity is not decided";
pub const CAVEAT_TRUNCATED: &str =
    "claims are scoped to the ball; truncated panels are never cut";
pub const CAVEAT_OVERRIDE: &str = "tidiness failed and the run was forced";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallClass {
    pub name: String,
    pub walls: Vec<Wall>,
}

impl WallClass {
    pub fn panels(&self) -> Vec<Panel> {
        let mut out: Vec<Panel> = self.walls.iter().flat_map(|w| w.panels.iter().copied()).collect();
        out.sort_unstable();
        out
    }
}

/// Ordered wall classes `E_0, ..., E_r`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WallFamily {
    pub classes: Vec<WallClass>,
}

impl WallFamily {
    /// Γ-orbit classes of the given walls, ordered by their smallest wall.
    pub fn from_quotient(u: &ChamberComplex, walls: &[Wall], q: &FiniteQuotient) -> Self {
        let classes = wall_classes(q, u, walls)
            .into_iter()
            .map(|members| WallClass {
                name: u.wall_name(&walls[members[0]]),
                walls: members.into_iter().map(|i| walls[i].clone()).collect(),
            })
            .collect();
        WallFamily { classes }
    }

    /// One class per wall.
    pub fn singletons(u: &ChamberComplex, walls: &[Wall]) -> Self {
        WallFamily {
            classes: walls
                .iter()
                .map(|w| WallClass {
                    name: u.wall_name(w),
                    walls: vec![w.clone()],
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The classes in the order given by `order`, which must be a
    /// permutation of `0..len`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        for &i in order {
            if i >= self.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!(
                    "order {order:?} is not a permutation of 0..{}",
                    self.len()
                )));
            }
        }
        if order.len() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "order lists {} of {} classes",
                order.len(),
                self.len()
            )));
        }
        Ok(WallFamily {
            classes: order.iter().map(|&i| self.classes[i].clone()).collect(),
        })
    }

    /// Keeps the panels of `u` that are still glued; empty walls and classes
    /// are dropped.
    pub fn restricted_to(&self, u: &ChamberComplex) -> Self {
        let member = |c: usize| u.members().binary_search(&c).is_ok();
        let classes = self
            .classes
            .iter()
            .filter_map(|class| {
                let walls: Vec<Wall> = class
                    .walls
                    .iter()
                    .filter_map(|w| {
                        let panels: Vec<Panel> = w
                            .panels
                            .iter()
                            .copied()
                            .filter(|p| member(p.lo) && member(p.hi) && u.is_open(p))
                            .collect();
                        (!panels.is_empty()).then(|| Wall {
                            reflection: w.reflection.clone(),
                            panels,
                        })
                    })
                    .collect();
                (!walls.is_empty()).then(|| WallClass {
                    name: class.name.clone(),
                    walls,
                })
            })
            .collect();
        WallFamily { classes }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HierarchyStep {
    pub index: usize,
    pub class: String,
    pub walls: usize,
    pub panels: usize,
    pub components_before: usize,
    pub components_after: usize,
    pub homology_m: HomologyProfile,
    pub homology_f: HomologyProfile,
    pub homology_n: HomologyProfile,
    /// Components of the cut-open complex are acyclic.
    pub pieces_acyclic: TopologyCheck,
    pub mayer_vietoris: MayerVietorisCertificate,
    /// Tidiness of the classes still to be cut, on the cut-open complex.
    pub residual_tidy: TidyCertificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct TerminalCensus {
    pub components: usize,
    pub chambers: usize,
    pub single_chambers: bool,
    pub isomorphic_to_model: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HierarchyTrace {
    pub initial_tidy: TidyCertificate,
    pub overridden: bool,
    pub steps: Vec<HierarchyStep>,
    pub terminal: TerminalCensus,
    /// Elements of Γ fixing the chamber set, for induced hierarchies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<Vec<String>>,
    pub caveats: Vec<String>,
    pub pass: bool,
    #[serde(skip)]
    stages: Vec<ChamberComplex>,
    #[serde(skip)]
    family: WallFamily,
}

impl HierarchyTrace {
    /// `M_0, ..., M_{m+1}`.
    pub fn stages(&self) -> &[ChamberComplex] {
        &self.stages
    }

    pub fn family(&self) -> &WallFamily {
        &self.family
    }

    pub fn terminal_stage(&self) -> &ChamberComplex {
        self.stages.last().expect("a trace has at least one stage")
    }
}

fn census(u: &ChamberComplex) -> Result<TerminalCensus> {
    let comps = u.chamber_components();
    let model = &u.model().complex;
    let iso: Vec<bool> = comps
        .par_iter()
        .map(|c| -> Result<bool> {
            let piece = u.restrict(c).realize()?;
            Ok(piece.complex.is_isomorphic(model))
        })
        .collect::<Result<_>>()?;
    let single = comps.iter().all(|c| c.len() == 1);
    let isomorphic = iso.iter().filter(|b| **b).count();
    Ok(TerminalCensus {
        components: comps.len(),
        chambers: u.chamber_count(),
        single_chambers: single,
        isomorphic_to_model: isomorphic,
        pass: single && isomorphic == comps.len(),
    })
}

/// Cuts the classes of `family` in order. Without `force`, a failed
/// tidiness check (initially, or on the residual family after a cut) is an
/// error carrying the step index.
pub fn run_hierarchy(m: &ChamberComplex, family: &WallFamily, force: bool) -> Result<HierarchyTrace> {
    let initial_tidy = check_tidy(m, family)?;
    if !initial_tidy.pass && !force {
        return Err(Error::TidyViolation {
            step: 0,
            reason: initial_tidy.first_failure().unwrap_or_default(),
        });
    }
    let mut overridden = !initial_tidy.pass;
    let mut stages = vec![m.clone()];
    let mut steps = Vec::with_capacity(family.len());
    let mut current = m.clone();
    let mut real = current.realize()?;
    for (i, class) in family.classes.iter().enumerate() {
        let panels = class.panels();
        let next = current.cut_open(&panels)?;
        let real_next = next.realize()?;
        let mayer_vietoris = mv::mayer_vietoris(&current, &real, &next, &real_next, &panels)?;
        let f = real.complex.sub_from_simplices(current.panel_simplices(&real, &panels));
        let pieces = real_next.complex.component_complexes();
        let pieces_ok: Vec<bool> = pieces
            .par_iter()
            .map(|c| c.is_acyclic())
            .collect::<Result<_>>()?;
        let bad: Vec<String> = pieces
            .iter()
            .zip(&pieces_ok)
            .filter(|(_, ok)| !**ok)
            .map(|(c, _)| format!("piece at {} is not acyclic", c.label(0)))
            .take(8)
            .collect();
        let residual = WallFamily {
            classes: family.classes[i + 1..].to_vec(),
        };
        let residual_tidy = check_tidy(&next, &residual)?;
        if !residual_tidy.pass && !overridden {
            if !force {
                return Err(Error::TidyViolation {
                    step: i + 1,
                    reason: residual_tidy.first_failure().unwrap_or_default(),
                });
            }
            overridden = true;
        }
        steps.push(HierarchyStep {
            index: i,
            class: class.name.clone(),
            walls: class.walls.len(),
            panels: panels.len(),
            components_before: current.chamber_components().len(),
            components_after: next.chamber_components().len(),
            homology_m: real.complex.homology(false)?,
            homology_f: f.homology(false)?,
            homology_n: real_next.complex.homology(false)?,
            pieces_acyclic: TopologyCheck {
                pass: bad.is_empty(),
                witnesses: bad,
            },
            mayer_vietoris,
            residual_tidy,
        });
        stages.push(next.clone());
        current = next;
        real = real_next;
    }
    let terminal = census(&current)?;
    let mut caveats = vec![CAVEAT_ACYCLIC.to_string()];
    if current.truncated_side_count() > 0 {
        caveats.push(CAVEAT_TRUNCATED.to_string());
    }
    if overridden {
        caveats.push(CAVEAT_OVERRIDE.to_string());
    }
    let pass = initial_tidy.pass
        && terminal.pass
        && steps.iter().all(|s| {
            s.mayer_vietoris.pass && s.pieces_acyclic.pass && s.residual_tidy.pass
        });
    Ok(HierarchyTrace {
        initial_tidy,
        overridden,
        steps,
        terminal,
        stabilizer: None,
        caveats,
        pass,
        stages,
        family: family.clone(),
    })
}

/// The hierarchy induced on a component of some stage of `trace`: the
/// chamber set is cut by the classes not yet used at that stage. With a
/// quotient, the elements of Γ inside the ball that map the chamber set
/// onto itself are recorded.
pub fn induced_hierarchy(
    trace: &HierarchyTrace,
    component: &[usize],
    quotient: Option<&FiniteQuotient>,
) -> Result<HierarchyTrace> {
    let mut wanted = component.to_vec();
    wanted.sort_unstable();
    wanted.dedup();
    let stage = trace
        .stages
        .iter()
        .position(|u| u.chamber_components().contains(&wanted))
        .ok_or_else(|| {
            let u = &trace.stages[0];
            let names: Vec<String> = wanted
                .iter()
                .filter(|&&c| c < u.all_elements().len())
                .map(|&c| u.chamber_name(c))
                .collect();
            Error::NotAComponent(format!("{{{}}}", names.join(",")))
        })?;
    let u = &trace.stages[stage];
    let sub = u.restrict(&wanted);
    let rest = WallFamily {
        classes: trace.family.classes[stage.min(trace.family.len())..].to_vec(),
    };
    let family = rest.restricted_to(&sub);
    let mut out = run_hierarchy(&sub, &family, trace.overridden)?;
    if let Some(q) = quotient {
        out.stabilizer = Some(stabilizer(&sub, &wanted, q)?);
    }
    Ok(out)
}

fn stabilizer(u: &ChamberComplex, chambers: &[usize], q: &FiniteQuotient) -> Result<Vec<String>> {
    let w = u.system();
    let id = q.identity();
    let base = u.element(chambers[0]);
    let base_inv = w.inverse(base)?;
    let mut out = Vec::new();
    for &c in chambers {
        let g = w.multiply(u.element(c), &base_inv)?;
        if q.image(&g) != id {
            continue;
        }
        let mut fixes = true;
        for &d in chambers {
            let image = w.multiply(&g, u.element(d))?;
            match u.chamber_of(&image) {
                Some(k) if chambers.binary_search(&k).is_ok() => {}
                _ => {
                    fixes = false;
                    break;
                }
            }
        }
        if fixes {
            out.push(w.format_word(g.normal_form()));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests;
