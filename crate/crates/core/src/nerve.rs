//! The nerve of a Coxeter system and its fundamental chamber.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::coxeter::{mask_of, members_of, CoxeterSystem, Gen};
use crate::error::{Error, Result};
use crate::limits;
use crate::simplicial::{DiskCertificate, SimplicialComplex, SphereCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphericalSubset {
    pub subset: Vec<Gen>,
    pub order: BigUint,
}

/// Simplices are the non-empty spherical subsets; vertex `i` is generator `i`.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub complex: SimplicialComplex,
    /// All spherical subsets including `∅`, by size then lexicographically.
    pub spherical: Vec<SphericalSubset>,
}

impl Nerve {
    pub fn maximal_subsets(&self) -> Vec<Vec<Gen>> {
        self.complex
            .facets()
            .iter()
            .map(|f| f.iter().map(|&v| v as Gen).collect())
            .collect()
    }

    pub fn is_simplex(&self, subset: &[Gen]) -> bool {
        let s: Vec<usize> = subset.iter().map(|&g| g as usize).collect();
        subset.is_empty() || self.complex.contains_simplex(&s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifoldCertificate {
    /// The nerve is checked as an `(n-1)`-sphere.
    pub sphere: SphereCertificate,
    /// The nerve is checked as an `(n-1)`-disk with sphere boundary.
    pub disk: DiskCertificate,
}

impl ManifoldCertificate {
    pub fn pass(&self) -> bool {
        self.sphere.pass() || self.disk.pass()
    }
}

impl CoxeterSystem {
    /// Spherical subsets by monotone pruning: a `k`-subset is tested only if
    /// all of its `(k-1)`-subsets are spherical.
    pub fn build_nerve(&self) -> Result<Nerve> {
        let n = self.rank();
        let mut levels: Vec<BTreeSet<u64>> = vec![BTreeSet::from([0u64])];
        let mut total = 1usize;
        loop {
            let prev = levels.last().unwrap();
            let mut next = BTreeSet::new();
            for &m in prev {
                let top = if m == 0 { 0 } else { 64 - m.leading_zeros() as usize };
                for s in top..n {
                    let cand = m | (1u64 << s);
                    let faces_ok = members_of(cand)
                        .iter()
                        .all(|&t| prev.contains(&(cand & !(1u64 << t))));
                    if faces_ok && self.is_spherical(&members_of(cand)) {
                        next.insert(cand);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            total += next.len();
            if total > limits::max_cells() {
                return Err(Error::ResourceLimit {
                    what: "spherical subsets",
                    limit: limits::max_cells(),
                });
            }
            levels.push(next);
        }
        let mut spherical = Vec::with_capacity(total);
        let mut simplices = Vec::new();
        for level in &levels {
            for &m in level {
                let subset = members_of(m);
                let order = self.spherical_order(&subset)?;
                if !subset.is_empty() {
                    simplices.push(subset.iter().map(|&g| g as usize).collect());
                }
                spherical.push(SphericalSubset { subset, order });
            }
        }
        spherical.sort_by(|a, b| {
            a.subset
                .len()
                .cmp(&b.subset.len())
                .then_with(|| a.subset.cmp(&b.subset))
        });
        let complex = SimplicialComplex::new(self.names().to_vec(), simplices)?;
        Ok(Nerve { complex, spherical })
    }

    /// Is the nerve an `(n-1)`-sphere (so that the Davis complex is an
    /// `n`-manifold), or an `(n-1)`-disk?
    pub fn manifold_check(&self, nerve: &Nerve, n: isize) -> ManifoldCertificate {
        ManifoldCertificate {
            sphere: nerve.complex.is_homology_sphere(n - 1),
            disk: nerve.complex.is_homology_disk(n - 1),
        }
    }
}

/// A simplicial complex with mirrors indexed by a finite set `S`.
///
/// Each vertex `x` carries `S(x)`, the set of mirrors containing it, and the
/// mirror `K_s` is the full subcomplex on `{x : s ∈ S(x)}`.
#[derive(Debug, Clone)]
pub struct MirroredComplex {
    pub complex: SimplicialComplex,
    /// `S(x)` as a bit mask.
    pub s_of: Vec<u64>,
    pub mirror_names: Vec<String>,
}

impl MirroredComplex {
    pub fn new(complex: SimplicialComplex, s_of: Vec<u64>, mirror_names: Vec<String>) -> Self {
        assert_eq!(complex.vertex_count(), s_of.len());
        MirroredComplex {
            complex,
            s_of,
            mirror_names,
        }
    }

    pub fn mirror_count(&self) -> usize {
        self.mirror_names.len()
    }

    pub fn s_of(&self, x: usize) -> Vec<Gen> {
        members_of(self.s_of[x])
    }

    /// Vertices of `K_s`.
    pub fn mirror_vertices(&self, s: Gen) -> Vec<usize> {
        (0..self.s_of.len())
            .filter(|&x| self.s_of[x] & (1u64 << s) != 0)
            .collect()
    }

    pub fn mirror(&self, s: Gen) -> SimplicialComplex {
        self.complex
            .induced(&self.mirror_vertices(s).into_iter().collect())
    }

    /// The nerve of the covering by mirrors: subsets `T` with `⋂ K_t ≠ ∅`.
    pub fn mirror_nerve(&self) -> Result<SimplicialComplex> {
        // mirrors are full subcomplexes, so they meet iff they share a vertex
        let simplices = self
            .s_of
            .iter()
            .filter(|&&m| m != 0)
            .map(|&m| members_of(m).into_iter().map(usize::from).collect())
            .collect();
        SimplicialComplex::new(self.mirror_names.clone(), simplices)
    }

    /// Vertex colouring by `S(x)`, for mirror-preserving isomorphism tests.
    pub fn colors(&self) -> Vec<u64> {
        self.s_of.clone()
    }
}

/// `K` = cone on the barycentric subdivision of `L`; the vertex for a simplex
/// `T` of `L` has `S(x) = T`, and the cone point `*` has `S(*) = ∅`.
pub fn build_chamber(nerve: &Nerve) -> Result<MirroredComplex> {
    let l = &nerve.complex;
    let sd = l.barycentric_subdivision()?;
    let k = if sd.vertex_count() == 0 {
        SimplicialComplex::simplex(&["*"])?
    } else {
        sd.cone("*")?
    };
    let simplex_masks: std::collections::HashMap<String, u64> = l
        .simplices_by_dim()
        .into_iter()
        .flatten()
        .map(|s| {
            let gens: Vec<Gen> = s.iter().map(|&v| v as Gen).collect();
            (l.simplex_label(&s), mask_of(&gens))
        })
        .collect();
    let s_of = k
        .labels()
        .iter()
        .map(|lab| simplex_masks.get(lab).copied().unwrap_or(0))
        .collect();
    Ok(MirroredComplex::new(k, s_of, l.labels().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::Order;

    fn pentagon() -> CoxeterSystem {
        let names = (1..=5).map(|i| format!("s{i}")).collect();
        CoxeterSystem::right_angled(names, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn pentagon_nerve_is_a_five_cycle() {
        let w = pentagon();
        let n = w.build_nerve().unwrap();
        assert!(n.complex.is_isomorphic(&SimplicialComplex::cycle(5, "v").unwrap()));
        assert_eq!(n.spherical.len(), 11);
        assert_eq!(n.spherical[0].order, BigUint::from(1u32));
        assert!(w.manifold_check(&n, 2).sphere.pass());
    }

    #[test]
    fn infinite_dihedral_nerve() {
        let w = CoxeterSystem::from_fn(vec!["a".into(), "b".into()], |_, _| Order::Infinite)
            .unwrap();
        let n = w.build_nerve().unwrap();
        assert_eq!(n.complex.f_vector(), vec![2]);
        let k = build_chamber(&n).unwrap();
        assert_eq!(k.complex.f_vector(), vec![3, 2]);
        assert_eq!(k.mirror_vertices(0).len(), 1);
        assert_eq!(k.mirror_vertices(1).len(), 1);
    }

    #[test]
    fn single_generator_chamber_is_an_edge() {
        let w = CoxeterSystem::from_fn(vec!["s".into()], |_, _| Order::Finite(1)).unwrap();
        let n = w.build_nerve().unwrap();
        let k = build_chamber(&n).unwrap();
        assert_eq!(k.complex.f_vector(), vec![2, 1]);
        assert_eq!(k.mirror_vertices(0).len(), 1);
    }

    #[test]
    fn edge_nerve_is_a_disk() {
        let w = CoxeterSystem::right_angled(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap();
        let n = w.build_nerve().unwrap();
        let cert = w.manifold_check(&n, 2);
        assert!(!cert.sphere.pass());
        assert!(cert.disk.pass());
    }

    #[test]
    fn pentagon_chamber_and_mirrors() {
        let n = pentagon().build_nerve().unwrap();
        let k = build_chamber(&n).unwrap();
        assert_eq!(k.complex.vertex_count(), 11);
        for s in 0..5 {
            let m = k.mirror(s);
            assert_eq!(m.f_vector(), vec![3, 2]);
        }
        assert!(k.mirror_nerve().unwrap().is_isomorphic(&n.complex));
        let star = k.complex.vertex("*").unwrap();
        assert_eq!(k.s_of[star], 0);
    }

    #[test]
    fn nerve_of_h3_is_a_triangle() {
        let w = CoxeterSystem::from_fn(
            vec!["a".into(), "b".into(), "c".into()],
            |i, j| match (i.min(j), i.max(j)) {
                (0, 1) => Order::Finite(3),
                (1, 2) => Order::Finite(5),
                _ => Order::Finite(2),
            },
        )
        .unwrap();
        let n = w.build_nerve().unwrap();
        assert_eq!(n.complex.f_vector(), vec![3, 3, 1]);
        assert_eq!(n.spherical.last().unwrap().order, BigUint::from(120u32));
    }
}
