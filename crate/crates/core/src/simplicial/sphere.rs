//! Sphere and disk certificates.
//!
//! A certificate never errors: every check records pass/fail and a few
//! witnesses. In dimensions up to two a passing certificate identifies a
//! genuine sphere (or disk); from dimension three on only the homology
//! statement is made.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{Simplex, SimplicialComplex};

const MAX_WITNESSES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologyCheck {
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl TopologyCheck {
    pub fn passed() -> Self {
        TopologyCheck {
            pass: true,
            witnesses: Vec::new(),
        }
    }

    pub fn failed(reason: impl Into<String>) -> Self {
        TopologyCheck {
            pass: false,
            witnesses: vec![reason.into()],
        }
    }

    fn from_witnesses(witnesses: Vec<String>) -> Self {
        TopologyCheck {
            pass: witnesses.is_empty(),
            witnesses: witnesses.into_iter().take(MAX_WITNESSES).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereVerdict {
    Sphere,
    /// All checks pass in dimension ≥ 3; whether it is a sphere is left open.
    HomologySphere,
    NotSphere,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereCertificate {
    pub dim: isize,
    pub pseudomanifold: TopologyCheck,
    pub homology: TopologyCheck,
    pub links: TopologyCheck,
    pub verdict: SphereVerdict,
}

impl SphereCertificate {
    pub fn pass(&self) -> bool {
        self.verdict != SphereVerdict::NotSphere
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiskVerdict {
    Disk,
    HomologyDisk,
    NotDisk,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiskCertificate {
    pub dim: isize,
    pub pseudomanifold: TopologyCheck,
    pub acyclic: TopologyCheck,
    pub links: TopologyCheck,
    pub boundary: SphereCertificate,
    pub verdict: DiskVerdict,
}

impl DiskCertificate {
    pub fn pass(&self) -> bool {
        self.verdict != DiskVerdict::NotDisk
    }
}

impl SimplicialComplex {
    /// Closed pseudomanifold, homology of `S^d`, and links of homology spheres.
    pub fn is_homology_sphere(&self, d: isize) -> SphereCertificate {
        if d < 0 {
            let ok = *self == SimplicialComplex::empty_simplex();
            let check = if ok {
                TopologyCheck::passed()
            } else {
                TopologyCheck::failed("only {∅} is a (-1)-sphere")
            };
            return SphereCertificate {
                dim: d,
                pseudomanifold: check.clone(),
                homology: check.clone(),
                links: check,
                verdict: if ok { SphereVerdict::Sphere } else { SphereVerdict::NotSphere },
            };
        }
        let pseudomanifold = self.pseudomanifold_check(d, false);
        let homology = match self.reduced_homology() {
            Ok(h) if h.is_sphere_like(d) => TopologyCheck::passed(),
            Ok(h) => TopologyCheck::failed(format!("reduced homology {h}")),
            Err(e) => TopologyCheck::failed(e.to_string()),
        };
        let links = self.link_check(d, |_| false);
        let all = pseudomanifold.pass && homology.pass && links.pass;
        let verdict = match (all, d <= 2) {
            (false, _) => SphereVerdict::NotSphere,
            (true, true) => SphereVerdict::Sphere,
            (true, false) => SphereVerdict::HomologySphere,
        };
        SphereCertificate {
            dim: d,
            pseudomanifold,
            homology,
            links,
            verdict,
        }
    }

    /// Pseudomanifold with boundary, acyclic, boundary a homology sphere,
    /// links of interior simplices homology spheres and of boundary ones acyclic.
    pub fn is_homology_disk(&self, d: isize) -> DiskCertificate {
        let pseudomanifold = if d < 1 {
            if d == 0 && self.vertex_count() == 1 {
                TopologyCheck::passed()
            } else {
                TopologyCheck::failed(format!("not a {d}-disk"))
            }
        } else {
            self.pseudomanifold_check(d, true)
        };
        let acyclic = match self.reduced_homology() {
            Ok(h) if h.is_acyclic() && !self.is_void() => TopologyCheck::passed(),
            Ok(h) => TopologyCheck::failed(format!("reduced homology {h}")),
            Err(e) => TopologyCheck::failed(e.to_string()),
        };
        let ridges = self.boundary_ridges();
        let boundary_complex = if d == 0 {
            SimplicialComplex::empty_simplex()
        } else {
            self.sub_from_simplices(ridges.clone())
        };
        let boundary = boundary_complex.is_homology_sphere(d - 1);
        let on_boundary: BTreeSet<Simplex> = ridges
            .iter()
            .flat_map(|r| {
                let mut faces = Vec::new();
                super::for_each_face(r, |f| {
                    if !f.is_empty() {
                        faces.push(f.to_vec());
                    }
                });
                faces
            })
            .collect();
        let links = self.link_check(d, |s| on_boundary.contains(s));
        let all = pseudomanifold.pass && acyclic.pass && boundary.pass() && links.pass;
        let verdict = match (all, d <= 2) {
            (false, _) => DiskVerdict::NotDisk,
            (true, true) => DiskVerdict::Disk,
            (true, false) => DiskVerdict::HomologyDisk,
        };
        DiskCertificate {
            dim: d,
            pseudomanifold,
            acyclic,
            links,
            boundary,
            verdict,
        }
    }

    /// Pure of dimension `d`, ridges in exactly two facets (or one or two when
    /// `with_boundary`), facets strongly connected (not required for `d = 0`).
    pub fn pseudomanifold_check(&self, d: isize, with_boundary: bool) -> TopologyCheck {
        if self.is_void() || self.dim() != d || !self.is_pure() {
            return TopologyCheck::failed(format!(
                "not pure of dimension {d} (dimension {})",
                self.dim()
            ));
        }
        if d == 0 {
            let n = self.vertex_count();
            return if n == 2 || (with_boundary && n == 1) {
                TopologyCheck::passed()
            } else {
                TopologyCheck::failed(format!("{n} points"))
            };
        }
        let mut ridge_facets: HashMap<Simplex, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets().iter().enumerate() {
            for skip in 0..f.len() {
                let r: Simplex = f
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridge_facets.entry(r).or_default().push(i);
            }
        }
        let mut witnesses = Vec::new();
        let mut bad: Vec<(&Simplex, usize)> = ridge_facets
            .iter()
            .filter(|(_, fs)| !(fs.len() == 2 || (with_boundary && fs.len() == 1)))
            .map(|(r, fs)| (r, fs.len()))
            .collect();
        bad.sort();
        for (r, c) in bad {
            witnesses.push(format!("ridge {} lies in {c} facets", self.simplex_label(r)));
        }
        if with_boundary && ridge_facets.values().all(|fs| fs.len() == 2) {
            witnesses.push("boundary is empty".to_string());
        }
        // strong connectivity
        let n = self.facets().len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for fs in ridge_facets.values() {
            for w in fs.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let roots: BTreeSet<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        if roots.len() > 1 {
            witnesses.push(format!("facets fall into {} strong components", roots.len()));
        }
        TopologyCheck::from_witnesses(witnesses)
    }

    /// Every non-empty simplex `σ` has a link with the homology of
    /// `S^{d-1-dim σ}`, or is acyclic when `boundary(σ)` holds.
    fn link_check(&self, d: isize, boundary: impl Fn(&Simplex) -> bool) -> TopologyCheck {
        let mut witnesses = Vec::new();
        for (k, simplices) in self.simplices_by_dim().iter().enumerate() {
            let expect = d - 1 - k as isize;
            for s in simplices {
                let lk = match self.link(s) {
                    Ok(l) => l,
                    Err(e) => {
                        witnesses.push(e.to_string());
                        continue;
                    }
                };
                let ok = if boundary(s) {
                    !lk.is_void() && lk.is_acyclic().unwrap_or(false)
                } else if expect < 0 {
                    lk == SimplicialComplex::empty_simplex()
                } else {
                    lk.reduced_homology().is_ok_and(|h| h.is_sphere_like(expect))
                };
                if !ok {
                    witnesses.push(format!("link of {}", self.simplex_label(s)));
                    if witnesses.len() >= MAX_WITNESSES {
                        return TopologyCheck::from_witnesses(witnesses);
                    }
                }
            }
        }
        TopologyCheck::from_witnesses(witnesses)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s0(a: &str, b: &str) -> SimplicialComplex {
        SimplicialComplex::from_labeled(&[vec![a], vec![b]]).unwrap()
    }

    #[test]
    fn cycles_are_circles() {
        let c5 = SimplicialComplex::cycle(5, "v").unwrap();
        assert_eq!(c5.is_homology_sphere(1).verdict, SphereVerdict::Sphere);
        assert_eq!(c5.is_homology_sphere(2).verdict, SphereVerdict::NotSphere);
    }

    #[test]
    fn octahedron_and_cross_polytope() {
        let oct = s0("a", "b").join(&s0("c", "d")).unwrap().join(&s0("e", "f")).unwrap();
        assert_eq!(oct.is_homology_sphere(2).verdict, SphereVerdict::Sphere);
        let c4c4 = SimplicialComplex::cycle(4, "p")
            .unwrap()
            .join(&SimplicialComplex::cycle(4, "q").unwrap())
            .unwrap();
        let cert = c4c4.is_homology_sphere(3);
        assert_eq!(cert.verdict, SphereVerdict::HomologySphere);
        assert!(cert.links.pass);
    }

    #[test]
    fn wedge_of_circles_fails() {
        let w = SimplicialComplex::from_labeled(&[
            vec!["a", "b"],
            vec!["b", "c"],
            vec!["c", "a"],
            vec!["a", "d"],
            vec!["d", "e"],
            vec!["e", "a"],
        ])
        .unwrap();
        let cert = w.is_homology_sphere(1);
        assert!(!cert.pseudomanifold.pass);
        assert!(!cert.homology.pass);
        assert!(!cert.links.pass);
    }

    #[test]
    fn two_spheres_sharing_nothing_are_not_strongly_connected() {
        let a = SimplicialComplex::simplex_boundary(&["a", "b", "c"]).unwrap();
        let b = SimplicialComplex::simplex_boundary(&["x", "y", "z"]).unwrap();
        let mut facets: Vec<Vec<String>> = Vec::new();
        for k in [&a, &b] {
            for f in k.facets() {
                facets.push(f.iter().map(|&v| k.label(v).to_string()).collect());
            }
        }
        let both = SimplicialComplex::from_labeled(&facets).unwrap();
        assert!(!both.pseudomanifold_check(1, false).pass);
    }

    #[test]
    fn disks() {
        let edge = SimplicialComplex::simplex(&["a", "b"]).unwrap();
        assert_eq!(edge.is_homology_disk(1).verdict, DiskVerdict::Disk);
        let fan = SimplicialComplex::cycle(5, "v").unwrap().cone("c").unwrap();
        let cert = fan.is_homology_disk(2);
        assert_eq!(cert.verdict, DiskVerdict::Disk, "{cert:?}");
        assert_eq!(cert.boundary.verdict, SphereVerdict::Sphere);
        let annulus = SimplicialComplex::from_labeled(&[
            vec!["a", "b", "x"],
            vec!["b", "x", "y"],
            vec!["b", "c", "y"],
            vec!["c", "y", "z"],
            vec!["c", "a", "z"],
            vec!["a", "z", "x"],
        ])
        .unwrap();
        assert_eq!(annulus.is_homology_disk(2).verdict, DiskVerdict::NotDisk);
        let c5 = SimplicialComplex::cycle(5, "v").unwrap();
        assert_eq!(c5.is_homology_disk(1).verdict, DiskVerdict::NotDisk);
    }

    #[test]
    fn minus_one_sphere() {
        assert!(SimplicialComplex::empty_simplex().is_homology_sphere(-1).pass());
        assert!(!SimplicialComplex::void().is_homology_sphere(-1).pass());
    }
}
