//! Independent oracles: floating-point Tits representations and a direct
//! quotient of `W × K`. Nothing here calls the classifier or the chamber
//! system code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::path::PathBuf;

use dh_core::{CoxeterSystem, Order, MirroredComplex, SimplicialComplex};

pub const ENUMERATION_CAP: usize = 10_000;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_files(ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    v.sort();
    v
}

pub fn coxeter(name: &str) -> CoxeterSystem {
    let text = std::fs::read_to_string(corpus_dir().join(name)).unwrap();
    CoxeterSystem::parse(&text).unwrap()
}

pub fn complex(name: &str) -> SimplicialComplex {
    let text = std::fs::read_to_string(corpus_dir().join(name)).unwrap();
    SimplicialComplex::parse(&text).unwrap()
}

pub fn corpus_systems() -> Vec<(String, CoxeterSystem)> {
    corpus_files("cox")
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name.clone(), coxeter(&name))
        })
        .collect()
}

type Matrix = Vec<Vec<f64>>;

/// Reflections of the Tits representation of `W_T` on `R^T`:
/// `σ_s(v) = v - 2 B(e_s, v) e_s` with `B(e_s, e_t) = -cos(π / m_st)`.
pub fn tits_generators(w: &CoxeterSystem, subset: &[u8]) -> Vec<Matrix> {
    let n = subset.len();
    let b = |i: usize, j: usize| -> f64 {
        if i == j {
            return 1.0;
        }
        match w.order(subset[i], subset[j]) {
            Order::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
            Order::Infinite => -1.0,
        }
    };
    (0..n)
        .map(|s| {
            let mut m = vec![vec![0.0; n]; n];
            for j in 0..n {
                // column j is σ_s(e_j) = e_j - 2 B(e_s, e_j) e_s
                m[j][j] += 1.0;
                m[s][j] -= 2.0 * b(s, j);
            }
            m
        })
        .collect()
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn key(m: &Matrix) -> Vec<i64> {
    m.iter().flatten().map(|x| (x * 1e6).round() as i64).collect()
}

/// Elements of `W_T` by breadth-first search, or `None` past the cap.
pub fn enumerate(w: &CoxeterSystem, subset: &[u8], cap: usize) -> Option<Vec<Matrix>> {
    let n = subset.len();
    let id: Matrix = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let gens = tits_generators(w, subset);
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::from([(key(&id), 0)]);
    let mut elems = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let next = mul(&elems[i], g);
            let k = key(&next);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(k) {
                if elems.len() == cap {
                    return None;
                }
                e.insert(elems.len());
                queue.push_back(elems.len());
                elems.push(next);
            }
        }
    }
    Some(elems)
}

pub fn brute_order(w: &CoxeterSystem, subset: &[u8]) -> Option<usize> {
    enumerate(w, subset, ENUMERATION_CAP).map(|e| e.len())
}

/// `U(W, K) = W × K / ~` with `(w, x) ~ (ws, x)` for `s ∈ S(x)`, for finite `W`.
pub fn brute_quotient(w: &CoxeterSystem, k: &MirroredComplex) -> SimplicialComplex {
    let all: Vec<u8> = (0..w.rank() as u8).collect();
    let elems = enumerate(w, &all, ENUMERATION_CAP).expect("finite group");
    let gens = tits_generators(w, &all);
    let index: HashMap<Vec<i64>, usize> = elems.iter().enumerate().map(|(i, e)| (key(e), i)).collect();
    let right: Vec<Vec<usize>> = elems
        .iter()
        .map(|e| gens.iter().map(|g| index[&key(&mul(e, g))]).collect())
        .collect();

    let nx = k.complex.vertex_count();
    let ng = elems.len();
    let mut parent: Vec<usize> = (0..ng * nx).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in 0..nx {
        for s in k.s_of(x) {
            for g in 0..ng {
                let a = find(&mut parent, g * nx + x);
                let b = find(&mut parent, right[g][s as usize] * nx + x);
                parent[a] = b;
            }
        }
    }
    let mut class: HashMap<usize, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut vertex = vec![0; ng * nx];
    for (v, slot) in vertex.iter_mut().enumerate() {
        let r = find(&mut parent, v);
        *slot = *class.entry(r).or_insert_with(|| {
            labels.push(format!("v{}", labels.len()));
            labels.len() - 1
        });
    }
    let mut facets = BTreeSet::new();
    for g in 0..ng {
        for f in k.complex.facets() {
            let mut s: Vec<usize> = f.iter().map(|&x| vertex[g * nx + x]).collect();
            s.sort_unstable();
            facets.insert(s);
        }
    }
    SimplicialComplex::new(labels, facets.into_iter().collect()).unwrap()
}
