//! Mayer–Vietoris certificate for one cut.
//!
//! With `D` the two copies of the cut mirrors in `N`, `F` their common image
//! in `M` and `q : N -> M` the gluing map, `M` is the pushout of
//! `F <- D -> N`, so
//!
//! ```text
//! H_k(D) --(q, ι)--> H_k(F) ⊕ H_k(N) --(ι - q)--> H_k(M) --δ--> H_{k-1}(D)
//! ```
//!
//! is exact. The ranks of the two named maps are computed over `Q`; the
//! connecting map is never built, exactness at its ends is checked through
//! `rank δ_k = b_k(M) - rank g_k = b_{k-1}(D) - rank f_{k-1}`.

use serde::Serialize;

use crate::davis::{ChamberComplex, Panel, Realization};
use crate::error::Result;
use crate::simplicial::{closure_by_dim, ChainComplex, ChainMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MvDegree {
    pub degree: usize,
    /// `b_k(D)`, which is `b_k(F ⊔ F)` for a two-sided cut.
    pub collar: usize,
    pub middle: usize,
    pub whole: usize,
    pub rank_f: usize,
    pub rank_g: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MayerVietorisCertificate {
    pub degrees: Vec<MvDegree>,
    /// `g ∘ f = 0` on chains.
    pub composite_zero: bool,
    /// `H(D) ≅ H(F) ⊕ H(F)` rank-wise.
    pub collar_doubled: bool,
    pub exact: bool,
    pub chi_m: i64,
    pub chi_n: i64,
    pub chi_f: i64,
    /// `χ(M) = χ(N) - χ(F)`.
    pub euler_identity: bool,
    pub pass: bool,
}

fn chi(by_dim: &[Vec<Vec<usize>>]) -> i64 {
    by_dim
        .iter()
        .enumerate()
        .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
        .sum()
}

/// `n` is `m` with `panels` cut open; both realizations are given.
pub fn mayer_vietoris(
    m: &ChamberComplex,
    real_m: &Realization,
    n: &ChamberComplex,
    real_n: &Realization,
    panels: &[Panel],
) -> Result<MayerVietorisCertificate> {
    let q = |v: usize| {
        let (c, x) = real_n.rep[v];
        real_m.vertex(c, x)
    };
    let d_bd = closure_by_dim(&n.panel_simplices(real_n, panels));
    let f_bd = closure_by_dim(&m.panel_simplices(real_m, panels));
    let n_bd = real_n.complex.simplices_by_dim();
    let m_bd = real_m.complex.simplices_by_dim();

    let (cd, cf, cn, cm) = (
        ChainComplex::from_simplices(&d_bd)?,
        ChainComplex::from_simplices(&f_bd)?,
        ChainComplex::from_simplices(&n_bd)?,
        ChainComplex::from_simplices(&m_bd)?,
    );
    let cfn = cf.direct_sum(&cn);

    let f = ChainMap::from_vertex_map(&d_bd, &f_bd, q)?
        .pair(&ChainMap::from_vertex_map(&d_bd, &n_bd, |v| v)?);
    let g = ChainMap::from_vertex_map(&f_bd, &m_bd, |v| v)?
        .copair(&ChainMap::from_vertex_map(&n_bd, &m_bd, q)?.negated());

    let rank_f = f.homology_ranks(&cd, &cfn)?;
    let rank_g = g.homology_ranks(&cfn, &cm)?;
    let (bd, bf, bfn, bm) = (
        cd.betti_numbers()?,
        cf.betti_numbers()?,
        cfn.betti_numbers()?,
        cm.betti_numbers()?,
    );
    let at = |v: &[usize], k: usize| v.get(k).copied().unwrap_or(0);
    let top = [bd.len(), bfn.len(), bm.len()].into_iter().max().unwrap_or(0);

    let mut degrees = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let (rf, rg) = (at(&rank_f, k), at(&rank_g, k));
        let middle_exact = at(&bfn, k) as i64 - rg as i64 == rf as i64;
        let delta = at(&bm, k) as i64 - rg as i64;
        let delta_image = if k == 0 {
            0
        } else {
            at(&bd, k - 1) as i64 - at(&rank_f, k - 1) as i64
        };
        degrees.push(MvDegree {
            degree: k,
            collar: at(&bd, k),
            middle: at(&bfn, k),
            whole: at(&bm, k),
            rank_f: rf,
            rank_g: rg,
            exact: middle_exact && delta == delta_image,
        });
    }
    let composite_zero = g.after(&f).is_zero();
    let collar_doubled = (0..=top).all(|k| at(&bd, k) == 2 * at(&bf, k));
    let exact = degrees.iter().all(|d| d.exact);
    let (chi_m, chi_n, chi_f) = (chi(&m_bd), chi(&n_bd), chi(&f_bd));
    let euler_identity = chi_m == chi_n - chi_f;
    Ok(MayerVietorisCertificate {
        pass: exact && composite_zero && collar_doubled && euler_identity,
        degrees,
        composite_zero,
        collar_doubled,
        exact,
        chi_m,
        chi_n,
        chi_f,
        euler_identity,
    })
}
