//! Rank and torsion of integer matrices.
//!
//! Boundary matrices are very sparse with entries ±1, so most of the work is
//! done by eliminating unit pivots in a sparse row representation. Whatever
//! survives (rows with no unit entry left) is handed to a dense Smith normal
//! form over `BigInt`. The sparse pass first runs in `i64` with checked
//! arithmetic and restarts in `BigInt` if anything overflows.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use super::chain::SparseMatrix;
use crate::error::{Error, Result};
use crate::limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithInvariants {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigUint>,
}

pub(crate) fn smith_invariants(m: &SparseMatrix) -> Result<SmithInvariants> {
    let small: Option<Reduced<i64>> = eliminate(m.rows, &m.entries, Some);
    let (pivots, residual) = match small {
        Some(r) => (r.pivots, to_big(r.rows)),
        None => {
            let r = eliminate(m.rows, &m.entries, |v| Some(BigInt::from(v)))
                .expect("BigInt arithmetic cannot overflow");
            (r.pivots, r.rows)
        }
    };
    let (rank, torsion) = dense_smith(residual)?;
    Ok(SmithInvariants {
        rank: pivots + rank,
        torsion,
    })
}

struct Reduced<T> {
    pivots: usize,
    rows: Vec<Vec<(usize, T)>>,
}

type Row<T> = Vec<(usize, T)>;

fn eliminate<T>(
    nrows: usize,
    entries: &[(usize, usize, i64)],
    lift: impl Fn(i64) -> Option<T>,
) -> Option<Reduced<T>>
where
    T: Clone + Signed + CheckedMul + CheckedSub,
{
    let mut rows: Vec<Row<T>> = vec![Vec::new(); nrows];
    let mut sorted = entries.to_vec();
    sorted.sort_unstable_by_key(|&(r, c, _)| (r, c));
    for (r, c, v) in sorted {
        if v == 0 {
            continue;
        }
        let v = lift(v)?;
        match rows[r].last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.clone() + v,
            _ => rows[r].push((c, v)),
        }
    }
    for row in rows.iter_mut() {
        row.retain(|(_, v)| !v.is_zero());
    }
    let ncols = rows
        .iter()
        .flat_map(|r| r.iter().map(|(c, _)| c + 1))
        .max()
        .unwrap_or(0);
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c].push(r);
        }
    }
    let mut alive = vec![true; nrows];
    let mut pivots = 0;

    loop {
        let mut progress = false;
        for p in 0..nrows {
            if !alive[p] || rows[p].is_empty() {
                continue;
            }
            // unit entry whose column is least populated
            let Some(&(pc, ref pv)) = rows[p]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(c, _)| col_rows[*c].len())
            else {
                continue;
            };
            let pv = pv.clone();
            let prow = std::mem::take(&mut rows[p]);
            for (c, _) in &prow {
                col_rows[*c].retain(|&r| r != p);
            }
            let targets = std::mem::take(&mut col_rows[pc]);
            for r in targets {
                let a = rows[r]
                    .iter()
                    .find(|(c, _)| *c == pc)
                    .map(|(_, v)| v.clone())
                    .expect("column index out of sync");
                // row_r -= (a * pv) * row_p, since pv = pv^{-1}
                let factor = a.checked_mul(&pv)?;
                let old = std::mem::take(&mut rows[r]);
                let new = axpy(&old, &prow, &factor)?;
                let mut oi = old.iter().map(|(c, _)| *c).peekable();
                let mut ni = new.iter().map(|(c, _)| *c).peekable();
                // update column occupancy from the symmetric difference
                loop {
                    match (oi.peek().copied(), ni.peek().copied()) {
                        (None, None) => break,
                        (Some(o), Some(n)) if o == n => {
                            oi.next();
                            ni.next();
                        }
                        (Some(o), n) if n.is_none_or(|n| o < n) => {
                            if o != pc {
                                col_rows[o].retain(|&x| x != r);
                            }
                            oi.next();
                        }
                        (_, Some(n)) => {
                            col_rows[n].push(r);
                            ni.next();
                        }
                        _ => unreachable!(),
                    }
                }
                rows[r] = new;
            }
            alive[p] = false;
            pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let rest = rows
        .into_iter()
        .zip(alive)
        .filter(|(r, a)| *a && !r.is_empty())
        .map(|(r, _)| r)
        .collect();
    Some(Reduced { pivots, rows: rest })
}

/// `old - factor * pivot`, both rows sorted by column.
fn axpy<T>(old: &Row<T>, pivot: &Row<T>, factor: &T) -> Option<Row<T>>
where
    T: Clone + Signed + CheckedMul + CheckedSub,
{
    let mut out = Vec::with_capacity(old.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < old.len() || j < pivot.len() {
        let take_old = j >= pivot.len() || (i < old.len() && old[i].0 < pivot[j].0);
        let take_pivot = i >= old.len() || (j < pivot.len() && pivot[j].0 < old[i].0);
        if take_old {
            out.push(old[i].clone());
            i += 1;
        } else if take_pivot {
            let v = T::zero().checked_sub(&factor.checked_mul(&pivot[j].1)?)?;
            out.push((pivot[j].0, v));
            j += 1;
        } else {
            let v = old[i].1.checked_sub(&factor.checked_mul(&pivot[j].1)?)?;
            if !v.is_zero() {
                out.push((old[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn to_big(rows: Vec<Row<i64>>) -> Vec<Row<BigInt>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect())
        .collect()
}

fn dense_smith(rows: Vec<Row<BigInt>>) -> Result<(usize, Vec<BigUint>)> {
    if rows.is_empty() {
        return Ok((0, Vec::new()));
    }
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|(c, _)| *c)).collect();
    cols.sort_unstable();
    cols.dedup();
    let (m, n) = (rows.len(), cols.len());
    if m.saturating_mul(n) > limits::max_cells().saturating_mul(4) {
        return Err(Error::ResourceLimit {
            what: "dense Smith normal form size",
            limit: limits::max_cells() * 4,
        });
    }
    let mut a = vec![vec![BigInt::zero(); n]; m];
    for (i, r) in rows.into_iter().enumerate() {
        for (c, v) in r {
            let j = cols.binary_search(&c).unwrap();
            a[i][j] = v;
        }
    }
    let diag = snf_diagonal(a);
    let rank = diag.len();
    let torsion = diag
        .into_iter()
        .map(|d| d.magnitude().clone())
        .filter(|d| !d.is_one())
        .collect();
    Ok((rank, torsion))
}

/// Non-zero diagonal entries of the Smith normal form of `a`.
pub(crate) fn snf_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut t = 0;
    while t < m.min(n) {
        // smallest non-zero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..n {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..n {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        t += 1;
    }
    (0..t).map(|i| a[i][i].abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> SparseMatrix {
        let mut entries = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    entries.push((i, j, v));
                }
            }
        }
        SparseMatrix {
            rows: rows.len(),
            cols: rows.first().map_or(0, |r| r.len()),
            entries,
        }
    }

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn unit_matrix() {
        let s = smith_invariants(&from_dense(&[&[1, 0], &[0, -1]])).unwrap();
        assert_eq!(s.rank, 2);
        assert!(s.torsion.is_empty());
    }

    #[test]
    fn torsion_survives() {
        let s = smith_invariants(&from_dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).unwrap();
        assert_eq!(s.rank, 3);
        assert_eq!(s.torsion, big(&[2, 6, 12]));
    }

    #[test]
    fn mixed_unit_and_residual() {
        let s = smith_invariants(&from_dense(&[&[1, 1, 0], &[1, 3, 0], &[0, 0, 0]])).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion, big(&[2]));
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(smith_invariants(&from_dense(&[&[0, 0]])).unwrap().rank, 0);
        let empty = SparseMatrix {
            rows: 0,
            cols: 3,
            entries: Vec::new(),
        };
        assert_eq!(smith_invariants(&empty).unwrap().rank, 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big_v = i64::MAX / 2;
        let s = smith_invariants(&from_dense(&[&[1, big_v], &[big_v, 1], &[1, 1]])).unwrap();
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn dense_snf_of_rank_deficient() {
        let d = snf_diagonal(vec![
            vec![BigInt::from(2), BigInt::from(4)],
            vec![BigInt::from(4), BigInt::from(8)],
        ]);
        assert_eq!(d, vec![BigInt::from(2)]);
    }
}
