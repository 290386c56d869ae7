//! Dense row reduction over a prime field.

use crate::field::{Elem, FieldCtx};

/// Reduces `rows` in place to reduced row-echelon form and returns the rank.
/// Zero rows end up at the bottom.
pub(crate) fn row_reduce(f: &FieldCtx, rows: &mut [Vec<Elem>]) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = f.inv(rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, pv));
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
pub(crate) fn rank(f: &FieldCtx, rows: &[Vec<Elem>]) -> usize {
    let mut work = rows.to_vec();
    row_reduce(f, &mut work)
}

/// Rank of the columns of a row-major `k x m` matrix selected by `cols`.
pub(crate) fn column_rank(f: &FieldCtx, gen: &[Elem], m: usize, cols: &[usize]) -> usize {
    let k = gen.len() / m;
    let mut rows: Vec<Vec<Elem>> = cols
        .iter()
        .map(|&c| (0..k).map(|r| gen[r * m + c]).collect())
        .collect();
    row_reduce(f, &mut rows)
}

/// Whether `c * G[:, cols] = target` has a solution `c`.
pub(crate) fn is_consistent(
    f: &FieldCtx,
    gen: &[Elem],
    m: usize,
    cols: &[usize],
    target: &[Elem],
) -> bool {
    let k = gen.len() / m;
    // One equation per selected coordinate: sum_r c_r G[r][j] = target_j.
    let mut augmented: Vec<Vec<Elem>> = cols
        .iter()
        .zip(target)
        .map(|(&c, &b)| {
            let mut row: Vec<Elem> = (0..k).map(|r| gen[r * m + c]).collect();
            row.push(b);
            row
        })
        .collect();
    row_reduce(f, &mut augmented);
    // Inconsistent iff some row reads 0 = nonzero.
    !augmented
        .iter()
        .any(|row| row[..k].iter().all(|&x| x == 0) && row[k] != 0)
}

/// Lexicographic `k`-subsets of `0..n`.
#[derive(Debug, Clone)]
pub(crate) struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let advanced = (0..k).rev().find(|&i| next[i] < self.n - k + i).map(|i| {
            next[i] += 1;
            for j in i + 1..k {
                next[j] = next[j - 1] + 1;
            }
        });
        self.current = advanced.map(|_| next);
        Some(out)
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
