//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use orthoarray::codes::LinearCode;
use orthoarray::field::FieldCtx;
use rand::Rng;

/// Weight distribution `A_0..A_m` of the code, by listing every codeword.
pub fn weight_distribution(code: &LinearCode) -> Vec<i128> {
    let mut dist = vec![0i128; code.len() + 1];
    for u in code.codewords() {
        dist[u.iter().filter(|&&x| x != 0).count()] += 1;
    }
    dist
}

pub fn min_distance(code: &LinearCode) -> usize {
    let dist = weight_distribution(code);
    (1..dist.len()).find(|&w| dist[w] > 0).expect("nonzero code")
}

fn binom(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Krawtchouk polynomial `K_j(i)` for length `m` over an alphabet of size `q`.
fn krawtchouk(j: usize, i: usize, m: usize, q: i128) -> i128 {
    (0..=j)
        .map(|s| {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            sign * (q - 1).pow((j - s) as u32) * binom(i, s) * binom(m - i, j - s)
        })
        .sum()
}

/// Weight distribution of the dual code via the MacWilliams transform.
pub fn dual_weight_distribution(code: &LinearCode) -> Vec<i128> {
    let a = weight_distribution(code);
    let m = code.len();
    let q = code.p() as i128;
    let size: i128 = a.iter().sum();
    (0..=m)
        .map(|j| {
            let total: i128 = (0..=m).map(|i| a[i] * krawtchouk(j, i, m, q)).sum();
            assert_eq!(total % size, 0, "MacWilliams transform must be integral");
            total / size
        })
        .collect()
}

/// Minimum distance of the dual code, or `m + 1` when the dual is `{0}`.
pub fn dual_distance(code: &LinearCode) -> usize {
    let b = dual_weight_distribution(code);
    (1..b.len()).find(|&w| b[w] > 0).unwrap_or(code.len() + 1)
}

/// Uniform full-rank `k x m` generator over `F_p`.
pub fn random_code<R: Rng>(rng: &mut R, p: u64, m: usize, k: usize) -> LinearCode {
    let field = FieldCtx::prime(p).unwrap();
    loop {
        let rows: Vec<Vec<u64>> = (0..k)
            .map(|_| (0..m).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        if let Ok(code) = LinearCode::new(field.clone(), rows) {
            return code;
        }
    }
}
