//! Exact checks for orthogonal arrays and the hash family, plus an advisory
//! chi-square smoke test for parameters too large to enumerate.
//!
//! Everything except [`chi_square`] uses integer arithmetic only.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{invalid, Error, Result};
use crate::linalg::{binomial, Subsets};
use crate::oa::{phi, OrthogonalArray};
use crate::field::FieldCtx;

/// Default cap on cells touched by a verification.
pub const DEFAULT_WORK_CAP: u128 = 1_000_000_000;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub pass: bool,
    pub t: usize,
    /// Expected count per tuple, `s / n^t`; absent when `n^t` does not divide `s`.
    pub lambda: Option<u64>,
    pub subsets: u64,
    /// Largest `|count - lambda|` over all subsets and tuples.
    pub worst_dev: u64,
    /// Worst deviation per column subset, in lexicographic subset order.
    #[serde(skip)]
    pub subset_dev: Vec<u64>,
    /// Cells read.
    pub work: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnosis: Option<String>,
}

impl VerifyReport {
    /// JSON object `{pass, t, lambda, subsets, worst_dev}`.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "pass": self.pass,
            "t": self.t,
            "lambda": self.lambda,
            "subsets": self.subsets,
            "worst_dev": self.worst_dev,
        })
        .to_string()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} t={} lambda={} subsets={} worst_dev={}",
            if self.pass { "PASS" } else { "FAIL" },
            self.t,
            self.lambda.map_or_else(|| "-".to_string(), |l| l.to_string()),
            self.subsets,
            self.worst_dev
        );
        if let Some(d) = &self.diagnosis {
            out.push_str(&format!(" ({d})"));
        }
        out
    }
}

/// Counts every tuple in every `t`-subset of columns; passes iff each tuple
/// occurs exactly `s / n^t` times.
pub fn verify_oa(oa: &OrthogonalArray, t: usize, work_cap: u128) -> Result<VerifyReport> {
    let (s, m, n) = (oa.rows(), oa.columns(), oa.alphabet());
    if t > m {
        return Err(invalid(format!("strength {t} exceeds column count {m}")));
    }
    let nt = (n as u128).checked_pow(t as u32).unwrap_or(u128::MAX);
    let subsets = binomial(m as u64, t as u64);
    let work = subsets.saturating_mul((s as u128 * t as u128).saturating_add(nt));
    if work > work_cap {
        return Err(Error::CapExceeded {
            what: "verification work",
            needed: work,
            cap: work_cap,
        });
    }
    if !(s as u128).is_multiple_of(nt) {
        return Ok(VerifyReport {
            pass: false,
            t,
            lambda: None,
            subsets: 0,
            worst_dev: 0,
            subset_dev: Vec::new(),
            work: 0,
            diagnosis: Some(format!("{s} rows is not a multiple of {n}^{t} = {nt}")),
        });
    }
    let lambda = (s as u128 / nt) as u64;
    let cols: Vec<Vec<usize>> = Subsets::new(m, t).collect();
    let subset_dev: Vec<u64> = cols
        .par_iter()
        .map(|cols| {
            let mut counts = vec![0u64; nt as usize];
            for row in oa.iter_rows() {
                let idx = cols
                    .iter()
                    .fold(0usize, |acc, &c| acc * n as usize + (row[c] - 1) as usize);
                counts[idx] += 1;
            }
            counts.iter().map(|&c| c.abs_diff(lambda)).max().unwrap_or(0)
        })
        .collect();
    let worst_dev = subset_dev.iter().copied().max().unwrap_or(0);
    Ok(VerifyReport {
        pass: worst_dev == 0,
        t,
        lambda: Some(lambda),
        subsets: cols.len() as u64,
        worst_dev,
        subset_dev,
        work,
        diagnosis: None,
    })
}

/// Exact distribution of the hash family's outputs at `points`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashDistribution {
    pub pass: bool,
    /// `counts[alpha]` over `alpha in [n]^t` (row-major, first point most
    /// significant). The probability of `alpha` is `counts[alpha] / (p^t n^t)`.
    pub counts: Vec<u128>,
    pub expected: u128,
}

/// Enumerates all `p^t` polynomials of degree `< t`; for each, a good point
/// contributes weight `n` to its `phi` image and a bad point (`h(x) = x^t`)
/// weight 1 to every symbol. Passes iff every `alpha in [n]^t` receives
/// exactly `p^t`.
pub fn exact_hash_distribution(
    n: u64,
    m: u64,
    t: usize,
    p: u64,
    points: &[u64],
    work_cap: u128,
) -> Result<HashDistribution> {
    let field = FieldCtx::prime(p)?;
    if n < 2 || p % n != 1 || p <= m {
        return Err(invalid(format!("need p = 1 (mod n) and p > m (n={n}, m={m}, p={p})")));
    }
    if t == 0 || points.len() != t {
        return Err(invalid(format!("need exactly t = {t} points")));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != t || sorted.iter().any(|&x| x == 0 || x > m) {
        return Err(invalid("points must be distinct inputs in [1, m]"));
    }
    let polys = (p as u128).checked_pow(t as u32);
    let tuples = (n as u128).checked_pow(t as u32);
    let work = polys
        .zip(tuples)
        .and_then(|(a, b)| a.checked_mul(b))
        .unwrap_or(u128::MAX);
    if work > work_cap {
        return Err(Error::CapExceeded {
            what: "hash distribution enumeration",
            needed: work,
            cap: work_cap,
        });
    }
    let (polys, tuples) = (polys.unwrap(), tuples.unwrap() as usize);
    let bad: Vec<u64> = points.iter().map(|&x| field.pow(x, t as u64)).collect();
    let mut counts = vec![0u128; tuples];
    let mut coeffs = vec![0u64; t];
    // Per point: Some(symbol index) when good, None when bad.
    let mut symbols: Vec<Option<usize>> = vec![None; t];
    for idx in 0..polys {
        let mut rest = idx;
        for c in coeffs.iter_mut() {
            *c = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        for (j, &x) in points.iter().enumerate() {
            let y = field.horner_eval(&coeffs, x);
            symbols[j] = (y != bad[j]).then(|| (phi(p, n, bad[j], y) - 1) as usize);
        }
        let good = symbols.iter().filter(|s| s.is_some()).count();
        let weight = (n as u128).pow(good as u32);
        // Spread the weight over every completion of the bad coordinates.
        let free: Vec<usize> = (0..t).filter(|&j| symbols[j].is_none()).collect();
        let completions = (n as usize).pow(free.len() as u32);
        for fill in 0..completions {
            let mut rest = fill;
            let mut alpha = 0usize;
            for j in 0..t {
                let sym = symbols[j].unwrap_or_else(|| {
                    let v = rest % n as usize;
                    rest /= n as usize;
                    v
                });
                alpha = alpha * n as usize + sym;
            }
            counts[alpha] += weight;
        }
    }
    let expected = (p as u128).pow(t as u32);
    Ok(HashDistribution {
        pass: counts.iter().all(|&c| c == expected),
        counts,
        expected,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: u64,
    /// 0.999 quantile of the chi-square distribution with `dof` degrees of freedom.
    pub threshold: f64,
    pub below_threshold: bool,
}

/// Pearson statistic of `counts` against the uniform distribution.
pub fn chi_square_statistic(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

pub fn chi_square_threshold(dof: u64) -> f64 {
    ChiSquared::new(dof as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(0.999)
}

/// Draws `trials` functions from `sampler` and tallies their values at the
/// sampled points, returning the chi-square statistic against uniform on
/// `[n]^t`. Advisory: a single run above threshold is expected 0.1% of the time.
///
/// `sampler` returns the function's values (each in `[1, n]`) at the `t` points.
pub fn chi_square_hash<F>(n: u64, t: usize, trials: u64, seed: u64, mut sampler: F) -> Result<ChiSquare>
where
    F: FnMut(&mut ChaCha12Rng) -> Vec<u64>,
{
    let cells = n.checked_pow(t as u32).ok_or_else(|| invalid("n^t overflows"))?;
    if trials < 100 * cells {
        return Err(invalid(format!("need at least 100 n^t = {} trials", 100 * cells)));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; cells as usize];
    for _ in 0..trials {
        let values = sampler(&mut rng);
        let idx = values.iter().fold(0u64, |acc, &v| acc * n + (v - 1));
        counts[idx as usize] += 1;
    }
    let statistic = chi_square_statistic(&counts);
    let dof = cells - 1;
    let threshold = chi_square_threshold(dof);
    Ok(ChiSquare {
        statistic,
        dof,
        threshold,
        below_threshold: statistic <= threshold,
    })
}
