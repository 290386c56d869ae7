//! Primality testing and prime search in arithmetic progressions.
//!
//! The deterministic scan walks the progression upward from the lower bound
//! and is what every reproducible construction uses. The randomized sampler
//! draws candidates uniformly from the progression and tests each one, which
//! gives expected-time guarantees independent of how primes cluster.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{invalid, Error, Result};

/// Largest integer handled by the searches; keeps every product in 128 bits.
pub const MAX_PRIME: u64 = 1 << 62;

// Sufficient for every n < 3.3 * 10^24, so in particular all u64.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if x == w {
            return true;
        }
        if x.is_multiple_of(w) {
            return false;
        }
    }
    let mut d = x - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut y = pow_mod(w, d, x);
        if y == 1 || y == x - 1 {
            continue;
        }
        for _ in 1..r {
            y = mul_mod(y, y, x);
            if y == x - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `n * ceil(m / n)`: the least multiple of `n` that is at least `m`.
pub fn eta_for(n: u64, m: u64) -> u64 {
    assert!(n >= 2 && m >= 2, "eta_for needs n, m >= 2");
    n * m.div_ceil(n)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization by trial division, as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, e))` when `n = p^e` for a prime `p`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [single] => Some(*single),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Scan,
    Sample,
}

#[derive(Debug, Clone)]
pub struct PrimeSearchConfig {
    pub modulus: u64,
    pub residue: u64,
    /// Exclusive lower bound.
    pub min: u64,
    /// Upper end of the search is `modulus^exponent_cap`.
    pub exponent_cap: f64,
    pub mode: SearchMode,
    pub seed: u64,
    /// Draws allowed in sampling mode before the interval is scanned exhaustively.
    pub max_draws: u32,
}

impl PrimeSearchConfig {
    pub const DEFAULT_EXPONENT_CAP: f64 = 6.0;

    pub fn new(modulus: u64, min: u64) -> Self {
        PrimeSearchConfig {
            modulus,
            residue: 1,
            min,
            exponent_cap: Self::DEFAULT_EXPONENT_CAP,
            mode: SearchMode::Scan,
            seed: 0,
            max_draws: 100_000,
        }
    }

    pub fn residue(mut self, residue: u64) -> Self {
        self.residue = residue;
        self
    }

    pub fn exponent_cap(mut self, nu: f64) -> Self {
        self.exponent_cap = nu;
        self
    }

    pub fn sampled(mut self, seed: u64) -> Self {
        self.mode = SearchMode::Sample;
        self.seed = seed;
        self
    }

    /// Inclusive upper end of the search interval, clamped to [`MAX_PRIME`].
    pub fn upper(&self) -> u64 {
        let nu = self.exponent_cap;
        if nu.fract() == 0.0 && nu < 64.0 {
            return self
                .modulus
                .checked_pow(nu as u32)
                .map_or(MAX_PRIME, |c| c.min(MAX_PRIME));
        }
        let cap = (self.modulus as f64).powf(nu).floor();
        if cap >= MAX_PRIME as f64 {
            MAX_PRIME
        } else {
            cap as u64
        }
    }

    fn validate(&self) -> Result<()> {
        if self.modulus < 2 {
            return Err(invalid("progression modulus must be at least 2"));
        }
        if !(self.exponent_cap >= 1.0) {
            return Err(invalid("exponent cap must be at least 1"));
        }
        if gcd(self.residue % self.modulus, self.modulus) != 1 {
            return Err(invalid(format!(
                "residue {} is not coprime to modulus {}",
                self.residue, self.modulus
            )));
        }
        if self.min >= self.upper() {
            return Err(invalid(format!(
                "empty search interval ({}, {}]",
                self.min,
                self.upper()
            )));
        }
        Ok(())
    }

    fn exhausted(&self) -> Error {
        Error::SearchExhausted {
            modulus: self.modulus,
            residue: self.residue % self.modulus,
            min: self.min,
            cap: self.upper(),
        }
    }

    /// Smallest candidate `> min` in the progression.
    fn first_candidate(&self) -> u64 {
        let a = self.residue % self.modulus;
        let start = self.min + 1;
        let offset = (a + self.modulus - start % self.modulus) % self.modulus;
        start + offset
    }
}

/// Finds a prime `p > min` with `p = residue (mod modulus)` and `p <= modulus^nu`.
///
/// Scan mode returns the smallest such prime. Sample mode draws candidates
/// uniformly from the progression; if the draw budget runs out it falls back
/// to testing every candidate in a seeded random order, so exhaustion is
/// reported only when the interval truly holds no prime.
pub fn prime_in_ap(cfg: &PrimeSearchConfig) -> Result<u64> {
    cfg.validate()?;
    let upper = cfg.upper();
    let first = cfg.first_candidate();
    if first > upper {
        return Err(cfg.exhausted());
    }
    let count = (upper - first) / cfg.modulus + 1;
    let found = match cfg.mode {
        SearchMode::Scan => (0..count)
            .map(|i| first + i * cfg.modulus)
            .find(|&c| is_prime(c)),
        SearchMode::Sample => {
            let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
            let draws = (0..cfg.max_draws)
                .map(|_| first + rng.gen_range(0..count) * cfg.modulus)
                .find(|&c| is_prime(c));
            match draws {
                Some(p) => Some(p),
                None if count <= 1 << 24 => {
                    let mut order: Vec<u64> = (0..count).collect();
                    order.shuffle(&mut rng);
                    order
                        .into_iter()
                        .map(|i| first + i * cfg.modulus)
                        .find(|&c| is_prime(c))
                }
                None => None,
            }
        }
    };
    let p = found.ok_or_else(|| cfg.exhausted())?;
    debug_assert!(p > cfg.min && p % cfg.modulus == cfg.residue % cfg.modulus);
    Ok(p)
}

/// Prime `p = 1 (mod eta)` with `p > eta`, where `eta = eta_for(n, m)`.
///
/// Any such prime satisfies `p = 1 (mod n)` and `p > m`; both are checked.
pub fn prime_for_alphabet(n: u64, m: u64, mode: SearchMode, seed: u64) -> Result<u64> {
    let eta = eta_for(n, m);
    let mut cfg = PrimeSearchConfig::new(eta, eta);
    if mode == SearchMode::Sample {
        cfg = cfg.sampled(seed);
    }
    let p = prime_in_ap(&cfg)?;
    assert_eq!(p % n, 1, "prime {p} is not 1 mod {n}");
    assert!(p > m, "prime {p} does not exceed m = {m}");
    Ok(p)
}
