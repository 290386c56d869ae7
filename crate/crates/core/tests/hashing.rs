use orthoarray::codes::plan_rs;
use orthoarray::hash::{HashFunction, ReplacementMode};
use orthoarray::oa::{build_oa, DEFAULT_CELL_CAP};
use orthoarray::primes::{prime_for_alphabet, SearchMode};
use orthoarray::verify::{chi_square_hash, exact_hash_distribution, DEFAULT_WORK_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Each codeword's block of rows in the RS array is the hash function with the
/// same coefficients: good inputs are constant over the block and bad inputs
/// take every symbol equally often.
#[test]
fn array_blocks_are_hash_functions() {
    for (n, m, t) in [(6u64, 4usize, 2usize), (2, 4, 3), (3, 5, 2)] {
        let plan = plan_rs(n, m, t).unwrap();
        let oa = build_oa(&plan, DEFAULT_CELL_CAP).unwrap();
        let block = n.pow(t as u32) as usize;
        let mut bad_blocks = 0;
        for idx in 0..plan.code.size().unwrap() {
            let coeffs = plan.code.coefficients_at(idx);
            let mut h = HashFunction::from_coefficients(n, m as u64, plan.q, coeffs, 0, ReplacementMode::Derived).unwrap();
            let rows = &oa.entries()[idx as usize * block * m..(idx as usize + 1) * block * m];
            for x in 1..=m as u64 {
                let col: Vec<u32> = rows.chunks(m).map(|r| r[x as usize - 1]).collect();
                if h.is_bad(x) {
                    bad_blocks += 1;
                    let mut counts = vec![0usize; n as usize];
                    col.iter().for_each(|&v| counts[v as usize - 1] += 1);
                    assert!(counts.iter().all(|&c| c == block / n as usize));
                } else {
                    let v = h.eval(x).unwrap() as u32;
                    assert!(col.iter().all(|&c| c == v));
                }
            }
        }
        assert!(bad_blocks > 0);
    }
}

#[test]
fn store_never_exceeds_t() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut max_seen = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=12);
        let m = rng.gen_range(2..=64);
        let t = rng.gen_range(2..=8.min(m as usize));
        // Tiny primes make bad inputs common.
        let p = prime_for_alphabet(n, m, SearchMode::Scan, 0).unwrap();
        let mut h = HashFunction::with_prime(n, m, t, p, rng.gen(), ReplacementMode::LazyCache).unwrap();
        for x in 1..=m {
            h.eval(x).unwrap();
            assert!(h.replacements().len() <= t);
        }
        max_seen = max_seen.max(h.replacements().len());
    }
    assert!(max_seen >= 2, "the grid should exercise the store");
}

#[test]
fn functions_with_many_roots_fill_the_store_to_t() {
    // h(x) - x^t = -(x-1)(x-2)...(x-t) has exactly t roots in [m].
    let (n, m, t, p) = (6u64, 10u64, 3usize, 13u64);
    // x^3 - (x-1)(x-2)(x-3) = 6x^2 - 11x + 6
    let coeffs = vec![6, (13 - 11), 6];
    let mut h = HashFunction::from_coefficients(n, m, p, coeffs, 1, ReplacementMode::LazyCache).unwrap();
    for x in 1..=m {
        h.eval(x).unwrap();
    }
    let keys: Vec<u64> = h.replacements().iter().map(|&(x, _)| x).collect();
    assert_eq!(keys.len(), t);
    assert_eq!(keys, vec![1, 2, 3]);
}

#[test]
fn evaluation_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let (n, m) = (rng.gen_range(2..=6), rng.gen_range(2..=12));
        let t = rng.gen_range(2..=m.min(4) as usize);
        let mut h = HashFunction::new(n, m, t, rng.gen()).unwrap();
        let snapshot = h.to_bytes();
        let fwd: Vec<u64> = (1..=m).map(|x| h.eval(x).unwrap()).collect();
        let mut g = HashFunction::from_bytes(&snapshot).unwrap();
        // Any order, after first evaluation the mapping is fixed.
        let again: Vec<u64> = (1..=m).rev().map(|x| h.eval(x).unwrap()).collect();
        assert_eq!(fwd, again.into_iter().rev().collect::<Vec<_>>());
        // Good inputs agree regardless of order even before any replacement is drawn.
        for x in (1..=m).rev() {
            if !g.is_bad(x) {
                assert_eq!(g.eval(x).unwrap(), fwd[x as usize - 1]);
            }
        }
    }
}

/// Encoded size against `t (log2 p + log2 nm)` bits.
#[test]
fn encoding_is_compact() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..300 {
        let n = rng.gen_range(2..=1000u64);
        let m = rng.gen_range(n..=4000u64);
        let t = rng.gen_range(8..=32usize);
        let mut h = HashFunction::new(n, m, t, rng.gen()).unwrap();
        for x in 1..=m {
            h.eval(x).unwrap();
        }
        let bits = (h.to_bytes().len() * 8) as f64;
        let unit = t as f64 * ((h.p() as f64).log2().ceil() + ((n * m) as f64).log2().ceil());
        worst = worst.max(bits / unit);
    }
    assert!(worst <= 2.0, "worst ratio {worst}");
}

#[test]
fn exact_uniformity_over_small_grid() {
    for (n, m, t) in [(2u64, 3u64, 2usize), (6, 4, 2), (3, 5, 2), (4, 4, 3), (2, 5, 3), (5, 6, 2)] {
        let p = prime_for_alphabet(n, m, SearchMode::Scan, 0).unwrap();
        let points: Vec<u64> = (1..=t as u64).collect();
        let last: Vec<u64> = (m - t as u64 + 1..=m).collect();
        for pts in [points, last] {
            let d = exact_hash_distribution(n, m, t, p, &pts, DEFAULT_WORK_CAP).unwrap();
            assert!(d.pass, "n={n} m={m} t={t} points={pts:?}");
        }
    }
}

#[test]
fn chi_square_calibration() {
    let (n, m, t) = (6u64, 20u64, 2usize);
    let p = prime_for_alphabet(n, m, SearchMode::Scan, 0).unwrap();
    let points = [3u64, 17];
    let batches = 100;
    let below = (0..batches)
        .filter(|&batch| {
            chi_square_hash(n, t, 100_000, batch, |rng| {
                let mut h = HashFunction::with_prime(n, m, t, p, rng.gen(), ReplacementMode::LazyCache).unwrap();
                points.iter().map(|&x| h.eval(x).unwrap()).collect()
            })
            .unwrap()
            .below_threshold
        })
        .count();
    assert!(below >= 99, "{below}/{batches} batches below the 0.999 quantile");

    let biased = chi_square_hash(n, t, 10_000, 0, |_| vec![1, 2]).unwrap();
    assert!(!biased.below_threshold);
}
