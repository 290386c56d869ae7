//! Linear codes over prime fields that feed the array builder.
//!
//! Two families are provided: nested Reed-Solomon codes with the monomial
//! `x^t` as the far vector (fully deterministic), and random linear codes
//! whose generator columns are `t`-wise independent, paired with a random far
//! vector. Both checks the builder relies on (dual distance and farness) are
//! decided by rank computations over column subsets, never by listing the code.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::linalg::{column_rank, is_consistent, row_reduce, Subsets};
use crate::oa::{BuildPlan, Provenance};
use crate::primes::{is_prime, prime_for_alphabet, prime_in_ap, PrimeSearchConfig, SearchMode};

/// Default attempt cap for every rejection-sampling loop.
pub const DEFAULT_ATTEMPTS: u32 = 1000;

/// Largest code size the enumeration oracle will walk.
pub const ENUMERATION_CAP: u128 = 10_000_000;

const CODE_STREAM: u64 = 0;
const FAR_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceProvenance {
    /// Follows from the code family's algebra (e.g. MDS duality).
    Analytic,
    /// Checked by [`dual_distance_at_least`].
    Verified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualDistance {
    pub at_least: usize,
    pub provenance: DistanceProvenance,
}

/// A linear code given by a full-rank `k x m` generator matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: FieldCtx,
    m: usize,
    k: usize,
    generator: Vec<Elem>,
    dual_distance: Option<DualDistance>,
}

impl LinearCode {
    /// Wraps a generator matrix, rejecting rank-deficient or non-canonical input.
    pub fn new(field: FieldCtx, rows: Vec<Vec<Elem>>) -> Result<Self> {
        if !field.is_prime_field() {
            return Err(invalid("codes are defined over prime fields only"));
        }
        let m = rows.first().map_or(0, Vec::len);
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("generator rows must share a positive length".into()));
        }
        if rows.iter().flatten().any(|&x| x >= field.order()) {
            return Err(invalid("generator entries must be canonical field elements"));
        }
        let k = rows.len();
        let mut work = rows.clone();
        if row_reduce(&field, &mut work) != k {
            return Err(invalid("generator matrix does not have full row rank"));
        }
        Ok(LinearCode {
            field,
            m,
            k,
            generator: rows.into_iter().flatten().collect(),
            dual_distance: None,
        })
    }

    /// Code spanned by `rows`, which may be dependent; the generator is a
    /// reduced-echelon basis of their span.
    pub fn from_span(field: FieldCtx, mut rows: Vec<Vec<Elem>>) -> Result<Self> {
        let rank = row_reduce(&field, &mut rows);
        if rank == 0 {
            return Err(invalid("spanning set generates the zero code"));
        }
        rows.truncate(rank);
        Self::new(field, rows)
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.order()
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &[Elem] {
        &self.generator
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.generator[i * self.m..(i + 1) * self.m]
    }

    pub fn dual_distance(&self) -> Option<DualDistance> {
        self.dual_distance
    }

    /// Number of codewords, `p^k`, if it fits in 128 bits.
    pub fn size(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.k as u32)
    }

    /// Records a dual distance bound known from the construction.
    pub fn with_analytic_dual_distance(mut self, d: usize) -> Self {
        self.dual_distance = Some(DualDistance {
            at_least: d,
            provenance: DistanceProvenance::Analytic,
        });
        self
    }

    /// Checks `d` exhaustively and records it as verified if it holds.
    pub fn verify_dual_distance(&mut self, d: usize) -> bool {
        let ok = dual_distance_at_least(self, d);
        if ok {
            self.dual_distance = Some(DualDistance {
                at_least: d,
                provenance: DistanceProvenance::Verified,
            });
        }
        ok
    }

    /// `coeffs * G` written into `out`.
    pub fn encode_into(&self, coeffs: &[Elem], out: &mut [Elem]) {
        debug_assert_eq!(coeffs.len(), self.k);
        out.fill(0);
        for (r, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(r)) {
                *o = self.field.mul_add(c, g, *o);
            }
        }
    }

    pub fn encode(&self, coeffs: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; self.m];
        self.encode_into(coeffs, &mut out);
        out
    }

    /// Coefficient vector with lexicographic rank `index` (first coordinate most significant).
    pub fn coefficients_at(&self, mut index: u128) -> Vec<Elem> {
        let p = self.p() as u128;
        let mut coeffs = vec![0; self.k];
        for c in coeffs.iter_mut().rev() {
            *c = (index % p) as Elem;
            index /= p;
        }
        coeffs
    }

    /// All codewords in lexicographic order of their coefficient vectors.
    pub fn codewords(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        let total = self.size().expect("code too large to enumerate");
        (0..total).map(move |i| self.encode(&self.coefficients_at(i)))
    }
}

/// A vector `b` that agrees with every codeword on at most `tau` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarVector {
    pub b: Vec<Elem>,
    pub tau: usize,
}

/// Output of a rejection-sampling loop.
#[derive(Debug, Clone)]
pub struct Sampled<T> {
    pub value: T,
    pub attempts: u32,
}

/// Reed-Solomon code of polynomials of degree `<= a` evaluated at `1, ..., m`.
pub fn rs_code(p: u64, m: usize, a: usize) -> Result<LinearCode> {
    let field = FieldCtx::prime(p)?;
    if m as u64 > p {
        return Err(invalid(format!("RS length {m} exceeds field size {p}")));
    }
    if a >= m {
        return Err(invalid(format!("RS degree bound {a} must be below length {m}")));
    }
    let rows = (0..=a as u64)
        .map(|i| (1..=m as u64).map(|j| field.pow(field.reduce(j), i)).collect())
        .collect();
    // MDS: the dual has dimension m - a - 1 and distance a + 2.
    Ok(LinearCode::new(field, rows)?.with_analytic_dual_distance(a + 2))
}

/// `b_j = j^t` for `j = 1..m`, which agrees with any polynomial of degree
/// `< t` in at most `t` places.
///
/// `t = m` is admitted: the agreement bound is then vacuous.
pub fn rs_bad_vector(p: u64, m: usize, t: usize) -> Result<FarVector> {
    let field = FieldCtx::prime(p)?;
    if m as u64 > p {
        return Err(invalid(format!("RS length {m} exceeds field size {p}")));
    }
    if t < 1 || t > m {
        return Err(invalid(format!("need 1 <= t <= m, got t = {t}, m = {m}")));
    }
    let b = (1..=m as u64)
        .map(|j| field.pow(field.reduce(j), t as u64))
        .collect();
    Ok(FarVector { b, tau: t })
}

/// True iff every `d - 1` generator columns are linearly independent, i.e. the
/// dual code has minimum distance at least `d`.
pub fn dual_distance_at_least(code: &LinearCode, d: usize) -> bool {
    assert!(d >= 1 && d <= code.m + 1, "dual distance query {d} out of range");
    let width = d - 1;
    if width == 0 {
        return true;
    }
    if width > code.k {
        return false;
    }
    Subsets::new(code.m, width)
        .par_bridge()
        .all(|cols| column_rank(&code.field, &code.generator, code.m, &cols) == width)
}

fn check_vector(code: &LinearCode, b: &[Elem]) -> Result<()> {
    if b.len() != code.m {
        return Err(Error::DimensionMismatch(format!(
            "vector has length {}, code has length {}",
            b.len(),
            code.m
        )));
    }
    if b.iter().any(|&x| x >= code.p()) {
        return Err(invalid("vector entries must be canonical field elements"));
    }
    Ok(())
}

/// True iff no codeword agrees with `b` on `tau + 1` or more coordinates.
///
/// Each `(tau + 1)`-subset of coordinates is tested for a codeword matching
/// `b` there by solving the linear system for the coefficient vector.
pub fn far_from_code(code: &LinearCode, b: &[Elem], tau: usize) -> Result<bool> {
    check_vector(code, b)?;
    if tau >= code.m {
        return Ok(true);
    }
    Ok(Subsets::new(code.m, tau + 1).par_bridge().all(|cols| {
        let target: Vec<Elem> = cols.iter().map(|&c| b[c]).collect();
        !is_consistent(&code.field, &code.generator, code.m, &cols, &target)
    }))
}

/// [`far_from_code`] by walking every codeword. Test oracle for small codes.
pub fn far_from_code_by_enumeration(code: &LinearCode, b: &[Elem], tau: usize) -> Result<bool> {
    check_vector(code, b)?;
    let size = code.size().unwrap_or(u128::MAX);
    if size > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "codeword enumeration",
            needed: size,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(code
        .codewords()
        .all(|u| u.iter().zip(b).filter(|(x, y)| x == y).count() <= tau))
}

/// Whether `sum_{i=1..t} C(m, i) (p-1)^i <= p^l / 4`.
pub fn gv_condition(m: usize, t: usize, p: u64, l: usize) -> bool {
    let lhs: BigUint = (1..=t)
        .map(|i| binomial_big(m, i) * BigUint::from(p - 1).pow(i as u32))
        .sum();
    lhs * 4u32 <= BigUint::from(p).pow(l as u32)
}

pub(crate) fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Samples `l x m` matrices over `F_p` until every `t` columns are independent.
///
/// The returned code is the row space of the accepted matrix, so its dimension
/// may fall below `l`.
pub fn gv_random_code(
    m: usize,
    t: usize,
    p: u64,
    l: usize,
    seed: u64,
    max_attempts: u32,
) -> Result<Sampled<LinearCode>> {
    let field = FieldCtx::prime(p)?;
    if l == 0 || t == 0 || t > m {
        return Err(invalid(format!("need l >= 1 and 1 <= t <= m (l={l}, t={t}, m={m})")));
    }
    let mut rng = stream_rng(seed, CODE_STREAM);
    for attempt in 1..=max_attempts {
        let rows: Vec<Vec<Elem>> = (0..l)
            .map(|_| (0..m).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        let cols_ok = t <= l
            && Subsets::new(m, t).par_bridge().all(|cols| {
                let flat: Vec<Elem> = rows.iter().flatten().copied().collect();
                column_rank(&field, &flat, m, &cols) == t
            });
        if cols_ok {
            let mut code = LinearCode::from_span(field, rows)?;
            let verified = code.verify_dual_distance(t + 1);
            debug_assert!(verified);
            return Ok(Sampled {
                value: code,
                attempts: attempt,
            });
        }
    }
    Err(Error::BudgetExceeded {
        what: "random code with t-wise independent columns",
        attempts: max_attempts,
    })
}

/// Samples uniform vectors until one agrees with every codeword in at most
/// `tau` places.
pub fn random_far_vector(
    code: &LinearCode,
    tau: usize,
    seed: u64,
    max_attempts: u32,
) -> Result<Sampled<FarVector>> {
    let mut rng = stream_rng(seed, FAR_STREAM);
    for attempt in 1..=max_attempts {
        let b: Vec<Elem> = (0..code.m).map(|_| rng.gen_range(0..code.p())).collect();
        if far_from_code(code, &b, tau)? {
            return Ok(Sampled {
                value: FarVector { b, tau },
                attempts: attempt,
            });
        }
    }
    Err(Error::BudgetExceeded {
        what: "random far vector",
        attempts: max_attempts,
    })
}

fn check_nmt(n: u64, m: usize, t: usize) -> Result<()> {
    if n < 2 {
        return Err(invalid("alphabet size n must be at least 2"));
    }
    if t < 2 || t > m {
        return Err(invalid(format!("need 2 <= t <= m, got t = {t}, m = {m}")));
    }
    Ok(())
}

/// Reed-Solomon plan: `q` is the smallest prime `= 1 (mod eta)` above `eta`,
/// the code has degree bound `t - 1`, and the far vector is `x^t`.
pub fn plan_rs(n: u64, m: usize, t: usize) -> Result<BuildPlan> {
    check_nmt(n, m, t)?;
    if m < 2 {
        return Err(invalid("need m >= 2"));
    }
    let q = prime_for_alphabet(n, m as u64, SearchMode::Scan, 0)?;
    let code = rs_code(q, m, t - 1)?;
    let bad = rs_bad_vector(q, m, t)?;
    assert_eq!(q % n, 1);
    assert!(q > m as u64);
    assert_eq!(bad.tau, t);
    assert_eq!(code.dimension(), t);
    BuildPlan::new(n, t, code, bad, Provenance::ReedSolomon)
}

#[derive(Debug, Clone)]
pub struct RandomPlanConfig {
    pub p_override: Option<u64>,
    pub seed: u64,
    pub max_attempts: u32,
}

impl Default for RandomPlanConfig {
    fn default() -> Self {
        RandomPlanConfig {
            p_override: None,
            seed: 0,
            max_attempts: DEFAULT_ATTEMPTS,
        }
    }
}

/// Smallest prime `p = 1 (mod n)` with `p > (m e / t)^3`.
pub fn random_plan_prime(n: u64, m: usize, t: usize) -> Result<u64> {
    let floor = (m as f64 * std::f64::consts::E / t as f64).powi(3).floor() as u64;
    let nu = 62.0 / (n as f64).log2();
    prime_in_ap(&PrimeSearchConfig::new(n, floor).exponent_cap(nu))
}

/// Random-code plan: dimension at most `2t`, far vector agreeing in at most
/// `3t` places.
pub fn plan_random(n: u64, m: usize, t: usize, cfg: &RandomPlanConfig) -> Result<BuildPlan> {
    check_nmt(n, m, t)?;
    let p = match cfg.p_override {
        Some(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if p % n != 1 {
                return Err(invalid(format!("override prime {p} is not 1 mod {n}")));
            }
            p
        }
        None => random_plan_prime(n, m, t)?,
    };
    let code = gv_random_code(m, t, p, 2 * t, cfg.seed, cfg.max_attempts)?.value;
    let bad = random_far_vector(&code, 3 * t, cfg.seed, cfg.max_attempts)?.value;
    BuildPlan::new(n, t, code, bad, Provenance::RandomCode)
}

/// Source of a code, far vector and agreement bound for the builder.
///
/// Further code families (e.g. algebraic-geometry codes) plug in here.
pub trait CodeProvider {
    fn name(&self) -> &'static str;
    fn plan(&self, n: u64, m: usize, t: usize) -> Result<BuildPlan>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReedSolomon;

impl CodeProvider for ReedSolomon {
    fn name(&self) -> &'static str {
        "rs"
    }

    fn plan(&self, n: u64, m: usize, t: usize) -> Result<BuildPlan> {
        plan_rs(n, m, t)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RandomLinear(pub RandomPlanConfig);

impl CodeProvider for RandomLinear {
    fn name(&self) -> &'static str {
        "random"
    }

    fn plan(&self, n: u64, m: usize, t: usize) -> Result<BuildPlan> {
        plan_random(n, m, t, &self.0)
    }
}
