//! Strongly `t`-universal hash functions `[m] -> [n]` for any `n`.
//!
//! A function is a random polynomial `h` of degree `< t` over `F_p` with
//! `p = 1 (mod n)` and `p > m`. At input `x` the value `h(x)` is mapped into
//! `[n]` by `phi` with bad value `x^t`. When `h(x) = x^t` the output is a
//! uniform draw instead, remembered so later calls agree. Since `h(x) - x^t`
//! has degree `t`, at most `t` inputs are ever bad.

use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{invalid, Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::primes::{is_prime, prime_for_alphabet, SearchMode, MAX_PRIME};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReplacementMode {
    /// Fresh uniform draws from the function's stream, cached on first use.
    LazyCache,
    /// Draws derived from `(seed, x)`; read-only and order-independent, but
    /// only as independent as the generator is ideal.
    Derived,
}

#[derive(Debug, Clone, Copy)]
pub struct HashOptions {
    pub prime_search: SearchMode,
    pub replacement: ReplacementMode,
}

impl Default for HashOptions {
    fn default() -> Self {
        HashOptions {
            prime_search: SearchMode::Scan,
            replacement: ReplacementMode::LazyCache,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HashFunction {
    n: u64,
    m: u64,
    t: usize,
    field: FieldCtx,
    seed: u64,
    coeffs: Vec<Elem>,
    /// Sorted `(x, value)` replacements; never more than `t`.
    store: Vec<(u64, u64)>,
    mode: ReplacementMode,
    rng: ChaCha12Rng,
    mul_adds: u64,
}

impl PartialEq for HashFunction {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.m == other.m
            && self.t == other.t
            && self.field == other.field
            && self.seed == other.seed
            && self.coeffs == other.coeffs
            && self.store == other.store
            && self.mode == other.mode
            && self.rng.get_word_pos() == other.rng.get_word_pos()
    }
}

fn check_params(n: u64, m: u64, t: usize) -> Result<()> {
    if n < 2 || m < 2 {
        return Err(invalid(format!("need n, m >= 2 (n = {n}, m = {m})")));
    }
    if t < 2 || t as u64 > m {
        return Err(invalid(format!("need 2 <= t <= m (t = {t}, m = {m})")));
    }
    Ok(())
}

impl HashFunction {
    /// Draws a function with the default options (scanned prime, cached replacements).
    pub fn new(n: u64, m: u64, t: usize, seed: u64) -> Result<Self> {
        Self::with_options(n, m, t, seed, HashOptions::default())
    }

    pub fn with_options(n: u64, m: u64, t: usize, seed: u64, opts: HashOptions) -> Result<Self> {
        check_params(n, m, t)?;
        let p = prime_for_alphabet(n, m, opts.prime_search, seed)?;
        Self::with_prime(n, m, t, p, seed, opts.replacement)
    }

    /// Draws coefficients for a known prime `p = 1 (mod n)`, `p > m`.
    pub fn with_prime(n: u64, m: u64, t: usize, p: u64, seed: u64, mode: ReplacementMode) -> Result<Self> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let coeffs = (0..t).map(|_| rng.gen_range(0..p)).collect();
        Self::assemble(n, m, t, p, seed, coeffs, mode, rng)
    }

    /// A function with explicit coefficients `a_0..a_{t-1}`; replacements
    /// still come from `seed`.
    pub fn from_coefficients(
        n: u64,
        m: u64,
        p: u64,
        coeffs: Vec<Elem>,
        seed: u64,
        mode: ReplacementMode,
    ) -> Result<Self> {
        let rng = ChaCha12Rng::seed_from_u64(seed);
        Self::assemble(n, m, coeffs.len(), p, seed, coeffs, mode, rng)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        n: u64,
        m: u64,
        t: usize,
        p: u64,
        seed: u64,
        coeffs: Vec<Elem>,
        mode: ReplacementMode,
        rng: ChaCha12Rng,
    ) -> Result<Self> {
        check_params(n, m, t)?;
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p % n != 1 || p <= m {
            return Err(invalid(format!("prime {p} must be 1 mod {n} and exceed {m}")));
        }
        if coeffs.iter().any(|&a| a >= p) {
            return Err(invalid("coefficients must be canonical field elements"));
        }
        Ok(HashFunction {
            n,
            m,
            t,
            field: FieldCtx::prime(p)?,
            seed,
            coeffs,
            store: Vec::with_capacity(t),
            mode,
            rng,
            mul_adds: 0,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn p(&self) -> u64 {
        self.field.order()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn coefficients(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn mode(&self) -> ReplacementMode {
        self.mode
    }

    /// Replacement store contents, sorted by input.
    pub fn replacements(&self) -> &[(u64, u64)] {
        &self.store
    }

    /// Field multiply-adds performed by [`eval`](Self::eval) so far.
    pub fn field_mul_adds(&self) -> u64 {
        self.mul_adds
    }

    /// `h(x) - x^t`, via Horner on the degree-`t` polynomial with leading
    /// coefficient `-1`: exactly `t` multiply-adds.
    #[inline]
    fn offset(&self, x: u64) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.order() - 1, |acc, &a| f.mul_add(acc, x, a))
    }

    /// `1 + (((y + p - 1 - x^t) mod p) mod n)` written in terms of `y - x^t`.
    #[inline]
    fn map_good(&self, offset: Elem) -> u64 {
        let p = self.field.order();
        1 + ((offset + p - 1) % p) % self.n
    }

    fn check_input(&self, x: u64) -> Result<()> {
        if x == 0 || x > self.m {
            return Err(invalid(format!("input {x} outside [1, {}]", self.m)));
        }
        Ok(())
    }

    fn derived_replacement(&self, x: u64) -> u64 {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(x);
        rng.gen_range(1..=self.n)
    }

    pub fn eval(&mut self, x: u64) -> Result<u64> {
        self.check_input(x)?;
        if let Ok(i) = self.store.binary_search_by_key(&x, |&(k, _)| k) {
            return Ok(self.store[i].1);
        }
        let offset = self.offset(x);
        self.mul_adds += self.t as u64;
        if offset != 0 {
            return Ok(self.map_good(offset));
        }
        match self.mode {
            ReplacementMode::Derived => Ok(self.derived_replacement(x)),
            ReplacementMode::LazyCache => {
                let value = self.rng.gen_range(1..=self.n);
                let at = self.store.partition_point(|&(k, _)| k < x);
                self.store.insert(at, (x, value));
                assert!(self.store.len() <= self.t, "more than t bad inputs");
                Ok(value)
            }
        }
    }

    /// Read-only evaluation; available in derived mode only.
    pub fn eval_derived(&self, x: u64) -> Result<u64> {
        if self.mode != ReplacementMode::Derived {
            return Err(invalid("read-only evaluation needs derived replacement mode"));
        }
        self.check_input(x)?;
        let offset = self.offset(x);
        Ok(if offset == 0 {
            self.derived_replacement(x)
        } else {
            self.map_good(offset)
        })
    }

    /// Whether `x` hits the bad value, i.e. `h(x) = x^t`.
    pub fn is_bad(&self, x: u64) -> bool {
        self.offset(x) == 0
    }

    pub fn eval_many(&mut self, xs: &[u64]) -> Result<Vec<u64>> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }

    /// Compact encoding: LEB128 varints of `n, m, t, p, seed, mode`, the `t`
    /// coefficients, the store size and `(x, value)` pairs, then the position
    /// of the replacement stream.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(16 + 4 * self.t);
        for v in [self.n, self.m, self.t as u64, self.p(), self.seed] {
            put_varint(&mut out, v as u128);
        }
        out.push(match self.mode {
            ReplacementMode::LazyCache => 0,
            ReplacementMode::Derived => 1,
        });
        for &a in &self.coeffs {
            put_varint(&mut out, a as u128);
        }
        put_varint(&mut out, self.store.len() as u128);
        for &(x, v) in &self.store {
            put_varint(&mut out, x as u128);
            put_varint(&mut out, v as u128);
        }
        put_varint(&mut out, self.rng.get_word_pos());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        let n = r.u64()?;
        let m = r.u64()?;
        let t = r.u64()?;
        let p = r.u64()?;
        let seed = r.u64()?;
        let mode = match r.byte()? {
            0 => ReplacementMode::LazyCache,
            1 => ReplacementMode::Derived,
            other => return Err(Error::Malformed(format!("unknown replacement mode {other}"))),
        };
        if t < 2 || t > m {
            return Err(Error::Malformed(format!("strength {t} out of range")));
        }
        let coeffs = (0..t).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
        let stored = r.u64()?;
        if stored > t {
            return Err(Error::Malformed(format!("{stored} replacements exceed t = {t}")));
        }
        let store = (0..stored)
            .map(|_| Ok((r.u64()?, r.u64()?)))
            .collect::<Result<Vec<_>>>()?;
        let word_pos = r.varint()?;
        if r.pos != bytes.len() {
            return Err(Error::Malformed("trailing bytes".into()));
        }
        let mut h = Self::from_coefficients(n, m, p, coeffs, seed, mode)
            .map_err(|e| Error::Malformed(e.to_string()))?;
        if store.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Malformed("replacement keys not strictly increasing".into()));
        }
        for &(x, v) in &store {
            if x == 0 || x > m || v == 0 || v > n {
                return Err(Error::Malformed(format!("replacement ({x}, {v}) out of range")));
            }
            if !h.is_bad(x) {
                return Err(Error::Malformed(format!("input {x} is not a bad input")));
            }
        }
        if mode == ReplacementMode::Derived && !store.is_empty() {
            return Err(Error::Malformed("derived mode keeps no replacements".into()));
        }
        h.store = store;
        h.rng.set_word_pos(word_pos);
        Ok(h)
    }
}

fn put_varint(out: &mut Vec<u8>, mut v: u128) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn byte(&mut self) -> Result<u8> {
        let b = *self
            .bytes
            .get(self.pos)
            .ok_or_else(|| Error::Malformed("unexpected end of input".into()))?;
        self.pos += 1;
        Ok(b)
    }

    fn varint(&mut self) -> Result<u128> {
        let mut v = 0u128;
        for shift in (0..128).step_by(7) {
            let b = self.byte()?;
            let chunk = (b & 0x7f) as u128;
            if shift == 126 && chunk > 3 {
                break;
            }
            v |= chunk << shift;
            if b & 0x80 == 0 {
                // Reject non-canonical trailing zero groups.
                if b == 0 && shift > 0 {
                    return Err(Error::Malformed("non-canonical varint".into()));
                }
                return Ok(v);
            }
        }
        Err(Error::Malformed("varint overflow".into()))
    }

    fn u64(&mut self) -> Result<u64> {
        u64::try_from(self.varint()?).map_err(|_| Error::Malformed("value exceeds 64 bits".into()))
    }
}

/// A hash function behind a mutex, for sharing one instance across threads.
#[derive(Debug)]
pub struct SharedHash(Mutex<HashFunction>);

impl SharedHash {
    pub fn new(h: HashFunction) -> Self {
        SharedHash(Mutex::new(h))
    }

    pub fn eval(&self, x: u64) -> Result<u64> {
        self.0.lock().expect("hash mutex poisoned").eval(x)
    }

    pub fn into_inner(self) -> HashFunction {
        self.0.into_inner().expect("hash mutex poisoned")
    }
}
