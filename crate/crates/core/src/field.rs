//! Finite-field arithmetic over `F_p` and small extensions `F_{p^e}`.
//!
//! Elements are plain `u64` values. In a prime field they are residues in
//! `[0, p)`. In an extension field an element `c_0 + c_1 x + ... + c_{e-1} x^{e-1}`
//! is packed as the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, which also
//! gives the canonical ordering of elements `0, 1, ..., q-1`.

use crate::error::{invalid, Error, Result};
use crate::primes::{is_prime, MAX_PRIME};

pub type Elem = u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    e: u32,
    q: u64,
    /// Low-order coefficients of the monic modulus (the leading 1 is implicit).
    modulus: Option<Vec<u64>>,
}

impl FieldCtx {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(invalid("extension degree must be at least 1"));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q < MAX_PRIME)
            .ok_or(Error::FieldOverflow { p, e })?;
        let modulus = (e >= 2).then(|| smallest_irreducible(p, e as usize));
        Ok(FieldCtx { p, e, q, modulus })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Monic modulus as coefficients `c_0..c_e` (ascending, leading 1 included).
    pub fn modulus(&self) -> Option<Vec<u64>> {
        self.modulus.as_ref().map(|low| {
            let mut full = low.clone();
            full.push(1);
            full
        })
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> Elem {
        debug_assert!(self.is_prime_field());
        x % self.p
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            self.zip_digits(a, b, |x, y| (x + y) % self.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.e == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            self.zip_digits(a, 0, |x, _| (self.p - x) % self.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            ((a as u128 * b as u128) % self.p as u128) as u64
        } else {
            self.ext_mul(a, b)
        }
    }

    /// `acc * x + c`, the Horner step.
    #[inline]
    pub fn mul_add(&self, acc: Elem, x: Elem, c: Elem) -> Elem {
        if self.e == 1 {
            ((acc as u128 * x as u128 + c as u128) % self.p as u128) as u64
        } else {
            self.add(self.mul(acc, x), c)
        }
    }

    pub fn pow(&self, mut base: Elem, mut exp: u64) -> Elem {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// `sum coeffs[i] * x^i`, evaluated with `coeffs.len()` multiply-adds.
    pub fn horner_eval(&self, coeffs: &[Elem], x: Elem) -> Elem {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.mul_add(acc, x, c))
    }

    fn digits(&self, mut a: Elem) -> Vec<u64> {
        (0..self.e)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, digits: &[u64]) -> Elem {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn zip_digits(&self, a: Elem, b: Elem, f: impl Fn(u64, u64) -> u64) -> Elem {
        let (da, db) = (self.digits(a), self.digits(b));
        let out: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| f(x, y)).collect();
        self.pack(&out)
    }

    fn ext_mul(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p;
        let e = self.e as usize;
        let low = self.modulus.as_ref().expect("extension field has a modulus");
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y % p) % p;
            }
        }
        // x^e = -(c_0 + ... + c_{e-1} x^{e-1})
        for deg in (e..prod.len()).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &c) in low.iter().enumerate() {
                let k = deg - e + i;
                prod[k] = (prod[k] + (p - lead) * c % p) % p;
            }
        }
        self.pack(&prod[..e])
    }
}

/// Remainder of `num` modulo the monic `den` over `F_p` (ascending coefficients).
fn poly_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dd;
            for (i, &c) in den[..dd].iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c % p) % p;
            }
        }
    }
    r
}

/// All monic polynomials of degree `deg` over `F_p`, in packed-integer order.
fn monic_polys(p: u64, deg: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs: Vec<u64> = (0..deg)
            .map(|_| {
                let d = idx % p;
                idx /= p;
                d
            })
            .collect();
        coeffs.push(1);
        coeffs
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    (1..=e / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0)))
}

fn smallest_irreducible(p: u64, e: usize) -> Vec<u64> {
    let mut f = monic_polys(p, e)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree");
    f.pop();
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    #[test]
    fn construction_examples() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.order(), 7);
        assert_eq!(f7.modulus(), None);

        let f4 = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), Some(vec![1, 1, 1]));
        assert_eq!(f4.order(), 4);

        assert!(matches!(FieldCtx::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldCtx::new(2, 62), Err(Error::FieldOverflow { .. })));
        assert!(FieldCtx::new(3, 0).is_err());
    }

    #[test]
    fn only_irreducible_quadratic_over_f2() {
        let irreducible: Vec<_> = monic_polys(2, 2).filter(|f| is_irreducible(f, 2)).collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        assert_eq!(FieldCtx::new(2, 3).unwrap().modulus(), Some(vec![1, 1, 0, 1]));
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), Some(vec![1, 0, 1]));
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = FieldCtx::prime(7).unwrap();
        assert_eq!(f7.horner_eval(&[3, 2], 2), 0);
        let f5 = FieldCtx::prime(5).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        assert!(matches!(f5.inv(0), Err(Error::ZeroInverse)));
        for x in 0..5 {
            assert_eq!(f5.pow(x, 0), 1);
        }
    }

    #[test]
    fn extension_fields_are_fields() {
        for (p, e) in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)] {
            let f = FieldCtx::new(p, e).unwrap();
            let q = f.order();
            for a in 1..q {
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), 1, "F_{q}: {a} * {inv}");
            }
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.add(f.sub(a, b), b), a);
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q.min(5) {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
            // The multiplicative group is cyclic of order q-1: x^(q-1) = 1.
            assert!((1..q).all(|a| f.pow(a, q - 1) == 1));
        }
    }

    #[test]
    fn horner_matches_power_sums_exhaustively() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let f = FieldCtx::prime(p).unwrap();
            for t in 1..=5usize {
                let total = p.pow(t as u32).min(400);
                for idx in 0..total {
                    let coeffs: Vec<u64> = (0..t).map(|i| idx / p.pow(i as u32) % p).collect();
                    for x in 0..p {
                        let naive = coeffs
                            .iter()
                            .enumerate()
                            .map(|(i, &c)| c * x.pow(i as u32) % p)
                            .sum::<u64>()
                            % p;
                        assert_eq!(f.horner_eval(&coeffs, x), naive);
                    }
                }
            }
        }
    }

    fn big_mod(v: BigUint, p: u64) -> u64 {
        (v % p).try_into().unwrap()
    }

    proptest! {
        #[test]
        fn axioms_against_bigint(pi in 0usize..8, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let primes = [5u64, 7, 101, 65_537, 1_000_000_007, (1 << 31) - 1, (1 << 61) - 1, 4_611_686_018_427_387_847];
            let p = primes[pi];
            let f = FieldCtx::prime(p).unwrap();
            let (a, b, c) = (a % p, b % p, c % p);
            let big = |x: u64| BigUint::from(x);
            prop_assert_eq!(f.mul(a, b), big_mod(big(a) * big(b), p));
            prop_assert_eq!(f.add(a, b), big_mod(big(a) + big(b), p));
            prop_assert_eq!(f.mul_add(a, b, c), big_mod(big(a) * big(b) + big(c), p));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            prop_assert_eq!(f.pow(a, 3), big_mod(big(a).pow(3), p));
        }
    }
}
