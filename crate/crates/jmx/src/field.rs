//! Exact arithmetic in the prime field `F_p`.
//!
//! Elements are canonical representatives in `[0, p)` stored as `u64`.
//! The field stands in for the infinite residue field required by the
//! genericity arguments: `p` must be large compared to the square of the
//! number of random draws a computation performs, so that random scalar
//! choices miss the bad Zariski-closed loci with high probability. The
//! default `p = 32003` satisfies this for the sample counts used here.

use serde::Serialize;
use thiserror::Error;

/// Default characteristic, the classical computer-algebra default.
pub const DEFAULT_MODULUS: u64 = 32003;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small (need p >= 3)")]
    TooSmall(u64),
}

/// The prime field `F_p`. Copyable; all element operations go through it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p < 3 {
            return Err(FieldError::TooSmall(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    /// The field with the default modulus 32003.
    pub fn default_field() -> Self {
        PrimeField { p: DEFAULT_MODULUS }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_u64(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Canonical representative of a signed integer.
    pub fn reduce_i64(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64);
        r as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }
}

/// Deterministic Miller-Rabin, exact for all u64.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_modulus_is_prime() {
        assert!(is_prime(DEFAULT_MODULUS));
        PrimeField::new(DEFAULT_MODULUS).unwrap();
    }

    #[test]
    fn rejects_composite() {
        assert_eq!(PrimeField::new(32001), Err(FieldError::NotPrime(32001)));
        assert_eq!(PrimeField::new(1), Err(FieldError::TooSmall(1)));
    }

    #[test]
    fn inverse_and_fermat() {
        let f = PrimeField::default_field();
        // a * a^{-1} = 1 and a^p = a on a spread of samples
        let mut x = 1u64;
        for _ in 0..200 {
            x = (x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407)) % f.modulus();
            if x == 0 {
                continue;
            }
            assert_eq!(f.mul(x, f.inv(x)), 1);
            assert_eq!(f.pow(x, f.modulus()), x);
        }
    }

    #[test]
    fn signed_reduction() {
        let f = PrimeField::default_field();
        assert_eq!(f.reduce_i64(-1), f.modulus() - 1);
        assert_eq!(f.reduce_i64(-(f.modulus() as i64)), 0);
        assert_eq!(f.reduce_i64(5), 5);
    }
}
