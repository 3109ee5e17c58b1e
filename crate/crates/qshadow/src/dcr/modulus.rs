use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dcr::primes::{
    inverse_of_three, is_probable_prime, random_prime_mod3_eq2, MILLER_RABIN_ROUNDS,
};
use crate::dcr::serde_util::biguint_dec;
use crate::error::{Error, Result};
use crate::rng::stream;

/// Semiprime modulus with its trapdoor key: `N = p q` for distinct primes
/// `p, q = 2 (mod 3)`, `phi = (p-1)(q-1)` and `d` the inverse of 3 mod
/// `phi`, so that cubing is a permutation of `Z_N` inverted by `x -> x^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcrModulus {
    #[serde(with = "biguint_dec")]
    pub p: BigUint,
    #[serde(with = "biguint_dec")]
    pub q: BigUint,
    #[serde(with = "biguint_dec")]
    pub n: BigUint,
    #[serde(with = "biguint_dec")]
    pub phi: BigUint,
    #[serde(with = "biguint_dec")]
    pub d: BigUint,
    pub n_bits: u64,
}

impl DcrModulus {
    /// Assemble and fully validate a modulus from its prime factors.
    pub fn from_primes(p: BigUint, q: BigUint) -> Result<Self> {
        let mut rng = stream(0x0dc2);
        let three = BigUint::from(3u32);
        let two = BigUint::from(2u32);
        if p == q {
            return Err(Error::BadModulus(
                format!("{p} * {q}"),
                "prime factors must be distinct".into(),
            ));
        }
        for f in [&p, &q] {
            if !is_probable_prime(f, MILLER_RABIN_ROUNDS, &mut rng) {
                return Err(Error::BadModulus(
                    f.to_string(),
                    "factor is not prime".into(),
                ));
            }
            if f % &three != two {
                return Err(Error::BadModulus(
                    f.to_string(),
                    "factor is not 2 mod 3".into(),
                ));
            }
        }
        let n = &p * &q;
        let phi = (&p - 1u32) * (&q - 1u32);
        let d = inverse_of_three(&phi).ok_or_else(|| {
            Error::BadModulus(n.to_string(), "3 has no inverse mod phi".into())
        })?;
        let modulus = DcrModulus {
            n_bits: n.bits(),
            p,
            q,
            n,
            phi,
            d,
        };
        modulus.validate()?;
        Ok(modulus)
    }

    /// Check every structural invariant; for exhaustively checkable `N`
    /// (up to 10^4) this includes the cube-permutation property.
    pub fn validate(&self) -> Result<()> {
        let three = BigUint::from(3u32);
        let two = BigUint::from(2u32);
        if self.p == self.q {
            return Err(Error::BadModulus(self.n.to_string(), "p = q".into()));
        }
        if &self.p * &self.q != self.n {
            return Err(Error::BadModulus(self.n.to_string(), "N != p q".into()));
        }
        if (&self.p % &three) != two || (&self.q % &three) != two {
            return Err(Error::BadModulus(
                self.n.to_string(),
                "factors are not 2 mod 3".into(),
            ));
        }
        if (&self.p - 1u32) * (&self.q - 1u32) != self.phi {
            return Err(Error::BadModulus(self.n.to_string(), "bad phi".into()));
        }
        if (&self.d * 3u32) % &self.phi != BigUint::one() {
            return Err(Error::BadModulus(
                self.n.to_string(),
                "3 d != 1 mod phi".into(),
            ));
        }
        if self.n.bits() != self.n_bits {
            return Err(Error::BadModulus(self.n.to_string(), "bad bit count".into()));
        }
        if self.n <= BigUint::from(10_000u32) && !self.cube_is_permutation() {
            return Err(Error::BadModulus(
                self.n.to_string(),
                "cubing is not a permutation".into(),
            ));
        }
        Ok(())
    }

    /// Exhaustive check that `y -> y^3 mod N` hits every residue once.
    pub fn cube_is_permutation(&self) -> bool {
        let n = match self.n.to_usize() {
            Some(v) => v,
            None => return true, // not exhaustively checkable
        };
        let mut seen = vec![false; n];
        for y in 0..n {
            let x = (BigUint::from(y)).modpow(&BigUint::from(3u32), &self.n);
            let xi = x.to_usize().expect("x < N");
            if seen[xi] {
                return false;
            }
            seen[xi] = true;
        }
        true
    }
}

/// Generate a modulus whose `N` has exactly `n_bits` bits.
pub fn generate_modulus(n_bits: u64, rng: &mut ChaCha8Rng) -> Result<DcrModulus> {
    if !(8..=64).contains(&n_bits) {
        return Err(Error::invalid("n_bits", "supported range is 8..=64"));
    }
    const ROUNDS: usize = 64;
    // cycle over near-balanced bit splits until the product lands on
    // exactly n_bits
    for round in 0..ROUNDS {
        let offset = [0i64, 1, -1, 2][round % 4];
        let p_bits = ((n_bits as i64 / 2) + offset).max(2) as u64;
        let q_bits = (n_bits as i64 - p_bits as i64).max(2) as u64;
        let Some(p) = random_prime_mod3_eq2(p_bits, 2_000, rng) else {
            continue;
        };
        let Some(q) = random_prime_mod3_eq2(q_bits, 2_000, rng) else {
            continue;
        };
        if p == q {
            continue;
        }
        if (&p * &q).bits() != n_bits {
            continue;
        }
        if let Ok(modulus) = DcrModulus::from_primes(p, q) {
            return Ok(modulus);
        }
    }
    Err(Error::PrimeSearchExhausted { attempts: ROUNDS })
}

/// `y^3 mod N` by modular exponentiation.
pub fn cube(y: &BigUint, modulus: &DcrModulus) -> Result<BigUint> {
    if *y >= modulus.n {
        return Err(Error::invalid("y", format!("{y} is not in Z_N")));
    }
    Ok(y.modpow(&BigUint::from(3u32), &modulus.n))
}

/// `x^d mod N`, the discrete cube root via the trapdoor key.
pub fn cube_root(x: &BigUint, modulus: &DcrModulus) -> Result<BigUint> {
    if *x >= modulus.n {
        return Err(Error::invalid("x", format!("{x} is not in Z_N")));
    }
    Ok(x.modpow(&modulus.d, &modulus.n))
}

/// Wrapped-interval membership `(v - s) mod N <= (N-1)/2`, the common
/// labeling rule of concepts and hypotheses.
pub fn in_upper_half_interval(v: &BigUint, s: &BigUint, n: &BigUint) -> bool {
    let half = (n - 1u32) >> 1;
    ((v + n - s) % n) <= half
}
