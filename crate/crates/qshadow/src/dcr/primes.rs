use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;

/// Rounds of Miller-Rabin used throughout (error probability < 4^-40).
pub const MILLER_RABIN_ROUNDS: usize = 40;

/// Probabilistic primality test with `rounds` random bases.
pub fn is_probable_prime(n: &BigUint, rounds: usize, rng: &mut ChaCha8Rng) -> bool {
    let two = BigUint::from(2u32);
    let three = BigUint::from(3u32);
    if *n < two {
        return false;
    }
    if *n == two || *n == three {
        return true;
    }
    if n.is_even() {
        return false;
    }
    // n - 1 = d * 2^s with d odd
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    'witness: for _ in 0..rounds {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Random prime with exactly `bits` bits and `p = 2 (mod 3)`.
/// Returns `None` if no candidate passed within `attempts` draws.
pub fn random_prime_mod3_eq2(
    bits: u64,
    attempts: usize,
    rng: &mut ChaCha8Rng,
) -> Option<BigUint> {
    if bits < 2 {
        return None;
    }
    let three = BigUint::from(3u32);
    let two = BigUint::from(2u32);
    for _ in 0..attempts {
        let mut cand = rng.gen_biguint(bits);
        cand.set_bit(bits - 1, true); // exact bit length
        cand.set_bit(0, true); // odd
        if (&cand % &three) != two {
            continue;
        }
        if cand.bits() != bits {
            continue;
        }
        if is_probable_prime(&cand, MILLER_RABIN_ROUNDS, rng) {
            return Some(cand);
        }
    }
    None
}

/// Inverse of 3 modulo `phi` by the extended Euclidean algorithm.
/// Returns `None` when `gcd(3, phi) != 1`.
pub fn inverse_of_three(phi: &BigUint) -> Option<BigUint> {
    use num_bigint::BigInt;
    let (mut r0, mut r1) = (BigInt::from(phi.clone()), BigInt::from(3u32));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if !r0.is_one() {
        return None;
    }
    let phi_int = BigInt::from(phi.clone());
    let d = ((t0 % &phi_int) + &phi_int) % &phi_int;
    d.to_biguint()
}
