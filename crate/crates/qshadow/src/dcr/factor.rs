use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::dcr::primes::{is_probable_prime, MILLER_RABIN_ROUNDS};
use crate::error::{Error, Result};
use crate::rng::stream;

/// Factor an odd semiprime of at most 64 bits into `(p, q)` with
/// `p <= q`. Trial division handles small factors; Pollard's rho with a
/// handful of polynomial offsets does the rest.
pub fn factor_semiprime(n: &BigUint) -> Result<(BigUint, BigUint)> {
    if n.bits() > 64 {
        return Err(Error::BadModulus(
            n.to_string(),
            "factoring supports at most 64 bits".into(),
        ));
    }
    if n.is_even() || n.bits() < 2 {
        return Err(Error::BadModulus(
            n.to_string(),
            "expected an odd semiprime".into(),
        ));
    }
    let n64 = n.to_u64().expect("bit length checked");
    let mut rng = stream(0xfac7);
    if is_probable_prime(n, MILLER_RABIN_ROUNDS, &mut rng) {
        return Err(Error::BadModulus(n.to_string(), "input is prime".into()));
    }

    let d = trial_division(n64)
        .or_else(|| pollard_rho(n64))
        .ok_or_else(|| Error::FactoringFailed(n.to_string()))?;
    let (a, b) = (d.min(n64 / d), d.max(n64 / d));
    if a * b != n64 || a == 1 {
        return Err(Error::FactoringFailed(n.to_string()));
    }
    for f in [a, b] {
        if !is_probable_prime(&BigUint::from(f), MILLER_RABIN_ROUNDS, &mut rng) {
            return Err(Error::BadModulus(
                n.to_string(),
                format!("factor {f} is composite, not a semiprime"),
            ));
        }
    }
    Ok((BigUint::from(a), BigUint::from(b)))
}

fn trial_division(n: u64) -> Option<u64> {
    let mut d = 3u64;
    while d < 1000 && d * d <= n {
        if n % d == 0 {
            return Some(d);
        }
        d += 2;
    }
    None
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Pollard's rho with Floyd cycle detection on `x -> x^2 + c`, retried
/// over several offsets `c`.
fn pollard_rho(n: u64) -> Option<u64> {
    // expected cycle length is around n^(1/4); leave generous headroom
    let bits = 64 - n.leading_zeros() as u64;
    let budget = 1u64 << (bits / 4 + 8).min(24);
    for c in 1..30u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        for _ in 0..budget {
            x = f(x);
            y = f(f(y));
            let diff = x.abs_diff(y);
            if diff == 0 {
                break; // cycle without factor: try the next offset
            }
            let g = diff.gcd(&n);
            if g > 1 && g < n {
                return Some(g);
            }
        }
    }
    None
}
