//! Small machine-integer helpers: primality, modular powers, gcds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Deterministic trial-division primality test. Inputs here are group
/// orders and conductors, far below the range where this is slow.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Non-negative gcd of a slice; zero for an empty or all-zero slice.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Returns `(s, t)` with `s*a + t*b == 1`. Requires `gcd(a, b) == 1`.
pub fn bezout(a: &BigInt, b: &BigInt) -> Option<(BigInt, BigInt)> {
    let eg = a.extended_gcd(b);
    if eg.gcd.is_one() {
        Some((eg.x, eg.y))
    } else if eg.gcd == -BigInt::one() {
        Some((-eg.x, -eg.y))
    } else {
        None
    }
}

/// `value mod m` in `[0, m)`.
pub fn residue(value: &BigInt, m: u64) -> u64 {
    let r = value.mod_floor(&BigInt::from(m));
    u64::try_from(r.magnitude()).expect("residue below a u64 modulus")
}
