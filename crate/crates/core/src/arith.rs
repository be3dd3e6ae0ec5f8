//! Machine-integer helpers: primality, trial-division factoring, Möbius.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, as (prime, exponent) pairs in increasing order.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor_u64(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, k) in factor_u64(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..k {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn mobius(n: u64) -> i32 {
    let f = factor_u64(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Splits `q` as `p^e` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factor_u64(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    num_traits::pow::pow(BigUint::from(base), exp as usize)
}

/// Factors a big integer by trial division. Only used for group orders `q^d - 1` at desk scale.
pub fn factor_big(n: &BigUint) -> Vec<BigUint> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += BigUint::one();
    }
    if n > BigUint::one() {
        out.push(n);
    }
    out
}
