//! Monic primes of `GF(q)[t]`.

use std::ops::Deref;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use super::Poly;
use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{FFElem, FieldCtx};

/// Largest `q^n` the sieve will allocate for.
pub const DEFAULT_MAX_ENUMERATION: u64 = 1 << 24;

/// A monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonicPrime(Poly);

impl MonicPrime {
    pub fn new(p: Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !p.is_monic() {
            return Err(Error::NotMonic(p.to_string()));
        }
        if p.is_constant() || !p.is_irreducible()? {
            return Err(Error::NotIrreducible(p.to_string()));
        }
        Ok(MonicPrime(p))
    }

    /// Wraps a polynomial already known to be monic and irreducible.
    pub(crate) fn new_unchecked(p: Poly) -> Self {
        debug_assert!(p.is_monic() && p.degree() >= Some(1));
        MonicPrime(p)
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn deg(&self) -> usize {
        self.0.degree().expect("primes are nonconstant")
    }
}

impl Deref for MonicPrime {
    type Target = Poly;

    fn deref(&self) -> &Poly {
        &self.0
    }
}

/// Number of monic irreducibles of degree `n`: `(1/n) Σ_{d|n} μ(d) q^{n/d}`.
pub fn count_monic_primes(ctx: &FieldCtx, n: usize) -> BigUint {
    assert!(n >= 1, "degree must be positive");
    let q = ctx.order();
    let total: BigInt = arith::divisors(n as u64)
        .into_iter()
        .map(|d| BigInt::from(arith::mobius(d)) * BigInt::from(arith::big_pow(q, n as u64 / d)))
        .sum();
    let count = total / BigInt::from(n);
    debug_assert!(!count.is_negative());
    count.to_biguint().expect("nonnegative")
}

/// All monic irreducibles of degree `n` in lex order, by sieving out products of
/// lower-degree primes.
pub fn monic_primes(ctx: &Arc<FieldCtx>, n: usize) -> Result<Vec<MonicPrime>> {
    monic_primes_bounded(ctx, n, DEFAULT_MAX_ENUMERATION)
}

pub fn monic_primes_bounded(ctx: &Arc<FieldCtx>, n: usize, max: u64) -> Result<Vec<MonicPrime>> {
    assert!(n >= 1, "degree must be positive");
    let q = ctx.order();
    let size = (q as u128).pow(n as u32);
    if size > max as u128 {
        return Err(Error::SizeExceeded { what: format!("{q}^{n} monic polynomials"), limit: max });
    }
    let size = size as usize;
    let mut composite = vec![false; size];
    for d in 1..=n / 2 {
        let cofactor_count = (q as usize).pow((n - d) as u32);
        for p in monic_primes_bounded(ctx, d, max)? {
            let pc = p.coeffs();
            let mut r = vec![FFElem::ZERO; n - d];
            for k in 0..cofactor_count {
                if k > 0 {
                    increment(&mut r, q as u32);
                }
                composite[product_index(ctx, pc, &r, n)] = true;
            }
        }
    }
    Ok((0..size)
        .filter(|&k| !composite[k])
        .map(|k| MonicPrime::new_unchecked(Poly::monic_from_index(ctx, n, k as u64)))
        .collect())
}

/// Odometer step over the low coefficients of a monic polynomial.
fn increment(digits: &mut [FFElem], q: u32) {
    for d in digits.iter_mut() {
        if d.index() + 1 < q {
            *d = FFElem::from_index(d.index() + 1);
            return;
        }
        *d = FFElem::ZERO;
    }
}

/// Lex index of `p * r` where `r` is monic of degree `n - deg p` given by its low coefficients.
fn product_index(ctx: &FieldCtx, p: &[FFElem], r_low: &[FFElem], n: usize) -> usize {
    let mut prod = [FFElem::ZERO; 64];
    let rl = r_low.len();
    for (i, &a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for j in 0..=rl {
            let b = if j == rl { FFElem::ONE } else { r_low[j] };
            if i + j < n {
                prod[i + j] = ctx.add(prod[i + j], ctx.mul(a, b));
            }
        }
    }
    let q = ctx.order() as usize;
    prod[..n].iter().rev().fold(0usize, |acc, c| acc * q + c.index() as usize)
}

/// `q^{n/2} / n <= count`, compared exactly as `q^n <= (n * count)^2`.
pub fn satisfies_prime_lower_bound(q: u64, n: usize, count: &BigUint) -> bool {
    let lhs = arith::big_pow(q, n as u64);
    let rhs = BigUint::from(n) * count;
    lhs <= &rhs * &rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let deg1: Vec<Poly> = monic_primes(&f3, 1).unwrap().into_iter().map(MonicPrime::into_poly).collect();
        assert_eq!(
            deg1,
            vec![Poly::from_ints(&f3, &[0, 1]), Poly::from_ints(&f3, &[1, 1]), Poly::from_ints(&f3, &[2, 1])]
        );
        assert_eq!(count_monic_primes(&f3, 1), BigUint::from(3u32));
        assert_eq!(count_monic_primes(&f3, 2), BigUint::from(3u32));
        assert_eq!(count_monic_primes(&f3, 4), BigUint::from(18u32));
        assert_eq!(monic_primes(&f3, 4).unwrap().len(), 18);
    }

    #[test]
    fn sieve_agrees_with_rabin() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FieldCtx::from_order(q).unwrap();
            for n in 1..=3 {
                let sieved: Vec<Poly> = monic_primes(&f, n).unwrap().into_iter().map(MonicPrime::into_poly).collect();
                let tested: Vec<Poly> = Poly::all_monic(&f, n).filter(|p| p.is_irreducible().unwrap()).collect();
                assert_eq!(sieved, tested, "q = {q}, n = {n}");
            }
        }
    }

    #[test]
    fn lower_bound() {
        // q = 2, n = 4: 3 primes, bound 16^(1/2)/4 = 1
        assert!(satisfies_prime_lower_bound(2, 4, &BigUint::from(3u32)));
        assert!(!satisfies_prime_lower_bound(2, 4, &BigUint::from(0u32)));
    }

    #[test]
    fn size_bound_enforced() {
        let f = FieldCtx::new(13, 1).unwrap();
        assert!(matches!(monic_primes_bounded(&f, 4, 1000), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn monic_prime_checks() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert!(matches!(MonicPrime::new(Poly::from_ints(&f, &[1, 2])), Err(Error::NotMonic(_))));
        assert!(matches!(MonicPrime::new(Poly::from_ints(&f, &[1, 0, 1])), Err(Error::NotIrreducible(_))));
        assert!(MonicPrime::new(Poly::from_ints(&f, &[2, 0, 1])).is_ok());
    }
}
