//! Residue fields `GF(q)[t] / (P)` and the verification routines built on them.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use super::{MonicPrime, Poly};
use crate::arith;
use crate::error::{Error, Result};
use crate::ff::FieldCtx;

/// The field `GF(q)[t] / (P)` of `q^d` elements; elements are polynomials of degree `< d`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    modulus: MonicPrime,
}

impl QuotientRing {
    pub fn new(modulus: &MonicPrime) -> Self {
        QuotientRing { modulus: modulus.clone() }
    }

    pub fn modulus(&self) -> &MonicPrime {
        &self.modulus
    }

    pub fn base(&self) -> &Arc<FieldCtx> {
        self.modulus.ctx()
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    /// `q^d`.
    pub fn size(&self) -> BigUint {
        arith::big_pow(self.base().order(), self.degree() as u64)
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus).expect("nonzero modulus")
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a * b))
    }

    pub fn pow(&self, a: &Poly, k: &BigUint) -> Poly {
        a.powmod(k, &self.modulus).expect("nonzero modulus")
    }

    pub fn inv(&self, a: &Poly) -> Option<Poly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let (_, u, _) = a.bezout(&self.modulus).ok()?;
        Some(self.reduce(&u))
    }

    /// The class of `t`.
    pub fn generator_t(&self) -> Poly {
        self.reduce(&Poly::t(self.base()))
    }

    /// `a^{q^i}`.
    pub fn frobenius(&self, a: &Poly, i: usize) -> Poly {
        let q = BigUint::from(self.base().order());
        (0..i).fold(self.reduce(a), |acc, _| self.pow(&acc, &q))
    }

    /// Every element, in lex order.
    pub fn elements(&self) -> impl Iterator<Item = Poly> + '_ {
        Poly::all_below_degree(self.base(), self.degree())
    }

    /// Least element (lex order) generating the multiplicative group.
    pub fn primitive_element(&self) -> Poly {
        let order = self.size() - BigUint::one();
        let primes = arith::factor_big(&order);
        self.elements()
            .skip(1)
            .find(|g| primes.iter().all(|r| !self.pow(g, &(&order / r)).is_one()))
            .expect("multiplicative group of a finite field is cyclic")
    }
}

impl Poly {
    /// Checks that the conjugates `a, a^q, ..., a^{q^{d-1}}` of `a = t mod P` are
    /// pairwise distinct and that `Π (x - a^{q^i})` reproduces `P` with base-field coefficients.
    pub fn verify_root_orbit(&self) -> Result<bool> {
        if !self.is_monic() || self.is_constant() || !self.is_irreducible()? {
            return Err(Error::NotIrreducible(self.to_string()));
        }
        let ring = QuotientRing::new(&MonicPrime::new_unchecked(self.clone()));
        let d = ring.degree();
        let a = ring.generator_t();
        let conjugates: Vec<Poly> = (0..d).map(|i| ring.frobenius(&a, i)).collect();
        for i in 0..d {
            for j in 0..i {
                if conjugates[i] == conjugates[j] {
                    return Ok(false);
                }
            }
        }
        // coefficients of Π (x - c), each an element of the residue field
        let base = ring.base().clone();
        let mut prod = vec![Poly::one(&base)];
        for c in &conjugates {
            let mut next = vec![Poly::zero(&base); prod.len() + 1];
            for (j, coef) in prod.iter().enumerate() {
                next[j + 1] = &next[j + 1] + coef;
                next[j] = &next[j] - &ring.mul(c, coef);
            }
            prod = next;
        }
        Ok(prod
            .iter()
            .enumerate()
            .all(|(j, coef)| coef.as_constant() == Some(self.coeff(j))))
    }

    /// Checks `Q(t)^{q^j} = Σ a_i^{q^j} t^{i q^j}` by direct expansion.
    pub fn frobenius_substitution_check(&self, j: u32) -> Result<bool> {
        const MAX_DEGREE: u128 = 1 << 16;
        let ctx = self.ctx.clone();
        let qj = (ctx.order() as u128).pow(j);
        let deg = self.degree().unwrap_or(0) as u128;
        if deg * qj > MAX_DEGREE {
            return Err(Error::SizeExceeded { what: format!("degree {deg} * q^{j}"), limit: MAX_DEGREE as u64 });
        }
        let qj = qj as u64;
        let lhs = self.pow(qj);
        let twisted = Poly::from_coeffs(&ctx, self.coeffs.iter().map(|&c| ctx.pow_u64(c, qj)).collect());
        Ok(lhs == twisted.inflate(qj as usize))
    }
}
