//! Irreducibility testing and factorization over GF(q).
//!
//! Factorization runs squarefree decomposition, distinct-degree splitting and
//! Cantor–Zassenhaus equal-degree splitting. The equal-degree step draws its
//! random polynomials from a seeded ChaCha stream so results are reproducible.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Poly;
use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{FFElem, FieldCtx};

/// Seed for the equal-degree splitter unless the caller supplies one.
pub const DEFAULT_SPLIT_SEED: u64 = 0x5eed_f00d;

/// `unit * Π factor^multiplicity` with monic, irreducible, pairwise distinct
/// factors sorted in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FFElem,
    pub factors: Vec<(Poly, u32)>,
}

#[derive(Serialize)]
struct FactorJson {
    unit: String,
    factors: Vec<(String, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, ctx: &Arc<FieldCtx>) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(ctx, self.unit), |acc, (p, e)| &acc * &p.pow(*e as u64))
    }

    pub fn to_json(&self, ctx: &FieldCtx) -> serde_json::Value {
        let js = FactorJson {
            unit: ctx.format_elem(self.unit),
            factors: self.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect(),
        };
        serde_json::to_value(js).expect("serializable")
    }
}

impl Poly {
    /// `x^{q^k} mod self` for k = 1..=m, computed by repeated q-th powers.
    fn frobenius_orbit_of_t(&self, m: usize) -> Result<Vec<Poly>> {
        let q = BigUint::from(self.ctx.order());
        let mut out = Vec::with_capacity(m);
        let mut cur = Poly::t(&self.ctx).rem(self)?;
        for _ in 0..m {
            cur = cur.powmod(&q, self)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Rabin's test: `f` of degree `m` is irreducible iff `f | t^{q^m} - t` and
    /// `gcd(f, t^{q^{m/r}} - t) = 1` for every prime `r | m`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let m = match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            Some(1) => return Ok(true),
            Some(m) => m,
        };
        let f = self.monic();
        let t = Poly::t(&self.ctx);
        let orbit = f.frobenius_orbit_of_t(m)?;
        if !(&orbit[m - 1] - &t).rem(&f)?.is_zero() {
            return Ok(false);
        }
        for r in arith::prime_divisors(m as u64) {
            let k = m / r as usize;
            if !f.gcd(&(&orbit[k - 1] - &t))?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Factors into a unit times monic irreducibles with the default splitting seed.
    pub fn factor(&self) -> Result<Factorization> {
        self.factor_with_seed(DEFAULT_SPLIT_SEED)
    }

    pub fn factor_with_seed(&self, seed: u64) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let unit = self.lc();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut factors = Vec::new();
        for (sqf, mult) in squarefree_decomposition(&self.monic()) {
            for (block, d) in distinct_degree(&sqf)? {
                let mut pieces = Vec::new();
                equal_degree(&block, d, &mut rng, &mut pieces)?;
                factors.extend(pieces.into_iter().map(|p| (p, mult)));
            }
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }

    /// Coefficientwise p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Poly {
        let f = &self.ctx;
        let p = f.characteristic() as usize;
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.frobenius(c, f.degree() - 1))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with the
/// `g_i` squarefree, pairwise coprime and `f = Π g_i^i`.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let ctx = f.ctx.clone();
    let p = ctx.characteristic() as u32;
    let df = f.derivative();
    if df.is_zero() {
        for (g, i) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, i * p));
        }
        return out;
    }
    let mut c = f.gcd(&df).expect("nonzero");
    let mut w = f.exact_div(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c).expect("nonzero");
        let fac = w.exact_div(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w);
    }
    if !c.is_one() {
        for (g, j) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, j * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into blocks whose irreducible factors share a degree.
fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let ctx = &f.ctx;
    let q = BigUint::from(ctx.order());
    let t = Poly::t(ctx);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = t.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(&q, &rest)?;
        let g = rest.gcd(&(&h - &t))?;
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if let Some(dr) = rest.degree().filter(|&dr| dr > 0) {
        out.push((rest, dr));
    }
    Ok(out)
}

/// Cantor–Zassenhaus splitting of a monic product of distinct degree-`d` irreducibles.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) -> Result<()> {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.clone());
        return Ok(());
    }
    let ctx = f.ctx.clone();
    let q = ctx.order();
    let qd = arith::big_pow(q, d as u64);
    loop {
        let a = Poly::random(&ctx, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = if q % 2 == 1 {
            let e = (&qd - BigUint::one()) / BigUint::from(2u32);
            &a.powmod(&e, f)? - &Poly::one(&ctx)
        } else {
            // Absolute trace to GF(2): a + a^2 + ... + a^{2^{k-1}}, k = log2(q^d).
            let k = (ctx.degree() as usize) * d;
            let two = BigUint::from(2u32);
            let mut term = a.rem(f)?;
            let mut acc = term.clone();
            for _ in 1..k {
                term = term.powmod(&two, f)?;
                acc = &acc + &term;
            }
            acc
        };
        let g = f.gcd(&b)?;
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            equal_degree(&g, d, rng, out)?;
            equal_degree(&f.exact_div(&g), d, rng, out)?;
            return Ok(());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn gf(q: u64) -> Arc<FieldCtx> {
        FieldCtx::from_order(q).unwrap()
    }

    /// Trial division by every monic polynomial of degree <= deg/2.
    fn irreducible_by_trial_division(f: &Poly) -> bool {
        let n = f.degree().unwrap();
        (1..=n / 2).all(|d| Poly::all_monic(f.ctx(), d).all(|g| !f.divisible_by(&g).unwrap()))
    }

    #[test]
    fn irreducible_examples() {
        let f3 = gf(3);
        let f5 = gf(5);
        assert!(Poly::from_ints(&f3, &[2, 1]).is_irreducible().unwrap());
        assert!(Poly::from_ints(&f3, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(!Poly::from_ints(&f5, &[1, 0, 1]).is_irreducible().unwrap());
        assert_eq!(Poly::one(&f3).is_irreducible(), Err(Error::ConstantPolynomial));
        assert_eq!(Poly::zero(&f3).is_irreducible(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for q in [2, 3, 4, 5] {
            let f = gf(q);
            for deg in 1..=4 {
                for p in Poly::all_monic(&f, deg) {
                    assert_eq!(p.is_irreducible().unwrap(), irreducible_by_trial_division(&p), "{p:?}");
                }
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f3 = gf(3);
        let two = Poly::from_ints(&f3, &[2]);
        let fz = two.factor().unwrap();
        assert_eq!(fz.unit, f3.from_int(2));
        assert!(fz.factors.is_empty());

        let fz = Poly::from_ints(&f3, &[2, 0, 1]).factor().unwrap();
        assert_eq!(fz.unit, FFElem::ONE);
        assert_eq!(
            fz.factors,
            vec![(Poly::from_ints(&f3, &[1, 1]), 1), (Poly::from_ints(&f3, &[2, 1]), 1)]
        );

        let fz = Poly::from_ints(&f3, &[2, 0, 2]).factor().unwrap();
        assert_eq!(fz.unit, f3.from_int(2));
        assert_eq!(fz.factors, vec![(Poly::from_ints(&f3, &[1, 0, 1]), 1)]);

        assert_eq!(Poly::zero(&f3).factor(), Err(Error::ZeroPolynomial));
    }

    fn check_factorization(f: &Poly) {
        let fz = f.factor().unwrap();
        assert_eq!(&fz.expand(f.ctx()), f);
        for w in fz.factors.windows(2) {
            assert!(w[0].0 < w[1].0, "not sorted or repeated: {:?}", fz.factors);
        }
        for (p, e) in &fz.factors {
            assert!(*e > 0);
            assert!(p.is_monic());
            assert!(p.is_irreducible().unwrap());
        }
    }

    #[test]
    fn factor_round_trips_exhaustively() {
        for q in [2, 3] {
            let f = gf(q);
            for deg in 1..=4usize {
                for k in 0..(q.pow(deg as u32 + 1)) {
                    let p = Poly::from_index(&f, deg + 1, k);
                    if p.degree() == Some(deg) {
                        check_factorization(&p);
                    }
                }
            }
        }
    }

    #[test]
    fn factor_round_trips_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for q in [4, 5, 7, 8, 9, 16, 25, 27] {
            let f = gf(q);
            for _ in 0..40 {
                let a = Poly::random_nonzero(&f, 5, &mut rng);
                let b = Poly::random_nonzero(&f, 3, &mut rng);
                // repeated factors and p-th powers exercise the squarefree step
                let p = &(&a * &b.pow(2)) * &b.pow(f.characteristic()).inflate(1);
                check_factorization(&p);
            }
        }
    }

    #[test]
    fn factor_is_seed_independent() {
        let f = gf(5);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..30 {
            let p = Poly::random_nonzero(&f, 8, &mut rng);
            assert_eq!(p.factor_with_seed(1).unwrap(), p.factor_with_seed(2).unwrap());
        }
    }
}
