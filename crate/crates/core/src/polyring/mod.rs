//! Univariate polynomials over a [`FieldCtx`]: arithmetic, gcd, modular
//! exponentiation, factorization, prime enumeration and resultants.

mod factor;
mod primes;
mod quotient;
mod resultant;
mod text;

pub use factor::{Factorization, DEFAULT_SPLIT_SEED};
pub use primes::{
    count_monic_primes, monic_primes, monic_primes_bounded, satisfies_prime_lower_bound, MonicPrime,
    DEFAULT_MAX_ENUMERATION,
};
pub use quotient::QuotientRing;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ff::{FFElem, FieldCtx};

/// A polynomial in `GF(q)[t]`, coefficients stored low to high with no
/// trailing zeros. The zero polynomial has no coefficients and degree `None`.
#[derive(Clone)]
pub struct Poly {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<FFElem>,
}

impl Poly {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::constant(ctx, FFElem::ONE)
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: FFElem) -> Self {
        Self::from_coeffs(ctx, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(ctx: &Arc<FieldCtx>) -> Self {
        Self::monomial(ctx, FFElem::ONE, 1)
    }

    pub fn monomial(ctx: &Arc<FieldCtx>, c: FFElem, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero(ctx);
        }
        let mut coeffs = vec![FFElem::ZERO; k + 1];
        coeffs[k] = c;
        Poly { ctx: ctx.clone(), coeffs }
    }

    /// Builds from low-to-high coefficients, dropping trailing zeros.
    pub fn from_coeffs(ctx: &Arc<FieldCtx>, coeffs: Vec<FFElem>) -> Self {
        let mut p = Poly { ctx: ctx.clone(), coeffs };
        p.trim();
        p
    }

    /// Builds from low-to-high coefficients given as integers in the prime subfield.
    pub fn from_ints(ctx: &Arc<FieldCtx>, coeffs: &[i64]) -> Self {
        Self::from_coeffs(ctx, coeffs.iter().map(|&c| ctx.from_int(c)).collect())
    }

    /// The `k`-th monic polynomial of degree `deg` in lex order, `0 <= k < q^deg`.
    pub fn monic_from_index(ctx: &Arc<FieldCtx>, deg: usize, k: u64) -> Self {
        let mut coeffs = Self::digits(ctx, deg, k);
        coeffs.push(FFElem::ONE);
        Poly { ctx: ctx.clone(), coeffs }
    }

    /// The `k`-th polynomial of degree `< deg` in lex order, `0 <= k < q^deg`.
    pub fn from_index(ctx: &Arc<FieldCtx>, deg: usize, k: u64) -> Self {
        Self::from_coeffs(ctx, Self::digits(ctx, deg, k))
    }

    fn digits(ctx: &FieldCtx, len: usize, mut k: u64) -> Vec<FFElem> {
        let q = ctx.order();
        let mut coeffs = Vec::with_capacity(len + 1);
        for _ in 0..len {
            coeffs.push(FFElem::from_index((k % q) as u32));
            k /= q;
        }
        coeffs
    }

    /// Every polynomial of degree `< deg` (including zero) in lex order.
    pub fn all_below_degree(ctx: &Arc<FieldCtx>, deg: usize) -> impl Iterator<Item = Poly> + '_ {
        let count = ctx.order().pow(deg as u32);
        (0..count).map(move |k| Self::from_index(ctx, deg, k))
    }

    /// Every monic polynomial of degree exactly `deg` in lex order.
    pub fn all_monic(ctx: &Arc<FieldCtx>, deg: usize) -> impl Iterator<Item = Poly> + '_ {
        let count = ctx.order().pow(deg as u32);
        (0..count).map(move |k| Self::monic_from_index(ctx, deg, k))
    }

    /// Uniformly random polynomial of degree `< deg`.
    pub fn random<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, deg: usize, rng: &mut R) -> Self {
        let q = ctx.order() as u32;
        let coeffs = (0..deg).map(|_| FFElem::from_index(rng.gen_range(0..q))).collect();
        Self::from_coeffs(ctx, coeffs)
    }

    /// Random monic polynomial of degree exactly `deg`.
    pub fn random_monic<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, deg: usize, rng: &mut R) -> Self {
        let mut p = Self::random(ctx, deg, rng);
        p.coeffs.resize(deg, FFElem::ZERO);
        p.coeffs.push(FFElem::ONE);
        p
    }

    /// Random nonzero polynomial of degree `<= max_deg` with a random nonzero leading coefficient.
    pub fn random_nonzero<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, max_deg: usize, rng: &mut R) -> Self {
        let deg = rng.gen_range(0..=max_deg);
        let lc = FFElem::from_index(rng.gen_range(1..ctx.order() as u32));
        Self::random_monic(ctx, deg, rng).scale(lc)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    // ---- accessors ----

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    /// Coefficients low to high; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FFElem {
        self.coeffs.get(i).copied().unwrap_or(FFElem::ZERO)
    }

    /// Degree, or `None` (minus infinity) for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for zero and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> FFElem {
        self.coeffs.last().copied().unwrap_or(FFElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    /// The constant term if this polynomial has degree `<= 0`.
    pub fn as_constant(&self) -> Option<FFElem> {
        match self.coeffs.len() {
            0 => Some(FFElem::ZERO),
            1 => Some(self.coeffs[0]),
            _ => None,
        }
    }

    pub fn same_field(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.same_field(&other.ctx)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    // ---- arithmetic ----

    pub fn scale(&self, c: FFElem) -> Poly {
        let f = &self.ctx;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// `self / lc(self)`; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.ctx.inv(self.lc()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn eval(&self, x: FFElem) -> FFElem {
        let f = &self.ctx;
        self.coeffs.iter().rev().fold(FFElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.ctx;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.from_int((i as u64 % f.characteristic()) as i64), c))
            .collect();
        Poly::from_coeffs(f, coeffs)
    }

    /// `self^k` without reduction.
    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `t -> t^m`.
    pub fn inflate(&self, m: usize) -> Poly {
        if self.is_zero() || m == 1 {
            return self.clone();
        }
        let mut coeffs = vec![FFElem::ZERO; (self.coeffs.len() - 1) * m + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c;
        }
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    /// Euclidean division: `self = g * quotient + remainder` with `deg remainder < deg g`.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let f = &self.ctx;
        let dg = g.coeffs.len() - 1;
        if self.coeffs.len() <= dg {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lc = f.inv(g.lc()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FFElem::ZERO; rem.len() - dg];
        for k in (dg..rem.len()).rev() {
            let c = rem[k];
            if c.is_zero() {
                continue;
            }
            let qc = f.mul(c, inv_lc);
            quot[k - dg] = qc;
            for (i, &gi) in g.coeffs.iter().enumerate() {
                rem[k - dg + i] = f.sub(rem[k - dg + i], f.mul(qc, gi));
            }
        }
        rem.truncate(dg);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        self.check_field(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let mut r = self.coeffs.clone();
        reduce_in_place(&self.ctx, &mut r, &g.coeffs);
        Ok(Poly::from_coeffs(&self.ctx, r))
    }

    /// Whether `g` divides `self` (`g` nonzero).
    pub fn divisible_by(&self, g: &Poly) -> Result<bool> {
        Ok(self.rem(g)?.is_zero())
    }

    /// Exact quotient, panicking if `g` does not divide `self`.
    pub(crate) fn exact_div(&self, g: &Poly) -> Poly {
        let (q, r) = self.divrem(g).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended gcd: `(d, u, v)` with `u*self + v*other = d`, `d` monic.
    pub fn bezout(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let f = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&qt * &s1);
            let t = &t0 - &(&qt * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = f.inv(r0.lc()).expect("nonzero gcd");
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    pub fn is_coprime(&self, other: &Poly) -> Result<bool> {
        Ok(self.gcd(other)?.is_one())
    }

    /// `self^k mod modulus` by square-and-multiply.
    pub fn powmod(&self, k: &BigUint, modulus: &Poly) -> Result<Poly> {
        self.check_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let f = &self.ctx;
        let m = &modulus.coeffs;
        let mut base = self.coeffs.clone();
        reduce_in_place(f, &mut base, m);
        let mut acc = vec![FFElem::ONE];
        reduce_in_place(f, &mut acc, m);
        let mut scratch = Vec::new();
        for i in (0..k.bits()).rev() {
            mul_into(f, &acc, &acc, &mut scratch);
            reduce_in_place(f, &mut scratch, m);
            std::mem::swap(&mut acc, &mut scratch);
            if k.bit(i) {
                mul_into(f, &acc, &base, &mut scratch);
                reduce_in_place(f, &mut scratch, m);
                std::mem::swap(&mut acc, &mut scratch);
            }
        }
        Ok(Poly::from_coeffs(f, acc))
    }

    /// `self^k mod modulus` for a machine-word exponent.
    pub fn powmod_u64(&self, k: u64, modulus: &Poly) -> Result<Poly> {
        self.powmod(&BigUint::from(k), modulus)
    }

    /// `(self * other) mod modulus`.
    pub fn mulmod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        (self * other).rem(modulus)
    }
}

/// `out = a * b` (schoolbook), reusing `out`'s allocation.
pub(crate) fn mul_into(f: &FieldCtx, a: &[FFElem], b: &[FFElem], out: &mut Vec<FFElem>) {
    out.clear();
    if a.is_empty() || b.is_empty() {
        return;
    }
    out.resize(a.len() + b.len() - 1, FFElem::ZERO);
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
}

/// Reduces `r` modulo the nonzero polynomial `m` and trims trailing zeros.
pub(crate) fn reduce_in_place(f: &FieldCtx, r: &mut Vec<FFElem>, m: &[FFElem]) {
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    let dm = m.len() - 1;
    if r.len() <= dm {
        return;
    }
    let lc = m[dm];
    let inv_lc = if lc.is_one() { lc } else { f.inv(lc).expect("nonzero leading coefficient") };
    for k in (dm..r.len()).rev() {
        let c = r[k];
        if c.is_zero() {
            continue;
        }
        let qc = f.neg(f.mul(c, inv_lc));
        for (i, &mi) in m[..dm].iter().enumerate() {
            if !mi.is_zero() {
                r[k - dm + i] = f.add(r[k - dm + i], f.mul(qc, mi));
            }
        }
        r[k] = FFElem::ZERO;
    }
    r.truncate(dm);
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.order().hash(state);
        self.coeffs.hash(state);
    }
}

/// Canonical order: by degree (zero first), then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[GF({})]({})", self.ctx.order(), self)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert!(self.same_field(rhs), "field mismatch");
        let f = &self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert!(self.same_field(rhs), "field mismatch");
        let f = &self.ctx;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect();
        Poly::from_coeffs(f, coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = &self.ctx;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.same_field(rhs), "field mismatch");
        let mut out = Vec::new();
        mul_into(&self.ctx, &self.coeffs, &rhs.coeffs, &mut out);
        Poly::from_coeffs(&self.ctx, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> Arc<FieldCtx> {
        FieldCtx::from_order(q).unwrap()
    }

    #[test]
    fn degree_marker() {
        let f = gf(3);
        assert_eq!(Poly::zero(&f).degree(), None);
        assert_eq!(Poly::one(&f).degree(), Some(0));
        assert_eq!(Poly::from_ints(&f, &[1, 2, 0, 0]).degree(), Some(1));
        assert!(Poly::zero(&f) < Poly::one(&f));
    }

    #[test]
    fn divrem_examples() {
        let f = gf(3);
        let g = Poly::from_ints(&f, &[1, 0, 1]);
        let (q, r) = g.divrem(&Poly::one(&f)).unwrap();
        assert_eq!((q, r), (g.clone(), Poly::zero(&f)));
        let (q, r) = g.divrem(&Poly::from_ints(&f, &[1, 1])).unwrap();
        assert_eq!(q, Poly::from_ints(&f, &[2, 1]));
        assert_eq!(r, Poly::from_ints(&f, &[2]));
        let (q, r) = Poly::zero(&f).divrem(&g).unwrap();
        assert!(q.is_zero() && r.is_zero());
        assert_eq!(g.divrem(&Poly::zero(&f)).unwrap_err(), Error::DivisionByZeroPoly);
        assert_eq!(g.divrem(&Poly::one(&gf(5))).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn gcd_examples() {
        let f5 = gf(5);
        let a = Poly::from_ints(&f5, &[4, 0, 1]);
        let b = Poly::from_ints(&f5, &[4, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        let c = Poly::from_ints(&f5, &[2, 0, 3]);
        assert_eq!(c.gcd(&Poly::zero(&f5)).unwrap(), c.monic());
        assert_eq!(Poly::zero(&f5).gcd(&Poly::zero(&f5)).unwrap_err(), Error::BothZero);

        let t = Poly::t(&f5);
        let t1 = Poly::from_ints(&f5, &[1, 1]);
        let (d, u, v) = t.bezout(&t1).unwrap();
        assert!(d.is_one());
        assert_eq!(u, Poly::from_ints(&f5, &[4]));
        assert_eq!(v, Poly::one(&f5));
    }

    #[test]
    fn powmod_examples() {
        let f = gf(3);
        let t = Poly::t(&f);
        let m = Poly::from_ints(&f, &[1, 1]);
        assert!(t.powmod_u64(0, &m).unwrap().is_one());
        assert_eq!(t.powmod_u64(3, &m).unwrap(), Poly::from_ints(&f, &[2]));
        assert!(t.powmod_u64(2, &m).unwrap().is_one());
        assert_eq!(t.powmod_u64(2, &Poly::zero(&f)).unwrap_err(), Error::DivisionByZeroPoly);
        assert!(t.powmod_u64(5, &Poly::one(&f)).unwrap().is_zero());
    }

    #[test]
    fn divrem_reconstructs_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2, 3, 4, 5, 7, 9, 16] {
            let f = gf(q);
            for _ in 0..200 {
                let a = Poly::random(&f, 9, &mut rng);
                let b = Poly::random_nonzero(&f, 5, &mut rng);
                let (qt, r) = a.divrem(&b).unwrap();
                assert_eq!(&(&b * &qt) + &r, a);
                assert!(r.degree() < b.degree());
                assert_eq!(a.rem(&b).unwrap(), r);
            }
        }
    }

    #[test]
    fn bezout_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for q in [2, 3, 5, 8, 9] {
            let f = gf(q);
            for _ in 0..200 {
                let a = Poly::random(&f, 7, &mut rng);
                let b = Poly::random_nonzero(&f, 6, &mut rng);
                let (d, u, v) = a.bezout(&b).unwrap();
                assert!(d.is_monic());
                assert_eq!(&(&u * &a) + &(&v * &b), d);
                assert!(a.divisible_by(&d).unwrap() && b.divisible_by(&d).unwrap());
                assert_eq!(a.gcd(&b).unwrap(), d);
            }
        }
    }

    #[test]
    fn powmod_matches_repeated_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let f = gf(7);
        for _ in 0..50 {
            let a = Poly::random(&f, 6, &mut rng);
            let m = Poly::random_nonzero(&f, 4, &mut rng);
            if m.is_zero() {
                continue;
            }
            let k = rng.gen_range(0..40u64);
            let mut expect = Poly::one(&f).rem(&m).unwrap();
            for _ in 0..k {
                expect = expect.mulmod(&a, &m).unwrap();
            }
            assert_eq!(a.powmod_u64(k, &m).unwrap(), expect);
        }
    }

    #[test]
    fn derivative_and_eval() {
        let f = gf(3);
        // t^3 + 2t: derivative 3t^2 + 2 = 2
        let p = Poly::from_ints(&f, &[0, 2, 0, 1]);
        assert_eq!(p.derivative(), Poly::from_ints(&f, &[2]));
        assert_eq!(p.eval(f.from_int(2)), f.from_int(8 + 4));
        assert_eq!(Poly::from_ints(&f, &[1, 1]).inflate(3), Poly::from_ints(&f, &[1, 0, 0, 1]));
    }
}
