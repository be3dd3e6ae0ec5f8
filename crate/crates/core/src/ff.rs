//! Finite fields GF(p^e).
//!
//! An element is stored as its index `a_0 + a_1 p + ... + a_{e-1} p^{e-1}` where
//! `(a_0, ..., a_{e-1})` are its coordinates in the basis `1, x, ..., x^{e-1}` of
//! `GF(p)[x] / (m(x))`. Comparing indices is the same as comparing coordinate
//! tuples `(a_{e-1}, ..., a_0)` lexicographically, which is the order used for
//! every "least element" choice in this crate.
//!
//! Prime fields multiply with machine arithmetic. Extension fields use
//! exponential/logarithm tables over a fixed primitive element, with Zech
//! logarithms for addition.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::polyring::Poly;

/// Default upper bound on the field size `q`.
pub const DEFAULT_MAX_Q: u64 = 1 << 20;

/// An element of some [`FieldCtx`]. Meaningless without its context.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FFElem(pub(crate) u32);

impl FFElem {
    pub const ZERO: FFElem = FFElem(0);
    pub const ONE: FFElem = FFElem(1);

    pub fn from_index(i: u32) -> Self {
        FFElem(i)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

struct LogTables {
    /// `exp[k] = g^k` for `0 <= k < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` unused.
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, `NO_LOG` when `1 + g^k = 0`. Extension fields only.
    zech: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

/// A concrete finite field `GF(p^e)` with a deterministic defining modulus.
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    /// Monic defining polynomial over GF(p), low to high; empty for prime fields.
    modulus: Vec<u32>,
    /// Distinct primes dividing `q - 1`.
    order_primes: Vec<u64>,
    generator: FFElem,
    minus_one: FFElem,
    tables: OnceLock<LogTables>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub modulus: Vec<u32>,
    pub primitive_root: String,
}

type Registry = Mutex<HashMap<(u32, u32), Arc<FieldCtx>>>;

fn registry() -> &'static Registry {
    static CACHE: OnceLock<Registry> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl FieldCtx {
    /// Builds `GF(p^e)` under the default size bound. Repeated calls return the same context.
    pub fn new(p: u64, e: u32) -> Result<Arc<FieldCtx>> {
        Self::with_limit(p, e, DEFAULT_MAX_Q)
    }

    /// Builds the field with `q` elements, `q` a prime power.
    pub fn from_order(q: u64) -> Result<Arc<FieldCtx>> {
        let (p, e) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, e)
    }

    pub fn with_limit(p: u64, e: u32, max_q: u64) -> Result<Arc<FieldCtx>> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::SizeExceeded { what: "extension degree 0".into(), limit: 1 });
        }
        let limit = max_q.min(u32::MAX as u64);
        let q = (p as u128).checked_pow(e).filter(|&q| q <= limit as u128);
        let Some(q) = q else {
            return Err(Error::SizeExceeded { what: format!("{p}^{e}"), limit });
        };
        let key = (p as u32, e);
        if let Some(ctx) = registry().lock().unwrap().get(&key) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(Self::build(p as u32, e, q as u32)?);
        registry().lock().unwrap().entry(key).or_insert(ctx.clone());
        Ok(ctx)
    }

    fn build(p: u32, e: u32, q: u32) -> Result<FieldCtx> {
        let modulus = if e == 1 { Vec::new() } else { least_irreducible(p, e)? };
        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus,
            order_primes: arith::prime_divisors(q as u64 - 1),
            generator: FFElem::ONE,
            minus_one: FFElem(if p == 2 { 1 } else { p - 1 }),
            tables: OnceLock::new(),
        };
        ctx.generator = ctx.find_generator();
        if e > 1 {
            let tables = ctx.build_tables();
            let _ = ctx.tables.set(tables);
        }
        Ok(ctx)
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    /// The defining modulus over GF(p), low to high. Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.p == other.p && self.e == other.e
    }

    pub fn info(&self) -> FieldInfo {
        FieldInfo {
            p: self.p as u64,
            e: self.e,
            q: self.q as u64,
            modulus: self.modulus.clone(),
            primitive_root: self.format_elem(self.generator),
        }
    }

    // ---- element construction ----

    pub fn zero(&self) -> FFElem {
        FFElem::ZERO
    }

    pub fn one(&self) -> FFElem {
        FFElem::ONE
    }

    pub fn minus_one(&self) -> FFElem {
        self.minus_one
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FFElem {
        FFElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element with the given coordinates; missing trailing coordinates are zero.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FFElem> {
        if coeffs.len() > self.e as usize {
            return Err(Error::Parse(format!("too many coordinates for GF({})", self.q)));
        }
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::Parse(format!("coordinate {c} out of range for p = {}", self.p)));
            }
            idx = idx * self.p + c;
        }
        Ok(FFElem(idx))
    }

    pub fn coeffs(&self, a: FFElem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut idx = a.0;
        for _ in 0..self.e {
            out.push(idx % self.p);
            idx /= self.p;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = FFElem> {
        (0..self.q).map(FFElem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FFElem> {
        (1..self.q).map(FFElem)
    }

    // ---- arithmetic ----

    #[inline]
    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        if self.e == 1 {
            let s = a.0 + b.0;
            return FFElem(if s >= self.p { s - self.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let t = self.tables();
        let n = self.q - 1;
        let (la, lb) = (t.log[a.0 as usize], t.log[b.0 as usize]);
        let d = if lb >= la { lb - la } else { lb + n - la };
        match t.zech[d as usize] {
            NO_LOG => FFElem::ZERO,
            z => FFElem(t.exp[(la + z) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: FFElem) -> FFElem {
        if a.0 == 0 || self.p == 2 {
            return a;
        }
        if self.e == 1 {
            return FFElem(self.p - a.0);
        }
        self.mul(a, self.minus_one)
    }

    #[inline]
    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.0 == 0 || b.0 == 0 {
            return FFElem::ZERO;
        }
        if self.e == 1 {
            return FFElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let t = self.tables();
        FFElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FFElem) -> Option<FFElem> {
        if a.0 == 0 {
            return None;
        }
        if self.e == 1 {
            return Some(FFElem(inv_mod(a.0 as i64, self.p as i64) as u32));
        }
        let t = self.tables();
        let n = self.q - 1;
        let l = t.log[a.0 as usize];
        Some(FFElem(t.exp[((n - l) % n) as usize]))
    }

    /// `a / b`; `None` when `b = 0`.
    pub fn div(&self, a: FFElem, b: FFElem) -> Option<FFElem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// `a^k` with the convention `0^0 = 1`.
    pub fn pow_u64(&self, a: FFElem, k: u64) -> FFElem {
        if k == 0 {
            return FFElem::ONE;
        }
        if a.0 == 0 {
            return FFElem::ZERO;
        }
        let k = k % (self.q as u64 - 1);
        if let Some(t) = self.tables.get() {
            let n = (self.q - 1) as u64;
            let l = t.log[a.0 as usize] as u64;
            return FFElem(t.exp[((l * k) % n) as usize]);
        }
        let mut base = a;
        let mut acc = FFElem::ONE;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^k` for an arbitrary-precision exponent, with `0^0 = 1`.
    pub fn pow(&self, a: FFElem, k: &BigUint) -> FFElem {
        if k.is_zero() {
            return FFElem::ONE;
        }
        if a.0 == 0 {
            return FFElem::ZERO;
        }
        let r = (k % BigUint::from(self.q - 1)).to_u64().expect("reduced exponent fits");
        // k > 0 and k ≡ 0 mod (q-1) still gives a^k = 1 for nonzero a.
        self.pow_u64(a, r)
    }

    /// `a^(p^k)`, the k-th power of Frobenius.
    pub fn frobenius(&self, a: FFElem, k: u32) -> FFElem {
        let mut out = a;
        for _ in 0..(k % self.e) {
            out = self.pow_u64(out, self.p as u64);
        }
        out
    }

    // ---- group structure ----

    /// Least `m >= 1` with `a^m = 1`.
    pub fn mult_order(&self, a: FFElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut m = self.q as u64 - 1;
        for &r in &self.order_primes {
            while m.is_multiple_of(r) && self.pow_u64(a, m / r).is_one() {
                m /= r;
            }
        }
        Ok(m)
    }

    /// Least element of order `q - 1`.
    pub fn primitive_root(&self) -> FFElem {
        self.generator
    }

    /// Whether `a` lies in `{b^n : b in GF(q)}`.
    pub fn is_nth_power(&self, a: FFElem, n: u64) -> bool {
        if a.is_zero() {
            return true;
        }
        let m = self.q as u64 - 1;
        let g = arith::gcd_u64(n, m);
        self.pow_u64(a, m / g).is_one()
    }

    /// The unique subgroup of order `n`, sorted by index.
    pub fn nth_roots_of_unity(&self, n: u64) -> Result<Vec<FFElem>> {
        let m = self.q as u64 - 1;
        if n == 0 || !m.is_multiple_of(n) {
            return Err(Error::does_not_divide(n, m));
        }
        let z = self.primitive_nth_root(n)?;
        let mut out: Vec<FFElem> = Vec::with_capacity(n as usize);
        let mut cur = FFElem::ONE;
        for _ in 0..n {
            out.push(cur);
            cur = self.mul(cur, z);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The fixed generator `g^((q-1)/n)` of the n-th roots of unity.
    pub fn primitive_nth_root(&self, n: u64) -> Result<FFElem> {
        let m = self.q as u64 - 1;
        if n == 0 || !m.is_multiple_of(n) {
            return Err(Error::does_not_divide(n, m));
        }
        Ok(self.pow_u64(self.generator, m / n))
    }

    /// Discrete logarithm to the base [`Self::primitive_root`]; `None` for zero.
    pub fn discrete_log(&self, a: FFElem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        Some(self.tables().log[a.0 as usize] as u64)
    }

    /// Some `b` with `b^n = a`, if one exists.
    pub fn nth_root(&self, a: FFElem, n: u64) -> Option<FFElem> {
        if a.is_zero() {
            return Some(a);
        }
        if n == 0 {
            return a.is_one().then_some(FFElem::ONE);
        }
        let m = self.q as u64 - 1;
        let k = self.discrete_log(a)?;
        let g = arith::gcd_u64(n, m);
        if k % g != 0 {
            return None;
        }
        let mg = m / g;
        let j = if mg == 1 {
            0
        } else {
            let inv = inv_mod(((n / g) % mg) as i64, mg as i64) as u64;
            ((k / g) as u128 * inv as u128 % mg as u128) as u64
        };
        Some(self.pow_u64(self.generator, j))
    }

    // ---- text ----

    /// Decimal index for prime fields, `[a0,a1,...]` otherwise.
    pub fn format_elem(&self, a: FFElem) -> String {
        if self.e == 1 {
            a.0.to_string()
        } else {
            let c: Vec<String> = self.coeffs(a).iter().map(u32::to_string).collect();
            format!("[{}]", c.join(","))
        }
    }

    pub fn parse_elem(&self, s: &str) -> Result<FFElem> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim())
                .filter(|c| !c.is_empty())
                .map(|c| c.parse::<u32>().map_err(|_| Error::Parse(format!("bad coordinate `{c}`"))))
                .collect::<Result<Vec<_>>>()?;
            return self.from_coeffs(&coeffs);
        }
        let n: u64 = s.parse().map_err(|_| Error::Parse(format!("bad field element `{s}`")))?;
        if self.e == 1 {
            Ok(FFElem((n % self.p as u64) as u32))
        } else if n < self.p as u64 {
            Ok(FFElem(n as u32))
        } else {
            Err(Error::Parse(format!("`{s}` is not in the prime subfield of GF({})", self.q)))
        }
    }

    // ---- construction internals ----

    fn tables(&self) -> &LogTables {
        self.tables.get_or_init(|| self.build_tables())
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place = place.wrapping_mul(self.p);
        }
        out
    }

    /// Schoolbook multiplication modulo the defining polynomial, without tables.
    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p as u64;
        let e = self.e as usize;
        let da = self.coeffs(FFElem(a));
        let db = self.coeffs(FFElem(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus[..e].iter().enumerate() {
                prod[k - e + i] = (prod[k - e + i] + (p - c) * m as u64) % p;
            }
            prod[k] = 0;
        }
        let mut idx = 0u32;
        for &c in prod[..e].iter().rev() {
            idx = idx * self.p + c as u32;
        }
        idx
    }

    fn pow_raw(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            k >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> FFElem {
        let m = self.q as u64 - 1;
        (1..self.q)
            .find(|&g| self.order_primes.iter().all(|&r| self.pow_raw(g, m / r) != 1))
            .map(FFElem)
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> LogTables {
        let n = (self.q - 1) as usize;
        let g = self.generator.0;
        let mut exp = Vec::with_capacity(2 * n);
        let mut log = vec![NO_LOG; self.q as usize];
        let mut cur = 1u32;
        for k in 0..n {
            exp.push(cur);
            log[cur as usize] = k as u32;
            cur = self.mul_raw(cur, g);
        }
        exp.extend_from_within(..);
        let zech = if self.e == 1 {
            Vec::new()
        } else {
            (0..n)
                .map(|k| match self.add_digits(1, exp[k]) {
                    0 => NO_LOG,
                    s => log[s as usize],
                })
                .collect()
        };
        LogTables { exp, log, zech }
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({self})")
    }
}

/// `p^e` followed by the modulus coefficient list for extension fields.
impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)?;
        if self.e > 1 {
            let c: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
            write!(f, " [{}]", c.join(","))?;
        }
        Ok(())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FieldCtx {}

fn inv_mod(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    t0.rem_euclid(m)
}

/// Lexicographically least monic irreducible of degree `e` over GF(p), low to high.
fn least_irreducible(p: u32, e: u32) -> Result<Vec<u32>> {
    let base = FieldCtx::new(p as u64, 1)?;
    let count = (p as u64).pow(e);
    for k in 0..count {
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        let mut idx = k;
        for _ in 0..e {
            coeffs.push(FFElem((idx % p as u64) as u32));
            idx /= p as u64;
        }
        coeffs.push(FFElem::ONE);
        let f = Poly::from_coeffs(&base, coeffs);
        if f.is_irreducible()? {
            return Ok(f.coeffs().iter().map(|c| c.0).collect());
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(i: u32) -> FFElem {
        FFElem(i)
    }

    #[test]
    fn make_field_examples() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f3.order(), 3);
        assert!(f3.modulus().is_empty());
        assert_eq!(FieldCtx::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldCtx::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldCtx::new(2, 21), Err(Error::SizeExceeded { .. })));
        assert!(Arc::ptr_eq(&FieldCtx::new(3, 2).unwrap(), &FieldCtx::new(3, 2).unwrap()));
    }

    #[test]
    fn pow_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.pow(el(2), &BigUint::from(0u32)), FFElem::ONE);
        assert_eq!(f5.pow(el(2), &BigUint::from(3u32)), el(3));
        assert_eq!(f5.pow(el(2), &BigUint::from(4u32)), FFElem::ONE);
        assert_eq!(f5.pow(FFElem::ZERO, &BigUint::from(0u32)), FFElem::ONE);
        assert_eq!(f5.pow(FFElem::ZERO, &BigUint::from(7u32)), FFElem::ZERO);
        let huge = BigUint::from(4u32).pow(40) + BigUint::from(3u32);
        assert_eq!(f5.pow(el(2), &huge), el(3));
    }

    #[test]
    fn order_and_generator_examples() {
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.mult_order(FFElem::ONE).unwrap(), 1);
        assert_eq!(f7.mult_order(el(2)).unwrap(), 3);
        assert_eq!(f7.mult_order(el(3)).unwrap(), 6);
        assert_eq!(f7.mult_order(FFElem::ZERO), Err(Error::ZeroElement));
        assert_eq!(FieldCtx::new(2, 1).unwrap().primitive_root(), FFElem::ONE);
        assert_eq!(FieldCtx::new(5, 1).unwrap().primitive_root(), el(2));
        assert_eq!(f7.primitive_root(), el(3));
    }

    #[test]
    fn nth_power_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert!(f5.is_nth_power(FFElem::ONE, 7));
        assert!(f5.is_nth_power(el(4), 2));
        assert!(!f5.is_nth_power(el(2), 2));
        assert!(f5.is_nth_power(FFElem::ZERO, 2));
    }

    #[test]
    fn roots_of_unity_examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(f7.nth_roots_of_unity(1).unwrap(), vec![FFElem::ONE]);
        assert_eq!(f5.nth_roots_of_unity(2).unwrap(), vec![el(1), el(4)]);
        assert_eq!(f7.nth_roots_of_unity(3).unwrap(), vec![el(1), el(2), el(4)]);
        assert!(matches!(f7.nth_roots_of_unity(4), Err(Error::DoesNotDivide { .. })));
    }

    #[test]
    fn serialization() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f9.to_string(), "3^2 [1,0,1]");
        assert_eq!(FieldCtx::new(7, 1).unwrap().to_string(), "7^1");
        let a = f9.from_coeffs(&[2, 1]).unwrap();
        assert_eq!(f9.format_elem(a), "[2,1]");
        assert_eq!(f9.parse_elem("[2,1]").unwrap(), a);
        assert_eq!(f9.parse_elem("2").unwrap(), f9.from_int(2));
        assert!(f9.parse_elem("5").is_err());
        assert!(f9.parse_elem("[3,0]").is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = FieldCtx::new(p, e).unwrap();
            let els: Vec<FFElem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), FFElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FFElem::ONE);
                    assert_eq!(f.pow_u64(a, f.order() - 1), FFElem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b).0, f.mul_raw(a.0, b.0));
                    assert_eq!(f.add(a, b).0, f.add_digits(a.0, b.0));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn nth_root_extraction() {
        for q in [3u64, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
            let f = FieldCtx::from_order(q).unwrap();
            for n in 1..=8u64 {
                for a in f.elements() {
                    match f.nth_root(a, n) {
                        Some(b) => assert_eq!(f.pow_u64(b, n), a),
                        None => assert!(f.elements().all(|b| f.pow_u64(b, n) != a)),
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = FieldCtx::new(3, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 3), a);
            assert_eq!(f.frobenius(a, 1), f.pow_u64(a, 3));
        }
        for c in 0..3 {
            assert_eq!(f.frobenius(f.from_int(c), 1), f.from_int(c));
        }
    }
}
