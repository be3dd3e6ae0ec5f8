//! n-th power residue symbols in `GF(q)[t]` and the reciprocity laws they satisfy.
//!
//! For a monic prime `P` of degree `d` and `n | q - 1`, `(α/P)_n` is the unique
//! constant congruent to `α^{(q^d - 1)/n}` modulo `P` (zero when `P | α`). The
//! symbol extends multiplicatively to composite moduli, ignoring their leading
//! coefficient, and is `1` for constant moduli.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{FFElem, FieldCtx};
use crate::polyring::{MonicPrime, Poly, QuotientRing};

/// Value of a residue symbol: zero, or an n-th root of unity in the base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SymbolValue(pub FFElem);

impl SymbolValue {
    pub fn value(self) -> FFElem {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }

    /// `k` with `value = ζ_n^k` for the fixed primitive n-th root `ζ_n = g^{(q-1)/n}`.
    pub fn mu_index(self, ctx: &FieldCtx, n: u64) -> Option<u64> {
        let m = ctx.order() - 1;
        let log = ctx.discrete_log(self.0)?;
        let step = m / n;
        (log % step == 0).then_some(log / step)
    }
}

/// `sign_n(f) = lc(f)^{(q-1)/n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SignN(pub FFElem);

/// Which route computed a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exp,
    Resultant,
}

/// Machine-readable record of one symbol evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolRecord {
    pub q: u64,
    pub n: u64,
    pub alpha: String,
    pub modulus: String,
    pub value: String,
    pub mu_index: Option<u64>,
    pub method: Method,
}

impl SymbolRecord {
    pub fn new(alpha: &Poly, modulus: &Poly, n: u64, value: SymbolValue, method: Method) -> Self {
        let ctx = alpha.ctx();
        SymbolRecord {
            q: ctx.order(),
            n,
            alpha: alpha.to_string(),
            modulus: modulus.to_string(),
            value: ctx.format_elem(value.0),
            mu_index: value.mu_index(ctx, n),
            method,
        }
    }
}

/// `(q - 1) / n`, or `DoesNotDivide`.
pub fn cofactor(ctx: &FieldCtx, n: u64) -> Result<u64> {
    let m = ctx.order() - 1;
    if n == 0 || !m.is_multiple_of(n) {
        return Err(Error::does_not_divide(n, m));
    }
    Ok(m / n)
}

fn check_same_field(a: &Poly, b: &Poly) -> Result<()> {
    if a.same_field(b) {
        Ok(())
    } else {
        Err(Error::FieldMismatch)
    }
}

/// `(α/P)_n` for a monic prime `P`.
pub fn residue_symbol_prime(alpha: &Poly, p: &MonicPrime, n: u64) -> Result<SymbolValue> {
    check_same_field(alpha, p)?;
    let ctx = p.ctx();
    cofactor(ctx, n)?;
    let reduced = alpha.rem(p)?;
    if reduced.is_zero() {
        return Ok(SymbolValue(FFElem::ZERO));
    }
    let exponent = (arith::big_pow(ctx.order(), p.deg() as u64) - BigUint::one()) / BigUint::from(n);
    let power = reduced.powmod(&exponent, p)?;
    match power.as_constant() {
        Some(c) => Ok(SymbolValue(c)),
        None => Err(Error::NonConstantResidue(power.to_string())),
    }
}

/// `(α/β)_n` for any nonzero `β`: the product of `(α/P_i)_n^{e_i}` over `β = a Π P_i^{e_i}`.
pub fn residue_symbol(alpha: &Poly, beta: &Poly, n: u64) -> Result<SymbolValue> {
    check_same_field(alpha, beta)?;
    if beta.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let ctx = beta.ctx().clone();
    cofactor(&ctx, n)?;
    if beta.is_constant() {
        return Ok(SymbolValue(FFElem::ONE));
    }
    let mut acc = FFElem::ONE;
    for (p, e) in beta.factor()?.factors {
        let s = residue_symbol_prime(alpha, &MonicPrime::new_unchecked(p), n)?;
        acc = ctx.mul(acc, ctx.pow_u64(s.0, e as u64));
    }
    Ok(SymbolValue(acc))
}

/// Closed form `(a/P)_n = a^{((q-1)/n) deg P}` for a constant `a`.
pub fn constant_symbol(a: FFElem, p: &MonicPrime, n: u64) -> Result<SymbolValue> {
    let ctx = p.ctx();
    let k = cofactor(ctx, n)?;
    Ok(SymbolValue(ctx.pow_u64(a, k * p.deg() as u64)))
}

pub fn sign_n(f: &Poly, n: u64) -> Result<SignN> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = f.ctx();
    let k = cofactor(ctx, n)?;
    Ok(SignN(ctx.pow_u64(f.lc(), k)))
}

/// `(-1)^{((q-1)/n) · a · b}` as a field element.
fn reciprocity_sign(ctx: &FieldCtx, n: u64, a: usize, b: usize) -> Result<FFElem> {
    let k = cofactor(ctx, n)?;
    let odd = k % 2 == 1 && a % 2 == 1 && b % 2 == 1;
    Ok(if odd { ctx.minus_one() } else { FFElem::ONE })
}

/// Both sides of `(Q/P)_n = (-1)^{((q-1)/n) deg P deg Q} (P/Q)_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityCheck {
    /// `(Q/P)_n`
    pub lhs: SymbolValue,
    /// `(P/Q)_n`
    pub swapped: SymbolValue,
    pub sign: FFElem,
    pub rhs: FFElem,
    pub holds: bool,
}

pub fn check_reciprocity_monic(p: &MonicPrime, q: &MonicPrime, n: u64) -> Result<ReciprocityCheck> {
    check_same_field(p, q)?;
    let ctx = p.ctx();
    let lhs = residue_symbol_prime(q, p, n)?;
    let swapped = residue_symbol_prime(p, q, n)?;
    let sign = reciprocity_sign(ctx, n, p.deg(), q.deg())?;
    let rhs = ctx.mul(sign, swapped.0);
    Ok(ReciprocityCheck { lhs, swapped, sign, rhs, holds: lhs.0 == rhs })
}

/// All factors of
/// `(α/β)_n (β/α)_n^{-1} = (-1)^{((q-1)/n) deg α deg β} sign_n(α)^{deg β} sign_n(β)^{-deg α}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralReciprocityCheck {
    pub alpha_over_beta: SymbolValue,
    pub beta_over_alpha: SymbolValue,
    pub sign: FFElem,
    pub sign_alpha_term: FFElem,
    pub sign_beta_term: FFElem,
    pub lhs: FFElem,
    pub rhs: FFElem,
    pub holds: bool,
}

pub fn check_general_reciprocity(alpha: &Poly, beta: &Poly, n: u64) -> Result<GeneralReciprocityCheck> {
    check_same_field(alpha, beta)?;
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !alpha.is_coprime(beta)? {
        return Err(Error::NotCoprime);
    }
    let ctx = alpha.ctx();
    let (da, db) = (alpha.degree().unwrap_or(0), beta.degree().unwrap_or(0));
    let alpha_over_beta = residue_symbol(alpha, beta, n)?;
    let beta_over_alpha = residue_symbol(beta, alpha, n)?;
    let sign = reciprocity_sign(ctx, n, da, db)?;
    let sign_alpha_term = ctx.pow_u64(sign_n(alpha, n)?.0, db as u64);
    let sign_beta_term = ctx.inv(ctx.pow_u64(sign_n(beta, n)?.0, da as u64)).expect("units");
    let lhs = ctx.div(alpha_over_beta.0, beta_over_alpha.0).ok_or(Error::NotCoprime)?;
    let rhs = ctx.mul(sign, ctx.mul(sign_alpha_term, sign_beta_term));
    Ok(GeneralReciprocityCheck {
        alpha_over_beta,
        beta_over_alpha,
        sign,
        sign_alpha_term,
        sign_beta_term,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// `Res(β, α)^{(q-1)/n}` for monic `β` coprime to `α`.
pub fn symbol_via_resultant(alpha: &Poly, beta: &Poly, n: u64) -> Result<SymbolValue> {
    check_same_field(alpha, beta)?;
    if !beta.is_monic() {
        return Err(Error::NotMonic(beta.to_string()));
    }
    let ctx = beta.ctx();
    let k = cofactor(ctx, n)?;
    if !alpha.is_coprime(beta)? {
        return Err(Error::NotCoprime);
    }
    if beta.is_constant() {
        return Ok(SymbolValue(FFElem::ONE));
    }
    let res = beta.resultant(alpha)?;
    Ok(SymbolValue(ctx.pow_u64(res, k)))
}

/// Some `α` of degree `< deg P` with `(α/P)_n = ζ`, scanning powers of the least
/// primitive element of `(GF(q)[t]/P)^×`.
pub fn find_preimage(zeta: FFElem, p: &MonicPrime, n: u64) -> Result<Poly> {
    let ctx: &Arc<FieldCtx> = p.ctx();
    cofactor(ctx, n)?;
    if zeta.is_zero() || !ctx.pow_u64(zeta, n).is_one() {
        return Err(Error::NotRootOfUnity(ctx.format_elem(zeta)));
    }
    let ring = QuotientRing::new(p);
    let gamma = ring.primitive_element();
    let mut cur = Poly::one(ctx);
    loop {
        if residue_symbol_prime(&cur, p, n)?.0 == zeta {
            return Ok(cur);
        }
        cur = ring.mul(&cur, &gamma);
        if cur.is_one() {
            return Err(Error::NotRootOfUnity(ctx.format_elem(zeta)));
        }
    }
}
