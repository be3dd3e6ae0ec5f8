//! Local solvability of `x^n = α` at monic primes and a scanner for local
//! obstructions to being a global n-th power.

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::polyring::{monic_primes, MonicPrime, Poly};
use crate::symbol::{self, SymbolValue};

pub const GW_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalReason {
    ResidueFieldSolvable,
    /// `n | q - 1` and the symbol is a nontrivial root of unity.
    SymbolObstruction { symbol: SymbolValue },
    /// `n ∤ q - 1`: `α^{(q^d-1)/g}` is not `1` modulo `P`, with `g = gcd(n, q^d - 1)`.
    ResidueObstruction { residue: Poly },
    /// `P | α`.
    Excluded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalReport {
    pub prime: Poly,
    pub locally_solvable: bool,
    pub reason: LocalReason,
    /// `f(x) = x^n - α` has `f'(a_0) = n a_0^{n-1}` a unit mod `P` at any residue root `a_0`.
    pub hensel_simple_root: bool,
}

fn check_exponent(p: u64, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if n.is_multiple_of(p) {
        return Err(Error::CharacteristicDividesN { p, n });
    }
    Ok(())
}

pub fn local_solvable(alpha: &Poly, p: &MonicPrime, n: u64) -> Result<LocalReport> {
    if !alpha.same_field(p) {
        return Err(Error::FieldMismatch);
    }
    let ctx = p.ctx();
    check_exponent(ctx.characteristic(), n)?;
    let reduced = alpha.rem(p)?;
    if reduced.is_zero() {
        return Ok(LocalReport {
            prime: p.as_poly().clone(),
            locally_solvable: false,
            reason: LocalReason::Excluded,
            hensel_simple_root: false,
        });
    }
    let m = arith::big_pow(ctx.order(), p.deg() as u64) - BigUint::one();
    let g = num_integer::Integer::gcd(&m, &BigUint::from(n));
    let residue = reduced.powmod(&(&m / &g), p)?;
    let solvable = residue.is_one();
    let reason = if solvable {
        LocalReason::ResidueFieldSolvable
    } else if (ctx.order() - 1).is_multiple_of(n) {
        LocalReason::SymbolObstruction { symbol: symbol::residue_symbol_prime(&reduced, p, n)? }
    } else {
        LocalReason::ResidueObstruction { residue }
    };
    Ok(LocalReport { prime: p.as_poly().clone(), locally_solvable: solvable, reason, hensel_simple_root: true })
}

/// `β` with `β^n = α`, if one exists.
pub fn global_nth_power(alpha: &Poly, n: u64) -> Result<Option<Poly>> {
    if alpha.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let ctx = alpha.ctx();
    let fac = alpha.factor()?;
    if fac.factors.iter().any(|(_, e)| !(*e as u64).is_multiple_of(n)) {
        return Ok(None);
    }
    let Some(lambda) = ctx.nth_root(fac.unit, n) else {
        return Ok(None);
    };
    let beta = fac
        .factors
        .iter()
        .fold(Poly::constant(ctx, lambda), |acc, (p, e)| &acc * &p.pow(*e as u64 / n));
    assert_eq!(&beta.pow(n), alpha, "n-th root reconstruction");
    Ok(Some(beta))
}

/// All monic primes of degree `<= bound` in (degree, lex) order.
fn primes_up_to(alpha: &Poly, bound: usize) -> Result<Vec<MonicPrime>> {
    let mut out = Vec::new();
    for d in 1..=bound {
        out.extend(monic_primes(alpha.ctx(), d)?);
    }
    Ok(out)
}

/// First monic prime of degree `<= bound` not dividing `α` at which `x^n = α` has no local solution.
pub fn find_witness_prime(alpha: &Poly, n: u64, bound: usize) -> Result<Option<MonicPrime>> {
    check_exponent(alpha.ctx().characteristic(), n)?;
    for d in 1..=bound {
        let primes = monic_primes(alpha.ctx(), d)?;
        let hit = primes
            .par_iter()
            .map(|p| local_solvable(alpha, p, n).map(|r| r.reason != LocalReason::Excluded && !r.locally_solvable))
            .collect::<Result<Vec<bool>>>()?;
        if let Some(i) = hit.iter().position(|&h| h) {
            return Ok(Some(primes[i].clone()));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    GlobalPower,
    WitnessFound,
    InconclusiveAtBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GWReport {
    pub schema_version: u32,
    pub q: u64,
    pub alpha: Poly,
    pub n: u64,
    pub degree_bound: usize,
    pub excluded_primes: Vec<Poly>,
    pub witnesses: Vec<Poly>,
    pub globally_power: Option<Poly>,
    pub verdict: Verdict,
}

impl GWReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Global n-th power test plus an exhaustive local sweep over primes of degree `<= bound`.
pub fn gw_scan(alpha: &Poly, n: u64, bound: usize) -> Result<GWReport> {
    let ctx = alpha.ctx();
    check_exponent(ctx.characteristic(), n)?;
    match alpha.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(_) => {}
    }
    let primes = primes_up_to(alpha, bound)?;
    let reports = primes
        .par_iter()
        .map(|p| local_solvable(alpha, p, n))
        .collect::<Result<Vec<LocalReport>>>()?;
    let mut excluded_primes = Vec::new();
    let mut witnesses = Vec::new();
    for r in reports {
        match r.reason {
            LocalReason::Excluded => excluded_primes.push(r.prime),
            _ if !r.locally_solvable => witnesses.push(r.prime),
            _ => {}
        }
    }
    let globally_power = global_nth_power(alpha, n)?;
    let verdict = if globally_power.is_some() {
        Verdict::GlobalPower
    } else if !witnesses.is_empty() {
        Verdict::WitnessFound
    } else {
        Verdict::InconclusiveAtBound
    };
    Ok(GWReport {
        schema_version: GW_SCHEMA_VERSION,
        q: ctx.order(),
        alpha: alpha.clone(),
        n,
        degree_bound: bound,
        excluded_primes,
        witnesses,
        globally_power,
        verdict,
    })
}
