//! Per-index evaluation of a fixed catalog of statements over a [`FamilyCtx`].

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{subgroup_unique, FamilyCtx};
use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{FFElem, FieldCtx};
use crate::polyring::{monic_primes, MonicPrime, Poly};
use crate::symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    FermatLittle,
    ReciprocityMonic,
    GeneralReciprocity,
    ResultantEquivalence,
    RootOrbit,
    SymbolPowerCriterion,
    GcdComponentwise,
    CyclicSubgroupUniqueness,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::FermatLittle,
        Property::ReciprocityMonic,
        Property::GeneralReciprocity,
        Property::ResultantEquivalence,
        Property::RootOrbit,
        Property::SymbolPowerCriterion,
        Property::GcdComponentwise,
        Property::CyclicSubgroupUniqueness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::FermatLittle => "fermat_little",
            Property::ReciprocityMonic => "reciprocity_monic",
            Property::GeneralReciprocity => "general_reciprocity",
            Property::ResultantEquivalence => "resultant_equivalence",
            Property::RootOrbit => "root_orbit",
            Property::SymbolPowerCriterion => "symbol_power_criterion",
            Property::GcdComponentwise => "gcd_componentwise",
            Property::CyclicSubgroupUniqueness => "cyclic_subgroup_uniqueness",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }

    /// Whether the statement reads residue symbols, so that [`Fault`] can reach it.
    pub fn uses_symbols(self) -> bool {
        matches!(
            self,
            Property::ReciprocityMonic
                | Property::GeneralReciprocity
                | Property::ResultantEquivalence
                | Property::SymbolPowerCriterion
        )
    }
}

/// How random inputs are drawn at each index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransferInputs {
    pub seed: u64,
    /// Random cases per index for the sampled properties.
    pub samples: usize,
    /// Degree bound for primes; exhaustive properties enumerate every prime up to it.
    pub max_deg: usize,
}

impl Default for TransferInputs {
    fn default() -> Self {
        TransferInputs { seed: crate::DEFAULT_SEED, samples: 48, max_deg: 2 }
    }
}

/// Corrupts every symbol value read at `index` by adding one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fault {
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexOutcome {
    pub property: &'static str,
    pub index: String,
    pub q: u64,
    pub n: u64,
    pub holds: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransferReport {
    pub property: &'static str,
    pub outcomes: Vec<IndexOutcome>,
    pub all: bool,
    pub fails_at: Vec<String>,
}

impl TransferReport {
    /// One JSON document per index.
    pub fn json_lines(&self) -> Vec<String> {
        self.outcomes.iter().map(|o| serde_json::to_string(o).expect("serializable")).collect()
    }
}

pub fn transfer_check(property: &str, ctx: &FamilyCtx, inputs: &TransferInputs, fault: Option<Fault>) -> Result<TransferReport> {
    let prop = Property::parse(property)?;
    if let Some(f) = fault {
        if f.index >= ctx.len() {
            return Err(Error::Config(format!("fault index {} outside the family", f.index)));
        }
    }
    let outcomes: Vec<IndexOutcome> = (0..ctx.len())
        .into_par_iter()
        .map(|i| {
            let f = ctx.field(i);
            let n = ctx.n(i);
            let mut rng = ChaCha8Rng::seed_from_u64(inputs.seed ^ (i as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let corrupt = fault.is_some_and(|x| x.index == i);
            let run = Run { f, n, inputs, corrupt };
            let (holds, cases, witness, error) = match run.eval(prop, &mut rng) {
                Ok(e) => (e.witness.is_none(), e.cases, e.witness, None),
                Err(e) => (false, 0, None, Some(e.to_string())),
            };
            IndexOutcome { property: prop.name(), index: ctx.indices()[i].clone(), q: f.order(), n, holds, cases, witness, error }
        })
        .collect();
    let fails_at: Vec<String> = outcomes.iter().filter(|o| !o.holds).map(|o| o.index.clone()).collect();
    Ok(TransferReport { property: prop.name(), all: fails_at.is_empty(), fails_at, outcomes })
}

struct Eval {
    cases: usize,
    witness: Option<Value>,
}

impl Eval {
    /// Runs `check` over `cases`, keeping the first failing witness.
    fn over<T: Sync>(cases: &[T], check: impl Fn(&T) -> Result<Option<Value>> + Sync + Send) -> Result<Eval> {
        let results = cases.par_iter().map(check).collect::<Result<Vec<_>>>()?;
        Ok(Eval { cases: cases.len(), witness: results.into_iter().flatten().next() })
    }
}

struct Run<'a> {
    f: &'a Arc<FieldCtx>,
    n: u64,
    inputs: &'a TransferInputs,
    corrupt: bool,
}

impl Run<'_> {
    fn tamper(&self, v: FFElem) -> FFElem {
        if self.corrupt {
            self.f.add(v, FFElem::ONE)
        } else {
            v
        }
    }

    fn fmt(&self, v: FFElem) -> String {
        self.f.format_elem(v)
    }

    fn primes(&self, max_deg: usize) -> Result<Vec<MonicPrime>> {
        let mut out = Vec::new();
        for d in 1..=max_deg {
            out.extend(monic_primes(self.f, d)?);
        }
        Ok(out)
    }

    fn random_prime(&self, rng: &mut ChaCha8Rng) -> MonicPrime {
        loop {
            let d = rng.gen_range(1..=self.inputs.max_deg.max(1));
            let p = Poly::random_monic(self.f, d, rng);
            if p.is_irreducible().expect("nonconstant") {
                return MonicPrime::new(p).expect("irreducible");
            }
        }
    }

    /// Random pair `(a, b)` from the two samplers, resampled until coprime.
    fn coprime_pair(
        &self,
        rng: &mut ChaCha8Rng,
        a: impl Fn(&mut ChaCha8Rng) -> Poly,
        b: impl Fn(&mut ChaCha8Rng) -> Poly,
    ) -> (Poly, Poly) {
        loop {
            let (x, y) = (a(rng), b(rng));
            if !x.is_zero() && !y.is_zero() && x.is_coprime(&y).expect("nonzero") {
                return (x, y);
            }
        }
    }

    fn eval(&self, prop: Property, rng: &mut ChaCha8Rng) -> Result<Eval> {
        let (f, n, k) = (self.f, self.n, self.inputs.samples);
        let max_deg = self.inputs.max_deg.max(1);
        match prop {
            Property::FermatLittle => {
                let cases: Vec<(Poly, MonicPrime)> = (0..k)
                    .map(|_| {
                        let p = self.random_prime(rng);
                        loop {
                            let a = Poly::random_nonzero(f, 2 * max_deg + 1, rng);
                            if !a.divisible_by(&p).expect("nonzero") {
                                return (a, p);
                            }
                        }
                    })
                    .collect();
                Eval::over(&cases, |(a, p)| {
                    let e = arith::big_pow(f.order(), p.deg() as u64) - BigUint::from(1u32);
                    let r = a.powmod(&e, p)?;
                    Ok((!r.is_one()).then(|| json!({"alpha": a, "prime": p, "power": r})))
                })
            }
            Property::ReciprocityMonic => {
                let primes = self.primes(max_deg)?;
                let pairs: Vec<(&MonicPrime, &MonicPrime)> = primes
                    .iter()
                    .flat_map(|p| primes.iter().filter(move |q| *q != p).map(move |q| (p, q)))
                    .collect();
                Eval::over(&pairs, |(p, q)| {
                    let c = symbol::check_reciprocity_monic(p, q, n)?;
                    let lhs = self.tamper(c.lhs.0);
                    Ok((lhs != c.rhs).then(|| {
                        json!({"P": p, "Q": q, "lhs": self.fmt(lhs), "sign": self.fmt(c.sign),
                               "swapped": self.fmt(c.swapped.0), "rhs": self.fmt(c.rhs)})
                    }))
                })
            }
            Property::GeneralReciprocity => {
                let cases: Vec<(Poly, Poly)> = (0..k)
                    .map(|_| {
                        self.coprime_pair(
                            rng,
                            |r| Poly::random_nonzero(f, max_deg + 1, r),
                            |r| Poly::random_nonzero(f, max_deg + 1, r),
                        )
                    })
                    .collect();
                Eval::over(&cases, |(a, b)| {
                    let c = symbol::check_general_reciprocity(a, b, n)?;
                    let aob = self.tamper(c.alpha_over_beta.0);
                    let ok = aob == f.mul(c.rhs, c.beta_over_alpha.0);
                    Ok((!ok).then(|| {
                        json!({"alpha": a, "beta": b, "alpha_over_beta": self.fmt(aob),
                               "beta_over_alpha": self.fmt(c.beta_over_alpha.0), "sign": self.fmt(c.sign),
                               "sign_alpha_term": self.fmt(c.sign_alpha_term),
                               "sign_beta_term": self.fmt(c.sign_beta_term), "rhs": self.fmt(c.rhs)})
                    }))
                })
            }
            Property::ResultantEquivalence => {
                let cases: Vec<(Poly, Poly)> = (0..k)
                    .map(|_| {
                        self.coprime_pair(
                            rng,
                            |r| Poly::random_nonzero(f, max_deg + 1, r),
                            |r| {
                                let d = r.gen_range(0..=max_deg + 1);
                                Poly::random_monic(f, d, r)
                            },
                        )
                    })
                    .collect();
                Eval::over(&cases, |(a, b)| {
                    let exp = self.tamper(symbol::residue_symbol(a, b, n)?.0);
                    let res = symbol::symbol_via_resultant(a, b, n)?.0;
                    Ok((exp != res).then(|| json!({"alpha": a, "beta": b, "exp": self.fmt(exp), "resultant": self.fmt(res)})))
                })
            }
            Property::RootOrbit => {
                let primes = self.primes(max_deg)?;
                Eval::over(&primes, |p| Ok((!p.verify_root_orbit()?).then(|| json!({"prime": p}))))
            }
            Property::SymbolPowerCriterion => {
                let mut primes = self.primes(max_deg.min(2))?;
                primes.shuffle(rng);
                primes.truncate(k.max(1));
                Eval::over(&primes, |p| {
                    let units: Vec<Poly> = Poly::all_below_degree(f, p.deg()).filter(|a| !a.is_zero()).collect();
                    let powers: HashSet<Poly> = units.iter().map(|a| a.powmod_u64(n, p).expect("nonzero")).collect();
                    for a in &units {
                        let s = self.tamper(symbol::residue_symbol_prime(a, p, n)?.0);
                        if s.is_one() != powers.contains(a) {
                            return Ok(Some(json!({"prime": p, "alpha": a, "symbol": self.fmt(s),
                                                  "is_nth_power": powers.contains(a)})));
                        }
                    }
                    Ok(None)
                })
            }
            Property::GcdComponentwise => {
                let cases: Vec<(Poly, Poly, Poly)> = (0..k)
                    .map(|_| {
                        let a = Poly::random_nonzero(f, 2 * max_deg + 2, rng);
                        let b = Poly::random(f, 2 * max_deg + 2, rng);
                        let c = Poly::random_nonzero(f, max_deg, rng);
                        (a, b, c)
                    })
                    .collect();
                Eval::over(&cases, |(a, b, c)| {
                    let (d, u, v) = a.bezout(b)?;
                    let scaled = (a * c).gcd(&(b * c))?;
                    let ok = d.is_monic()
                        && a.divisible_by(&d)?
                        && b.divisible_by(&d)?
                        && &(a * &u) + &(b * &v) == d
                        && scaled == &d * &c.monic();
                    Ok((!ok).then(|| json!({"a": a, "b": b, "c": c, "gcd": d, "u": u, "v": v, "gcd_scaled": scaled})))
                })
            }
            Property::CyclicSubgroupUniqueness => {
                let ok = subgroup_unique(f);
                Ok(Eval {
                    cases: arith::divisors(f.order() - 1).len(),
                    witness: (!ok).then(|| json!({"q": f.order()})),
                })
            }
        }
    }
}
