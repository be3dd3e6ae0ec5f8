//! Self-test suites at two sizes.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use fqrecip::arith;
use fqrecip::localglobal::{find_witness_prime, global_nth_power, gw_scan, Verdict};
use fqrecip::polyring::{count_monic_primes, monic_primes};
use fqrecip::symbol::{self, SymbolValue};
use fqrecip::ultra::{transfer_check, Fault, FamilyCtx, Preset, Property, TransferInputs};
use fqrecip::{FFElem, FieldCtx, MonicPrime, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cache::{CacheStatus, PrimeCache};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaultKind {
    /// Add one to every tabulated residue symbol.
    Symbol,
}

#[derive(Debug, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Default)]
struct Tally {
    passed: u64,
    failed: u64,
    first_failure: Option<String>,
    note: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn finish(self, name: &'static str) -> SuiteResult {
        SuiteResult { name, passed: self.passed, failed: self.failed, first_failure: self.first_failure, note: self.note }
    }
}

struct Params {
    recip_qs: &'static [u64],
    recip_deg: usize,
    general_pairs: usize,
    resultant_qs: &'static [u64],
    resultant_deg: usize,
    fermat_pairs: usize,
    count_qs: &'static [u64],
    count_deg: usize,
    orbit_deg: usize,
    gw_samples: usize,
    gw_bound: usize,
    transfer: TransferInputs,
    parser_samples: usize,
    cache_deg: usize,
}

impl Params {
    fn new(level: Level, seed: u64) -> Self {
        match level {
            Level::Quick => Params {
                recip_qs: &[3, 5, 7, 9, 11, 13],
                recip_deg: 2,
                general_pairs: 500,
                resultant_qs: &[3, 5, 7],
                resultant_deg: 2,
                fermat_pairs: 200,
                count_qs: &[2, 3, 4, 5],
                count_deg: 4,
                orbit_deg: 3,
                gw_samples: 60,
                gw_bound: 3,
                transfer: TransferInputs { seed, samples: 12, max_deg: 1 },
                parser_samples: 10_000,
                cache_deg: 3,
            },
            Level::Full => Params {
                recip_qs: &[3, 5, 7, 9, 11, 13],
                recip_deg: 3,
                general_pairs: 1000,
                resultant_qs: &[3, 5, 7],
                resultant_deg: 3,
                fermat_pairs: 500,
                count_qs: &[2, 3, 4, 5, 7, 8, 9],
                count_deg: 6,
                orbit_deg: 4,
                gw_samples: 200,
                gw_bound: 4,
                transfer: TransferInputs { seed, ..TransferInputs::default() },
                parser_samples: 10_000,
                cache_deg: 4,
            },
        }
    }
}

/// Residue symbols as read by the suites; a fault corrupts every entry.
struct Table {
    fault: bool,
}

impl Table {
    fn prime(&self, a: &Poly, p: &MonicPrime, n: u64) -> FFElem {
        self.tamper(a.ctx(), symbol::residue_symbol_prime(a, p, n).expect("preconditions hold").value())
    }

    fn general(&self, a: &Poly, b: &Poly, n: u64) -> FFElem {
        self.tamper(a.ctx(), symbol::residue_symbol(a, b, n).expect("preconditions hold").value())
    }

    fn tamper(&self, f: &FieldCtx, v: FFElem) -> FFElem {
        if self.fault {
            f.add(v, FFElem::ONE)
        } else {
            v
        }
    }
}

fn gf(q: u64) -> Arc<FieldCtx> {
    FieldCtx::from_order(q).expect("valid field order")
}

fn primes_up_to(f: &Arc<FieldCtx>, d: usize) -> Vec<MonicPrime> {
    (1..=d).flat_map(|k| monic_primes(f, k).expect("within enumeration bound")).collect()
}

type Suite<'a> = (&'static str, Box<dyn Fn() -> Tally + 'a>);

pub fn run(level: Level, seed: u64, fault: Option<FaultKind>, cache: &PrimeCache) -> Vec<(SuiteResult, f64)> {
    let p = Params::new(level, seed);
    let table = Table { fault: fault == Some(FaultKind::Symbol) };
    let suites: Vec<Suite<'_>> = vec![
        ("field_axioms", Box::new(field_axioms)),
        ("prime_counts", Box::new(|| prime_counts(&p))),
        ("prime_cache", Box::new(|| prime_cache(&p, cache))),
        ("factor_round_trip", Box::new(|| factor_round_trip(&p, seed))),
        ("parser_round_trip", Box::new(|| parser_round_trip(&p, seed))),
        ("fermat_little", Box::new(|| fermat(&p, seed))),
        ("root_orbit", Box::new(|| root_orbit(&p))),
        ("monic_reciprocity", Box::new(|| monic_reciprocity(&p, &table))),
        ("general_reciprocity", Box::new(|| general_reciprocity(&p, &table, seed))),
        ("power_criterion", Box::new(|| power_criterion(&table))),
        ("resultant_equivalence", Box::new(|| resultant_equivalence(&p, &table))),
        ("symmetric_symbols", Box::new(|| symmetric_symbols(&table))),
        ("local_global", Box::new(|| local_global(&p, seed))),
        ("transfer", Box::new(|| transfer(&p, table.fault))),
    ];
    suites
        .into_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let r = f().finish(name);
            (r, start.elapsed().as_secs_f64())
        })
        .collect()
}

fn field_axioms() -> Tally {
    let mut t = Tally::default();
    for q in [2u64, 3, 4, 5, 8, 9] {
        let f = gf(q);
        for a in f.elements() {
            for b in f.elements() {
                let ok = f.add(a, b) == f.add(b, a)
                    && f.mul(a, b) == f.mul(b, a)
                    && f.sub(f.add(a, b), b) == a
                    && (b.is_zero() || f.mul(f.div(a, b).expect("nonzero"), b) == a);
                t.record(ok, || format!("q={q} a={} b={}", f.format_elem(a), f.format_elem(b)));
            }
        }
    }
    t
}

fn prime_counts(p: &Params) -> Tally {
    let mut t = Tally::default();
    for &q in p.count_qs {
        let f = gf(q);
        for n in 1..=p.count_deg {
            let listed = monic_primes(&f, n).expect("within bound").len() as u64;
            let count = u64::try_from(&count_monic_primes(&f, n)).expect("fits");
            let bound = fqrecip::polyring::satisfies_prime_lower_bound(q, n, &count_monic_primes(&f, n));
            t.record(listed == count && bound, || format!("q={q} n={n}: listed {listed}, counted {count}"));
        }
    }
    t
}

fn prime_cache(p: &Params, cache: &PrimeCache) -> Tally {
    let mut t = Tally::default();
    let mut rebuilt = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let f = gf(q);
        for d in 1..=p.cache_deg {
            match cache.load_or_build(&f, d) {
                Ok((primes, status)) => {
                    if status == CacheStatus::Rebuilt {
                        rebuilt.push(format!("q{q}_d{d}"));
                    }
                    let fresh: Vec<Poly> = monic_primes(&f, d).expect("within bound").into_iter().map(MonicPrime::into_poly).collect();
                    t.record(primes == fresh, || format!("cached primes differ for q={q} d={d}"));
                }
                Err(e) => t.record(false, || format!("cache error: {e:#}")),
            }
        }
    }
    if !rebuilt.is_empty() {
        t.note = Some(format!("rebuilt invalid entries: {}", rebuilt.join(", ")));
    }
    t
}

fn factor_round_trip(p: &Params, seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
    for q in [2u64, 3, 4, 5, 7, 9] {
        let f = gf(q);
        for _ in 0..p.fermat_pairs / 2 {
            let a = Poly::random_nonzero(&f, 10, &mut rng);
            let fac = a.factor().expect("nonzero");
            let ok = fac.expand(&f) == a && fac.factors.iter().all(|(g, _)| g.is_monic() && g.is_irreducible().unwrap_or(false));
            t.record(ok, || format!("q={q} a={a}"));
        }
    }
    t
}

fn parser_round_trip(p: &Params, seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
    for q in [3u64, 5, 7] {
        let f = gf(q);
        for _ in 0..p.parser_samples {
            let d = rng.gen_range(0..=12);
            let a = Poly::random(&f, d, &mut rng);
            let ok = Poly::parse(&f, &a.to_string()).ok() == Some(a.clone()) && Poly::parse(&f, &a.to_compact()).ok() == Some(a.clone());
            t.record(ok, || format!("q={q} {a}"));
        }
    }
    t
}

fn fermat(p: &Params, seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
    for q in [3u64, 5, 7] {
        let f = gf(q);
        let mut done = 0;
        while done < p.fermat_pairs {
            let m = Poly::random_monic(&f, rng.gen_range(1..=4), &mut rng);
            if !m.is_irreducible().expect("nonconstant") {
                continue;
            }
            let a = Poly::random_nonzero(&f, 8, &mut rng);
            if !a.is_coprime(&m).expect("nonzero") {
                continue;
            }
            done += 1;
            let e = arith::big_pow(q, m.degree().expect("nonzero") as u64) - 1u32;
            t.record(a.powmod(&e, &m).expect("nonzero").is_one(), || format!("q={q} a={a} P={m}"));
        }
    }
    t
}

fn root_orbit(p: &Params) -> Tally {
    let mut t = Tally::default();
    for q in [3u64, 4] {
        for m in primes_up_to(&gf(q), p.orbit_deg) {
            t.record(m.verify_root_orbit().unwrap_or(false), || format!("q={q} P={}", *m));
        }
    }
    t
}

fn sign(f: &FieldCtx, k: u64, a: u64, b: u64) -> FFElem {
    if k % 2 == 1 && a % 2 == 1 && b % 2 == 1 {
        f.minus_one()
    } else {
        FFElem::ONE
    }
}

fn monic_reciprocity(p: &Params, table: &Table) -> Tally {
    let mut t = Tally::default();
    for &q in p.recip_qs {
        let f = gf(q);
        let primes = primes_up_to(&f, p.recip_deg);
        for n in arith::divisors(q - 1) {
            let k = (q - 1) / n;
            for a in &primes {
                for b in primes.iter().filter(|b| *b != a) {
                    let lhs = table.prime(b, a, n);
                    let swapped = symbol::residue_symbol_prime(a, b, n).expect("preconditions hold").value();
                    let rhs = f.mul(sign(&f, k, a.deg() as u64, b.deg() as u64), swapped);
                    t.record(lhs == rhs, || format!("q={q} n={n} P={} Q={}", **a, **b));
                }
            }
        }
    }
    t
}

fn general_reciprocity(p: &Params, table: &Table, seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
    for q in [3u64, 5, 7] {
        let f = gf(q);
        let mut done = 0;
        while done < p.general_pairs {
            let a = Poly::random_nonzero(&f, 6, &mut rng);
            let b = Poly::random_nonzero(&f, 6, &mut rng);
            if !a.is_coprime(&b).expect("nonzero") {
                continue;
            }
            done += 1;
            for n in arith::divisors(q - 1) {
                let c = symbol::check_general_reciprocity(&a, &b, n).expect("preconditions hold");
                let ab = table.general(&a, &b, n);
                t.record(ab == f.mul(c.rhs, c.beta_over_alpha.value()), || format!("q={q} n={n} a={a} b={b}"));
            }
        }
    }
    t
}

fn power_criterion(table: &Table) -> Tally {
    let mut t = Tally::default();
    for q in [3u64, 5] {
        let f = gf(q);
        for n in arith::divisors(q - 1) {
            for m in primes_up_to(&f, 2) {
                let units: Vec<Poly> = Poly::all_below_degree(&f, m.deg()).filter(|a| !a.is_zero()).collect();
                let powers: HashSet<Poly> = units.iter().map(|a| a.powmod_u64(n, &m).expect("nonzero")).collect();
                for a in &units {
                    t.record(table.prime(a, &m, n).is_one() == powers.contains(a), || format!("q={q} n={n} P={} a={a}", *m));
                }
            }
        }
    }
    t
}

fn resultant_equivalence(p: &Params, table: &Table) -> Tally {
    let mut t = Tally::default();
    for &q in p.resultant_qs {
        let f = gf(q);
        let alphas: Vec<Poly> = Poly::all_below_degree(&f, p.resultant_deg + 1).filter(|a| !a.is_zero()).collect();
        for d in 0..=p.resultant_deg {
            for b in Poly::all_monic(&f, d) {
                for a in alphas.iter().filter(|a| a.is_coprime(&b).unwrap_or(false)) {
                    for n in arith::divisors(q - 1) {
                        let via = symbol::symbol_via_resultant(a, &b, n).expect("preconditions hold").value();
                        t.record(via == table.general(a, &b, n), || format!("q={q} n={n} a={a} b={b}"));
                    }
                }
            }
        }
    }
    t
}

fn symmetric_symbols(table: &Table) -> Tally {
    let mut t = Tally::default();
    let f = gf(13);
    let primes = primes_up_to(&f, 2);
    for n in [2u64, 3] {
        for a in &primes {
            for b in primes.iter().filter(|b| *b != a) {
                let direct = symbol::residue_symbol_prime(b, a, n).expect("preconditions hold");
                t.record(SymbolValue(table.prime(a, b, n)) == direct, || format!("n={n} a={} b={}", **a, **b));
            }
        }
    }
    t
}

fn local_global(p: &Params, seed: u64) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 5);
    for (q, n) in [(3u64, 2u64), (5, 2), (5, 4), (7, 3)] {
        let f = gf(q);
        for _ in 0..p.gw_samples / 10 + 1 {
            let base = Poly::random_monic(&f, rng.gen_range(1..=2), &mut rng);
            let alpha = base.pow(n);
            let beta = global_nth_power(&alpha, n).expect("nonzero");
            let report = gw_scan(&alpha, n, p.gw_bound).expect("valid input");
            let ok = beta.is_some_and(|b| b.pow(n) == alpha) && report.verdict == Verdict::GlobalPower && report.witnesses.is_empty();
            t.record(ok, || format!("forward q={q} n={n} alpha={alpha}"));
        }
    }
    let f = gf(5);
    let mut escapes = 0;
    let mut done = 0;
    while done < p.gw_samples {
        let a = Poly::random_nonzero(&f, 6, &mut rng);
        if a.is_constant() || global_nth_power(&a, 2).expect("nonzero").is_some() {
            continue;
        }
        done += 1;
        let w = find_witness_prime(&a, 2, p.gw_bound).expect("valid input");
        if w.is_none() {
            escapes += 1;
        }
        t.record(w.is_some(), || format!("no witness of degree <= {} for {a}", p.gw_bound));
    }
    t.note = Some(format!("{escapes} inconclusive at bound {}", p.gw_bound));
    t
}

fn transfer(p: &Params, fault: bool) -> Tally {
    let mut t = Tally::default();
    for preset in Preset::ALL {
        let ctx = FamilyCtx::preset(preset);
        for prop in Property::ALL {
            let fault = (fault && prop.uses_symbols()).then_some(Fault { index: 0 });
            match transfer_check(prop.name(), &ctx, &p.transfer, fault) {
                Ok(r) => {
                    for o in &r.outcomes {
                        t.record(o.holds, || format!("{} on {} at {}", prop.name(), preset.name(), o.index));
                    }
                }
                Err(e) => t.record(false, || format!("{}: {e}", prop.name())),
            }
        }
    }
    t
}
