//! Componentwise arithmetic over finite indexed families.
//!
//! A family `(x_s)` stands in for the limit object built from its components.
//! Every operation acts index by index, and every predicate reports a truth value
//! per index together with an `all` summary.

mod transfer;

use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::ff::{FFElem, FieldCtx};
use crate::polyring::{MonicPrime, Poly};
use crate::symbol::{self, SymbolValue};

pub use transfer::{transfer_check, Fault, IndexOutcome, Property, TransferInputs, TransferReport};

/// Largest index set a [`FamilyCtx`] accepts.
pub const MAX_INDICES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexFamily<T> {
    indices: Vec<String>,
    values: Vec<T>,
}

impl<T> IndexFamily<T> {
    pub fn new(indices: Vec<String>, values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config("a family needs at least one index".into()));
        }
        if indices.len() != values.len() {
            return Err(Error::IndexMismatch);
        }
        Ok(IndexFamily { indices, values })
    }

    /// Labels the values `s1, s2, ...`.
    pub fn from_values(values: Vec<T>) -> Result<Self> {
        let indices = (1..=values.len()).map(|i| format!("s{i}")).collect();
        Self::new(indices, values)
    }

    pub fn indices(&self) -> &[String] {
        &self.indices
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> &T {
        &self.values[i]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> IndexFamily<U> {
        IndexFamily { indices: self.indices.clone(), values: self.values.iter().map(f).collect() }
    }

    /// Like [`Self::map`], naming the failing index in the error.
    pub fn try_map<U>(&self, f: impl Fn(usize, &T) -> Result<U>) -> Result<IndexFamily<U>> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| f(i, v).map_err(|e| Error::at_index(i, e)))
            .collect::<Result<Vec<U>>>()?;
        Ok(IndexFamily { indices: self.indices.clone(), values })
    }

    pub fn zip_with<U, V>(&self, other: &IndexFamily<U>, f: impl Fn(usize, &T, &U) -> Result<V>) -> Result<IndexFamily<V>> {
        if self.indices != other.indices {
            return Err(Error::IndexMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| f(i, a, b))
            .collect::<Result<Vec<V>>>()?;
        Ok(IndexFamily { indices: self.indices.clone(), values })
    }
}

/// A family of integers.
pub type HyperInt = IndexFamily<BigInt>;

impl HyperInt {
    pub fn from_i64s(values: &[i64]) -> Result<Self> {
        Self::from_values(values.iter().map(|&v| BigInt::from(v)).collect())
    }
}

pub fn hyper_add(a: &HyperInt, b: &HyperInt) -> Result<HyperInt> {
    a.zip_with(b, |_, x, y| Ok(x + y))
}

pub fn hyper_mul(a: &HyperInt, b: &HyperInt) -> Result<HyperInt> {
    a.zip_with(b, |_, x, y| Ok(x * y))
}

/// `a_s^{b_s}`; exponents must be nonnegative and fit in 32 bits.
pub fn hyper_pow(a: &HyperInt, b: &HyperInt) -> Result<HyperInt> {
    a.zip_with(b, |i, x, y| {
        if y.sign() == Sign::Minus {
            return Err(Error::NegativeExponent(i));
        }
        let e = y
            .to_u32()
            .ok_or_else(|| Error::at_index(i, Error::SizeExceeded { what: format!("exponent {y}"), limit: u32::MAX as u64 }))?;
        Ok(num_traits::pow(x.clone(), e as usize))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cmp {
    Lt,
    Eq,
    Gt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CmpSummary {
    Uniform(Cmp),
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperCmp {
    pub per_index: Vec<Cmp>,
    pub summary: CmpSummary,
}

pub fn hyper_cmp(a: &HyperInt, b: &HyperInt) -> Result<HyperCmp> {
    let c = a.zip_with(b, |_, x, y| {
        Ok(match x.cmp(y) {
            std::cmp::Ordering::Less => Cmp::Lt,
            std::cmp::Ordering::Equal => Cmp::Eq,
            std::cmp::Ordering::Greater => Cmp::Gt,
        })
    })?;
    let per_index = c.values;
    let summary = if per_index.iter().all(|&x| x == per_index[0]) {
        CmpSummary::Uniform(per_index[0])
    } else {
        CmpSummary::Mixed
    };
    Ok(HyperCmp { per_index, summary })
}

pub fn hyper_gcd(a: &HyperInt, b: &HyperInt) -> Result<HyperInt> {
    a.zip_with(b, |i, x, y| {
        if x.is_zero() && y.is_zero() {
            return Err(Error::BothZeroAtIndex(i));
        }
        Ok(x.gcd(y))
    })
}

/// `(d, e, f)` with `a e + b f = d = gcd(a, b)` at every index.
pub fn hyper_bezout(a: &HyperInt, b: &HyperInt) -> Result<(HyperInt, HyperInt, HyperInt)> {
    let triples = a.zip_with(b, |i, x, y| {
        if x.is_zero() && y.is_zero() {
            return Err(Error::BothZeroAtIndex(i));
        }
        let eg = x.extended_gcd(y);
        Ok(if eg.gcd.sign() == Sign::Minus { (-eg.gcd, -eg.x, -eg.y) } else { (eg.gcd, eg.x, eg.y) })
    })?;
    Ok((triples.map(|t| t.0.clone()), triples.map(|t| t.1.clone()), triples.map(|t| t.2.clone())))
}

/// Componentwise least element.
pub fn hyper_min(sets: &IndexFamily<Vec<BigInt>>) -> Result<HyperInt> {
    let values = sets
        .values
        .iter()
        .enumerate()
        .map(|(i, s)| s.iter().min().cloned().ok_or(Error::EmptyAtIndex(i)))
        .collect::<Result<Vec<_>>>()?;
    IndexFamily::new(sets.indices.clone(), values)
}

/// Shipped families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// `q = 7` at four indices, `n = 3`.
    ConstantQ,
    /// `q = 3, 9, 27` with `n = 2, 4, 13`.
    GrowingPowers,
    /// `q = 3, 5, 7, 11, 13`; no characteristic is shared by all indices.
    DistinctPrimes,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::ConstantQ, Preset::GrowingPowers, Preset::DistinctPrimes];

    pub fn name(self) -> &'static str {
        match self {
            Preset::ConstantQ => "constant-q",
            Preset::GrowingPowers => "growing-powers",
            Preset::DistinctPrimes => "distinct-primes",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown preset `{s}`")))
    }

    fn data(self) -> (Vec<u64>, Vec<u64>) {
        match self {
            Preset::ConstantQ => (vec![7; 4], vec![3; 4]),
            Preset::GrowingPowers => (vec![3, 9, 27], vec![2, 4, 13]),
            Preset::DistinctPrimes => (vec![3, 5, 7, 11, 13], vec![2, 4, 3, 5, 6]),
        }
    }
}

/// Config document `{"indices": [...], "q": [...], "n": [...], "preset": "..."}`.
/// A preset supplies defaults; explicit `q`/`n`/`indices` override it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    #[serde(default)]
    pub indices: Option<Vec<String>>,
    #[serde(default)]
    pub q: Option<Vec<u64>>,
    #[serde(default)]
    pub n: Option<Vec<u64>>,
    #[serde(default)]
    pub preset: Option<String>,
}

/// The fields `GF(q_s)` of a family together with exponents `n_s | q_s - 1`.
#[derive(Clone, Debug)]
pub struct FamilyCtx {
    qs: IndexFamily<u64>,
    fields: IndexFamily<Arc<FieldCtx>>,
    ns: HyperInt,
}

impl FamilyCtx {
    pub fn new(indices: Vec<String>, qs: &[u64], ns: &[u64]) -> Result<Self> {
        if qs.len() > MAX_INDICES {
            return Err(Error::Config(format!("{} indices exceed the limit {MAX_INDICES}", qs.len())));
        }
        if ns.len() != qs.len() {
            return Err(Error::IndexMismatch);
        }
        let qs = IndexFamily::new(indices, qs.to_vec())?;
        let fields = qs.try_map(|_, &q| FieldCtx::from_order(q))?;
        for (i, (&q, &n)) in qs.values().iter().zip(ns).enumerate() {
            if n == 0 || (q - 1) % n != 0 {
                return Err(Error::at_index(i, Error::does_not_divide(n, q - 1)));
            }
        }
        let ns = IndexFamily::new(qs.indices.clone(), ns.iter().map(|&n| BigInt::from(n)).collect())?;
        Ok(FamilyCtx { qs, fields, ns })
    }

    pub fn preset(p: Preset) -> Self {
        let (qs, ns) = p.data();
        let indices = (1..=qs.len()).map(|i| format!("s{i}")).collect();
        FamilyCtx::new(indices, &qs, &ns).expect("presets are valid")
    }

    pub fn from_config(cfg: &FamilyConfig) -> Result<Self> {
        let (mut qs, mut ns) = match &cfg.preset {
            Some(name) => {
                let (q, n) = Preset::parse(name)?.data();
                (Some(q), Some(n))
            }
            None => (None, None),
        };
        if let Some(q) = &cfg.q {
            qs = Some(q.clone());
        }
        if let Some(n) = &cfg.n {
            ns = Some(n.clone());
        }
        let qs = qs.ok_or_else(|| Error::Config("either `q` or `preset` is required".into()))?;
        let ns = ns.unwrap_or_else(|| vec![1; qs.len()]);
        let indices = match &cfg.indices {
            Some(ix) => ix.clone(),
            None => (1..=qs.len()).map(|i| format!("s{i}")).collect(),
        };
        if indices.len() != qs.len() {
            return Err(Error::Config(format!("{} indices for {} field orders", indices.len(), qs.len())));
        }
        FamilyCtx::new(indices, &qs, &ns)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: FamilyConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_config(&cfg)
    }

    pub fn indices(&self) -> &[String] {
        self.qs.indices()
    }

    pub fn len(&self) -> usize {
        self.qs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qs.is_empty()
    }

    pub fn qs(&self) -> &IndexFamily<u64> {
        &self.qs
    }

    pub fn fields(&self) -> &IndexFamily<Arc<FieldCtx>> {
        &self.fields
    }

    pub fn field(&self, i: usize) -> &Arc<FieldCtx> {
        self.fields.get(i)
    }

    pub fn ns(&self) -> &HyperInt {
        &self.ns
    }

    pub fn n(&self, i: usize) -> u64 {
        self.ns.get(i).to_u64().expect("validated at construction")
    }

    /// The family `q_s - 1`.
    pub fn unit_orders(&self) -> HyperInt {
        self.qs.map(|&q| BigInt::from(q - 1))
    }

    /// The family of least primitive roots.
    pub fn generators(&self) -> IndexFamily<FFElem> {
        self.fields.map(|f| f.primitive_root())
    }

    pub fn with_ns(&self, ns: &[u64]) -> Result<Self> {
        FamilyCtx::new(self.indices().to_vec(), self.qs.values(), ns)
    }

    /// The characteristic shared by every index, if there is one.
    pub fn common_characteristic(&self) -> Option<u64> {
        let p = self.fields.get(0).characteristic();
        self.fields.values().iter().all(|f| f.characteristic() == p).then_some(p)
    }
}

/// Componentwise multiplicative order.
pub fn ultra_order(a: &IndexFamily<FFElem>, ctx: &FamilyCtx) -> Result<HyperInt> {
    if a.indices() != ctx.indices() {
        return Err(Error::IndexMismatch);
    }
    let values = a
        .values()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if x.is_zero() {
                return Err(Error::ZeroAtIndex(i));
            }
            ctx.field(i).mult_order(x).map(BigInt::from).map_err(|e| Error::at_index(i, e))
        })
        .collect::<Result<Vec<_>>>()?;
    IndexFamily::new(a.indices().to_vec(), values)
}

/// `g_s^{a_s}` for a family of base elements and nonnegative exponents.
pub fn ultra_pow(g: &IndexFamily<FFElem>, a: &HyperInt, ctx: &FamilyCtx) -> Result<IndexFamily<FFElem>> {
    g.zip_with(a, |i, &x, k| {
        let k = k.to_biguint().ok_or(Error::NegativeExponent(i))?;
        Ok(ctx.field(i).pow(x, &k))
    })
}

/// Componentwise `(α_s/P_s)_{n_s}`.
pub fn ultra_symbol(
    alpha: &IndexFamily<Poly>,
    p: &IndexFamily<MonicPrime>,
    n: &HyperInt,
) -> Result<IndexFamily<SymbolValue>> {
    if alpha.indices() != p.indices() || alpha.indices() != n.indices() {
        return Err(Error::IndexMismatch);
    }
    let values = (0..alpha.len())
        .map(|i| {
            let (a, p) = (alpha.get(i), p.get(i));
            let n = n.get(i).to_u64().ok_or_else(|| Error::does_not_divide(n.get(i), p.ctx().order() - 1));
            n.and_then(|n| symbol::residue_symbol_prime(a, p, n)).map_err(|e| Error::at_index(i, e))
        })
        .collect::<Result<Vec<_>>>()?;
    IndexFamily::new(alpha.indices().to_vec(), values)
}

/// `q_s - 1` has exactly one subgroup of each order `d | q_s - 1`, namely `{x : x^d = 1}`.
pub(crate) fn subgroup_unique(f: &FieldCtx) -> bool {
    let m = f.order() - 1;
    arith::divisors(m).into_iter().all(|d| {
        let roots: Vec<FFElem> = f.nonzero_elements().filter(|&x| f.pow_u64(x, d).is_one()).collect();
        let generated = f.nth_roots_of_unity(d).expect("d | q - 1");
        let mut sorted = roots.clone();
        sorted.sort_unstable();
        sorted.len() as u64 == d
            && sorted == generated
            && f.nonzero_elements()
                .filter(|&x| f.mult_order(x).expect("nonzero") == d)
                .all(|x| roots.contains(&x))
    })
}
