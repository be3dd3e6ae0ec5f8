//! On-disk cache of monic prime tables, keyed by (artifact version, q, degree).

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::Context;
use fqrecip::polyring::{count_monic_primes, monic_primes};
use fqrecip::{FieldCtx, Poly};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const CACHE_DIR_ENV: &str = "FQRECIP_CACHE_DIR";

const TABLE: &str = "primes.txt";
const DIGEST: &str = "primes.sha256";

/// How a lookup was satisfied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheStatus {
    Hit,
    Built,
    Rebuilt,
}

pub struct PrimeCache {
    dir: PathBuf,
}

impl PrimeCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        PrimeCache { dir: dir.into() }
    }

    /// `$FQRECIP_CACHE_DIR`, else `$XDG_CACHE_HOME/fqrecip`, else `~/.cache/fqrecip`.
    pub fn from_env() -> Self {
        if let Some(d) = std::env::var_os(CACHE_DIR_ENV) {
            return Self::new(d);
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return Self::new(PathBuf::from(d).join("fqrecip"));
        }
        match std::env::var_os("HOME") {
            Some(h) => Self::new(PathBuf::from(h).join(".cache").join("fqrecip")),
            None => Self::new(std::env::temp_dir().join("fqrecip-cache")),
        }
    }

    /// Directory holding the table for `(version, q, deg)`.
    pub fn entry_dir(&self, q: u64, deg: usize) -> PathBuf {
        self.dir.join(format!("v{}", fqrecip::VERSION)).join(format!("q{q}_d{deg}"))
    }

    /// The table file itself, one polynomial per line.
    pub fn path(&self, q: u64, deg: usize) -> PathBuf {
        self.entry_dir(q, deg).join(TABLE)
    }

    /// Monic primes of degree `deg`, from disk if a valid entry exists; a missing or
    /// invalid entry is regenerated and written back.
    pub fn load_or_build(&self, ctx: &Arc<FieldCtx>, deg: usize) -> anyhow::Result<(Vec<Poly>, CacheStatus)> {
        let dir = self.entry_dir(ctx.order(), deg);
        let status = if dir.exists() {
            if let Some(primes) = read_valid(&dir, ctx, deg) {
                return Ok((primes, CacheStatus::Hit));
            }
            CacheStatus::Rebuilt
        } else {
            CacheStatus::Built
        };
        let primes: Vec<Poly> = monic_primes(ctx, deg)?.into_iter().map(|p| p.into_poly()).collect();
        let mut text = String::new();
        for p in &primes {
            text.push_str(&p.to_compact());
            text.push('\n');
        }
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        let table = self.path(ctx.order(), deg);
        fs::write(&table, &text).with_context(|| format!("writing {}", table.display()))?;
        let sidecar = dir.join(DIGEST);
        fs::write(&sidecar, digest(text.as_bytes())).with_context(|| format!("writing {}", sidecar.display()))?;
        Ok((primes, status))
    }
}

fn digest(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn read_valid(dir: &Path, ctx: &Arc<FieldCtx>, deg: usize) -> Option<Vec<Poly>> {
    let text = fs::read_to_string(dir.join(TABLE)).ok()?;
    let recorded = fs::read_to_string(dir.join(DIGEST)).ok()?;
    if recorded.trim() != digest(text.as_bytes()) {
        return None;
    }
    let primes = text.lines().map(|s| Poly::parse(ctx, s).ok()).collect::<Option<Vec<Poly>>>()?;
    if u64::try_from(&count_monic_primes(ctx, deg)).ok()? != primes.len() as u64 {
        return None;
    }
    let well_formed = primes.iter().all(|p| p.is_monic() && p.degree() == Some(deg))
        && primes.windows(2).all(|w| w[0] < w[1]);
    well_formed.then_some(primes)
}
