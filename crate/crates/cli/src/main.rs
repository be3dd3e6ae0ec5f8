//! `fqrecip` command-line driver. Every command prints one JSON run report on stdout.

mod cache;
mod report;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fqrecip::polyring::{count_monic_primes, monic_primes};
use fqrecip::symbol::{self, Method, SymbolRecord};
use fqrecip::ultra::{transfer_check, Fault, FamilyCtx, Preset, Property, TransferInputs};
use fqrecip::{arith, localglobal, FieldCtx, MonicPrime, Poly};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cache::PrimeCache;
use report::{CliError, Exit, Output, RunReport};

#[derive(Parser, Debug)]
#[command(name = "fqrecip", version, about = "Power residue symbols and reciprocity over GF(q)[t]")]
struct Cli {
    /// Seed for every randomized choice (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value_t = fqrecip::DEFAULT_SEED, value_parser = parse_seed)]
    seed: u64,
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameters of GF(q).
    FieldInfo {
        #[arg(long)]
        q: u64,
    },
    /// Monic irreducible polynomials of a given degree.
    Primes {
        #[command(subcommand)]
        action: PrimesAction,
    },
    /// Factor a polynomial into monic irreducibles.
    Factor {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        poly: String,
    },
    /// Evaluate the n-th power residue symbol (alpha / modulus).
    Symbol {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        modulus: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Exp)]
        method: MethodArg,
    },
    /// Check the reciprocity law on pairs of distinct monic primes.
    Reciprocity {
        #[command(flatten)]
        base: RangeArgs,
        #[arg(long)]
        n: u64,
        /// Every ordered pair of distinct primes.
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Number of random ordered pairs.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Compare the factorization and resultant routes to the symbol.
    ResultantCheck {
        #[command(flatten)]
        base: RangeArgs,
        /// Restrict to one n; all divisors of q-1 otherwise.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Local-global scan for n-th powers.
    GwScan {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: String,
        /// Largest prime degree scanned.
        #[arg(long, default_value_t = 4)]
        bound: usize,
        /// Directory for the persisted report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transfer checks over an indexed family of fields.
    FamilyRun {
        /// JSON family configuration.
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        config: Option<PathBuf>,
        /// Built-in family instead of a config file.
        #[arg(long)]
        preset: Option<String>,
        /// Catalog property; repeatable. All properties when omitted.
        #[arg(long)]
        property: Vec<String>,
        #[arg(long, default_value_t = TransferInputs::default().samples)]
        samples: usize,
        #[arg(long, default_value_t = TransferInputs::default().max_deg)]
        max_deg: usize,
        /// Corrupt symbol evaluations at this index.
        #[arg(long)]
        inject_fault_index: Option<usize>,
    },
    /// Run the self-test suites.
    Selftest {
        #[arg(long, value_enum, default_value_t = selftest::Level::Quick)]
        level: selftest::Level,
        #[arg(long, value_enum)]
        inject_fault: Option<selftest::FaultKind>,
    },
}

#[derive(Subcommand, Debug)]
enum PrimesAction {
    List {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        deg: usize,
    },
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        deg: usize,
    },
}

#[derive(Args, Debug)]
struct RangeArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 2)]
    max_deg: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Exp,
    Resultant,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(&h.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    r.map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let err = CliError::Usage(e.render().to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(Exit::Usage as u8);
        }
    };
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(out) => {
            for line in &out.lines {
                println!("{line}");
            }
            let report = RunReport {
                command: argv[1..].to_vec(),
                version: fqrecip::VERSION,
                seed: cli.seed,
                wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
                passed: out.counts.map(|c| c.0),
                failed: out.counts.map(|c| c.1),
                payload: out.payload.clone(),
            };
            let text = if cli.pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) };
            println!("{}", text.expect("serializable"));
            let code = if out.failed() { Exit::CheckFailed } else { Exit::Ok };
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit() as u8)
        }
    }
}

fn gf(q: u64) -> Result<Arc<FieldCtx>, CliError> {
    Ok(FieldCtx::from_order(q)?)
}

fn poly(ctx: &Arc<FieldCtx>, s: &str) -> Result<Poly, CliError> {
    Ok(Poly::parse(ctx, s)?)
}

fn count_value(ctx: &FieldCtx, deg: usize) -> Value {
    let c = count_monic_primes(ctx, deg);
    match u64::try_from(&c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let seed = cli.seed;
    match &cli.command {
        Command::FieldInfo { q } => Ok(Output::plain(gf(*q)?.info())),
        Command::Primes { action: PrimesAction::Count { q, deg } } => {
            let f = gf(*q)?;
            Ok(Output::plain(json!({"q": q, "deg": deg, "count": count_value(&f, *deg)})))
        }
        Command::Primes { action: PrimesAction::List { q, deg } } => {
            let f = gf(*q)?;
            let (primes, status) = PrimeCache::from_env().load_or_build(&f, *deg)?;
            Ok(Output::plain(json!({
                "q": q,
                "deg": deg,
                "count": primes.len(),
                "cache": status,
                "primes": primes.iter().map(Poly::to_string).collect::<Vec<_>>(),
            })))
        }
        Command::Factor { q, poly: text } => {
            let f = gf(*q)?;
            let a = poly(&f, text)?;
            let fac = a.factor()?;
            Ok(Output::plain(json!({"q": q, "poly": a.to_string(), "factorization": fac.to_json(&f)})))
        }
        Command::Symbol { q, n, alpha, modulus, method } => {
            let f = gf(*q)?;
            let a = poly(&f, alpha)?;
            let m = poly(&f, modulus)?;
            let (value, method) = match method {
                MethodArg::Exp => (symbol::residue_symbol(&a, &m, *n)?, Method::Exp),
                MethodArg::Resultant => (symbol::symbol_via_resultant(&a, &m, *n)?, Method::Resultant),
            };
            Ok(Output::plain(SymbolRecord::new(&a, &m, *n, value, method)))
        }
        Command::Reciprocity { base, n, exhaustive, samples } => reciprocity(base, *n, *exhaustive, *samples, seed),
        Command::ResultantCheck { base, n } => resultant_check(base, *n),
        Command::GwScan { q, n, alpha, bound, out } => gw_scan(*q, *n, alpha, *bound, out.as_ref()),
        Command::FamilyRun { config, preset, property, samples, max_deg, inject_fault_index } => {
            let ctx = match (config, preset) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Precondition("io".into(), format!("reading {}: {e}", path.display())))?;
                    FamilyCtx::from_json(&text)?
                }
                (None, Some(name)) => FamilyCtx::preset(Preset::parse(name)?),
                (None, None) => return Err(CliError::Usage("one of --config or --preset is required".into())),
            };
            let inputs = TransferInputs { seed, samples: *samples, max_deg: *max_deg };
            family_run(&ctx, property, &inputs, *inject_fault_index)
        }
        Command::Selftest { level, inject_fault } => {
            let results = selftest::run(*level, seed, *inject_fault, &PrimeCache::from_env());
            let (mut passed, mut failed) = (0, 0);
            for (r, secs) in &results {
                passed += r.passed;
                failed += r.failed;
                eprintln!("{:<24} {:>9} passed {:>5} failed  {:>7.2}s", r.name, r.passed, r.failed, secs);
            }
            let suites: Vec<&selftest::SuiteResult> = results.iter().map(|(r, _)| r).collect();
            Ok(Output::checked(json!({"level": level, "fault": inject_fault, "suites": suites}), passed, failed))
        }
    }
}

fn primes_up_to(f: &Arc<FieldCtx>, d: usize) -> Result<Vec<MonicPrime>, CliError> {
    let mut out = Vec::new();
    for k in 1..=d {
        out.extend(monic_primes(f, k)?);
    }
    Ok(out)
}

fn reciprocity(base: &RangeArgs, n: u64, exhaustive: bool, samples: usize, seed: u64) -> Result<Output, CliError> {
    let f = gf(base.q)?;
    symbol::cofactor(&f, n)?;
    let primes = primes_up_to(&f, base.max_deg)?;
    let pairs: Vec<(&MonicPrime, &MonicPrime)> = if exhaustive {
        primes.iter().flat_map(|a| primes.iter().filter(move |b| *b != a).map(move |b| (a, b))).collect()
    } else if primes.len() < 2 {
        Vec::new()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                let two: Vec<&MonicPrime> = primes.choose_multiple(&mut rng, 2).collect();
                (two[0], two[1])
            })
            .collect()
    };
    let (mut passed, mut failed) = (0u64, 0u64);
    let mut first_failure = Value::Null;
    for (a, b) in &pairs {
        let c = symbol::check_reciprocity_monic(a, b, n)?;
        if c.holds {
            passed += 1;
        } else {
            failed += 1;
            if first_failure.is_null() {
                first_failure = json!({"P": a.to_string(), "Q": b.to_string(), "check": c});
            }
        }
    }
    let payload = json!({
        "q": base.q,
        "n": n,
        "max_deg": base.max_deg,
        "mode": if exhaustive { "exhaustive" } else { "sampled" },
        "primes": primes.len(),
        "pairs": pairs.len(),
        "first_failure": first_failure,
    });
    Ok(Output::checked(payload, passed, failed))
}

fn resultant_check(base: &RangeArgs, n: Option<u64>) -> Result<Output, CliError> {
    let f = gf(base.q)?;
    let ns = match n {
        Some(n) => {
            symbol::cofactor(&f, n)?;
            vec![n]
        }
        None => arith::divisors(base.q - 1),
    };
    let alphas: Vec<Poly> = Poly::all_below_degree(&f, base.max_deg + 1).filter(|a| !a.is_zero()).collect();
    let (mut passed, mut failed) = (0u64, 0u64);
    let mut first_failure = Value::Null;
    for d in 0..=base.max_deg {
        for b in Poly::all_monic(&f, d) {
            for a in &alphas {
                if !a.is_coprime(&b)? {
                    continue;
                }
                for &n in &ns {
                    let direct = symbol::residue_symbol(a, &b, n)?;
                    let via = symbol::symbol_via_resultant(a, &b, n)?;
                    if direct == via {
                        passed += 1;
                    } else {
                        failed += 1;
                        if first_failure.is_null() {
                            first_failure = json!({"alpha": a.to_string(), "beta": b.to_string(), "n": n});
                        }
                    }
                }
            }
        }
    }
    let payload = json!({"q": base.q, "max_deg": base.max_deg, "ns": ns, "first_failure": first_failure});
    Ok(Output::checked(payload, passed, failed))
}

fn gw_scan(q: u64, n: u64, alpha: &str, bound: usize, out: Option<&PathBuf>) -> Result<Output, CliError> {
    let f = gf(q)?;
    let a = poly(&f, alpha)?;
    let report = localglobal::gw_scan(&a, n, bound)?;
    let consistent = report.verdict != localglobal::Verdict::GlobalPower || report.witnesses.is_empty();
    let mut payload = report::to_value(&report);
    if let Some(dir) = out {
        let tag = cache::hex(&Sha256::digest(a.to_string().as_bytes()));
        let path = dir.join(format!("gw_q{q}_n{n}_{}.json", &tag[..16]));
        std::fs::create_dir_all(dir)
            .and_then(|_| std::fs::write(&path, report.to_json()))
            .map_err(|e| CliError::Precondition("io".into(), format!("writing {}: {e}", path.display())))?;
        payload["output_file"] = json!(path.display().to_string());
    }
    Ok(Output::checked(payload, consistent as u64, !consistent as u64))
}

fn family_run(ctx: &FamilyCtx, properties: &[String], inputs: &TransferInputs, fault_index: Option<usize>) -> Result<Output, CliError> {
    let names: Vec<String> =
        if properties.is_empty() { Property::ALL.iter().map(|p| p.name().to_string()).collect() } else { properties.to_vec() };
    let fault = match fault_index {
        Some(i) if i >= ctx.len() => {
            return Err(CliError::Precondition("index_out_of_range".into(), format!("fault index {i} out of range 0..{}", ctx.len())))
        }
        other => other.map(|index| Fault { index }),
    };
    let (mut passed, mut failed) = (0u64, 0u64);
    let mut lines = Vec::new();
    let mut summary = Vec::new();
    for name in &names {
        let r = transfer_check(name, ctx, inputs, fault)?;
        for o in &r.outcomes {
            if o.holds {
                passed += 1;
            } else {
                failed += 1;
            }
        }
        lines.extend(r.json_lines());
        summary.push(json!({"property": r.property, "all": r.all, "fails_at": r.fails_at}));
    }
    let payload = json!({
        "indices": ctx.indices(),
        "q": ctx.qs().values(),
        "n": ctx.ns().values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "samples": inputs.samples,
        "max_deg": inputs.max_deg,
        "fault_index": fault_index,
        "properties": summary,
    });
    let mut out = Output::checked(payload, passed, failed);
    out.lines = lines;
    Ok(out)
}
