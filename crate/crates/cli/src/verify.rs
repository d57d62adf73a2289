use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use kempe_core::exactfield::FieldSpec;

use crate::cache::Cache;
use crate::checks::{registry, Claim, Context, FieldPolicy, Outcome};
use crate::config::RunConfig;
use crate::report::{CheckRecord, Verdict, VerificationReport};

/// What to do with one claim under a given configuration.
enum Plan {
    Run(FieldSpec, String),
    Skip(String, String),
}

fn plan(claim: &Claim, config: &RunConfig) -> Plan {
    let label = match claim.field {
        FieldPolicy::Any => config.field.to_string(),
        FieldPolicy::Fixed(f) | FieldPolicy::Mixed(f) => f.to_string(),
    };
    let selected = config.claims.iter().any(|c| c == claim.id);
    if !config.claims.is_empty() && !selected {
        return Plan::Skip(label, "not selected".into());
    }
    if claim.stretch && !config.stretch {
        return Plan::Skip(label, "stretch check; enable with --stretch".into());
    }
    if !selected && claim.suite > config.suite {
        return Plan::Skip(label, format!("not in the {:?} suite", config.suite).to_lowercase());
    }
    match claim.field {
        FieldPolicy::Any => Plan::Run(config.field, label),
        FieldPolicy::Fixed(f) => {
            let fixed: FieldSpec = f.parse().expect("registry field parses");
            if config.field_override && config.field != fixed {
                Plan::Skip(label, format!("stated over {f}, run requested {}", config.field))
            } else {
                Plan::Run(fixed, label)
            }
        }
        FieldPolicy::Mixed(_) => {
            if config.field_override {
                Plan::Skip(label, format!("uses several fields, run requested {}", config.field))
            } else {
                Plan::Run(FieldSpec::Rationals, label)
            }
        }
    }
}

fn cache_key(claim: &Claim, ctx: &Context) -> String {
    Cache::key(
        "cli",
        claim.id,
        &[
            ("field", ctx.field.to_string()),
            ("seed", ctx.seed.to_string()),
            ("mode", format!("{:?}", ctx.mode)),
            ("cell_cap", ctx.caps.cell_cap.to_string()),
            ("version", env!("CARGO_PKG_VERSION").to_string()),
        ],
    )
}

/// Runs one claim on its own thread so the time cap can be enforced.
fn execute(claim: &Claim, ctx: Context, cache: &Cache, budget: Duration) -> (Verdict, Option<Outcome>) {
    let key = cache_key(claim, &ctx);
    if let Some(hit) = cache.get::<Outcome>(&key) {
        return (Verdict::from_bool(hit.pass), Some(hit));
    }
    let (tx, rx) = mpsc::channel();
    let run = claim.run;
    std::thread::spawn(move || {
        let _ = tx.send(run(&ctx).map_err(|e| format!("{e:#}")));
    });
    match rx.recv_timeout(budget) {
        Ok(Ok(outcome)) => {
            cache.put(&key, &outcome);
            (Verdict::from_bool(outcome.pass), Some(outcome))
        }
        Ok(Err(msg)) if msg.contains("cap exceeded") || msg.contains("truncated") => (Verdict::Skipped(msg), None),
        Ok(Err(msg)) => (Verdict::Fail, Some(Outcome::exact(serde_json::json!({ "error": msg }), serde_json::Value::Null))),
        Err(mpsc::RecvTimeoutError::Timeout) => (
            Verdict::Skipped(format!("time cap of {} s exceeded", budget.as_secs())),
            None,
        ),
        Err(mpsc::RecvTimeoutError::Disconnected) => (
            Verdict::Fail,
            Some(Outcome::exact(serde_json::json!({ "error": "check panicked" }), serde_json::Value::Null)),
        ),
    }
}

fn record(claim: &Claim, config: &RunConfig, cache: &Cache) -> CheckRecord {
    let start = Instant::now();
    let (verdict, outcome, field) = match plan(claim, config) {
        Plan::Skip(field, reason) => (Verdict::Skipped(reason), None, field),
        Plan::Run(f, field) => {
            let ctx = Context {
                field: f,
                seed: config.seed,
                mode: config.mode,
                caps: config.caps.clone(),
            };
            let budget = Duration::from_secs(config.caps.seconds_per_check);
            let (v, o) = execute(claim, ctx, cache, budget);
            (v, o, field)
        }
    };
    let (computed, expected) = outcome
        .map(|o| (o.computed, o.expected))
        .unwrap_or((serde_json::Value::Null, serde_json::Value::Null));
    CheckRecord {
        claim_id: claim.id.to_string(),
        anchor: claim.anchor.to_string(),
        computed,
        expected,
        verdict,
        field,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs every registered claim (skipping those outside the configuration) on
/// `config.jobs` worker threads; the report is ordered by claim id.
pub fn run_verification(config: &RunConfig) -> Result<VerificationReport> {
    let claims = registry();
    for id in &config.claims {
        if !claims.iter().any(|c| c.id == id) {
            bail!("unknown claim id `{id}`");
        }
    }
    let cache = Cache::new(config.cache_dir.clone());
    let next = AtomicUsize::new(0);
    let records = Mutex::new(Vec::with_capacity(claims.len()));
    std::thread::scope(|s| {
        for _ in 0..config.jobs.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(claim) = claims.get(i) else { break };
                let r = record(claim, config, &cache);
                records.lock().expect("worker panicked").push(r);
            });
        }
    });
    Ok(VerificationReport::new(
        config.clone(),
        records.into_inner().expect("worker panicked"),
    ))
}

/// Claim ids grouped by acceptance criterion.
pub fn criteria() -> Vec<(u8, Vec<&'static str>)> {
    let mut out: Vec<(u8, Vec<&'static str>)> = Vec::new();
    for c in registry() {
        if c.criterion == 0 {
            continue;
        }
        match out.iter_mut().find(|(k, _)| *k == c.criterion) {
            Some((_, ids)) => ids.push(c.id),
            None => out.push((c.criterion, vec![c.id])),
        }
    }
    out.sort_by_key(|(k, _)| *k);
    out
}
