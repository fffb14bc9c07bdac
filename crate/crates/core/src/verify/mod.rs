//! Registry of checkable claims and the verification report.
//!
//! Each claim runs with its own RNG seeded from the run seed and the claim
//! id, so results do not depend on scheduling or on which claims are
//! selected. Claims run in parallel; the report is ordered by claim id.

mod claims;

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::random::{seeded, Rng};
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_PRIMES: [u64; 2] = [101, 10007];
pub const DEFAULT_TRIALS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    OutOfScope,
    DiscrepancyNoted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::OutOfScope => "out-of-scope",
            Status::DiscrepancyNoted => "discrepancy-noted",
        }
    }
}

/// Result of one check, before timing.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub witness: String,
}

impl Outcome {
    pub fn pass(witness: impl Into<String>) -> Self {
        Outcome { status: Status::Pass, witness: witness.into() }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Outcome { status: Status::Fail, witness: witness.into() }
    }

    pub fn noted(witness: impl Into<String>) -> Self {
        Outcome { status: Status::DiscrepancyNoted, witness: witness.into() }
    }

    pub fn out_of_scope(witness: impl Into<String>) -> Self {
        Outcome { status: Status::OutOfScope, witness: witness.into() }
    }

    /// `pass` if `ok`, else `fail`, with the same witness.
    pub fn check(ok: bool, witness: impl Into<String>) -> Self {
        if ok {
            Outcome::pass(witness)
        } else {
            Outcome::fail(witness)
        }
    }
}

/// Inputs shared by every claim.
pub struct Context {
    pub rng: Rng,
    pub trials: usize,
    pub primes: Vec<u64>,
}

pub type ClaimFn = fn(&mut Context) -> Result<Outcome>;

#[derive(Clone, Copy)]
pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    pub run: ClaimFn,
}

/// Every registered claim, sorted by id.
pub fn registry() -> Vec<Claim> {
    let mut all = claims::all();
    all.sort_by_key(|c| c.id);
    all
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub only: Option<Vec<String>>,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { only: None, seed: DEFAULT_SEED, primes: DEFAULT_PRIMES.to_vec(), trials: DEFAULT_TRIALS }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimRecord {
    pub claim_id: String,
    pub description: String,
    pub status: Status,
    pub witness: String,
    pub millis: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub primes: Vec<u64>,
    pub trials: usize,
    pub claims: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn has_failures(&self) -> bool {
        self.claims.iter().any(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn get(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.claim_id == id)
    }

    /// Zeroes every `millis` field so reports from equal inputs are byte-identical.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.claims {
            c.millis = 0;
        }
        self
    }

    pub fn render_text(&self, timings: bool) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let _ = write!(out, "[{}] {}", c.status.as_str(), c.claim_id);
            if timings {
                let _ = write!(out, " ({} ms)", c.millis);
            }
            let _ = writeln!(out, "\n    {}", c.description);
            for line in c.witness.lines() {
                let _ = writeln!(out, "    | {line}");
            }
        }
        let _ = writeln!(
            out,
            "summary: {} claims, {} pass, {} fail, {} out-of-scope, {} discrepancy-noted (seed {}, primes {:?}, trials {})",
            self.claims.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::OutOfScope),
            self.count(Status::DiscrepancyNoted),
            self.seed,
            self.primes,
            self.trials,
        );
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// FNV-1a, for a seed that depends only on the claim id.
fn id_hash(id: &str) -> u64 {
    id.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

pub fn claim_seed(seed: u64, id: &str) -> u64 {
    seed ^ id_hash(id)
}

/// Runs the selected claims. Unknown ids in the filter are an error; claim
/// failures are report entries.
pub fn run_verifications(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let all = registry();
    let selected: Vec<Claim> = match &cfg.only {
        None => all,
        Some(ids) => {
            let unknown: Vec<&String> = ids.iter().filter(|id| !all.iter().any(|c| c.id == *id)).collect();
            if !unknown.is_empty() {
                return Err(Error::OutOfRange(format!("unknown claim ids: {unknown:?}")));
            }
            all.into_iter().filter(|c| ids.iter().any(|id| id == c.id)).collect()
        }
    };
    let claims = selected
        .par_iter()
        .map(|claim| {
            let mut ctx = Context {
                rng: seeded(claim_seed(cfg.seed, claim.id)),
                trials: cfg.trials,
                primes: cfg.primes.clone(),
            };
            let start = Instant::now();
            let outcome = (claim.run)(&mut ctx).unwrap_or_else(|e| Outcome::fail(format!("error: {e}")));
            ClaimRecord {
                claim_id: claim.id.to_string(),
                description: claim.description.to_string(),
                status: outcome.status,
                witness: outcome.witness,
                millis: start.elapsed().as_millis() as u64,
            }
        })
        .collect();
    Ok(VerificationReport { seed: cfg.seed, primes: cfg.primes.clone(), trials: cfg.trials, claims })
}
