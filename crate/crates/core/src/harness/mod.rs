//! Machine checks of the explicit identities and rank formulas, with structured
//! verdicts.
//!
//! Every check is deterministic: samples come from ChaCha8 streams seeded from the
//! suite seed and a per-check salt, and reports are merged in a fixed order.

mod equations;
mod identities;
mod laws;
mod ranks;
mod samples;
mod witness;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::depth::Depth;
use crate::endo::Endomorphism;
use crate::graded::coordinates;

pub use equations::{equation_reports, verify_equation, Case, Conv, Equation, Reading};
pub use identities::check_group_identities;
pub use laws::{
    chi_kernel_and_equivariance, depth_laws, determinant_criterion, exact_inversion, filtration_laws, fox_goldens,
};
pub use ranks::{expected_ranks, rank_report, RankNumbers};
pub use samples::{zoo_automorphisms, ZooSampler};
pub use witness::{gamma_witnesses, inner_word, seq_word, tau_word, Word};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictReport {
    pub check: String,
    pub params: Value,
    pub status: Status,
    pub witness: Option<Value>,
    pub variant: Option<String>,
    pub millis: Option<u64>,
}

impl VerdictReport {
    pub fn new(check: impl Into<String>, params: Value) -> Self {
        VerdictReport {
            check: check.into(),
            params,
            status: Status::Pass,
            witness: None,
            variant: None,
            millis: None,
        }
    }

    pub fn fail(mut self, witness: Value) -> Self {
        self.status = Status::Fail;
        self.witness = Some(witness);
        self
    }

    pub fn skipped(mut self, reason: &str) -> Self {
        self.status = Status::Skipped;
        self.witness = Some(json!({ "reason": reason }));
        self
    }

    pub fn with_variant(mut self, v: Option<&str>) -> Self {
        self.variant = v.map(str::to_string);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Depth and per-slot weight-`d` coordinates of the discrepancy between two
/// endomorphisms, where `d` is the depth of `rhs(x_i)⁻¹ lhs(x_i)`.
pub(crate) fn discrepancy(lhs: &Endomorphism, rhs: &Endomorphism) -> Value {
    let depth = match lhs.difference_depth(rhs) {
        Ok(d) => d,
        Err(e) => return json!({ "error": e.to_string() }),
    };
    let chi = match depth {
        Depth::Finite(d) if d >= 2 => {
            let slots: Option<Vec<_>> = lhs
                .images()
                .iter()
                .zip(rhs.images())
                .map(|(a, b)| coordinates(&(&b.inverse() * a), d as usize).ok())
                .collect();
            slots.map(|s| serde_json::to_value(s).expect("serializable"))
        }
        _ => None,
    };
    json!({ "depth": depth, "chi": chi })
}

/// Runs `f`, recording elapsed milliseconds when `timings` is set.
pub(crate) fn timed(timings: bool, f: impl FnOnce() -> VerdictReport) -> VerdictReport {
    let start = Instant::now();
    let mut r = f();
    if timings {
        r.millis = Some(start.elapsed().as_millis() as u64);
    }
    r
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub rank: usize,
    pub weight: usize,
    pub seed: u64,
    pub reports: Vec<VerdictReport>,
}

impl SuiteReport {
    /// A check counts as failed when its printed reading fails and none of its
    /// declared variants passes.
    pub fn failures(&self) -> Vec<&VerdictReport> {
        self.reports
            .iter()
            .filter(|r| r.variant.is_none() && r.status == Status::Fail)
            .filter(|r| {
                !self
                    .reports
                    .iter()
                    .any(|v| v.check == r.check && v.variant.is_some() && v.passed())
            })
            .collect()
    }

    pub fn ok(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub rank: usize,
    pub weight: usize,
    pub seed: u64,
    pub samples: usize,
    pub timings: bool,
}

impl SuiteOptions {
    pub fn new(rank: usize, weight: usize) -> Self {
        SuiteOptions {
            rank,
            weight,
            seed: 0,
            samples: 20,
            timings: false,
        }
    }
}

type Job = Box<dyn Fn() -> Vec<VerdictReport> + Send + Sync>;

/// Every check that applies at rank `n` and weight `c`, in a fixed order.
pub fn verify_suite(opts: &SuiteOptions) -> SuiteReport {
    let SuiteOptions {
        rank: n,
        weight: c,
        seed,
        samples,
        timings,
    } = *opts;
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push(Box::new(move || {
        vec![timed(timings, || check_group_identities(n, samples.max(1), seed))]
    }));
    jobs.push(Box::new(move || vec![timed(timings, || fox_goldens(n))]));
    jobs.push(Box::new(move || vec![timed(timings, || determinant_criterion(n, c))]));
    jobs.push(Box::new(move || {
        vec![timed(timings, || exact_inversion(n, samples, 6, seed))]
    }));
    jobs.push(Box::new(move || {
        vec![timed(timings, || depth_laws(n, samples, c.max(2) + 1, seed))]
    }));
    jobs.push(Box::new(move || {
        vec![timed(timings, || filtration_laws(n, samples, seed))]
    }));
    jobs.push(Box::new(move || vec![timed(timings, || rank_report(n, c))]));
    for eq in Equation::all() {
        jobs.push(Box::new(move || {
            let start = Instant::now();
            let mut rs = equation_reports(eq, n, c);
            if timings {
                let ms = start.elapsed().as_millis() as u64;
                rs.iter_mut().for_each(|r| r.millis = Some(ms));
            }
            rs
        }));
    }
    jobs.push(Box::new(move || vec![timed(timings, || gamma_witnesses(n, c))]));
    jobs.push(Box::new(move || {
        vec![timed(timings, || chi_kernel_and_equivariance(n, c, samples, seed))]
    }));
    let reports = jobs.par_iter().map(|j| j()).collect::<Vec<_>>().concat();
    SuiteReport {
        schema: SCHEMA_VERSION,
        rank: n,
        weight: c,
        seed,
        reports,
    }
}
