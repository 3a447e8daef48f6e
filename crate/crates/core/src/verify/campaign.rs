//! Random property campaign: every checker and cross-oracle on a
//! deterministic stream of random Seifert matrices.

use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    analyze, check_all, oracle_report, shadow_report, structural_report, Check, Options, ShadowTally,
    TheoremId, TheoremReport, SCHEMA,
};
use crate::seifert::random_seifert_with;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CampaignConfig {
    pub count: usize,
    pub size_bound: usize,
    pub seed: u64,
    /// Entries of the random symmetric part lie in `[-entry_bound, entry_bound]`.
    pub entry_bound: i64,
    pub inject_fault: bool,
    /// Minor-GCD cross-check only up to this size.
    pub minors_size_limit: usize,
}

impl CampaignConfig {
    pub fn new(count: usize, size_bound: usize, seed: u64) -> Self {
        CampaignConfig {
            count,
            size_bound,
            seed,
            entry_bound: 2,
            inject_fault: false,
            minors_size_limit: 6,
        }
    }
}

/// `(g, μ)` pairs with `g ≤ 3`, `μ ≤ 4` and `2g + μ - 1 ≤ size_bound`.
pub fn grid(size_bound: usize) -> Vec<(usize, usize)> {
    (0..=3)
        .flat_map(|g| (1..=4).map(move |mu| (g, mu)))
        .filter(|&(g, mu)| 2 * g + mu - 1 <= size_bound)
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub index: usize,
    pub genus: usize,
    pub components: usize,
    pub seed: u64,
    pub congruence: bool,
    pub matrix: Vec<Vec<i64>>,
    pub report: String,
    pub check: Check,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub applicable: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: usize,
    pub weakened: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignSummary {
    pub schema: u32,
    pub count: usize,
    pub size_bound: usize,
    pub seed: u64,
    pub entry_bound: i64,
    pub inject_fault: bool,
    pub grid: Vec<(usize, usize)>,
    pub reports: BTreeMap<String, Tally>,
    pub unresolved_points: usize,
    pub localized_points: usize,
    /// Float shadow diagnostic (double precision, not part of any check
    /// verdict except its own).
    pub shadow: ShadowTally,
    pub errors: Vec<String>,
    pub failures: Vec<Failure>,
}

impl CampaignSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty()
    }

    pub fn tally(&self, report: &str) -> Tally {
        self.reports.get(report).copied().unwrap_or_default()
    }

    pub fn failures_in(&self, report: &str) -> usize {
        self.failures.iter().filter(|f| f.report == report).count()
    }
}

struct MatrixResult {
    reports: Vec<TheoremReport>,
    unresolved: usize,
    localized: usize,
    shadow: ShadowTally,
}

pub fn run_campaign(cfg: &CampaignConfig) -> CampaignSummary {
    let cells = grid(cfg.size_bound);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let jobs: Vec<(usize, usize, usize, u64, bool)> = (0..cfg.count)
        .map(|i| {
            let (g, mu) = cells[i % cells.len()];
            (i, g, mu, rng.next_u64(), i % 2 == 1)
        })
        .collect();
    let options = Options {
        samples_per_arc: 2,
        inject_fault: cfg.inject_fault,
    };
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(i, g, mu, seed, congruence)| {
            let s = random_seifert_with(g, mu, cfg.entry_bound, seed, congruence);
            let name = format!("random-{i}");
            let outcome = analyze(&name, &s, options).and_then(|a| {
                let mut reports = check_all(&a, &TheoremId::ALL);
                reports.push(oracle_report(&a, cfg.minors_size_limit)?);
                reports.push(structural_report(&a));
                let (shadow, mismatches) = shadow_report(&a);
                let mut sh = TheoremReport::new("shadow", &a, true, mismatches);
                sh.overall = sh.checks.iter().all(|c| c.pass);
                reports.push(sh);
                let unresolved = a
                    .sf
                    .points
                    .iter()
                    .filter(|p| p.value.exact().is_none())
                    .count();
                Ok(MatrixResult {
                    reports,
                    unresolved,
                    localized: a.local.len(),
                    shadow,
                })
            });
            (i, g, mu, seed, congruence, s, outcome)
        })
        .collect();

    let mut summary = CampaignSummary {
        schema: SCHEMA,
        count: cfg.count,
        size_bound: cfg.size_bound,
        seed: cfg.seed,
        entry_bound: cfg.entry_bound,
        inject_fault: cfg.inject_fault,
        grid: cells,
        reports: BTreeMap::new(),
        unresolved_points: 0,
        localized_points: 0,
        shadow: ShadowTally::default(),
        errors: Vec::new(),
        failures: Vec::new(),
    };
    for (i, g, mu, seed, congruence, s, outcome) in results {
        let r = match outcome {
            Ok(r) => r,
            Err(e) => {
                summary.errors.push(format!("matrix {i} {:?}: {e}", s.entries()));
                continue;
            }
        };
        summary.unresolved_points += r.unresolved;
        summary.localized_points += r.localized;
        summary.shadow.samples += r.shadow.samples;
        summary.shadow.compared += r.shadow.compared;
        summary.shadow.agreed += r.shadow.agreed;
        for rep in r.reports {
            let t = summary.reports.entry(rep.theorem.clone()).or_default();
            if !rep.applicable {
                continue;
            }
            t.applicable += 1;
            t.checks += rep.checks.len();
            t.weakened += rep.checks.iter().filter(|c| c.weakened).count();
            if rep.overall {
                t.passed += 1;
            } else {
                t.failed += 1;
            }
            for c in rep.failures() {
                summary.failures.push(Failure {
                    index: i,
                    genus: g,
                    components: mu,
                    seed,
                    congruence,
                    matrix: s.entries().to_vec(),
                    report: rep.theorem.clone(),
                    check: c.clone(),
                });
            }
        }
    }
    summary
}
