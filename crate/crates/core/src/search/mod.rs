//! The random search for tight cones: generate a cone, shrink it by removing
//! nondestructive Hilbert basis elements, and screen what survives.

mod tight;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{hilbert_basis, is_flat, Cone, HilbertBasis, SubconeList};
use crate::icp::{caradec, f_subcones, monte_carlo_icp, IcpConfig, MonteCarloConfig};
use crate::lattice::{determinant, Int, IntMatrix, LatticeVector};
use crate::uhc::{unicover_preprocessed, UhcConfig};

pub use tight::{is_destructive, is_hilbert_basis_of_own_cone, is_tight, shrink, shrink_basis, ShrinkOutcome, ShrinkResult};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("no admissible parallelotope after {0} draws")]
    RejectionLimit(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Random 0-1 vectors.
    ZeroOne,
    /// Vertices of a random lattice parallelotope at height 1.
    Parallelotope,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Ambient dimension of the cone; a parallelotope has dimension `dim - 1`.
    pub dim: usize,
    pub min_generators: usize,
    pub max_generators: usize,
    /// Entries of the parallelotope edges lie in `-entry_bound..=entry_bound`.
    pub entry_bound: i64,
    pub volume_cap: u64,
    pub rejection_limit: usize,
    pub seed: u64,
    pub max_candidates: u64,
    pub screen_uhc: bool,
    pub screen_icp: bool,
    pub screen_monte_carlo: bool,
    /// Also screen this many non-tight bases at the end of each shrink path.
    pub approximations: usize,
    pub uhc: UhcConfig,
    pub icp: IcpConfig,
    pub monte_carlo: MonteCarloConfig,
}

impl SearchConfig {
    pub fn zero_one(seed: u64) -> Self {
        SearchConfig {
            mode: SearchMode::ZeroOne,
            dim: 6,
            min_generators: 6,
            max_generators: 26,
            entry_bound: 2,
            volume_cap: 30,
            rejection_limit: 100_000,
            seed,
            max_candidates: 1000,
            screen_uhc: true,
            screen_icp: false,
            screen_monte_carlo: false,
            approximations: 0,
            uhc: UhcConfig { max_regions: 1_000_000, ..UhcConfig::default() },
            icp: IcpConfig::default(),
            monte_carlo: MonteCarloConfig { samples: 10_000, ..MonteCarloConfig::default() },
        }
    }

    pub fn parallelotope(seed: u64) -> Self {
        SearchConfig { mode: SearchMode::Parallelotope, ..Self::zero_one(seed) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HitKind {
    Tight,
    /// A non-tight basis `steps` removals before the end of a shrink path.
    Approximation { steps: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub mode: SearchMode,
    pub seed: u64,
    pub trial: u64,
    pub kind: HitKind,
}

/// A screened cone found by the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightHit {
    pub basis: Vec<LatticeVector>,
    pub support_count: usize,
    /// `None` if screening was off or ran out of budget.
    pub uhc: Option<bool>,
    pub icp: Option<bool>,
    /// `(non-covered, samples)` of the Monte Carlo test.
    pub monte_carlo: Option<(usize, usize)>,
    pub flat: Option<LatticeVector>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub trials: u64,
    pub degenerate: u64,
    pub trivial: u64,
    pub tight: u64,
    pub duplicates: u64,
    pub failures: u64,
}

/// The per-trial generator, seeded by `(seed, trial)` so that trials can run
/// in any order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

pub fn random_generators(cfg: &SearchConfig, rng: &mut impl Rng) -> Result<IntMatrix, SearchError> {
    match cfg.mode {
        SearchMode::ZeroOne => {
            let n = rng.gen_range(cfg.min_generators..=cfg.max_generators);
            let rows = (0..n)
                .map(|_| LatticeVector::new((0..cfg.dim).map(|_| Int::from(rng.gen_range(0..=1u8))).collect()))
                .collect();
            Ok(IntMatrix::new(rows, cfg.dim))
        }
        SearchMode::Parallelotope => {
            let m = cfg.dim - 1;
            let cap = Int::from(cfg.volume_cap);
            for _ in 0..cfg.rejection_limit {
                let edges: Vec<LatticeVector> = (0..m)
                    .map(|_| {
                        LatticeVector::new(
                            (0..m).map(|_| Int::from(rng.gen_range(-cfg.entry_bound..=cfg.entry_bound))).collect(),
                        )
                    })
                    .collect();
                let det = determinant(&IntMatrix::new(edges.clone(), m)).abs();
                if !det.is_zero() && det <= cap {
                    return Ok(parallelotope_vertices(&edges));
                }
            }
            Err(SearchError::RejectionLimit(cfg.rejection_limit))
        }
    }
}

/// The `2^m` points `(1, sum_{i in I} v_i)`; bit `i` of the row index selects
/// `v_i`.
pub fn parallelotope_vertices(edges: &[LatticeVector]) -> IntMatrix {
    let m = edges.len();
    let rows = (0..1usize << m)
        .map(|mask| {
            let mut p = LatticeVector::zero(m);
            for (i, e) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    p = &p + e;
                }
            }
            let mut coords = vec![Int::ONE];
            coords.extend(p.into_coords());
            LatticeVector::new(coords)
        })
        .collect();
    IntMatrix::new(rows, m + 1)
}

/// Screens one basis with the configured tests.
pub fn screen(basis: &HilbertBasis, cfg: &SearchConfig, provenance: Provenance) -> Option<TightHit> {
    let cone = Cone::from_vectors(basis.elements()).ok()?;
    let mut hit = TightHit {
        basis: basis.elements().to_vec(),
        support_count: cone.supports().len(),
        uhc: None,
        icp: None,
        monte_carlo: None,
        flat: is_flat(basis),
        provenance,
    };
    let mut witnesses = Vec::new();
    if cfg.screen_uhc {
        let mut subs = SubconeList::lazy_unimodular(basis.elements());
        if let Ok(r) = unicover_preprocessed(&cone, &mut subs, &cfg.uhc) {
            hit.uhc = Some(r.covered);
            witnesses = r.witnesses;
        }
    }
    if hit.uhc == Some(true) {
        hit.icp = Some(true);
        return Some(hit);
    }
    if cfg.screen_monte_carlo && !witnesses.is_empty() {
        let mc = monte_carlo_icp(&witnesses, basis, &cfg.monte_carlo);
        hit.monte_carlo = Some((mc.non_covered, mc.samples));
        if mc.non_covered > 0 {
            hit.icp = Some(false);
        }
    }
    if cfg.screen_icp && hit.icp.is_none() {
        if let Ok(r) = f_subcones(basis, &cfg.icp).and_then(|subs| caradec(&cone, &subs, &cfg.icp)) {
            hit.icp = Some(r.covered);
        }
    }
    Some(hit)
}

enum TrialOutcome {
    Degenerate,
    Failed,
    Shrunk { tight: bool, hits: Vec<TightHit> },
}

fn run_trial(cfg: &SearchConfig, trial: u64) -> TrialOutcome {
    let mut rng = trial_rng(cfg.seed, trial);
    let Ok(gens) = random_generators(cfg, &mut rng) else { return TrialOutcome::Failed };
    let Ok(cone) = Cone::from_generators(&gens) else { return TrialOutcome::Degenerate };
    let basis = hilbert_basis(&cone);
    let result = shrink_basis(basis);
    let prov = |kind| Provenance { mode: cfg.mode, seed: cfg.seed, trial, kind };
    let mut hits = Vec::new();
    let approx = result.last_approximations(cfg.approximations);
    for (k, b) in approx.iter().enumerate() {
        let steps = approx.len() - k;
        if let Some(h) = screen(b, cfg, prov(HitKind::Approximation { steps })) {
            // only failures of the cover property are worth reporting here
            if h.uhc == Some(false) {
                hits.push(h);
            }
        }
    }
    let tight = match &result.outcome {
        ShrinkOutcome::Tight(b) => {
            if let Some(h) = screen(b, cfg, prov(HitKind::Tight)) {
                hits.push(h);
            }
            true
        }
        ShrinkOutcome::Trivial => false,
    };
    TrialOutcome::Shrunk { tight, hits }
}

/// Runs `max_candidates` trials and passes each new hit to `emit`, in trial
/// order. Trials run in parallel batches; the stream only depends on `cfg`.
pub fn search_tight_with(cfg: &SearchConfig, mut emit: impl FnMut(&TightHit)) -> SearchStats {
    const BATCH: u64 = 64;
    let mut stats = SearchStats::default();
    let mut seen: HashSet<Vec<LatticeVector>> = HashSet::new();
    let mut start = 0;
    while start < cfg.max_candidates {
        let end = (start + BATCH).min(cfg.max_candidates);
        let outcomes: Vec<TrialOutcome> = (start..end).into_par_iter().map(|t| run_trial(cfg, t)).collect();
        for o in outcomes {
            stats.trials += 1;
            match o {
                TrialOutcome::Degenerate => stats.degenerate += 1,
                TrialOutcome::Failed => stats.failures += 1,
                TrialOutcome::Shrunk { tight, hits } => {
                    if tight {
                        stats.tight += 1;
                    } else {
                        stats.trivial += 1;
                    }
                    for h in hits {
                        if seen.insert(h.basis.clone()) {
                            emit(&h);
                        } else {
                            stats.duplicates += 1;
                        }
                    }
                }
            }
        }
        start = end;
    }
    stats
}

pub fn search_tight(cfg: &SearchConfig) -> (Vec<TightHit>, SearchStats) {
    let mut hits = Vec::new();
    let stats = search_tight_with(cfg, |h| hits.push(h.clone()));
    (hits, stats)
}
