//! Deciding whether a cone is covered by its unimodular Hilbert subcones.
//!
//! The scan walks the u-subcones `U_0, U_1, ...` for each region `D`: a region
//! inside `U_i` is done, a region whose interior meets `U_i` is split along a
//! facet hyperplane of `U_i` and both halves continue the scan *at the same
//! index*, and a region that survives the whole list is a witness of an
//! uncovered point. Every `U_j` passed over without a split has interior
//! disjoint from the region, so a witness has interior disjoint from all
//! u-subcones.

mod region;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{hilbert_basis, triangulate, triangulate_shuffled, Cone, HilbertBasis, SubconeList};

pub use region::{contains, interiors_meet, relation, split, Relation, SubconeRegion};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UhcError {
    #[error("region limit of {0} exceeded")]
    ResourceLimit(usize),
    #[error("subcone list limit of {0} exceeded")]
    SubconeLimit(usize),
    #[error("no support hyperplane of the subcone separates the region")]
    NoSplittingHyperplane,
}

#[derive(Clone, Debug)]
pub struct UhcConfig {
    /// Hard cap on the number of regions created.
    pub max_regions: usize,
    /// Hard cap on the length of the u-subcone list.
    pub max_subcones: usize,
    /// Re-check the scan invariant at every visit (slow).
    pub check_invariants: bool,
    /// Triangulations used to seed the scan; 0 scans the whole cone.
    pub triangulations: usize,
    /// Seed for the shuffled insertion orders of triangulations 2, 3, ...
    pub triangulation_seed: u64,
}

impl Default for UhcConfig {
    fn default() -> Self {
        UhcConfig {
            max_regions: 10_000_000,
            max_subcones: 200_000,
            check_invariants: false,
            triangulations: 1,
            triangulation_seed: 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UhcStats {
    pub regions_created: usize,
    pub splits: usize,
    pub max_depth: usize,
    pub containments: usize,
    /// Size of the u-subcone list that had to be generated.
    pub subcones_materialized: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UhcReport {
    pub covered: bool,
    pub witnesses: Vec<SubconeRegion>,
    pub stats: UhcStats,
}

/// Runs the scan on `cone` with its u-subcones, generated lazily.
pub fn decide_uhc(cone: &Cone, config: &UhcConfig) -> Result<(HilbertBasis, UhcReport), UhcError> {
    let basis = hilbert_basis(cone);
    let mut subcones = SubconeList::lazy_unimodular(basis.elements());
    let report = unicover_preprocessed(cone, &mut subcones, config)?;
    Ok((basis, report))
}

/// The scan seeded by `preprocess_regions` with the configured triangulations.
pub fn unicover_preprocessed(cone: &Cone, subcones: &mut SubconeList, config: &UhcConfig) -> Result<UhcReport, UhcError> {
    let seeds = preprocess_regions(cone, config.triangulations, config.triangulation_seed);
    unicover_regions(seeds, subcones, config)
}

pub fn unicover(cone: &Cone, subcones: &mut SubconeList, config: &UhcConfig) -> Result<UhcReport, UhcError> {
    unicover_regions(vec![SubconeRegion::from_cone(cone)], subcones, config)
}

/// Runs the scan on each seed region independently.
pub fn unicover_regions(
    seeds: Vec<SubconeRegion>,
    subcones: &mut SubconeList,
    config: &UhcConfig,
) -> Result<UhcReport, UhcError> {
    let mut stats = UhcStats { regions_created: seeds.len(), ..UhcStats::default() };
    let mut witnesses = Vec::new();
    let mut stack: Vec<SubconeRegion> = seeds.into_iter().rev().collect();

    'regions: while let Some(region) = stack.pop() {
        stats.max_depth = stats.max_depth.max(region.depth);
        if config.check_invariants {
            assert_scan_invariant(&region, subcones);
        }
        let mut i = region.start_index;
        loop {
            if i >= config.max_subcones {
                return Err(UhcError::SubconeLimit(config.max_subcones));
            }
            let Some(u) = subcones.get(i) else { break };
            match relation(&region, u) {
                Relation::Contained => {
                    stats.containments += 1;
                    continue 'regions;
                }
                Relation::Overlapping => {
                    let (mut a, mut b) = split(&region, u)?;
                    a.start_index = i;
                    b.start_index = i;
                    stats.splits += 1;
                    stats.regions_created += 2;
                    if stats.regions_created > config.max_regions {
                        return Err(UhcError::ResourceLimit(config.max_regions));
                    }
                    stack.push(b);
                    stack.push(a);
                    continue 'regions;
                }
                Relation::Disjoint => i += 1,
            }
        }
        witnesses.push(region);
    }
    stats.subcones_materialized = subcones.materialized().len();
    Ok(UhcReport { covered: witnesses.is_empty(), witnesses, stats })
}

fn assert_scan_invariant(region: &SubconeRegion, subcones: &mut SubconeList) {
    for j in 0..region.start_index {
        let u = subcones.get(j).expect("index below start was already scanned");
        assert!(
            contains(region, u) || !interiors_meet(region, u),
            "u-subcone {j} meets the interior of a region that starts at {}",
            region.start_index
        );
    }
}

/// Checks post hoc that a witness has interior disjoint from every subcone.
pub fn verify_witness(region: &SubconeRegion, subcones: &mut SubconeList) -> bool {
    subcones.materialize();
    subcones.materialized().iter().all(|u| !interiors_meet(region, u))
}

/// Seed regions from `t` triangulations: every full-dimensional intersection
/// `D_1 ∩ ... ∩ D_t` of nonunimodular cells, one cell per triangulation. The
/// first triangulation uses the stored ray order, the others seeded shuffles.
/// With `t = 0` the whole cone is the only seed.
pub fn preprocess_regions(cone: &Cone, t: usize, seed: u64) -> Vec<SubconeRegion> {
    if t == 0 {
        return vec![SubconeRegion::from_cone(cone)];
    }
    let mut regions: Option<Vec<SubconeRegion>> = None;
    for k in 0..t {
        let cells = if k == 0 {
            triangulate(cone)
        } else {
            triangulate_shuffled(cone, seed.wrapping_add(k as u64))
        };
        let bad: Vec<SubconeRegion> =
            cells.iter().filter(|c| !c.is_unimodular()).map(SubconeRegion::from_subcone).collect();
        regions = Some(match regions {
            None => bad,
            Some(prev) => prev.iter().flat_map(|r| bad.iter().filter_map(move |b| r.intersect(b))).collect(),
        });
    }
    regions.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;

    fn cone(rows: &[&[i64]]) -> Cone {
        Cone::from_generators(&IntMatrix::from_i64s(rows)).unwrap()
    }

    #[test]
    fn unimodular_cone_is_covered_without_splits() {
        let (_, r) = decide_uhc(&cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), &UhcConfig::default()).unwrap();
        assert!(r.covered);
        assert_eq!(r.stats.splits, 0);
    }

    #[test]
    fn two_dim_cone_needs_one_split() {
        let c = cone(&[&[1, 0], &[1, 2]]);
        let (h, r) = decide_uhc(&c, &UhcConfig { check_invariants: true, ..UhcConfig::default() }).unwrap();
        assert_eq!(h.len(), 3);
        assert!(r.covered);
        assert_eq!(r.stats.splits, 1);
        assert_eq!(r.stats.subcones_materialized, 2);
    }

    #[test]
    fn region_cap_is_enforced() {
        let c = cone(&[&[1, 0], &[1, 7]]);
        let (h, _) = decide_uhc(&c, &UhcConfig::default()).unwrap();
        let mut subs = SubconeList::lazy_unimodular(h.elements());
        let err = unicover(&c, &mut subs, &UhcConfig { max_regions: 2, ..UhcConfig::default() });
        assert_eq!(err, Err(UhcError::ResourceLimit(2)));
    }

    #[test]
    fn preprocessing_seeds() {
        let unimodular = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(preprocess_regions(&unimodular, 2, 7).is_empty());

        let c = cone(&[&[1, 0], &[1, 2]]);
        let seeds = preprocess_regions(&c, 1, 0);
        assert_eq!(seeds.len(), 1);
        assert_eq!(seeds[0].rays, c.rays());
        assert_eq!(preprocess_regions(&c, 0, 0), vec![SubconeRegion::from_cone(&c)]);
    }
}
