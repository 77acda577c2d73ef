//! Deciding the integral Carathéodory property by residue-class refinement
//! over the f-subcones, and a sampling falsifier.
//!
//! A region `D` carries the group `G` cut out by the f-subcones that contain
//! it and the list `R` of classes of `Z^d / G` that none of their groups
//! `Γ(S)` covers. `D` is f-covered iff `R` becomes empty before the scan runs
//! out of subcones; the scan order and the splitting rule are those of the
//! UHC decision, with f-subcones in place of u-subcones.

mod monte_carlo;
mod residues;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::{enumerate_simplicial_subcones, enumerate_simplicial_subcones_capped, hilbert_basis, Cone, HilbertBasis, SimplicialSubcone};
use crate::lattice::{Int, LatticeVector, Sublattice};
use crate::uhc::{relation, split, Relation, SubconeRegion, UhcError};

pub use monte_carlo::{monte_carlo_icp, MonteCarloConfig, MonteCarloReport};
pub use residues::{growth_bound_holds, refine_residues, Refinement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IcpError {
    #[error("residue list exceeded the budget of {0} entries")]
    ResidueBudgetExceeded(usize),
    #[error("region limit of {0} exceeded")]
    ResourceLimit(usize),
    #[error("subcone list limit of {0} exceeded")]
    SubconeLimit(usize),
    #[error("no support hyperplane of the subcone separates the region")]
    NoSplittingHyperplane,
}

impl From<UhcError> for IcpError {
    fn from(e: UhcError) -> Self {
        match e {
            UhcError::ResourceLimit(n) => IcpError::ResourceLimit(n),
            UhcError::SubconeLimit(n) => IcpError::SubconeLimit(n),
            UhcError::NoSplittingHyperplane => IcpError::NoSplittingHyperplane,
        }
    }
}

/// A run that stopped early, with everything found up to that point.
#[derive(Debug, Error, Clone)]
#[error("{error}")]
pub struct IcpAbort {
    pub error: IcpError,
    pub partial: Box<IcpReport>,
}

#[derive(Clone, Debug)]
pub struct IcpConfig {
    /// Largest residue list a single state may hold.
    pub residue_budget: usize,
    pub max_regions: usize,
    /// Hard cap on the length of the f-subcone list.
    pub max_subcones: usize,
    /// Drop f-subcones with larger determinant from the scan.
    pub max_det: Option<Int>,
    /// Recompute the loop invariants at every containment (slow).
    pub check_invariants: bool,
}

impl Default for IcpConfig {
    fn default() -> Self {
        IcpConfig {
            residue_budget: 1_000_000,
            max_regions: 10_000_000,
            max_subcones: 200_000,
            max_det: None,
            check_invariants: false,
        }
    }
}

/// The `(D, G, R)` triple together with its scan position.
#[derive(Clone, Debug)]
pub struct CaradecState {
    pub region: SubconeRegion,
    pub group: Sublattice,
    pub residues: Vec<LatticeVector>,
    pub start_index: usize,
    /// Subcones found to contain the region so far.
    pub containing: Vec<usize>,
}

impl CaradecState {
    pub fn initial(cone: &Cone) -> Self {
        CaradecState {
            region: SubconeRegion::from_cone(cone),
            group: Sublattice::full(cone.dim()),
            residues: vec![LatticeVector::zero(cone.dim())],
            start_index: 0,
            containing: Vec::new(),
        }
    }
}

/// An end node of the recursion whose residue list is not empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub region: SubconeRegion,
    /// `#(Z^d / G)`
    pub group_index: Int,
    pub residue_count: usize,
    pub residues: Vec<LatticeVector>,
}

impl Failure {
    /// `#(R) / #(G)`, reduced.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.residue_count), self.group_index.to_bigint())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IcpStats {
    pub regions_created: usize,
    pub splits: usize,
    pub max_depth: usize,
    pub refinements: usize,
    /// Refinements with `G ⊂ Γ(S)`, which never grow the list.
    pub unit_refinements: usize,
    pub max_residues: usize,
    pub growth_checks: usize,
    pub growth_violations: usize,
    /// End nodes closed by an empty residue list.
    pub covered_nodes: usize,
    /// Largest determinant among subcones that refined a residue list.
    pub max_covering_det: Int,
    pub subcones: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IcpReport {
    pub covered: bool,
    pub failures: Vec<Failure>,
    pub stats: IcpStats,
}

impl IcpReport {
    /// The common ratio when every failing end node has the same one.
    pub fn aggregate_ratio(&self) -> Option<BigRational> {
        let first = self.failures.first()?.ratio();
        self.failures.iter().all(|f| f.ratio() == first).then_some(first)
    }

    /// The distinct failure ratios, smallest first.
    pub fn ratios(&self) -> Vec<BigRational> {
        let set: BTreeSet<BigRational> = self.failures.iter().map(Failure::ratio).collect();
        set.into_iter().collect()
    }
}

/// Hilbert basis, the det-ascending f-subcone list and the decision.
pub fn decide_icp(cone: &Cone, config: &IcpConfig) -> Result<(HilbertBasis, IcpReport), IcpAbort> {
    let basis = hilbert_basis(cone);
    let subcones = f_subcones(&basis, config)?;
    let report = caradec(cone, &subcones, config)?;
    Ok((basis, report))
}

/// The det-ascending f-subcone list within the configured limits.
pub fn f_subcones(basis: &HilbertBasis, config: &IcpConfig) -> Result<Vec<SimplicialSubcone>, IcpAbort> {
    enumerate_simplicial_subcones_capped(basis.elements(), config.max_det.as_ref(), config.max_subcones).ok_or_else(
        || IcpAbort {
            error: IcpError::SubconeLimit(config.max_subcones),
            partial: Box::new(IcpReport { covered: false, failures: Vec::new(), stats: IcpStats::default() }),
        },
    )
}

/// Runs the refinement scan from `(C, Z^d, {0})` over `subcones`, which must
/// be sorted by determinant.
pub fn caradec(cone: &Cone, subcones: &[SimplicialSubcone], config: &IcpConfig) -> Result<IcpReport, IcpAbort> {
    caradec_from(vec![CaradecState::initial(cone)], subcones, config)
}

pub fn caradec_from(
    seeds: Vec<CaradecState>,
    subcones: &[SimplicialSubcone],
    config: &IcpConfig,
) -> Result<IcpReport, IcpAbort> {
    let mut stats = IcpStats { regions_created: seeds.len(), subcones: subcones.len(), ..IcpStats::default() };
    let mut failures = Vec::new();
    let mut stack: Vec<CaradecState> = seeds.into_iter().rev().collect();

    macro_rules! abort {
        ($e:expr) => {
            return Err(IcpAbort {
                error: $e.into(),
                partial: Box::new(IcpReport { covered: false, failures, stats }),
            })
        };
    }

    'states: while let Some(mut st) = stack.pop() {
        stats.max_depth = stats.max_depth.max(st.region.depth);
        stats.max_residues = stats.max_residues.max(st.residues.len());
        let mut i = st.start_index;
        while let Some(s) = subcones.get(i) {
            match relation(&st.region, s) {
                Relation::Contained => {
                    let before = st.residues.len();
                    let r = match refine_residues(&st.residues, &st.group, s.gamma(), config.residue_budget) {
                        Ok(r) => r,
                        Err(e) => abort!(e),
                    };
                    stats.refinements += 1;
                    if r.e.is_one() {
                        stats.unit_refinements += 1;
                    }
                    stats.growth_checks += 1;
                    if !growth_bound_holds(before, r.residues.len(), &r.e) {
                        stats.growth_violations += 1;
                    }
                    if s.det() > &stats.max_covering_det {
                        stats.max_covering_det = s.det().clone();
                    }
                    stats.max_residues = stats.max_residues.max(r.residues.len());
                    st.group = r.group;
                    st.residues = r.residues;
                    st.containing.push(i);
                    if config.check_invariants {
                        assert_invariants(&st, subcones);
                    }
                    if st.residues.is_empty() {
                        stats.covered_nodes += 1;
                        continue 'states;
                    }
                    i += 1;
                }
                Relation::Overlapping => {
                    let (a, b) = match split(&st.region, s) {
                        Ok(p) => p,
                        Err(e) => abort!(e),
                    };
                    stats.splits += 1;
                    stats.regions_created += 2;
                    if stats.regions_created > config.max_regions {
                        abort!(IcpError::ResourceLimit(config.max_regions));
                    }
                    let child = |region: SubconeRegion| CaradecState {
                        region: SubconeRegion { start_index: i, ..region },
                        group: st.group.clone(),
                        residues: st.residues.clone(),
                        start_index: i,
                        containing: st.containing.clone(),
                    };
                    stack.push(child(b));
                    stack.push(child(a));
                    continue 'states;
                }
                Relation::Disjoint => i += 1,
            }
        }
        failures.push(Failure {
            group_index: st.group.index().clone(),
            residue_count: st.residues.len(),
            residues: st.residues,
            region: st.region,
        });
    }
    Ok(IcpReport { covered: failures.is_empty(), failures, stats })
}

/// Largest group index for which the residue list is recomputed from scratch.
const EXHAUSTIVE_INDEX_LIMIT: i64 = 10_000;

/// Recomputes `G` as the intersection of the groups of the containing
/// subcones and, for small indices, `R` as the classes outside their union.
pub fn assert_invariants(st: &CaradecState, subcones: &[SimplicialSubcone]) {
    let d = st.region.dim();
    let gammas: Vec<&Sublattice> = st.containing.iter().map(|&j| subcones[j].gamma()).collect();
    let mut g = Sublattice::full(d);
    for gamma in &gammas {
        g = g.intersection(gamma);
    }
    assert_eq!(g, st.group, "G is not the intersection of the containing groups");
    for x in &st.residues {
        assert_eq!(&st.group.canonical(x).0, x, "residue {x:?} is not canonical");
    }
    if g.index() > &Int::from(EXHAUSTIVE_INDEX_LIMIT) {
        return;
    }
    let expected: BTreeSet<LatticeVector> = Sublattice::full(d)
        .coset_representatives(&g)
        .expect("G has finite index")
        .into_iter()
        .map(|x| g.canonical(&x).0)
        .filter(|x| !gammas.iter().any(|gamma| gamma.contains(x)))
        .collect();
    let actual: BTreeSet<LatticeVector> = st.residues.iter().cloned().collect();
    assert_eq!(actual.len(), st.residues.len(), "duplicate residues");
    assert_eq!(actual, expected, "residue list differs from the uncovered classes");
}

/// First subcone of `subcones` with `x ∈ Σ(S)`, and the coefficients.
pub fn f_cover<'a>(x: &LatticeVector, subcones: &'a [SimplicialSubcone]) -> Option<(&'a SimplicialSubcone, Vec<Int>)> {
    subcones.iter().find_map(|s| s.sigma_coefficients(x).map(|c| (s, c)))
}

/// Searches every `d`-subset of the Hilbert basis, in det-ascending order, for
/// one that writes `x` with nonnegative integral coefficients.
pub fn f_covered_point(x: &LatticeVector, basis: &HilbertBasis) -> Option<SimplicialSubcone> {
    let subcones = enumerate_simplicial_subcones(basis.elements(), None);
    f_cover(x, &subcones).map(|(s, _)| s.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;

    fn cone(rows: &[&[i64]]) -> Cone {
        Cone::from_generators(&IntMatrix::from_i64s(rows)).unwrap()
    }

    fn checked() -> IcpConfig {
        IcpConfig { check_invariants: true, ..IcpConfig::default() }
    }

    #[test]
    fn unimodular_cone_is_covered_at_once() {
        let (_, r) = decide_icp(&cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), &checked()).unwrap();
        assert!(r.covered);
        assert_eq!(r.stats.refinements, 1);
        assert_eq!(r.stats.unit_refinements, 1);
    }

    #[test]
    fn plane_cones_are_covered() {
        for rows in [&[&[1, 0][..], &[1, 2]][..], &[&[1, 0], &[1, 5]], &[&[2, 1], &[-1, 3]]] {
            let (_, r) = decide_icp(&cone(rows), &checked()).unwrap();
            assert!(r.covered, "{rows:?}");
            assert_eq!(r.stats.growth_violations, 0);
        }
    }

    #[test]
    fn point_cover_examples() {
        let h = HilbertBasis::from_elements(2, vec![
            LatticeVector::from_i64s(&[1, 0]),
            LatticeVector::from_i64s(&[1, 1]),
            LatticeVector::from_i64s(&[1, 2]),
        ]);
        let s = f_covered_point(&LatticeVector::from_i64s(&[2, 2]), &h).unwrap();
        assert!(s.generators().contains(&LatticeVector::from_i64s(&[1, 1])));
        assert!(s.is_unimodular());
        assert!(f_covered_point(&LatticeVector::zero(2), &h).is_some());
    }
}
