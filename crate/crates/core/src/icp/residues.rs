use crate::lattice::{Int, LatticeVector, Sublattice};

use super::IcpError;

/// Outcome of one refinement step.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub group: Sublattice,
    pub residues: Vec<LatticeVector>,
    /// `e = #(G / (G ∩ Γ))`.
    pub e: Int,
}

/// Replaces `G` by `G' = G ∩ Γ` and keeps the classes mod `G'` that refine a
/// class of `residues` and miss `Γ`. Candidates are tested against `Γ`
/// first and then reduced mod `G'`, so the output order is reproducible.
///
/// `cap` bounds the length of the new list.
pub fn refine_residues(
    residues: &[LatticeVector],
    group: &Sublattice,
    gamma: &Sublattice,
    cap: usize,
) -> Result<Refinement, IcpError> {
    if group.is_sublattice_of(gamma) {
        // e = 1: every class lies in Γ or misses it entirely
        let kept: Vec<LatticeVector> = residues.iter().filter(|x| !gamma.contains(x)).cloned().collect();
        return Ok(Refinement { group: group.clone(), residues: kept, e: Int::ONE });
    }
    let refined = group.intersection(gamma);
    let reps = group.coset_representatives(&refined).expect("G ∩ Γ has finite index in G");
    let e = Int::from(reps.len());
    let mut out = Vec::new();
    for x in residues {
        for y in &reps {
            let z = x + y;
            if gamma.contains(&z) {
                continue;
            }
            if out.len() >= cap {
                return Err(IcpError::ResidueBudgetExceeded(cap));
            }
            out.push(refined.canonical(&z).0);
        }
    }
    Ok(Refinement { group: refined, residues: out, e })
}

/// `#(R') >= (e - 1) #(R)`.
pub fn growth_bound_holds(before: usize, after: usize, e: &Int) -> bool {
    let lower = (e - &Int::ONE) * Int::from(before);
    Int::from(after) >= lower
}
