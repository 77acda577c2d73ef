use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::{enumerate_simplicial_subcones, HilbertBasis};
use crate::lattice::{Int, LatticeVector};
use crate::uhc::SubconeRegion;

use super::{f_cover, f_covered_point};

#[derive(Clone, Debug)]
pub struct MonteCarloConfig {
    pub samples: usize,
    /// Coefficients are drawn uniformly from `0..=bound`.
    pub bound: u32,
    pub seed: u64,
    /// How many uncovered samples to keep.
    pub max_hits: usize,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig { samples: 100_000, bound: 10, seed: 0, max_hits: 10 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub samples: usize,
    pub non_covered: usize,
    /// The first few uncovered samples, in sampling order.
    pub hits: Vec<LatticeVector>,
    /// Every uncovered sample was confirmed by the exhaustive subset search.
    pub certified: bool,
}

impl MonteCarloReport {
    pub fn fraction(&self) -> BigRational {
        if self.samples == 0 {
            return BigRational::from_integer(BigInt::from(0));
        }
        BigRational::new(BigInt::from(self.non_covered), BigInt::from(self.samples))
    }

    pub fn rate(&self) -> f64 {
        if self.samples == 0 {
            0.0
        } else {
            self.non_covered as f64 / self.samples as f64
        }
    }
}

/// Samples nonzero lattice points `sum c_i r_i` over the rays `r_i` of
/// randomly chosen witness regions and tests each for f-coverage.
///
/// Sampling is sequential and seeded; coverage tests run in parallel but the
/// result depends only on the configuration.
pub fn monte_carlo_icp(witnesses: &[SubconeRegion], basis: &HilbertBasis, config: &MonteCarloConfig) -> MonteCarloReport {
    if witnesses.is_empty() || config.samples == 0 {
        return MonteCarloReport { samples: 0, non_covered: 0, hits: Vec::new(), certified: true };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let points: Vec<LatticeVector> = (0..config.samples).map(|_| sample(witnesses, config.bound, &mut rng)).collect();
    let subcones = enumerate_simplicial_subcones(basis.elements(), None);
    let uncovered: Vec<&LatticeVector> =
        points.par_iter().filter(|x| f_cover(x, &subcones).is_none()).collect::<Vec<_>>();
    let certified = uncovered.par_iter().all(|x| f_covered_point(x, basis).is_none());
    MonteCarloReport {
        samples: config.samples,
        non_covered: uncovered.len(),
        hits: uncovered.iter().take(config.max_hits).map(|&x| x.clone()).collect(),
        certified,
    }
}

fn sample(witnesses: &[SubconeRegion], bound: u32, rng: &mut ChaCha8Rng) -> LatticeVector {
    let w = &witnesses[rng.gen_range(0..witnesses.len())];
    loop {
        let mut x = LatticeVector::zero(w.dim());
        for r in &w.rays {
            let c = rng.gen_range(0..=bound);
            x.add_scaled(&Int::from(c), r);
        }
        if !x.is_zero() || bound == 0 {
            return x;
        }
    }
}
