use serde::{Deserialize, Serialize};

use crate::cone::{cut, facets, Cone, SimplicialSubcone};
use crate::lattice::LatticeVector;

use super::UhcError;

/// A full-dimensional subcone of the ambient cone, kept as a synchronized
/// ray/facet pair, together with its place in the recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubconeRegion {
    pub rays: Vec<LatticeVector>,
    pub supports: Vec<LatticeVector>,
    pub depth: usize,
    pub start_index: usize,
}

/// How a region sits relative to a simplicial subcone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Contained,
    Overlapping,
    Disjoint,
}

impl SubconeRegion {
    pub fn from_cone(cone: &Cone) -> Self {
        SubconeRegion {
            rays: cone.rays().to_vec(),
            supports: cone.supports().to_vec(),
            depth: 0,
            start_index: 0,
        }
    }

    pub fn from_subcone(s: &SimplicialSubcone) -> Self {
        SubconeRegion {
            rays: s.generators().iter().map(LatticeVector::primitive).collect(),
            supports: s.supports().to_vec(),
            depth: 0,
            start_index: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map_or(0, LatticeVector::dim)
    }

    pub fn to_cone(&self) -> Cone {
        Cone::from_parts(self.dim(), self.rays.clone(), self.supports.clone())
    }

    pub fn contains_point(&self, x: &LatticeVector) -> bool {
        self.supports.iter().all(|s| !s.dot(x).is_negative())
    }

    /// Intersection with the closed halfspace `<h, x> >= 0`; `None` when that
    /// is not full-dimensional.
    pub fn intersect_halfspace(&self, h: &LatticeVector) -> Option<SubconeRegion> {
        let signs: Vec<i32> = self.rays.iter().map(|r| h.dot_sign(r)).collect();
        if !signs.iter().any(|&s| s > 0) {
            return None;
        }
        if !signs.iter().any(|&s| s < 0) {
            return Some(self.clone());
        }
        let d = self.dim();
        let rays = cut(&self.rays, &self.supports, h, d);
        let mut ineqs = self.supports.clone();
        ineqs.push(h.primitive());
        let supports = facets(&rays, &ineqs, d);
        Some(SubconeRegion { rays, supports, depth: self.depth, start_index: self.start_index })
    }

    /// Intersection with another region, if full-dimensional.
    pub fn intersect(&self, other: &SubconeRegion) -> Option<SubconeRegion> {
        let mut cur = self.clone();
        for s in &other.supports {
            cur = cur.intersect_halfspace(s)?;
        }
        Some(cur)
    }
}

/// `D ⊂ U`: every ray of `D` satisfies every support of `U`.
pub fn contains(region: &SubconeRegion, sub: &SimplicialSubcone) -> bool {
    sub.contains_rays(&region.rays)
}

/// `int(D) ∩ int(U) ≠ ∅`, i.e. `D ∩ U` is full-dimensional.
pub fn interiors_meet(region: &SubconeRegion, sub: &SimplicialSubcone) -> bool {
    relation(region, sub) != Relation::Disjoint
}

pub fn relation(region: &SubconeRegion, sub: &SimplicialSubcone) -> Relation {
    // sign pattern of the rays of D on the supports of U
    let mut violated = false;
    for s in sub.supports() {
        let mut pos = false;
        let mut neg = false;
        for r in &region.rays {
            match s.dot_sign(r) {
                1 => pos = true,
                -1 => neg = true,
                _ => {}
            }
        }
        if !pos {
            return Relation::Disjoint;
        }
        violated |= neg;
    }
    if !violated {
        return Relation::Contained;
    }
    // a facet of D that weakly separates it from U
    for f in &region.supports {
        if sub.generators().iter().all(|g| !f.dot(g).is_positive()) {
            return Relation::Disjoint;
        }
    }
    let d = region.dim();
    let mut rays = region.rays.clone();
    let mut ineqs = region.supports.clone();
    for s in sub.supports() {
        let mut pos = false;
        let mut neg = false;
        for r in &rays {
            match s.dot_sign(r) {
                1 => pos = true,
                -1 => neg = true,
                _ => {}
            }
        }
        if !pos {
            return Relation::Disjoint;
        }
        if neg {
            rays = cut(&rays, &ineqs, s, d);
            ineqs.push(s.clone());
        }
    }
    Relation::Overlapping
}

/// Splits `D` along the first support hyperplane `H` of `U` that has rays of
/// `D` strictly on both sides; returns `(D ∩ H⁺, D ∩ H⁻)`.
pub fn split(region: &SubconeRegion, sub: &SimplicialSubcone) -> Result<(SubconeRegion, SubconeRegion), UhcError> {
    for s in sub.supports() {
        let mut pos = false;
        let mut neg = false;
        for r in &region.rays {
            match s.dot_sign(r) {
                1 => pos = true,
                -1 => neg = true,
                _ => {}
            }
        }
        if pos && neg {
            let plus = region.intersect_halfspace(s).expect("rays on the positive side");
            let minus = region.intersect_halfspace(&-s).expect("rays on the negative side");
            let child = |mut r: SubconeRegion| {
                r.depth = region.depth + 1;
                r
            };
            return Ok((child(plus), child(minus)));
        }
    }
    Err(UhcError::NoSplittingHyperplane)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;

    fn region(rows: &[&[i64]]) -> SubconeRegion {
        SubconeRegion::from_cone(&Cone::from_generators(&IntMatrix::from_i64s(rows)).unwrap())
    }

    fn simplex(rows: &[&[i64]]) -> SimplicialSubcone {
        SimplicialSubcone::new((0..rows.len()).collect(), IntMatrix::from_i64s(rows)).unwrap()
    }

    fn vs(rows: &[&[i64]]) -> Vec<LatticeVector> {
        rows.iter().map(|r| LatticeVector::from_i64s(r)).collect()
    }

    #[test]
    fn containment_examples() {
        let u = simplex(&[&[1, 0], &[1, 1]]);
        assert!(contains(&region(&[&[1, 0], &[1, 1]]), &u));
        assert!(!contains(&region(&[&[1, 0], &[0, 1]]), &u));
        assert!(contains(&region(&[&[1, 0], &[1, 1]]), &simplex(&[&[1, 0], &[0, 1]])));
    }

    #[test]
    fn interior_examples() {
        let u = simplex(&[&[1, 0], &[1, 1]]);
        assert!(interiors_meet(&region(&[&[1, 0], &[1, 1]]), &u));
        // quadrant cones sharing the ray (1,1)
        assert!(!interiors_meet(&region(&[&[1, 1], &[0, 1]]), &u));
        assert!(interiors_meet(&region(&[&[1, 0], &[1, 2]]), &simplex(&[&[1, 1], &[0, 1]])));
        // 3-d cones touching along a facet only
        let a = region(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = simplex(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, -1]]);
        assert!(!interiors_meet(&a, &b));
    }

    #[test]
    fn split_quadrant() {
        let d = region(&[&[1, 0], &[0, 1]]);
        let u = simplex(&[&[1, 0], &[1, 1]]);
        let (d1, d2) = split(&d, &u).unwrap();
        assert_eq!(d1.rays, vs(&[&[1, 0], &[1, 1]]));
        assert_eq!(d2.rays, vs(&[&[0, 1], &[1, 1]]));
        assert_eq!(d1.depth, 1);
        assert!(contains(&d1, &u));
        assert!(!interiors_meet(&d2, &u));
    }

    #[test]
    fn split_three_dim() {
        let d = region(&[&[1, 0, 0], &[0, 1, 0], &[-1, 3, 1]]);
        let u = simplex(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let (d1, d2) = split(&d, &u).unwrap();
        // both children share the face on x = 0
        let shared: Vec<_> = d1.rays.iter().filter(|r| d2.rays.contains(r)).cloned().collect();
        assert!(shared.iter().all(|r| r[0].is_zero()));
        assert_eq!(shared.len(), 2);
        assert!(split(&d1, &u).is_err());
    }
}
