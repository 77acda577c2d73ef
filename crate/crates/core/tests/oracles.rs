//! Library results checked against the independent brute-force oracles in
//! `common`.

mod common;

use common::*;
use hilbcover_core::cone::{hilbert_basis, Cone, HilbertBasis};
use hilbcover_core::corpus::{c10, ConeFile};
use hilbcover_core::icp::{caradec, f_subcones, IcpConfig};
use hilbcover_core::lattice::{hermite_normal_form, smith_normal_form, Int, IntMatrix, LatticeVector, Sublattice};
use hilbcover_core::search::{is_destructive, is_tight, shrink, shrink_basis, ShrinkOutcome};
use proptest::prelude::*;

fn matrix_strategy(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = Vec<V>> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows)
}

fn mat(rows: &[V], cols: usize) -> IntMatrix {
    IntMatrix::new(rows.iter().map(|r| to_lv(r)).collect(), cols)
}

fn mat_v(m: &IntMatrix) -> Vec<V> {
    m.rows().iter().map(to_v).collect()
}

fn full_rank_3(bound: i64) -> impl Strategy<Value = Vec<V>> {
    matrix_strategy(3, 3, bound).prop_filter("singular", |m| det(m) != 0)
}

/// `x` in the lattice spanned by the rows of the nonsingular `m`.
fn in_lattice(m: &[V], x: &[i64]) -> bool {
    let d0 = det(m);
    (0..m.len()).all(|i| {
        let mut n = m.to_vec();
        n[i] = x.to_vec();
        det(&n) % d0 == 0
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_is_a_unimodular_transform(m in matrix_strategy(4, 3, 6)) {
        let h = hermite_normal_form(&mat(&m, 3));
        let u = mat_v(&h.u);
        prop_assert_eq!(det(&u).abs(), 1);
        let hv = mat_v(&h.h);
        for i in 0..4 {
            for j in 0..3 {
                let s: i64 = (0..4).map(|k| u[i][k] * m[k][j]).sum();
                prop_assert_eq!(s, hv[i][j]);
            }
        }
        // staircase: pivots increase, are positive, and nothing follows them
        let mut last = None;
        for (i, &p) in h.pivots.iter().enumerate() {
            prop_assert!(hv[i][p] > 0);
            prop_assert!(hv[i][p + 1..].iter().all(|&x| x == 0));
            prop_assert!(last.is_none_or(|l| p > l));
            last = Some(p);
        }
        for row in &hv[h.pivots.len()..] {
            prop_assert!(row.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn sublattice_membership_and_index(m in full_rank_3(4), x in prop::collection::vec(-8i64..=8, 3)) {
        let l = Sublattice::from_generators(&mat(&m, 3)).unwrap();
        prop_assert_eq!(l.index().to_i64().unwrap(), det(&m).abs());
        prop_assert_eq!(l.contains(&to_lv(&x)), in_lattice(&m, &x));
        // the canonical representative is congruent to x
        let c = to_v(l.canonical(&to_lv(&x)).rep());
        let diff: V = x.iter().zip(&c).map(|(a, b)| a - b).collect();
        prop_assert!(in_lattice(&m, &diff));
    }

    #[test]
    fn intersection_counts_box_points(a in full_rank_3(2), b in full_rank_3(2)) {
        let la = Sublattice::from_generators(&mat(&a, 3)).unwrap();
        let lb = Sublattice::from_generators(&mat(&b, 3)).unwrap();
        let meet = la.intersection(&lb);
        // k Z^3 lies in both, so the box [0, k)^3 holds k^3 / index points of the meet
        let k = det(&a).abs() * det(&b).abs();
        let mut count = 0i64;
        for x0 in 0..k {
            for x1 in 0..k {
                for x2 in 0..k {
                    let x = [x0, x1, x2];
                    let both = in_lattice(&a, &x) && in_lattice(&b, &x);
                    prop_assert_eq!(meet.contains(&to_lv(&x)), both);
                    count += both as i64;
                }
            }
        }
        prop_assert_eq!(count * meet.index().to_i64().unwrap(), k * k * k);
    }

    #[test]
    fn coset_representatives_are_a_transversal(a in full_rank_3(2), b in full_rank_3(2)) {
        let la = Sublattice::from_generators(&mat(&a, 3)).unwrap();
        let lb = Sublattice::from_generators(&mat(&b, 3)).unwrap();
        let sub = la.intersection(&lb);
        let reps = la.coset_representatives(&sub).unwrap();
        let expected = sub.index().to_i64().unwrap() / la.index().to_i64().unwrap();
        prop_assert_eq!(reps.len() as i64, expected);
        let sub_rows = mat_v(sub.basis());
        for (i, r) in reps.iter().enumerate() {
            prop_assert!(in_lattice(&a, &to_v(r)));
            for s in &reps[..i] {
                let diff: V = to_v(r).iter().zip(to_v(s)).map(|(x, y)| x - y).collect();
                prop_assert!(!in_lattice(&sub_rows, &diff));
            }
        }
    }

    #[test]
    fn smith_diagonal_divides_and_multiplies_to_det(m in full_rank_3(5)) {
        let diag: Vec<i64> = smith_normal_form(&mat(&m, 3)).diagonal().iter().map(|x| x.to_i64().unwrap()).collect();
        prop_assert!(diag.iter().all(|&x| x > 0));
        prop_assert!(diag.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(diag.iter().product::<i64>(), det(&m).abs());
    }

    #[test]
    fn double_description_rays_and_facets(seed in any::<u64>(), n in 3usize..7) {
        let cone = random_cone(&mut rng(seed), 3, 3, n);
        let rays: Vec<V> = cone.rays().iter().map(to_v).collect();
        let supports: Vec<V> = cone.supports().iter().map(to_v).collect();
        for s in &supports {
            // a facet holds two independent rays and has all rays on one side
            let on: Vec<&V> = rays.iter().filter(|r| dot(s, r) == 0).collect();
            prop_assert!(rays.iter().all(|r| dot(s, r) >= 0));
            let independent = on.iter().enumerate().any(|(i, p)| on[i + 1..].iter().any(|q| {
                (p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]) != (0, 0, 0)
            }));
            prop_assert!(independent);
        }
        for r in &rays {
            // an extreme ray lies on at least two facets
            prop_assert!(supports.iter().filter(|s| dot(s, r) == 0).count() >= 2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_basis_matches_brute_force(seed in any::<u64>(), dim in 2usize..4, n in 2usize..5) {
        let cone = random_cone(&mut rng(seed), dim, if dim == 2 { 5 } else { 2 }, n.max(dim));
        let got: std::collections::BTreeSet<V> = hilbert_basis(&cone).elements().iter().map(to_v).collect();
        prop_assert_eq!(got, brute_force_hilbert(&cone));
    }

    #[test]
    fn destructiveness_matches_brute_force(seed in any::<u64>(), dim in 2usize..4) {
        let cone = random_cone(&mut rng(seed), dim, if dim == 2 { 5 } else { 2 }, dim + 1);
        let basis = hilbert_basis(&cone);
        for x in basis.elements() {
            let rest: Vec<LatticeVector> = basis.elements().iter().filter(|y| *y != x).cloned().collect();
            let Ok(sub) = Cone::from_vectors(&rest) else { continue };
            let want: std::collections::BTreeSet<V> = rest.iter().map(to_v).collect();
            prop_assert_eq!(is_destructive(&basis, x), brute_force_hilbert(&sub) != want);
        }
    }

    #[test]
    fn shrink_is_idempotent(seed in any::<u64>()) {
        let cone = random_cone(&mut rng(seed), 3, 2, 5);
        let first = shrink(&cone);
        if let ShrinkOutcome::Tight(b) = &first.outcome {
            prop_assert!(is_tight(b));
            let again = shrink_basis(b.clone());
            prop_assert_eq!(again.path.len(), 1);
            prop_assert_eq!(again.outcome, ShrinkOutcome::Tight(b.clone()));
        }
        // each step drops exactly one element
        prop_assert!(first.path.windows(2).all(|w| w[1].len() + 1 == w[0].len()));
    }

    #[test]
    fn cone_file_round_trip(m in matrix_strategy(5, 4, 1_000_000_000)) {
        let mut f = ConeFile::new(mat(&m, 4));
        f.comments.push("random".into());
        prop_assert_eq!(ConeFile::parse(&f.render()).unwrap(), f);
    }
}

#[test]
fn destructiveness_in_the_plane() {
    // the basis of cone((1,0),(1,3)) is (1,0),(1,1),(1,2),(1,3); the ends can
    // go, the inner elements cannot
    let basis = hilbert_basis(&Cone::from_vectors(&[to_lv(&[1, 0]), to_lv(&[1, 3])]).unwrap());
    assert_eq!(basis.len(), 4);
    for x in basis.elements() {
        let end = to_v(x) == [1, 0] || to_v(x) == [1, 3];
        assert_eq!(is_destructive(&basis, x), !end, "{x:?}");
    }
    assert!(!is_tight(&basis));
    let r = shrink_basis(basis);
    assert_eq!(r.outcome, ShrinkOutcome::Trivial);
}

#[test]
fn unimodular_basis_is_tight_only_when_removal_is_impossible() {
    let b = HilbertBasis::from_elements(2, vec![to_lv(&[1, 0]), to_lv(&[0, 1])]);
    // removing either leaves a rank-deficient set, which is its own basis
    assert!(!is_tight(&b));
    assert_eq!(shrink_basis(b).outcome, ShrinkOutcome::Trivial);
}

#[test]
fn caradec_c10_keeps_its_invariants() {
    let cone = Cone::from_generators(&c10().generators).unwrap();
    let basis = hilbert_basis(&cone);
    let cfg = IcpConfig { check_invariants: true, ..IcpConfig::default() };
    let subcones = f_subcones(&basis, &cfg).unwrap();
    let report = caradec(&cone, &subcones, &cfg).unwrap();
    assert!(!report.covered);
    assert_eq!(report.stats.growth_violations, 0);
    for f in &report.failures {
        // every residue left over really escapes the containing subcones' lattices
        assert_eq!(f.residues.len(), f.residue_count);
        assert!(f.group_index > Int::from(1));
    }
}

#[test]
fn caradec_agrees_with_exhaustive_f_coverage_on_small_cones() {
    for (i, cone) in small_instances(7).iter().enumerate().take(20) {
        let basis = hilbert_basis(cone);
        let cfg = IcpConfig::default();
        let report = caradec(cone, &f_subcones(&basis, &cfg).unwrap(), &cfg).unwrap();
        let basis_v: Vec<V> = basis.elements().iter().map(to_v).collect();
        let e = enumerate_for_hilbert(cone);
        let all = e.points.iter().all(|x| f_covered(&basis_v, x));
        assert_eq!(report.covered, all, "instance {i}");
    }
}
