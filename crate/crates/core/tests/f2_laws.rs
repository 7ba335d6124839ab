//! Exhaustive complement-law checks over every subspace pair at small
//! ambient dimension, with randomized coverage at larger ones.

use ac0form::f2::{enumerate_all_subspaces, min_weight_in_difference, BitVec, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn involution_and_dimension_exhaustive() {
    for n in 1..=6 {
        for s in enumerate_all_subspaces(n) {
            let d = s.dual();
            assert_eq!(d.dim() + s.dim(), n);
            assert_eq!(d.dual(), s);
        }
    }
}

#[test]
fn complement_laws_exhaustive_pairs() {
    for n in 1..=6 {
        let all = enumerate_all_subspaces(n);
        let duals: Vec<Subspace> = all.iter().map(|s| s.dual()).collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let sum = a.sum(b).unwrap();
                assert_eq!(sum.dual(), duals[i].intersect(&duals[j]).unwrap());
                assert_eq!(a.intersect(b).unwrap().dual(), duals[i].sum(&duals[j]).unwrap());
                assert_eq!(
                    a.is_subspace_of(b).unwrap(),
                    duals[j].is_subspace_of(&duals[i]).unwrap()
                );
            }
        }
    }
}

#[test]
fn involution_randomized_up_to_n20() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let n = rng.gen_range(7..=20);
        let rows: Vec<BitVec> = (0..rng.gen_range(0..=n))
            .map(|_| BitVec::from_bits(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>()))
            .collect();
        let s = Subspace::span(n, &rows).unwrap();
        assert_eq!(s.dual().dual(), s);
        assert_eq!(s.dim() + s.dual().dim(), n);
    }
}

#[test]
fn min_weight_agrees_with_naive_scan_up_to_n16() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..40 {
        let n = rng.gen_range(8..=16);
        let rows: Vec<BitVec> = (0..rng.gen_range(1..=n))
            .map(|_| BitVec::from_bits(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>()))
            .collect();
        let u = Subspace::span(n, &rows).unwrap();
        let v = Subspace::full(n);
        if u.dim() == n {
            continue;
        }
        // Certificate route: dual-side scan.
        let a = u.dual();
        let b = v.dual();
        let (m, witness) = min_weight_in_difference(&a, &b, 1).unwrap();
        // Naive route: every vector of the ambient space.
        let naive = v
            .elements()
            .filter(|x| !x.is_zero() && u.basis().iter().all(|r| !r.dot(x).unwrap()))
            .map(|x| (x.weight(), x))
            .min()
            .unwrap();
        assert_eq!((m, witness), naive);
    }
}
