//! The three parts of the representation theorem on every subspace of `P*`
//! for small posets, with fullness and separation decided by brute force.

use biclosure::{
    closures_of_subspace, dual_space, enumerate_posets_up_to, sigma_check, BitSet, Poset, Subspace,
};

/// Every intersection of a subfamily (the empty one gives the carrier).
fn intersections(n: usize, sets: &[BitSet]) -> Vec<BitSet> {
    let mut out: Vec<BitSet> = (0..1u64 << sets.len())
        .map(|pick| {
            (0..sets.len())
                .filter(|k| pick >> k & 1 == 1)
                .fold(BitSet::full(n), |acc, k| acc.intersection(&sets[k]))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn full_by_definition(p: &Poset, a: &Subspace) -> bool {
    let n = p.len();
    (0..n).all(|x| {
        (0..n).all(|y| p.le(x, y) || a.points().iter().any(|pt| pt.value(x) && !pt.value(y)))
    })
}

fn separating_by_definition(p: &Poset, a: &Subspace) -> bool {
    let n = p.len();
    let ones: Vec<BitSet> = a.points().iter().map(|x| x.one_set().clone()).collect();
    let zeros: Vec<BitSet> = ones.iter().map(|s| s.complement(n)).collect();
    let ideals = intersections(n, &zeros);
    let filters = intersections(n, &ones);
    ideals.iter().all(|i| {
        filters
            .iter()
            .all(|f| !i.is_disjoint(f) || ones.iter().any(|o| o.is_disjoint(i) && f.is_subset(o)))
    })
}

#[test]
fn every_subspace_of_small_duals() {
    let mut full_and_separating = 0;
    let mut total = 0;
    for p in enumerate_posets_up_to(3, 3).unwrap().into_iter().flatten() {
        let dual = dual_space(&p).unwrap();
        for mask in 0..1u64 << dual.len() {
            let a = dual.select(&BitSet::from_mask(mask));
            let r = sigma_check(&a);
            let full = full_by_definition(&p, &a);
            let separating = separating_by_definition(&p, &a);
            assert_eq!(r.full, full);
            assert_eq!(r.separating, separating);
            assert!(r.isotone);
            if full {
                assert!(r.injective);
            }
            if separating {
                assert!(r.surjective, "{:?} on {:?}", a.to_json(), p.to_json());
            }
            if full && separating {
                assert!(r.isomorphism);
                full_and_separating += 1;
            }
            total += 1;
        }
    }
    assert!(full_and_separating > 0 && full_and_separating < total);
}

#[test]
fn every_subspace_of_four_element_duals() {
    for p in enumerate_posets_up_to(4, 4).unwrap().pop().unwrap() {
        let dual = dual_space(&p).unwrap();
        for mask in 0..1u64 << dual.len() {
            let a = dual.select(&BitSet::from_mask(mask));
            let r = sigma_check(&a);
            assert!(r.consistent, "{:?} on {:?}", a.to_json(), p.to_json());
        }
    }
}

#[test]
fn reduced_dual_of_bounded_posets() {
    for p in enumerate_posets_up_to(6, 6)
        .unwrap()
        .into_iter()
        .flatten()
        .filter(Poset::is_bounded)
    {
        let reduced = dual_space(&p).unwrap().remove_constants().unwrap();
        let r = sigma_check(&reduced);
        assert!(r.isomorphism && r.full && r.separating, "{:?}", p.to_json());
        let (c1, c2) = closures_of_subspace(&reduced);
        assert_eq!(c1.carrier(), c2.carrier());
    }
}
