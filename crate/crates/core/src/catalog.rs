//! Isomorphism testing and the exhaustive catalog of small posets.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// Largest `n` accepted by [`enumerate_posets`] unless overridden. The class
/// count grows fast (318 at 6, 2045 at 7, 16999 at 8).
pub const DEFAULT_MAX_N: usize = 6;

/// Per-element isomorphism invariant: sizes of the cones and cover counts.
fn element_invariants(p: &Poset) -> Vec<[usize; 4]> {
    let mut inv: Vec<[usize; 4]> = (0..p.len())
        .map(|i| [p.down_cone(i).len(), p.up_cone(i).len(), 0, 0])
        .collect();
    for (a, b) in p.covers() {
        inv[a][3] += 1;
        inv[b][2] += 1;
    }
    inv
}

fn signature(p: &Poset) -> Vec<[usize; 4]> {
    let mut s = element_invariants(p);
    s.sort_unstable();
    s
}

/// Returns an order isomorphism `P -> Q` as an index table, if one exists.
pub fn are_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.len() != q.len() {
        return None;
    }
    let (ip, iq) = (element_invariants(p), element_invariants(q));
    let mut sp = ip.clone();
    let mut sq = iq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return None;
    }
    // Most constrained elements first.
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| (ip.iter().filter(|x| **x == ip[i]).count(), i));
    let mut map = vec![usize::MAX; p.len()];
    let mut used = BitSet::new();
    if extend(p, q, &ip, &iq, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    p: &Poset,
    q: &Poset,
    ip: &[[usize; 4]],
    iq: &[[usize; 4]],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: &mut BitSet,
) -> bool {
    let Some(&a) = order.get(k) else {
        return true;
    };
    for b in 0..q.len() {
        if used.contains(b) || ip[a] != iq[b] {
            continue;
        }
        let consistent = order[..k].iter().all(|&c| {
            let d = map[c];
            p.le(a, c) == q.le(b, d) && p.le(c, a) == q.le(d, b)
        });
        if !consistent {
            continue;
        }
        map[a] = b;
        used.insert(b);
        if extend(p, q, ip, iq, order, k + 1, map, used) {
            return true;
        }
        used.remove(b);
        map[a] = usize::MAX;
    }
    false
}

/// Checks that `map` is a bijection `P -> Q` preserving and reflecting `<=`.
pub fn is_isomorphism(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let image: BitSet = map.iter().copied().collect();
    if image != q.carrier() {
        return false;
    }
    (0..p.len()).all(|a| (0..p.len()).all(|b| p.le(a, b) == q.le(map[a], map[b])))
}

/// One poset per isomorphism class of `n`-element posets, labelled `"0".."n-1"`.
///
/// Classes are generated by adding a new maximal element above each down-set
/// of every `(n-1)`-element class, then deduplicated by isomorphism.
pub fn enumerate_posets(n: usize, max_n: usize) -> Result<Vec<Poset>> {
    Ok(enumerate_posets_up_to(n, max_n)?.pop().unwrap_or_default())
}

/// Classes for every size `1..=n`, indexed by `size - 1`.
pub fn enumerate_posets_up_to(n: usize, max_n: usize) -> Result<Vec<Vec<Poset>>> {
    if n > max_n {
        return Err(Error::BoundExceeded {
            what: "catalog size",
            limit: max_n,
        });
    }
    let mut levels: Vec<Vec<Poset>> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(levels);
    }
    levels.push(vec![Poset::from_fn(1, |_, _| true).expect("singleton")]);
    for size in 2..=n {
        let labels: Vec<String> = (0..size).map(|i| i.to_string()).collect();
        let mut buckets: HashMap<Vec<[usize; 4]>, Vec<usize>> = HashMap::new();
        let mut classes: Vec<Poset> = Vec::new();
        for base in &levels[size - 2] {
            let downs = base
                .up_sets(usize::MAX)
                .expect("uncapped")
                .into_iter()
                .map(|u| u.complement(base.len()));
            for below in downs {
                let new = size - 1;
                let candidate = Poset::from_relation(labels.clone(), |i, j| {
                    if j == new {
                        i == new || below.contains(i)
                    } else {
                        i != new && base.le(i, j)
                    }
                })
                .expect("extension by a maximal element is a poset");
                let bucket = buckets.entry(signature(&candidate)).or_default();
                if bucket
                    .iter()
                    .all(|&c| are_isomorphic(&classes[c], &candidate).is_none())
                {
                    bucket.push(classes.len());
                    classes.push(candidate);
                }
            }
        }
        levels.push(classes);
    }
    Ok(levels)
}

/// Frequently used small posets. Element 0 is the bottom where one exists.
pub mod named {
    use crate::family::SubsetFamily;
    use crate::poset::Poset;

    pub fn chain(n: usize) -> Poset {
        Poset::from_fn(n, |i, j| i <= j).expect("chain")
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_fn(n, |i, j| i == j).expect("antichain")
    }

    /// The four-element Boolean algebra `0 < a, b < 1`.
    pub fn diamond() -> Poset {
        m(2)
    }

    /// `0`, `k` pairwise incomparable atoms, `1`. Atoms are labelled `a`, `b`, ...
    pub fn m(k: usize) -> Poset {
        let mut labels = vec!["0".to_string()];
        labels.extend((0..k).map(|i| ((b'a' + i as u8) as char).to_string()));
        labels.push("1".to_string());
        let top = k + 1;
        Poset::from_relation(labels, |i, j| i == j || i == 0 || j == top).expect("M_k")
    }

    /// The pentagon `0 < a < b < 1`, `0 < c < 1`.
    pub fn n5() -> Poset {
        Poset::build(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .expect("N5")
    }

    /// `a < c`, `b < c`.
    pub fn v() -> Poset {
        Poset::build(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).expect("V")
    }

    /// The Boolean algebra of subsets of a `k`-element set.
    pub fn boolean(k: usize) -> Poset {
        Poset::of_family(&SubsetFamily::power_set(k))
    }

    /// The free distributive lattice on two generators with bounds adjoined:
    /// `0 < x∧y < x, y < x∨y < 1`.
    pub fn free_distributive_2() -> Poset {
        Poset::build(
            &["0", "x^y", "x", "y", "xvy", "1"],
            &[
                ("0", "x^y"),
                ("x^y", "x"),
                ("x^y", "y"),
                ("x", "xvy"),
                ("y", "xvy"),
                ("xvy", "1"),
            ],
        )
        .expect("FD(2)")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;
    use crate::family::SubsetFamily;

    #[test]
    fn small_isomorphism_cases() {
        assert!(are_isomorphic(&chain(2), &chain(2)).is_some());
        assert!(are_isomorphic(&chain(2), &antichain(2)).is_none());
        let fam = Poset::of_family(&SubsetFamily::new(
            3,
            [BitSet::singleton(2), BitSet::from_iter([1, 2])],
        ));
        let w = are_isomorphic(&fam, &chain(2)).unwrap();
        assert!(is_isomorphism(&fam, &chain(2), &w));
    }

    #[test]
    fn witness_is_checked() {
        let d = diamond();
        let swapped = d.with_labels(vec!["0".into(), "b".into(), "a".into(), "1".into()]);
        let w = are_isomorphic(&d, &swapped).unwrap();
        assert!(is_isomorphism(&d, &swapped, &w));
        assert!(!is_isomorphism(&d, &d, &[3, 1, 2, 0]));
    }

    #[test]
    fn small_class_counts() {
        let levels = enumerate_posets_up_to(5, DEFAULT_MAX_N).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_posets(7, DEFAULT_MAX_N),
            Err(Error::BoundExceeded { .. })
        ));
        assert_eq!(enumerate_posets(7, 7).unwrap().len(), 2045);
        assert!(enumerate_posets(0, DEFAULT_MAX_N).unwrap().is_empty());
    }

    #[test]
    fn named_shapes() {
        assert_eq!(m(3).len(), 5);
        assert_eq!(boolean(3).len(), 8);
        assert!(free_distributive_2().is_distributive());
        assert!(!free_distributive_2().is_boolean());
    }
}
