//! The algebraic dual `P*` of a finite poset and its subspaces.
//!
//! A point of `P*` is an isotone map `P -> 2`, stored as its one-set (the
//! preimage of 1), which is an up-set of `P`. Its kernel is the complement.
//! A [`Subspace`] is a duplicate-free, bitmask-sorted list of such points over
//! a shared poset.

use std::sync::Arc;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::family::SubsetFamily;
use crate::ortho::OrthoMap;
use crate::poset::Poset;

/// Default cap on the number of up-sets enumerated for a dual space.
pub const DEFAULT_DUAL_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DualPoint(BitSet);

impl DualPoint {
    /// Wraps `one_set`, checking that it is an up-set of `poset`.
    pub fn new(poset: &Poset, one_set: BitSet) -> Option<Self> {
        (one_set.bound() <= poset.len() && poset.is_up_set(&one_set)).then_some(Self(one_set))
    }

    pub fn one_set(&self) -> &BitSet {
        &self.0
    }

    pub fn kernel(&self, n: usize) -> BitSet {
        self.0.complement(n)
    }

    /// The value `x(p)`.
    #[inline]
    pub fn value(&self, p: usize) -> bool {
        self.0.contains(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    poset: Arc<Poset>,
    points: Vec<DualPoint>,
}

/// Whether a family collects kernels or co-kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Ideal,
    Filter,
}

/// The ideals (or filters) with respect to a subspace, as subsets of the
/// poset's carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealFamily {
    pub role: Role,
    pub members: SubsetFamily,
}

/// A generated ideal or filter. When no member of the family contains the
/// generators, `set` is the whole carrier and `no_container` is raised. The
/// whole carrier is itself a member, so this only happens for generators
/// outside the carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generated {
    pub set: BitSet,
    pub no_container: bool,
}

/// The full dual space `P*`: every up-set of `poset`, once.
pub fn dual_space(poset: &Poset) -> Result<Subspace> {
    dual_space_capped(poset, DEFAULT_DUAL_CAP)
}

pub fn dual_space_capped(poset: &Poset, cap: usize) -> Result<Subspace> {
    let points = poset.up_sets(cap)?.into_iter().map(DualPoint).collect();
    Ok(Subspace {
        poset: Arc::new(poset.clone()),
        points,
    })
}

/// The orthodual space: points with `x(p') = 1 - x(p)` for every `p`.
pub fn orthodual_space(poset: &Poset, ortho: &OrthoMap) -> Result<Subspace> {
    Ok(orthodual_within(&dual_space(poset)?, ortho))
}

/// The orthodual points of an already computed dual space.
pub fn orthodual_within(dual: &Subspace, ortho: &OrthoMap) -> Subspace {
    let n = dual.poset().len();
    dual.filter(|x| (0..n).all(|p| x.value(p) != x.value(ortho.apply(p))))
}

/// All lattice morphisms `L -> 2`, constants included.
pub fn lattice_dual(lattice: &Poset) -> Result<Subspace> {
    if !lattice.is_lattice() {
        return Err(Error::NotALattice);
    }
    lattice_dual_within(&dual_space(lattice)?)
}

/// The lattice morphisms among the points of an already computed dual space.
pub fn lattice_dual_within(dual: &Subspace) -> Result<Subspace> {
    let lattice = dual.poset();
    let ops = lattice.lattice_ops().ok_or(Error::NotALattice)?;
    let n = lattice.len();
    Ok(dual.filter(|x| {
        (0..n).all(|p| {
            (p..n).all(|q| {
                x.value(ops.meet(p, q)) == (x.value(p) && x.value(q))
                    && x.value(ops.join(p, q)) == (x.value(p) || x.value(q))
            })
        })
    }))
}

impl Subspace {
    /// Builds a subspace from arbitrary one-sets; rejects any that are not
    /// up-sets of `poset`.
    pub fn from_one_sets(
        poset: &Poset,
        one_sets: impl IntoIterator<Item = BitSet>,
    ) -> Result<Self> {
        let mut points = Vec::new();
        for s in one_sets {
            let point =
                DualPoint::new(poset, s.clone()).ok_or_else(|| Error::VerificationFailed {
                    check: "dual point",
                    detail: format!("{s} is not an up-set"),
                })?;
            points.push(point);
        }
        points.sort();
        points.dedup();
        Ok(Self {
            poset: Arc::new(poset.clone()),
            points,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn points(&self) -> &[DualPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index set of all points, `{0..len-1}`.
    pub fn all(&self) -> BitSet {
        BitSet::full(self.len())
    }

    pub fn position(&self, point: &DualPoint) -> Option<usize> {
        self.points.binary_search(point).ok()
    }

    /// The sub-subspace on the point indices in `selection`.
    pub fn select(&self, selection: &BitSet) -> Self {
        Self {
            poset: Arc::clone(&self.poset),
            points: selection.iter().map(|i| self.points[i].clone()).collect(),
        }
    }

    pub fn filter(&self, keep: impl Fn(&DualPoint) -> bool) -> Self {
        Self {
            poset: Arc::clone(&self.poset),
            points: self.points.iter().filter(|x| keep(x)).cloned().collect(),
        }
    }

    /// Indices (into `self`) of the points of `other`, if `other ⊆ self`.
    pub fn indices_of(&self, other: &Subspace) -> Option<BitSet> {
        other.points.iter().map(|x| self.position(x)).collect()
    }

    /// `UP_A(p)`: indices of the points with `x(p) = 1`.
    pub fn up(&self, p: usize) -> BitSet {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, x)| x.value(p))
            .map(|(i, _)| i)
            .collect()
    }

    /// `LO_A(p)`: indices of the points with `x(p) = 0`.
    pub fn lo(&self, p: usize) -> BitSet {
        self.up(p).complement(self.len())
    }

    /// `I(B)`: the intersection of the kernels of the selected points. The
    /// empty selection gives the whole carrier.
    pub fn ideal_of(&self, selection: &BitSet) -> BitSet {
        let n = self.poset.len();
        let mut acc = BitSet::full(n);
        for i in selection.iter() {
            acc.intersect_with(&self.points[i].kernel(n));
        }
        acc
    }

    /// `F(B)`: the intersection of the one-sets of the selected points. The
    /// empty selection gives the whole carrier.
    pub fn filter_of(&self, selection: &BitSet) -> BitSet {
        let mut acc = BitSet::full(self.poset.len());
        for i in selection.iter() {
            acc.intersect_with(self.points[i].one_set());
        }
        acc
    }

    pub fn ideals_wrt(&self) -> IdealFamily {
        let n = self.poset.len();
        IdealFamily {
            role: Role::Ideal,
            members: intersection_closure(n, self.points.iter().map(|x| x.kernel(n))),
        }
    }

    pub fn filters_wrt(&self) -> IdealFamily {
        IdealFamily {
            role: Role::Filter,
            members: intersection_closure(
                self.poset.len(),
                self.points.iter().map(|x| x.one_set().clone()),
            ),
        }
    }

    /// Smallest ideal with respect to this subspace containing `q`.
    pub fn generated_ideal(&self, q: &BitSet) -> Generated {
        smallest_containing(&self.ideals_wrt().members, q)
    }

    /// Smallest filter with respect to this subspace containing `q`.
    pub fn generated_filter(&self, q: &BitSet) -> Generated {
        smallest_containing(&self.filters_wrt().members, q)
    }

    /// A pair `p ≰ q` that no point separates (`x(p) = 1`, `x(q) = 0`), if any.
    pub fn fullness_witness(&self) -> Option<(usize, usize)> {
        let n = self.poset.len();
        for p in 0..n {
            for q in 0..n {
                if !self.poset.le(p, q) && !self.points.iter().any(|x| x.value(p) && !x.value(q)) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub fn is_full(&self) -> bool {
        self.fullness_witness().is_none()
    }

    /// A disjoint ideal/filter pair that no point separates, if any.
    pub fn separation_witness(&self) -> Option<(BitSet, BitSet)> {
        let ideals = self.ideals_wrt().members;
        let filters = self.filters_wrt().members;
        for i in &ideals {
            for f in &filters {
                if i.is_disjoint(f) && !self.separates(i, f) {
                    return Some((i.clone(), f.clone()));
                }
            }
        }
        None
    }

    pub fn is_separating(&self) -> bool {
        self.separation_witness().is_none()
    }

    /// Whether some point vanishes on `ideal` and is 1 on all of `filter`.
    pub fn separates(&self, ideal: &BitSet, filter: &BitSet) -> bool {
        self.points
            .iter()
            .any(|x| x.one_set().is_disjoint(ideal) && filter.is_subset(x.one_set()))
    }

    /// Drops the constant maps. Requires a bounded poset.
    pub fn remove_constants(&self) -> Result<Self> {
        if !self.poset.is_bounded() {
            return Err(Error::NotBounded);
        }
        let n = self.poset.len();
        Ok(self.filter(|x| !x.one_set().is_empty() && x.one_set().len() != n))
    }

    /// JSON form: each point's one-set as a label array in carrier order.
    pub fn to_json(&self) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|x| {
                x.one_set()
                    .iter()
                    .map(|i| self.poset.label(i).to_string())
                    .collect()
            })
            .collect()
    }
}

/// Intersections of subfamilies of `generators`, the empty subfamily
/// contributing the whole carrier.
fn intersection_closure(n: usize, generators: impl Iterator<Item = BitSet>) -> SubsetFamily {
    let mut members = vec![BitSet::full(n)];
    let mut seen: std::collections::HashSet<BitSet> = members.iter().cloned().collect();
    for g in generators {
        let fresh: Vec<BitSet> = members.iter().map(|m| m.intersection(&g)).collect();
        for f in fresh {
            if seen.insert(f.clone()) {
                members.push(f);
            }
        }
    }
    SubsetFamily::new(n, members)
}

fn smallest_containing(family: &SubsetFamily, q: &BitSet) -> Generated {
    family
        .iter()
        .filter(|m| q.is_subset(m))
        .fold(None::<BitSet>, |acc, m| {
            Some(acc.map_or_else(|| m.clone(), |a| a.intersection(m)))
        })
        .map_or_else(
            || Generated {
                set: BitSet::full(family.carrier()),
                no_container: true,
            },
            |set| Generated {
                set,
                no_container: false,
            },
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;
    use crate::ortho::find_orthocomplementations;

    fn sets(xs: &[&[usize]]) -> Vec<BitSet> {
        xs.iter().map(|s| s.iter().copied().collect()).collect()
    }

    fn one_sets(a: &Subspace) -> Vec<BitSet> {
        a.points().iter().map(|x| x.one_set().clone()).collect()
    }

    /// Oracle: filter all 2^n subsets by up-closure.
    fn brute_up_sets(p: &Poset) -> Vec<BitSet> {
        let mut v: Vec<BitSet> = (0..1u64 << p.len())
            .map(BitSet::from_mask)
            .filter(|s| {
                s.iter()
                    .all(|i| (0..p.len()).all(|j| !p.le(i, j) || s.contains(j)))
            })
            .collect();
        v.sort();
        v
    }

    #[test]
    fn dual_space_sizes() {
        assert_eq!(
            one_sets(&dual_space(&named::chain(2)).unwrap()),
            sets(&[&[], &[1], &[0, 1]])
        );
        assert_eq!(dual_space(&named::antichain(2)).unwrap().len(), 4);
        let v = named::v();
        assert_eq!(brute_up_sets(&v).len(), 5);
        assert_eq!(one_sets(&dual_space(&v).unwrap()), brute_up_sets(&v));
    }

    #[test]
    fn dual_space_matches_brute_force_on_catalog() {
        for level in crate::catalog::enumerate_posets_up_to(5, 6).unwrap() {
            for p in level {
                assert_eq!(one_sets(&dual_space(&p).unwrap()), brute_up_sets(&p));
            }
        }
    }

    #[test]
    fn dual_cap_is_enforced() {
        let wide = named::antichain(12);
        assert!(matches!(
            dual_space_capped(&wide, 1000),
            Err(Error::BoundExceeded { .. })
        ));
        assert_eq!(dual_space_capped(&wide, 4096).unwrap().len(), 4096);
    }

    #[test]
    fn orthodual_examples() {
        let d = named::diamond();
        let f = &find_orthocomplementations(&d)[0];
        let od = orthodual_space(&d, f).unwrap();
        // {a,1} and {b,1}
        assert_eq!(one_sets(&od), sets(&[&[1, 3], &[2, 3]]));

        let c2 = named::chain(2);
        let f = &find_orthocomplementations(&c2)[0];
        assert_eq!(one_sets(&orthodual_space(&c2, f).unwrap()), sets(&[&[1]]));
    }

    #[test]
    fn orthodual_of_m4_by_exhaustive_filter() {
        let m4 = named::m(4);
        let f = OrthoMap::from_label_pairs(&m4, &[("0", "1"), ("a", "b"), ("c", "d")]).unwrap();
        let expected: Vec<BitSet> = brute_up_sets(&m4)
            .into_iter()
            .filter(|s| (0..m4.len()).all(|p| s.contains(p) != s.contains(f.apply(p))))
            .collect();
        // choose one of a/b and one of c/d, plus the top
        assert_eq!(expected.len(), 4);
        let od = orthodual_space(&m4, &f).unwrap();
        assert_eq!(one_sets(&od), expected);
        for x in od.points() {
            let n = m4.len();
            let image: BitSet = x.kernel(n).iter().map(|p| f.apply(p)).collect();
            assert_eq!(&image, x.one_set());
        }
    }

    #[test]
    fn lattice_dual_examples() {
        assert_eq!(lattice_dual(&named::diamond()).unwrap().len(), 4);
        let m3 = lattice_dual(&named::m(3)).unwrap();
        assert_eq!(one_sets(&m3), sets(&[&[], &[0, 1, 2, 3, 4]]));
        assert_eq!(lattice_dual(&named::chain(3)).unwrap().len(), 4);
        assert!(matches!(lattice_dual(&named::v()), Err(Error::NotALattice)));
    }

    #[test]
    fn ideal_and_filter_of() {
        let a = dual_space(&named::chain(2)).unwrap();
        // points: 0 = const 0, 1 = χ{1}, 2 = const 1
        assert_eq!(a.ideal_of(&BitSet::singleton(0)), BitSet::from_iter([0, 1]));
        assert_eq!(a.ideal_of(&BitSet::singleton(1)), BitSet::singleton(0));
        assert_eq!(a.filter_of(&BitSet::singleton(1)), BitSet::singleton(1));
        assert_eq!(a.ideal_of(&BitSet::new()), BitSet::full(2));
        assert_eq!(a.filter_of(&BitSet::new()), BitSet::full(2));
    }

    #[test]
    fn ideal_families() {
        let a = dual_space(&named::chain(2)).unwrap();
        assert_eq!(
            a.ideals_wrt().members.members(),
            sets(&[&[], &[0], &[0, 1]]).as_slice()
        );

        let d = named::diamond();
        let od = orthodual_space(&d, &find_orthocomplementations(&d)[0]).unwrap();
        assert_eq!(
            od.ideals_wrt().members.members(),
            sets(&[&[0], &[0, 1], &[0, 2], &[0, 1, 2, 3]]).as_slice()
        );

        let s = dual_space(&named::chain(1)).unwrap();
        assert_eq!(
            s.ideals_wrt().members.members(),
            sets(&[&[], &[0]]).as_slice()
        );
    }

    #[test]
    fn generated_ideals() {
        let a = dual_space(&named::chain(2)).unwrap();
        assert_eq!(
            a.generated_ideal(&BitSet::singleton(0)).set,
            BitSet::singleton(0)
        );
        assert_eq!(a.generated_ideal(&BitSet::new()).set, BitSet::new());

        let d = named::diamond();
        let od = orthodual_space(&d, &find_orthocomplementations(&d)[0]).unwrap();
        assert_eq!(
            od.generated_ideal(&BitSet::singleton(1)).set,
            BitSet::from_iter([0, 1])
        );
        assert_eq!(od.generated_ideal(&BitSet::new()).set, BitSet::singleton(0));
        assert_eq!(
            od.generated_filter(&BitSet::singleton(2)).set,
            BitSet::from_iter([2, 3])
        );
        // Only the whole carrier contains the top.
        let top = od.generated_ideal(&BitSet::singleton(3));
        assert!(!top.no_container);
        assert_eq!(top.set, BitSet::full(4));
        let flagged = od.generated_ideal(&BitSet::singleton(7));
        assert!(flagged.no_container);
    }

    #[test]
    fn ideals_wrt_full_dual_are_order_ideals() {
        for level in crate::catalog::enumerate_posets_up_to(5, 6).unwrap() {
            for p in level {
                let a = dual_space(&p).unwrap();
                let downs: Vec<BitSet> = brute_up_sets(&p)
                    .into_iter()
                    .map(|u| u.complement(p.len()))
                    .collect();
                assert_eq!(a.ideals_wrt().members, SubsetFamily::new(p.len(), downs));
            }
        }
    }

    #[test]
    fn fullness() {
        for p in [named::chain(3), named::v(), named::m(3), named::n5()] {
            assert!(dual_space(&p).unwrap().is_full());
        }
        let m3 = named::m(3);
        let ld = lattice_dual(&m3).unwrap();
        let (p, q) = ld.fullness_witness().unwrap();
        assert!(!m3.le(p, q));
        let d = named::diamond();
        assert!(orthodual_space(&d, &find_orthocomplementations(&d)[0])
            .unwrap()
            .is_full());
    }

    #[test]
    fn separation() {
        for p in [named::chain(3), named::v(), named::m(3), named::n5()] {
            assert!(dual_space(&p).unwrap().is_separating());
        }
        assert!(lattice_dual(&named::free_distributive_2())
            .unwrap()
            .is_separating());

        // Only the constant 1: ideals {∅, P}, filters {P}; the one disjoint
        // pair (∅, P) is separated by the constant itself.
        let c2 = named::chain(2);
        let only_top = Subspace::from_one_sets(&c2, [BitSet::full(2)]).unwrap();
        assert_eq!(
            only_top.ideals_wrt().members.members(),
            sets(&[&[], &[0, 1]]).as_slice()
        );
        assert_eq!(
            only_top.filters_wrt().members.members(),
            sets(&[&[0, 1]]).as_slice()
        );
        assert!(only_top.is_separating());

        // 0 < 1, 0 < 2, and 3 isolated. The kernels of χ{1} and χ{2} meet in
        // {0, 3}, the one-sets {0,1,2} and {1,2,3} in {1, 2}, and no point
        // has one-set exactly {1, 2}.
        let p = Poset::build(&["0", "1", "2", "3"], &[("0", "1"), ("0", "2")]).unwrap();
        let a = Subspace::from_one_sets(
            &p,
            [&[1][..], &[2], &[0, 1, 2], &[1, 2, 3]].map(|s| s.iter().copied().collect::<BitSet>()),
        )
        .unwrap();
        assert!(!a.separates(&BitSet::from_iter([0, 3]), &BitSet::from_iter([1, 2])));
        assert!(!a.is_separating());
    }

    #[test]
    fn remove_constants_cases() {
        let c2 = dual_space(&named::chain(2)).unwrap();
        assert_eq!(c2.remove_constants().unwrap().len(), 1);
        let b4 = lattice_dual(&named::diamond())
            .unwrap()
            .remove_constants()
            .unwrap();
        assert_eq!(b4.len(), 2);
        assert_eq!(b4.remove_constants().unwrap(), b4);
        assert!(matches!(
            dual_space(&named::v()).unwrap().remove_constants(),
            Err(Error::NotBounded)
        ));
    }

    #[test]
    fn json_export_uses_labels() {
        let d = named::diamond();
        let od = orthodual_space(&d, &find_orthocomplementations(&d)[0]).unwrap();
        assert_eq!(
            serde_json::to_string(&od.to_json()).unwrap(),
            r#"[["a","1"],["b","1"]]"#
        );
    }
}
