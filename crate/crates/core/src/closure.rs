//! Closure operators given by a base on a finite carrier.
//!
//! The closed sets of `clos(K)` are the intersections of members of `K`,
//! together with the whole carrier (the empty intersection). `apply(X)` is the
//! intersection of the base members containing `X`.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::bitset::BitSet;
use crate::dual::Subspace;
use crate::error::{Error, Result};
use crate::family::SubsetFamily;

#[derive(Clone, Debug)]
pub struct ClosureOperator {
    carrier: usize,
    base: SubsetFamily,
    closed: OnceLock<SubsetFamily>,
}

impl ClosureOperator {
    pub fn from_base(carrier: usize, base: SubsetFamily) -> Result<Self> {
        if base.carrier() != carrier {
            return Err(Error::CarrierMismatch(base.carrier(), carrier));
        }
        if let Some(member) = base.first_out_of_range() {
            return Err(Error::MemberOutOfRange { member, carrier });
        }
        Ok(Self {
            carrier,
            base,
            closed: OnceLock::new(),
        })
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn base(&self) -> &SubsetFamily {
        &self.base
    }

    /// Smallest closed superset of `x`.
    pub fn apply(&self, x: &BitSet) -> BitSet {
        let mut acc = BitSet::full(self.carrier);
        for b in &self.base {
            if x.is_subset(b) {
                acc.intersect_with(b);
            }
        }
        acc
    }

    pub fn is_closed(&self, x: &BitSet) -> bool {
        self.apply(x) == *x
    }

    pub fn is_open(&self, x: &BitSet) -> bool {
        self.is_closed(&x.complement(self.carrier))
    }

    /// The Moore family of closed sets, computed once on first use.
    pub fn closed_sets(&self) -> &SubsetFamily {
        self.closed.get_or_init(|| {
            let full = BitSet::full(self.carrier);
            let mut seen: HashSet<BitSet> = HashSet::from([full.clone()]);
            let mut members = vec![full];
            for b in &self.base {
                let fresh: Vec<BitSet> = members.iter().map(|m| m.intersection(b)).collect();
                for f in fresh {
                    if seen.insert(f.clone()) {
                        members.push(f);
                    }
                }
            }
            SubsetFamily::new(self.carrier, members)
        })
    }

    /// `C(∅) = ∅`.
    pub fn is_exact(&self) -> bool {
        self.apply(&BitSet::new()).is_empty()
    }

    /// `C(X ∪ Y) = C(X) ∪ C(Y)` for all `X`, `Y`. For a closure operator this
    /// holds exactly when the union of any two closed sets is closed, which is
    /// what gets checked.
    pub fn is_topological(&self) -> bool {
        self.topology_witness().is_none()
    }

    /// Two closed sets whose union is not closed, if any.
    pub fn topology_witness(&self) -> Option<(BitSet, BitSet)> {
        let closed = self.closed_sets();
        let members = closed.members();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if !closed.contains(&a.union(b)) {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    /// Sets that are closed with a closed complement.
    pub fn clopen_sets(&self) -> SubsetFamily {
        let closed = self.closed_sets();
        SubsetFamily::new(
            self.carrier,
            closed
                .iter()
                .filter(|x| closed.contains(&x.complement(self.carrier)))
                .cloned(),
        )
    }

    /// Same closed-set family.
    pub fn same_as(&self, other: &Self) -> Result<bool> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch(self.carrier, other.carrier));
        }
        Ok(self.closed_sets() == other.closed_sets())
    }
}

/// Sets closed in `c1` whose complement is closed in `c2`.
pub fn c1o2_family(c1: &ClosureOperator, c2: &ClosureOperator) -> Result<SubsetFamily> {
    if c1.carrier != c2.carrier {
        return Err(Error::CarrierMismatch(c1.carrier, c2.carrier));
    }
    let m = c1.carrier;
    Ok(SubsetFamily::new(
        m,
        c1.closed_sets()
            .iter()
            .filter(|x| c2.is_closed(&x.complement(m)))
            .cloned(),
    ))
}

pub fn closures_equal(c1: &ClosureOperator, c2: &ClosureOperator) -> Result<bool> {
    c1.same_as(c2)
}

/// The pair `(C1, C2)` induced on a subspace: bases `{UP_A(p)}` and `{LO_A(p)}`.
pub fn closures_of_subspace(space: &Subspace) -> (ClosureOperator, ClosureOperator) {
    let m = space.len();
    let n = space.poset().len();
    let ups: Vec<BitSet> = (0..n).map(|p| space.up(p)).collect();
    let los: Vec<BitSet> = ups.iter().map(|u| u.complement(m)).collect();
    let c1 = ClosureOperator::from_base(m, SubsetFamily::new(m, ups))
        .expect("indices lie in the subspace");
    let c2 = ClosureOperator::from_base(m, SubsetFamily::new(m, los))
        .expect("indices lie in the subspace");
    (c1, c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;
    use crate::dual::dual_space;

    fn fam(m: usize, xs: &[&[usize]]) -> SubsetFamily {
        SubsetFamily::new(m, xs.iter().map(|s| s.iter().copied().collect::<BitSet>()))
    }

    fn op(m: usize, xs: &[&[usize]]) -> ClosureOperator {
        ClosureOperator::from_base(m, fam(m, xs)).unwrap()
    }

    /// Oracle: closed sets as fixed points of `apply` over the power set.
    fn closed_by_fixpoints(c: &ClosureOperator) -> SubsetFamily {
        let m = c.carrier();
        SubsetFamily::new(
            m,
            (0..1u64 << m)
                .map(BitSet::from_mask)
                .filter(|x| c.apply(x) == *x),
        )
    }

    #[test]
    fn discrete_closure() {
        // Every subset is an intersection of co-singletons.
        let c = op(3, &[&[1, 2], &[0, 2], &[0, 1]]);
        for x in SubsetFamily::power_set(3).iter() {
            assert_eq!(c.apply(x), *x);
        }
        assert!(c.is_exact());
        assert!(c.is_topological());
        assert_eq!(c1o2_family(&c, &c).unwrap(), SubsetFamily::power_set(3));
    }

    #[test]
    fn singleton_base_closes_only_singletons() {
        let c = op(3, &[&[0], &[1], &[2]]);
        assert_eq!(
            c.closed_sets(),
            &fam(3, &[&[], &[0], &[1], &[2], &[0, 1, 2]])
        );
        assert_eq!(c.apply(&BitSet::from_iter([0, 1])), BitSet::full(3));
        assert!(c.is_exact());
        assert!(!c.is_topological());
    }

    #[test]
    fn empty_base() {
        let c = op(3, &[]);
        assert_eq!(c.closed_sets(), &fam(3, &[&[0, 1, 2]]));
        assert_eq!(c.apply(&BitSet::new()), BitSet::full(3));
        assert!(!c.is_exact());
    }

    #[test]
    fn two_member_base() {
        let c = op(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(
            c.closed_sets(),
            &fam(3, &[&[0, 1, 2], &[0, 1], &[1, 2], &[1]])
        );
        assert_eq!(c.apply(&BitSet::new()), BitSet::singleton(1));
        assert_eq!(c.apply(&BitSet::full(3)), BitSet::full(3));
        assert_eq!(c.apply(&BitSet::singleton(0)), BitSet::from_iter([0, 1]));
        assert_eq!(c.closed_sets(), &closed_by_fixpoints(&c));
    }

    #[test]
    fn out_of_range_base() {
        let e = ClosureOperator::from_base(2, fam(2, &[&[0, 5]])).unwrap_err();
        assert!(matches!(
            e,
            Error::MemberOutOfRange {
                member: 5,
                carrier: 2
            }
        ));
        let e = ClosureOperator::from_base(3, fam(2, &[])).unwrap_err();
        assert!(matches!(e, Error::CarrierMismatch(2, 3)));
        assert!(c1o2_family(&op(2, &[]), &op(3, &[])).is_err());
        assert!(closures_equal(&op(2, &[]), &op(3, &[])).is_err());
    }

    #[test]
    fn clopen_sets_come_in_complement_pairs() {
        let c = op(4, &[&[0, 1], &[2, 3], &[0]]);
        let clopen = c.clopen_sets();
        for x in &clopen {
            assert!(clopen.contains(&x.complement(4)));
        }
    }

    #[test]
    fn non_topological_example() {
        // {0} and {1} closed, {0,1} not.
        let c = op(3, &[&[0], &[1]]);
        assert!(!c.is_topological());
        let (a, b) = c.topology_witness().unwrap();
        assert!(!c.is_closed(&a.union(&b)));
    }

    #[test]
    fn two_chain_closures() {
        // points: 0 = const 0, 1 = χ{1}, 2 = const 1
        let a = dual_space(&named::chain(2)).unwrap();
        let (c1, c2) = closures_of_subspace(&a);
        assert_eq!(c1.base(), &fam(3, &[&[2], &[1, 2]]));
        assert_eq!(c2.base(), &fam(3, &[&[0, 1], &[0]]));
        assert_eq!(c1o2_family(&c1, &c2).unwrap(), fam(3, &[&[2], &[1, 2]]));
        assert!(!closures_equal(&c1, &c2).unwrap());
    }

    #[test]
    fn c1o2_matches_power_set_definition() {
        for p in [named::chain(2), named::v(), named::diamond(), named::n5()] {
            let a = dual_space(&p).unwrap();
            let (c1, c2) = closures_of_subspace(&a);
            let m = a.len();
            let by_definition = SubsetFamily::new(
                m,
                (0..1u64 << m)
                    .map(BitSet::from_mask)
                    .filter(|x| c1.apply(x) == *x && c2.apply(&x.complement(m)) == x.complement(m)),
            );
            assert_eq!(c1o2_family(&c1, &c2).unwrap(), by_definition);
            assert_eq!(c1.closed_sets(), &closed_by_fixpoints(&c1));
            assert_eq!(c2.closed_sets(), &closed_by_fixpoints(&c2));
        }
    }

    #[test]
    fn singleton_closures() {
        let a = dual_space(&named::chain(1)).unwrap();
        let (c1, c2) = closures_of_subspace(&a);
        assert_eq!(c1.base(), &fam(2, &[&[1]]));
        assert_eq!(c2.base(), &fam(2, &[&[0]]));
    }
}
