use serde::Serialize;

use crate::bitset::BitSet;

/// A duplicate-free family of subsets of `{0..carrier-1}`, kept in ascending
/// bitmask order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubsetFamily {
    carrier: usize,
    members: Vec<BitSet>,
}

impl SubsetFamily {
    pub fn new(carrier: usize, members: impl IntoIterator<Item = BitSet>) -> Self {
        let mut members: Vec<BitSet> = members.into_iter().collect();
        members.sort();
        members.dedup();
        Self { carrier, members }
    }

    pub fn empty(carrier: usize) -> Self {
        Self {
            carrier,
            members: Vec::new(),
        }
    }

    /// All `2^m` subsets of the carrier.
    pub fn power_set(m: usize) -> Self {
        assert!(m < 32, "power set of {m} elements is too large");
        Self {
            carrier: m,
            members: (0..1u64 << m).map(BitSet::from_mask).collect(),
        }
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn members(&self) -> &[BitSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &BitSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    pub fn position(&self, set: &BitSet) -> Option<usize> {
        self.members.binary_search(set).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitSet> {
        self.members.iter()
    }

    /// The member index bound check used by closure construction.
    pub(crate) fn first_out_of_range(&self) -> Option<usize> {
        self.members
            .iter()
            .map(BitSet::bound)
            .find(|&b| b > self.carrier)
            .map(|b| b - 1)
    }
}

impl<'a> IntoIterator for &'a SubsetFamily {
    type Item = &'a BitSet;
    type IntoIter = std::slice::Iter<'a, BitSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
