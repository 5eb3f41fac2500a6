//! Finite posets over the index carrier `0..n`, with labels kept only for I/O.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::family::SubsetFamily;

/// A finite partial order. Row `up[i]` holds every `j` with `i <= j`, row
/// `down[i]` every `j` with `j <= i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

/// Interchange format: `{"elements": [...], "le": [[a, b], ...]}`. The `le`
/// list may be any generating set of the order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `pairs` over `labels`.
    pub fn build<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyPoset);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_ref(), i).is_some() {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
        }
        let lookup = |l: &S| {
            index
                .get(l.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))
        };
        let n = labels.len();
        let mut up: Vec<BitSet> = (0..n).map(BitSet::singleton).collect();
        for (a, b) in pairs {
            let (a, b) = (lookup(a)?, lookup(b)?);
            up[a].insert(b);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter().filter(|&j| j > i) {
                if up[j].contains(i) {
                    return Err(Error::Cycle(
                        labels[i].as_ref().to_string(),
                        labels[j].as_ref().to_string(),
                    ));
                }
            }
        }
        let labels = labels.iter().map(|l| l.as_ref().to_string()).collect();
        Ok(Self::from_up_rows_unchecked(labels, up))
    }

    /// Builds a poset from a full relation, `le(i, j)` meaning `i <= j`.
    /// The relation must already be a partial order.
    pub fn from_relation(labels: Vec<String>, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        let up: Vec<BitSet> = (0..n)
            .map(|i| (0..n).filter(|&j| le(i, j)).collect())
            .collect();
        for i in 0..n {
            if !up[i].contains(i) {
                return Err(Error::NotAPartialOrder(format!(
                    "not reflexive at `{}`",
                    labels[i]
                )));
            }
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::NotAPartialOrder(format!(
                        "`{}` and `{}` violate antisymmetry",
                        labels[i], labels[j]
                    )));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::NotAPartialOrder(format!(
                        "not transitive through `{}` <= `{}`",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Self::from_up_rows_unchecked(labels, up))
    }

    /// Same as [`Poset::from_relation`] with labels `"0".."n-1"`.
    pub fn from_fn(n: usize, le: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::from_relation((0..n).map(|i| i.to_string()).collect(), le)
    }

    pub(crate) fn from_up_rows_unchecked(labels: Vec<String>, up: Vec<BitSet>) -> Self {
        let n = labels.len();
        let mut down = vec![BitSet::new(); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        let p = Self { labels, up, down };
        debug_assert!(p.check_axioms().is_ok());
        p
    }

    /// Re-checks reflexivity, antisymmetry and transitivity.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        for i in 0..self.len() {
            if !self.le(i, i) {
                return Err(format!("not reflexive at {i}"));
            }
            for j in self.up[i].iter() {
                if j != i && self.le(j, i) {
                    return Err(format!("antisymmetry fails for {i}, {j}"));
                }
                if !self.up[j].is_subset(&self.up[i]) {
                    return Err(format!("transitivity fails through {i} <= {j}"));
                }
            }
        }
        Ok(())
    }

    /// The poset of the family's members ordered by inclusion. Members are
    /// labelled `{i,j,..}`.
    pub fn of_family(family: &SubsetFamily) -> Self {
        let members = family.members();
        let labels = members.iter().map(|m| m.to_string()).collect();
        let up = members
            .iter()
            .map(|a| {
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| a.is_subset(b))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Self::from_up_rows_unchecked(labels, up)
    }

    pub fn from_json(json: &PosetJson) -> Result<Self> {
        Self::build(&json.elements, &json.le)
    }

    /// JSON with covering pairs as the generating relation.
    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            le: self
                .covers()
                .into_iter()
                .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        Self {
            labels,
            ..self.clone()
        }
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.le(i, j)
    }

    /// Upper cone `{j : i <= j}`.
    pub fn up_cone(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    /// Lower cone `{j : j <= i}`.
    pub fn down_cone(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    pub fn carrier(&self) -> BitSet {
        BitSet::full(self.len())
    }

    pub fn is_up_set(&self, s: &BitSet) -> bool {
        s.iter().all(|i| self.up[i].is_subset(s))
    }

    pub fn is_down_set(&self, s: &BitSet) -> bool {
        s.iter().all(|i| self.down[i].is_subset(s))
    }

    /// Covering pairs `(low, high)` in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                if j != i && self.up[i].intersection(&self.down[j]).len() == 2 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// A linear extension: every element appears after all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].len(), i));
        order
    }

    /// Every up-set, in ascending bitmask order. Fails once more than `cap`
    /// up-sets have been produced.
    pub fn up_sets(&self, cap: usize) -> Result<Vec<BitSet>> {
        // Walking a linear extension bottom-up, an element is forced into the
        // set as soon as anything below it is in; otherwise both branches are
        // valid, so every leaf of the search is an up-set.
        let order = self.linear_extension();
        let mut out = Vec::new();
        let mut current = BitSet::new();
        self.up_sets_rec(&order, 0, &mut current, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    fn up_sets_rec(
        &self,
        order: &[usize],
        k: usize,
        current: &mut BitSet,
        out: &mut Vec<BitSet>,
        cap: usize,
    ) -> Result<()> {
        let Some(&e) = order.get(k) else {
            if out.len() >= cap {
                return Err(Error::BoundExceeded {
                    what: "up-set count",
                    limit: cap,
                });
            }
            out.push(current.clone());
            return Ok(());
        };
        let forced = self.down[e].iter().any(|d| d != e && current.contains(d));
        if !forced {
            self.up_sets_rec(order, k + 1, current, out, cap)?;
        }
        current.insert(e);
        self.up_sets_rec(order, k + 1, current, out, cap)?;
        current.remove(e);
        Ok(())
    }

    pub fn meet(&self, p: usize, q: usize) -> Option<usize> {
        let lower = self.down[p].intersection(&self.down[q]);
        lower.iter().find(|&g| lower.is_subset(&self.down[g]))
    }

    pub fn join(&self, p: usize, q: usize) -> Option<usize> {
        let upper = self.up[p].intersection(&self.up[q]);
        upper.iter().find(|&g| upper.is_subset(&self.up[g]))
    }

    pub fn top(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&i| self.down[i].len() == n)
    }

    pub fn bottom(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&i| self.up[i].len() == n)
    }

    pub fn is_bounded(&self) -> bool {
        self.top().is_some() && self.bottom().is_some()
    }

    /// Meet and join tables, if every pair has both.
    pub fn lattice_ops(&self) -> Option<LatticeOps> {
        let n = self.len();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for p in 0..n {
            for q in p..n {
                let m = self.meet(p, q)?;
                let j = self.join(p, q)?;
                meet[p * n + q] = m;
                meet[q * n + p] = m;
                join[p * n + q] = j;
                join[q * n + p] = j;
            }
        }
        Some(LatticeOps { n, meet, join })
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_ops().is_some()
    }

    /// Checks `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` over all triples.
    pub fn is_distributive(&self) -> bool {
        self.lattice_ops().is_some_and(|ops| ops.is_distributive())
    }

    pub fn is_boolean(&self) -> bool {
        let Some(ops) = self.lattice_ops() else {
            return false;
        };
        let (Some(top), Some(bottom)) = (self.top(), self.bottom()) else {
            return false;
        };
        ops.is_distributive()
            && (0..self.len())
                .all(|a| (0..self.len()).any(|b| ops.meet(a, b) == bottom && ops.join(a, b) == top))
    }
}

/// Dense meet/join tables of a finite lattice.
#[derive(Clone, Debug)]
pub struct LatticeOps {
    n: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
}

impl LatticeOps {
    #[inline]
    pub fn meet(&self, p: usize, q: usize) -> usize {
        self.meet[p * self.n + q]
    }

    #[inline]
    pub fn join(&self, p: usize, q: usize) -> usize {
        self.join[p * self.n + q]
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))
                })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;

    fn p(labels: &[&str], pairs: &[(&str, &str)]) -> Result<Poset> {
        Poset::build(labels, pairs)
    }

    #[test]
    fn builds_chain() {
        let c = p(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(c.le(0, 1) && !c.le(1, 0));
        assert_eq!(c.covers(), vec![(0, 1)]);
    }

    #[test]
    fn singleton() {
        let s = p(&["a"], &[]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.le(0, 0));
        assert_eq!(s.top(), Some(0));
        assert_eq!(s.bottom(), Some(0));
    }

    #[test]
    fn cycle_rejected() {
        let e = p(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(e, Error::Cycle(..)));
        let e = p(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        assert!(matches!(e, Error::Cycle(..)));
    }

    #[test]
    fn label_errors() {
        assert!(matches!(p(&["a"], &[("a", "z")]), Err(Error::UnknownLabel(l)) if l == "z"));
        assert!(matches!(p(&["a", "a"], &[]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(p(&[], &[]), Err(Error::EmptyPoset)));
    }

    #[test]
    fn transitive_closure_is_taken() {
        let c = p(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        assert!(c.le(0, 2));
        assert_eq!(c.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn from_relation_validates() {
        assert!(Poset::from_fn(2, |i, j| i <= j).is_ok());
        assert!(Poset::from_fn(2, |_, _| true).is_err());
        assert!(Poset::from_fn(2, |i, j| i < j).is_err());
        // 0<1, 1<2 but not 0<2
        assert!(Poset::from_fn(3, |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2)).is_err());
    }

    #[test]
    fn meets_and_joins() {
        let b4 = named::diamond();
        let (bot, a, b, top) = (0, 1, 2, 3);
        assert_eq!(b4.meet(a, b), Some(bot));
        assert_eq!(b4.join(a, b), Some(top));
        let anti = named::antichain(2);
        assert_eq!(anti.meet(0, 1), None);
        assert_eq!(anti.join(0, 1), None);
        let c3 = named::chain(3);
        assert_eq!(c3.join(0, 1), Some(1));
        assert_eq!(c3.meet(2, 1), Some(1));
    }

    #[test]
    fn structural_predicates() {
        let m3 = named::m(3);
        assert!(m3.is_lattice());
        assert!(!m3.is_distributive());
        assert!(!m3.is_boolean());
        let n5 = named::n5();
        assert!(n5.is_lattice() && !n5.is_distributive());
        let b4 = named::diamond();
        assert!(b4.is_boolean());
        assert!(!named::antichain(2).is_lattice());
        assert!(!named::antichain(2).is_distributive());
        assert!(named::chain(3).is_distributive());
        assert!(!named::chain(3).is_boolean());
        assert!(named::chain(2).is_boolean());
        assert!(named::chain(1).is_boolean());
        assert!(named::boolean(3).is_boolean());
        assert!(!named::v().is_bounded());
    }

    // Independent oracle: the lattice law checked element-wise through
    // explicit bound sets rather than the meet/join tables.
    #[test]
    fn m3_distributivity_by_triples() {
        let m3 = named::m(3);
        let n = m3.len();
        let glb = |a: usize, b: usize| {
            (0..n)
                .filter(|&x| m3.le(x, a) && m3.le(x, b))
                .find(|&x| (0..n).all(|y| !(m3.le(y, a) && m3.le(y, b)) || m3.le(y, x)))
                .unwrap()
        };
        let lub = |a: usize, b: usize| {
            (0..n)
                .filter(|&x| m3.le(a, x) && m3.le(b, x))
                .find(|&x| (0..n).all(|y| !(m3.le(a, y) && m3.le(b, y)) || m3.le(x, y)))
                .unwrap()
        };
        let mut failures = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if glb(a, lub(b, c)) != lub(glb(a, b), glb(a, c)) {
                        failures += 1;
                    }
                }
            }
        }
        assert!(failures > 0);
        assert!(!m3.is_distributive());
    }

    #[test]
    fn family_posets() {
        let chain = Poset::of_family(&SubsetFamily::new(
            2,
            [
                BitSet::new(),
                BitSet::singleton(0),
                BitSet::from_iter([0, 1]),
            ],
        ));
        assert_eq!(chain.covers(), vec![(0, 1), (1, 2)]);
        let anti = Poset::of_family(&SubsetFamily::new(
            2,
            [BitSet::singleton(0), BitSet::singleton(1)],
        ));
        assert!(anti.covers().is_empty());
        let pow = Poset::of_family(&SubsetFamily::power_set(2));
        assert!(pow.is_boolean());
        assert_eq!(pow.len(), 4);
    }

    #[test]
    fn json_round_trip() {
        let src =
            r#"{"elements":["0","a","b","1"],"le":[["0","a"],["0","b"],["a","1"],["b","1"]]}"#;
        let json: PosetJson = serde_json::from_str(src).unwrap();
        let poset = Poset::from_json(&json).unwrap();
        assert!(poset.is_boolean());
        assert_eq!(serde_json::to_string(&poset.to_json()).unwrap(), src);
    }

    #[test]
    fn linear_extension_respects_order() {
        let b8 = named::boolean(3);
        let ext = b8.linear_extension();
        let pos: Vec<usize> = {
            let mut v = vec![0; ext.len()];
            for (k, &e) in ext.iter().enumerate() {
                v[e] = k;
            }
            v
        };
        for i in 0..b8.len() {
            for j in 0..b8.len() {
                if b8.lt(i, j) {
                    assert!(pos[i] < pos[j]);
                }
            }
        }
    }
}
