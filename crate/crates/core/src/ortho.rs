//! Orthocomplementations of bounded posets.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// An orthocomplementation `p ↦ p'` stored as an index table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OrthoMap(Vec<usize>);

impl OrthoMap {
    /// Validates `table` against `poset`.
    pub fn new(poset: &Poset, table: Vec<usize>) -> Result<Self> {
        validate(poset, &table).map_err(Error::InvalidOrthoMap)?;
        Ok(Self(table))
    }

    /// Builds a map from `(p, p')` label pairs; each pair also fixes `p'' = p`.
    pub fn from_label_pairs<S: AsRef<str>>(poset: &Poset, pairs: &[(S, S)]) -> Result<Self> {
        let mut table = vec![usize::MAX; poset.len()];
        for (a, b) in pairs {
            let ia = poset
                .index_of(a.as_ref())
                .ok_or_else(|| Error::UnknownLabel(a.as_ref().to_string()))?;
            let ib = poset
                .index_of(b.as_ref())
                .ok_or_else(|| Error::UnknownLabel(b.as_ref().to_string()))?;
            table[ia] = ib;
            table[ib] = ia;
        }
        if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidOrthoMap(format!(
                "no complement given for `{}`",
                poset.label(i)
            )));
        }
        Self::new(poset, table)
    }

    pub(crate) fn new_unchecked(table: Vec<usize>) -> Self {
        Self(table)
    }

    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.0[p]
    }

    pub fn table(&self) -> &[usize] {
        &self.0
    }

    /// Label pairs `(p, p')` with `p` listed before `p'` in carrier order.
    pub fn label_pairs(&self, poset: &Poset) -> Vec<(String, String)> {
        (0..self.0.len())
            .filter(|&p| p <= self.0[p])
            .map(|p| {
                (
                    poset.label(p).to_string(),
                    poset.label(self.0[p]).to_string(),
                )
            })
            .collect()
    }
}

/// Checks involution, anti-isotonicity and the complement laws.
pub fn validate(poset: &Poset, table: &[usize]) -> std::result::Result<(), String> {
    let n = poset.len();
    if table.len() != n {
        return Err(format!(
            "table has {} entries for {n} elements",
            table.len()
        ));
    }
    if table.iter().any(|&t| t >= n) {
        return Err("table entry out of range".into());
    }
    let (Some(top), Some(bottom)) = (poset.top(), poset.bottom()) else {
        return Err("poset is not bounded".into());
    };
    for p in 0..n {
        let q = table[p];
        if table[q] != p {
            return Err(format!("not an involution at `{}`", poset.label(p)));
        }
        if poset.join(p, q) != Some(top) {
            return Err(format!(
                "`{}` ∨ its complement is not the top",
                poset.label(p)
            ));
        }
        if poset.meet(p, q) != Some(bottom) {
            return Err(format!(
                "`{}` ∧ its complement is not the bottom",
                poset.label(p)
            ));
        }
        for r in poset.up_cone(p).iter() {
            if !poset.le(table[r], q) {
                return Err(format!(
                    "not anti-isotone on `{}` <= `{}`",
                    poset.label(p),
                    poset.label(r)
                ));
            }
        }
    }
    Ok(())
}

/// Every orthocomplementation of `poset`, in lexicographic table order.
/// Empty for unbounded posets.
pub fn find_orthocomplementations(poset: &Poset) -> Vec<OrthoMap> {
    let (Some(top), Some(bottom)) = (poset.top(), poset.bottom()) else {
        return Vec::new();
    };
    let n = poset.len();
    // Candidate partners: complements in the lattice-theoretic sense.
    let partners: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            (0..n)
                .filter(|&q| poset.meet(p, q) == Some(bottom) && poset.join(p, q) == Some(top))
                .collect()
        })
        .collect();
    let mut table = vec![usize::MAX; n];
    let mut out = Vec::new();
    search(poset, &partners, &mut table, &mut BitSet::new(), &mut out);
    out.sort();
    out
}

fn search(
    poset: &Poset,
    partners: &[Vec<usize>],
    table: &mut [usize],
    assigned: &mut BitSet,
    out: &mut Vec<OrthoMap>,
) {
    let Some(p) = (0..table.len()).find(|&p| !assigned.contains(p)) else {
        debug_assert!(validate(poset, table).is_ok());
        out.push(OrthoMap::new_unchecked(table.to_vec()));
        return;
    };
    for &q in &partners[p] {
        if assigned.contains(q) {
            continue;
        }
        // Anti-isotone against everything already paired (including p <-> q).
        let ok = assigned.iter().chain([p, q]).all(|r| {
            let r_ = if r == p {
                q
            } else if r == q {
                p
            } else {
                table[r]
            };
            (!poset.le(p, r) || poset.le(r_, q))
                && (!poset.le(r, p) || poset.le(q, r_))
                && (!poset.le(q, r) || poset.le(r_, p))
                && (!poset.le(r, q) || poset.le(p, r_))
        });
        if !ok {
            continue;
        }
        table[p] = q;
        table[q] = p;
        assigned.insert(p);
        assigned.insert(q);
        search(poset, partners, table, assigned, out);
        assigned.remove(p);
        assigned.remove(q);
        table[p] = usize::MAX;
        table[q] = usize::MAX;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;

    /// Brute force over all `n!` permutations.
    fn brute_force_count(p: &Poset) -> usize {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for perm in perms(n - 1) {
                for pos in 0..=perm.len() {
                    let mut next = perm.clone();
                    next.insert(pos, n - 1);
                    out.push(next);
                }
            }
            out
        }
        perms(p.len())
            .into_iter()
            .filter(|t| validate(p, t).is_ok())
            .count()
    }

    #[test]
    fn diamond_has_one() {
        let d = named::diamond();
        let found = find_orthocomplementations(&d);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].table(), &[3, 2, 1, 0]);
        assert_eq!(brute_force_count(&d), 1);
    }

    #[test]
    fn four_chain_has_none() {
        let c = named::chain(4);
        assert!(find_orthocomplementations(&c).is_empty());
        assert_eq!(brute_force_count(&c), 0);
    }

    #[test]
    fn m4_has_three() {
        let m4 = named::m(4);
        assert_eq!(find_orthocomplementations(&m4).len(), 3);
        assert_eq!(brute_force_count(&m4), 3);
    }

    #[test]
    fn agrees_with_brute_force_on_small_catalog() {
        for level in crate::catalog::enumerate_posets_up_to(6, 6).unwrap() {
            for p in level {
                let found = find_orthocomplementations(&p);
                assert_eq!(found.len(), brute_force_count(&p), "{:?}", p.to_json());
                for f in &found {
                    assert!(validate(&p, f.table()).is_ok());
                }
            }
        }
    }

    #[test]
    fn unbounded_and_degenerate() {
        assert!(find_orthocomplementations(&named::v()).is_empty());
        let one = named::chain(1);
        assert_eq!(find_orthocomplementations(&one).len(), 1);
        let two = named::chain(2);
        assert_eq!(find_orthocomplementations(&two)[0].table(), &[1, 0]);
    }

    #[test]
    fn label_pairs_round_trip() {
        let m4 = named::m(4);
        let f = OrthoMap::from_label_pairs(&m4, &[("0", "1"), ("a", "b"), ("c", "d")]).unwrap();
        let pairs = f.label_pairs(&m4);
        assert_eq!(pairs.len(), 3);
        assert!(OrthoMap::from_label_pairs(&m4, &[("0", "1"), ("a", "c")]).is_err());
        let err = OrthoMap::new(&named::chain(3), vec![2, 1, 0]).unwrap_err();
        assert!(matches!(err, Error::InvalidOrthoMap(_)));
    }
}
