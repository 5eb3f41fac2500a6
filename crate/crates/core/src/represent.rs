//! The map `σ: p ↦ UP_A(p)` and the representation constructions built on it.
//!
//! For a subspace `A ⊆ P*` with induced closures `C1 = clos{UP_A(p)}` and
//! `C2 = clos{LO_A(p)}`, `σ` maps `P` into the family of sets that are
//! `C1`-closed and `C2`-open. It is always isotone, injective when `A` is
//! full, and onto that family when `A` is separating.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::closure::{c1o2_family, closures_of_subspace, ClosureOperator};
use crate::dual::{dual_space_capped, lattice_dual_within, orthodual_within, Subspace};
use crate::error::{Error, Result};
use crate::family::SubsetFamily;
use crate::ortho::{self, OrthoMap};
use crate::poset::Poset;
use crate::Bounds;

/// `σ(p) = UP_A(p)`, as indices into `space`.
pub fn sigma(p: usize, space: &Subspace) -> BitSet {
    space.up(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureFlags {
    pub c1_equals_c2: bool,
    pub c1_exact: bool,
    pub c2_exact: bool,
    pub c1_topological: bool,
    pub c2_topological: bool,
}

impl ClosureFlags {
    pub fn of(c1: &ClosureOperator, c2: &ClosureOperator) -> Self {
        Self {
            c1_equals_c2: c1.same_as(c2).expect("same carrier"),
            c1_exact: c1.is_exact(),
            c2_exact: c2.is_exact(),
            c1_topological: c1.is_topological(),
            c2_topological: c2.is_topological(),
        }
    }
}

/// Outcome of checking `σ` against the `C1O2` family of a subspace.
#[derive(Clone, Debug, Serialize)]
pub struct RepresentationReport {
    /// One-sets of the subspace points, by label.
    pub subspace: Vec<Vec<String>>,
    /// The `C1O2` family, members given as point-index arrays.
    pub family: SubsetFamily,
    /// `σ(p)` as a family index, per element; `None` if `σ(p)` is not a member.
    pub sigma: Vec<Option<usize>>,
    pub isotone: bool,
    pub injective: bool,
    pub surjective: bool,
    pub isomorphism: bool,
    pub full: bool,
    pub separating: bool,
    /// `full ⇒ injective`, `separating ⇒ surjective`, and both ⇒ isomorphism.
    pub consistent: bool,
    pub closures: ClosureFlags,
    pub witness: SigmaWitness,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SigmaWitness {
    /// `p ≤ q` with `σ(p) ⊄ σ(q)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_isotone: Option<(String, String)>,
    /// `p ≠ q` with `σ(p) = σ(q)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collision: Option<(String, String)>,
    /// `σ(p) ⊆ σ(q)` with `p ≰ q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub not_reflecting: Option<(String, String)>,
    /// Family members outside the image of `σ`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub missed: Vec<BitSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fullness: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separation: Option<(Vec<String>, Vec<String>)>,
}

fn labels_of(poset: &Poset, set: &BitSet) -> Vec<String> {
    set.iter().map(|i| poset.label(i).to_string()).collect()
}

fn label_pair(poset: &Poset, (p, q): (usize, usize)) -> (String, String) {
    (poset.label(p).to_string(), poset.label(q).to_string())
}

pub fn sigma_check(space: &Subspace) -> RepresentationReport {
    let poset = space.poset();
    let n = poset.len();
    let (c1, c2) = closures_of_subspace(space);
    let family = c1o2_family(&c1, &c2).expect("same carrier");
    let images: Vec<BitSet> = (0..n).map(|p| sigma(p, space)).collect();
    let index: Vec<Option<usize>> = images.iter().map(|s| family.position(s)).collect();

    let mut witness = SigmaWitness::default();
    for p in 0..n {
        for q in 0..n {
            let sub = images[p].is_subset(&images[q]);
            if poset.le(p, q) && !sub && witness.not_isotone.is_none() {
                witness.not_isotone = Some(label_pair(poset, (p, q)));
            }
            if !poset.le(p, q) && sub && witness.not_reflecting.is_none() {
                witness.not_reflecting = Some(label_pair(poset, (p, q)));
            }
            if p < q && images[p] == images[q] && witness.collision.is_none() {
                witness.collision = Some(label_pair(poset, (p, q)));
            }
        }
    }
    let hit: BitSet = index.iter().flatten().copied().collect();
    witness.missed = family
        .iter()
        .enumerate()
        .filter(|(i, _)| !hit.contains(*i))
        .map(|(_, m)| m.clone())
        .collect();
    witness.fullness = space.fullness_witness().map(|w| label_pair(poset, w));
    witness.separation = space
        .separation_witness()
        .map(|(i, f)| (labels_of(poset, &i), labels_of(poset, &f)));

    let isotone = witness.not_isotone.is_none();
    let injective = witness.collision.is_none();
    let surjective = witness.missed.is_empty();
    let isomorphism = isotone
        && injective
        && surjective
        && witness.not_reflecting.is_none()
        && index.iter().all(Option::is_some);
    let full = witness.fullness.is_none();
    let separating = witness.separation.is_none();
    let consistent = isotone
        && (!full || injective)
        && (!separating || surjective)
        && (!(full && separating) || isomorphism);
    RepresentationReport {
        subspace: space.to_json(),
        family,
        sigma: index,
        isotone,
        injective,
        surjective,
        isomorphism,
        full,
        separating,
        consistent,
        closures: ClosureFlags::of(&c1, &c2),
        witness,
    }
}

/// A verified isomorphism `P ≈ C1O2(A, C1, C2)`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub space: Subspace,
    pub family: SubsetFamily,
    /// Element `p` maps to `family.members()[witness[p]]`.
    pub witness: Vec<usize>,
    pub closures: ClosureFlags,
}

impl Representation {
    fn from_report(
        space: Subspace,
        report: RepresentationReport,
        check: &'static str,
    ) -> Result<Self> {
        if !report.isomorphism {
            return Err(Error::VerificationFailed {
                check,
                detail: serde_json::to_string(&report.witness).unwrap_or_default(),
            });
        }
        Ok(Self {
            space,
            family: report.family,
            witness: report
                .sigma
                .into_iter()
                .map(|s| s.expect("isomorphism"))
                .collect(),
            closures: report.closures,
        })
    }
}

/// `P ≈ C1O2(P*, C1, C2)`. A failure here is a bug, reported as
/// [`Error::VerificationFailed`].
pub fn represent(poset: &Poset, bounds: &Bounds) -> Result<Representation> {
    let space = dual_space_capped(poset, bounds.dual_cap)?;
    let report = sigma_check(&space);
    Representation::from_report(space, report, "general representation")
}

/// The orthodual space with its single closure `C = C1 = C2`, whose clopen
/// sets represent the orthoposet with `'` realized as set complement.
#[derive(Clone, Debug)]
pub struct OrthoRepresentation {
    pub space: Subspace,
    pub closure: ClosureOperator,
    pub clopen: SubsetFamily,
    /// Element `p` maps to `clopen.members()[witness[p]]`.
    pub witness: Vec<usize>,
}

pub fn represent_orthoposet(
    poset: &Poset,
    ortho: &OrthoMap,
    bounds: &Bounds,
) -> Result<OrthoRepresentation> {
    ortho::validate(poset, ortho.table()).map_err(Error::InvalidOrthoMap)?;
    let dual = dual_space_capped(poset, bounds.dual_cap)?;
    let space = orthodual_within(&dual, ortho);
    let (c1, c2) = closures_of_subspace(&space);
    if !c1.same_as(&c2)? {
        return Err(Error::VerificationFailed {
            check: "orthodual closures coincide",
            detail: "C1 and C2 differ on the orthodual space".into(),
        });
    }
    let report = sigma_check(&space);
    let rep = Representation::from_report(space, report, "orthoposet representation")?;
    let clopen = c1.clopen_sets();
    if clopen != rep.family {
        return Err(Error::VerificationFailed {
            check: "orthoposet representation",
            detail: "clopen family differs from the C1O2 family".into(),
        });
    }
    let m = rep.space.len();
    for p in 0..poset.len() {
        if sigma(ortho.apply(p), &rep.space) != sigma(p, &rep.space).complement(m) {
            return Err(Error::VerificationFailed {
                check: "complement realizes orthocomplementation",
                detail: format!(
                    "σ({}') is not the complement of σ({})",
                    poset.label(p),
                    poset.label(p)
                ),
            });
        }
    }
    Ok(OrthoRepresentation {
        space: rep.space,
        closure: c1,
        clopen,
        witness: rep.witness,
    })
}

/// A distributive lattice represented on its lattice-morphism dual, with both
/// induced closures certified topological.
#[derive(Clone, Debug)]
pub struct DistributiveRepresentation {
    pub representation: Representation,
    /// `UP(p ∨ q) = UP(p) ∪ UP(q)` and `LO(p ∧ q) = LO(p) ∪ LO(q)` for all pairs.
    pub bases_union_closed: bool,
}

pub fn represent_distributive(
    lattice: &Poset,
    bounds: &Bounds,
) -> Result<DistributiveRepresentation> {
    if !lattice.is_distributive() {
        return Err(Error::NotDistributive);
    }
    let dual = dual_space_capped(lattice, bounds.dual_cap)?;
    let space = lattice_dual_within(&dual)?;
    let report = sigma_check(&space);
    let representation = Representation::from_report(space, report, "distributive representation")?;
    let flags = &representation.closures;
    if !(flags.c1_topological && flags.c2_topological) {
        return Err(Error::VerificationFailed {
            check: "distributive closures topological",
            detail: format!("{flags:?}"),
        });
    }
    let ops = lattice.lattice_ops().expect("lattice");
    let space = &representation.space;
    let m = space.len();
    let n = lattice.len();
    let bases_union_closed = (0..n).all(|p| {
        (0..n).all(|q| {
            space.up(ops.join(p, q)) == space.up(p).union(&space.up(q))
                && space.lo(ops.meet(p, q)) == space.lo(p).union(&space.lo(q))
        })
    });
    debug_assert!(m == 0 || bases_union_closed);
    Ok(DistributiveRepresentation {
        representation,
        bases_union_closed,
    })
}

/// The Stone space of a finite Boolean algebra: its non-constant lattice
/// morphisms with the common closure `C = C1 = C2`.
#[derive(Clone, Debug)]
pub struct StoneSpace {
    pub space: Subspace,
    pub closure: ClosureOperator,
    pub clopen: SubsetFamily,
    pub witness: Vec<usize>,
    /// Kernel of each point; each is a maximal lattice ideal.
    pub kernels: Vec<BitSet>,
}

#[derive(Serialize)]
struct StoneJson<'a> {
    points: Vec<Vec<String>>,
    kernels: Vec<Vec<String>>,
    clopen: &'a SubsetFamily,
    sigma: Vec<(String, Vec<usize>)>,
}

impl StoneSpace {
    pub fn to_json(&self) -> serde_json::Value {
        let poset = self.space.poset();
        serde_json::to_value(StoneJson {
            points: self.space.to_json(),
            kernels: self.kernels.iter().map(|k| labels_of(poset, k)).collect(),
            clopen: &self.clopen,
            sigma: (0..poset.len())
                .map(|p| {
                    let set = &self.clopen.members()[self.witness[p]];
                    (poset.label(p).to_string(), set.iter().collect())
                })
                .collect(),
        })
        .expect("serializable")
    }
}

/// Whether `ideal` is a proper lattice ideal not contained in a larger proper one.
pub fn is_maximal_lattice_ideal(lattice: &Poset, ideal: &BitSet) -> bool {
    let Some(ops) = lattice.lattice_ops() else {
        return false;
    };
    let Some(top) = lattice.top() else {
        return false;
    };
    let n = lattice.len();
    let is_ideal = !ideal.is_empty()
        && lattice.is_down_set(ideal)
        && ideal
            .iter()
            .all(|a| ideal.iter().all(|b| ideal.contains(ops.join(a, b))));
    // The ideal generated by I ∪ {e} is everything iff i ∨ e = 1 for some i ∈ I.
    is_ideal
        && !ideal.contains(top)
        && (0..n)
            .filter(|e| !ideal.contains(*e))
            .all(|e| ideal.iter().any(|i| ops.join(i, e) == top))
}

pub fn stone(algebra: &Poset, bounds: &Bounds) -> Result<StoneSpace> {
    if !algebra.is_boolean() {
        return Err(Error::NotBoolean);
    }
    let dual = dual_space_capped(algebra, bounds.dual_cap)?;
    let space = lattice_dual_within(&dual)?.remove_constants()?;
    let (c1, c2) = closures_of_subspace(&space);
    let fail = |check, detail: String| Err(Error::VerificationFailed { check, detail });
    if !c1.same_as(&c2)? {
        return fail("Stone closures coincide", "C1 and C2 differ".into());
    }
    if !c1.is_topological() || !c1.is_exact() {
        return fail(
            "Stone closure topological and exact",
            format!("{:?}", ClosureFlags::of(&c1, &c2)),
        );
    }
    let report = sigma_check(&space);
    let rep = Representation::from_report(space, report, "Stone representation")?;
    let clopen = c1.clopen_sets();
    if clopen != rep.family {
        return fail(
            "Stone representation",
            "clopen family differs from the C1O2 family".into(),
        );
    }
    let n = algebra.len();
    let kernels: Vec<BitSet> = rep.space.points().iter().map(|x| x.kernel(n)).collect();
    if let Some(k) = kernels
        .iter()
        .find(|k| !is_maximal_lattice_ideal(algebra, k))
    {
        return fail(
            "kernels are maximal ideals",
            format!("{:?}", labels_of(algebra, k)),
        );
    }
    Ok(StoneSpace {
        space: rep.space,
        closure: c1,
        clopen,
        witness: rep.witness,
        kernels,
    })
}

/// Whether `space` is full, separating, and carries `C1 = C2`.
pub fn in_collection_s(space: &Subspace) -> bool {
    if !space.is_full() {
        return false;
    }
    let (c1, c2) = closures_of_subspace(space);
    c1.same_as(&c2).expect("same carrier") && space.is_separating()
}

/// Every subspace of `P*` that is full, separating, and has `C1 = C2`, as
/// index sets into `dual` in ascending bitmask order.
///
/// The empty subspace is a candidate too; it qualifies only for the
/// one-element poset, whose single orthocomplementation has an empty orthodual.
pub fn collection_s_indices(dual: &Subspace, s_cap: usize) -> Result<Vec<BitSet>> {
    let m = dual.len();
    if m > s_cap || m >= 63 {
        return Err(Error::BoundExceeded {
            what: "dual space size for the S sweep",
            limit: s_cap,
        });
    }
    Ok((0..1u64 << m)
        .map(BitSet::from_mask)
        .filter(|sel| in_collection_s(&dual.select(sel)))
        .collect())
}

pub fn collection_s(poset: &Poset, bounds: &Bounds) -> Result<Vec<Subspace>> {
    let dual = dual_space_capped(poset, bounds.dual_cap)?;
    Ok(collection_s_indices(&dual, bounds.s_cap)?
        .iter()
        .map(|sel| dual.select(sel))
        .collect())
}

/// Members of `sets` not strictly contained in another member.
pub fn maximal_elements(sets: &[BitSet]) -> Vec<BitSet> {
    sets.iter()
        .filter(|a| !sets.iter().any(|b| b != *a && a.is_subset(b)))
        .cloned()
        .collect()
}

/// `p ↦ σ⁻¹(A \ σ(p))` for a subspace in `S`.
pub fn induced_orthocomplementation(space: &Subspace) -> Result<OrthoMap> {
    if !in_collection_s(space) {
        return Err(Error::NotInS);
    }
    let poset = space.poset();
    let n = poset.len();
    let m = space.len();
    let images: Vec<BitSet> = (0..n).map(|p| sigma(p, space)).collect();
    let mut table = Vec::with_capacity(n);
    for p in 0..n {
        let target = images[p].complement(m);
        let q =
            images
                .iter()
                .position(|s| *s == target)
                .ok_or_else(|| Error::VerificationFailed {
                    check: "induced orthocomplementation",
                    detail: format!(
                        "complement of σ({}) is not in the image of σ",
                        poset.label(p)
                    ),
                })?;
        table.push(q);
    }
    OrthoMap::new(poset, table).map_err(|e| Error::VerificationFailed {
        check: "induced orthocomplementation",
        detail: e.to_string(),
    })
}

/// Result of matching orthocomplementations against maximal members of `S`.
#[derive(Clone, Debug, Serialize)]
pub struct OrthoCharacterization {
    pub orthocomplementations: Vec<Vec<(String, String)>>,
    pub s_size: usize,
    /// Maximal members of `S`, as index sets into `P*`.
    pub maximal: Vec<BitSet>,
    /// For orthocomplementation `k`, the index in `maximal` of its orthodual.
    pub correspondence: Vec<Option<usize>>,
    /// Every maximal member induces an orthocomplementation whose orthodual is itself.
    pub inverse_ok: bool,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn ortho_characterization_check(
    poset: &Poset,
    bounds: &Bounds,
) -> Result<OrthoCharacterization> {
    let dual = dual_space_capped(poset, bounds.dual_cap)?;
    let s = collection_s_indices(&dual, bounds.s_cap)?;
    let maximal = maximal_elements(&s);
    let orthos = ortho::find_orthocomplementations(poset);
    let mut witness = None;

    let correspondence: Vec<Option<usize>> = orthos
        .iter()
        .map(|f| {
            let od = orthodual_within(&dual, f);
            let sel = dual.indices_of(&od).expect("orthodual lies in P*");
            maximal.iter().position(|mx| *mx == sel)
        })
        .collect();
    if let Some(k) = correspondence.iter().position(Option::is_none) {
        witness = Some(format!(
            "orthodual of orthocomplementation {k} is not maximal in S"
        ));
    }
    let hit: BitSet = correspondence.iter().flatten().copied().collect();
    let injective = hit.len() == correspondence.iter().flatten().count();
    if !injective && witness.is_none() {
        witness = Some("two orthocomplementations share an orthodual".into());
    }
    let onto = hit.len() == maximal.len();
    if !onto && witness.is_none() {
        let k = (0..maximal.len())
            .find(|k| !hit.contains(*k))
            .expect("a miss");
        witness = Some(format!(
            "maximal member {} of S has no orthocomplementation",
            maximal[k]
        ));
    }
    let mut inverse_ok = true;
    for (k, mx) in maximal.iter().enumerate() {
        let a = dual.select(mx);
        let back = induced_orthocomplementation(&a)
            .ok()
            .and_then(|g| orthos.iter().position(|f| *f == g));
        let expected = correspondence.iter().position(|c| *c == Some(k));
        if back.is_none() || back != expected {
            inverse_ok = false;
            if witness.is_none() {
                witness = Some(format!(
                    "maximal member {mx} does not induce its own orthocomplementation"
                ));
            }
        }
    }
    let holds = witness.is_none() && injective && onto && inverse_ok;
    Ok(OrthoCharacterization {
        orthocomplementations: orthos.iter().map(|f| f.label_pairs(poset)).collect(),
        s_size: s.len(),
        maximal,
        correspondence,
        inverse_ok,
        holds,
        witness,
    })
}

/// `C1(X) = ⋂_{p ∈ F(X)} UP(p)` and `C2(X) = ⋂_{p ∈ I(X)} LO(p)` for every
/// `X ⊆ A`, empty intersections being `A`. Returns the first failing `X`.
pub fn closure_equation_witness(space: &Subspace) -> Option<BitSet> {
    let m = space.len();
    assert!(m < 32, "exhaustive check over 2^{m} subsets");
    let (c1, c2) = closures_of_subspace(space);
    let n = space.poset().len();
    let ups: Vec<BitSet> = (0..n).map(|p| space.up(p)).collect();
    let los: Vec<BitSet> = (0..n).map(|p| space.lo(p)).collect();
    let meet_over = |index: BitSet, sets: &[BitSet]| {
        index
            .iter()
            .fold(BitSet::full(m), |acc, p| acc.intersection(&sets[p]))
    };
    (0..1u64 << m).map(BitSet::from_mask).find(|x| {
        c1.apply(x) != meet_over(space.filter_of(x), &ups)
            || c2.apply(x) != meet_over(space.ideal_of(x), &los)
    })
}

/// Hypothesis and conclusion of "separating with disjoint generated cones
/// implies full".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConeLemma {
    pub separating: bool,
    /// `⟨p⟩ideal ∩ ⟨q⟩filter = ∅` whenever `q ≰ p`.
    pub cones_disjoint: bool,
    pub full: bool,
}

impl ConeLemma {
    pub fn of(space: &Subspace) -> Self {
        let poset = space.poset();
        let n = poset.len();
        let ideals: Vec<BitSet> = (0..n)
            .map(|p| space.generated_ideal(&BitSet::singleton(p)).set)
            .collect();
        let filters: Vec<BitSet> = (0..n)
            .map(|q| space.generated_filter(&BitSet::singleton(q)).set)
            .collect();
        let cones_disjoint =
            (0..n).all(|p| (0..n).all(|q| poset.le(q, p) || ideals[p].is_disjoint(&filters[q])));
        Self {
            separating: space.is_separating(),
            cones_disjoint,
            full: space.is_full(),
        }
    }

    pub fn holds(&self) -> bool {
        !(self.separating && self.cones_disjoint) || self.full
    }
}

/// Lattice ideals: down-sets closed under binary join (the empty set included).
pub fn lattice_ideals(lattice: &Poset) -> Result<SubsetFamily> {
    let ops = lattice.lattice_ops().ok_or(Error::NotALattice)?;
    let n = lattice.len();
    let downs = lattice
        .up_sets(usize::MAX)?
        .into_iter()
        .map(|u| u.complement(n));
    Ok(SubsetFamily::new(
        n,
        downs.filter(|d| {
            d.iter()
                .all(|a| d.iter().all(|b| d.contains(ops.join(a, b))))
        }),
    ))
}

/// Lattice filters: up-sets closed under binary meet (the empty set included).
pub fn lattice_filters(lattice: &Poset) -> Result<SubsetFamily> {
    let ops = lattice.lattice_ops().ok_or(Error::NotALattice)?;
    let ups = lattice.up_sets(usize::MAX)?;
    Ok(SubsetFamily::new(
        lattice.len(),
        ups.into_iter().filter(|u| {
            u.iter()
                .all(|a| u.iter().all(|b| u.contains(ops.meet(a, b))))
        }),
    ))
}
