//! Runs every representation check whose preconditions a poset meets.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bitset::BitSet;
use crate::closure::closures_of_subspace;
use crate::dual::{dual_space_capped, lattice_dual_within, orthodual_within, Subspace};
use crate::family::SubsetFamily;
use crate::ortho::find_orthocomplementations;
use crate::poset::{Poset, PosetJson};
use crate::represent::{
    closure_equation_witness, lattice_filters, lattice_ideals, ortho_characterization_check,
    represent_distributive, represent_orthoposet, sigma_check, stone, ConeLemma,
};
use crate::{Bounds, Error};

/// Which group of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    General,
    Ortho,
    Distributive,
    Boolean,
}

impl Suite {
    fn runs(self, group: Suite) -> bool {
        self == Suite::All || self == group
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Self::All),
            "general" => Ok(Self::General),
            "ortho" => Ok(Self::Ortho),
            "distributive" => Ok(Self::Distributive),
            "boolean" => Ok(Self::Boolean),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub paper_ref: &'static str,
    pub pass: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub name: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub poset: PosetJson,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Closure-equation checks enumerate every subset of the subspace; above this
/// size they are skipped.
pub const CLOSURE_EQUATION_LIMIT: usize = 12;

struct Builder {
    checks: Vec<CheckResult>,
    skipped: Vec<Skipped>,
}

impl Builder {
    fn push(
        &mut self,
        name: impl Into<String>,
        paper_ref: &'static str,
        pass: bool,
        witness: Value,
    ) {
        self.checks.push(CheckResult {
            name: name.into(),
            paper_ref,
            pass,
            witness,
        });
    }

    fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.skipped.push(Skipped {
            name: name.into(),
            reason: reason.into(),
        });
    }

    fn push_result<T>(
        &mut self,
        name: impl Into<String>,
        paper_ref: &'static str,
        result: crate::Result<T>,
        witness: impl FnOnce(&T) -> Value,
    ) {
        match result {
            Ok(v) => {
                let w = witness(&v);
                self.push(name, paper_ref, true, w);
            }
            Err(Error::BoundExceeded { what, limit }) => {
                self.skip(name, format!("{what} exceeds {limit}"));
            }
            Err(e) => self.push(name, paper_ref, false, json!({ "error": e.to_string() })),
        }
    }
}

fn labels(poset: &Poset, set: &BitSet) -> Vec<String> {
    set.iter().map(|i| poset.label(i).to_string()).collect()
}

fn full_separating_witness(space: &Subspace) -> (bool, Value) {
    let poset = space.poset();
    let full = space.fullness_witness();
    let sep = space.separation_witness();
    let pass = full.is_none() && sep.is_none();
    let witness = json!({
        "full": full.is_none(),
        "separating": sep.is_none(),
        "fullness_counterexample": full.map(|(p, q)| [poset.label(p), poset.label(q)]),
        "separation_counterexample": sep.map(|(i, f)| [labels(poset, &i), labels(poset, &f)]),
    });
    (pass, witness)
}

/// Runs the checks of `suite` on `poset`. Failures are report entries, never
/// errors; checks whose enumeration would exceed `bounds` are listed as skipped.
pub fn theorem_suite(poset: &Poset, suite: Suite, bounds: &Bounds) -> SuiteReport {
    let mut b = Builder {
        checks: Vec::new(),
        skipped: Vec::new(),
    };
    let dual = match dual_space_capped(poset, bounds.dual_cap) {
        Ok(d) => d,
        Err(e) => {
            b.skip("all", e.to_string());
            return SuiteReport {
                poset: poset.to_json(),
                checks: b.checks,
                skipped: b.skipped,
            };
        }
    };
    if suite.runs(Suite::General) {
        general(&mut b, poset, &dual);
    }
    if suite.runs(Suite::Ortho) {
        ortho(&mut b, poset, &dual, bounds);
    }
    let ops = poset.lattice_ops();
    if (suite.runs(Suite::Distributive) || suite.runs(Suite::Boolean)) && ops.is_none() {
        b.skip("lattice checks", "not a lattice");
    }
    if let Some(ops) = ops {
        let ld = lattice_dual_within(&dual).expect("lattice");
        let distributive = ops.is_distributive();
        if suite.runs(Suite::Distributive) {
            let (fs, w) = full_separating_witness(&ld);
            b.push(
                "distributive_iff_lattice_dual_full_separating",
                "a lattice is distributive iff its lattice-morphism dual is full and separating",
                distributive == fs,
                json!({ "distributive": distributive, "lattice_dual": w }),
            );
            let (c1, c2) = closures_of_subspace(&ld);
            let (t1, t2) = (c1.topology_witness(), c2.topology_witness());
            b.push(
                "lattice_dual_closures_topological",
                "closures induced on the lattice-morphism dual are topological",
                t1.is_none() && t2.is_none(),
                json!({ "c1_counterexample": t1, "c2_counterexample": t2 }),
            );
            if distributive {
                let ideals = ld.ideals_wrt().members;
                let filters = ld.filters_wrt().members;
                let (li, lf) = (
                    lattice_ideals(poset).expect("lattice"),
                    lattice_filters(poset).expect("lattice"),
                );
                b.push(
                    "lattice_dual_ideals_are_lattice_ideals",
                    "for a distributive lattice, ideals and filters w.r.t. the lattice-morphism dual are the lattice ideals and filters",
                    ideals == li && filters == lf,
                    json!({ "ideals": ideals.len(), "lattice_ideals": li.len(), "filters": filters.len(), "lattice_filters": lf.len() }),
                );
                b.push_result(
                    "distributive_representation",
                    "distributive lattice ≈ C1O2 of a space with two topological closures",
                    represent_distributive(poset, bounds),
                    |r| json!({ "sigma": r.representation.witness, "bases_union_closed": r.bases_union_closed }),
                );
            }
        }
        if suite.runs(Suite::Boolean) {
            if distributive {
                let boolean = poset.is_boolean();
                let reduced = ld.remove_constants().expect("finite lattices are bounded");
                let (c1, c2) = closures_of_subspace(&reduced);
                let equal = c1.same_as(&c2).expect("same carrier");
                b.push(
                    "boolean_iff_closures_coincide",
                    "a distributive lattice is Boolean iff C1 = C2 on its non-constant lattice morphisms",
                    boolean == equal,
                    json!({ "boolean": boolean, "closures_equal": equal }),
                );
                if boolean {
                    b.push_result(
                        "stone_representation",
                        "Boolean algebra ≈ clopen sets of its Stone space",
                        stone(poset, bounds),
                        |s| json!({ "points": s.space.len(), "clopen": s.clopen.len(), "kernels": s.kernels.iter().map(|k| labels(poset, k)).collect::<Vec<_>>() }),
                    );
                }
            } else {
                b.skip("boolean checks", "not distributive");
            }
        }
    }
    SuiteReport {
        poset: poset.to_json(),
        checks: b.checks,
        skipped: b.skipped,
    }
}

fn general(b: &mut Builder, poset: &Poset, dual: &Subspace) {
    let n = poset.len();
    let (pass, w) = full_separating_witness(dual);
    b.push(
        "dual_space_full_separating",
        "P* is full and separating",
        pass,
        w,
    );

    let lemma = ConeLemma::of(dual);
    b.push(
        "separating_cones_imply_full",
        "separating with disjoint generated cones implies full",
        lemma.holds(),
        json!(lemma),
    );

    let report = sigma_check(dual);
    b.push(
        "general_representation",
        "P ≈ C1O2(P*, C1, C2) via p ↦ UP(p)",
        report.isomorphism,
        json!({ "sigma": report.sigma, "witness": report.witness }),
    );
    b.push(
        "sigma_properties",
        "σ is isotone; injective on full, surjective on separating subspaces",
        report.consistent,
        json!({
            "isotone": report.isotone, "injective": report.injective, "surjective": report.surjective,
            "full": report.full, "separating": report.separating,
        }),
    );

    let members: Vec<BitSet> = (0..n).map(|p| dual.up(p)).collect();
    let missing: Vec<&str> = (0..n)
        .filter(|&p| !report.family.contains(&members[p]))
        .map(|p| poset.label(p))
        .collect();
    b.push(
        "up_sets_are_c1o2",
        "every UP(p) is a C1O2 set",
        missing.is_empty(),
        json!({ "missing": missing }),
    );

    if dual.len() <= CLOSURE_EQUATION_LIMIT {
        let bad = closure_equation_witness(dual);
        b.push(
            "closure_equations",
            "C1(X) = ⋂ UP(p) over F(X), C2(X) = ⋂ LO(p) over I(X)",
            bad.is_none(),
            json!({ "counterexample": bad }),
        );
    } else {
        b.skip(
            "closure_equations",
            format!("|P*| = {} > {CLOSURE_EQUATION_LIMIT}", dual.len()),
        );
    }

    let downs = SubsetFamily::new(n, dual.points().iter().map(|x| x.kernel(n)));
    let ups = SubsetFamily::new(n, dual.points().iter().map(|x| x.one_set().clone()));
    let ideals = dual.ideals_wrt().members;
    let filters = dual.filters_wrt().members;
    b.push(
        "dual_ideals_are_order_ideals",
        "ideals (filters) w.r.t. P* are the order ideals (filters)",
        ideals == downs && filters == ups,
        json!({ "ideals": ideals.len(), "order_ideals": downs.len() }),
    );

    if poset.is_bounded() {
        let reduced = dual.remove_constants().expect("bounded");
        let (fs, w) = full_separating_witness(&reduced);
        let rep = sigma_check(&reduced);
        b.push(
            "constant_removal",
            "for bounded P, removing the constant maps keeps a full separating subspace full and separating",
            fs && rep.isomorphism,
            json!({ "reduced": w, "isomorphism": rep.isomorphism }),
        );
    }
}

fn ortho(b: &mut Builder, poset: &Poset, dual: &Subspace, bounds: &Bounds) {
    if !poset.is_bounded() {
        b.skip("ortho checks", "not bounded");
        return;
    }
    let orthos = find_orthocomplementations(poset);
    for (k, f) in orthos.iter().enumerate() {
        let od = orthodual_within(dual, f);
        let (pass, w) = full_separating_witness(&od);
        b.push(
            format!("orthodual_full_separating[{k}]"),
            "the orthodual space is full and separating",
            pass,
            json!({ "orthocomplementation": f.label_pairs(poset), "orthodual": w }),
        );
        b.push_result(
            format!("orthoposet_representation[{k}]"),
            "orthoposet ≈ clopen sets of its orthodual space, complement realizing '",
            represent_orthoposet(poset, f, bounds),
            |r| json!({ "points": r.space.to_json(), "clopen": r.clopen.len(), "sigma": r.witness }),
        );
    }
    if dual.len() > bounds.s_cap {
        b.skip(
            "ortho_characterization",
            format!("|P*| = {} > s-cap {}", dual.len(), bounds.s_cap),
        );
        return;
    }
    match ortho_characterization_check(poset, bounds) {
        Ok(r) => b.push(
            "ortho_characterization",
            "orthocomplementations correspond to maximal full separating subspaces with C1 = C2",
            r.holds,
            json!(r),
        ),
        Err(e) => b.skip("ortho_characterization", e.to_string()),
    }
}
