use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use biclosure::dot;
use biclosure::represent::{Representation, StoneSpace};
use biclosure::{
    dual_space_capped, enumerate_posets_up_to, find_orthocomplementations,
    ortho_characterization_check, represent, represent_distributive, represent_orthoposet, stone,
    theorem_suite, BitSet, Bounds, Error, OrthoMap, Poset, SubsetFamily, Subspace, Suite,
    SuiteReport,
};

use crate::{Failure, Kind, Output};

fn set_label(set: &BitSet) -> String {
    let items: Vec<String> = set.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn member_label(family: &SubsetFamily) -> impl Fn(usize) -> String + '_ {
    |i| set_label(&family.members()[i])
}

fn sigma_json(poset: &Poset, family: &SubsetFamily, witness: &[usize]) -> Value {
    let rows: Vec<Value> = (0..poset.len())
        .map(|p| json!({ "element": poset.label(p), "image": family.members()[witness[p]] }))
        .collect();
    Value::Array(rows)
}

fn pick_ortho(poset: &Poset, index: usize) -> Result<OrthoMap, Failure> {
    let all = find_orthocomplementations(poset);
    let count = all.len();
    all.into_iter().nth(index).ok_or_else(|| {
        Failure::Usage(format!(
            "orthocomplementation {index} requested, {count} exist"
        ))
    })
}

pub fn dual(poset: &Poset, bounds: &Bounds) -> Result<Output, Failure> {
    let space = dual_space_capped(poset, bounds.dual_cap)?;
    eprintln!("{} points in P*", space.len());
    Ok(Output::json(json!({
        "poset": poset.to_json(),
        "size": space.len(),
        "points": space.to_json(),
    })))
}

struct Represented {
    report: Value,
    space: Subspace,
    family: SubsetFamily,
    witness: Vec<usize>,
}

fn general_json(kind: &str, poset: &Poset, rep: &Representation) -> Value {
    json!({
        "kind": kind,
        "poset": poset.to_json(),
        "points": rep.space.to_json(),
        "family": rep.family,
        "sigma": sigma_json(poset, &rep.family, &rep.witness),
        "closures": rep.closures,
    })
}

fn run_represent(
    poset: &Poset,
    kind: Kind,
    ortho: usize,
    bounds: &Bounds,
) -> Result<Represented, Failure> {
    match kind {
        Kind::General => {
            let rep = represent(poset, bounds)?;
            Ok(Represented {
                report: general_json("general", poset, &rep),
                space: rep.space,
                family: rep.family,
                witness: rep.witness,
            })
        }
        Kind::Distributive => {
            let d = represent_distributive(poset, bounds)?;
            let mut report = general_json("distributive", poset, &d.representation);
            report["bases_union_closed"] = json!(d.bases_union_closed);
            let rep = d.representation;
            Ok(Represented {
                report,
                space: rep.space,
                family: rep.family,
                witness: rep.witness,
            })
        }
        Kind::Ortho => {
            let f = pick_ortho(poset, ortho)?;
            let rep = represent_orthoposet(poset, &f, bounds)?;
            let report = json!({
                "kind": "ortho",
                "poset": poset.to_json(),
                "orthocomplementation": f.label_pairs(poset),
                "points": rep.space.to_json(),
                "clopen": rep.clopen,
                "sigma": sigma_json(poset, &rep.clopen, &rep.witness),
            });
            Ok(Represented {
                report,
                space: rep.space,
                family: rep.clopen,
                witness: rep.witness,
            })
        }
    }
}

pub fn represent_cmd(
    poset: &Poset,
    kind: Kind,
    ortho: usize,
    bounds: &Bounds,
) -> Result<Output, Failure> {
    let r = run_represent(poset, kind, ortho, bounds)?;
    eprintln!(
        "{} points, {} represented sets",
        r.space.len(),
        r.family.len()
    );
    let diagram = dot::side_by_side(poset, &r.family, member_label(&r.family), &r.witness);
    Ok(Output::json(r.report).with_dot(diagram))
}

pub fn ortho(poset: &Poset, bounds: &Bounds) -> Result<Output, Failure> {
    let all = find_orthocomplementations(poset);
    eprintln!("{} orthocomplementations", all.len());
    let listed: Vec<_> = all.iter().map(|f| f.label_pairs(poset)).collect();
    let mut report = json!({ "poset": poset.to_json(), "orthocomplementations": listed });
    let mut pass = true;
    if poset.is_bounded() {
        match ortho_characterization_check(poset, bounds) {
            Ok(c) => {
                eprintln!(
                    "{} maximal members of S, correspondence {}",
                    c.maximal.len(),
                    if c.holds { "holds" } else { "FAILS" }
                );
                pass = c.holds;
                report["characterization"] = json!(c);
            }
            Err(Error::BoundExceeded { what, limit }) => {
                eprintln!("characterization skipped: {what} exceeds {limit} (raise with --s-cap)");
                report["characterization"] =
                    json!({ "skipped": format!("{what} exceeds {limit}") });
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Output {
        pass,
        ..Output::json(report)
    })
}

pub fn stone_cmd(poset: &Poset, bounds: &Bounds) -> Result<Output, Failure> {
    let s: StoneSpace = stone(poset, bounds)?;
    eprintln!("{} points, {} clopen sets", s.space.len(), s.clopen.len());
    let mut report = s.to_json();
    report["poset"] = json!(poset.to_json());
    let diagram = dot::side_by_side(poset, &s.clopen, member_label(&s.clopen), &s.witness);
    Ok(Output::json(report).with_dot(diagram))
}

pub fn check(poset: &Poset, suite: Suite, bounds: &Bounds) -> Result<Output, Failure> {
    // Surface an oversized dual space as a bound error rather than a skip.
    dual_space_capped(poset, bounds.dual_cap)?;
    let report = theorem_suite(poset, suite, bounds);
    summarize(&report);
    let pass = report.all_pass();
    Ok(Output {
        pass,
        ..Output::json(json!(report))
    })
}

fn summarize(report: &SuiteReport) {
    let passed = report.checks.iter().filter(|c| c.pass).count();
    eprintln!(
        "{passed}/{} checks pass, {} skipped",
        report.checks.len(),
        report.skipped.len()
    );
    for c in report.failures() {
        eprintln!("FAIL {}: {}", c.name, c.witness);
    }
    for s in &report.skipped {
        eprintln!("skipped {}: {}", s.name, s.reason);
    }
}

#[derive(Serialize)]
struct SizeSummary {
    n: usize,
    classes: usize,
    passed: usize,
    checks: usize,
    skipped: usize,
    failures: Vec<SuiteReport>,
}

pub fn catalog(max_n: usize, suite: Suite, bounds: &Bounds) -> Result<Output, Failure> {
    let levels = enumerate_posets_up_to(max_n, bounds.max_n)?;
    let mut sizes = Vec::with_capacity(levels.len());
    for (i, level) in levels.iter().enumerate() {
        let reports: Vec<SuiteReport> = level
            .par_iter()
            .map(|p| theorem_suite(p, suite, bounds))
            .collect();
        let passed = reports.iter().filter(|r| r.all_pass()).count();
        let checks = reports.iter().map(|r| r.checks.len()).sum();
        let skipped = reports.iter().map(|r| r.skipped.len()).sum();
        let n = i + 1;
        eprintln!(
            "n={n}: {} classes processed, {}",
            level.len(),
            if passed == level.len() {
                "all pass".to_string()
            } else {
                format!("{} fail", level.len() - passed)
            }
        );
        let failures = reports.into_iter().filter(|r| !r.all_pass()).collect();
        sizes.push(SizeSummary {
            n,
            classes: level.len(),
            passed,
            checks,
            skipped,
            failures,
        });
    }
    let pass = sizes.iter().all(|s| s.failures.is_empty());
    let total: usize = sizes.iter().map(|s| s.classes).sum();
    eprintln!("{total} classes with n <= {max_n}");
    Ok(Output {
        pass,
        ..Output::json(json!({ "suite": suite, "max_n": max_n, "total": total, "sizes": sizes }))
    })
}

pub fn export_dot(
    poset: &Poset,
    kind: Option<Kind>,
    ortho: usize,
    bounds: &Bounds,
) -> Result<Output, Failure> {
    let text = match kind {
        None => dot::hasse(poset),
        Some(kind) => {
            let r = run_represent(poset, kind, ortho, bounds)?;
            dot::side_by_side(poset, &r.family, member_label(&r.family), &r.witness)
        }
    };
    Ok(Output::text(text))
}
