//! Graphviz output: Hasse diagrams drawn bottom to top, edges low -> high.

use std::fmt::Write;

use crate::family::SubsetFamily;
use crate::poset::Poset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn body(out: &mut String, poset: &Poset, prefix: &str, indent: &str) {
    for (i, l) in poset.labels().iter().enumerate() {
        let _ = writeln!(
            out,
            "{indent}{} [label={}];",
            quote(&format!("{prefix}{i}")),
            quote(l)
        );
    }
    for (a, b) in poset.covers() {
        let _ = writeln!(
            out,
            "{indent}{} -> {};",
            quote(&format!("{prefix}{a}")),
            quote(&format!("{prefix}{b}"))
        );
    }
}

pub fn hasse(poset: &Poset) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    body(&mut out, poset, "p", "  ");
    out.push_str("}\n");
    out
}

/// The family ordered by inclusion; `member_label` renders each member.
pub fn family(family: &SubsetFamily, member_label: impl Fn(usize) -> String) -> String {
    let labels = (0..family.len()).map(member_label).collect();
    let poset = Poset::of_family(family).with_labels(labels);
    let mut out = String::from("digraph family {\n  rankdir=BT;\n");
    body(&mut out, &poset, "s", "  ");
    out.push_str("}\n");
    out
}

/// Input Hasse diagram and represented family in two clusters, with dashed
/// edges for the map `p -> witness[p]`.
pub fn side_by_side(
    poset: &Poset,
    family: &SubsetFamily,
    member_label: impl Fn(usize) -> String,
    witness: &[usize],
) -> String {
    let labels = (0..family.len()).map(member_label).collect();
    let fam = Poset::of_family(family).with_labels(labels);
    let mut out = String::from("digraph representation {\n  rankdir=BT;\n");
    out.push_str("  subgraph cluster_poset {\n    label=\"P\";\n");
    body(&mut out, poset, "p", "    ");
    out.push_str("  }\n  subgraph cluster_family {\n    label=\"C1O2\";\n");
    body(&mut out, &fam, "s", "    ");
    out.push_str("  }\n");
    for (p, &s) in witness.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {} -> {} [style=dashed, constraint=false];",
            quote(&format!("p{p}")),
            quote(&format!("s{s}"))
        );
    }
    out.push_str("}\n");
    out
}
