//! Graphviz output: bitorsors are nodes, morphisms are edges labeled
//! `(φ′, φ)`.

use std::fmt::Write;

use bitorsor_kit::bitorsor::Bitorsor;
use bitorsor_kit::devissage::Decomposition;
use bitorsor_kit::equivariant::ThetaBitorsor;
use bitorsor_kit::{BitorsorMorphism, GroupHom};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn hom_label(h: &GroupHom) -> String {
    let identity = h.src() == h.dst() && h.map().iter().enumerate().all(|(i, &x)| i == x);
    if identity {
        "id".into()
    } else {
        format!("{}→{}", h.src().label(), h.dst().label())
    }
}

fn edge_label(m: &BitorsorMorphism) -> String {
    let iso = if m.is_isomorphism() { " ≅" } else { "" };
    format!(
        "({}, {}){iso}",
        hom_label(m.phi_left()),
        hom_label(m.phi_right())
    )
}

fn node_label(name: &str, b: &Bitorsor) -> String {
    format!(
        "{name}\\n{} | {} pts | {}",
        b.left().label(),
        b.size(),
        b.right().label()
    )
}

/// One cluster per decomposition: the witness into `Y`, the factors feeding
/// `Y ∧ Z`, and the isomorphism `Y ∧ Z → X`.
pub fn decompositions(items: &[(usize, ThetaBitorsor, Decomposition)]) -> String {
    let mut out = String::from("digraph decomposition {\n  rankdir=LR;\n  node [shape=box];\n");
    for (class, _, d) in items {
        let p = format!("c{class}");
        let gw = &d.certificate.gamma_witness;
        let wedge = d.witness_iso.src();
        let x = d.witness_iso.dst();
        let _ = writeln!(
            out,
            "  subgraph cluster_{p} {{\n    label=\"class {class}\";"
        );
        for (id, name, b) in [
            ("w", "W", &gw.sub),
            ("y", "Y", &d.y),
            ("z", "Z", &d.z),
            ("yz", "Y ∧ Z", wedge),
            ("x", "X", x),
        ] {
            let _ = writeln!(
                out,
                "    {p}_{id} [label=\"{}\"];",
                escape(&node_label(name, b))
            );
        }
        let _ = writeln!(
            out,
            "    {p}_w -> {p}_y [label=\"{}\"];",
            escape(&edge_label(&gw.inclusion))
        );
        let _ = writeln!(out, "    {p}_y -> {p}_yz [style=dashed, label=\"∧\"];");
        let _ = writeln!(out, "    {p}_z -> {p}_yz [style=dashed, label=\"∧\"];");
        let _ = writeln!(
            out,
            "    {p}_yz -> {p}_x [label=\"{}\"];",
            escape(&edge_label(&d.witness_iso))
        );
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

/// Closure chains: an edge extends a chain by one more factor.
pub fn closure(labels: &[String], edges: &[(usize, usize, String)]) -> String {
    let mut out = String::from("digraph closure {\n  rankdir=LR;\n");
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(l));
    }
    for (a, b, l) in edges {
        let _ = writeln!(out, "  n{a} -> n{b} [label=\"∧ {}\"];", escape(l));
    }
    out.push_str("}\n");
    out
}
