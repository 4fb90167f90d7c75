//! Graphviz DOT output.

use std::fmt::Write;

use polyresolve_core::graph::{Digraph, SimpleGraph};
use polyresolve_core::oddcover::OddCoverCert;

const COLORS: [&str; 8] = [
    "black",
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "cyan4",
];
const STYLES: [&str; 3] = ["solid", "dashed", "dotted"];

/// Arcs are labelled by item id; loops are left out unless asked for.
pub fn digraph_dot(g: &Digraph, show_loops: bool) -> String {
    let mut out = String::from("digraph cdg {\n");
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for (a, t, h) in g.arcs() {
        if t == h && !show_loops {
            continue;
        }
        writeln!(out, "  {t} -> {h} [label=\"{a}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn graph_dot(g: &SimpleGraph) -> String {
    let mut out = String::from("graph g {\n");
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for e in g.edges().iter() {
        writeln!(out, "  {} -- {};", e.u(), e.v()).unwrap();
    }
    out.push_str("}\n");
    out
}

/// One edge group per part, each with its own colour and line style.
pub fn cover_dot(g: &SimpleGraph, cert: &OddCoverCert) -> String {
    let mut out = String::from("graph cover {\n");
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for (i, part) in cert.parts.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let style = STYLES[(i / COLORS.len()) % STYLES.len()];
        writeln!(out, "  subgraph part{i} {{").unwrap();
        writeln!(out, "    edge [color={color}, style={style}];").unwrap();
        for e in part.iter() {
            writeln!(out, "    {} -- {};", e.u(), e.v()).unwrap();
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
