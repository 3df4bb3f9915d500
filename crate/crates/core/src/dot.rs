//! Graphviz export. Output is deterministic: nodes and edges in index order.

use std::fmt::Write;

use crate::adjacency::AdjacencySpace;
use crate::mask::{self, Mask};
use crate::structures::TwoPrecontactSpace;
use crate::topology::FiniteSpace;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Specialization edges `x → y` for `x ∈ cl{y}`, `x ≠ y`, solid; `R` edges
/// dashed; points of `x0` double-circled.
pub fn space_dot(space: &FiniteSpace, x0: Option<Mask>, relation: Option<&[Mask]>) -> String {
    let mut out = String::from("digraph X {\n");
    for (i, name) in space.names().iter().enumerate() {
        let shape = match x0 {
            Some(m) if mask::has(m, i) => "doublecircle",
            _ => "circle",
        };
        writeln!(out, "  n{i} [label={}, shape={shape}];", quote(name)).unwrap();
    }
    for y in 0..space.len() {
        for x in mask::ones(space.point_closure(y) & !mask::bit(y)) {
            writeln!(out, "  n{x} -> n{y};").unwrap();
        }
    }
    if let Some(rows) = relation {
        for (x, &row) in rows.iter().enumerate() {
            for y in mask::ones(row) {
                writeln!(out, "  n{x} -> n{y} [style=dashed];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn pcs_dot(pcs: &TwoPrecontactSpace) -> String {
    space_dot(pcs.space(), Some(pcs.x0()), Some(pcs.relation()))
}

/// The adjacency relation as a digraph.
pub fn adjacency_dot(space: &AdjacencySpace) -> String {
    let mut out = String::from("digraph R {\n");
    for (i, name) in space.names().iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(name)).unwrap();
    }
    for (x, y) in space.pairs() {
        writeln!(out, "  n{x} -> n{y};").unwrap();
    }
    out.push_str("}\n");
    out
}
