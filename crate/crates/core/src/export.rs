//! Serializable exports: the lattice JSON shape, the rank-layered DOT
//! rendering of the Hasse diagram, and instance-file values for the corpus
//! generators.

use crate::lattice::Lattice;
use crate::matroid::{Matroid, MatroidKind};
use crate::society::Society;
use crate::subset::Subset;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write;

#[derive(Debug, Clone, Serialize)]
pub struct ElementExport {
    pub index: usize,
    pub flat: Subset,
    pub rank: usize,
    pub covers_up: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeExport {
    pub elements: usize,
    pub rank: usize,
    pub atoms: Vec<usize>,
    pub hyperplanes: Vec<usize>,
    pub table: Vec<ElementExport>,
}

pub fn lattice_export(lat: &Lattice) -> LatticeExport {
    LatticeExport {
        elements: lat.len(),
        rank: lat.height(),
        atoms: lat.atoms().to_vec(),
        hyperplanes: lat.hyperplanes().to_vec(),
        table: (0..lat.len())
            .map(|i| ElementExport {
                index: i,
                flat: lat.flat(i),
                rank: lat.rank_of(i),
                covers_up: lat.covers_up(i).to_vec(),
            })
            .collect(),
    }
}

/// Renders the Hasse diagram in Graphviz DOT, one `rank=same` layer per
/// lattice rank, edges pointing upward.
pub fn lattice_dot(lat: &Lattice) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for r in 0..=lat.height() {
        let layer: Vec<usize> = (0..lat.len()).filter(|&i| lat.rank_of(i) == r).collect();
        if layer.is_empty() {
            continue;
        }
        let _ = write!(out, "  {{ rank=same;");
        for i in layer {
            let _ = write!(out, " e{i} [label=\"{}\"];", lat.flat(i));
        }
        out.push_str(" }\n");
    }
    for x in 0..lat.len() {
        for &y in lat.covers_up(x) {
            let _ = writeln!(out, "  e{x} -> e{y};");
        }
    }
    out.push_str("}\n");
    out
}

/// The instance-file value for a matroid, round-trippable through the
/// parser.
pub fn matroid_instance(m: &Matroid) -> Value {
    match m.kind() {
        MatroidKind::Uniform { k } => json!({
            "kind": "uniform",
            "n": m.ground_size(),
            "k": k,
        }),
        MatroidKind::Graphic { vertices, edges } => json!({
            "kind": "graphic",
            "n": m.ground_size(),
            "vertices": vertices,
            "edges": edges,
        }),
        MatroidKind::Linear { modulus, columns } => json!({
            "kind": "linear",
            "n": m.ground_size(),
            "p": modulus,
            "columns": columns,
        }),
        MatroidKind::ExplicitFlats { flats, .. } => json!({
            "kind": "flats",
            "n": m.ground_size(),
            "flats": flats,
        }),
    }
}

/// The instance-file value for a society whose sides are `0..m` and `0..w`.
pub fn society_instance(s: &Society) -> Value {
    json!({
        "kind": "society",
        "M": s.men().len(),
        "W": s.women().len(),
        "edges": s.edges().iter().collect::<Vec<_>>(),
    })
}
