//! Graphviz DOT emitters: Cayley graph, cycle graph, subgroup lattice.
//!
//! Output is deterministic. Nodes carry `pos` hints that renderers such as
//! `neato -n` honour and others ignore.

use std::f64::consts::TAU;
use std::fmt::Write;

use grouplab_core::lattice::hasse;
use grouplab_core::structure::{cycle_graph, subgroup_label};
use grouplab_core::FiniteGroup;

use crate::CliError;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Quoted DOT string with `"` and `\` escaped.
pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Polar layout: the cyclic subgroup of the first generator on the outer
/// ring at its root-of-unity angles, each further coset on a smaller ring.
fn positions(g: &FiniteGroup) -> Vec<(f64, f64)> {
    let n = g.order();
    let Some(&g0) = g.generators().first() else {
        return vec![(0.0, 0.0); n];
    };
    let k = g.element_order(g0);
    let mut pos = vec![(0.0, 0.0); n];
    let mut placed = vec![false; n];
    let mut ring = 0;
    for rep in g.elements() {
        if placed[rep] {
            continue;
        }
        let radius = 2.0 / (1.0 + ring as f64);
        let mut x = rep;
        for step in 0..k {
            let angle = TAU * step as f64 / k as f64;
            pos[x] = (radius * angle.cos(), radius * angle.sin());
            placed[x] = true;
            x = g.mul(x, g0);
        }
        ring += 1;
    }
    pos
}

fn write_nodes(out: &mut String, g: &FiniteGroup) {
    for (x, (px, py)) in positions(g).into_iter().enumerate() {
        let shape = if x == g.identity() { "doublecircle" } else { "circle" };
        writeln!(
            out,
            "  n{x} [label={}, shape={shape}, pos=\"{px:.3},{py:.3}\"];",
            quote(g.label(x))
        )
        .expect("write to string");
    }
}

/// Edges `x -> x·g` for each designated generator `g`, one colour per
/// generator. Involutions give one undirected edge per pair.
pub fn cayley(g: &FiniteGroup, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph cayley {{").expect("write to string");
    writeln!(out, "  label={};", quote(name)).expect("write to string");
    write_nodes(&mut out, g);
    for (i, &gen) in g.generators().iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let involution = g.element_order(gen) == 2;
        for x in g.elements() {
            let y = g.mul(x, gen);
            if involution {
                if x < y {
                    writeln!(out, "  n{x} -> n{y} [color=\"{color}\", dir=none];").expect("write to string");
                }
            } else {
                writeln!(out, "  n{x} -> n{y} [color=\"{color}\"];").expect("write to string");
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn cycle(g: &FiniteGroup, name: &str) -> String {
    let graph = cycle_graph(g);
    let mut out = String::new();
    writeln!(out, "graph cycles {{").expect("write to string");
    writeln!(out, "  label={};", quote(name)).expect("write to string");
    write_nodes(&mut out, g);
    for (a, b) in &graph.edges {
        writeln!(out, "  n{a} -- n{b};").expect("write to string");
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram drawn top-down from the whole group, covers labelled by
/// their index, equal orders on one rank.
pub fn lattice(g: &FiniteGroup, name: &str) -> Result<String, CliError> {
    let l = hasse(g)?;
    let mut out = String::new();
    writeln!(out, "digraph lattice {{").expect("write to string");
    writeln!(out, "  label={};", quote(name)).expect("write to string");
    writeln!(out, "  rankdir=BT;").expect("write to string");
    writeln!(out, "  node [shape=box];").expect("write to string");
    for (i, h) in l.nodes.iter().enumerate() {
        let label = format!("{} (order {})", subgroup_label(g, h), h.size());
        let style = if g.is_normal(h) { "solid" } else { "dashed" };
        writeln!(out, "  s{i} [label={}, style={style}];", quote(&label)).expect("write to string");
    }
    let mut orders: Vec<usize> = l.nodes.iter().map(|h| h.size()).collect();
    orders.dedup();
    for order in orders {
        let ids: Vec<String> = (0..l.nodes.len())
            .filter(|&i| l.nodes[i].size() == order)
            .map(|i| format!("s{i}"))
            .collect();
        writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).expect("write to string");
    }
    for c in &l.covers {
        writeln!(out, "  s{} -> s{} [label=\"{}\", dir=none];", c.lower, c.upper, c.index).expect("write to string");
    }
    out.push_str("}\n");
    Ok(out)
}
