//! Graphviz rendering of the specialization order.

use std::fmt::Write as _;

use crate::space::FinSpace;

/// Hasse diagram with an edge `x -> y` when `y` covers `x`. Points that no
/// open separates are drawn together in one cluster and the edges between
/// classes attach to the least member of each.
pub fn export_dot(x: &FinSpace) -> String {
    export_dot_named(x, "X")
}

pub fn export_dot_named(x: &FinSpace, name: &str) -> String {
    let n = x.n();
    let rep: Vec<usize> = (0..n).map(|p| x.class_of(p).ones().next().unwrap_or(p)).collect();
    let reps: Vec<usize> = (0..n).filter(|&p| rep[p] == p).collect();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\""));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=circle];");
    for &r in &reps {
        let class: Vec<usize> = x.class_of(r).ones().collect();
        if class.len() > 1 {
            let members: Vec<String> = class.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "  subgraph cluster_{r} {{");
            let _ = writeln!(out, "    label=\"indistinguishable {{{}}}\";", members.join(" "));
            let _ = writeln!(out, "    style=dashed;");
            for p in &class {
                let _ = writeln!(out, "    {p};");
            }
            let _ = writeln!(out, "  }}");
        } else {
            let _ = writeln!(out, "  {r};");
        }
    }
    let strictly_below = |p: usize, q: usize| x.leq(p, q) && !x.leq(q, p);
    for &p in &reps {
        for &q in &reps {
            if !strictly_below(p, q) {
                continue;
            }
            let covered = !reps
                .iter()
                .any(|&r| strictly_below(p, r) && strictly_below(r, q));
            if covered {
                let _ = writeln!(out, "  {p} -> {q};");
            }
        }
    }
    out.push_str("}\n");
    out
}
