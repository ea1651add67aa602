use std::fmt::Write as _;

use super::Digraph;

/// Line style for one arc in DOT output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotStyle {
    Solid,
    Dashed,
}

impl Digraph {
    /// Graphviz DOT text with one `u -> v;` line per arc. Isolated vertices
    /// are declared as bare `v;` lines so they survive rendering.
    pub fn to_dot(&self) -> String {
        self.to_dot_with(|_, _| DotStyle::Solid)
    }

    pub fn to_dot_with(&self, style: impl Fn(usize, usize) -> DotStyle) -> String {
        let mut s = String::from("digraph G {\n");
        for v in (0..self.n()).filter(|&v| self.out_degree(v) + self.in_degree(v) == 0) {
            let _ = writeln!(s, "  {v};");
        }
        for (u, v) in self.arcs() {
            match style(u, v) {
                DotStyle::Solid => {
                    let _ = writeln!(s, "  {u} -> {v};");
                }
                DotStyle::Dashed => {
                    let _ = writeln!(s, "  {u} -> {v} [style=dashed];");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}
