//! DOT export: curve vertices unfilled, surface vertices filled, one edge
//! per bundle with an `xk` label when the multiplicity exceeds one. Vertex
//! order follows input order, so the output is byte-stable.

use jsj_core::BipartiteMultigraph;

fn quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn export_dot(g: &BipartiteMultigraph, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("graph {} {{\n", quote(name)));
    out.push_str("  node [shape=circle];\n");
    for v in g.vertices() {
        if v.kind.is_surface() {
            out.push_str(&format!(
                "  {} [style=filled, fillcolor=black, fontcolor=white];\n",
                quote(&v.id)
            ));
        } else {
            out.push_str(&format!("  {};\n", quote(&v.id)));
        }
    }
    for (a, b, m) in g.edges() {
        let (a, b) = if g.kind(a).is_curve() { (a, b) } else { (b, a) };
        if m > 1 {
            out.push_str(&format!(
                "  {} -- {} [label=\"x{m}\"];\n",
                quote(g.id(a)),
                quote(g.id(b))
            ));
        } else {
            out.push_str(&format!("  {} -- {};\n", quote(g.id(a)), quote(g.id(b))));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use jsj_core::VertexKind::{Fuchsian, TwoEnded};

    #[test]
    fn single_edge_dot() {
        let g =
            BipartiteMultigraph::from_parts(&[("c", TwoEnded), ("s", Fuchsian)], &[("c", "s", 1)])
                .unwrap();
        let dot = export_dot(&g, "x");
        assert!(dot.contains("\"c\" -- \"s\";"));
        assert!(!dot.contains("label"));
        assert_eq!(dot.matches(" -- ").count(), 1);
    }

    #[test]
    fn multiplicity_label() {
        let g = BipartiteMultigraph::from_parts(
            &[("t1", TwoEnded), ("f1", Fuchsian)],
            &[("t1", "f1", 2)],
        )
        .unwrap();
        let dot = export_dot(&g, "x");
        assert!(dot.contains("label=\"x2\""));
    }
}
