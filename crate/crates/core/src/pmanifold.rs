//! 2-dimensional hyperbolic P-manifolds: surfaces with boundary glued along
//! branching curves according to a bipartite multigraph. Curve vertices are
//! the branching curves, surface vertices the pieces; an edge records one
//! boundary circle of the piece running along the curve.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{validate_jsj_graph, BipartiteMultigraph, VertexKind, Violation};
use crate::rational::{is_negative, Rational};

/// A P-manifold: the gluing graph plus the Euler characteristic of each
/// surface piece. Surface characteristics are integers (the pieces are
/// honest surfaces) and always negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PManifold {
    graph: BipartiteMultigraph,
    chi: BTreeMap<String, i64>,
}

impl PManifold {
    /// Requires `chi` to be total on the surface vertices, to mention nothing
    /// else, and to be negative everywhere.
    pub fn new(graph: BipartiteMultigraph, chi: BTreeMap<String, i64>) -> Result<Self> {
        for v in graph.vertices() {
            if v.kind.is_surface() {
                match chi.get(&v.id) {
                    None => return Err(Error::MissingChi(v.id.clone())),
                    Some(c) if *c >= 0 => {
                        return Err(Error::InvalidInput(format!(
                            "chi of `{}` must be negative, got {c}",
                            v.id
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        for id in chi.keys() {
            match graph.index_of(id) {
                Some(ix) if graph.kind(ix).is_surface() => {}
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "chi given for non-surface vertex `{id}`"
                    )))
                }
            }
        }
        Ok(PManifold { graph, chi })
    }

    pub fn graph(&self) -> &BipartiteMultigraph {
        &self.graph
    }

    pub fn chi_of(&self, id: &str) -> Option<i64> {
        self.chi.get(id).copied()
    }

    pub fn chi_map(&self) -> &BTreeMap<String, i64> {
        &self.chi
    }

    /// Total Euler characteristic of the surface pieces.
    pub fn total_chi(&self) -> i64 {
        self.chi.values().sum()
    }

    /// The P-manifold left after removing the interiors of the given surface
    /// pieces. Branching curves all remain; only the named surfaces go.
    pub fn without_surfaces(&self, removed: &[String]) -> PManifold {
        let keep: Vec<usize> = (0..self.graph.vertex_count())
            .filter(|&ix| {
                self.graph.kind(ix).is_curve() || !removed.contains(&self.graph.id(ix).to_string())
            })
            .collect();
        let graph = self.graph.induced_subgraph(&keep);
        let chi = self
            .chi
            .iter()
            .filter(|(id, _)| graph.index_of(id).is_some())
            .map(|(id, c)| (id.clone(), *c))
            .collect();
        PManifold { graph, chi }
    }

    /// A copy with `chi` of one surface replaced (used by the genus family).
    pub(crate) fn with_chi(&self, id: &str, chi: i64) -> Result<PManifold> {
        if chi >= 0 {
            return Err(Error::InvalidInput(format!(
                "replacement chi for `{id}` must be negative, got {chi}"
            )));
        }
        let mut map = self.chi.clone();
        match map.get_mut(id) {
            Some(slot) => *slot = chi,
            None => return Err(Error::UnknownVertex(id.to_string())),
        }
        Ok(PManifold {
            graph: self.graph.clone(),
            chi: map,
        })
    }
}

/// Validates a P-manifold per its definition: underlying graph a valid JSJ
/// graph, every surface chi negative (by construction here), every surface
/// with at least one boundary circle, and — in strict mode — every branching
/// curve of valence at least three. Layered residual P-manifolds violate the
/// strict rule, so matching-side operations validate with `strict = false`.
pub fn validate_pmanifold(p: &PManifold, strict: bool) -> Vec<Violation> {
    let mut out = validate_jsj_graph(p.graph());
    for (ix, v) in p.graph().vertices().enumerate() {
        match v.kind {
            VertexKind::Fuchsian => {
                if p.graph().valence(ix) == 0 {
                    out.push(Violation(format!("surface `{}` has empty boundary", v.id)));
                }
            }
            VertexKind::TwoEnded => {
                if strict && p.graph().valence(ix) < 3 {
                    out.push(Violation(format!(
                        "curve `{}` has valence {} < 3",
                        v.id,
                        p.graph().valence(ix)
                    )));
                }
            }
        }
    }
    out
}

/// Rational Euler characteristics attached to the surface vertices of a
/// general JSJ graph (vertex groups of groups in the class may be orbifold
/// groups, so chi need not be an integer).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChiDecoration {
    values: BTreeMap<String, Rational>,
}

impl ChiDecoration {
    pub fn new(values: BTreeMap<String, Rational>) -> Self {
        ChiDecoration { values }
    }

    pub fn get(&self, id: &str) -> Option<&Rational> {
        self.values.get(id)
    }

    pub fn insert(&mut self, id: String, chi: Rational) {
        self.values.insert(id, chi);
    }

    /// Checks totality and negativity against the surface vertices of `g`.
    pub fn require_total_on(&self, g: &BipartiteMultigraph) -> Result<()> {
        for v in g.vertices() {
            if v.kind.is_surface() {
                match self.values.get(&v.id) {
                    None => return Err(Error::MissingChi(v.id.clone())),
                    Some(c) if !is_negative(c) => {
                        return Err(Error::InvalidInput(format!(
                            "chi of `{}` must be negative",
                            v.id
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }
}

impl From<&PManifold> for ChiDecoration {
    fn from(p: &PManifold) -> Self {
        ChiDecoration {
            values: p
                .chi_map()
                .iter()
                .map(|(id, &c)| (id.clone(), Rational::from_integer(c.into())))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexKind::{Fuchsian, TwoEnded};

    fn star(chis: [i64; 3]) -> PManifold {
        let g = BipartiteMultigraph::from_parts(
            &[
                ("c", TwoEnded),
                ("s1", Fuchsian),
                ("s2", Fuchsian),
                ("s3", Fuchsian),
            ],
            &[("c", "s1", 1), ("c", "s2", 1), ("c", "s3", 1)],
        )
        .unwrap();
        let chi = [("s1", chis[0]), ("s2", chis[1]), ("s3", chis[2])]
            .into_iter()
            .map(|(id, c)| (id.to_string(), c))
            .collect();
        PManifold::new(g, chi).unwrap()
    }

    #[test]
    fn star_is_strictly_valid() {
        let p = star([-1, -2, -3]);
        assert!(validate_pmanifold(&p, true).is_empty());
        assert_eq!(p.total_chi(), -6);
    }

    #[test]
    fn nonnegative_chi_rejected() {
        let g = BipartiteMultigraph::from_parts(
            &[("c", TwoEnded), ("s1", Fuchsian)],
            &[("c", "s1", 1)],
        )
        .unwrap();
        let chi = [("s1".to_string(), 0)].into_iter().collect();
        assert!(PManifold::new(g, chi).is_err());
    }

    #[test]
    fn missing_chi_rejected() {
        let g = BipartiteMultigraph::from_parts(
            &[("c", TwoEnded), ("s1", Fuchsian)],
            &[("c", "s1", 1)],
        )
        .unwrap();
        assert!(matches!(
            PManifold::new(g, BTreeMap::new()),
            Err(Error::MissingChi(_))
        ));
    }

    #[test]
    fn strict_flags_low_curve_valence() {
        let g =
            BipartiteMultigraph::from_parts(&[("c", TwoEnded), ("s", Fuchsian)], &[("c", "s", 1)])
                .unwrap();
        let chi = [("s".to_string(), -1)].into_iter().collect();
        let p = PManifold::new(g, chi).unwrap();
        assert!(validate_pmanifold(&p, false).is_empty());
        let strict = validate_pmanifold(&p, true);
        assert!(strict.iter().any(|v| v.0.contains("valence 1 < 3")));
    }

    #[test]
    fn residual_removal_keeps_curves() {
        let p = star([-1, -2, -3]);
        let residual = p.without_surfaces(&["s1".to_string()]);
        assert_eq!(residual.graph().vertex_count(), 3);
        assert!(residual.graph().index_of("c").is_some());
        assert!(residual.graph().index_of("s1").is_none());
        assert_eq!(residual.total_chi(), -5);
    }
}
