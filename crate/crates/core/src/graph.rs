use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// The two vertex kinds of a JSJ graph in the class considered: a "curve"
/// vertex carries a two-ended vertex group, a "surface" vertex a maximal
/// hanging Fuchsian one. No two vertices of the same kind are adjacent in a
/// valid JSJ graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexKind {
    /// Two-ended (Type I) vertex group; drawn white; "curve" in a P-manifold.
    TwoEnded,
    /// Maximal hanging Fuchsian (Type II) vertex group; drawn black;
    /// "surface" in a P-manifold.
    Fuchsian,
}

impl VertexKind {
    pub fn is_curve(self) -> bool {
        self == VertexKind::TwoEnded
    }

    pub fn is_surface(self) -> bool {
        self == VertexKind::Fuchsian
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKind::TwoEnded => write!(f, "curve"),
            VertexKind::Fuchsian => write!(f, "surface"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub kind: VertexKind,
}

/// A finite multigraph on kinded vertices, with edges stored as unordered
/// vertex pairs with positive multiplicity.
///
/// Vertex ids are opaque tokens; every algorithm in this crate is invariant
/// under renaming them, and every output that enumerates vertices does so in
/// input order. The structure itself does not force edges to join different
/// kinds — [`validate_jsj_graph`] reports such defects as data — but all
/// refinement-level operations require bipartiteness by kind and fail with
/// [`Error::InvalidInput`] otherwise.
///
/// Values are immutable after construction; "mutations" build new graphs.
#[derive(Clone, Debug)]
pub struct BipartiteMultigraph {
    vertices: Vec<Vertex>,
    /// Keyed by (min index, max index); value is the multiplicity.
    edges: BTreeMap<(usize, usize), u64>,
    /// Neighbor lists sorted by neighbor index, derived from `edges`.
    adj: Vec<Vec<(usize, u64)>>,
    index: BTreeMap<String, usize>,
}

impl PartialEq for BipartiteMultigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for BipartiteMultigraph {}

impl BipartiteMultigraph {
    /// Builds a graph from vertex and edge lists. Duplicate edge entries sum
    /// their multiplicities. Rejects duplicate ids, unknown endpoints,
    /// self-loops and zero multiplicities.
    pub fn new<I, E>(vertices: I, edges: E) -> Result<Self>
    where
        I: IntoIterator<Item = (String, VertexKind)>,
        E: IntoIterator<Item = (String, String, u64)>,
    {
        let vertices: Vec<Vertex> = vertices
            .into_iter()
            .map(|(id, kind)| Vertex { id, kind })
            .collect();
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        let mut edge_map: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (a, b, m) in edges {
            let ia = *index
                .get(&a)
                .ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let ib = *index
                .get(&b)
                .ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            if ia == ib {
                return Err(Error::InvalidEdge(format!("self-loop at `{a}`")));
            }
            if m == 0 {
                return Err(Error::InvalidEdge(format!(
                    "zero multiplicity on `{a}`-`{b}`"
                )));
            }
            let key = (ia.min(ib), ia.max(ib));
            *edge_map.entry(key).or_insert(0) += m;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for (&(a, b), &m) in &edge_map {
            adj[a].push((b, m));
            adj[b].push((a, m));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(n, _)| n);
        }
        Ok(BipartiteMultigraph {
            vertices,
            edges: edge_map,
            adj,
            index,
        })
    }

    /// Convenience constructor from `&str` pairs, mostly for tests.
    pub fn from_parts(
        vertices: &[(&str, VertexKind)],
        edges: &[(&str, &str, u64)],
    ) -> Result<Self> {
        Self::new(
            vertices.iter().map(|(id, k)| (id.to_string(), *k)),
            edges
                .iter()
                .map(|(a, b, m)| (a.to_string(), b.to_string(), *m)),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Vertex> {
        self.vertices.iter()
    }

    pub fn vertex(&self, ix: usize) -> &Vertex {
        &self.vertices[ix]
    }

    pub fn id(&self, ix: usize) -> &str {
        &self.vertices[ix].id
    }

    pub fn kind(&self, ix: usize) -> VertexKind {
        self.vertices[ix].kind
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require_index(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    /// Edge bundles as `(low index, high index, multiplicity)` in
    /// deterministic key order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.edges.iter().map(|(&(a, b), &m)| (a, b, m))
    }

    /// Number of distinct edge bundles (parallel edges count once).
    pub fn simple_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Total edge count with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().sum()
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> u64 {
        let key = (a.min(b), a.max(b));
        self.edges.get(&key).copied().unwrap_or(0)
    }

    /// Neighbors of `ix` with bundle multiplicities, sorted by index.
    pub fn neighbors(&self, ix: usize) -> &[(usize, u64)] {
        &self.adj[ix]
    }

    /// Valence counted with multiplicity.
    pub fn valence(&self, ix: usize) -> u64 {
        self.adj[ix].iter().map(|&(_, m)| m).sum()
    }

    pub fn is_bipartite_by_kind(&self) -> bool {
        self.edges().all(|(a, b, _)| self.kind(a) != self.kind(b))
    }

    pub fn has_multi_edge(&self) -> bool {
        self.edges.values().any(|&m| m > 1)
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.components().len() == 1
    }

    /// Whether the underlying simple graph (parallel edges collapsed) is a
    /// tree: connected with exactly |V| - 1 bundles.
    pub fn simple_graph_is_tree(&self) -> bool {
        !self.vertices.is_empty()
            && self.is_connected()
            && self.simple_edge_count() == self.vertices.len() - 1
    }

    /// Whether the multigraph itself is a tree (a parallel bundle is an
    /// embedded 2-cycle, so a tree has no multiplicities above one).
    pub fn is_tree(&self) -> bool {
        self.simple_graph_is_tree() && !self.has_multi_edge()
    }

    /// The subgraph induced by `keep` (indices into this graph), with ids and
    /// relative vertex order preserved.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Self {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let in_keep: BTreeMap<usize, ()> = keep.iter().map(|&i| (i, ())).collect();
        let vertices = keep
            .iter()
            .map(|&i| (self.vertices[i].id.clone(), self.vertices[i].kind));
        let edges = self
            .edges()
            .filter(|&(a, b, _)| in_keep.contains_key(&a) && in_keep.contains_key(&b))
            .map(|(a, b, m)| (self.vertices[a].id.clone(), self.vertices[b].id.clone(), m));
        Self::new(vertices, edges.collect::<Vec<_>>()).expect("induced subgraph is well-formed")
    }

    /// A copy with every id replaced through `rename`. The map must be
    /// injective on the vertex ids.
    pub fn relabel(&self, rename: &dyn Fn(&str) -> String) -> Result<Self> {
        Self::new(
            self.vertices.iter().map(|v| (rename(&v.id), v.kind)),
            self.edges()
                .map(|(a, b, m)| (rename(self.id(a)), rename(self.id(b)), m))
                .collect::<Vec<_>>(),
        )
    }
}

/// A single validation finding. Violations are data, not failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation(pub String);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Checks that a graph is a usable JSJ graph: bipartite by kind, connected,
/// with at least one vertex of each kind. Returns an empty report iff valid.
pub fn validate_jsj_graph(g: &BipartiteMultigraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for (a, b, _) in g.edges() {
        if g.kind(a) == g.kind(b) {
            let kind = g.kind(a);
            out.push(Violation(format!(
                "edge joins two {kind} vertices: `{}`-`{}`",
                g.id(a),
                g.id(b)
            )));
        }
    }
    let n_curve = g.vertices().filter(|v| v.kind.is_curve()).count();
    let n_surface = g.vertices().filter(|v| v.kind.is_surface()).count();
    if n_curve == 0 {
        out.push(Violation("no curve vertex".into()));
    }
    if n_surface == 0 {
        out.push(Violation("no surface vertex".into()));
    }
    if !g.is_connected() {
        out.push(Violation(format!(
            "disconnected: {} components",
            g.components().len()
        )));
    }
    out
}

/// Fails with `InvalidInput` unless `validate_jsj_graph` is clean.
pub fn require_valid_jsj(g: &BipartiteMultigraph) -> Result<()> {
    let report = validate_jsj_graph(g);
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidInput(report[0].0.clone()))
    }
}

/// Weaker requirement used by partition-level operations, which are defined
/// on disconnected graphs too.
pub fn require_bipartite(g: &BipartiteMultigraph) -> Result<()> {
    if g.is_bipartite_by_kind() {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            "graph is not bipartite by vertex kind".into(),
        ))
    }
}
