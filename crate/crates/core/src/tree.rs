//! The vertex-splitting move and the unwrapping construction.
//!
//! Splitting replaces a separating parallel bundle between a curve vertex `t`
//! and a surface vertex `f` of multiplicity `r` by `r` single edges from `t`
//! to `r` fresh copies of the component on the `f` side. The move preserves
//! the degree refinement, and under conditions (M1)/(M2) a finite sequence of
//! splits turns the augmented graph of blocks into a tree.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::graph::BipartiteMultigraph;
use crate::refinement::{degree_refinement, partition_indices, DegreeRefinement};

/// A separating parallel bundle: the `r` edges between `t` and `f` whose
/// removal splits the graph into a component containing `f` and one
/// containing `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSite {
    pub t: String,
    pub f: String,
    pub multiplicity: u64,
    /// Vertex ids of the component containing `f`, in input order.
    pub f_side: Vec<String>,
    /// Vertex ids of the component containing `t`, in input order.
    pub t_side: Vec<String>,
}

/// One performed split, as recorded in the construction trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRecord {
    pub t: String,
    pub f: String,
    pub multiplicity: u64,
}

/// All sites of a connected graph: every adjacent curve/surface pair whose
/// full parallel bundle separates it. On a graph whose simple graph is a
/// tree every adjacent pair qualifies.
pub fn find_split_sites(g: &BipartiteMultigraph) -> Result<Vec<SplitSite>> {
    if !g.is_connected() {
        return Err(Error::Precondition(
            "find_split_sites needs a connected graph".into(),
        ));
    }
    let mut sites = Vec::new();
    for (a, b, m) in g.edges() {
        if g.kind(a) == g.kind(b) {
            return Err(Error::InvalidInput(
                "graph is not bipartite by vertex kind".into(),
            ));
        }
        let (t, f) = if g.kind(a).is_curve() { (a, b) } else { (b, a) };
        if let Some((f_side, t_side)) = bundle_sides(g, t, f) {
            sites.push(SplitSite {
                t: g.id(t).to_string(),
                f: g.id(f).to_string(),
                multiplicity: m,
                f_side: f_side.iter().map(|&ix| g.id(ix).to_string()).collect(),
                t_side: t_side.iter().map(|&ix| g.id(ix).to_string()).collect(),
            });
        }
    }
    Ok(sites)
}

/// Components after deleting the `t`-`f` bundle, if the deletion separates
/// `f` from `t`. Deleting edges of a connected graph leaves at most two
/// components here, each containing one bundle endpoint.
fn bundle_sides(g: &BipartiteMultigraph, t: usize, f: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    seen[f] = true;
    let mut stack = vec![f];
    while let Some(v) = stack.pop() {
        for &(w, _) in g.neighbors(v) {
            if (v == t && w == f) || (v == f && w == t) || seen[w] {
                continue;
            }
            seen[w] = true;
            stack.push(w);
        }
    }
    if seen[t] {
        return None;
    }
    let f_side: Vec<usize> = (0..n).filter(|&ix| seen[ix]).collect();
    let t_side: Vec<usize> = (0..n).filter(|&ix| !seen[ix]).collect();
    Some((f_side, t_side))
}

/// Result of a split: the new graph and the projection from new vertex ids
/// to the ids they copy.
#[derive(Clone, Debug)]
pub struct SplitResult {
    pub graph: BipartiteMultigraph,
    /// Maps every vertex id of the new graph to the id it projects to in the
    /// old one (identity on the `t` side).
    pub projection: BTreeMap<String, String>,
}

/// Splits `f` into `multiplicity` vertices at the given site: the output is
/// the `t`-side component, `r` copies of the `f`-side component with ids
/// suffixed `#1..#r`, and a single edge from `t` to each copy of `f`.
/// Fails if the site no longer matches the graph.
pub fn split_vertex(g: &BipartiteMultigraph, site: &SplitSite) -> Result<SplitResult> {
    let t = g.require_index(&site.t)?;
    let f = g.require_index(&site.f)?;
    if g.multiplicity(t, f) != site.multiplicity || site.multiplicity == 0 {
        return Err(Error::InvalidInput(format!(
            "stale split site: bundle `{}`-`{}` has multiplicity {}, site says {}",
            site.t,
            site.f,
            g.multiplicity(t, f),
            site.multiplicity
        )));
    }
    let (f_side, t_side) = bundle_sides(g, t, f).ok_or_else(|| {
        Error::InvalidInput(format!(
            "stale split site: bundle `{}`-`{}` does not separate the graph",
            site.t, site.f
        ))
    })?;
    let current_f_side: Vec<String> = f_side.iter().map(|&ix| g.id(ix).to_string()).collect();
    if current_f_side != site.f_side {
        return Err(Error::InvalidInput(format!(
            "stale split site: `{}`-side component changed",
            site.f
        )));
    }
    let r = site.multiplicity;

    let in_f_side: Vec<bool> = {
        let mut v = vec![false; g.vertex_count()];
        for &ix in &f_side {
            v[ix] = true;
        }
        v
    };

    let mut vertices: Vec<(String, crate::graph::VertexKind)> = Vec::new();
    let mut projection = BTreeMap::new();
    for &ix in &t_side {
        vertices.push((g.id(ix).to_string(), g.kind(ix)));
        projection.insert(g.id(ix).to_string(), g.id(ix).to_string());
    }
    let copy_id = |id: &str, k: u64| format!("{id}#{k}");
    for k in 1..=r {
        for &ix in &f_side {
            vertices.push((copy_id(g.id(ix), k), g.kind(ix)));
            projection.insert(copy_id(g.id(ix), k), g.id(ix).to_string());
        }
    }

    let mut edges: Vec<(String, String, u64)> = Vec::new();
    for (a, b, m) in g.edges() {
        if (a == t && b == f) || (a == f && b == t) {
            continue; // the bundle being split
        }
        match (in_f_side[a], in_f_side[b]) {
            (false, false) => edges.push((g.id(a).to_string(), g.id(b).to_string(), m)),
            (true, true) => {
                for k in 1..=r {
                    edges.push((copy_id(g.id(a), k), copy_id(g.id(b), k), m));
                }
            }
            // a crossing edge other than the bundle contradicts separation
            _ => return Err(Error::Internal("edge crosses a separating bundle".into())),
        }
    }
    for k in 1..=r {
        edges.push((g.id(t).to_string(), copy_id(g.id(f), k), 1));
    }

    Ok(SplitResult {
        graph: BipartiteMultigraph::new(vertices, edges)?,
        projection,
    })
}

/// Multi-edge bundles `(t, f, r >= 2)` of a graph, in deterministic order.
fn multi_bundles(g: &BipartiteMultigraph) -> Vec<(usize, usize, u64)> {
    g.edges()
        .filter(|&(_, _, m)| m > 1)
        .map(|(a, b, m)| {
            if g.kind(a).is_curve() {
                (a, b, m)
            } else {
                (b, a, m)
            }
        })
        .collect()
}

/// Unwraps an augmented graph of blocks into a finite tree with an
/// equivalent degree refinement, returning the tree and the trace of splits
/// performed.
///
/// The input must have all-singleton degree partition blocks (i.e. genuinely
/// be an augmented graph of blocks) and satisfy (M1) and (M2). Each split is
/// taken at a multi-edge bundle whose surface side contains no other
/// multi-edge bundle; under (M2) mutual surface-side visibility of two
/// bundles is exactly the forbidden pattern, so such an extremal bundle
/// always exists and splitting it strictly decreases the bundle count.
pub fn unwrap_to_tree(g0: &BipartiteMultigraph) -> Result<(BipartiteMultigraph, Vec<SplitRecord>)> {
    use crate::blocks::{check_m1, check_m2};

    crate::graph::require_valid_jsj(g0)?;
    let parts = partition_indices(g0);
    if parts.blocks.iter().any(|b| b.len() != 1) {
        return Err(Error::Precondition(
            "unwrap_to_tree needs a graph whose degree partition blocks are singletons".into(),
        ));
    }
    let m = degree_refinement(g0)?;
    let m1 = check_m1(&m)?;
    if !m1.is_tree {
        return Err(Error::Precondition(
            "unwrap_to_tree needs condition (M1): the graph of blocks is not a tree".into(),
        ));
    }
    let m2 = check_m2(&m)?;
    if !m2.holds {
        return Err(Error::Precondition(
            "unwrap_to_tree needs condition (M2): the no-2-cycles condition fails".into(),
        ));
    }

    let mut current = g0.clone();
    let mut trace = Vec::new();
    let budget = multi_bundles(&current).len() + 1;
    for _ in 0..budget {
        let bundles = multi_bundles(&current);
        if bundles.is_empty() {
            break;
        }
        let site = select_extremal_site(&current, &bundles)?;
        trace.push(SplitRecord {
            t: site.t.clone(),
            f: site.f.clone(),
            multiplicity: site.multiplicity,
        });
        current = split_vertex(&current, &site)?.graph;
    }
    if !multi_bundles(&current).is_empty() {
        // unreachable when the preconditions hold: each split removes one bundle
        return Err(Error::Internal(
            "unwrap_to_tree exceeded its split budget".into(),
        ));
    }
    if !current.is_tree() {
        return Err(Error::Internal(
            "unwrap_to_tree output is not a tree".into(),
        ));
    }
    Ok((current, trace))
}

/// Picks the first multi-edge bundle (in deterministic order) whose surface
/// side contains no other multi-edge bundle.
fn select_extremal_site(
    g: &BipartiteMultigraph,
    bundles: &[(usize, usize, u64)],
) -> Result<SplitSite> {
    for &(t, f, r) in bundles {
        let (f_side, t_side) = bundle_sides(g, t, f).ok_or_else(|| {
            Error::Internal("multi-edge bundle does not separate under (M1)".into())
        })?;
        let mut inside = vec![false; g.vertex_count()];
        for &ix in &f_side {
            inside[ix] = true;
        }
        let clean = bundles
            .iter()
            .all(|&(t2, f2, _)| (t2 == t && f2 == f) || !(inside[t2] && inside[f2]));
        if clean {
            return Ok(SplitSite {
                t: g.id(t).to_string(),
                f: g.id(f).to_string(),
                multiplicity: r,
                f_side: f_side.iter().map(|&ix| g.id(ix).to_string()).collect(),
                t_side: t_side.iter().map(|&ix| g.id(ix).to_string()).collect(),
            });
        }
    }
    // unreachable under (M2): "sees on the surface side" is a strict partial
    // order on bundles, so a maximal element exists
    Err(Error::Internal(
        "no extremal multi-edge bundle found despite (M2)".into(),
    ))
}

/// Variant of [`unwrap_to_tree`] that splits at the *last* extremal bundle
/// instead of the first. Any extremal order is legal; tests compare the two
/// outputs to gather evidence that the result is order-independent up to
/// isomorphism.
pub fn unwrap_to_tree_last_extremal(
    g0: &BipartiteMultigraph,
) -> Result<(BipartiteMultigraph, Vec<SplitRecord>)> {
    // duplicate precondition checks through the primary entry point
    let _ = unwrap_to_tree(g0)?;
    let mut current = g0.clone();
    let mut trace = Vec::new();
    loop {
        let bundles = multi_bundles(&current);
        if bundles.is_empty() {
            return Ok((current, trace));
        }
        let reversed: Vec<_> = bundles.iter().rev().copied().collect();
        let site = select_extremal_site(&current, &reversed)?;
        trace.push(SplitRecord {
            t: site.t.clone(),
            f: site.f.clone(),
            multiplicity: site.multiplicity,
        });
        current = split_vertex(&current, &site)?.graph;
    }
}

/// A depth- and cap-limited unfolding of the tree a refinement matrix
/// describes: the root is a block; a node of block `i` at depth below `d`
/// has `min(m_ij, cap)` children of block `j`, one fewer when `j` is the
/// parent's block. Equivalent matrices yield identical codes at
/// corresponding roots, which makes the code a finite stand-in for the
/// matrix-to-tree correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTruncation {
    pub root_block: usize,
    pub depth: u32,
    pub cap: u64,
    /// Canonical code: kind labels with children codes sorted, so the code is
    /// independent of block numbering.
    pub code: String,
    /// Blocks of the root's children, in matrix order with multiplicity.
    pub root_children: Vec<usize>,
}

/// Computes the canonical code of the capped truncation.
pub fn truncated_block_tree(
    m: &DegreeRefinement,
    root: usize,
    depth: u32,
    cap: u64,
) -> Result<RootedTruncation> {
    m.check_well_formed()?;
    if root >= m.order() {
        return Err(Error::InvalidInput(format!(
            "root block {root} out of range"
        )));
    }
    if cap == 0 {
        return Err(Error::InvalidInput("cap must be at least 1".into()));
    }
    let mut memo: BTreeMap<(usize, Option<usize>, u32), String> = BTreeMap::new();
    let code = truncation_code(m, root, None, depth, cap, &mut memo);
    let mut root_children = Vec::new();
    if depth > 0 {
        for j in 0..m.order() {
            for _ in 0..capped(m.entry(root, j), cap) {
                root_children.push(j);
            }
        }
    }
    Ok(RootedTruncation {
        root_block: root,
        depth,
        cap,
        code,
        root_children,
    })
}

fn capped(e: ExtNat, cap: u64) -> u64 {
    match e {
        ExtNat::Fin(n) => n.min(cap),
        ExtNat::Inf => cap,
    }
}

fn truncation_code(
    m: &DegreeRefinement,
    block: usize,
    parent: Option<usize>,
    depth: u32,
    cap: u64,
    memo: &mut BTreeMap<(usize, Option<usize>, u32), String>,
) -> String {
    if let Some(hit) = memo.get(&(block, parent, depth)) {
        return hit.clone();
    }
    let label = match m.kinds[block] {
        crate::graph::VertexKind::TwoEnded => 'T',
        crate::graph::VertexKind::Fuchsian => 'F',
    };
    let code = if depth == 0 {
        format!("({label})")
    } else {
        let mut children = Vec::new();
        for j in 0..m.order() {
            let mut count = capped(m.entry(block, j), cap);
            if parent == Some(j) {
                count = count.saturating_sub(1);
            }
            if count == 0 {
                continue;
            }
            let child = truncation_code(m, j, Some(block), depth - 1, cap, memo);
            for _ in 0..count {
                children.push(child.clone());
            }
        }
        children.sort_unstable();
        format!("({label}{})", children.concat())
    };
    memo.insert((block, parent, depth), code.clone());
    code
}
