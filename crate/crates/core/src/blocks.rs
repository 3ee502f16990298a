//! The graph of blocks and augmented graph of blocks of a degree refinement,
//! and the two conditions that decide quasi-isometry to a torsion-generated
//! group:
//!
//! * (M1) the graph of blocks is a tree;
//! * (M2) the augmented graph of blocks has no 2-cycles at even distance
//!   bounded by curve vertices: on every embedded alternating path
//!   `t_1, f_1, t_2, ..., f_{k-1}, t_k`, if the first bundle `(t_1, f_1)` is
//!   a multi-edge then no bundle `(t_i, f_j)` with `i != j` is.

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::graph::{require_valid_jsj, BipartiteMultigraph, VertexKind};
use crate::refinement::{degree_refinement, DegreeRefinement};
use crate::tree::{unwrap_to_tree, SplitRecord};

/// Hard cap on embedded paths enumerated by the exhaustive M2 check.
const M2_PATH_CAP: u64 = 1_000_000;

/// Both block-level graphs of a refinement: block vertices named `t1..tn`
/// and `f1..fm`, the simple edge set of the graph of blocks, and the
/// multiplicities of the augmented graph of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockGraphs {
    /// Block names in matrix order (`t*` for curve blocks, `f*` for surface
    /// blocks).
    pub names: Vec<String>,
    pub kinds: Vec<VertexKind>,
    /// Simple edges as (block index, block index) with the lower index first.
    pub simple_edges: Vec<(usize, usize)>,
    /// Multiplicities keyed like `simple_edges`; an entry exists iff the
    /// simple edge does.
    pub multiplicities: Vec<u64>,
    /// Dense multiplicity lookup derived from the edge list.
    mult: Vec<Vec<u64>>,
    /// Neighbor lists (ascending) derived from the edge list.
    nbrs: Vec<Vec<usize>>,
}

impl BlockGraphs {
    pub fn from_refinement(m: &DegreeRefinement) -> Result<Self> {
        m.check_well_formed()?;
        let n = m.order();
        let names: Vec<String> = (0..n).map(|i| m.block_name(i)).collect();
        let mut simple_edges = Vec::new();
        let mut multiplicities = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                // The curve-block row carries the finite count n_ij.
                let count = match (m.kinds[i], m.kinds[j]) {
                    (VertexKind::TwoEnded, VertexKind::Fuchsian) => m.entry(i, j),
                    (VertexKind::Fuchsian, VertexKind::TwoEnded) => m.entry(j, i),
                    _ => ExtNat::ZERO,
                };
                match count {
                    ExtNat::Fin(0) => {}
                    ExtNat::Fin(k) => {
                        simple_edges.push((i, j));
                        multiplicities.push(k);
                    }
                    ExtNat::Inf => {
                        return Err(Error::Internal(
                            "curve-row entry was infinite in a well-formed matrix".into(),
                        ))
                    }
                }
            }
        }
        let mut mult = vec![vec![0u64; n]; n];
        let mut nbrs = vec![Vec::new(); n];
        for (&(a, b), &k) in simple_edges.iter().zip(&multiplicities) {
            mult[a][b] = k;
            mult[b][a] = k;
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        for list in &mut nbrs {
            list.sort_unstable();
        }
        Ok(BlockGraphs {
            names,
            kinds: m.kinds.clone(),
            simple_edges,
            multiplicities,
            mult,
            nbrs,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Neighbor block indices of `i` in the simple graph, ascending.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.nbrs[i]
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> u64 {
        self.mult[a][b]
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

/// The graph of blocks: a simple bipartite graph on the blocks, with an edge
/// `{t_i, f_j}` exactly when the refinement entry `n_ij` is positive. Block
/// vertices keep their canonical names.
pub fn graph_of_blocks(m: &DegreeRefinement) -> Result<BipartiteMultigraph> {
    let bg = BlockGraphs::from_refinement(m)?;
    BipartiteMultigraph::new(
        bg.names.iter().cloned().zip(bg.kinds.iter().copied()),
        bg.simple_edges
            .iter()
            .map(|&(a, b)| (bg.names[a].clone(), bg.names[b].clone(), 1))
            .collect::<Vec<_>>(),
    )
}

/// The augmented graph of blocks: the multigraph with `n_ij` edges between
/// `t_i` and `f_j`. When the blocks of the source partition are singletons
/// this graph has degree refinement equivalent to `m` again.
pub fn augmented_graph_of_blocks(m: &DegreeRefinement) -> Result<BipartiteMultigraph> {
    let bg = BlockGraphs::from_refinement(m)?;
    BipartiteMultigraph::new(
        bg.names.iter().cloned().zip(bg.kinds.iter().copied()),
        bg.simple_edges
            .iter()
            .zip(&bg.multiplicities)
            .map(|(&(a, b), &mult)| (bg.names[a].clone(), bg.names[b].clone(), mult))
            .collect::<Vec<_>>(),
    )
}

/// Verdict of condition (M1). On failure the witness is an embedded cycle of
/// block names when one exists; a disconnected acyclic block graph fails with
/// no cycle to show.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M1Verdict {
    pub is_tree: bool,
    pub cycle: Option<Vec<String>>,
    pub connected: bool,
}

/// Checks whether the graph of blocks is a tree.
pub fn check_m1(m: &DegreeRefinement) -> Result<M1Verdict> {
    let bg = BlockGraphs::from_refinement(m)?;
    let connected = bg.is_connected();
    let is_tree =
        bg.vertex_count() > 0 && connected && bg.simple_edges.len() == bg.vertex_count() - 1;
    let cycle = if is_tree {
        None
    } else {
        find_cycle(&bg).map(|c| c.into_iter().map(|i| bg.names[i].clone()).collect())
    };
    Ok(M1Verdict {
        is_tree,
        cycle,
        connected,
    })
}

/// Finds an embedded cycle by DFS and presents it canonically: rotated to
/// start at its smallest block index, travelling toward the smaller of that
/// block's two cycle neighbors.
fn find_cycle(bg: &BlockGraphs) -> Option<Vec<usize>> {
    let n = bg.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut state = vec![0u8; n]; // 0 unseen, 1 on stack path, 2 done
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        // entries are (vertex, parent, next neighbor cursor)
        let mut stack: Vec<(usize, usize, usize)> = vec![(start, usize::MAX, 0)];
        state[start] = 1;
        while let Some(&(v, from, next)) = stack.last() {
            let nbrs = bg.neighbors(v);
            if next >= nbrs.len() {
                state[v] = 2;
                stack.pop();
                continue;
            }
            stack.last_mut().unwrap().2 += 1;
            let w = nbrs[next];
            if w == from {
                continue;
            }
            if state[w] == 1 {
                // back edge: walk the parent chain from v to w
                let mut cycle = vec![v];
                let mut cur = v;
                while cur != w {
                    cur = parent[cur];
                    cycle.push(cur);
                }
                return Some(canonical_cycle(cycle));
            }
            if state[w] == 0 {
                parent[w] = v;
                state[w] = 1;
                stack.push((w, v, 0));
            }
        }
    }
    None
}

fn canonical_cycle(cycle: Vec<usize>) -> Vec<usize> {
    let len = cycle.len();
    let min_pos = (0..len).min_by_key(|&p| cycle[p]).unwrap();
    let forward: Vec<usize> = (0..len).map(|k| cycle[(min_pos + k) % len]).collect();
    let backward: Vec<usize> = (0..len).map(|k| cycle[(min_pos + len - k) % len]).collect();
    if forward[1] <= backward[1] {
        forward
    } else {
        backward
    }
}

/// Witness of an (M2) violation: an embedded alternating path through the
/// augmented graph of blocks whose first bundle is a multi-edge, plus the
/// 1-based positions `(i, j)` of another multi-edge bundle on it with
/// `i != j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Witness {
    /// Alternating block names `t_1, f_1, ..., f_{k-1}, t_k`.
    pub path: Vec<String>,
    /// Curve position `i` (into `t_1..t_k`) of the offending bundle.
    pub offending_i: usize,
    /// Surface position `j` (into `f_1..f_{k-1}`) of the offending bundle.
    pub offending_j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Verdict {
    pub holds: bool,
    pub witness: Option<M2Witness>,
}

/// Checks condition (M2) by exhaustive enumeration of embedded alternating
/// paths (both directions of a path are enumerated separately). The check is
/// meaningful whether or not (M1) holds.
///
/// Only paths whose first bundle is a multi-edge can violate the condition,
/// and a violation needs a second multi-edge bundle (one bundle cannot sit
/// at two distinct position pairs of an embedded path), so the enumeration
/// starts at multi-edge bundles and is skipped entirely when fewer than two
/// exist.
pub fn check_m2(m: &DegreeRefinement) -> Result<M2Verdict> {
    let bg = BlockGraphs::from_refinement(m)?;
    let multi_count = bg.multiplicities.iter().filter(|&&m| m > 1).count();
    if multi_count < 2 {
        return Ok(M2Verdict {
            holds: true,
            witness: None,
        });
    }
    let mut enumerated: u64 = 0;
    for start in 0..bg.vertex_count() {
        if bg.kinds[start].is_surface() {
            continue;
        }
        for &first in bg.neighbors(start) {
            if bg.multiplicity(start, first) <= 1 {
                continue;
            }
            let mut path = vec![start, first];
            let mut on_path = vec![false; bg.vertex_count()];
            on_path[start] = true;
            on_path[first] = true;
            if let Some(w) = extend_from_surface(&bg, &mut path, &mut on_path, &mut enumerated)? {
                return Ok(M2Verdict {
                    holds: false,
                    witness: Some(w),
                });
            }
        }
    }
    Ok(M2Verdict {
        holds: true,
        witness: None,
    })
}

/// Depth-first extension of an alternating path whose tail is a surface
/// block. Every extension ending at a curve block is a path of the required
/// shape, so violations are checked as the path grows.
fn extend_from_surface(
    bg: &BlockGraphs,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    enumerated: &mut u64,
) -> Result<Option<M2Witness>> {
    let tail = *path.last().unwrap();
    for &t in bg.neighbors(tail) {
        if on_path[t] {
            continue;
        }
        *enumerated += 1;
        if *enumerated > M2_PATH_CAP {
            return Err(Error::Resource(format!(
                "M2 check enumerated more than {M2_PATH_CAP} paths"
            )));
        }
        path.push(t);
        on_path[t] = true;
        if let Some(w) = violation_on(bg, path) {
            return Ok(Some(w));
        }
        for &f in bg.neighbors(t) {
            if on_path[f] {
                continue;
            }
            path.push(f);
            on_path[f] = true;
            if let Some(w) = extend_from_surface(bg, path, on_path, enumerated)? {
                return Ok(Some(w));
            }
            on_path[f] = false;
            path.pop();
        }
        on_path[t] = false;
        path.pop();
    }
    Ok(None)
}

/// Tests the path `t_1, f_1, ..., t_k` for the forbidden pattern: first
/// bundle a multi-edge and some bundle `(t_i, f_j)` with `i != j` a
/// multi-edge. Positions are checked over all pairs, not just consecutive
/// ones, matching the definition's quantifier.
fn violation_on(bg: &BlockGraphs, path: &[usize]) -> Option<M2Witness> {
    if bg.multiplicity(path[0], path[1]) <= 1 {
        return None;
    }
    // curves sit at even path positions, surfaces at odd ones
    let n_curves = path.len().div_ceil(2);
    let n_surfaces = path.len() / 2;
    for ti in 0..n_curves {
        for fj in 0..n_surfaces {
            if ti == fj {
                continue;
            }
            if bg.multiplicity(path[2 * ti], path[2 * fj + 1]) > 1 {
                return Some(M2Witness {
                    path: path.iter().map(|&p| bg.names[p].clone()).collect(),
                    offending_i: ti + 1,
                    offending_j: fj + 1,
                });
            }
        }
    }
    None
}

/// Tree shortcut for (M2), valid when (M1) holds: on a tree-shaped graph of
/// blocks a violation exists exactly when two multi-edge bundles see each
/// other across their surface sides. Used for differential testing against
/// the exhaustive check.
pub fn check_m2_tree_shortcut(m: &DegreeRefinement) -> Result<M2Verdict> {
    let bg = BlockGraphs::from_refinement(m)?;
    let bundles: Vec<(usize, usize)> = bg
        .simple_edges
        .iter()
        .zip(&bg.multiplicities)
        .filter(|(_, &mult)| mult > 1)
        .map(|(&e, _)| e)
        .collect();
    // surface side of a bundle: reachable set from its surface block with the
    // bundle's edge removed
    let side = |edge: (usize, usize)| -> Vec<bool> {
        let (a, b) = edge;
        let f = if bg.kinds[a].is_surface() { a } else { b };
        let mut seen = vec![false; bg.vertex_count()];
        seen[f] = true;
        let mut stack = vec![f];
        while let Some(v) = stack.pop() {
            for &w in bg.neighbors(v) {
                if (v.min(w), v.max(w)) == edge || seen[w] {
                    continue;
                }
                seen[w] = true;
                stack.push(w);
            }
        }
        seen
    };
    let sides: Vec<Vec<bool>> = bundles.iter().map(|&e| side(e)).collect();
    for (p, &(a1, b1)) in bundles.iter().enumerate() {
        for (q, &(a2, b2)) in bundles.iter().enumerate() {
            if p == q {
                continue;
            }
            let mutual = sides[p][a2] && sides[p][b2] && sides[q][a1] && sides[q][b1];
            if mutual {
                let witness = tree_witness(&bg, (a1, b1), (a2, b2));
                return Ok(M2Verdict {
                    holds: false,
                    witness: Some(witness),
                });
            }
        }
    }
    Ok(M2Verdict {
        holds: true,
        witness: None,
    })
}

/// Builds the witness path for two mutually visible bundles on a tree: the
/// tree path from the curve end of the first, through both surface ends, to
/// the curve end of the second.
fn tree_witness(bg: &BlockGraphs, e1: (usize, usize), e2: (usize, usize)) -> M2Witness {
    let curve_of = |e: (usize, usize)| if bg.kinds[e.0].is_curve() { e.0 } else { e.1 };
    let (t1, t2) = (curve_of(e1), curve_of(e2));
    // BFS path t1 -> t2 in the simple graph
    let n = bg.vertex_count();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[t1] = true;
    let mut queue = std::collections::VecDeque::from([t1]);
    while let Some(v) = queue.pop_front() {
        if v == t2 {
            break;
        }
        for &w in bg.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![t2];
    let mut cur = t2;
    while cur != t1 {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    let k = path.len().div_ceil(2);
    M2Witness {
        path: path.iter().map(|&p| bg.names[p].clone()).collect(),
        offending_i: k,
        offending_j: k - 1,
    }
}

/// Outcome of the torsion quasi-isometry classification.
#[derive(Clone, Debug)]
pub enum TorsionQiVerdict {
    /// Both conditions hold; carries a finite JSJ tree with refinement
    /// equivalent to the input's (the JSJ graph of a quasi-isometric group
    /// generated by finite-order elements) and the splits that built it.
    Yes {
        tree: BipartiteMultigraph,
        trace: Vec<SplitRecord>,
    },
    /// (M1) fails; carries the cycle witness when one exists.
    NoM1 { verdict: M1Verdict },
    /// (M1) holds but (M2) fails; carries the path witness.
    NoM2 { witness: M2Witness },
}

impl TorsionQiVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, TorsionQiVerdict::Yes { .. })
    }
}

/// Decides whether the group of a JSJ graph is quasi-isometric to a group
/// generated by finite-order elements, returning a witness JSJ tree on
/// success and the first failing condition otherwise.
pub fn classify_torsion_qi(g: &BipartiteMultigraph) -> Result<TorsionQiVerdict> {
    require_valid_jsj(g)?;
    let m = degree_refinement(g)?;
    let m1 = check_m1(&m)?;
    if !m1.is_tree {
        return Ok(TorsionQiVerdict::NoM1 { verdict: m1 });
    }
    let m2 = check_m2(&m)?;
    if !m2.holds {
        return Ok(TorsionQiVerdict::NoM2 {
            witness: m2.witness.expect("failing M2 carries a witness"),
        });
    }
    let gamma0 = augmented_graph_of_blocks(&m)?;
    let (tree, trace) = unwrap_to_tree(&gamma0)?;
    Ok(TorsionQiVerdict::Yes { tree, trace })
}
