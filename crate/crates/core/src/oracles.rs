//! Brute-force reference implementations, used only by tests and by the
//! CLI's `--verify` flag. Each one computes its answer from the defining
//! property rather than sharing code with the production path, and each is
//! guarded by a hard size limit.

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::graph::{require_bipartite, BipartiteMultigraph, VertexKind};
use crate::pmanifold::PManifold;
use crate::refinement::{Block, DegreePartition};

/// Size limit for the partition enumeration (Bell numbers grow fast).
pub const PARTITION_ORACLE_MAX_VERTICES: usize = 10;

/// Size limit for the subset filter of the matching oracle.
pub const MATCHING_ORACLE_MAX_SURFACES: usize = 20;

/// Enumerates all set partitions of `0..n` as restricted growth strings,
/// calling `visit` with the block assignment of each.
fn for_each_partition(n: usize, visit: &mut dyn FnMut(&[usize])) {
    if n == 0 {
        visit(&[]);
        return;
    }
    let mut assign = vec![0usize; n];
    loop {
        visit(&assign);
        // advance the restricted growth string
        let mut i = n - 1;
        loop {
            let max_prev = assign[..i].iter().copied().max().map_or(0, |m| m + 1);
            if i == 0 {
                return;
            }
            if assign[i] < max_prev {
                assign[i] += 1;
                for slot in assign.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                break;
            }
            assign[i] = 0;
            i -= 1;
        }
    }
}

/// The coarsest equitable kind-homogeneous partition, found by enumerating
/// every candidate partition and keeping one with the fewest blocks. Also
/// asserts the minimizer is unique as a set partition, which the refinement
/// theory predicts.
pub fn coarsest_equitable_bruteforce(g: &BipartiteMultigraph) -> Result<DegreePartition> {
    require_bipartite(g)?;
    let n = g.vertex_count();
    if n > PARTITION_ORACLE_MAX_VERTICES {
        return Err(Error::Resource(format!(
            "partition oracle limited to {PARTITION_ORACLE_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let curves: Vec<usize> = (0..n).filter(|&ix| g.kind(ix).is_curve()).collect();
    let surfaces: Vec<usize> = (0..n).filter(|&ix| g.kind(ix).is_surface()).collect();

    // iota-sum from vertex r into a block of vertex indices
    let iota_sum = |r: usize, block: &[usize]| -> ExtNat {
        if g.kind(r).is_surface() {
            if block.iter().any(|&s| g.multiplicity(r, s) > 0) {
                ExtNat::Inf
            } else {
                ExtNat::ZERO
            }
        } else {
            ExtNat::Fin(block.iter().map(|&s| g.multiplicity(r, s)).sum())
        }
    };

    let equitable = |blocks: &[Vec<usize>]| -> bool {
        blocks.iter().all(|bi| {
            blocks.iter().all(|bj| {
                let value = iota_sum(bi[0], bj);
                bi.iter().all(|&r| iota_sum(r, bj) == value)
            })
        })
    };

    let mut best: Option<Vec<Vec<usize>>> = None;
    let mut best_count = usize::MAX;
    let mut tie = false;
    // kind-homogeneous partitions factor through independent partitions of
    // the two kinds
    for_each_partition(curves.len(), &mut |curve_assign| {
        let curve_blocks = assemble(&curves, curve_assign);
        for_each_partition(surfaces.len(), &mut |surface_assign| {
            let mut blocks = curve_blocks.clone();
            blocks.extend(assemble(&surfaces, surface_assign));
            if !equitable(&blocks) {
                return;
            }
            match blocks.len().cmp(&best_count) {
                std::cmp::Ordering::Less => {
                    best_count = blocks.len();
                    best = Some(blocks);
                    tie = false;
                }
                std::cmp::Ordering::Equal => {
                    if best.as_ref() != Some(&blocks) {
                        tie = true;
                    }
                }
                std::cmp::Ordering::Greater => {}
            }
        });
    });
    if tie {
        return Err(Error::Internal(
            "coarsest equitable partition is not unique".into(),
        ));
    }
    let blocks = best.ok_or_else(|| {
        // the all-singleton partition is always equitable, so this cannot fire
        Error::Internal("no equitable partition found".into())
    })?;
    Ok(DegreePartition {
        blocks: blocks
            .into_iter()
            .map(|members| Block {
                kind: g.kind(members[0]),
                members: members.iter().map(|&ix| g.id(ix).to_string()).collect(),
            })
            .collect(),
    })
}

fn assemble(items: &[usize], assign: &[usize]) -> Vec<Vec<usize>> {
    let block_count = assign.iter().copied().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); block_count];
    for (pos, &b) in assign.iter().enumerate() {
        blocks[b].push(items[pos]);
    }
    blocks
}

/// All matchings by filtering every subset of the surface vertices through
/// the matching invariant.
pub fn matchings_bruteforce(p: &PManifold) -> Result<Vec<crate::comm::Matching>> {
    let g = p.graph();
    let surfaces: Vec<usize> = (0..g.vertex_count())
        .filter(|&ix| g.kind(ix).is_surface())
        .collect();
    if surfaces.len() > MATCHING_ORACLE_MAX_SURFACES {
        return Err(Error::Resource(format!(
            "matching oracle limited to {MATCHING_ORACLE_MAX_SURFACES} surfaces, got {}",
            surfaces.len()
        )));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << surfaces.len()) {
        let chosen: Vec<String> = surfaces
            .iter()
            .enumerate()
            .filter(|(pos, _)| mask & (1 << pos) != 0)
            .map(|(_, &ix)| g.id(ix).to_string())
            .collect();
        let mut sorted = chosen.clone();
        sorted.sort();
        if crate::comm::is_matching(p, &sorted) {
            out.push(crate::comm::Matching { chosen: sorted });
        }
    }
    out.sort();
    Ok(out)
}

/// Canonical code of a rooted tree: leaves are `()`, inner nodes concatenate
/// their children's codes in sorted order, and every node carries its kind.
/// Two rooted kinded trees have equal codes iff they are isomorphic as
/// rooted kinded trees.
pub fn tree_code_bruteforce(t: &BipartiteMultigraph, root: &str) -> Result<String> {
    if !t.is_tree() {
        return Err(Error::Precondition("tree code oracle needs a tree".into()));
    }
    let root = t.require_index(root)?;
    Ok(rooted_code(t, root, usize::MAX))
}

fn rooted_code(t: &BipartiteMultigraph, v: usize, parent: usize) -> String {
    let label = match t.kind(v) {
        VertexKind::TwoEnded => 'T',
        VertexKind::Fuchsian => 'F',
    };
    let mut children: Vec<String> = t
        .neighbors(v)
        .iter()
        .filter(|&&(w, _)| w != parent)
        .map(|&(w, _)| rooted_code(t, w, v))
        .collect();
    children.sort_unstable();
    format!("({label}{})", children.concat())
}

/// Unrooted canonical form: the minimum rooted code over all roots. Equal
/// forms iff the kinded trees are isomorphic.
pub fn tree_code_unrooted(t: &BipartiteMultigraph) -> Result<String> {
    if !t.is_tree() {
        return Err(Error::Precondition("tree code oracle needs a tree".into()));
    }
    (0..t.vertex_count())
        .map(|v| rooted_code(t, v, usize::MAX))
        .min()
        .ok_or_else(|| Error::InvalidInput("empty graph".into()))
}
