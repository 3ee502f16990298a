//! Degree partitions and degree refinements of bipartite multigraphs.
//!
//! The refinement here is the bipartite variant: the entry for an ordered
//! vertex pair is `iota(r, s)`, which is infinite whenever `r` is a surface
//! vertex adjacent to `s` (a surface vertex lifts to an infinite-valence
//! vertex of the JSJ tree) and the finite edge count when `r` is a curve
//! vertex. Equivalence classes of these matrices classify the groups in the
//! class up to quasi-isometry.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::extnat::ExtNat;
use crate::graph::{require_bipartite, require_valid_jsj, BipartiteMultigraph, VertexKind};

/// `iota(r, s)`: infinity if `r` is a surface vertex adjacent to `s`; the
/// number of parallel edges if `r` is a curve vertex adjacent to `s`; zero
/// otherwise.
pub fn iota(g: &BipartiteMultigraph, r: &str, s: &str) -> Result<ExtNat> {
    let ri = g.require_index(r)?;
    let si = g.require_index(s)?;
    if ri == si {
        return Err(Error::InvalidInput(format!(
            "iota needs distinct vertices, got `{r}` twice"
        )));
    }
    Ok(iota_ix(g, ri, si))
}

fn iota_ix(g: &BipartiteMultigraph, r: usize, s: usize) -> ExtNat {
    let m = g.multiplicity(r, s);
    if m == 0 {
        ExtNat::ZERO
    } else if g.kind(r).is_surface() {
        ExtNat::Inf
    } else {
        ExtNat::Fin(m)
    }
}

/// The valence of any lift of `r` in the JSJ tree: the sum of `iota(r, .)`
/// over all other vertices. Infinite for every surface vertex with an edge.
pub fn augmented_valence(g: &BipartiteMultigraph, r: &str) -> Result<ExtNat> {
    let ri = g.require_index(r)?;
    Ok(augmented_valence_ix(g, ri))
}

fn augmented_valence_ix(g: &BipartiteMultigraph, r: usize) -> ExtNat {
    if g.kind(r).is_surface() {
        if g.neighbors(r).is_empty() {
            ExtNat::ZERO
        } else {
            ExtNat::Inf
        }
    } else {
        ExtNat::Fin(g.valence(r))
    }
}

/// Sum of `iota(r, s)` over the members `s` of a block.
fn iota_sum(g: &BipartiteMultigraph, r: usize, block: &[usize]) -> ExtNat {
    if g.kind(r).is_surface() {
        if block.iter().any(|&s| g.multiplicity(r, s) > 0) {
            ExtNat::Inf
        } else {
            ExtNat::ZERO
        }
    } else {
        ExtNat::Fin(block.iter().map(|&s| g.multiplicity(r, s)).sum())
    }
}

/// One block of a degree partition: kind-homogeneous, members listed by
/// vertex id in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub kind: VertexKind,
    pub members: Vec<String>,
}

/// The coarsest equitable partition of the vertex set: for every ordered
/// block pair the `iota`-sum from a member of the first block into the second
/// block is constant. Blocks are ordered canonically — curve blocks first,
/// then by the refinement signature history — so the order is invariant
/// under vertex renaming.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePartition {
    pub blocks: Vec<Block>,
}

impl DegreePartition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `id`, if any.
    pub fn block_of(&self, id: &str) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.members.iter().any(|m| m == id))
    }

    /// Order-insensitive comparison: equal as a set partition.
    pub fn same_partition(&self, other: &DegreePartition) -> bool {
        let canon = |p: &DegreePartition| {
            let mut sets: Vec<Vec<String>> = p
                .blocks
                .iter()
                .map(|b| {
                    let mut m = b.members.clone();
                    m.sort();
                    m
                })
                .collect();
            sets.sort();
            sets
        };
        canon(self) == canon(other)
    }
}

/// Computes the degree partition by iterated refinement: start from
/// `(kind, augmented valence)` classes and split by `iota`-sum signatures
/// into the current blocks until stable. Defined on disconnected inputs.
pub fn degree_partition(g: &BipartiteMultigraph) -> Result<DegreePartition> {
    require_bipartite(g)?;
    Ok(partition_indices(g).into_partition(g))
}

/// Internal index-level partition; blocks hold vertex indices in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IndexPartition {
    pub blocks: Vec<Vec<usize>>,
    pub kinds: Vec<VertexKind>,
}

impl IndexPartition {
    fn into_partition(self, g: &BipartiteMultigraph) -> DegreePartition {
        DegreePartition {
            blocks: self
                .blocks
                .iter()
                .zip(&self.kinds)
                .map(|(members, &kind)| Block {
                    kind,
                    members: members.iter().map(|&ix| g.id(ix).to_string()).collect(),
                })
                .collect(),
        }
    }
}

pub(crate) fn partition_indices(g: &BipartiteMultigraph) -> IndexPartition {
    let n = g.vertex_count();

    // Step 1: group by (kind, augmented valence), curve blocks first.
    let mut initial: BTreeMap<(VertexKind, ExtNat), Vec<usize>> = BTreeMap::new();
    for ix in 0..n {
        initial
            .entry((g.kind(ix), augmented_valence_ix(g, ix)))
            .or_default()
            .push(ix);
    }
    let mut blocks: Vec<Vec<usize>> = initial.into_values().collect();

    // Steps 2-3: refine by signatures until stable. Each pass only splits
    // blocks, so the loop runs at most |V| times.
    loop {
        let signature =
            |v: usize| -> Vec<ExtNat> { blocks.iter().map(|b| iota_sum(g, v, b)).collect() };
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let mut groups: BTreeMap<Vec<ExtNat>, Vec<usize>> = BTreeMap::new();
            for &v in block {
                groups.entry(signature(v)).or_default().push(v);
            }
            next.extend(groups.into_values());
        }
        debug_assert!(
            next.len() >= blocks.len(),
            "refinement must never merge blocks"
        );
        let stable = next.len() == blocks.len();
        blocks = next;
        if stable {
            break;
        }
    }

    let kinds = blocks.iter().map(|b| g.kind(b[0])).collect();
    IndexPartition { blocks, kinds }
}

/// A degree refinement: the block kinds and the square matrix of constant
/// `iota`-sums between blocks. Surface rows contain only `0`/`inf`, curve
/// rows are finite, same-kind entries are zero, and nonzero entries come in
/// transposed pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRefinement {
    pub kinds: Vec<VertexKind>,
    pub matrix: Vec<Vec<ExtNat>>,
    /// The partition this matrix summarizes; absent for matrices given
    /// directly (e.g. parsed from a matrix document).
    pub partition: Option<DegreePartition>,
}

impl DegreeRefinement {
    pub fn order(&self) -> usize {
        self.kinds.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> ExtNat {
        self.matrix[i][j]
    }

    /// Constructs a refinement from raw parts and checks well-formedness.
    pub fn from_matrix(kinds: Vec<VertexKind>, matrix: Vec<Vec<ExtNat>>) -> Result<Self> {
        let m = DegreeRefinement {
            kinds,
            matrix,
            partition: None,
        };
        m.check_well_formed()?;
        Ok(m)
    }

    pub fn check_well_formed(&self) -> Result<()> {
        let n = self.kinds.len();
        if self.matrix.len() != n || self.matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(
                "refinement matrix is not square".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let e = self.matrix[i][j];
                if self.kinds[i] == self.kinds[j] && !e.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "nonzero entry ({i},{j}) between blocks of the same kind"
                    )));
                }
                match self.kinds[i] {
                    VertexKind::Fuchsian => {
                        if e != ExtNat::ZERO && e != ExtNat::Inf {
                            return Err(Error::InvalidInput(format!(
                                "surface-row entry ({i},{j}) must be 0 or inf"
                            )));
                        }
                    }
                    VertexKind::TwoEnded => {
                        if !e.is_finite() {
                            return Err(Error::InvalidInput(format!(
                                "curve-row entry ({i},{j}) must be finite"
                            )));
                        }
                    }
                }
                if e.is_zero() != self.matrix[j][i].is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "entries ({i},{j}) and ({j},{i}) disagree on adjacency"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Indices of curve blocks, in matrix order.
    pub fn curve_blocks(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.kinds[i].is_curve())
            .collect()
    }

    /// Indices of surface blocks, in matrix order.
    pub fn surface_blocks(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.kinds[i].is_surface())
            .collect()
    }

    /// Canonical block name: `t1..tn` for curve blocks, `f1..fm` for surface
    /// blocks, numbered within kind in matrix order.
    pub fn block_name(&self, i: usize) -> String {
        let rank = self.kinds[..i]
            .iter()
            .filter(|k| **k == self.kinds[i])
            .count()
            + 1;
        match self.kinds[i] {
            VertexKind::TwoEnded => format!("t{rank}"),
            VertexKind::Fuchsian => format!("f{rank}"),
        }
    }

    /// Inverse of `block_name`.
    pub fn block_by_name(&self, name: &str) -> Option<usize> {
        (0..self.order()).find(|&i| self.block_name(i) == name)
    }

    /// Matrix text form: header `blocks: T T F ...` then one row per line
    /// with entries space-separated and infinity rendered as `inf`.
    pub fn to_text(&self) -> String {
        let mut out = String::from("blocks:");
        for k in &self.kinds {
            out.push(' ');
            out.push(match k {
                VertexKind::TwoEnded => 'T',
                VertexKind::Fuchsian => 'F',
            });
        }
        out.push('\n');
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the matrix text form produced by [`Self::to_text`].
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty matrix text".into()))?;
        let header = header
            .strip_prefix("blocks:")
            .ok_or_else(|| Error::InvalidInput("matrix text must start with `blocks:`".into()))?;
        let kinds: Result<Vec<VertexKind>> = header
            .split_whitespace()
            .map(|t| match t {
                "T" => Ok(VertexKind::TwoEnded),
                "F" => Ok(VertexKind::Fuchsian),
                other => Err(Error::InvalidInput(format!("bad block kind `{other}`"))),
            })
            .collect();
        let kinds = kinds?;
        let mut matrix = Vec::with_capacity(kinds.len());
        for line in lines {
            let row: Result<Vec<ExtNat>> = line.split_whitespace().map(str::parse).collect();
            matrix.push(row?);
        }
        Self::from_matrix(kinds, matrix)
    }
}

/// Computes the degree refinement of a graph: the matrix of constant
/// `iota`-sums over the degree partition.
pub fn degree_refinement(g: &BipartiteMultigraph) -> Result<DegreeRefinement> {
    require_bipartite(g)?;
    let parts = partition_indices(g);
    let n = parts.blocks.len();
    let mut matrix = vec![vec![ExtNat::ZERO; n]; n];
    for (i, block) in parts.blocks.iter().enumerate() {
        let rep = block[0];
        for (j, other) in parts.blocks.iter().enumerate() {
            let value = iota_sum(g, rep, other);
            debug_assert!(
                block.iter().all(|&v| iota_sum(g, v, other) == value),
                "partition is not equitable"
            );
            matrix[i][j] = value;
        }
    }
    Ok(DegreeRefinement {
        kinds: parts.kinds.clone(),
        matrix,
        partition: Some(parts.into_partition(g)),
    })
}

/// A kind-preserving bijection on block indices witnessing `M' = P M P^T`:
/// `map[i]` is the block of the second refinement matched to block `i` of
/// the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPermutation {
    pub map: Vec<usize>,
}

impl fmt::Display for BlockPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .map(|(i, j)| format!("{i}->{j}"))
            .collect();
        write!(f, "{}", cells.join(" "))
    }
}

/// Searches for a kind-preserving permutation turning one refinement into the
/// other. The search is exhaustive backtracking; candidates are pruned by
/// kind and by row/column multisets, which keeps the block counts in scope
/// (tens) immediate.
pub fn refinement_equivalent(
    a: &DegreeRefinement,
    b: &DegreeRefinement,
) -> Option<BlockPermutation> {
    let mut found = None;
    search_equivalences(a, b, &mut |perm| {
        found = Some(BlockPermutation { map: perm.to_vec() });
        true
    });
    found
}

/// Enumerates every witness permutation (used by the strict blockwise
/// commensurability mode and by tests).
pub fn refinement_equivalences(
    a: &DegreeRefinement,
    b: &DegreeRefinement,
) -> Vec<BlockPermutation> {
    let mut all = Vec::new();
    search_equivalences(a, b, &mut |perm| {
        all.push(BlockPermutation { map: perm.to_vec() });
        false
    });
    all
}

/// Backtracking over block assignments. `emit` returns true to stop early.
fn search_equivalences(
    a: &DegreeRefinement,
    b: &DegreeRefinement,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let n = a.order();
    if n != b.order() {
        return;
    }
    let sorted_row = |m: &DegreeRefinement, i: usize, transpose: bool| -> Vec<ExtNat> {
        let mut row: Vec<ExtNat> = (0..n)
            .map(|j| {
                if transpose {
                    m.matrix[j][i]
                } else {
                    m.matrix[i][j]
                }
            })
            .collect();
        row.sort_unstable();
        row
    };
    // Candidate targets for each source block: same kind, same row and
    // column multisets.
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 0..n {
        let (ri, ci) = (sorted_row(a, i, false), sorted_row(a, i, true));
        let cand: Vec<usize> = (0..n)
            .filter(|&j| {
                a.kinds[i] == b.kinds[j]
                    && ri == sorted_row(b, j, false)
                    && ci == sorted_row(b, j, true)
            })
            .collect();
        if cand.is_empty() {
            return;
        }
        candidates.push(cand);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        a: &DegreeRefinement,
        b: &DegreeRefinement,
        candidates: &[Vec<usize>],
        map: &mut [usize],
        used: &mut [bool],
        depth: usize,
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = map.len();
        if depth == n {
            return emit(map);
        }
        'next: for &target in &candidates[depth] {
            if used[target] {
                continue;
            }
            for earlier in 0..depth {
                if a.matrix[depth][earlier] != b.matrix[target][map[earlier]]
                    || a.matrix[earlier][depth] != b.matrix[map[earlier]][target]
                {
                    continue 'next;
                }
            }
            if a.matrix[depth][depth] != b.matrix[target][target] {
                continue;
            }
            map[depth] = target;
            used[target] = true;
            if rec(a, b, candidates, map, used, depth + 1, emit) {
                return true;
            }
            used[target] = false;
            map[depth] = usize::MAX;
        }
        false
    }
    rec(a, b, &candidates, &mut map, &mut used, 0, emit);
}

/// Verdict of the quasi-isometry test: the groups are quasi-isometric iff
/// the degree refinements of their JSJ graphs are equivalent.
#[derive(Clone, Debug)]
pub struct QiVerdict {
    pub equivalent: bool,
    pub witness: Option<BlockPermutation>,
    pub refinement_a: DegreeRefinement,
    pub refinement_b: DegreeRefinement,
}

/// Decides quasi-isometry of two groups from their JSJ graphs. Both inputs
/// must be valid (connected) JSJ graphs.
pub fn is_quasi_isometric(a: &BipartiteMultigraph, b: &BipartiteMultigraph) -> Result<QiVerdict> {
    require_valid_jsj(a)?;
    require_valid_jsj(b)?;
    let ra = degree_refinement(a)?;
    let rb = degree_refinement(b)?;
    let witness = refinement_equivalent(&ra, &rb);
    Ok(QiVerdict {
        equivalent: witness.is_some(),
        witness,
        refinement_a: ra,
        refinement_b: rb,
    })
}
