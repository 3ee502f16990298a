//! Necessary commensurability invariants: the block Euler characteristic
//! vector, matchings of P-manifolds and the matching Euler characteristic
//! vector, and the genus-replacement family that separates commensurability
//! classes inside one quasi-isometry class.
//!
//! None of these decide commensurability; a failed comparison proves two
//! groups are *not* abstractly commensurable, a passing one proves nothing.

use std::sync::atomic::{AtomicBool, Ordering};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::graph::{require_valid_jsj, BipartiteMultigraph, VertexKind};
use crate::pmanifold::{ChiDecoration, PManifold};
use crate::rational::Rational;
use crate::refinement::{degree_refinement, refinement_equivalences};

/// Search-node budget for the matching solver.
const MATCHING_NODE_CAP: u64 = 1 << 30;

/// Options for the potentially long-running matching enumerations. The
/// cancellation flag is cooperative: when it flips, the search stops with
/// [`Error::Cancelled`]. Results never depend on when the flag is polled.
#[derive(Default)]
pub struct SearchOptions<'a> {
    pub cancel: Option<&'a AtomicBool>,
}

impl SearchOptions<'_> {
    fn check(&self) -> Result<()> {
        match self.cancel {
            Some(flag) if flag.load(Ordering::Relaxed) => Err(Error::Cancelled),
            _ => Ok(()),
        }
    }
}

/// Sums per surface block of the degree partition, sorted non-decreasing.
/// All entries are negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerVector {
    pub entries: Vec<Rational>,
}

/// Per-layer maximal matching characteristics, in layer order (not sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingVector {
    pub entries: Vec<Rational>,
}

/// The block Euler characteristic vector: per surface block of the degree
/// partition, the sum of the members' characteristics.
pub fn block_euler_vector(g: &BipartiteMultigraph, chi: &ChiDecoration) -> Result<EulerVector> {
    require_valid_jsj(g)?;
    chi.require_total_on(g)?;
    let refinement = degree_refinement(g)?;
    let partition = refinement
        .partition
        .as_ref()
        .expect("computed refinement has a partition");
    let mut entries: Vec<Rational> = partition
        .blocks
        .iter()
        .filter(|b| b.kind == VertexKind::Fuchsian)
        .map(|b| {
            b.members
                .iter()
                .map(|id| chi.get(id).expect("chi is total").clone())
                .sum()
        })
        .collect();
    entries.sort();
    Ok(EulerVector { entries })
}

/// Per-block sums in refinement block order (not sorted), for the strict
/// blockwise comparison mode.
fn block_sums_in_block_order(
    g: &BipartiteMultigraph,
    chi: &ChiDecoration,
) -> Result<Vec<Rational>> {
    require_valid_jsj(g)?;
    chi.require_total_on(g)?;
    let refinement = degree_refinement(g)?;
    let partition = refinement
        .partition
        .as_ref()
        .expect("computed refinement has a partition");
    Ok(partition
        .blocks
        .iter()
        .filter(|b| b.kind == VertexKind::Fuchsian)
        .map(|b| {
            b.members
                .iter()
                .map(|id| chi.get(id).expect("total").clone())
                .sum()
        })
        .collect())
}

/// Tests vector commensurability: nonzero integers `K`, `K'` with
/// `K v = K' w`. The witness is returned positive and in lowest terms
/// (entries are all negative, so the scalars have the same sign).
pub fn vectors_commensurable(v: &[Rational], w: &[Rational]) -> Option<(BigInt, BigInt)> {
    use num_traits::Zero;
    if v.len() != w.len() {
        return None;
    }
    // K/K' must equal w_i / v_i at every position; zero entries (which the
    // invariants forbid anyway) can only pair with zero
    let mut ratio: Option<Rational> = None;
    for (a, b) in v.iter().zip(w) {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => continue,
            (true, false) | (false, true) => return None,
            (false, false) => {
                let r = b / a;
                match &ratio {
                    None => ratio = Some(r),
                    Some(prev) if *prev != r => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let ratio = ratio.unwrap_or_else(|| Rational::from_integer(1.into()));
    let (mut k, mut kp) = (ratio.numer().clone(), ratio.denom().clone());
    if k.is_negative() {
        k = -k;
        kp = -kp;
    }
    Some((k, kp))
}

/// Outcome of a necessary-condition comparison. `Obstructed` proves the
/// groups are not abstractly commensurable; `NotObstructed` proves nothing;
/// `Inapplicable` means the cited condition's hypotheses are unmet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommVerdict {
    Obstructed {
        vector_a: Vec<Rational>,
        vector_b: Vec<Rational>,
    },
    NotObstructed {
        witness: (BigInt, BigInt),
        vector_a: Vec<Rational>,
        vector_b: Vec<Rational>,
    },
    Inapplicable {
        reason: String,
    },
}

impl CommVerdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, CommVerdict::Obstructed { .. })
    }
}

/// Compares block Euler characteristic vectors. Applicable to every pair of
/// valid decorated JSJ graphs.
pub fn block_obstruction(
    ga: &BipartiteMultigraph,
    chia: &ChiDecoration,
    gb: &BipartiteMultigraph,
    chib: &ChiDecoration,
) -> Result<CommVerdict> {
    let va = block_euler_vector(ga, chia)?;
    let vb = block_euler_vector(gb, chib)?;
    Ok(match vectors_commensurable(&va.entries, &vb.entries) {
        Some(witness) => CommVerdict::NotObstructed {
            witness,
            vector_a: va.entries,
            vector_b: vb.entries,
        },
        None => CommVerdict::Obstructed {
            vector_a: va.entries,
            vector_b: vb.entries,
        },
    })
}

/// Stricter variant: compares per-block sums blockwise under every witness
/// permutation of the two refinements, instead of sorting. Sorting can
/// conflate distinct blocks that happen to carry equal sums; this mode
/// cannot, at the cost of requiring equivalent refinements to say anything.
pub fn block_obstruction_strict(
    ga: &BipartiteMultigraph,
    chia: &ChiDecoration,
    gb: &BipartiteMultigraph,
    chib: &ChiDecoration,
) -> Result<CommVerdict> {
    let sums_a = block_sums_in_block_order(ga, chia)?;
    let sums_b = block_sums_in_block_order(gb, chib)?;
    let ra = degree_refinement(ga)?;
    let rb = degree_refinement(gb)?;
    let witnesses = refinement_equivalences(&ra, &rb);
    if witnesses.is_empty() {
        return Ok(CommVerdict::Inapplicable {
            reason: "degree refinements are not equivalent".into(),
        });
    }
    let surface_a = ra.surface_blocks();
    let surface_b = rb.surface_blocks();
    for w in &witnesses {
        // restrict the block permutation to surface blocks
        let permuted: Vec<Rational> = surface_a
            .iter()
            .map(|&i| {
                let target = w.map[i];
                let pos = surface_b
                    .iter()
                    .position(|&j| j == target)
                    .expect("kind-preserving");
                sums_b[pos].clone()
            })
            .collect();
        if let Some(witness) = vectors_commensurable(&sums_a, &permuted) {
            return Ok(CommVerdict::NotObstructed {
                witness,
                vector_a: sums_a,
                vector_b: sums_b,
            });
        }
    }
    Ok(CommVerdict::Obstructed {
        vector_a: sums_a,
        vector_b: sums_b,
    })
}

/// The common valence of the curve vertices, counted with multiplicity, if
/// they all agree; `None` otherwise (or when there is no curve vertex).
pub fn uniform_curve_degree(p: &PManifold) -> Option<u64> {
    let g = p.graph();
    let mut degree = None;
    for (ix, v) in g.vertices().enumerate() {
        if v.kind.is_curve() {
            let d = g.valence(ix);
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return None,
                Some(_) => {}
            }
        }
    }
    degree
}

/// A matching: a set of surface pieces whose boundary circles run along
/// every branching curve exactly once. A piece meeting some curve along two
/// circles can therefore never be chosen.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matching {
    pub chosen: Vec<String>,
}

impl Matching {
    /// Total characteristic of the chosen pieces.
    pub fn chi(&self, p: &PManifold) -> Rational {
        self.chosen
            .iter()
            .map(|id| Rational::from_integer(p.chi_of(id).expect("chosen id has chi").into()))
            .sum()
    }
}

/// Checks the matching invariant in isolation: every curve's incident
/// multiplicity into the chosen set is exactly one.
pub fn is_matching(p: &PManifold, chosen: &[String]) -> bool {
    let g = p.graph();
    let chosen_ix: Vec<usize> = match chosen.iter().map(|id| g.index_of(id)).collect() {
        Some(v) => v,
        None => return false,
    };
    if chosen_ix.iter().any(|&ix| !g.kind(ix).is_surface()) {
        return false;
    }
    for (ix, v) in g.vertices().enumerate() {
        if v.kind.is_curve() {
            let covered: u64 = chosen_ix.iter().map(|&s| g.multiplicity(ix, s)).sum();
            if covered != 1 {
                return false;
            }
        }
    }
    true
}

fn require_residual_valid(p: &PManifold) -> Result<()> {
    let g = p.graph();
    if !g.is_bipartite_by_kind() {
        return Err(Error::InvalidInput(
            "graph is not bipartite by vertex kind".into(),
        ));
    }
    for (ix, v) in g.vertices().enumerate() {
        if v.kind.is_surface() && g.valence(ix) == 0 {
            return Err(Error::InvalidInput(format!(
                "surface `{}` has empty boundary",
                v.id
            )));
        }
    }
    Ok(())
}

/// Enumerates every matching by exact-cover backtracking over the curves,
/// most-constrained curve first. Output is sorted by chosen-id set, so the
/// order is deterministic. Fails with a resource error past the node budget.
pub fn enumerate_matchings(p: &PManifold) -> Result<Vec<Matching>> {
    enumerate_matchings_with(p, &SearchOptions::default())
}

pub fn enumerate_matchings_with(
    p: &PManifold,
    options: &SearchOptions<'_>,
) -> Result<Vec<Matching>> {
    require_residual_valid(p)?;
    let mut out = Vec::new();
    solve_exact_cover(p, options, &mut |chosen| {
        out.push(Matching {
            chosen: chosen.to_vec(),
        });
        false
    })?;
    out.sort();
    Ok(out)
}

/// Backtracking exact cover. `emit` receives each solution (chosen surface
/// ids, sorted); returning true stops the search.
fn solve_exact_cover(
    p: &PManifold,
    options: &SearchOptions<'_>,
    emit: &mut dyn FnMut(&[String]) -> bool,
) -> Result<()> {
    let g = p.graph();
    let curves: Vec<usize> = (0..g.vertex_count())
        .filter(|&ix| g.kind(ix).is_curve())
        .collect();
    let surfaces: Vec<usize> = (0..g.vertex_count())
        .filter(|&ix| g.kind(ix).is_surface())
        .collect();

    // A surface is usable only if all its boundary multiplicities are 1:
    // choosing it must cover each of its curves exactly once.
    let usable: Vec<bool> = surfaces
        .iter()
        .map(|&s| g.neighbors(s).iter().all(|&(_, m)| m == 1))
        .collect();

    // candidate surfaces per curve, by surface position
    let candidates: Vec<Vec<usize>> = curves
        .iter()
        .map(|&c| {
            (0..surfaces.len())
                .filter(|&spos| usable[spos] && g.multiplicity(c, surfaces[spos]) > 0)
                .collect()
        })
        .collect();

    struct State<'a> {
        g: &'a BipartiteMultigraph,
        curves: Vec<usize>,
        surfaces: Vec<usize>,
        candidates: Vec<Vec<usize>>,
        covered: Vec<bool>,
        chosen: Vec<bool>,
        excluded: Vec<u32>,
        nodes: u64,
    }

    impl State<'_> {
        /// Uncovered curve with the fewest available candidates.
        fn pick_curve(&self) -> Option<(usize, Vec<usize>)> {
            let mut best: Option<(usize, Vec<usize>)> = None;
            for (cpos, &_c) in self.curves.iter().enumerate() {
                if self.covered[cpos] {
                    continue;
                }
                let avail: Vec<usize> = self.candidates[cpos]
                    .iter()
                    .copied()
                    .filter(|&spos| self.excluded[spos] == 0 && !self.chosen[spos])
                    .collect();
                let better = match &best {
                    None => true,
                    Some((_, b)) => avail.len() < b.len(),
                };
                if better {
                    let empty = avail.is_empty();
                    best = Some((cpos, avail));
                    if empty {
                        break;
                    }
                }
            }
            best
        }

        fn curve_pos(&self, c: usize) -> usize {
            self.curves
                .iter()
                .position(|&x| x == c)
                .expect("curve index")
        }
    }

    fn recurse(
        st: &mut State<'_>,
        options: &SearchOptions<'_>,
        emit: &mut dyn FnMut(&[String]) -> bool,
    ) -> Result<bool> {
        options.check()?;
        st.nodes += 1;
        if st.nodes > MATCHING_NODE_CAP {
            return Err(Error::Resource(format!(
                "matching search exceeded {MATCHING_NODE_CAP} nodes"
            )));
        }
        let Some((_cpos, avail)) = st.pick_curve() else {
            // every curve covered: report the chosen set
            let mut ids: Vec<String> = st
                .chosen
                .iter()
                .enumerate()
                .filter(|(_, &ch)| ch)
                .map(|(spos, _)| st.g.id(st.surfaces[spos]).to_string())
                .collect();
            ids.sort();
            return Ok(emit(&ids));
        };
        for spos in avail {
            // choose surface spos for curve cpos
            let s = st.surfaces[spos];
            let mut newly_covered = Vec::new();
            let mut ok = true;
            for &(c, _m) in st.g.neighbors(s) {
                let pos = st.curve_pos(c);
                if st.covered[pos] {
                    ok = false;
                    break;
                }
                newly_covered.push(pos);
            }
            if !ok {
                continue;
            }
            st.chosen[spos] = true;
            for &pos in &newly_covered {
                st.covered[pos] = true;
            }
            // surfaces sharing a covered curve become unusable
            let mut excluded_now = Vec::new();
            for &pos in &newly_covered {
                for &other in &st.candidates[pos] {
                    if other != spos {
                        st.excluded[other] += 1;
                        excluded_now.push(other);
                    }
                }
            }
            let stop = recurse(st, options, emit)?;
            for other in excluded_now {
                st.excluded[other] -= 1;
            }
            for &pos in &newly_covered {
                st.covered[pos] = false;
            }
            st.chosen[spos] = false;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    let n_curves = curves.len();
    let n_surfaces = surfaces.len();
    let mut st = State {
        g,
        curves,
        surfaces,
        candidates,
        covered: vec![false; n_curves],
        chosen: vec![false; n_surfaces],
        excluded: vec![0; n_surfaces],
        nodes: 0,
    };
    recurse(&mut st, options, emit)?;
    Ok(())
}

/// Builds a matching on a P-manifold over a forest by the constructive
/// existence argument: choose a piece, cover its curves, exclude the
/// neighbors, and cover each frontier curve with its lowest-id remaining
/// piece. Deterministic; the output is validated before returning.
pub fn forest_matching(p: &PManifold) -> Result<Matching> {
    let g = p.graph();
    require_residual_valid(p)?;
    if !components_are_simple_forests(g) {
        return Err(Error::Precondition(
            "forest_matching needs the underlying simple graph to be a forest".into(),
        ));
    }
    match uniform_curve_degree(p) {
        Some(n) if n >= 2 => {}
        other => {
            return Err(Error::Precondition(format!(
                "forest_matching needs a uniform curve degree of at least 2, got {other:?}"
            )))
        }
    }

    let mut chosen: Vec<usize> = Vec::new();
    let mut covered = vec![false; g.vertex_count()];
    let mut blocked = vec![false; g.vertex_count()];

    // lowest-id first among the component's surfaces
    let mut surface_ids: Vec<usize> = (0..g.vertex_count())
        .filter(|&ix| g.kind(ix).is_surface())
        .collect();
    surface_ids.sort_by(|&a, &b| g.id(a).cmp(g.id(b)));

    let choose = |s: usize,
                  chosen: &mut Vec<usize>,
                  covered: &mut Vec<bool>,
                  frontier: &mut Vec<usize>|
     -> Result<()> {
        chosen.push(s);
        for &(c, m) in g.neighbors(s) {
            if m != 1 || covered[c] {
                return Err(Error::Precondition(format!(
                    "matching construction stuck at surface `{}`: a boundary circle repeats a branching curve",
                    g.id(s)
                )));
            }
            covered[c] = true;
            frontier.push(c);
        }
        Ok(())
    };

    for &seed in &surface_ids {
        if blocked[seed] || chosen.contains(&seed) {
            continue;
        }
        let mut frontier: Vec<usize> = Vec::new();
        choose(seed, &mut chosen, &mut covered, &mut frontier)?;
        while let Some(c) = frontier.pop() {
            // block the unchosen surfaces at c; their other uncovered curves
            // need a choice of their own
            let mut need: Vec<usize> = Vec::new();
            for &(s, _) in g.neighbors(c) {
                if chosen.contains(&s) || blocked[s] {
                    continue;
                }
                blocked[s] = true;
                for &(c2, _) in g.neighbors(s) {
                    if !covered[c2] {
                        need.push(c2);
                    }
                }
            }
            need.sort_by(|&a, &b| g.id(a).cmp(g.id(b)));
            need.dedup();
            for c2 in need {
                if covered[c2] {
                    continue;
                }
                let pick = g
                    .neighbors(c2)
                    .iter()
                    .map(|&(s, _)| s)
                    .filter(|&s| !blocked[s] && !chosen.contains(&s))
                    .min_by(|&a, &b| g.id(a).cmp(g.id(b)))
                    .ok_or_else(|| {
                        Error::Internal(format!(
                            "no candidate piece left for curve `{}` on a forest",
                            g.id(c2)
                        ))
                    })?;
                choose(pick, &mut chosen, &mut covered, &mut frontier)?;
            }
        }
    }

    let mut ids: Vec<String> = chosen.iter().map(|&s| g.id(s).to_string()).collect();
    ids.sort();
    if !is_matching(p, &ids) {
        return Err(Error::Internal(
            "forest matching construction produced an invalid matching".into(),
        ));
    }
    Ok(Matching { chosen: ids })
}

/// Whether every component's simple graph is acyclic (the multigraph may
/// still carry parallel edges, which the matching machinery handles as
/// unusable pieces).
fn components_are_simple_forests(g: &BipartiteMultigraph) -> bool {
    g.components().iter().all(|comp| {
        let sub = g.induced_subgraph(comp);
        sub.simple_edge_count() == sub.vertex_count() - 1
    })
}

/// A maximal matching and its characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalMatching {
    pub matching: Matching,
    pub chi: Rational,
    /// Every optimal matching, sorted; the reported one is the
    /// lexicographically smallest.
    pub optimal: Vec<Matching>,
}

/// Finds a matching maximizing the total characteristic (all chi are
/// negative, so "maximal" means smallest in absolute value). Ties break to
/// the lexicographically smallest chosen-id set. Returns `None` when no
/// matching exists.
pub fn maximal_matching(p: &PManifold) -> Result<Option<MaximalMatching>> {
    maximal_matching_with(p, &SearchOptions::default())
}

pub fn maximal_matching_with(
    p: &PManifold,
    options: &SearchOptions<'_>,
) -> Result<Option<MaximalMatching>> {
    let all = enumerate_matchings_with(p, options)?;
    let Some(best_chi) = all.iter().map(|m| m.chi(p)).max() else {
        return Ok(None);
    };
    let optimal: Vec<Matching> = all.into_iter().filter(|m| m.chi(p) == best_chi).collect();
    Ok(Some(MaximalMatching {
        matching: optimal[0].clone(),
        chi: best_chi,
        optimal,
    }))
}

/// One layer of the matching vector computation.
#[derive(Clone, Debug)]
pub struct Layer {
    pub matching: Matching,
    pub chi: Rational,
}

/// Computes the matching Euler characteristic vector by peeling layers: take
/// a maximal matching, remove its pieces, repeat `n` times (where `n` is the
/// uniform curve degree). Each layer drops every curve's degree by exactly
/// one. On a tree a matching exists at every layer; on other inputs a layer
/// with no matching is reported as an error naming the layer.
pub fn matching_vector(p: &PManifold) -> Result<(MatchingVector, Vec<Layer>)> {
    matching_vector_with(p, &SearchOptions::default())
}

pub fn matching_vector_with(
    p: &PManifold,
    options: &SearchOptions<'_>,
) -> Result<(MatchingVector, Vec<Layer>)> {
    require_residual_valid(p)?;
    let Some(n) = uniform_curve_degree(p) else {
        return Err(Error::Precondition(
            "matching vector needs a uniform curve degree".into(),
        ));
    };
    let mut layers = Vec::new();
    let mut entries = Vec::new();
    let mut current = p.clone();
    for layer_ix in 1..=n {
        let best = maximal_matching_with(&current, options)?
            .ok_or(Error::NoMatching { layer: layer_ix })?;
        let residual = current.without_surfaces(&best.matching.chosen);
        debug_assert!(
            residual_degrees_dropped(&current, &residual),
            "each curve's degree must drop by exactly one per layer"
        );
        entries.push(best.chi.clone());
        layers.push(Layer {
            matching: best.matching,
            chi: best.chi,
        });
        current = residual;
    }
    if current.graph().vertices().any(|v| v.kind.is_surface()) {
        return Err(Error::Internal(
            "surfaces remain after peeling every layer".into(),
        ));
    }
    Ok((MatchingVector { entries }, layers))
}

fn residual_degrees_dropped(before: &PManifold, after: &PManifold) -> bool {
    before.graph().vertices().enumerate().all(|(ix, v)| {
        if !v.kind.is_curve() {
            return true;
        }
        let after_ix = after.graph().index_of(&v.id).expect("curves remain");
        after.graph().valence(after_ix) + 1 == before.graph().valence(ix)
    })
}

/// Compares matching Euler characteristic vectors. Applicable only when both
/// P-manifolds have tree gluing graphs and the same uniform curve degree.
pub fn matching_obstruction(pa: &PManifold, pb: &PManifold) -> Result<CommVerdict> {
    let mut reasons = Vec::new();
    if !pa.graph().is_tree() {
        reasons.push("first gluing graph is not a tree".to_string());
    }
    if !pb.graph().is_tree() {
        reasons.push("second gluing graph is not a tree".to_string());
    }
    let (na, nb) = (uniform_curve_degree(pa), uniform_curve_degree(pb));
    match (na, nb) {
        (Some(a), Some(b)) if a == b => {}
        (Some(a), Some(b)) => reasons.push(format!("curve degree mismatch: {a} vs {b}")),
        _ => reasons.push("curve degrees are not uniform".to_string()),
    }
    if !reasons.is_empty() {
        return Ok(CommVerdict::Inapplicable {
            reason: reasons.join("; "),
        });
    }
    let (va, _) = matching_vector(pa)?;
    let (vb, _) = matching_vector(pb)?;
    Ok(match vectors_commensurable(&va.entries, &vb.entries) {
        Some(witness) => CommVerdict::NotObstructed {
            witness,
            vector_a: va.entries,
            vector_b: vb.entries,
        },
        None => CommVerdict::Obstructed {
            vector_a: va.entries,
            vector_b: vb.entries,
        },
    })
}

/// Replaces one surface piece by an orientable surface of genus `g` with the
/// same number of boundary circles: the new characteristic is `2 - 2g - b`
/// where `b` is the piece's valence. The gluing graph is unchanged.
pub fn genus_family(p: &PManifold, vertex: &str, genus: u64) -> Result<PManifold> {
    let ix = p.graph().require_index(vertex)?;
    if !p.graph().kind(ix).is_surface() {
        return Err(Error::InvalidInput(format!(
            "`{vertex}` is not a surface vertex"
        )));
    }
    if genus == 0 {
        return Err(Error::InvalidInput("genus must be positive".into()));
    }
    let b = p.graph().valence(ix) as i128;
    let chi = 2i128 - 2 * (genus as i128) - b;
    let chi = i64::try_from(chi)
        .map_err(|_| Error::InvalidInput(format!("genus {genus} is out of range")))?;
    p.with_chi(vertex, chi)
}
