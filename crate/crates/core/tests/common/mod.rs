//! Shared fixtures and generators for the integration suites.
//!
//! The four refinement matrices are the published examples this toolkit is
//! checked against; the generators produce seeded pseudo-random graphs so
//! every run is reproducible.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use jsj_core::graph::VertexKind::{self, Fuchsian, TwoEnded};
use jsj_core::pmanifold::PManifold;
use jsj_core::refinement::DegreeRefinement;
use jsj_core::BipartiteMultigraph;

pub fn fig2_top() -> DegreeRefinement {
    DegreeRefinement::parse_text(
        "blocks: T T F F F\n\
         0 0 1 2 0\n\
         0 0 1 0 3\n\
         inf inf 0 0 0\n\
         inf 0 0 0 0\n\
         0 inf 0 0 0\n",
    )
    .unwrap()
}

pub fn fig2_middle() -> DegreeRefinement {
    DegreeRefinement::parse_text(
        "blocks: T T T F F F F F F\n\
         0 0 0 1 0 0 1 0 1\n\
         0 0 0 0 2 0 1 1 0\n\
         0 0 0 0 0 3 0 1 1\n\
         inf 0 0 0 0 0 0 0 0\n\
         0 inf 0 0 0 0 0 0 0\n\
         0 0 inf 0 0 0 0 0 0\n\
         inf inf 0 0 0 0 0 0 0\n\
         0 inf inf 0 0 0 0 0 0\n\
         inf 0 inf 0 0 0 0 0 0\n",
    )
    .unwrap()
}

pub fn fig2_bottom() -> DegreeRefinement {
    DegreeRefinement::parse_text(
        "blocks: T T T F F F F\n\
         0 0 0 2 0 2 0\n\
         0 0 0 0 3 0 2\n\
         0 0 0 0 0 1 1\n\
         inf 0 0 0 0 0 0\n\
         0 inf 0 0 0 0 0\n\
         inf 0 inf 0 0 0 0\n\
         0 inf inf 0 0 0 0\n",
    )
    .unwrap()
}

pub fn fig4() -> DegreeRefinement {
    DegreeRefinement::parse_text(
        "blocks: T T T F F F F F\n\
         0 0 0 1 1 2 0 0\n\
         0 0 0 1 0 0 4 0\n\
         0 0 0 0 1 0 0 5\n\
         inf inf 0 0 0 0 0 0\n\
         inf 0 inf 0 0 0 0 0\n\
         inf 0 0 0 0 0 0 0\n\
         0 inf 0 0 0 0 0 0\n\
         0 0 inf 0 0 0 0 0\n",
    )
    .unwrap()
}

pub fn all_figures() -> Vec<(&'static str, DegreeRefinement)> {
    vec![
        ("fig2-top", fig2_top()),
        ("fig2-middle", fig2_middle()),
        ("fig2-bottom", fig2_bottom()),
        ("fig4", fig4()),
    ]
}

/// The star P-manifold: one branching curve meeting three pieces.
pub fn star(chis: [i64; 3]) -> PManifold {
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
    pm(g, &[("s1", chis[0]), ("s2", chis[1]), ("s3", chis[2])])
}

/// The theta P-manifold: two curves, three pieces joining both.
pub fn theta(chis: [i64; 3]) -> PManifold {
    let g = BipartiteMultigraph::from_parts(
        &[
            ("c1", TwoEnded),
            ("c2", TwoEnded),
            ("s1", Fuchsian),
            ("s2", Fuchsian),
            ("s3", Fuchsian),
        ],
        &[
            ("c1", "s1", 1),
            ("c1", "s2", 1),
            ("c1", "s3", 1),
            ("c2", "s1", 1),
            ("c2", "s2", 1),
            ("c2", "s3", 1),
        ],
    )
    .unwrap();
    pm(g, &[("s1", chis[0]), ("s2", chis[1]), ("s3", chis[2])])
}

/// Three curves joined pairwise by two parallel pieces: every curve has
/// degree four, yet no matching exists (a matching would be a perfect
/// matching of a triangle).
pub fn doubled_triangle() -> PManifold {
    let g = BipartiteMultigraph::from_parts(
        &[
            ("c1", TwoEnded),
            ("c2", TwoEnded),
            ("c3", TwoEnded),
            ("s12a", Fuchsian),
            ("s12b", Fuchsian),
            ("s23a", Fuchsian),
            ("s23b", Fuchsian),
            ("s31a", Fuchsian),
            ("s31b", Fuchsian),
        ],
        &[
            ("c1", "s12a", 1),
            ("c2", "s12a", 1),
            ("c1", "s12b", 1),
            ("c2", "s12b", 1),
            ("c2", "s23a", 1),
            ("c3", "s23a", 1),
            ("c2", "s23b", 1),
            ("c3", "s23b", 1),
            ("c3", "s31a", 1),
            ("c1", "s31a", 1),
            ("c3", "s31b", 1),
            ("c1", "s31b", 1),
        ],
    )
    .unwrap();
    pm(
        g,
        &[
            ("s12a", -1),
            ("s12b", -2),
            ("s23a", -1),
            ("s23b", -2),
            ("s31a", -1),
            ("s31b", -2),
        ],
    )
}

pub fn pm(g: BipartiteMultigraph, chis: &[(&str, i64)]) -> PManifold {
    let map: BTreeMap<String, i64> = chis.iter().map(|(id, c)| (id.to_string(), *c)).collect();
    PManifold::new(g, map).unwrap()
}

/// A random bipartite multigraph: up to `max_each` vertices of each kind,
/// each curve/surface pair carrying an edge with the given probability and a
/// random multiplicity in `1..=max_mult`. May be disconnected and may have
/// isolated vertices.
pub fn random_bipartite(
    rng: &mut ChaCha8Rng,
    max_each: usize,
    max_mult: u64,
    edge_prob: f64,
) -> BipartiteMultigraph {
    let n_t = rng.random_range(1..=max_each);
    let n_f = rng.random_range(1..=max_each);
    let mut vertices: Vec<(String, VertexKind)> = Vec::new();
    for i in 0..n_t {
        vertices.push((format!("c{i}"), TwoEnded));
    }
    for j in 0..n_f {
        vertices.push((format!("s{j}"), Fuchsian));
    }
    let mut edges = Vec::new();
    for i in 0..n_t {
        for j in 0..n_f {
            if rng.random_bool(edge_prob) {
                edges.push((
                    format!("c{i}"),
                    format!("s{j}"),
                    rng.random_range(1..=max_mult),
                ));
            }
        }
    }
    BipartiteMultigraph::new(vertices, edges).unwrap()
}

/// A random tree in the multigraph sense (all multiplicities one),
/// alternating kinds, grown by random attachment. At least two vertices.
pub fn random_tree(rng: &mut ChaCha8Rng, max_vertices: usize) -> BipartiteMultigraph {
    let n = rng.random_range(2..=max_vertices.max(2));
    let mut kinds: Vec<VertexKind> = vec![TwoEnded, Fuchsian];
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    while kinds.len() < n {
        let parent = rng.random_range(0..kinds.len());
        let kind = match kinds[parent] {
            TwoEnded => Fuchsian,
            Fuchsian => TwoEnded,
        };
        kinds.push(kind);
        edges.push((parent, kinds.len() - 1));
    }
    build_from_indices(
        &kinds,
        &edges.iter().map(|&(a, b)| (a, b, 1)).collect::<Vec<_>>(),
    )
}

/// A random graph whose simple graph is a tree but whose bundles carry
/// random multiplicities in `1..=max_mult`.
pub fn random_multiplicity_tree(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_mult: u64,
) -> BipartiteMultigraph {
    let tree = random_tree(rng, max_vertices);
    let vertices: Vec<(String, VertexKind)> =
        tree.vertices().map(|v| (v.id.clone(), v.kind)).collect();
    let edges: Vec<(String, String, u64)> = tree
        .edges()
        .map(|(a, b, _)| {
            (
                tree.id(a).to_string(),
                tree.id(b).to_string(),
                rng.random_range(1..=max_mult),
            )
        })
        .collect();
    BipartiteMultigraph::new(vertices, edges).unwrap()
}

/// A random connected bipartite multigraph: a multiplicity tree plus a few
/// extra bundles.
pub fn random_connected(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_mult: u64,
    extra_edges: usize,
) -> BipartiteMultigraph {
    let tree = random_multiplicity_tree(rng, max_vertices, max_mult);
    let curves: Vec<usize> = (0..tree.vertex_count())
        .filter(|&ix| tree.kind(ix).is_curve())
        .collect();
    let surfaces: Vec<usize> = (0..tree.vertex_count())
        .filter(|&ix| tree.kind(ix).is_surface())
        .collect();
    let vertices: Vec<(String, VertexKind)> =
        tree.vertices().map(|v| (v.id.clone(), v.kind)).collect();
    let mut edges: Vec<(String, String, u64)> = tree
        .edges()
        .map(|(a, b, m)| (tree.id(a).to_string(), tree.id(b).to_string(), m))
        .collect();
    for _ in 0..extra_edges {
        if curves.is_empty() || surfaces.is_empty() {
            break;
        }
        let c = curves[rng.random_range(0..curves.len())];
        let s = surfaces[rng.random_range(0..surfaces.len())];
        edges.push((
            tree.id(c).to_string(),
            tree.id(s).to_string(),
            rng.random_range(1..=max_mult),
        ));
    }
    BipartiteMultigraph::new(vertices, edges).unwrap()
}

/// A random P-manifold over a forest where every branching curve meets
/// exactly `degree` pieces, each along one boundary circle. Components and
/// growth are random; every piece gets a random chi in `-9..=-1`.
pub fn random_uniform_forest(rng: &mut ChaCha8Rng, degree: u64, grow_steps: usize) -> PManifold {
    let components = rng.random_range(1..=2usize);
    let mut vertices: Vec<(String, VertexKind)> = Vec::new();
    let mut edges: Vec<(String, String, u64)> = Vec::new();
    let mut chis: Vec<(String, i64)> = Vec::new();
    let mut surface_count = 0usize;
    let mut curve_count = 0usize;
    for comp in 0..components {
        let mut surfaces_here: Vec<String> = Vec::new();
        let mut new_surface = |vertices: &mut Vec<(String, VertexKind)>,
                               chis: &mut Vec<(String, i64)>,
                               surfaces_here: &mut Vec<String>,
                               rng: &mut ChaCha8Rng| {
            let id = format!("s{surface_count}");
            surface_count += 1;
            vertices.push((id.clone(), Fuchsian));
            chis.push((id.clone(), -rng.random_range(1..=9i64)));
            surfaces_here.push(id.clone());
            id
        };
        new_surface(&mut vertices, &mut chis, &mut surfaces_here, rng);
        let steps = 1 + rng.random_range(0..=grow_steps) + usize::from(comp == 0);
        for _ in 0..steps {
            let host = surfaces_here[rng.random_range(0..surfaces_here.len())].clone();
            let curve = format!("c{curve_count}");
            curve_count += 1;
            vertices.push((curve.clone(), TwoEnded));
            edges.push((curve.clone(), host, 1));
            for _ in 1..degree {
                let s = new_surface(&mut vertices, &mut chis, &mut surfaces_here, rng);
                edges.push((curve.clone(), s, 1));
            }
        }
    }
    let g = BipartiteMultigraph::new(vertices, edges).unwrap();
    let map: BTreeMap<String, i64> = chis.into_iter().collect();
    PManifold::new(g, map).unwrap()
}

fn build_from_indices(kinds: &[VertexKind], edges: &[(usize, usize, u64)]) -> BipartiteMultigraph {
    let name = |ix: usize, kind: VertexKind| match kind {
        TwoEnded => format!("c{ix}"),
        Fuchsian => format!("s{ix}"),
    };
    let vertices: Vec<(String, VertexKind)> = kinds
        .iter()
        .enumerate()
        .map(|(ix, &k)| (name(ix, k), k))
        .collect();
    let edge_list: Vec<(String, String, u64)> = edges
        .iter()
        .map(|&(a, b, m)| (name(a, kinds[a]), name(b, kinds[b]), m))
        .collect();
    BipartiteMultigraph::new(vertices, edge_list).unwrap()
}

/// Applies a random id permutation, preserving structure.
pub fn random_relabel(rng: &mut ChaCha8Rng, g: &BipartiteMultigraph) -> BipartiteMultigraph {
    let mut names: Vec<String> = (0..g.vertex_count()).map(|i| format!("v{i}")).collect();
    // Fisher-Yates
    for i in (1..names.len()).rev() {
        let j = rng.random_range(0..=i);
        names.swap(i, j);
    }
    let map: BTreeMap<String, String> = g
        .vertices()
        .enumerate()
        .map(|(ix, v)| (v.id.clone(), names[ix].clone()))
        .collect();
    g.relabel(&|id| map[id].clone()).unwrap()
}
