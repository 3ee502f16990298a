//! Cross-cutting randomized laws: oracle agreement for the degree partition,
//! renaming invariance, tree verdicts, shortcut equivalence, and the
//! equivalence-relation axioms for vector commensurability.

mod common;

use common::{
    random_bipartite, random_connected, random_multiplicity_tree, random_relabel, random_tree,
};
use jsj_core::blocks::{check_m1, check_m2, check_m2_tree_shortcut, classify_torsion_qi};
use jsj_core::comm::vectors_commensurable;
use jsj_core::oracles::coarsest_equitable_bruteforce;
use jsj_core::rational::{rat, Rational};
use jsj_core::refinement::{degree_partition, degree_refinement, refinement_equivalent};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn degree_partition_matches_bruteforce_oracle() {
    // at least 10^4 random bipartite multigraphs with at most 6 vertices and
    // multiplicities at most 3, disconnected inputs included
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for round in 0..10_000 {
        let g = random_bipartite(&mut rng, 3, 3, 0.5);
        assert!(g.vertex_count() <= 6);
        let fast = degree_partition(&g).unwrap();
        let reference = coarsest_equitable_bruteforce(&g).unwrap();
        assert!(
            fast.same_partition(&reference),
            "round {round}: partition disagrees with the oracle"
        );
    }
}

#[test]
fn refinement_is_invariant_under_renaming() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..300 {
        let g = random_connected(&mut rng, 8, 3, 2);
        let relabeled = random_relabel(&mut rng, &g);
        let ma = degree_refinement(&g).unwrap();
        let mb = degree_refinement(&relabeled).unwrap();
        assert!(refinement_equivalent(&ma, &mb).is_some());
    }
}

#[test]
fn random_permutation_of_a_refinement_is_recovered() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..200 {
        let g = random_connected(&mut rng, 8, 3, 2);
        let m = degree_refinement(&g).unwrap();
        let n = m.order();
        // random kind-preserving permutation
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rand::Rng::random_range(&mut rng, 0..=i);
            if m.kinds[perm[i]] == m.kinds[perm[j]] {
                perm.swap(i, j);
            }
        }
        let mut kinds = vec![jsj_core::VertexKind::TwoEnded; n];
        let mut rows = vec![vec![jsj_core::ExtNat::ZERO; n]; n];
        for i in 0..n {
            kinds[perm[i]] = m.kinds[i];
            for j in 0..n {
                rows[perm[i]][perm[j]] = m.entry(i, j);
            }
        }
        let permuted = jsj_core::refinement::DegreeRefinement::from_matrix(kinds, rows).unwrap();
        let w = refinement_equivalent(&m, &permuted).expect("a witness must exist");
        // the found witness really witnesses equality
        for i in 0..n {
            for j in 0..n {
                assert_eq!(m.entry(i, j), permuted.entry(w.map[i], w.map[j]));
            }
        }
    }
}

#[test]
fn trees_pass_both_conditions() {
    // multigraph trees (no parallel edges) always pass (M1) and (M2), and
    // classify as quasi-isometric to a torsion-generated group
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for round in 0..1000 {
        let g = random_tree(&mut rng, 12);
        let m = degree_refinement(&g).unwrap();
        assert!(
            check_m1(&m).unwrap().is_tree,
            "round {round}: M1 failed on a tree"
        );
        assert!(
            check_m2(&m).unwrap().holds,
            "round {round}: M2 failed on a tree"
        );
    }
}

#[test]
fn tree_classification_returns_an_equivalent_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for _ in 0..50 {
        let g = random_tree(&mut rng, 10);
        match classify_torsion_qi(&g).unwrap() {
            jsj_core::blocks::TorsionQiVerdict::Yes { tree, .. } => {
                let ma = degree_refinement(&g).unwrap();
                let mb = degree_refinement(&tree).unwrap();
                assert!(refinement_equivalent(&ma, &mb).is_some());
            }
            other => panic!("a tree must classify YES, got {other:?}"),
        }
    }
}

#[test]
fn simple_graph_trees_always_pass_m1() {
    // with parallel edges allowed (M2) can fail, but the graph of blocks of
    // a simple-graph tree is still a tree
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..500 {
        let g = random_multiplicity_tree(&mut rng, 10, 3);
        let m = degree_refinement(&g).unwrap();
        assert!(check_m1(&m).unwrap().is_tree);
    }
}

#[test]
fn multiplicity_trees_can_fail_m2() {
    // an explicit witness that the simple-graph-tree hypothesis is not
    // enough for (M2): a path with doubled end bundles into one surface
    use jsj_core::graph::VertexKind::{Fuchsian, TwoEnded};
    let g = jsj_core::BipartiteMultigraph::from_parts(
        &[
            ("fa", Fuchsian),
            ("t1", TwoEnded),
            ("f1", Fuchsian),
            ("t2", TwoEnded),
            ("fb", Fuchsian),
            ("fc", Fuchsian),
        ],
        &[
            ("t1", "fa", 1),
            ("t1", "f1", 2),
            ("t2", "f1", 2),
            ("t2", "fb", 1),
            ("t2", "fc", 1),
        ],
    )
    .unwrap();
    assert!(g.simple_graph_is_tree());
    let m = degree_refinement(&g).unwrap();
    assert!(check_m1(&m).unwrap().is_tree);
    assert!(!check_m2(&m).unwrap().holds);
}

#[test]
fn m2_shortcut_agrees_with_exhaustive_enumeration_under_m1() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut checked = 0usize;
    while checked < 400 {
        let g = random_multiplicity_tree(&mut rng, 9, 3);
        let m = degree_refinement(&g).unwrap();
        if !check_m1(&m).unwrap().is_tree {
            continue;
        }
        let full = check_m2(&m).unwrap();
        let short = check_m2_tree_shortcut(&m).unwrap();
        assert_eq!(full.holds, short.holds, "verdicts differ on {m:?}");
        checked += 1;
    }
}

fn rational_vec() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((1i64..50, 1i64..10), 1..5)
        .prop_map(|pairs| pairs.into_iter().map(|(n, d)| rat(-n, d)).collect())
}

fn scaled(v: &[Rational], k: i64) -> Vec<Rational> {
    v.iter().map(|r| r * rat(k, 1)).collect()
}

proptest! {
    #[test]
    fn commensurability_is_reflexive(v in rational_vec()) {
        let w = vectors_commensurable(&v, &v);
        prop_assert_eq!(w, Some((1.into(), 1.into())));
    }

    #[test]
    fn commensurability_is_symmetric(v in rational_vec(), k in 1i64..20) {
        let w = scaled(&v, k);
        let ab = vectors_commensurable(&v, &w);
        let ba = vectors_commensurable(&w, &v);
        prop_assert!(ab.is_some());
        prop_assert!(ba.is_some());
        let (p, q) = ab.unwrap();
        let (r, s) = ba.unwrap();
        // witnesses invert each other
        prop_assert_eq!((p, q), (s, r));
    }

    #[test]
    fn commensurability_is_transitive(v in rational_vec(), j in 1i64..12, k in 1i64..12) {
        let w = scaled(&v, j);
        let x = scaled(&w, k);
        prop_assert!(vectors_commensurable(&v, &w).is_some());
        prop_assert!(vectors_commensurable(&w, &x).is_some());
        prop_assert!(vectors_commensurable(&v, &x).is_some());
    }

    #[test]
    fn incommensurable_when_one_entry_moves(v in rational_vec()) {
        prop_assume!(v.len() >= 2);
        let mut w = v.clone();
        w[0] = &w[0] * rat(2, 1);
        // entries are distinct ratios now unless the vector was degenerate
        let same_ratio = (&w[0] / &v[0]) == (&w[1] / &v[1]);
        prop_assert_eq!(vectors_commensurable(&v, &w).is_some(), same_ratio);
    }
}

#[test]
fn computed_partitions_are_equitable() {
    // the fixpoint really is equitable: within a block, every member has the
    // same iota-sum into every block
    use jsj_core::extnat::ExtNat;
    let mut rng = ChaCha8Rng::seed_from_u64(39);
    for _ in 0..200 {
        let g = random_connected(&mut rng, 10, 3, 3);
        let p = degree_partition(&g).unwrap();
        let sum_into = |r: &str, block: &jsj_core::refinement::Block| -> ExtNat {
            block
                .members
                .iter()
                .map(|s| jsj_core::refinement::iota(&g, r, s).unwrap_or(ExtNat::ZERO))
                .sum()
        };
        for bi in &p.blocks {
            for bj in &p.blocks {
                let expect = sum_into(&bi.members[0], bj);
                for r in &bi.members {
                    assert_eq!(sum_into(r, bj), expect, "block sums differ inside a block");
                }
            }
        }
    }
}

#[test]
fn gamma0_of_a_computed_refinement_reproduces_it() {
    // blocks of the augmented graph of blocks are singletons for genuine
    // refinements, so its refinement is equivalent to the original
    use jsj_core::blocks::augmented_graph_of_blocks;
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    for _ in 0..200 {
        let g = random_connected(&mut rng, 9, 3, 2);
        let m = degree_refinement(&g).unwrap();
        let gamma0 = augmented_graph_of_blocks(&m).unwrap();
        let p = degree_partition(&gamma0).unwrap();
        assert!(p.blocks.iter().all(|b| b.members.len() == 1));
        let again = degree_refinement(&gamma0).unwrap();
        assert!(refinement_equivalent(&m, &again).is_some());
    }
}

#[test]
fn document_round_trip_is_exact() {
    use jsj_core::doc::{parse_document, Document, GraphDoc};
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    for _ in 0..200 {
        let g = random_bipartite(&mut rng, 4, 4, 0.4);
        let doc = GraphDoc::from_graph("roundtrip", &g, None);
        let text = doc.to_json();
        match parse_document(&text).unwrap() {
            Document::Graph(parsed) => assert_eq!(parsed.to_graph().unwrap(), g),
            _ => panic!("expected a graph document"),
        }
    }
}
