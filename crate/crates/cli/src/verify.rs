//! Oracle cross-checks behind the `--verify` flag. Each check re-derives a
//! result with the brute-force reference implementation where the size
//! guards permit, and reports a mismatch as a hard failure (exit 5).

use jsj_core::comm::enumerate_matchings;
use jsj_core::oracles::{
    coarsest_equitable_bruteforce, matchings_bruteforce, MATCHING_ORACLE_MAX_SURFACES,
    PARTITION_ORACLE_MAX_VERTICES,
};
use jsj_core::pmanifold::PManifold;
use jsj_core::refinement::degree_partition;
use jsj_core::BipartiteMultigraph;

pub enum VerifyOutcome {
    Agreed(String),
    Skipped(String),
    Mismatch(String),
}

pub fn verify_partition(g: &BipartiteMultigraph) -> VerifyOutcome {
    if g.vertex_count() > PARTITION_ORACLE_MAX_VERTICES {
        return VerifyOutcome::Skipped(format!(
            "partition oracle skipped ({} vertices > {PARTITION_ORACLE_MAX_VERTICES})",
            g.vertex_count()
        ));
    }
    let fast = match degree_partition(g) {
        Ok(p) => p,
        Err(e) => return VerifyOutcome::Skipped(format!("partition oracle skipped ({e})")),
    };
    match coarsest_equitable_bruteforce(g) {
        Ok(reference) if reference.same_partition(&fast) => {
            VerifyOutcome::Agreed("partition oracle agrees".into())
        }
        Ok(_) => VerifyOutcome::Mismatch(
            "degree partition disagrees with the brute-force coarsest equitable partition".into(),
        ),
        Err(e) => VerifyOutcome::Skipped(format!("partition oracle skipped ({e})")),
    }
}

pub fn verify_matchings(p: &PManifold) -> VerifyOutcome {
    let surfaces = p.graph().vertices().filter(|v| v.kind.is_surface()).count();
    if surfaces > MATCHING_ORACLE_MAX_SURFACES {
        return VerifyOutcome::Skipped(format!(
            "matching oracle skipped ({surfaces} surfaces > {MATCHING_ORACLE_MAX_SURFACES})"
        ));
    }
    let fast = match enumerate_matchings(p) {
        Ok(m) => m,
        Err(e) => return VerifyOutcome::Skipped(format!("matching oracle skipped ({e})")),
    };
    match matchings_bruteforce(p) {
        Ok(reference) if reference == fast => {
            VerifyOutcome::Agreed("matching oracle agrees".into())
        }
        Ok(_) => VerifyOutcome::Mismatch(
            "matching solver disagrees with the brute-force subset filter".into(),
        ),
        Err(e) => VerifyOutcome::Skipped(format!("matching oracle skipped ({e})")),
    }
}
