//! Invariants of JSJ graphs of one-ended hyperbolic groups whose JSJ
//! decomposition has only two-ended and hanging-Fuchsian vertex groups.
//!
//! The library works on finite bipartite multigraphs whose two vertex kinds
//! are "curve" (two-ended) and "surface" (hanging Fuchsian) vertices. It
//! computes:
//!
//! * the degree partition and degree refinement of a graph, and equivalence
//!   of refinements up to block permutation ([`refinement`]) — a complete
//!   quasi-isometry invariant for this class of groups;
//! * the graph of blocks and augmented graph of blocks of a refinement, and
//!   the tree conditions (M1)/(M2) that characterize when the group is
//!   quasi-isometric to a group generated by finite-order elements
//!   ([`blocks`]);
//! * the vertex-splitting move and the unwrapping construction that turns a
//!   passing augmented graph of blocks into a finite tree with an equivalent
//!   refinement ([`tree`]);
//! * block and matching Euler characteristic vectors, which are necessary
//!   commensurability invariants ([`comm`]).
//!
//! Brute-force reference implementations used by tests and by the CLI's
//! `--verify` flag live in [`oracles`]; they are never on the default
//! computation path.
//!
//! All arithmetic is exact (`ExtNat` and arbitrary-precision rationals); all
//! operations are pure functions over immutable values and are deterministic,
//! including the order of every enumerated output.

pub mod blocks;
pub mod comm;
pub mod doc;
pub mod error;
pub mod extnat;
pub mod graph;
pub mod oracles;
pub mod pmanifold;
pub mod rational;
pub mod refinement;
pub mod tree;

pub use error::Error;
pub use extnat::ExtNat;
pub use graph::{BipartiteMultigraph, VertexKind};
pub use rational::Rational;
