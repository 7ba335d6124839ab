//! Exact linear algebra over F2: packed bitvectors, canonical subspaces,
//! low-stretch projections, and the codimension-1 pair/quadruple calculus.

mod bitvec;
mod projection;
mod quad;
mod subspace;

pub use bitvec::BitVec;
pub use projection::{greedy_projection, ProjectionMap};
pub use quad::{descend_pair, lex_min_difference, lift_pair, PairL2, QuadL4};
pub use subspace::{
    enumerate_all_subspaces, min_weight_in_difference, Subspace, MIN_WEIGHT_DIM_CAP,
    SUBSPACE_FORMAT,
};
