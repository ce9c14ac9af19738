//! Exact arithmetic for edge-disjoint increasing path decompositions of labeled
//! digraphs and their link to normal ordering in the Weyl algebra.
//!
//! The library revolves around a handful of objects:
//!
//! * [`LabeledDigraph`] - a digraph on vertices `1..=n` whose edges carry the
//!   labels `1..=m`, optionally partitioned into consecutive *blocks*;
//! * *principal decompositions* - partitions of the edge set into directed
//!   paths along which labels strictly increase, with edges of one block
//!   forced into distinct paths ([`decomp`]);
//! * the Stirling function `S_G(I)` counting principal decompositions with
//!   source multiset `I`, computed both by exhaustive enumeration and by a
//!   peel-the-last-edge recurrence ([`decomp`]);
//! * its signed symmetrization `E_G(I)` over all edge relabelings, equal to a
//!   sum of signed shuffle counts over arbitrary path decompositions
//!   ([`shuffle`], [`skewsym`]);
//! * the `n`-th Weyl algebra with generators `x_1..x_n, d_1..d_n` subject to
//!   `d_i x_j - x_j d_i = delta_ij`, with products computed by commutation
//!   rewriting and, independently, by graph expansion through Stirling tables
//!   ([`weyl`]);
//! * sweeps certifying or refuting the standard skew-symmetric identity
//!   `s_m = 0` on the span of the `x_i d_j` ([`skewsym`]).
//!
//! All counts and coefficients use arbitrary-precision integers. Every value
//! type is immutable after construction, so shared read-only use across
//! threads is safe.

pub mod decomp;
pub mod digraph;
mod error;
pub mod multiset;
pub mod perm;
pub mod shuffle;
pub mod skewsym;
pub mod weyl;

pub use decomp::{
    enumerate_all_decompositions, enumerate_principal, stirling_count, stirling_recurrence,
    stirling_table, Decomposition, Path, StirlingTable,
};
pub use digraph::{Edge, LabeledDigraph};
pub use error::Error;
pub use multiset::VertexMultiset;
pub use perm::Permutation;
pub use shuffle::{binomial, enumerate_shuffles, q, signed_shuffle_sum, ChainFamily};
pub use skewsym::{
    eg_decomposition, eg_symmetrization, eg_table, eg_value, fig3_graph, identity_check,
    ncommutator_witness, s_m_direct, s_m_evaluate, EgTable, IdentityOptions, IdentityVerdict,
};
pub use weyl::{graph_expand, normal_order_product, WeylElement, WeylMonomial};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
