//! Exact extremal machinery for 2->1 directed hypergraphs: edges point an
//! unordered pair of tail vertices at a head vertex, and the questions are
//! Turan-type, how many edges fit before a forbidden pattern appears.
//!
//! The crate provides the graph representation ([`graph`]), canonical forms
//! ([`canon`]), the forbidden-pattern catalog ([`patterns`]), embedding tests
//! ([`embed`]), lower-bound constructions and closed forms
//! ([`constructions`]), link-graph analysis and Escher-free normalization
//! ([`normalize`]), and exhaustive extremal search ([`search`]).

pub mod canon;
pub mod constructions;
pub mod embed;
pub mod graph;
pub mod normalize;
pub mod patterns;
pub mod search;

pub use canon::{are_isomorphic, automorphism_count, canonical_code, CanonicalCode};
pub use embed::{contains, count_copies, count_embeddings, extension_free, find_embedding, is_free};
pub use graph::{DirectedHypergraph, Edge, GraphError, Vertex};
pub use patterns::{catalog, pattern, Pattern, PatternName};
