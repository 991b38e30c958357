//! Exact computations around the Turán problem for `F₃,₃`, the 3-graph on
//! `abcxyz` with edge `abc` and the nine triples taking one vertex of `abc`
//! and two of `xyz`.
//!
//! - [`hypergraph`]: 3-graphs, pair graphs, exact density, deletion, links.
//! - [`constructions`]: `F₃,₃`, `B(n)`, `K³ₙ`, the extremal multigraphs, `b(n)`, `m(n)`.
//! - [`pattern`]: `F₃,₃` / general pattern containment, t-connected pairs and t-triples.
//! - [`multigraph`]: link multigraphs and the structural checks run on them.
//! - [`lemma`]: exhaustive maximisation of capped multigraphs.
//! - [`turan`]: exact Turán numbers by minimum hitting set, and extremal enumeration.

pub mod constructions;
pub mod error;
pub mod hypergraph;
pub mod lemma;
pub mod multigraph;
pub mod pattern;
pub mod turan;

pub use error::{Error, Result};
pub use hypergraph::{PairGraph, ThreeGraph, Triple, Vertex};
pub use multigraph::{build_link, ColoredMultigraph, Multigraph};
pub use pattern::{contains_f33, contains_pattern, Pattern, SearchMode, Witness};
