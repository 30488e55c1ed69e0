//! Core algorithms for 3-uniform hypergraphs: representation, tight
//! components, link-graph matchings, fractional matchings with Farkas
//! certificates, density-based reduced graphs and tight-cycle search.

pub mod cycle;
pub mod error;
pub mod fractional;
pub mod generators;
pub mod graph;
pub mod hypergraph;
pub mod lp;
pub mod matching;
pub mod slice;
pub mod tight;
pub mod util;

pub use error::{Error, Result};
pub use graph::{Component, Graph};
pub use hypergraph::{canonical, read_hypergraph, write_hypergraph, Hypergraph3, Pair, Triple, Vertex};
