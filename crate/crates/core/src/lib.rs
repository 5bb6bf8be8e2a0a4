//! Conformity: a node-centric, path-aware measure of homophily on graphs
//! whose nodes carry categorical attributes.
//!
//! The pipeline is: load an edge list and an attribute table into an
//! [`AttributedGraph`], pick one or more attributes as a [`LabelView`], then
//! score nodes with [`all_conformity`]. [`newman_assortativity`] gives the
//! global coefficient for comparison, and [`generators`] builds the small
//! diagnostic graphs used in tests.

pub mod assortativity;
pub mod cli;
pub mod config;
pub mod conformity;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod labels;
pub mod report;
pub mod stats;

pub use assortativity::{newman_assortativity, AssortativityReport};
pub use conformity::{
    all_conformity, all_conformity_with_workers, indicator, neighbor_label_fraction,
    node_conformity, ConformityResult,
};
pub use error::{Error, Result};
pub use graph::{distance_shells, AttributedGraph, DistanceShells, Shell};
pub use labels::{compose_labels, Label, LabelView};
