//! Gromov-Hausdorff distance estimates for metric trees via merge-tree
//! interleaving.

pub mod cli;
pub mod error;
pub mod gh;
pub mod hardness;
pub mod interleave;
pub mod merge_tree;
pub mod metric_tree;
pub mod rational;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};
pub use merge_tree::{MergePoint, MergeTree};
pub use metric_tree::{Correspondence, MetricTree, TreePoint};
pub use rational::Rational;
