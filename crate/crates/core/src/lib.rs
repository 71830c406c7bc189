//! Network structure and utilization matrices for directed graphs and
//! ordinal trajectories, plus an auditor for the Hadamard-product identities
//! that relate them.
//!
//! Structure: adjacency `A`, hop-count distance `P`, external `E = P − A`.
//! Utilization: flow `F`, generalized OD `D`, indirect flow `L`, alternative
//! route flow `T`, substitute route flow `Tc`. A hat marks binarization.

#![forbid(unsafe_code)]

pub mod catalogue;
pub mod count;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod structure;
pub mod utilization;

pub use catalogue::{
    audit_dataset, audit_with, evaluate_identity, find_identity, list_identities,
    search_counterexample, AuditReport, Expr, IdentityClass, IdentitySpec, IdentityVerdict,
    SearchOptions, Symbol,
};
pub use count::ExtendedCount;
pub use error::{Error, Result};
pub use graph::Graph;
pub use matrix::{BinaryMatrix, Cells, CountMatrix};
pub use structure::{build_structure, StructureBundle};
pub use utilization::{build_utilization, is_fully_utilized, Dataset, Trajectory, UtilizationBundle};
