//! Permutation groups, `G`-conjugacy classes inside normal subgroups, and the
//! graph on their sizes.

pub mod arith;
pub mod classes;
pub mod constructions;
pub mod error;
pub mod group;
pub mod perm;
pub mod structure;
pub mod theorems;

pub use classes::{build_gamma, classify_shape, g_classes, ClassGraph, GClass, GraphShape, ShapeTag};
pub use error::{GroupError, Result};
pub use group::{FiniteGroup, Subgroup};
pub use perm::Permutation;
