//! Computations in the stable module category of group algebras of finite
//! p-groups over prime fields.

pub mod error;
pub mod fplinalg;
pub mod groups;
pub mod modules;
pub mod stable;
pub mod tate;
pub mod ghosts;
pub mod constructions;
pub mod words;
pub mod artriangles;
pub mod ghost_number;

pub use error::{Error, Result};
pub use fplinalg::{Field, FpMatrix, RowSpace};
pub use groups::{FiniteGroup, GroupExpr, KgElem, SubgroupEmbedding};
pub use modules::{GMap, GModule};
