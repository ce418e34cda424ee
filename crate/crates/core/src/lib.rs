pub mod analysis;
pub mod boolean_topo;
pub mod cli;
pub mod cover;
pub mod error;
pub mod graph;
pub mod group;
pub mod largeness;
pub mod ramsey;
pub mod set;
pub mod verify;

pub use error::{Error, Result};
pub use group::{Element, GroupCtx, Limits, Window};
pub use set::{FiniteSet, SetSpec, Side};
