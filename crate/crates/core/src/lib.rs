//! Exact computations with Burnside Tambara functors of small finite groups:
//! norms, transfers and restrictions, principal Tambara ideals, and the
//! Mackey functors presented by their quotients.

pub mod burnside;
pub mod checks;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod mackey;
mod maps;
pub mod par;

pub use burnside::{Burnside, BurnsideElement, ElementJson, LevelRing};
pub use error::{Error, Result};
pub use group::{Embedding, Group, GroupFile, Quotient, Subgroup};
pub use ideal::{BasisChoice, QuotientTambara, TambaraIdeal, Witness};
pub use lattice::{SubgroupClass, SubgroupLattice};
pub use linalg::{AbelianPresentation, IntLattice, IntMatrix};
pub use mackey::{LevelValue, MackeyMap, MackeyPresentation, RingData};
pub use par::Exec;
