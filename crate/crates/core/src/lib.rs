//! Exact inverse transgression of cocycles on finite groupoids and the
//! twisted Pontryagin product on twisted equivariant K-theory of finite
//! groups.

pub mod angle;
pub mod checks;
pub mod cochain;
pub mod cyclotomic;
pub mod error;
pub mod fusion;
pub mod group;
pub mod groupoid;
pub mod matrix;
pub mod poly;
pub mod solve;
pub mod transgression;
pub mod twisted;

pub use angle::Angle;
pub use cochain::Cochain;
pub use error::{Error, Result};
pub use group::{ConjugacyPartition, FiniteGroup, GroupSpec, Subgroup};
pub use groupoid::{FiniteGroupoid, GroupoidHom, SectorGroupoid};
