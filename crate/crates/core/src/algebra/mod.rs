//! Finite abelian groups, rings, bimodules and the exact linear algebra behind them.

pub mod bimodule;
pub mod group;
pub mod matrix;
pub mod ring;
pub mod snf;
pub mod zmod;

pub use bimodule::{make_bimodule, Bimodule, BimoduleSpec};
pub use group::{subquotient, FiniteAbelianGroup, GroupHom, GroupSubquotient};
pub use matrix::Matrix;
pub use ring::{find_isomorphism, make_ring, FiniteRing, FiniteRng, RingSpec};
pub use snf::smith_normal_form;
