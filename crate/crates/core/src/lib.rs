//! Computational group theory and modular representation tools for
//! endo-trivial modules of finite groups with semidihedral Sylow 2-subgroups.

pub mod analysis;
pub mod error;
pub mod families;
pub mod gf;
pub mod grouptheory;
pub mod modrep;
pub mod permgroup;

pub use error::{Error, Result};
