//! Exact and numerical computations around period domains: root systems and
//! line-bundle cohomology on flag domains, Hodge-theoretic linear algebra,
//! modular forms with Hecke operators and Petersson products, parabolic
//! bundles, and non-abelian cohomology of finite groups.

pub mod bwb;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod modforms;
pub mod nonab;
pub mod parabolic;
pub mod perioddomain;
pub mod rational;
pub mod rootsys;

pub use error::{Error, Result};
