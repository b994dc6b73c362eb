//! Exact K-type multiplicities for `GL_n(ℝ)` restricted to `O_n`/`SO_n` and for
//! complex groups, computed by a germ-based geometric formula and checked
//! against an independent branching oracle.

pub mod compactrep;
pub mod corpus;
pub mod error;
pub mod exactalg;
pub mod exec;
pub mod finitemult;
pub mod geommult;
pub mod glstd;
pub mod oracle;
pub mod selftest;

pub use error::{Error, Result};
