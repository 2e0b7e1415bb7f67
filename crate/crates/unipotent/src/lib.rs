//! Exact combinatorics for nilpotent orbits, unipotent data and unitarity
//! certificates of Sp(p,q) and SO*(2n).

pub mod cli_harness;
pub mod duality_infchar;
pub mod error;
pub mod orbit_induction;
pub mod partitions;
pub mod signed_tableaux;
pub mod theta_parabolic;
pub mod unipotent_catalog;

pub use error::{Error, Result};
