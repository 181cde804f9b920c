//! Equilibrium engine for data marketplaces with a demographic fairness
//! intervention.
//!
//! Sellers produce training samples per demographic group, a marketplace
//! posts per-group reserve prices, and buyers purchase predictions whose
//! accuracy follows a power-law learning curve. Revenue from each sale is
//! split among sellers by Shapley value. The crate computes the closed-form
//! equilibria with and without a target on the dataset's demographics,
//! formation and backfire predicates, buyer-growth sweeps, and brute-force
//! oracles that check all of it numerically.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod equilibrium;
pub mod error;
pub mod fairness;
pub mod growth;
pub mod mechanism;
pub mod model;
pub mod oracle;

pub use error::{Error, Result};
