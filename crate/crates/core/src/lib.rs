//! Enhanced ant colony optimization (EACO) toolkit.
//!
//! The crate is organised around a problem-agnostic construction graph
//! ([`model`]), the colony engine ([`engine`]), the genetic operators the
//! engine embeds ([`evo`]), comparison optimizers ([`baselines`]), benchmark
//! problems ([`bench`]) and a desk-scale bipedal walker ([`gait`]).

pub mod baselines;
pub mod bench;
pub mod engine;
pub mod error;
pub mod evo;
pub mod gait;
pub mod model;
pub mod rng;

pub use error::{Error, Result};
