// SPDX-License-Identifier: Apache-2.0

//! Complexity measures and classification of finite-valued functions
//! `f: Z_k^n -> Z_k`.
//!
//! The crate covers essential variables and subfunctions ([`kfun`],
//! [`separability`]), ordered decision diagrams and implementation counts
//! ([`diagram`]), transformation groups acting on function spaces
//! ([`groups`]), equivalence-class enumeration of whole spaces
//! ([`classify`]) and a small sum-of-products expression language
//! ([`expr`]).
//!
//! Truth tables use little-endian point numbering: the point
//! `(a_1, ..., a_n)` sits at index `a_1 + a_2 k + ... + a_n k^(n-1)`.

pub mod bits;
pub mod cache;
pub mod classify;
pub mod diagram;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod groups;
pub mod kfun;
pub mod scan;
pub mod separability;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use kfun::{KFunction, PartialAssignment, VarSet};
