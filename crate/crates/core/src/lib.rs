//! Kirillov-Reshetikhin crystals, rigged configurations and the bijection
//! between highest weight paths and rigged configurations for all
//! nonexceptional affine types, together with the energy and cocharge
//! statistics and a desk-scale verifier of the X = M identity.
//!
//! The nonsimply-laced types are realized inside ambient type A or D crystals
//! through the standard diagram foldings; a folded-type element is stored as
//! its ambient image throughout.

pub mod cartan;
pub mod crystal;
pub mod kr;
pub mod paths;
pub mod rc;
pub mod bijection;
pub mod catalog;
pub mod world;
pub mod energy;
pub mod lifted;
pub mod poly;
pub mod verify;
pub mod json;
pub mod virt;
pub mod error;

pub use cartan::{AffineType, Family};
pub use error::{Error, Result};
