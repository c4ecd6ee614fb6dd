//! Kirillov-Reshetikhin crystals of nonexceptional affine types, built as
//! explicit finite crystal graphs, together with checks of their structure.

pub mod analysis;
pub mod artifact;
pub mod cartan;
pub mod checks;
pub mod crystal;
pub mod kr;
pub mod maps;
pub mod matrix;
pub mod pm;
pub mod tableaux;
pub mod variation;

pub use cartan::{AffineFamily, AffineType, ClassicalType, Family, Partition, Weight};
pub use crystal::{CrystalGraph, Dir, RootDatum};
