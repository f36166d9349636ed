//! Quiver representations in minuscule subcategories and reverse plane
//! partitions on minuscule posets.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod arquiver;
pub mod bijection;
pub mod bitset;
pub mod dynkin;
pub mod heap;
pub mod jordan;
pub mod oracle;
pub mod rpp;
pub mod typea;

pub use arquiver::{ArQuiver, Zq};
pub use bijection::{Heart, SplitObject};
pub use bitset::Bitset;
pub use dynkin::{DynkinDiagram, DynkinQuiver, Family};
pub use heap::{Heap, MinusculeHeap};
pub use jordan::{Partition, PartitionTuple};
pub use rpp::ExtValue;
