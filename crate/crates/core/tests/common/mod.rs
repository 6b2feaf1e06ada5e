// Shared test support. Each integration test binary compiles this tree
// independently, so not every item is used by every binary.
#![allow(dead_code)]

pub mod lp;
pub mod pinned;
pub mod sampler;
