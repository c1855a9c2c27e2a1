//! Simulator and experiment harness for infinite-time Turing machines with
//! ordinal tape length.

pub mod ordinal;
pub mod tape;
pub mod machine;
pub mod asm;
pub mod codes;
pub mod engine;
pub mod experiments;
