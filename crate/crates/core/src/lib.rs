pub mod arith;
pub mod brauer;
pub mod cli;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod involution;
pub mod linalg;
pub mod pfister12;
pub mod qform;
