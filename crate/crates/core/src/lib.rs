pub mod arith;
pub mod congruence;
mod error;
pub mod hmodp;
pub mod par;
pub mod presentation;
pub mod report;
pub mod reps;
pub mod splitting;
pub mod verify;
pub mod zform;

pub use error::Error;
