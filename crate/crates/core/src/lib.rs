pub mod classification;
pub mod cli;
pub mod error;
pub mod exact_linalg;
pub mod genus2;
pub mod group;
pub mod invariants;
pub mod json;
pub mod mixed_module;
pub mod oracle;
pub mod pair;
pub mod tamagawa;

pub use error::{Error, Result};
