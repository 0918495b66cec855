pub mod algebra;
pub mod ann_category;
pub mod cli;
pub mod cochain;
pub mod cohomology;
pub mod extension;
pub mod guard;
pub mod error;

pub use error::{Error, Result};
