//! Discrete cluster categories of Dynkin type A∞ with several accumulation
//! points, their t-structures, the metrics those induce, and the resulting
//! completions.

pub mod category;
pub mod cli;
pub mod completion;
pub mod cyclic;
pub mod error;
pub mod io;
pub mod metric;
pub mod render;
pub mod tstructure;

pub use category::{Arc, CanonicalMorphism, FormalObject};
pub use cyclic::{BoundaryPoint, Interval, IntervalSystem};
pub use error::{Error, Result};
pub use tstructure::{DecoratedNC, Decoration, NCPartition, TStructure};
