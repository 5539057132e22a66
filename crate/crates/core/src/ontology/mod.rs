//! Temporal resources described in Turtle with the HuTime and OWL-Time
//! vocabularies.

mod document;
mod emit;
mod resolve;
pub mod turtle;
pub mod vocab;

pub use document::{parse_turtle, ResourceKind, TemporalDocument, TemporalResource};
pub use emit::emit_turtle;
pub use resolve::{
    resolve, resolve_all, BoundarySource, ResolveError, ResolveReport, ResolvedInterval, Resolver,
    SpecStyle, AGREEMENT_TOLERANCE,
};
pub use turtle::TurtleError;
