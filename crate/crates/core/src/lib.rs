//! Uncertain time intervals: Allen relations with reliable, possible and
//! impossible states, retrieval by relation conditions, Julian day calendar
//! conversion, and a reader for interval descriptions in Turtle.

pub mod allen;
pub mod calendar;
pub mod interval;
pub mod ontology;
pub mod oracle;
pub mod retrieval;

pub use allen::{
    classify, classify_instant, holds, impossible, in_relation, possible, profile, relation_between,
    reliable, AllenError, AllenRelation, RelationProfile, RelationSet, RelationState,
};
pub use calendar::{
    from_julian_day, parse_iso, period_bounds, to_julian_day, CalendarDate, CalendarError,
    CalendarPeriod, CalendarRegistry, CalendarSystem, Granularity,
};
pub use interval::{
    DeterminateInterval, IntervalError, JulianDay, MaybeInterval, OperandKind, UncertainInterval,
};
pub use ontology::{emit_turtle, parse_turtle, resolve, resolve_all, ResolvedInterval, TemporalDocument};
pub use oracle::{oracle_in_relation, oracle_profile};
pub use retrieval::{match_condition, possible_set, preset, query, Condition, MatchClass, MatchResult, Record};
