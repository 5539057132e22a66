//! Matching records against a retrieval condition.
//!
//! A condition is the set `c` of relations a record is expected to have with
//! a reference period. For each record the set `r` of possible relations is
//! computed and compared with `c`: `r ⊆ c` is a reliable match, `r ∩ c = ∅`
//! an impossible one, anything else a possible one.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::allen::{profile, AllenError, AllenRelation, RelationProfile, RelationSet};
use crate::interval::{OperandKind, UncertainInterval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RetrievalError {
    #[error("retrieval condition is empty")]
    EmptyCondition,
    #[error("possible relation set is empty")]
    EmptyPossibleSet,
    #[error("unknown condition preset `{0}` (expected alive-during, intersects or within)")]
    UnknownPreset(String),
    #[error("invalid condition `{0}`")]
    InvalidCondition(String),
}

/// The relations a matching record is expected to have with the reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Condition(RelationSet);

impl Condition {
    pub fn new(relations: RelationSet) -> Result<Self, RetrievalError> {
        if relations.is_empty() {
            Err(RetrievalError::EmptyCondition)
        } else {
            Ok(Condition(relations))
        }
    }

    pub fn relations(&self) -> RelationSet {
        self.0
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Parses either a preset name or a comma-separated list of relations.
impl FromStr for Condition {
    type Err = RetrievalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(c) = preset(s) {
            return Ok(c);
        }
        let rels = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<AllenRelation>())
            .collect::<Result<RelationSet, _>>()
            .map_err(|_| RetrievalError::InvalidCondition(s.to_string()))?;
        Condition::new(rels)
    }
}

/// Named conditions.
///
/// * `within`: starts, during or finishes.
/// * `alive-during` (alias `intersects`): every relation in which the two
///   intervals share some time, i.e. all but before, after, meets and met-by.
pub fn preset(name: &str) -> Result<Condition, RetrievalError> {
    use AllenRelation::*;
    let rels = match name.trim().to_ascii_lowercase().as_str() {
        "within" => RelationSet::from([Starts, During, Finishes]),
        "alive-during" | "intersects" => RelationSet::from([
            Overlaps,
            Starts,
            During,
            Finishes,
            OverlappedBy,
            StartedBy,
            Contains,
            FinishedBy,
            Equals,
        ]),
        _ => return Err(RetrievalError::UnknownPreset(name.to_string())),
    };
    Condition::new(rels)
}

/// Ordered from most to least certain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchClass {
    Reliable,
    Possible,
    Impossible,
}

impl MatchClass {
    pub fn name(self) -> &'static str {
        match self {
            MatchClass::Reliable => "reliable",
            MatchClass::Possible => "possible",
            MatchClass::Impossible => "impossible",
        }
    }
}

impl fmt::Display for MatchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Relations possible between a record and the reference.
pub fn possible_set(
    record: &UncertainInterval,
    reference: &UncertainInterval,
    record_kind: OperandKind,
    reference_kind: OperandKind,
) -> Result<RelationSet, AllenError> {
    Ok(profile(record, reference, record_kind, reference_kind)?.possible_set())
}

/// Compare a possible set with a condition.
pub fn match_condition(condition: &Condition, possible: RelationSet) -> Result<MatchClass, RetrievalError> {
    let c = condition.relations();
    if c.is_empty() {
        return Err(RetrievalError::EmptyCondition);
    }
    if possible.is_empty() {
        return Err(RetrievalError::EmptyPossibleSet);
    }
    let common = c.intersection(possible);
    Ok(if common == possible {
        MatchClass::Reliable
    } else if common.is_empty() {
        MatchClass::Impossible
    } else {
        MatchClass::Possible
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record<Id> {
    pub id: Id,
    pub interval: UncertainInterval,
    pub kind: OperandKind,
}

impl<Id> Record<Id> {
    pub fn new(id: Id, interval: UncertainInterval) -> Self {
        Record {
            id,
            interval,
            kind: OperandKind::Interval,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchResult<Id> {
    pub id: Id,
    #[serde(rename = "match")]
    pub class: MatchClass,
    pub possible_set: RelationSet,
    pub profile: RelationProfile,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("record {id}: {source}")]
pub struct RecordError<Id: fmt::Display> {
    pub id: Id,
    pub source: AllenError,
}

pub type QueryEntry<Id> = Result<MatchResult<Id>, RecordError<Id>>;

/// Match every record against `reference` under `condition`.
///
/// Records are evaluated in parallel; the output keeps input order. A record
/// that cannot be classified yields an error entry and does not abort the
/// batch.
pub fn query<Id>(
    records: &[Record<Id>],
    reference: &UncertainInterval,
    reference_kind: OperandKind,
    condition: &Condition,
) -> Vec<QueryEntry<Id>>
where
    Id: Clone + Send + Sync + fmt::Display,
{
    records
        .par_iter()
        .map(|rec| {
            let p = profile(&rec.interval, reference, rec.kind, reference_kind).map_err(|source| {
                RecordError {
                    id: rec.id.clone(),
                    source,
                }
            })?;
            let possible = p.possible_set();
            let class = match_condition(condition, possible)
                .expect("condition and possible set are non-empty");
            Ok(MatchResult {
                id: rec.id.clone(),
                class,
                possible_set: possible,
                profile: p,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use AllenRelation::*;

    fn within() -> Condition {
        preset("within").unwrap()
    }

    #[test]
    fn presets() {
        assert_eq!(within().relations(), RelationSet::from([Starts, During, Finishes]));
        let alive = preset("alive-during").unwrap();
        assert_eq!(alive.relations().len(), 9);
        assert_eq!(preset("intersects").unwrap(), alive);
        for excluded in [Before, After, Meets, MetBy] {
            assert!(!alive.relations().contains(excluded));
        }
        assert_eq!(preset("sometime"), Err(RetrievalError::UnknownPreset("sometime".into())));
    }

    #[test]
    fn condition_parsing() {
        assert_eq!("within".parse::<Condition>().unwrap(), within());
        assert_eq!(
            "before, meets".parse::<Condition>().unwrap().relations(),
            RelationSet::from([Before, Meets])
        );
        assert!("".parse::<Condition>().is_err());
        assert!("before,later".parse::<Condition>().is_err());
        assert_eq!(Condition::new(RelationSet::empty()), Err(RetrievalError::EmptyCondition));
    }

    #[test]
    fn match_examples() {
        let c = within();
        assert_eq!(match_condition(&c, RelationSet::from([During])), Ok(MatchClass::Reliable));
        assert_eq!(
            match_condition(&c, RelationSet::from([Before, Meets, Overlaps])),
            Ok(MatchClass::Impossible)
        );
        assert_eq!(
            match_condition(&c, RelationSet::from([Overlaps, Starts, During])),
            Ok(MatchClass::Possible)
        );
        assert_eq!(
            match_condition(&c, RelationSet::empty()),
            Err(RetrievalError::EmptyPossibleSet)
        );
    }

    #[test]
    fn empty_query() {
        let reference = UncertainInterval::from_days(0.0, 1.0, 2.0, 3.0).unwrap();
        let out = query::<String>(&[], &reference, OperandKind::Interval, &within());
        assert!(out.is_empty());
    }

    #[test]
    fn per_record_errors_do_not_abort() {
        let reference = UncertainInterval::from_days(10.0, 20.0, 80.0, 90.0).unwrap();
        let good = Record::new("good", UncertainInterval::from_days(30.0, 40.0, 50.0, 60.0).unwrap());
        let mut bad = Record::new("bad", UncertainInterval::from_days(0.0, 1.0, 2.0, 3.0).unwrap());
        bad.kind = OperandKind::Instant;
        let out = query(&[bad, good], &reference, OperandKind::Interval, &within());
        assert!(out[0].is_err());
        assert_eq!(out[1].as_ref().unwrap().class, MatchClass::Reliable);
    }

    #[test]
    fn match_class_order() {
        let mut v = vec![MatchClass::Impossible, MatchClass::Reliable, MatchClass::Possible];
        v.sort();
        assert_eq!(v, [MatchClass::Reliable, MatchClass::Possible, MatchClass::Impossible]);
    }
}
