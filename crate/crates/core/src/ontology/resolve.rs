//! Turning temporal resources into concrete uncertain intervals.
//!
//! Each of the four boundaries can be given by a JD literal, by a boundary
//! instant, or by a range reference to another temporal entity. All sources
//! for a boundary must agree to within [`AGREEMENT_TOLERANCE`] days; the
//! value reported is the one from the highest-precedence source.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::document::{ResourceKind, TemporalDocument, TemporalResource};
use super::turtle::{Literal, Term};
use super::vocab;
use crate::calendar::{
    parse_iso, period_bounds, CalendarError, CalendarRegistry, CalendarSystem, Granularity,
};
use crate::interval::{IntervalError, UncertainInterval};

pub const AGREEMENT_TOLERANCE: f64 = 1e-9;

const SLOT_NAMES: [&str; 4] = [
    "possible beginning",
    "reliable beginning",
    "reliable end",
    "possible end",
];

/// How a boundary value was specified, from highest to lowest precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecStyle {
    JdLiteral,
    Instant,
    Range,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundarySource {
    pub style: SpecStyle,
    /// Property IRI on the resolved resource.
    pub property: String,
    /// Resource the value came from, for instant and range styles.
    pub object: Option<String>,
}

impl fmt::Display for BoundarySource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&vocab::compact(&self.property))?;
        if let Some(o) = &self.object {
            write!(f, " {}", vocab::compact(o))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResolvedInterval {
    pub id: String,
    pub interval: UncertainInterval,
    /// Source of `(pb, rb, re, pe)`.
    pub provenance: [BoundarySource; 4],
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ResolveError {
    #[error("{id}: no resource with this id and not a calendar period")]
    UnresolvedReference { id: String, referenced_by: Option<String> },
    #[error("cyclic range reference: {}", chain.join(" -> "))]
    CycleDetected { chain: Vec<String> },
    #[error("{id}: {boundary} given as {first} ({first_source}) and {second} ({second_source})")]
    ConflictingSpecification {
        id: String,
        boundary: &'static str,
        first: f64,
        first_source: BoundarySource,
        second: f64,
        second_source: BoundarySource,
    },
    #[error("{id}: no value for the {boundary}")]
    MissingBoundary { id: String, boundary: &'static str },
    #[error("{id}: cannot use {object} as a value of <{property}>: {reason}")]
    InvalidObject {
        id: String,
        property: String,
        object: String,
        reason: String,
    },
    #[error("{id}: {source}")]
    Calendar { id: String, source: CalendarError },
    #[error("{id}: {source}")]
    InvalidBounds { id: String, source: IntervalError },
    #[error("{id}: typed time:ProperInterval but its boundary ranges are not zero-width")]
    IndeterminateProperInterval { id: String },
}

impl ResolveError {
    /// The resource the error was reported for.
    pub fn id(&self) -> &str {
        match self {
            ResolveError::CycleDetected { chain } => &chain[0],
            ResolveError::UnresolvedReference { id, .. }
            | ResolveError::ConflictingSpecification { id, .. }
            | ResolveError::MissingBoundary { id, .. }
            | ResolveError::InvalidObject { id, .. }
            | ResolveError::Calendar { id, .. }
            | ResolveError::InvalidBounds { id, .. }
            | ResolveError::IndeterminateProperInterval { id } => id,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ResolveReport {
    pub intervals: Vec<ResolvedInterval>,
    pub errors: Vec<(String, ResolveError)>,
    pub warnings: Vec<String>,
}

/// Value of a referenced temporal entity.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Entity {
    Point(f64),
    Interval(UncertainInterval),
}

impl Entity {
    /// Begin and end of the possible interval; a point is its own range.
    fn span(self) -> (f64, f64) {
        match self {
            Entity::Point(t) => (t, t),
            Entity::Interval(iv) => (iv.pb().value(), iv.pe().value()),
        }
    }
}

struct Contribution {
    value: f64,
    source: BoundarySource,
}

fn has_interval_predicates(res: &TemporalResource) -> bool {
    res.properties.iter().any(|(p, _)| {
        vocab::JD_PROPERTIES.contains(&p.as_str())
            || vocab::INSTANT_PROPERTIES.contains(&p.as_str())
            || [
                vocab::HAS_RANGE_OF_BEGINNING,
                vocab::HAS_RANGE_OF_END,
                vocab::HAS_BEGINNING,
                vocab::HAS_END,
            ]
            .contains(&p.as_str())
    })
}

fn looks_like_date(lit: &Literal) -> bool {
    lit.datatype.as_deref() == Some(vocab::XSD_DATE)
        || (lit.datatype.is_none() && lit.lexical.len() >= 10 && lit.lexical[1..].contains('-'))
}

pub struct Resolver<'d> {
    doc: &'d TemporalDocument,
    registry: CalendarRegistry,
    memo: HashMap<String, ResolvedInterval>,
    stack: Vec<String>,
    warnings: Vec<String>,
}

impl<'d> Resolver<'d> {
    pub fn new(doc: &'d TemporalDocument) -> Self {
        Resolver::with_registry(doc, CalendarRegistry::default())
    }

    pub fn with_registry(doc: &'d TemporalDocument, registry: CalendarRegistry) -> Self {
        Resolver {
            doc,
            registry,
            memo: HashMap::new(),
            stack: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn warn(&mut self, message: String) {
        if !self.warnings.contains(&message) {
            self.warnings.push(message);
        }
    }

    /// Resolve one resource, or a calendar period IRI, to an interval.
    pub fn resolve(&mut self, id: &str) -> Result<ResolvedInterval, ResolveError> {
        match self.doc.get(id) {
            Some(res) if res.kind == ResourceKind::Instant => {
                let t = self.instant_value(res)?;
                let interval = UncertainInterval::from_days(t, t, t, t)
                    .map_err(|source| ResolveError::InvalidBounds { id: id.to_string(), source })?;
                let source = BoundarySource {
                    style: SpecStyle::Instant,
                    property: vocab::IN_XSD_DATE.to_string(),
                    object: None,
                };
                Ok(ResolvedInterval {
                    id: id.to_string(),
                    interval,
                    provenance: std::array::from_fn(|_| source.clone()),
                })
            }
            Some(res) if res.kind != ResourceKind::CalendarRef || has_interval_predicates(res) => {
                self.resolve_interval(res)
            }
            _ if CalendarRegistry::is_calendar_iri(id) => {
                let (b, e) = self.calendar_bounds(id, id)?;
                let interval = UncertainInterval::from_days(b, b, e, e)
                    .map_err(|source| ResolveError::InvalidBounds { id: id.to_string(), source })?;
                let source = BoundarySource {
                    style: SpecStyle::Range,
                    property: vocab::HAS_RANGE_OF_BEGINNING.to_string(),
                    object: Some(id.to_string()),
                };
                let mut end = source.clone();
                end.property = vocab::HAS_RANGE_OF_END.to_string();
                Ok(ResolvedInterval {
                    id: id.to_string(),
                    interval,
                    provenance: [source.clone(), source, end.clone(), end],
                })
            }
            _ => Err(ResolveError::UnresolvedReference {
                id: id.to_string(),
                referenced_by: None,
            }),
        }
    }

    /// Resolve every non-blank interval resource, in document order.
    ///
    /// Untyped resources are included when they carry boundary properties.
    pub fn resolve_all(mut self) -> ResolveReport {
        let mut report = ResolveReport::default();
        let doc = self.doc;
        for res in doc.resources.values() {
            if res.is_blank() {
                continue;
            }
            let wanted = match res.kind {
                ResourceKind::UncertainInterval | ResourceKind::ProperInterval => true,
                ResourceKind::Other => has_interval_predicates(res),
                ResourceKind::Instant | ResourceKind::CalendarRef => false,
            };
            if !wanted {
                continue;
            }
            if res.kind == ResourceKind::Other {
                self.warn(format!(
                    "{}: no temporal rdf:type, resolved as an uncertain time interval",
                    res.id
                ));
            }
            match self.resolve(&res.id) {
                Ok(r) => report.intervals.push(r),
                Err(e) => report.errors.push((res.id.clone(), e)),
            }
        }
        report.warnings = self.warnings;
        report
    }

    fn resolve_interval(&mut self, res: &'d TemporalResource) -> Result<ResolvedInterval, ResolveError> {
        if let Some(done) = self.memo.get(&res.id) {
            return Ok(done.clone());
        }
        if let Some(pos) = self.stack.iter().position(|s| *s == res.id) {
            let mut chain = self.stack[pos..].to_vec();
            chain.push(res.id.clone());
            return Err(ResolveError::CycleDetected { chain });
        }
        self.stack.push(res.id.clone());
        let result = self.assemble(res);
        self.stack.pop();
        if let Ok(r) = &result {
            self.memo.insert(res.id.clone(), r.clone());
        }
        result
    }

    fn assemble(&mut self, res: &'d TemporalResource) -> Result<ResolvedInterval, ResolveError> {
        let mut slots: [Vec<Contribution>; 4] = Default::default();
        for (property, object) in &res.properties {
            let p = property.as_str();
            let source = |style, object: Option<&str>| BoundarySource {
                style,
                property: property.clone(),
                object: object.map(str::to_string),
            };
            if let Some(i) = vocab::JD_PROPERTIES.iter().position(|q| *q == p) {
                let value = self.jd_literal(res, property, object)?;
                slots[i].push(Contribution {
                    value,
                    source: source(SpecStyle::JdLiteral, None),
                });
            } else if let Some(i) = vocab::INSTANT_PROPERTIES.iter().position(|q| *q == p) {
                let value = self.boundary_value(res, property, object, i >= 2)?;
                slots[i].push(Contribution {
                    value,
                    source: source(SpecStyle::Instant, object.as_node()),
                });
            } else if p == vocab::HAS_BEGINNING || p == vocab::HAS_END {
                let end_side = p == vocab::HAS_END;
                let value = self.boundary_value(res, property, object, end_side)?;
                let first = if end_side { 2 } else { 0 };
                for slot in &mut slots[first..first + 2] {
                    slot.push(Contribution {
                        value,
                        source: source(SpecStyle::Instant, object.as_node()),
                    });
                }
            } else if p == vocab::HAS_RANGE_OF_BEGINNING || p == vocab::HAS_RANGE_OF_END {
                let Some(target) = object.as_node() else {
                    return Err(self.invalid(res, property, object, "expected a resource, found a literal"));
                };
                let (b, e) = self.entity(target, &res.id)?.span();
                let first = if p == vocab::HAS_RANGE_OF_END { 2 } else { 0 };
                slots[first].push(Contribution {
                    value: b,
                    source: source(SpecStyle::Range, Some(target)),
                });
                slots[first + 1].push(Contribution {
                    value: e,
                    source: source(SpecStyle::Range, Some(target)),
                });
            }
        }

        let mut values = [0.0; 4];
        let mut provenance: [Option<BoundarySource>; 4] = Default::default();
        for (i, slot) in slots.iter_mut().enumerate() {
            if slot.is_empty() {
                return Err(ResolveError::MissingBoundary {
                    id: res.id.clone(),
                    boundary: SLOT_NAMES[i],
                });
            }
            slot.sort_by(|a, b| {
                a.source
                    .style
                    .cmp(&b.source.style)
                    .then(a.value.total_cmp(&b.value))
            });
            let lo = slot
                .iter()
                .min_by(|a, b| a.value.total_cmp(&b.value))
                .expect("non-empty");
            let hi = slot
                .iter()
                .max_by(|a, b| a.value.total_cmp(&b.value))
                .expect("non-empty");
            if hi.value - lo.value > AGREEMENT_TOLERANCE {
                return Err(ResolveError::ConflictingSpecification {
                    id: res.id.clone(),
                    boundary: SLOT_NAMES[i],
                    first: lo.value,
                    first_source: lo.source.clone(),
                    second: hi.value,
                    second_source: hi.source.clone(),
                });
            }
            values[i] = slot[0].value;
            provenance[i] = Some(slot[0].source.clone());
        }

        let [pb, rb, re, pe] = values;
        let interval = UncertainInterval::from_days(pb, rb, re, pe).map_err(|source| {
            ResolveError::InvalidBounds {
                id: res.id.clone(),
                source,
            }
        })?;
        if res.kind == ResourceKind::ProperInterval && !interval.is_determinate() {
            return Err(ResolveError::IndeterminateProperInterval { id: res.id.clone() });
        }
        Ok(ResolvedInterval {
            id: res.id.clone(),
            interval,
            provenance: provenance.map(|p| p.expect("every slot filled")),
        })
    }

    fn invalid(&self, res: &TemporalResource, property: &str, object: &Term, reason: &str) -> ResolveError {
        ResolveError::InvalidObject {
            id: res.id.clone(),
            property: property.to_string(),
            object: object.to_string(),
            reason: reason.to_string(),
        }
    }

    fn jd_literal(&self, res: &TemporalResource, property: &str, object: &Term) -> Result<f64, ResolveError> {
        let Term::Literal(lit) = object else {
            return Err(self.invalid(res, property, object, "expected a number"));
        };
        if looks_like_date(lit) {
            return Err(self.invalid(res, property, object, "expected a Julian day number, found a date"));
        }
        match lit.lexical.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(self.invalid(res, property, object, "not a finite number")),
        }
    }

    /// Single value pinned by a boundary-instant property. Interval-valued
    /// objects give their possible beginning, or their possible end on the
    /// end side.
    fn boundary_value(
        &mut self,
        res: &TemporalResource,
        property: &str,
        object: &Term,
        end_side: bool,
    ) -> Result<f64, ResolveError> {
        match object {
            Term::Literal(lit) if looks_like_date(lit) => self
                .date_midnight(&lit.lexical)
                .map_err(|source| ResolveError::Calendar {
                    id: res.id.clone(),
                    source,
                }),
            Term::Literal(_) => self.jd_literal(res, property, object),
            Term::Iri(target) | Term::Blank(target) => {
                let (b, e) = self.entity(target, &res.id)?.span();
                Ok(if end_side { e } else { b })
            }
        }
    }

    fn entity(&mut self, target: &str, referenced_by: &str) -> Result<Entity, ResolveError> {
        match self.doc.get(target) {
            Some(res) if res.kind == ResourceKind::Instant => Ok(Entity::Point(self.instant_value(res)?)),
            Some(res) if res.kind != ResourceKind::CalendarRef || has_interval_predicates(res) => {
                Ok(Entity::Interval(self.resolve_interval(res)?.interval))
            }
            _ if CalendarRegistry::is_calendar_iri(target) => {
                let (b, e) = self.calendar_bounds(target, referenced_by)?;
                Ok(Entity::Interval(
                    UncertainInterval::from_days(b, b, e, e).expect("period bounds are ordered"),
                ))
            }
            _ => Err(ResolveError::UnresolvedReference {
                id: target.to_string(),
                referenced_by: Some(referenced_by.to_string()),
            }),
        }
    }

    fn calendar_bounds(&self, iri: &str, referenced_by: &str) -> Result<(f64, f64), ResolveError> {
        let period = self
            .registry
            .parse_iri(iri)
            .map_err(|source| ResolveError::Calendar {
                id: referenced_by.to_string(),
                source,
            })?;
        let bounds = period_bounds(&period);
        Ok((bounds.begin().value(), bounds.end().value()))
    }

    fn instant_value(&mut self, res: &TemporalResource) -> Result<f64, ResolveError> {
        let mut found = None;
        for (property, object) in &res.properties {
            if property != vocab::IN_XSD_DATE {
                continue;
            }
            let Term::Literal(lit) = object else {
                return Err(self.invalid(res, property, object, "expected an xsd:date literal"));
            };
            let t = self
                .date_midnight(&lit.lexical)
                .map_err(|source| ResolveError::Calendar {
                    id: res.id.clone(),
                    source,
                })?;
            self.warn(format!(
                "{}: time:inXSDDate \"{}\" names a whole day; its midnight (JD {t}) is used",
                res.id, lit.lexical
            ));
            if let Some(prev) = found {
                if f64::abs(prev - t) > AGREEMENT_TOLERANCE {
                    let source = BoundarySource {
                        style: SpecStyle::Instant,
                        property: vocab::IN_XSD_DATE.to_string(),
                        object: None,
                    };
                    return Err(ResolveError::ConflictingSpecification {
                        id: res.id.clone(),
                        boundary: "instant",
                        first: prev,
                        first_source: source.clone(),
                        second: t,
                        second_source: source,
                    });
                }
            }
            found = Some(t);
        }
        found.ok_or_else(|| ResolveError::MissingBoundary {
            id: res.id.clone(),
            boundary: "instant position (time:inXSDDate)",
        })
    }

    fn date_midnight(&self, lexical: &str) -> Result<f64, CalendarError> {
        let period = parse_iso(lexical.trim(), CalendarSystem::Gregorian)?;
        if period.granularity() != Granularity::Day {
            return Err(CalendarError::GranularityMismatch {
                iri: lexical.to_string(),
                segment: "xsd:date".to_string(),
                actual: period.granularity(),
            });
        }
        Ok(period.first_day().midnight().value())
    }
}

pub fn resolve(doc: &TemporalDocument, id: &str) -> Result<ResolvedInterval, ResolveError> {
    Resolver::new(doc).resolve(id)
}

pub fn resolve_all(doc: &TemporalDocument) -> ResolveReport {
    Resolver::new(doc).resolve_all()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::parse_turtle;

    const HEAD: &str = "@prefix hutime: <http://resource.hutime.org/ontology/> .\n\
                        @prefix time: <http://www.w3.org/2006/time#> .\n\
                        @prefix hcal: <http://datetime.hutime.org/calendar/> .\n";

    fn doc(body: &str) -> TemporalDocument {
        parse_turtle(&format!("{HEAD}{body}")).unwrap()
    }

    #[test]
    fn jd_literals() {
        let d = doc("<u:a> a hutime:UncertainTimeInterval ;\n\
                     hutime:hasPossibleJdBeginning 1.0 ; hutime:hasReliableJdBeginning 2.0 ;\n\
                     hutime:hasReliableJdEnd 3.0 ; hutime:hasPossibleJdEnd 4.0 .");
        let r = resolve(&d, "u:a").unwrap();
        assert_eq!(r.interval.to_days(), [1.0, 2.0, 3.0, 4.0]);
        assert!(r.provenance.iter().all(|s| s.style == SpecStyle::JdLiteral));
    }

    #[test]
    fn calendar_range() {
        let d = doc("<u:a> a hutime:UncertainTimeInterval ;\n\
                     hutime:hasRangeOfBeginning hcal:101.1/year/2019 ;\n\
                     hutime:hasRangeOfEnd hcal:101.1/year/2019 .");
        let r = resolve(&d, "u:a").unwrap();
        assert_eq!(r.interval.to_days(), [2458484.5, 2458849.5, 2458484.5, 2458849.5]);
        assert_eq!(r.interval.reliable_interval(), None);
    }

    #[test]
    fn agreeing_sources_are_accepted() {
        let d = doc("<u:a> a hutime:UncertainTimeInterval ;\n\
                     hutime:hasPossibleJdBeginning 2458484.5 ;\n\
                     hutime:hasRangeOfBeginning hcal:101.1/year/2019 ;\n\
                     hutime:hasRangeOfEnd hcal:101.1/year/2020 .");
        let r = resolve(&d, "u:a").unwrap();
        assert_eq!(r.provenance[0].style, SpecStyle::JdLiteral);
        assert_eq!(r.provenance[1].style, SpecStyle::Range);
    }

    #[test]
    fn conflicting_sources() {
        let d = doc("<u:a> a hutime:UncertainTimeInterval ;\n\
                     hutime:hasPossibleJdBeginning 2458484.0 ;\n\
                     hutime:hasRangeOfBeginning hcal:101.1/year/2019 ;\n\
                     hutime:hasRangeOfEnd hcal:101.1/year/2020 .");
        assert!(matches!(
            resolve(&d, "u:a"),
            Err(ResolveError::ConflictingSpecification { boundary: "possible beginning", .. })
        ));
    }

    #[test]
    fn missing_and_unresolved() {
        let d = doc("<u:a> a hutime:UncertainTimeInterval ; hutime:hasRangeOfBeginning <u:x> .\n\
                     <u:b> a hutime:UncertainTimeInterval ; hutime:hasRangeOfBeginning hcal:101.1/year/2019 .");
        assert_eq!(
            resolve(&d, "u:a"),
            Err(ResolveError::UnresolvedReference {
                id: "u:x".into(),
                referenced_by: Some("u:a".into())
            })
        );
        assert_eq!(
            resolve(&d, "u:b"),
            Err(ResolveError::MissingBoundary {
                id: "u:b".into(),
                boundary: "reliable end"
            })
        );
    }

    #[test]
    fn cycles_are_reported_for_each_member() {
        let d = doc("<u:a> a hutime:UncertainTimeInterval ; hutime:hasRangeOfBeginning <u:b> ; hutime:hasRangeOfEnd <u:b> .\n\
                     <u:b> a hutime:UncertainTimeInterval ; hutime:hasRangeOfBeginning <u:a> ; hutime:hasRangeOfEnd <u:a> .");
        let report = resolve_all(&d);
        assert!(report.intervals.is_empty());
        let chains: Vec<_> = report
            .errors
            .iter()
            .map(|(_, e)| match e {
                ResolveError::CycleDetected { chain } => chain.join(" "),
                other => panic!("{other}"),
            })
            .collect();
        assert_eq!(chains, ["u:a u:b u:a", "u:b u:a u:b"]);
    }

    #[test]
    fn proper_interval_is_determinate() {
        let d = doc("<u:p> a time:ProperInterval ;\n\
                     time:hasBeginning [ a time:Instant ; time:inXSDDate \"2020-07-01\"^^xsd:date ] ;\n\
                     time:hasEnd [ a time:Instant ; time:inXSDDate \"2021-01-01\"^^xsd:date ] .");
        let report = resolve_all(&d);
        let r = &report.intervals[0];
        assert!(r.interval.is_determinate());
        assert_eq!(r.interval.to_days(), [2459031.5, 2459031.5, 2459215.5, 2459215.5]);
        assert!(report.warnings.iter().any(|w| w.contains("midnight")));

        let d = doc("<u:q> a time:ProperInterval ; hutime:hasRangeOfBeginning hcal:101.1/year/2019 ;\n\
                     time:hasEnd [ a time:Instant ; time:inXSDDate \"2021-01-01\"^^xsd:date ] .");
        assert_eq!(
            resolve(&d, "u:q"),
            Err(ResolveError::IndeterminateProperInterval { id: "u:q".into() })
        );
    }

    #[test]
    fn bad_bounds_and_objects() {
        let d = doc("<u:a> a hutime:UncertainTimeInterval ;\n\
                     hutime:hasPossibleJdBeginning 5.0 ; hutime:hasReliableJdBeginning 2.0 ;\n\
                     hutime:hasReliableJdEnd 3.0 ; hutime:hasPossibleJdEnd 4.0 .\n\
                     <u:b> a hutime:UncertainTimeInterval ; hutime:hasPossibleJdBeginning \"soon\" .");
        assert!(matches!(resolve(&d, "u:a"), Err(ResolveError::InvalidBounds { .. })));
        assert!(matches!(resolve(&d, "u:b"), Err(ResolveError::InvalidObject { .. })));
    }

    #[test]
    fn calendar_iri_resolves_directly() {
        let d = TemporalDocument::default();
        let r = resolve(&d, "http://datetime.hutime.org/calendar/101.2/date/1760s").unwrap();
        assert!(r.interval.is_determinate());
        assert_eq!(r.interval.pe().value() - r.interval.pb().value(), 3653.0);
    }
}
