use std::collections::HashSet;

use indexmap::IndexMap;

use super::turtle::{parse_graph, Term, TurtleError};
use super::vocab;
use crate::calendar::CalendarRegistry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResourceKind {
    UncertainInterval,
    ProperInterval,
    Instant,
    CalendarRef,
    /// Untyped, or typed only with classes outside the vocabulary.
    Other,
}

impl ResourceKind {
    pub fn is_interval(self) -> bool {
        matches!(self, ResourceKind::UncertainInterval | ResourceKind::ProperInterval)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemporalResource {
    pub id: String,
    pub kind: ResourceKind,
    pub types: Vec<String>,
    /// Every predicate/object pair except `rdf:type`, in document order.
    pub properties: Vec<(String, Term)>,
}

impl TemporalResource {
    fn new(id: String) -> Self {
        let kind = if CalendarRegistry::is_calendar_iri(&id) {
            ResourceKind::CalendarRef
        } else {
            ResourceKind::Other
        };
        TemporalResource {
            id,
            kind,
            types: Vec::new(),
            properties: Vec::new(),
        }
    }

    pub fn is_blank(&self) -> bool {
        self.id.starts_with("_:")
    }

    pub fn values<'a>(&'a self, predicate: &'a str) -> impl Iterator<Item = &'a Term> + 'a {
        self.properties
            .iter()
            .filter(move |(p, _)| p == predicate)
            .map(|(_, o)| o)
    }

    fn classify(&mut self) {
        let has = |t: &str| self.types.iter().any(|x| x == t);
        self.kind = if has(vocab::UNCERTAIN_TIME_INTERVAL) {
            ResourceKind::UncertainInterval
        } else if has(vocab::PROPER_INTERVAL) {
            ResourceKind::ProperInterval
        } else if has(vocab::INSTANT) {
            ResourceKind::Instant
        } else if CalendarRegistry::is_calendar_iri(&self.id) {
            ResourceKind::CalendarRef
        } else {
            ResourceKind::Other
        };
    }
}

/// Temporal resources described by one or more Turtle documents, keyed by
/// IRI or blank-node id in order of first appearance.
#[derive(Debug, Clone, Default)]
pub struct TemporalDocument {
    pub resources: IndexMap<String, TemporalResource>,
    pub prefixes: Vec<(String, String)>,
    pub warnings: Vec<String>,
    merges: usize,
}

const KNOWN_PREDICATES: [&str; 15] = [
    vocab::HAS_POSSIBLE_BEGINNING,
    vocab::HAS_RELIABLE_BEGINNING,
    vocab::HAS_RELIABLE_END,
    vocab::HAS_POSSIBLE_END,
    vocab::HAS_POSSIBLE_JD_BEGINNING,
    vocab::HAS_RELIABLE_JD_BEGINNING,
    vocab::HAS_RELIABLE_JD_END,
    vocab::HAS_POSSIBLE_JD_END,
    vocab::HAS_RANGE_OF_BEGINNING,
    vocab::HAS_RANGE_OF_END,
    vocab::HAS_BEGINNING,
    vocab::HAS_END,
    vocab::IN_XSD_DATE,
    vocab::RDF_TYPE,
    "http://www.w3.org/2000/01/rdf-schema#label",
];

const KNOWN_TYPES: [&str; 4] = [
    vocab::UNCERTAIN_TIME_INTERVAL,
    vocab::PROPER_INTERVAL,
    vocab::INSTANT,
    vocab::TEMPORAL_ENTITY,
];

impl TemporalDocument {
    pub fn is_empty(&self) -> bool {
        self.resources.is_empty()
    }

    pub fn len(&self) -> usize {
        self.resources.len()
    }

    pub fn get(&self, id: &str) -> Option<&TemporalResource> {
        self.resources.get(id)
    }

    /// Add the resources of `other`. Its blank nodes are renamed when their
    /// labels are already used here; statements about the same IRI are
    /// combined.
    pub fn merge(&mut self, other: TemporalDocument) {
        self.merges += 1;
        let tag = self.merges;
        let mut taken: HashSet<&str> = HashSet::new();
        for res in self.resources.values() {
            if res.is_blank() {
                taken.insert(&res.id);
            }
            for (_, o) in &res.properties {
                if let Term::Blank(b) = o {
                    taken.insert(b);
                }
            }
        }
        let clashing: HashSet<String> = other
            .resources
            .keys()
            .filter(|id| taken.contains(id.as_str()))
            .cloned()
            .chain(other.resources.values().flat_map(|r| {
                r.properties.iter().filter_map(|(_, o)| match o {
                    Term::Blank(b) if taken.contains(b.as_str()) => Some(b.clone()),
                    _ => None,
                })
            }))
            .collect();
        let rename = |id: &str| {
            if clashing.contains(id) {
                format!("{id}.m{tag}")
            } else {
                id.to_string()
            }
        };
        for (_, res) in other.resources {
            let id = rename(&res.id);
            let target = self
                .resources
                .entry(id.clone())
                .or_insert_with(|| TemporalResource::new(id));
            for t in res.types {
                if !target.types.contains(&t) {
                    target.types.push(t);
                }
            }
            for (p, o) in res.properties {
                let o = match o {
                    Term::Blank(b) => Term::Blank(rename(&b)),
                    other => other,
                };
                target.properties.push((p, o));
            }
            target.classify();
        }
        self.prefixes.extend(other.prefixes);
        self.warnings.extend(other.warnings);
    }
}

/// Parse a Turtle document into temporal resources.
///
/// Predicates and classes outside the vocabulary are kept but reported in
/// `warnings`.
pub fn parse_turtle(text: &str) -> Result<TemporalDocument, TurtleError> {
    let graph = parse_graph(text)?;
    let mut doc = TemporalDocument {
        prefixes: graph.prefixes,
        warnings: graph.warnings,
        ..TemporalDocument::default()
    };
    let mut unknown_predicates: Vec<String> = Vec::new();
    let mut unknown_types: Vec<String> = Vec::new();
    for triple in graph.triples {
        let Some(subject) = triple.subject.as_node() else {
            continue;
        };
        let res = doc
            .resources
            .entry(subject.to_string())
            .or_insert_with(|| TemporalResource::new(subject.to_string()));
        if !KNOWN_PREDICATES.contains(&triple.predicate.as_str())
            && !unknown_predicates.contains(&triple.predicate)
        {
            unknown_predicates.push(triple.predicate.clone());
        }
        if triple.predicate == vocab::RDF_TYPE {
            if let Some(t) = triple.object.as_node() {
                if !KNOWN_TYPES.contains(&t) && !unknown_types.iter().any(|u| u == t) {
                    unknown_types.push(t.to_string());
                }
                if !res.types.iter().any(|x| x == t) {
                    res.types.push(t.to_string());
                }
            }
        } else {
            res.properties.push((triple.predicate, triple.object));
        }
    }
    for res in doc.resources.values_mut() {
        res.classify();
    }
    doc.warnings.extend(
        unknown_predicates
            .into_iter()
            .map(|p| format!("predicate <{p}> is not part of the vocabulary and is ignored")),
    );
    doc.warnings.extend(
        unknown_types
            .into_iter()
            .map(|t| format!("class <{t}> is not part of the vocabulary")),
    );
    Ok(doc)
}
