//! IRIs of the recognised vocabulary.

pub const HUTIME: &str = "http://resource.hutime.org/ontology/";
pub const TIME: &str = "http://www.w3.org/2006/time#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

pub const UNCERTAIN_TIME_INTERVAL: &str = "http://resource.hutime.org/ontology/UncertainTimeInterval";
pub const HAS_POSSIBLE_BEGINNING: &str = "http://resource.hutime.org/ontology/hasPossibleBeginning";
pub const HAS_RELIABLE_BEGINNING: &str = "http://resource.hutime.org/ontology/hasReliableBeginning";
pub const HAS_RELIABLE_END: &str = "http://resource.hutime.org/ontology/hasReliableEnd";
pub const HAS_POSSIBLE_END: &str = "http://resource.hutime.org/ontology/hasPossibleEnd";
pub const HAS_POSSIBLE_JD_BEGINNING: &str =
    "http://resource.hutime.org/ontology/hasPossibleJdBeginning";
pub const HAS_RELIABLE_JD_BEGINNING: &str =
    "http://resource.hutime.org/ontology/hasReliableJdBeginning";
pub const HAS_RELIABLE_JD_END: &str = "http://resource.hutime.org/ontology/hasReliableJdEnd";
pub const HAS_POSSIBLE_JD_END: &str = "http://resource.hutime.org/ontology/hasPossibleJdEnd";
pub const HAS_RANGE_OF_BEGINNING: &str = "http://resource.hutime.org/ontology/hasRangeOfBeginning";
pub const HAS_RANGE_OF_END: &str = "http://resource.hutime.org/ontology/hasRangeOfEnd";

pub const PROPER_INTERVAL: &str = "http://www.w3.org/2006/time#ProperInterval";
pub const INSTANT: &str = "http://www.w3.org/2006/time#Instant";
pub const TEMPORAL_ENTITY: &str = "http://www.w3.org/2006/time#TemporalEntity";
pub const HAS_BEGINNING: &str = "http://www.w3.org/2006/time#hasBeginning";
pub const HAS_END: &str = "http://www.w3.org/2006/time#hasEnd";
pub const IN_XSD_DATE: &str = "http://www.w3.org/2006/time#inXSDDate";

pub const XSD_DATE: &str = "http://www.w3.org/2001/XMLSchema#date";
pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";

/// The four JD-literal properties in `(pb, rb, re, pe)` order.
pub const JD_PROPERTIES: [&str; 4] = [
    HAS_POSSIBLE_JD_BEGINNING,
    HAS_RELIABLE_JD_BEGINNING,
    HAS_RELIABLE_JD_END,
    HAS_POSSIBLE_JD_END,
];

/// The four boundary-instant properties in `(pb, rb, re, pe)` order.
pub const INSTANT_PROPERTIES: [&str; 4] = [
    HAS_POSSIBLE_BEGINNING,
    HAS_RELIABLE_BEGINNING,
    HAS_RELIABLE_END,
    HAS_POSSIBLE_END,
];

/// Short `prefix:local` form for display, when the IRI is in a known
/// namespace.
pub fn compact(iri: &str) -> String {
    for (prefix, ns) in [("hutime", HUTIME), ("time", TIME), ("xsd", XSD)] {
        if let Some(local) = iri.strip_prefix(ns) {
            return format!("{prefix}:{local}");
        }
    }
    if let Some(local) = iri.strip_prefix(crate::calendar::CALENDAR_BASE) {
        return format!("hcal:{local}");
    }
    iri.to_string()
}
