use chrono::{Datelike, NaiveDate};

use uti_core::ontology::{
    emit_turtle, parse_turtle, resolve, resolve_all, ResolveError, ResolvedInterval, SpecStyle,
    TemporalDocument,
};
use uti_core::retrieval::{possible_set, preset, MatchClass};
use uti_core::{match_condition, AllenRelation, OperandKind, RelationSet};

use AllenRelation::*;

const TERMS: &str = include_str!("../fixtures/terms.ttl");
const MODERN: &str = include_str!("../fixtures/modern_periods.ttl");
const MODERN_CONTEXT: &str = include_str!("../fixtures/modern_context.ttl");
const CYCLE: &str = include_str!("../fixtures/cycle.ttl");

/// Midnight starting a Gregorian date, from chrono's day count.
fn midnight(y: i32, m: u32, d: u32) -> f64 {
    let days = NaiveDate::from_ymd_opt(y, m, d).unwrap().num_days_from_ce();
    f64::from(days) + 1_721_425.0 - 0.5
}

fn modern() -> TemporalDocument {
    let mut doc = parse_turtle(MODERN).unwrap();
    doc.merge(parse_turtle(MODERN_CONTEXT).unwrap());
    doc
}

fn by_id<'a>(rs: &'a [ResolvedInterval], id: &str) -> &'a ResolvedInterval {
    rs.iter().find(|r| r.id == id).unwrap()
}

#[test]
fn terms_document() {
    let doc = parse_turtle(TERMS).unwrap();
    let report = resolve_all(&doc);
    assert!(report.errors.is_empty(), "{:?}", report.errors);
    let ids: Vec<_> = report.intervals.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["ex:Term1", "ex:Term2", "ex:Term3", "ex:Term4"]);

    let term1 = report.intervals[0].interval.to_days();
    assert_eq!(term1, [midnight(2018, 1, 1), midnight(2018, 3, 1), 2458239.5, 2458300.5]);
    assert_eq!(term1[1] - term1[0], 59.0);

    let term2 = report.intervals[1].interval;
    assert_eq!(
        term2.to_days(),
        [midnight(2019, 1, 1), midnight(2020, 1, 1), midnight(2019, 1, 1), midnight(2020, 1, 1)]
    );
    assert_eq!(term2.reliable_interval(), None);

    let term3 = report.intervals[2].interval;
    assert!(term3.is_determinate());
    assert_eq!(
        term3.to_days(),
        [midnight(2020, 7, 1), midnight(2020, 7, 1), midnight(2021, 1, 1), midnight(2021, 1, 1)]
    );

    let term4 = report.intervals[3].interval.to_days();
    assert_eq!(term4, [term1[0], term1[3], midnight(2020, 7, 1), midnight(2021, 1, 1)]);
    assert!(report.intervals[3]
        .provenance
        .iter()
        .all(|s| s.style == SpecStyle::Range));

    assert!(report.warnings.iter().any(|w| w.contains("midnight")));
}

#[test]
fn modern_periods_need_context() {
    let report = resolve_all(&parse_turtle(MODERN).unwrap());
    let failed: Vec<_> = report.errors.iter().map(|(id, _)| id.as_str()).collect();
    assert_eq!(failed, ["ex:EarlyModernPeriod", "ex:LateModernPeriod"]);
    assert!(matches!(
        &report.errors[0].1,
        ResolveError::UnresolvedReference { id, .. } if id == "ex:Renaissance"
    ));
    assert_eq!(report.intervals.len(), 3);
}

#[test]
fn modern_periods() {
    let report = resolve_all(&modern());
    assert!(report.errors.is_empty(), "{:?}", report.errors);
    let rs = &report.intervals;
    let industrial = by_id(rs, "ex:IndustrialRevolution").interval;
    assert_eq!(
        industrial.to_days(),
        [midnight(1760, 1, 1), midnight(1770, 1, 1), midnight(1830, 1, 1), midnight(1840, 1, 1)]
    );
    let early = by_id(rs, "ex:EarlyModernPeriod").interval;
    assert_eq!(early.re(), industrial.pb());
    assert_eq!(early.pe(), industrial.pe());
    let late = by_id(rs, "ex:LateModernPeriod").interval;
    assert_eq!(late.pb(), industrial.pb());
    assert_eq!(late.rb(), industrial.pe());
    assert_eq!(late.pe().value(), midnight(1946, 1, 1));
    let watt = by_id(rs, "ex:JamesWatt").interval;
    assert_eq!(watt.to_days()[0], midnight(1736, 1, 19));
    assert_eq!(watt.to_days()[3], midnight(1819, 8, 26));
}

#[test]
fn life_spans_against_periods() {
    let report = resolve_all(&modern());
    let rs = &report.intervals;
    let alive = preset("alive-during").unwrap();
    let class = |person: &str, period: &str| {
        let p = possible_set(
            &by_id(rs, person).interval,
            &by_id(rs, period).interval,
            OperandKind::Interval,
            OperandKind::Interval,
        )
        .unwrap();
        (match_condition(&alive, p).unwrap(), p)
    };
    let (c, p) = class("ex:JamesWatt", "ex:EarlyModernPeriod");
    assert_eq!(c, MatchClass::Reliable);
    assert_eq!(p, RelationSet::from([During, Finishes, OverlappedBy]));
    let (c, p) = class("ex:JamesWatt", "ex:LateModernPeriod");
    assert_eq!(c, MatchClass::Possible);
    assert_eq!(p, RelationSet::from([Before, Meets, Overlaps]));
    let (c, p) = class("ex:GeorgeStephenson", "ex:LateModernPeriod");
    assert_eq!(c, MatchClass::Reliable);
    assert_eq!(p, RelationSet::from([Overlaps, Starts, During]));
    let (c, p) = class("ex:GeorgeStephenson", "ex:EarlyModernPeriod");
    assert_eq!(c, MatchClass::Possible);
    assert_eq!(p, RelationSet::from([OverlappedBy, MetBy, After]));
}

fn assert_round_trip(doc: &TemporalDocument) {
    let first = resolve_all(doc);
    assert!(first.errors.is_empty());
    let text = emit_turtle(&first.intervals);
    let second = resolve_all(&parse_turtle(&text).unwrap());
    assert!(second.errors.is_empty());
    assert_eq!(first.intervals.len(), second.intervals.len());
    for (a, b) in first.intervals.iter().zip(&second.intervals) {
        assert_eq!(a.id, b.id);
        assert_eq!(
            a.interval.to_days().map(f64::to_bits),
            b.interval.to_days().map(f64::to_bits)
        );
    }
}

#[test]
fn round_trips() {
    assert_round_trip(&parse_turtle(TERMS).unwrap());
    assert_round_trip(&modern());
}

#[test]
fn cycle_fixture() {
    let doc = parse_turtle(CYCLE).unwrap();
    let report = resolve_all(&doc);
    assert!(report.intervals.is_empty());
    assert_eq!(report.errors.len(), 2);
    for (id, e) in &report.errors {
        let ResolveError::CycleDetected { chain } = e else {
            panic!("{e}")
        };
        assert_eq!(&chain[0], id);
        assert_eq!(chain.first(), chain.last());
        assert_eq!(chain.len(), 3);
    }
}

#[test]
fn long_chains_resolve() {
    let mut text = String::from(
        "@prefix hutime: <http://resource.hutime.org/ontology/> .\n\
         <u:n0> a hutime:UncertainTimeInterval ; hutime:hasPossibleJdBeginning 0.0 ;\n\
         hutime:hasReliableJdBeginning 1.0 ; hutime:hasReliableJdEnd 2.0 ; hutime:hasPossibleJdEnd 3.0 .\n",
    );
    for i in 1..200 {
        text.push_str(&format!(
            "<u:n{i}> a hutime:UncertainTimeInterval ; hutime:hasRangeOfBeginning <u:n{}> ; hutime:hasRangeOfEnd <u:n{}> .\n",
            i - 1,
            i - 1
        ));
    }
    let doc = parse_turtle(&text).unwrap();
    let last = resolve(&doc, "u:n199").unwrap();
    assert_eq!(last.interval.to_days(), [0.0, 3.0, 0.0, 3.0]);
}

#[test]
fn statement_order_does_not_matter() {
    let doc = parse_turtle(TERMS).unwrap();
    let forward = resolve_all(&doc);
    let blocks: Vec<&str> = TERMS.split("\n\n").collect();
    let mut reversed = blocks[0].to_string();
    for b in blocks[1..].iter().rev() {
        reversed.push_str("\n\n");
        reversed.push_str(b.trim_end_matches(['\n', ' ', '.']).trim_end_matches(';'));
        reversed.push_str(" .");
    }
    let backward = resolve_all(&parse_turtle(&reversed).unwrap());
    assert!(backward.errors.is_empty(), "{:?}", backward.errors);
    for r in &forward.intervals {
        let other = backward.intervals.iter().find(|o| o.id == r.id).unwrap();
        assert_eq!(r.interval, other.interval);
    }
}

#[test]
fn parse_errors() {
    let e = parse_turtle("<u:a> <u:p> [ <u:q> 1 .").unwrap_err();
    assert_eq!(e.line, 1);
    assert!(parse_turtle("").unwrap().is_empty());
}
