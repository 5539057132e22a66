use std::io::Write;

use anyhow::{anyhow, bail, Context};
use serde::Serialize;

use uti_core::calendar::{parse_iso, period_bounds, CalendarDate, CalendarRegistry, Granularity};
use uti_core::ontology::{
    emit_turtle, resolve as resolve_id, resolve_all, vocab, BoundarySource, ResolvedInterval,
};
use uti_core::oracle::oracle_profile;
use uti_core::retrieval::{preset, query as run_query, Condition, MatchClass, Record};
use uti_core::{
    profile, to_julian_day, AllenRelation, CalendarSystem, OperandKind, RelationSet,
    RelationState, UncertainInterval,
};

use crate::input::{load_documents, lookup_id, parse_interval};
use crate::{ConvertArgs, Failure, Format, QueryArgs, RelateArgs, RenderArgs, ResolveArgs};

type Outcome = Result<u8, Failure>;

fn print_line<T: Serialize>(out: &mut impl Write, value: &T) -> std::io::Result<()> {
    let json = serde_json::to_string(value).expect("output rows serialize");
    writeln!(out, "{json}")
}

fn text_only(format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::input(format!(
            "--format {} is not available for this command",
            format!("{format:?}").to_lowercase()
        )))
    }
}

fn parse_time_of_day(text: &str) -> anyhow::Result<f64> {
    let parts: Vec<&str> = text.split(':').collect();
    if !(2..=3).contains(&parts.len()) {
        bail!("time of day must be HH:MM or HH:MM:SS, found `{text}`");
    }
    let field = |s: &str, max: f64| -> anyhow::Result<f64> {
        let v: f64 = s.parse().with_context(|| format!("`{s}` in `{text}` is not a number"))?;
        if !(0.0..max).contains(&v) {
            bail!("`{s}` is out of range in `{text}`");
        }
        Ok(v)
    };
    let h = field(parts[0], 24.0)?;
    let m = field(parts[1], 60.0)?;
    let s = parts.get(2).map(|s| field(s, 60.0)).transpose()?.unwrap_or(0.0);
    Ok((h * 3600.0 + m * 60.0 + s) / 86400.0)
}

#[derive(Serialize)]
struct JdRow<'a> {
    input: &'a str,
    system: CalendarSystem,
    #[serde(skip_serializing_if = "Option::is_none")]
    jd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    begin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    end: Option<f64>,
}

#[derive(Serialize)]
struct DateRow {
    jd: f64,
    system: CalendarSystem,
    date: String,
    time: String,
    era: String,
}

pub fn convert(args: &ConvertArgs) -> Outcome {
    text_only(args.format, &[Format::Text, Format::Lines])?;
    let system = CalendarSystem::from(args.system);
    let mut out = std::io::stdout().lock();
    if let Some(text) = &args.to_jd {
        let (date_part, time_part) = match text.split_once('T') {
            Some((d, t)) => (d, Some(t)),
            None => (text.as_str(), None),
        };
        let period = parse_iso(date_part.trim(), system).map_err(Failure::input)?;
        let mut row = JdRow {
            input: text,
            system,
            jd: None,
            begin: None,
            end: None,
        };
        if period.granularity() == Granularity::Day {
            let fraction = match time_part {
                Some(t) => parse_time_of_day(t)?,
                None => 0.0,
            };
            let jd = to_julian_day(&period.first_day(), fraction).map_err(Failure::input)?;
            row.jd = Some(jd.value());
        } else {
            if time_part.is_some() {
                return Err(Failure::input("a time of day needs a full date"));
            }
            let b = period_bounds(&period);
            row.begin = Some(b.begin().value());
            row.end = Some(b.end().value());
        }
        match args.format {
            Format::Lines => print_line(&mut out, &row)?,
            _ => match (row.jd, row.begin, row.end) {
                (Some(jd), _, _) => writeln!(out, "{jd}")?,
                (_, Some(b), Some(e)) => writeln!(out, "[{b}, {e}]")?,
                _ => unreachable!(),
            },
        }
    } else if let Some(text) = &args.to_date {
        let jd: f64 = text
            .trim()
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| Failure::input(format!("`{text}` is not a Julian day")))?;
        // whole seconds since the midnight starting day number 0
        let secs = ((jd + 0.5) * 86400.0).round();
        let day = (secs / 86400.0).floor();
        let sod = (secs - day * 86400.0) as i64;
        let date = CalendarDate::from_day_number(system, day as i64);
        let time = if sod % 60 == 0 {
            format!("{:02}:{:02}", sod / 3600, sod / 60 % 60)
        } else {
            format!("{:02}:{:02}:{:02}", sod / 3600, sod / 60 % 60, sod % 60)
        };
        let row = DateRow {
            jd,
            system,
            date: date.to_string(),
            time,
            era: date.era_label(),
        };
        match args.format {
            Format::Lines => print_line(&mut out, &row)?,
            _ => writeln!(out, "{}T{} ({})", row.date, row.time, row.era)?,
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct StateRow {
    relation: AllenRelation,
    state: RelationState,
}

pub fn relate(args: &RelateArgs) -> Outcome {
    text_only(args.format, &[Format::Text, Format::Lines])?;
    let system = CalendarSystem::from(args.system);
    let a = parse_interval(&args.a, system).context("first interval")?;
    let b = parse_interval(&args.b, system).context("second interval")?;
    let (ka, kb) = (OperandKind::from(args.kind_a), OperandKind::from(args.kind_b));
    let p = profile(&a, &b, ka, kb).map_err(Failure::input)?;

    let mut out = std::io::stdout().lock();
    for (relation, state) in p.iter() {
        match args.format {
            Format::Lines => print_line(&mut out, &StateRow { relation, state })?,
            _ => writeln!(out, "{:<14} {}", relation.name(), state.name())?,
        }
    }
    if args.oracle {
        let expected = oracle_profile(&a, &b, ka, kb);
        let differing: Vec<_> = AllenRelation::ALL
            .into_iter()
            .filter(|r| p.state(*r) != expected.state(*r))
            .collect();
        if !differing.is_empty() {
            let detail: Vec<_> = differing
                .iter()
                .map(|r| format!("{r}: {} vs oracle {}", p.state(*r).name(), expected.state(*r).name()))
                .collect();
            return Err(Failure {
                code: 3,
                message: format!("oracle mismatch: {}", detail.join("; ")),
            });
        }
        if args.format == Format::Text {
            writeln!(out, "oracle agrees")?;
        }
    }
    Ok(0)
}

fn set_text(set: RelationSet) -> String {
    set.to_string()
}

#[derive(Serialize)]
struct MatchRow<'a> {
    id: &'a str,
    #[serde(rename = "match")]
    class: MatchClass,
    possible: RelationSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    reliable: Option<AllenRelation>,
}

#[derive(Serialize)]
struct ErrorRow<'a> {
    id: &'a str,
    error: String,
}

#[derive(Serialize)]
struct Summary {
    reliable: usize,
    possible: usize,
    impossible: usize,
    errors: usize,
}

#[derive(Serialize)]
struct SummaryRow {
    summary: Summary,
}

pub fn query(args: &QueryArgs) -> Outcome {
    text_only(args.format, &[Format::Text, Format::Lines])?;
    let doc = load_documents(&args.datasets)?;
    let condition: Condition = match (&args.condition, &args.preset) {
        (Some(c), _) => c.parse().map_err(Failure::input)?,
        (None, Some(p)) => preset(p).map_err(Failure::input)?,
        (None, None) => return Err(Failure::input("give --condition or --preset")),
    };

    let reference_id = lookup_id(&doc, &args.reference);
    let reference = match &reference_id {
        Some(id) => resolve_id(&doc, id)
            .map_err(|e| Failure::input(format!("reference: {e}")))?
            .interval,
        None => {
            let bare = args.reference.trim_matches(['<', '>']);
            if CalendarRegistry::is_calendar_iri(bare) {
                resolve_id(&doc, bare).map_err(Failure::input)?.interval
            } else {
                parse_interval(&args.reference, args.system.into()).map_err(|e| {
                    Failure::input(format!(
                        "reference `{}` is neither a resource in the dataset nor an interval: {e:#}",
                        args.reference
                    ))
                })?
            }
        }
    };

    let wanted: Option<Vec<String>> = if args.records.is_empty() {
        None
    } else {
        let ids = args
            .records
            .iter()
            .map(|r| lookup_id(&doc, r).ok_or_else(|| anyhow!("no record `{r}` in the dataset")))
            .collect::<anyhow::Result<Vec<_>>>()?;
        Some(ids)
    };
    let keep = |id: &str| {
        Some(id) != reference_id.as_deref()
            && wanted.as_ref().map_or(true, |w| w.iter().any(|x| x == id))
    };

    let report = resolve_all(&doc);
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let records: Vec<Record<String>> = report
        .intervals
        .iter()
        .filter(|r| keep(&r.id))
        .map(|r| Record::new(r.id.clone(), r.interval))
        .collect();
    let results = run_query(&records, &reference, OperandKind::Interval, &condition);

    let mut errors: Vec<(String, String)> = report
        .errors
        .iter()
        .filter(|(id, _)| keep(id))
        .map(|(id, e)| (id.clone(), e.to_string()))
        .collect();
    let mut counts = Summary {
        reliable: 0,
        possible: 0,
        impossible: 0,
        errors: 0,
    };
    let mut out = std::io::stdout().lock();
    let width = records.iter().map(|r| r.id.len()).chain(errors.iter().map(|e| e.0.len())).max().unwrap_or(0);
    for entry in &results {
        match entry {
            Ok(m) => {
                match m.class {
                    MatchClass::Reliable => counts.reliable += 1,
                    MatchClass::Possible => counts.possible += 1,
                    MatchClass::Impossible => counts.impossible += 1,
                }
                match args.format {
                    Format::Lines => print_line(
                        &mut out,
                        &MatchRow {
                            id: &m.id,
                            class: m.class,
                            possible: m.possible_set,
                            reliable: m.profile.reliable_relation(),
                        },
                    )?,
                    _ => writeln!(out, "{:<width$}  {:<10}  {}", m.id, m.class, set_text(m.possible_set))?,
                }
            }
            Err(e) => errors.push((e.id.clone(), e.source.to_string())),
        }
    }
    counts.errors = errors.len();
    for (id, e) in &errors {
        match args.format {
            Format::Lines => print_line(&mut out, &ErrorRow { id, error: e.clone() })?,
            _ => writeln!(out, "{id:<width$}  error       {e}")?,
        }
    }
    match args.format {
        Format::Lines => print_line(&mut out, &SummaryRow { summary: counts })?,
        _ => writeln!(
            out,
            "reliable {}, possible {}, impossible {}, errors {}",
            counts.reliable, counts.possible, counts.impossible, counts.errors
        )?,
    }
    Ok(if errors.is_empty() { 0 } else { 1 })
}

#[derive(Serialize)]
struct ResolvedRow<'a> {
    id: &'a str,
    pb: f64,
    rb: f64,
    re: f64,
    pe: f64,
    provenance: &'a [BoundarySource; 4],
}

fn source_text(s: &BoundarySource) -> String {
    let property = vocab::compact(&s.property);
    match &s.object {
        Some(o) if !o.starts_with("_:") => format!("{property} {}", vocab::compact(o)),
        _ => property,
    }
}

/// `pb,rb: <source>; re,pe: <source>`, grouping slots with the same source.
fn provenance_text(sources: &[BoundarySource; 4]) -> String {
    const SLOTS: [&str; 4] = ["pb", "rb", "re", "pe"];
    let mut groups: Vec<(Vec<&str>, String)> = Vec::new();
    for (slot, source) in SLOTS.iter().zip(sources) {
        let text = source_text(source);
        match groups.iter_mut().find(|(_, t)| *t == text) {
            Some((slots, _)) => slots.push(slot),
            None => groups.push((vec![slot], text)),
        }
    }
    groups
        .into_iter()
        .map(|(slots, text)| format!("{}: {text}", slots.join(",")))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn resolve(args: &ResolveArgs) -> Outcome {
    text_only(args.format, &[Format::Text, Format::Lines])?;
    let doc = load_documents(&args.datasets)?;
    let report = resolve_all(&doc);
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let mut out = std::io::stdout().lock();
    if args.emit {
        out.write_all(emit_turtle(&report.intervals).as_bytes())?;
        for (_, e) in &report.errors {
            eprintln!("error: {e}");
        }
    } else {
        let width = report
            .intervals
            .iter()
            .map(|r| r.id.len())
            .chain(report.errors.iter().map(|e| e.0.len()))
            .max()
            .unwrap_or(0);
        for r in &report.intervals {
            let [pb, rb, re, pe] = r.interval.to_days();
            match args.format {
                Format::Lines => print_line(
                    &mut out,
                    &ResolvedRow {
                        id: &r.id,
                        pb,
                        rb,
                        re,
                        pe,
                        provenance: &r.provenance,
                    },
                )?,
                _ => {
                    writeln!(
                        out,
                        "{:<width$}  {pb:<11} {rb:<11} {re:<11} {pe:<11} {}",
                        r.id,
                        provenance_text(&r.provenance)
                    )?;
                }
            }
        }
        for (id, e) in &report.errors {
            match args.format {
                Format::Lines => print_line(&mut out, &ErrorRow { id, error: e.to_string() })?,
                _ => writeln!(out, "{id:<width$}  error: {e}")?,
            }
        }
    }
    Ok(if report.errors.is_empty() { 0 } else { 1 })
}

pub fn render(args: &RenderArgs) -> Outcome {
    text_only(args.format, &[Format::Svg, Format::Ascii])?;
    let doc = load_documents(&args.datasets)?;
    let report = resolve_all(&doc);
    for (_, e) in &report.errors {
        eprintln!("error: {e}");
    }
    if report.intervals.is_empty() && !report.errors.is_empty() {
        return Err(Failure::input("no interval in the dataset could be resolved"));
    }
    let tracks: Vec<(&str, UncertainInterval)> = report
        .intervals
        .iter()
        .map(|r: &ResolvedInterval| (r.id.as_str(), r.interval))
        .collect();
    let text = match args.format {
        Format::Ascii => crate::render::ascii(&tracks, args.width.unwrap_or(72) as usize),
        _ => crate::render::svg(&tracks, f64::from(args.width.unwrap_or(800))),
    };
    match &args.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(if report.errors.is_empty() { 0 } else { 1 })
}
