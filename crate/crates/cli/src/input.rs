use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use uti_core::calendar::{parse_iso, period_bounds};
use uti_core::ontology::{parse_turtle, TemporalDocument};
use uti_core::{CalendarSystem, UncertainInterval};

pub fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// Parse and merge all datasets; warnings go to stderr.
pub fn load_documents(paths: &[PathBuf]) -> Result<TemporalDocument> {
    let mut doc = TemporalDocument::default();
    for path in paths {
        let text = read_text(path)?;
        let part = parse_turtle(&text).with_context(|| format!("parsing {}", path.display()))?;
        doc.merge(part);
    }
    for w in &doc.warnings {
        eprintln!("warning: {w}");
    }
    Ok(doc)
}

/// Find a resource by id as given on the command line: an exact id, an IRI
/// in angle brackets, or a prefixed name using the document's prefixes.
pub fn lookup_id(doc: &TemporalDocument, text: &str) -> Option<String> {
    let text = text.trim();
    let bare = text
        .strip_prefix('<')
        .and_then(|t| t.strip_suffix('>'))
        .unwrap_or(text);
    if doc.get(bare).is_some() {
        return Some(bare.to_string());
    }
    let (prefix, local) = bare.split_once(':')?;
    doc.prefixes
        .iter()
        .rev()
        .find(|(p, _)| p == prefix)
        .map(|(_, ns)| format!("{ns}{local}"))
        .filter(|iri| doc.get(iri).is_some())
}

/// `pb,rb,re,pe`, a single Julian day such as `2458119.5`, or
/// `period[..period]`.
pub fn parse_interval(text: &str, system: CalendarSystem) -> Result<UncertainInterval> {
    let text = text.trim();
    if text.contains(',') {
        let parts: Vec<f64> = text
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .with_context(|| format!("`{}` is not a number", p.trim()))
            })
            .collect::<Result<_>>()?;
        let [pb, rb, re, pe] = parts[..] else {
            bail!("expected four comma-separated Julian days, found {}", parts.len());
        };
        return Ok(UncertainInterval::from_days(pb, rb, re, pe)?);
    }
    // A bare integer is a year; a Julian day needs a fraction or exponent.
    if let Ok(t) = text.parse::<f64>() {
        if text.contains(['.', 'e', 'E']) {
            return Ok(UncertainInterval::from_days(t, t, t, t)?);
        }
    }
    let (first, last) = text.split_once("..").unwrap_or((text, text));
    let begin = period_bounds(&parse_iso(first.trim(), system)?).begin().value();
    let end = period_bounds(&parse_iso(last.trim(), system)?).end().value();
    Ok(UncertainInterval::from_days(begin, begin, end, end)?)
}
