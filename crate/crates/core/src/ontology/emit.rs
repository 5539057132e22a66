use std::fmt::Write;

use super::resolve::ResolvedInterval;

const HEADER: &str = "@prefix hutime: <http://resource.hutime.org/ontology/> .\n\
                      @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";

const PROPERTIES: [&str; 4] = [
    "hutime:hasPossibleJdBeginning",
    "hutime:hasReliableJdBeginning",
    "hutime:hasReliableJdEnd",
    "hutime:hasPossibleJdEnd",
];

fn node(id: &str) -> String {
    if id.contains("://") || !id.contains(':') {
        format!("<{id}>")
    } else if let Some(label) = id.strip_prefix("_:") {
        let clean: String = label
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
            .collect();
        format!("_:{clean}")
    } else {
        id.to_string()
    }
}

/// Write intervals as Turtle using the JD-literal properties.
///
/// Values are printed in shortest round-trip form, so parsing the output
/// reproduces them exactly.
pub fn emit_turtle(intervals: &[ResolvedInterval]) -> String {
    let mut out = String::from(HEADER);
    for r in intervals {
        out.push('\n');
        let _ = writeln!(out, "{} a hutime:UncertainTimeInterval ;", node(&r.id));
        let days = r.interval.to_days();
        for (i, (p, v)) in PROPERTIES.iter().zip(days).enumerate() {
            let end = if i == 3 { " ." } else { " ;" };
            let _ = writeln!(out, "    {p} \"{v:?}\"^^xsd:double{end}");
        }
    }
    out
}
