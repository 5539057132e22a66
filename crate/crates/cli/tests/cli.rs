use std::io::Write;
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn uti(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uti")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn attr(tag: &str, name: &str) -> f64 {
    let key = format!(" {name}=\"");
    let start = tag.find(&key).unwrap_or_else(|| panic!("{name} missing in {tag}")) + key.len();
    let len = tag[start..].find('"').unwrap();
    tag[start..start + len].parse().unwrap()
}

#[test]
fn convert_both_ways() {
    let out = uti(&["convert", "--to-jd", "2018-07-01"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2458300.5");

    let out = uti(&["convert", "--to-date", "0", "--system", "julian"]);
    assert!(stdout(&out).starts_with("-4712-01-01T12:00"));

    let out = uti(&["convert", "--to-jd", "1760s"]);
    assert_eq!(stdout(&out).trim(), "[2363886.5, 2367539.5]");

    assert_eq!(uti(&["convert", "--to-jd", "2018-02-30"]).status.code(), Some(2));
}

#[test]
fn relate_prints_all_thirteen() {
    let out = uti(&["relate", "1,1,5,5", "1,1,5,5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 13);
    for line in text.lines() {
        let expected = if line.starts_with("equals") { "reliable" } else { "impossible" };
        assert!(line.ends_with(expected), "{line}");
    }

    let out = uti(&["relate", "1,2,3,4", "0,0,9,9", "--format", "lines"]);
    let during = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .find(|v| v["relation"] == "during")
        .unwrap();
    assert_eq!(during["state"], "reliable");
}

#[test]
fn relate_oracle_and_bad_input() {
    let out = uti(&["relate", "0,2,1,3", "1,1.5,2,4", "--oracle"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("oracle agrees"));

    let out = uti(&["relate", "4,3,2,1", "1,2,3,4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid bounds"));
}

#[test]
fn relate_instant() {
    let out = uti(&["relate", "2.0", "2,2,5,5", "--kind-a", "instant"]);
    let text = stdout(&out);
    let starts = text.lines().find(|l| l.starts_with("starts ")).unwrap();
    assert!(starts.ends_with("reliable"));
}

#[test]
fn query_records() {
    let out = uti(&[
        "query",
        &fixture("retrieval_records.ttl"),
        "--reference",
        "ex:reference",
        "--preset",
        "within",
    ]);
    assert!(out.status.success());
    let classes: Vec<_> = stdout(&out)
        .lines()
        .take(4)
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(classes, ["reliable", "reliable", "impossible", "possible"]);
}

#[test]
fn query_modern_periods() {
    let periods = fixture("modern_periods.ttl");
    let context = fixture("modern_context.ttl");
    let out = uti(&[
        "query",
        &periods,
        &context,
        "--reference",
        "ex:LateModernPeriod",
        "--preset",
        "alive-during",
        "--record",
        "ex:JamesWatt",
        "--record",
        "ex:GeorgeStephenson",
        "--format",
        "lines",
    ]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let class = |id: &str| rows.iter().find(|r| r["id"] == id).unwrap()["match"].clone();
    assert_eq!(class("ex:JamesWatt"), "possible");
    assert_eq!(class("ex:GeorgeStephenson"), "reliable");

    // without the context the periods cannot be resolved
    let out = uti(&["query", &periods, "--reference", "ex:LateModernPeriod", "--preset", "within"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn resolve_terms_and_cycles() {
    let out = uti(&["resolve", &fixture("terms.ttl")]);
    assert!(out.status.success());
    let text = stdout(&out);
    let term1 = text.lines().find(|l| l.starts_with("ex:Term1 ")).unwrap();
    assert!(term1.contains("2458119.5") && term1.contains("2458300.5"), "{term1}");

    let out = uti(&["resolve", &fixture("cycle.ttl")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("cyclic"));
}

#[test]
fn emitted_turtle_resolves_to_the_same_values() {
    let first = uti(&["resolve", &fixture("terms.ttl"), "--format", "lines"]);
    let emitted = uti(&["resolve", &fixture("terms.ttl"), "--emit"]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_uti"))
        .args(["resolve", "-", "--format", "lines"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&emitted.stdout).unwrap();
    let second = child.wait_with_output().unwrap();
    assert!(second.status.success());
    let values = |out: &Output| -> Vec<(String, [f64; 4])> {
        stdout(out)
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
            .map(|v| {
                let jd = ["pb", "rb", "re", "pe"].map(|k| v[k].as_f64().unwrap());
                (v["id"].as_str().unwrap().to_string(), jd)
            })
            .collect()
    };
    let before = values(&first);
    assert_eq!(before.len(), 4);
    assert_eq!(before, values(&second));
}

#[test]
fn svg_coordinates_follow_the_scale() {
    let out = uti(&["render", &fixture("terms.ttl"), "--width", "900"]);
    assert!(out.status.success());
    let svg = stdout(&out);
    let root = svg.lines().next().unwrap();
    let (jd_min, jd_max) = (attr(root, "data-jd-min"), attr(root, "data-jd-max"));
    let (x_min, x_max) = (attr(root, "data-x-min"), attr(root, "data-x-max"));
    let x = |jd: f64| x_min + (jd - jd_min) / (jd_max - jd_min) * (x_max - x_min);
    let mut segments = 0;
    for line in svg.lines().filter(|l| l.contains("data-begin")) {
        let (b, e) = (attr(line, "data-begin"), attr(line, "data-end"));
        if line.starts_with("<line") {
            assert!((attr(line, "x1") - x(b)).abs() <= 0.5, "{line}");
            assert!((attr(line, "x2") - x(e)).abs() <= 0.5, "{line}");
        } else {
            assert!((attr(line, "cx") - x(b)).abs() <= 0.5, "{line}");
        }
        segments += 1;
    }
    assert!(segments >= 4);

    // Term2 has no reliable interval, so it is drawn dotted throughout
    let term2 = svg.split("<g class=\"track\"").find(|g| g.contains("data-id=\"ex:Term2\"")).unwrap();
    assert!(term2.contains("class=\"possible\"") && !term2.contains("class=\"reliable\""));
}

#[test]
fn determinate_interval_is_one_solid_segment() {
    let doc = "@prefix hutime: <http://resource.hutime.org/ontology/> .\n\
               @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n\
               <http://example.org/d> a hutime:UncertainTimeInterval ;\n\
               hutime:hasPossibleJdBeginning \"10.0\"^^xsd:double ;\n\
               hutime:hasReliableJdBeginning \"10.0\"^^xsd:double ;\n\
               hutime:hasReliableJdEnd \"20.0\"^^xsd:double ;\n\
               hutime:hasPossibleJdEnd \"20.0\"^^xsd:double .\n";
    let mut child = Command::new(env!("CARGO_BIN_EXE_uti"))
        .args(["render", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(doc.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let svg = stdout(&out);
    let pieces: Vec<_> = svg.lines().filter(|l| l.contains("data-begin")).collect();
    assert_eq!(pieces.len(), 1);
    assert!(pieces[0].contains("class=\"reliable\""));
}

#[test]
fn ascii_render_to_file() {
    let path = std::env::temp_dir().join(format!("uti-ascii-{}.txt", std::process::id()));
    let out = uti(&[
        "render",
        &fixture("terms.ttl"),
        "--format",
        "ascii",
        "--width",
        "60",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let term1 = text.lines().find(|l| l.starts_with("ex:Term1")).unwrap();
    assert!(term1.contains('=') && term1.contains('.'));
    let term2 = text.lines().find(|l| l.starts_with("ex:Term2")).unwrap();
    assert!(!term2.contains('='));
    assert!(text.contains("2019"));
}
