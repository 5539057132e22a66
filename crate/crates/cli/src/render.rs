//! Static timelines: one track per interval, a solid segment for the
//! reliable interval and dotted segments for the rest of the possible
//! interval.

use std::fmt::Write;

use uti_core::calendar::{from_julian_day, CalendarDate};
use uti_core::{CalendarSystem, JulianDay, UncertainInterval};

const LABEL_WIDTH: f64 = 180.0;
const RIGHT_MARGIN: f64 = 20.0;
const TOP: f64 = 20.0;
const TRACK: f64 = 24.0;
const AXIS_HEIGHT: f64 = 40.0;
const MAX_TICKS: f64 = 8.0;

/// Affine map from Julian days to canvas coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scale {
    pub jd_min: f64,
    pub jd_max: f64,
    pub x_min: f64,
    pub x_max: f64,
}

impl Scale {
    /// The span of all possible intervals plus 2% on each side.
    pub fn fit(tracks: &[(&str, UncertainInterval)], x_min: f64, x_max: f64) -> Scale {
        let lo = tracks
            .iter()
            .map(|(_, w)| w.pb().value())
            .fold(f64::INFINITY, f64::min);
        let hi = tracks
            .iter()
            .map(|(_, w)| w.pe().value())
            .fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if tracks.is_empty() { (0.0, 1.0) } else { (lo, hi) };
        let pad = if hi > lo { (hi - lo) * 0.02 } else { 1.0 };
        Scale {
            jd_min: lo - pad,
            jd_max: hi + pad,
            x_min,
            x_max,
        }
    }

    pub fn x(&self, jd: f64) -> f64 {
        self.x_min + (jd - self.jd_min) / (self.jd_max - self.jd_min) * (self.x_max - self.x_min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unit {
    Day,
    Month,
    Year,
}

/// Calendar-aligned tick positions and labels within the scale.
fn ticks(scale: &Scale) -> Vec<(f64, String)> {
    let span = scale.jd_max - scale.jd_min;
    let mut choices: Vec<(Unit, i64, f64)> = Vec::new();
    for step in [1, 2, 5, 10] {
        choices.push((Unit::Day, step, step as f64));
    }
    for step in [1, 2, 3, 6] {
        choices.push((Unit::Month, step, step as f64 * 30.44));
    }
    let mut magnitude = 1;
    loop {
        for m in [1, 2, 5] {
            choices.push((Unit::Year, m * magnitude, (m * magnitude) as f64 * 365.25));
        }
        if magnitude > 1_000_000 {
            break;
        }
        magnitude *= 10;
    }
    let Some(&(unit, step, _)) = choices.iter().find(|(_, _, len)| span / len <= MAX_TICKS) else {
        return Vec::new();
    };
    let g = CalendarSystem::Gregorian;
    let start = |jd: f64| from_julian_day(JulianDay::new(jd).expect("finite"), g).0;
    let first = start(scale.jd_min);
    let mut out = Vec::new();
    let mut push = |date: CalendarDate, label: String| {
        let jd = date.midnight().value();
        if jd >= scale.jd_min && jd <= scale.jd_max {
            out.push((jd, label));
        }
        jd <= scale.jd_max
    };
    match unit {
        Unit::Day => {
            let mut n = first.day_number().div_euclid(step) * step;
            loop {
                let d = CalendarDate::from_day_number(g, n);
                if !push(d, d.to_string()) {
                    break;
                }
                n += step;
            }
        }
        Unit::Month => {
            let mut index = (first.year() * 12 + i64::from(first.month()) - 1).div_euclid(step) * step;
            loop {
                let (y, m) = (index.div_euclid(12), index.rem_euclid(12) as u8 + 1);
                let d = CalendarDate::gregorian(y, m, 1).expect("valid month");
                let label = d.to_string()[..d.to_string().len() - 3].to_string();
                if !push(d, label) {
                    break;
                }
                index += step;
            }
        }
        Unit::Year => {
            let mut y = first.year().div_euclid(step) * step;
            loop {
                let d = CalendarDate::gregorian(y, 1, 1).expect("valid year");
                if !push(d, y.to_string()) {
                    break;
                }
                y += step;
            }
        }
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Pieces of a track: `(begin, end, reliable)`.
fn segments(w: &UncertainInterval) -> Vec<(f64, f64, bool)> {
    let [pb, rb, re, pe] = w.to_days();
    match w.reliable_interval() {
        None => vec![(pb, pe, false)],
        Some(_) => {
            let mut out = Vec::new();
            if pb < rb {
                out.push((pb, rb, false));
            }
            out.push((rb, re, true));
            if re < pe {
                out.push((re, pe, false));
            }
            out
        }
    }
}

pub fn svg(tracks: &[(&str, UncertainInterval)], width: f64) -> String {
    let width = width.max(LABEL_WIDTH + RIGHT_MARGIN + 100.0);
    let scale = Scale::fit(tracks, LABEL_WIDTH, width - RIGHT_MARGIN);
    let axis_y = TOP + TRACK * tracks.len() as f64 + 8.0;
    let height = axis_y + AXIS_HEIGHT;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" data-jd-min=\"{}\" data-jd-max=\"{}\" \
         data-x-min=\"{}\" data-x-max=\"{}\">",
        scale.jd_min, scale.jd_max, scale.x_min, scale.x_max
    );
    let _ = writeln!(
        s,
        "<style>text {{ font: 12px sans-serif; }} .reliable {{ stroke: #222; stroke-width: 4; }} \
         .possible {{ stroke: #222; stroke-width: 2; stroke-dasharray: 2 3; }}</style>"
    );
    for (i, (id, w)) in tracks.iter().enumerate() {
        let y = TOP + TRACK * i as f64 + TRACK / 2.0;
        let _ = writeln!(
            s,
            "<g class=\"track\" data-id=\"{}\">\n<text x=\"8\" y=\"{:.2}\">{}</text>",
            escape(id),
            y + 4.0,
            escape(id)
        );
        for (b, e, reliable) in segments(w) {
            let class = if reliable { "reliable" } else { "possible" };
            let (x1, x2) = (scale.x(b), scale.x(e));
            if x1 == x2 {
                let _ = writeln!(
                    s,
                    "<circle class=\"{class}\" cx=\"{x1:.2}\" cy=\"{y:.2}\" r=\"2.5\" data-begin=\"{b}\" data-end=\"{e}\"/>"
                );
            } else {
                let _ = writeln!(
                    s,
                    "<line class=\"{class}\" x1=\"{x1:.2}\" y1=\"{y:.2}\" x2=\"{x2:.2}\" y2=\"{y:.2}\" data-begin=\"{b}\" data-end=\"{e}\"/>"
                );
            }
        }
        s.push_str("</g>\n");
    }
    let _ = writeln!(
        s,
        "<line class=\"axis\" x1=\"{:.2}\" y1=\"{axis_y:.2}\" x2=\"{:.2}\" y2=\"{axis_y:.2}\" stroke=\"#888\"/>",
        scale.x_min, scale.x_max
    );
    for (jd, label) in ticks(&scale) {
        let x = scale.x(jd);
        let _ = writeln!(
            s,
            "<line class=\"tick\" x1=\"{x:.2}\" y1=\"{axis_y:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#888\"/>\n\
             <text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
            axis_y + 5.0,
            axis_y + 20.0,
            escape(&label)
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn ascii(tracks: &[(&str, UncertainInterval)], width: usize) -> String {
    let width = width.max(10);
    let label_width = tracks.iter().map(|(id, _)| id.chars().count()).max().unwrap_or(0).min(32);
    let scale = Scale::fit(tracks, 0.0, (width - 1) as f64);
    let col = |jd: f64| scale.x(jd).round().clamp(0.0, (width - 1) as f64) as usize;
    let mut s = String::new();
    for (id, w) in tracks {
        let mut row = vec![' '; width];
        for (b, e, reliable) in segments(w) {
            let mark = if reliable { '=' } else { '.' };
            for c in &mut row[col(b)..=col(e)] {
                if *c != '=' {
                    *c = mark;
                }
            }
        }
        let label: String = id.chars().take(label_width).collect();
        let _ = writeln!(s, "{label:<label_width$} |{}", row.into_iter().collect::<String>().trim_end());
    }
    let ticks = ticks(&scale);
    let mut axis = vec!['-'; width];
    let mut labels = vec![' '; width + 16];
    let mut free_from = 0;
    for (jd, label) in &ticks {
        let c = col(*jd);
        axis[c] = '+';
        if c >= free_from && c + label.len() <= labels.len() {
            for (k, ch) in label.chars().enumerate() {
                labels[c + k] = ch;
            }
            free_from = c + label.len() + 1;
        }
    }
    let pad = " ".repeat(label_width);
    let _ = writeln!(s, "{pad} +{}", axis.into_iter().collect::<String>());
    let _ = writeln!(s, "{pad}  {}", labels.into_iter().collect::<String>().trim_end());
    s
}
