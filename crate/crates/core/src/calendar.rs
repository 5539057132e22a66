//! Proleptic Gregorian and Julian calendars on the Julian-day axis.
//!
//! Years use astronomical numbering (1 BCE is year 0, 4713 BCE is −4712).
//! Julian day 0.0 is noon of January 1, −4712 in the Julian calendar, so
//! midnights fall on half-integer values.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::interval::{DeterminateInterval, JulianDay};

/// Base IRI of the calendar period resources.
pub const CALENDAR_BASE: &str = "http://datetime.hutime.org/calendar/";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CalendarSystem {
    Gregorian,
    Julian,
}

impl CalendarSystem {
    pub fn is_leap_year(self, year: i64) -> bool {
        match self {
            CalendarSystem::Gregorian => {
                year.rem_euclid(4) == 0 && (year.rem_euclid(100) != 0 || year.rem_euclid(400) == 0)
            }
            CalendarSystem::Julian => year.rem_euclid(4) == 0,
        }
    }

    pub fn days_in_month(self, year: i64, month: u8) -> u8 {
        match month {
            1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
            4 | 6 | 9 | 11 => 30,
            2 if self.is_leap_year(year) => 29,
            2 => 28,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CalendarSystem::Gregorian => "gregorian",
            CalendarSystem::Julian => "julian",
        }
    }
}

impl fmt::Display for CalendarSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CalendarSystem {
    type Err = CalendarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gregorian" | "g" => Ok(CalendarSystem::Gregorian),
            "julian" | "j" => Ok(CalendarSystem::Julian),
            _ => Err(CalendarError::UnknownCalendar(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{reason} at position {position} in `{text}`")]
pub struct ParseError {
    pub text: String,
    pub position: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalendarError {
    #[error("invalid {system} date {year}-{month:02}-{day:02}")]
    InvalidDate {
        system: CalendarSystem,
        year: i64,
        month: u8,
        day: u8,
    },
    #[error("decade must start on a year divisible by 10, got {0}")]
    InvalidDecade(i64),
    #[error("fraction of day {0} is outside [0, 1]")]
    InvalidFraction(f64),
    #[error("Julian day {0} is not finite")]
    NonFinite(f64),
    #[error("unknown calendar `{0}`")]
    UnknownCalendar(String),
    #[error("`{0}` is not a calendar period IRI")]
    NotCalendarIri(String),
    #[error("calendar IRI `{iri}` names granularity `{segment}` but its anchor is a {actual}")]
    GranularityMismatch {
        iri: String,
        segment: String,
        actual: Granularity,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A day in a given calendar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CalendarDate {
    year: i64,
    month: u8,
    day: u8,
    system: CalendarSystem,
}

impl CalendarDate {
    pub fn new(system: CalendarSystem, year: i64, month: u8, day: u8) -> Result<Self, CalendarError> {
        if !(1..=12).contains(&month) || day == 0 || day > system.days_in_month(year, month) {
            return Err(CalendarError::InvalidDate {
                system,
                year,
                month,
                day,
            });
        }
        Ok(CalendarDate {
            year,
            month,
            day,
            system,
        })
    }

    pub fn gregorian(year: i64, month: u8, day: u8) -> Result<Self, CalendarError> {
        Self::new(CalendarSystem::Gregorian, year, month, day)
    }

    pub fn julian(year: i64, month: u8, day: u8) -> Result<Self, CalendarError> {
        Self::new(CalendarSystem::Julian, year, month, day)
    }

    pub fn year(&self) -> i64 {
        self.year
    }

    pub fn month(&self) -> u8 {
        self.month
    }

    pub fn day(&self) -> u8 {
        self.day
    }

    pub fn system(&self) -> CalendarSystem {
        self.system
    }

    /// Integer day number; the day's noon is at this Julian day.
    pub fn day_number(&self) -> i64 {
        day_number(self.system, self.year, self.month, self.day)
    }

    pub fn from_day_number(system: CalendarSystem, jdn: i64) -> Self {
        let (year, month, day) = date_from_day_number(system, jdn);
        CalendarDate {
            year,
            month,
            day,
            system,
        }
    }

    /// Julian day of the midnight that starts this date.
    pub fn midnight(&self) -> JulianDay {
        JulianDay::new(self.day_number() as f64 - 0.5).expect("day numbers are finite")
    }

    /// The same day in another calendar.
    pub fn convert(&self, system: CalendarSystem) -> Self {
        Self::from_day_number(system, self.day_number())
    }

    /// Era label such as `4713 BCE` or `2018 CE`.
    pub fn era_label(&self) -> String {
        if self.year <= 0 {
            format!("{} BCE", 1 - self.year)
        } else {
            format!("{} CE", self.year)
        }
    }
}

impl fmt::Display for CalendarDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.year < 0 {
            write!(f, "-{:04}-{:02}-{:02}", -self.year, self.month, self.day)
        } else {
            write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
        }
    }
}

// Day numbers count from the March-based year so the leap day is last.
fn day_number(system: CalendarSystem, year: i64, month: u8, day: u8) -> i64 {
    let m = i64::from(month);
    let y = if m <= 2 { year - 1 } else { year };
    let doy = (153 * (if m > 2 { m - 3 } else { m + 9 }) + 2) / 5 + i64::from(day) - 1;
    match system {
        CalendarSystem::Gregorian => {
            let era = y.div_euclid(400);
            let yoe = y - era * 400;
            let doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
            // 1721120 is the day number of Gregorian 0000-03-01
            era * 146_097 + doe + 1_721_120
        }
        CalendarSystem::Julian => {
            let era = y.div_euclid(4);
            let yoe = y - era * 4;
            let doe = yoe * 365 + doy;
            // 1721118 is the day number of Julian 0000-03-01
            era * 1461 + doe + 1_721_118
        }
    }
}

fn date_from_day_number(system: CalendarSystem, jdn: i64) -> (i64, u8, u8) {
    let (yoe, doy, base_year) = match system {
        CalendarSystem::Gregorian => {
            let z = jdn - 1_721_120;
            let era = z.div_euclid(146_097);
            let doe = z - era * 146_097;
            let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
            let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
            (yoe, doy, era * 400)
        }
        CalendarSystem::Julian => {
            let z = jdn - 1_721_118;
            let era = z.div_euclid(1461);
            let doe = z - era * 1461;
            let yoe = (doe - doe / 1460) / 365;
            let doy = doe - 365 * yoe;
            (yoe, doy, era * 4)
        }
    };
    let mp = (5 * doy + 2) / 153;
    let day = (doy - (153 * mp + 2) / 5 + 1) as u8;
    let month = if mp < 10 { mp + 3 } else { mp - 9 } as u8;
    let year = base_year + yoe + i64::from(month <= 2);
    (year, month, day)
}

/// Julian day of `date` at `fraction_of_day` (0 = midnight, 0.5 = noon).
pub fn to_julian_day(date: &CalendarDate, fraction_of_day: f64) -> Result<JulianDay, CalendarError> {
    if !(0.0..=1.0).contains(&fraction_of_day) {
        return Err(CalendarError::InvalidFraction(fraction_of_day));
    }
    JulianDay::new(date.day_number() as f64 - 0.5 + fraction_of_day)
        .map_err(|_| CalendarError::NonFinite(fraction_of_day))
}

/// The calendar date containing `jd` and the fraction of that day elapsed
/// since midnight.
pub fn from_julian_day(jd: JulianDay, system: CalendarSystem) -> (CalendarDate, f64) {
    let shifted = jd.value() + 0.5;
    let whole = shifted.floor();
    let fraction = shifted - whole;
    (CalendarDate::from_day_number(system, whole as i64), fraction)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    Day,
    Month,
    Year,
    Decade,
}

impl fmt::Display for Granularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Granularity::Day => "day",
            Granularity::Month => "month",
            Granularity::Year => "year",
            Granularity::Decade => "decade",
        })
    }
}

/// A calendar day, month, year or decade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CalendarPeriod {
    granularity: Granularity,
    year: i64,
    month: u8,
    day: u8,
    system: CalendarSystem,
}

impl CalendarPeriod {
    pub fn day(date: CalendarDate) -> Self {
        CalendarPeriod {
            granularity: Granularity::Day,
            year: date.year,
            month: date.month,
            day: date.day,
            system: date.system,
        }
    }

    pub fn month(system: CalendarSystem, year: i64, month: u8) -> Result<Self, CalendarError> {
        CalendarDate::new(system, year, month, 1)?;
        Ok(CalendarPeriod {
            granularity: Granularity::Month,
            year,
            month,
            day: 1,
            system,
        })
    }

    pub fn year(system: CalendarSystem, year: i64) -> Self {
        CalendarPeriod {
            granularity: Granularity::Year,
            year,
            month: 1,
            day: 1,
            system,
        }
    }

    pub fn decade(system: CalendarSystem, first_year: i64) -> Result<Self, CalendarError> {
        if first_year.rem_euclid(10) != 0 {
            return Err(CalendarError::InvalidDecade(first_year));
        }
        Ok(CalendarPeriod {
            granularity: Granularity::Decade,
            year: first_year,
            month: 1,
            day: 1,
            system,
        })
    }

    pub fn granularity(&self) -> Granularity {
        self.granularity
    }

    pub fn system(&self) -> CalendarSystem {
        self.system
    }

    /// First day of the period.
    pub fn first_day(&self) -> CalendarDate {
        CalendarDate {
            year: self.year,
            month: self.month,
            day: self.day,
            system: self.system,
        }
    }

    /// The period immediately after this one, at the same granularity.
    pub fn next(&self) -> CalendarPeriod {
        let mut next = *self;
        match self.granularity {
            Granularity::Day => return CalendarPeriod::day(
                CalendarDate::from_day_number(self.system, self.first_day().day_number() + 1),
            ),
            Granularity::Month => {
                if self.month == 12 {
                    next.year += 1;
                    next.month = 1;
                } else {
                    next.month += 1;
                }
            }
            Granularity::Year => next.year += 1,
            Granularity::Decade => next.year += 10,
        }
        next
    }
}

impl fmt::Display for CalendarPeriod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let year = if self.year < 0 {
            format!("-{:04}", -self.year)
        } else {
            format!("{:04}", self.year)
        };
        match self.granularity {
            Granularity::Day => write!(f, "{}", self.first_day()),
            Granularity::Month => write!(f, "{year}-{:02}", self.month),
            Granularity::Year => f.write_str(&year),
            Granularity::Decade => write!(f, "{year}s"),
        }
    }
}

/// `[midnight starting the period, midnight starting the next period]`.
pub fn period_bounds(period: &CalendarPeriod) -> DeterminateInterval {
    let begin = period.first_day().midnight();
    let end = period.next().first_day().midnight();
    DeterminateInterval::new(begin, end).expect("periods have positive length")
}

/// Parse `YYYY`, `YYYY-MM`, `YYYY-MM-DD` or a decade `YYY0s`, with an
/// optional leading sign on the year.
pub fn parse_iso(text: &str, system: CalendarSystem) -> Result<CalendarPeriod, CalendarError> {
    let err = |position: usize, reason: &str| {
        CalendarError::Parse(ParseError {
            text: text.to_string(),
            position,
            reason: reason.to_string(),
        })
    };
    let bytes = text.as_bytes();
    let mut pos = 0;
    let negative = match bytes.first() {
        Some(b'-') => {
            pos += 1;
            true
        }
        Some(b'+') => {
            pos += 1;
            false
        }
        _ => false,
    };
    let digits_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == digits_start {
        return Err(err(pos, "expected year digits"));
    }
    if pos - digits_start > 9 {
        return Err(err(digits_start, "year out of range"));
    }
    let magnitude: i64 = text[digits_start..pos].parse().expect("ascii digits");
    let year = if negative { -magnitude } else { magnitude };

    let two_digits = |pos: usize, what: &str| -> Result<u8, CalendarError> {
        match bytes.get(pos..pos + 2) {
            Some(d) if d.iter().all(u8::is_ascii_digit) => Ok((d[0] - b'0') * 10 + (d[1] - b'0')),
            _ => Err(err(pos, &format!("expected two-digit {what}"))),
        }
    };

    match bytes.get(pos) {
        None => Ok(CalendarPeriod::year(system, year)),
        Some(b's') => {
            if pos + 1 != bytes.len() {
                return Err(err(pos + 1, "unexpected characters after decade"));
            }
            CalendarPeriod::decade(system, year).map_err(|_| err(pos - 1, "decade year must end in 0"))
        }
        Some(b'-') => {
            let month = two_digits(pos + 1, "month")?;
            if !(1..=12).contains(&month) {
                return Err(err(pos + 1, "month out of range"));
            }
            pos += 3;
            match bytes.get(pos) {
                None => CalendarPeriod::month(system, year, month),
                Some(b'-') => {
                    let day = two_digits(pos + 1, "day")?;
                    if pos + 3 != bytes.len() {
                        return Err(err(pos + 3, "unexpected characters after day"));
                    }
                    let date = CalendarDate::new(system, year, month, day)
                        .map_err(|_| err(pos + 1, "day out of range for month"))?;
                    Ok(CalendarPeriod::day(date))
                }
                Some(_) => Err(err(pos, "expected `-` or end of input")),
            }
        }
        Some(_) => Err(err(pos, "expected `-`, `s` or end of input")),
    }
}

/// Maps calendar ids used in calendar period IRIs (such as `101.1`) to
/// calendar systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CalendarRegistry {
    systems: BTreeMap<String, CalendarSystem>,
}

impl Default for CalendarRegistry {
    /// `101.1` and `101.2` both map to the proleptic Gregorian calendar.
    fn default() -> Self {
        CalendarRegistry::empty()
            .with("101.1", CalendarSystem::Gregorian)
            .with("101.2", CalendarSystem::Gregorian)
    }
}

impl CalendarRegistry {
    pub fn empty() -> Self {
        CalendarRegistry {
            systems: BTreeMap::new(),
        }
    }

    pub fn with(mut self, id: impl Into<String>, system: CalendarSystem) -> Self {
        self.systems.insert(id.into(), system);
        self
    }

    pub fn system(&self, id: &str) -> Option<CalendarSystem> {
        self.systems.get(id).copied()
    }

    pub fn is_calendar_iri(iri: &str) -> bool {
        iri.starts_with(CALENDAR_BASE)
    }

    /// Parse `<base><calendar-id>/<granularity>/<anchor>`.
    ///
    /// The granularity segment `date` accepts any anchor form; `day`,
    /// `month`, `year` and `decade` must agree with the anchor.
    pub fn parse_iri(&self, iri: &str) -> Result<CalendarPeriod, CalendarError> {
        let not_calendar = || CalendarError::NotCalendarIri(iri.to_string());
        let path = iri.strip_prefix(CALENDAR_BASE).ok_or_else(not_calendar)?;
        let mut parts = path.splitn(3, '/');
        let (id, segment, anchor) = match (parts.next(), parts.next(), parts.next()) {
            (Some(id), Some(seg), Some(anchor)) if !anchor.is_empty() => (id, seg, anchor),
            _ => return Err(not_calendar()),
        };
        let system = self
            .system(id)
            .ok_or_else(|| CalendarError::UnknownCalendar(id.to_string()))?;
        let period = parse_iso(anchor, system)?;
        let expected = match segment {
            "date" => None,
            "day" => Some(Granularity::Day),
            "month" => Some(Granularity::Month),
            "year" => Some(Granularity::Year),
            "decade" => Some(Granularity::Decade),
            _ => return Err(not_calendar()),
        };
        if let Some(g) = expected {
            if g != period.granularity() {
                return Err(CalendarError::GranularityMismatch {
                    iri: iri.to_string(),
                    segment: segment.to_string(),
                    actual: period.granularity(),
                });
            }
        }
        Ok(period)
    }
}
