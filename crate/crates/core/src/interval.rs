//! Determinate and uncertain time intervals on the Julian-day axis.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A position on the time axis, in (possibly fractional) Julian days.
///
/// Whole values fall at noon; midnights are at `.5`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct JulianDay(f64);

impl JulianDay {
    pub fn new(value: f64) -> Result<Self, IntervalError> {
        if value.is_finite() {
            Ok(JulianDay(value))
        } else {
            Err(IntervalError::NonFinite(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

// Finite by construction, so the total order agrees with `<` on f64.
impl Eq for JulianDay {}

impl PartialOrd for JulianDay {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for JulianDay {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl From<JulianDay> for f64 {
    fn from(jd: JulianDay) -> f64 {
        jd.0
    }
}

impl TryFrom<f64> for JulianDay {
    type Error = IntervalError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        JulianDay::new(value)
    }
}

impl fmt::Display for JulianDay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Which ordering constraint an uncertain interval violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundsViolation {
    /// `pb > rb`: the beginning range is empty.
    BeginRange,
    /// `re > pe`: the end range is empty.
    EndRange,
    /// `pb > pe`: no determinate member at all.
    Empty,
    /// `rb > pe` or `pb > re`: some boundary values pair with no legal partner.
    NonCanonical,
}

impl fmt::Display for BoundsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundsViolation::BeginRange => "possible beginning is after reliable beginning",
            BoundsViolation::EndRange => "reliable end is after possible end",
            BoundsViolation::Empty => "possible beginning is after possible end",
            BoundsViolation::NonCanonical => {
                "beginning and end ranges are inverted (need rb <= pe and pb <= re)"
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("time coordinate {0} is not finite")]
    NonFinite(f64),
    #[error("invalid bounds ({pb}, {rb}, {re}, {pe}): {violation}")]
    InvalidBounds {
        violation: BoundsViolation,
        pb: f64,
        rb: f64,
        re: f64,
        pe: f64,
    },
    #[error("determinate interval begins at {begin} after it ends at {end}")]
    Reversed { begin: f64, end: f64 },
}

/// A closed interval `[begin, end]` with fixed boundaries. Zero duration is
/// allowed and stands for an instant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeterminateInterval {
    begin: JulianDay,
    end: JulianDay,
}

impl DeterminateInterval {
    pub fn new(begin: JulianDay, end: JulianDay) -> Result<Self, IntervalError> {
        if begin > end {
            return Err(IntervalError::Reversed {
                begin: begin.value(),
                end: end.value(),
            });
        }
        Ok(DeterminateInterval { begin, end })
    }

    pub fn from_days(begin: f64, end: f64) -> Result<Self, IntervalError> {
        Self::new(JulianDay::new(begin)?, JulianDay::new(end)?)
    }

    #[inline]
    pub fn begin(&self) -> JulianDay {
        self.begin
    }

    #[inline]
    pub fn end(&self) -> JulianDay {
        self.end
    }

    pub fn duration(&self) -> f64 {
        self.end.value() - self.begin.value()
    }

    pub fn is_instant(&self) -> bool {
        self.begin == self.end
    }

    pub fn contains(&self, jd: JulianDay) -> bool {
        self.begin <= jd && jd <= self.end
    }

    /// True when `other` lies entirely inside `self`.
    pub fn covers(&self, other: &DeterminateInterval) -> bool {
        self.begin <= other.begin && other.end <= self.end
    }
}

impl fmt::Display for DeterminateInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.begin, self.end)
    }
}

/// Result of intersecting every member of an uncertain interval. `None` when
/// the beginning and end ranges overlap.
pub type MaybeInterval = Option<DeterminateInterval>;

/// The set of determinate intervals whose beginning lies in `[pb, rb]` and
/// whose end lies in `[re, pe]`.
///
/// Construction enforces `pb <= rb`, `re <= pe`, `pb <= pe`, and the canonical
/// form `rb <= pe`, `pb <= re`, so every value of either range pairs with at
/// least one legal partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UncertainInterval {
    pb: JulianDay,
    rb: JulianDay,
    re: JulianDay,
    pe: JulianDay,
}

impl UncertainInterval {
    pub fn new(
        pb: JulianDay,
        rb: JulianDay,
        re: JulianDay,
        pe: JulianDay,
    ) -> Result<Self, IntervalError> {
        let violation = if pb > rb {
            Some(BoundsViolation::BeginRange)
        } else if re > pe {
            Some(BoundsViolation::EndRange)
        } else if pb > pe {
            Some(BoundsViolation::Empty)
        } else if rb > pe || pb > re {
            Some(BoundsViolation::NonCanonical)
        } else {
            None
        };
        match violation {
            Some(violation) => Err(IntervalError::InvalidBounds {
                violation,
                pb: pb.value(),
                rb: rb.value(),
                re: re.value(),
                pe: pe.value(),
            }),
            None => Ok(UncertainInterval { pb, rb, re, pe }),
        }
    }

    pub fn from_days(pb: f64, rb: f64, re: f64, pe: f64) -> Result<Self, IntervalError> {
        Self::new(
            JulianDay::new(pb)?,
            JulianDay::new(rb)?,
            JulianDay::new(re)?,
            JulianDay::new(pe)?,
        )
    }

    /// A proper interval seen as an uncertain one with zero-width ranges.
    pub fn from_determinate(d: DeterminateInterval) -> Self {
        UncertainInterval {
            pb: d.begin,
            rb: d.begin,
            re: d.end,
            pe: d.end,
        }
    }

    #[inline]
    pub fn pb(&self) -> JulianDay {
        self.pb
    }

    #[inline]
    pub fn rb(&self) -> JulianDay {
        self.rb
    }

    #[inline]
    pub fn re(&self) -> JulianDay {
        self.re
    }

    #[inline]
    pub fn pe(&self) -> JulianDay {
        self.pe
    }

    /// The four boundary values as plain days, in `(pb, rb, re, pe)` order.
    pub fn to_days(&self) -> [f64; 4] {
        [self.pb.0, self.rb.0, self.re.0, self.pe.0]
    }

    /// Union of all members: `[pb, pe]`.
    pub fn possible_interval(&self) -> DeterminateInterval {
        DeterminateInterval {
            begin: self.pb,
            end: self.pe,
        }
    }

    /// Intersection of all members: `[rb, re]`, empty when `rb > re`.
    pub fn reliable_interval(&self) -> MaybeInterval {
        (self.rb <= self.re).then_some(DeterminateInterval {
            begin: self.rb,
            end: self.re,
        })
    }

    /// Exactly one member.
    pub fn is_determinate(&self) -> bool {
        self.pb == self.rb && self.re == self.pe
    }

    /// Beginning and end ranges coincide (`pb = re`, `rb = pe`), the shape of
    /// an uncertain instant.
    pub fn is_instant_shaped(&self) -> bool {
        self.pb == self.re && self.rb == self.pe
    }

    /// Some member has positive duration.
    pub fn has_proper_member(&self) -> bool {
        self.pb < self.pe
    }
}

impl fmt::Display for UncertainInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.pb, self.rb, self.re, self.pe)
    }
}

/// How a duration-0 operand should be read: as an interval or as an instant.
/// The boundary values alone cannot tell the two apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OperandKind {
    #[default]
    Interval,
    Instant,
}

impl fmt::Display for OperandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperandKind::Interval => "interval",
            OperandKind::Instant => "instant",
        })
    }
}

impl std::str::FromStr for OperandKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "interval" => Ok(OperandKind::Interval),
            "instant" => Ok(OperandKind::Instant),
            other => Err(format!("unknown operand kind `{other}` (expected interval or instant)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ui(pb: f64, rb: f64, re: f64, pe: f64) -> UncertainInterval {
        UncertainInterval::from_days(pb, rb, re, pe).unwrap()
    }

    fn di(b: f64, e: f64) -> DeterminateInterval {
        DeterminateInterval::from_days(b, e).unwrap()
    }

    #[test]
    fn construction() {
        assert!(UncertainInterval::from_days(0.0, 2.0, 5.0, 8.0).is_ok());
        assert!(UncertainInterval::from_days(3.0, 3.0, 3.0, 3.0).is_ok());
        let err = UncertainInterval::from_days(0.0, 9.0, 5.0, 8.0).unwrap_err();
        assert!(matches!(
            err,
            IntervalError::InvalidBounds { violation: BoundsViolation::NonCanonical, .. }
        ));
        let err = UncertainInterval::from_days(3.0, 2.0, 5.0, 8.0).unwrap_err();
        assert!(matches!(
            err,
            IntervalError::InvalidBounds { violation: BoundsViolation::BeginRange, .. }
        ));
        let err = UncertainInterval::from_days(0.0, 2.0, 9.0, 8.0).unwrap_err();
        assert!(matches!(
            err,
            IntervalError::InvalidBounds { violation: BoundsViolation::EndRange, .. }
        ));
        // pb > re with everything else in order
        let err = UncertainInterval::from_days(4.0, 5.0, 3.0, 8.0).unwrap_err();
        assert!(matches!(
            err,
            IntervalError::InvalidBounds { violation: BoundsViolation::NonCanonical, .. }
        ));
        assert!(matches!(
            UncertainInterval::from_days(f64::NAN, 1.0, 2.0, 3.0),
            Err(IntervalError::NonFinite(_))
        ));
        assert!(DeterminateInterval::from_days(2.0, 1.0).is_err());
        assert!(JulianDay::new(f64::INFINITY).is_err());
    }

    #[test]
    fn jd_literal_term() {
        let w = ui(2458119.5, 2458178.5, 2458239.5, 2458300.5);
        assert_eq!(w.possible_interval(), di(2458119.5, 2458300.5));
        assert_eq!(w.reliable_interval(), Some(di(2458178.5, 2458239.5)));
    }

    #[test]
    fn possible_and_reliable() {
        assert_eq!(ui(0.0, 2.0, 5.0, 8.0).possible_interval(), di(0.0, 8.0));
        assert_eq!(ui(3.0, 3.0, 3.0, 3.0).possible_interval(), di(3.0, 3.0));
        assert_eq!(ui(0.0, 2.0, 5.0, 8.0).reliable_interval(), Some(di(2.0, 5.0)));
        assert_eq!(ui(0.0, 5.0, 2.0, 8.0).reliable_interval(), None);
        assert_eq!(ui(3.0, 3.0, 3.0, 3.0).reliable_interval(), Some(di(3.0, 3.0)));
    }

    #[test]
    fn shape_predicates() {
        assert!(ui(1.0, 1.0, 4.0, 4.0).is_determinate());
        assert!(!ui(0.0, 2.0, 5.0, 8.0).is_determinate());
        assert!(ui(3.0, 3.0, 3.0, 3.0).is_determinate());
        assert!(!ui(2.0, 2.0, 5.0, 5.0).is_instant_shaped());
        assert!(ui(2.0, 5.0, 2.0, 5.0).is_instant_shaped());
        assert!(ui(3.0, 3.0, 3.0, 3.0).is_instant_shaped());
    }

    #[test]
    fn from_determinate_zero_width() {
        assert_eq!(UncertainInterval::from_determinate(di(1.0, 4.0)), ui(1.0, 1.0, 4.0, 4.0));
        assert_eq!(UncertainInterval::from_determinate(di(3.0, 3.0)), ui(3.0, 3.0, 3.0, 3.0));
    }

    fn arb_uncertain() -> impl Strategy<Value = UncertainInterval> {
        (prop::array::uniform4(-50.0f64..50.0), any::<bool>()).prop_map(|(mut v, overlap)| {
            v.sort_by(f64::total_cmp);
            let [a, b, c, d] = v;
            // sorted values give either separated or overlapping ranges
            if overlap {
                UncertainInterval::from_days(a, c, b, d).unwrap()
            } else {
                UncertainInterval::from_days(a, b, c, d).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn members_between_reliable_and_possible(
            w in arb_uncertain(),
            s in 0.0f64..=1.0,
            t in 0.0f64..=1.0,
        ) {
            let [pb, rb, re, pe] = w.to_days();
            let begin = pb + (rb - pb) * s;
            let end = re + (pe - re) * t;
            prop_assume!(begin <= end);
            let member = DeterminateInterval::from_days(begin, end).unwrap();
            prop_assert!(w.possible_interval().covers(&member));
            if let Some(reliable) = w.reliable_interval() {
                prop_assert!(member.covers(&reliable));
                prop_assert!(w.possible_interval().covers(&reliable));
            }
        }

        #[test]
        fn determinate_collapses(w in arb_uncertain()) {
            if w.is_determinate() {
                prop_assert_eq!(Some(w.possible_interval()), w.reliable_interval());
            }
        }

        #[test]
        fn determinate_round_trip(b in -1e6f64..1e6, len in 0.0f64..1e4) {
            let d = di(b, b + len);
            let w = UncertainInterval::from_determinate(d);
            prop_assert_eq!(w.possible_interval(), d);
            prop_assert_eq!(w.reliable_interval(), Some(d));
            prop_assert!(w.is_determinate());
        }
    }
}
