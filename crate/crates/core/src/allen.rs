//! Allen's thirteen interval relations and their three-state classification
//! over uncertain intervals.
//!
//! For a pair of uncertain intervals `a`, `b` a relation is *reliable* when
//! every pair of members `(â, b̂)` satisfies it, *possible* when at least one
//! pair does (reliable implies possible), and *impossible* otherwise. The
//! closed-form conditions below decide both quantifiers from the eight
//! boundary values alone.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::interval::{DeterminateInterval, OperandKind, UncertainInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AllenRelation {
    Before,
    After,
    During,
    Contains,
    Overlaps,
    OverlappedBy,
    Meets,
    MetBy,
    Starts,
    StartedBy,
    Finishes,
    FinishedBy,
    Equals,
}

impl AllenRelation {
    pub const ALL: [AllenRelation; 13] = [
        AllenRelation::Before,
        AllenRelation::After,
        AllenRelation::During,
        AllenRelation::Contains,
        AllenRelation::Overlaps,
        AllenRelation::OverlappedBy,
        AllenRelation::Meets,
        AllenRelation::MetBy,
        AllenRelation::Starts,
        AllenRelation::StartedBy,
        AllenRelation::Finishes,
        AllenRelation::FinishedBy,
        AllenRelation::Equals,
    ];

    /// The relation seen from the other operand: `a before b` iff `b after a`.
    pub fn inverse(self) -> AllenRelation {
        use AllenRelation::*;
        match self {
            Before => After,
            After => Before,
            During => Contains,
            Contains => During,
            Overlaps => OverlappedBy,
            OverlappedBy => Overlaps,
            Meets => MetBy,
            MetBy => Meets,
            Starts => StartedBy,
            StartedBy => Starts,
            Finishes => FinishedBy,
            FinishedBy => Finishes,
            Equals => Equals,
        }
    }

    pub fn name(self) -> &'static str {
        use AllenRelation::*;
        match self {
            Before => "before",
            After => "after",
            During => "during",
            Contains => "contains",
            Overlaps => "overlaps",
            OverlappedBy => "overlapped-by",
            Meets => "meets",
            MetBy => "met-by",
            Starts => "starts",
            StartedBy => "started-by",
            Finishes => "finishes",
            FinishedBy => "finished-by",
            Equals => "equals",
        }
    }

    #[inline]
    fn bit(self) -> u16 {
        1 << self as u16
    }
}

impl fmt::Display for AllenRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for AllenRelation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown Allen relation `{0}`")]
pub struct UnknownRelation(pub String);

impl FromStr for AllenRelation {
    type Err = UnknownRelation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized = s.trim().to_ascii_lowercase().replace('_', "-");
        AllenRelation::ALL
            .into_iter()
            .find(|r| r.name() == normalized || r.name().replace('-', "") == normalized)
            .ok_or_else(|| UnknownRelation(s.to_string()))
    }
}

/// A set of Allen relations, stored as a 13-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RelationSet(u16);

impl RelationSet {
    const MASK: u16 = (1 << 13) - 1;

    pub const fn empty() -> Self {
        RelationSet(0)
    }

    pub const fn all() -> Self {
        RelationSet(Self::MASK)
    }

    pub fn insert(&mut self, rel: AllenRelation) {
        self.0 |= rel.bit();
    }

    pub fn with(mut self, rel: AllenRelation) -> Self {
        self.insert(rel);
        self
    }

    pub fn contains(&self, rel: AllenRelation) -> bool {
        self.0 & rel.bit() != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn intersection(self, other: RelationSet) -> RelationSet {
        RelationSet(self.0 & other.0)
    }

    pub fn union(self, other: RelationSet) -> RelationSet {
        RelationSet(self.0 | other.0)
    }

    pub fn is_subset(&self, other: &RelationSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Every relation replaced by its inverse.
    pub fn inverse(self) -> RelationSet {
        self.iter().map(AllenRelation::inverse).collect()
    }

    /// The single member, if there is exactly one.
    pub fn only(&self) -> Option<AllenRelation> {
        if self.len() == 1 {
            self.iter().next()
        } else {
            None
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = AllenRelation> + '_ {
        AllenRelation::ALL.into_iter().filter(|r| self.contains(*r))
    }

    pub fn bits(&self) -> u16 {
        self.0
    }
}

impl FromIterator<AllenRelation> for RelationSet {
    fn from_iter<I: IntoIterator<Item = AllenRelation>>(iter: I) -> Self {
        let mut set = RelationSet::empty();
        for rel in iter {
            set.insert(rel);
        }
        set
    }
}

impl<const N: usize> From<[AllenRelation; N]> for RelationSet {
    fn from(rels: [AllenRelation; N]) -> Self {
        rels.into_iter().collect()
    }
}

impl fmt::Debug for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|r| r.name())).finish()
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, rel) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(rel.name())?;
        }
        f.write_str("}")
    }
}

impl Serialize for RelationSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|r| r.name()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationState {
    Reliable,
    Possible,
    Impossible,
}

impl RelationState {
    /// True for both `Reliable` and `Possible`; reliable relations are
    /// possible too.
    pub fn is_possible(self) -> bool {
        self != RelationState::Impossible
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationState::Reliable => "reliable",
            RelationState::Possible => "possible",
            RelationState::Impossible => "impossible",
        }
    }

    fn from_flags(reliable: bool, possible: bool) -> Self {
        if reliable {
            RelationState::Reliable
        } else if possible {
            RelationState::Possible
        } else {
            RelationState::Impossible
        }
    }
}

impl fmt::Display for RelationState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The state of each of the thirteen relations for one ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationProfile {
    states: [RelationState; 13],
}

impl RelationProfile {
    pub fn from_fn(mut f: impl FnMut(AllenRelation) -> RelationState) -> Self {
        let mut states = [RelationState::Impossible; 13];
        for rel in AllenRelation::ALL {
            states[rel as usize] = f(rel);
        }
        RelationProfile { states }
    }

    /// Build a profile from the sets of possible and reliable relations.
    pub fn from_sets(possible: RelationSet, reliable: RelationSet) -> Self {
        Self::from_fn(|rel| {
            RelationState::from_flags(reliable.contains(rel), possible.contains(rel))
        })
    }

    pub fn state(&self, rel: AllenRelation) -> RelationState {
        self.states[rel as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (AllenRelation, RelationState)> + '_ {
        AllenRelation::ALL.into_iter().map(|r| (r, self.state(r)))
    }

    /// Relations that are not impossible.
    pub fn possible_set(&self) -> RelationSet {
        self.iter().filter(|(_, s)| s.is_possible()).map(|(r, _)| r).collect()
    }

    pub fn reliable_set(&self) -> RelationSet {
        self.iter()
            .filter(|(_, s)| *s == RelationState::Reliable)
            .map(|(r, _)| r)
            .collect()
    }

    pub fn reliable_relation(&self) -> Option<AllenRelation> {
        self.reliable_set().only()
    }

    /// The same pair seen with the operands swapped.
    pub fn inverse(&self) -> RelationProfile {
        Self::from_fn(|rel| self.state(rel.inverse()))
    }
}

impl Serialize for RelationProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(13))?;
        for (rel, state) in self.iter() {
            map.serialize_entry(rel.name(), state.name())?;
        }
        map.end()
    }
}

/// Which side of a relation an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    First,
    Second,
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operand::First => "first",
            Operand::Second => "second",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindProblem {
    /// Instant kind on an interval whose beginning and end ranges differ.
    NotInstantShaped,
    /// Interval kind opposite an instant, but every member has duration 0.
    NoProperMember,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AllenError {
    #[error("{operand} operand {interval} cannot be used as {kind}: {}", match problem {
        KindProblem::NotInstantShaped => "its beginning and end ranges differ",
        KindProblem::NoProperMember => "it has no member with positive duration",
    })]
    KindMismatch {
        operand: Operand,
        kind: OperandKind,
        problem: KindProblem,
        interval: UncertainInterval,
    },
}

// ---------------------------------------------------------------------------
// Determinate intervals

/// Whether `rel` holds between two determinate intervals.
///
/// Proper intervals follow Allen's endpoint orderings. Duration-0 operands
/// are read as instants: meets, met-by, overlaps and overlapped-by need both
/// operands proper, so an instant at the beginning of an interval starts it
/// and one at the end finishes it. With that reading exactly one relation
/// holds for every pair.
pub fn holds(rel: AllenRelation, a: &DeterminateInterval, b: &DeterminateInterval) -> bool {
    let (ab, ae) = (a.begin().value(), a.end().value());
    let (bb, be) = (b.begin().value(), b.end().value());
    holds_raw(rel, ab, ae, bb, be)
}

#[inline]
pub(crate) fn holds_raw<T: PartialOrd>(rel: AllenRelation, ab: T, ae: T, bb: T, be: T) -> bool {
    use AllenRelation::*;
    match rel {
        Before => ae < bb,
        After => ab > be,
        During => ab > bb && ae < be,
        Contains => ab < bb && ae > be,
        Overlaps => ab < bb && bb < ae && ae < be,
        OverlappedBy => bb < ab && ab < be && be < ae,
        Meets => ae == bb && ab < ae && bb < be,
        MetBy => ab == be && ab < ae && bb < be,
        Starts => ab == bb && ae < be,
        StartedBy => ab == bb && ae > be,
        Finishes => ae == be && ab > bb,
        FinishedBy => ae == be && ab < bb,
        Equals => ab == bb && ae == be,
    }
}

/// The unique relation between two determinate intervals.
pub fn relation_between(a: &DeterminateInterval, b: &DeterminateInterval) -> AllenRelation {
    AllenRelation::ALL
        .into_iter()
        .find(|r| holds(*r, a, b))
        .expect("the thirteen relations partition all pairs")
}

// ---------------------------------------------------------------------------
// Uncertain intervals, interval kind

#[derive(Clone, Copy)]
struct Bounds {
    pb: f64,
    rb: f64,
    re: f64,
    pe: f64,
}

impl From<&UncertainInterval> for Bounds {
    fn from(w: &UncertainInterval) -> Self {
        let [pb, rb, re, pe] = w.to_days();
        Bounds { pb, rb, re, pe }
    }
}

#[allow(clippy::float_cmp)]
fn reliable_condition(rel: AllenRelation, a: Bounds, b: Bounds) -> bool {
    use AllenRelation::*;
    match rel {
        Before => a.pe < b.pb,
        After => a.pb > b.pe,
        During => a.pb > b.rb && a.pe < b.re,
        Contains => a.rb < b.pb && a.re > b.pe,
        Overlaps => a.rb < b.pb && a.re > b.rb && a.pe < b.re,
        OverlappedBy => a.pb > b.rb && a.rb < b.re && a.re > b.pe,
        Meets => {
            a.re == a.pe && a.pe == b.pb && b.pb == b.rb && a.rb < b.pb && a.pe < b.re
        }
        MetBy => {
            a.pb == a.rb && a.rb == b.re && b.re == b.pe && a.pb > b.rb && a.re > b.pe
        }
        Starts => a.pb == a.rb && a.rb == b.pb && b.pb == b.rb && a.pe < b.re,
        StartedBy => a.pb == a.rb && a.rb == b.pb && b.pb == b.rb && a.re > b.pe,
        Finishes => a.pb > b.rb && a.re == a.pe && a.pe == b.re && b.re == b.pe,
        FinishedBy => a.rb < b.pb && a.re == a.pe && a.pe == b.re && b.re == b.pe,
        Equals => {
            a.pb == a.rb
                && a.rb == b.pb
                && b.pb == b.rb
                && a.re == a.pe
                && a.pe == b.re
                && b.re == b.pe
        }
    }
}

fn possible_condition(rel: AllenRelation, a: Bounds, b: Bounds) -> bool {
    use AllenRelation::*;
    let a_proper = a.pb < a.pe;
    let b_proper = b.pb < b.pe;
    match rel {
        Before => a.re < b.rb,
        After => a.rb > b.re,
        During => a.rb > b.pb && a.re < b.pe && b_proper,
        Contains => a.pb < b.rb && a.pe > b.re && a_proper,
        Overlaps => a.pb < b.rb && a.pe > b.pb && a.re < b.pe && a_proper && b_proper,
        OverlappedBy => a.rb > b.pb && a.pb < b.pe && a.pe > b.re && a_proper && b_proper,
        Meets => {
            a.re <= b.rb
                && a.pe >= b.pb
                && a.pb < b.rb
                && a.re < b.pe
                && a_proper
                && b_proper
        }
        MetBy => {
            a.pb <= b.pe
                && a.rb >= b.re
                && a.rb > b.pb
                && a.pe > b.re
                && a_proper
                && b_proper
        }
        Starts => a.pb <= b.rb && a.rb >= b.pb && a.re < b.pe && b_proper,
        StartedBy => a.pb <= b.rb && a.rb >= b.pb && a.pe > b.re && a_proper,
        Finishes => a.rb > b.pb && a.re <= b.pe && a.pe >= b.re && b_proper,
        FinishedBy => a.pb < b.rb && a.re <= b.pe && a.pe >= b.re && a_proper,
        Equals => a.pb <= b.rb && a.rb >= b.pb && a.re <= b.pe && a.pe >= b.re,
    }
}

/// Some pair of members satisfies `rel`.
pub fn possible(rel: AllenRelation, a: &UncertainInterval, b: &UncertainInterval) -> bool {
    possible_condition(rel, a.into(), b.into())
}

/// Every pair of members satisfies `rel`.
pub fn reliable(rel: AllenRelation, a: &UncertainInterval, b: &UncertainInterval) -> bool {
    reliable_condition(rel, a.into(), b.into())
}

/// No pair of members satisfies `rel`.
pub fn impossible(rel: AllenRelation, a: &UncertainInterval, b: &UncertainInterval) -> bool {
    !possible(rel, a, b)
}

pub fn classify(rel: AllenRelation, a: &UncertainInterval, b: &UncertainInterval) -> RelationState {
    RelationState::from_flags(reliable(rel, a, b), possible(rel, a, b))
}

// ---------------------------------------------------------------------------
// Instants

/// An uncertain instant `t` in `[lo, hi]` against the proper members of `w`.
/// Only before, starts, during, finishes and after can hold; an instant at a
/// boundary of the interval collapses to starts or finishes.
#[allow(clippy::float_cmp)]
fn instant_vs_interval(rel: AllenRelation, t: Bounds, w: Bounds) -> RelationState {
    use AllenRelation::*;
    let (lo, hi) = (t.pb, t.pe);
    let (possible, reliable) = match rel {
        Before => (lo < w.rb, hi < w.pb),
        After => (hi > w.re, lo > w.pe),
        Starts => (
            lo <= w.rb && hi >= w.pb && lo < w.pe,
            lo == hi && hi == w.pb && w.pb == w.rb,
        ),
        During => (hi > w.pb && lo < w.pe, w.rb < lo && hi < w.re),
        Finishes => (
            hi >= w.re && lo <= w.pe && hi > w.pb,
            lo == hi && hi == w.re && w.re == w.pe,
        ),
        _ => (false, false),
    };
    RelationState::from_flags(reliable, possible)
}

#[allow(clippy::float_cmp)]
fn instant_vs_instant(rel: AllenRelation, t: Bounds, s: Bounds) -> RelationState {
    use AllenRelation::*;
    let (t_lo, t_hi, s_lo, s_hi) = (t.pb, t.pe, s.pb, s.pe);
    let (possible, reliable) = match rel {
        Before => (t_lo < s_hi, t_hi < s_lo),
        After => (t_hi > s_lo, t_lo > s_hi),
        Equals => (
            t_lo <= s_hi && t_hi >= s_lo,
            t_lo == t_hi && t_hi == s_lo && s_lo == s_hi,
        ),
        _ => (false, false),
    };
    RelationState::from_flags(reliable, possible)
}

fn check_kind(
    w: &UncertainInterval,
    kind: OperandKind,
    other: OperandKind,
    operand: Operand,
) -> Result<(), AllenError> {
    let problem = match (kind, other) {
        (OperandKind::Instant, _) if !w.is_instant_shaped() => Some(KindProblem::NotInstantShaped),
        (OperandKind::Interval, OperandKind::Instant) if !w.has_proper_member() => {
            Some(KindProblem::NoProperMember)
        }
        _ => None,
    };
    match problem {
        Some(problem) => Err(AllenError::KindMismatch {
            operand,
            kind,
            problem,
            interval: *w,
        }),
        None => Ok(()),
    }
}

fn state_unchecked(
    rel: AllenRelation,
    a: &UncertainInterval,
    b: &UncertainInterval,
    a_kind: OperandKind,
    b_kind: OperandKind,
) -> RelationState {
    use OperandKind::*;
    match (a_kind, b_kind) {
        (Interval, Interval) => classify(rel, a, b),
        (Instant, Interval) => instant_vs_interval(rel, a.into(), b.into()),
        (Interval, Instant) => instant_vs_interval(rel.inverse(), b.into(), a.into()),
        (Instant, Instant) => instant_vs_instant(rel, a.into(), b.into()),
    }
}

/// Classify all thirteen relations for `a` against `b`.
///
/// With both operands of interval kind every member counts, including
/// duration-0 ones. An operand of instant kind contributes only its
/// duration-0 members and the interval on the other side only its proper
/// members.
pub fn profile(
    a: &UncertainInterval,
    b: &UncertainInterval,
    a_kind: OperandKind,
    b_kind: OperandKind,
) -> Result<RelationProfile, AllenError> {
    check_kind(a, a_kind, b_kind, Operand::First)?;
    check_kind(b, b_kind, a_kind, Operand::Second)?;
    Ok(RelationProfile::from_fn(|rel| {
        state_unchecked(rel, a, b, a_kind, b_kind)
    }))
}

/// Classify one relation when either operand is an instant.
pub fn classify_instant(
    rel: AllenRelation,
    a: &UncertainInterval,
    b: &UncertainInterval,
    a_kind: OperandKind,
    b_kind: OperandKind,
) -> Result<RelationState, AllenError> {
    check_kind(a, a_kind, b_kind, Operand::First)?;
    check_kind(b, b_kind, a_kind, Operand::Second)?;
    Ok(state_unchecked(rel, a, b, a_kind, b_kind))
}

/// The OWL-Time `in` relation of an instant to an interval: starts, during
/// or finishes.
pub fn in_relation(t: &UncertainInterval, w: &UncertainInterval) -> Result<RelationState, AllenError> {
    check_kind(t, OperandKind::Instant, OperandKind::Interval, Operand::First)?;
    check_kind(w, OperandKind::Interval, OperandKind::Instant, Operand::Second)?;
    let (tb, wb) = (Bounds::from(t), Bounds::from(w));
    let possible = [AllenRelation::Starts, AllenRelation::During, AllenRelation::Finishes]
        .into_iter()
        .any(|rel| instant_vs_interval(rel, tb, wb).is_possible());
    let reliable = wb.rb <= tb.pb && tb.pe <= wb.re;
    Ok(RelationState::from_flags(reliable, possible))
}
