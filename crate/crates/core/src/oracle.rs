//! Brute-force relation profiles, used to check the closed-form conditions in
//! [`crate::allen`].
//!
//! Every closed-form condition depends only on how the eight boundary values
//! and the four member endpoints are ordered. The oracle therefore replaces
//! the real axis with a finite grid that realises every such ordering: the
//! distinct boundary values, four interior points in each gap between them
//! (enough for all four endpoints to fall strictly inside one gap), and one
//! exterior point on each side. It then enumerates every member of each
//! operand with endpoints on the grid and evaluates [`crate::allen::holds`]
//! over the Cartesian product.

use crate::allen::{holds_raw, AllenRelation, RelationProfile, RelationSet};
use crate::interval::{OperandKind, UncertainInterval};

const INTERIOR_POINTS: i32 = 4;
const STEP: i32 = INTERIOR_POINTS + 1;

/// Which members of an operand the quantifiers range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Members {
    /// `begin <= end`: every member.
    All,
    /// `begin == end`: instants only.
    Instants,
    /// `begin < end`: proper intervals only.
    Proper,
}

fn member_filter(kind: OperandKind, other: OperandKind) -> Members {
    match (kind, other) {
        (OperandKind::Instant, _) => Members::Instants,
        (OperandKind::Interval, OperandKind::Instant) => Members::Proper,
        (OperandKind::Interval, OperandKind::Interval) => Members::All,
    }
}

struct Grid {
    values: Vec<f64>,
}

impl Grid {
    fn new(a: &UncertainInterval, b: &UncertainInterval) -> Self {
        let mut values: Vec<f64> = a.to_days().into_iter().chain(b.to_days()).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        Grid { values }
    }

    /// Grid coordinate of a boundary value.
    fn coord(&self, v: f64) -> i32 {
        let rank = self
            .values
            .iter()
            .position(|x| *x == v)
            .expect("boundary values are on the grid");
        rank as i32 * STEP
    }

    /// Every grid coordinate, interior and exterior points included.
    fn points(&self) -> std::ops::RangeInclusive<i32> {
        let last = (self.values.len() as i32 - 1) * STEP;
        -STEP..=last + STEP
    }
}

fn members(w: &UncertainInterval, grid: &Grid, filter: Members) -> Vec<(i32, i32)> {
    let [pb, rb, re, pe] = w.to_days().map(|v| grid.coord(v));
    let mut out = Vec::new();
    for x in grid.points().filter(|x| (pb..=rb).contains(x)) {
        for y in grid.points().filter(|y| (re..=pe).contains(y)) {
            let keep = match filter {
                Members::All => x <= y,
                Members::Instants => x == y,
                Members::Proper => x < y,
            };
            if keep {
                out.push((x, y));
            }
        }
    }
    out
}

fn holding_mask(ab: i32, ae: i32, bb: i32, be: i32) -> u16 {
    AllenRelation::ALL
        .into_iter()
        .filter(|rel| holds_raw(*rel, ab, ae, bb, be))
        .fold(0, |mask, rel| mask | 1 << rel as u16)
}

/// Evaluate the reliable/possible quantifiers by enumeration.
///
/// A relation is possible when some member pair satisfies it and reliable
/// when there is at least one pair and all of them do. Operand kinds select
/// members the same way as [`crate::allen::profile`]: an instant contributes
/// its duration-0 members, the interval opposite an instant only its proper
/// members, and two intervals every member.
pub fn oracle_profile(
    a: &UncertainInterval,
    b: &UncertainInterval,
    a_kind: OperandKind,
    b_kind: OperandKind,
) -> RelationProfile {
    let grid = Grid::new(a, b);
    let a_members = members(a, &grid, member_filter(a_kind, b_kind));
    let b_members = members(b, &grid, member_filter(b_kind, a_kind));

    let mut some: u16 = 0;
    let mut every: u16 = RelationSet::all().bits();
    let mut any_pair = false;
    for &(ab, ae) in &a_members {
        for &(bb, be) in &b_members {
            let mask = holding_mask(ab, ae, bb, be);
            some |= mask;
            every &= mask;
            any_pair = true;
        }
    }
    if !any_pair {
        every = 0;
    }
    let to_set = |mask: u16| {
        AllenRelation::ALL
            .into_iter()
            .filter(|r| mask & (1 << *r as u16) != 0)
            .collect::<RelationSet>()
    };
    RelationProfile::from_sets(to_set(some), to_set(every))
}

/// Brute-force state of the `in` relation (starts, during or finishes) of an
/// instant `t` to an interval `w`.
pub fn oracle_in_relation(t: &UncertainInterval, w: &UncertainInterval) -> crate::allen::RelationState {
    use crate::allen::RelationState;
    let grid = Grid::new(t, w);
    let instants = members(t, &grid, Members::Instants);
    let intervals = members(w, &grid, Members::Proper);
    let in_rel = |tb: i32, te: i32, wb: i32, we: i32| {
        [AllenRelation::Starts, AllenRelation::During, AllenRelation::Finishes]
            .into_iter()
            .any(|rel| holds_raw(rel, tb, te, wb, we))
    };
    let mut some = false;
    let mut every = true;
    for &(tb, te) in &instants {
        for &(wb, we) in &intervals {
            let h = in_rel(tb, te, wb, we);
            some |= h;
            every &= h;
        }
    }
    if instants.is_empty() || intervals.is_empty() {
        every = false;
    }
    if every {
        RelationState::Reliable
    } else if some {
        RelationState::Possible
    } else {
        RelationState::Impossible
    }
}
