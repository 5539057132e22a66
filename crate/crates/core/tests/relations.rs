use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use uti_core::allen::{in_relation, profile, AllenRelation, RelationState};
use uti_core::oracle::{oracle_in_relation, oracle_profile};
use uti_core::{holds, DeterminateInterval, OperandKind, RelationProfile, UncertainInterval};

use AllenRelation::*;
use OperandKind::{Instant, Interval};

fn integer_intervals(max: i32) -> Vec<UncertainInterval> {
    let mut out = Vec::new();
    for pb in 0..=max {
        for rb in pb..=max {
            for re in 0..=max {
                for pe in re..=max {
                    let days = [pb, rb, re, pe].map(f64::from);
                    if let Ok(w) = UncertainInterval::from_days(days[0], days[1], days[2], days[3]) {
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

fn instants(max: i32) -> Vec<UncertainInterval> {
    let mut out = Vec::new();
    for lo in 0..=max {
        for hi in lo..=max {
            let (lo, hi) = (f64::from(lo), f64::from(hi));
            out.push(UncertainInterval::from_days(lo, hi, lo, hi).unwrap());
        }
    }
    out
}

/// Four sorted values with frequent ties, arranged with or without
/// overlapping boundary ranges.
fn random_interval(rng: &mut StdRng) -> UncertainInterval {
    let mut v: [f64; 4] = std::array::from_fn(|_| {
        if rng.gen_bool(0.3) {
            f64::from(rng.gen_range(0..4))
        } else {
            rng.gen_range(-1.0..4.0)
        }
    });
    v.sort_by(f64::total_cmp);
    if rng.gen_bool(0.5) {
        UncertainInterval::from_days(v[0], v[1], v[2], v[3]).unwrap()
    } else {
        UncertainInterval::from_days(v[0], v[2], v[1], v[3]).unwrap()
    }
}

fn mismatches(pairs: &[(UncertainInterval, UncertainInterval)], a_kind: OperandKind, b_kind: OperandKind) -> usize {
    pairs
        .par_iter()
        .filter(|(a, b)| {
            let fast = profile(a, b, a_kind, b_kind).unwrap();
            fast != oracle_profile(a, b, a_kind, b_kind)
        })
        .count()
}

#[test]
fn interval_sweep_has_expected_size() {
    assert_eq!(integer_intervals(6).len(), 336);
}

#[test]
fn table_matches_oracle_on_integer_sweep() {
    let ws = integer_intervals(6);
    let pairs: Vec<_> = ws.iter().flat_map(|a| ws.iter().map(move |b| (*a, *b))).collect();
    assert_eq!(mismatches(&pairs, Interval, Interval), 0);
}

#[test]
fn table_matches_oracle_on_random_reals() {
    let mut rng = StdRng::seed_from_u64(7);
    let pairs: Vec<_> = (0..5_000)
        .map(|_| (random_interval(&mut rng), random_interval(&mut rng)))
        .collect();
    assert_eq!(mismatches(&pairs, Interval, Interval), 0);
}

fn check_profile_laws(p: &RelationProfile) {
    let possible = p.possible_set();
    let reliable = p.reliable_set();
    assert!(!possible.is_empty());
    assert!(reliable.is_subset(&possible));
    assert!(reliable.len() <= 1);
    if let Some(only) = possible.only() {
        assert_eq!(p.state(only), RelationState::Reliable);
    }
}

#[test]
fn profile_laws_on_sweep() {
    let ws = integer_intervals(6);
    ws.par_iter().for_each(|a| {
        for b in &ws {
            let p = profile(a, b, Interval, Interval).unwrap();
            check_profile_laws(&p);
            assert_eq!(profile(b, a, Interval, Interval).unwrap(), p.inverse());
            for rel in AllenRelation::ALL {
                assert_eq!(
                    uti_core::impossible(rel, a, b),
                    !uti_core::possible(rel, a, b)
                );
            }
        }
    });
}

#[test]
fn determinate_partition() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut point = || {
        if rng.gen_bool(0.5) {
            f64::from(rng.gen_range(0..6))
        } else {
            rng.gen_range(0.0..6.0)
        }
    };
    for _ in 0..10_000 {
        let (x, y) = (point(), point());
        let (u, v) = (point(), point());
        let a = DeterminateInterval::from_days(x.min(y), x.max(y)).unwrap();
        let b = DeterminateInterval::from_days(u.min(v), u.max(v)).unwrap();
        let n = AllenRelation::ALL.iter().filter(|r| holds(**r, &a, &b)).count();
        assert_eq!(n, 1, "{a} {b}");
    }
}

#[test]
fn instant_sweep_matches_oracle() {
    let ts = instants(6);
    let ws = integer_intervals(6);
    let bad: Vec<_> = ts
        .par_iter()
        .flat_map_iter(|t| ws.iter().map(move |w| (*t, *w)))
        .filter(|(t, w)| {
            if !w.has_proper_member() {
                return false;
            }
            let fwd = profile(t, w, Instant, Interval).unwrap();
            let back = profile(w, t, Interval, Instant).unwrap();
            fwd != oracle_profile(t, w, Instant, Interval)
                || back != oracle_profile(w, t, Interval, Instant)
                || in_relation(t, w).unwrap() != oracle_in_relation(t, w)
        })
        .collect();
    assert!(bad.is_empty(), "{:?}", &bad[..bad.len().min(5)]);
}

#[test]
fn instant_relations_collapse() {
    let allowed = [Before, Starts, During, Finishes, After];
    for t in instants(6) {
        for w in integer_intervals(6).iter().filter(|w| w.has_proper_member()) {
            let p = profile(&t, w, Instant, Interval).unwrap();
            for rel in p.possible_set().iter() {
                assert!(allowed.contains(&rel), "{t} {w} {rel}");
            }
            let within = [Starts, During, Finishes]
                .iter()
                .any(|r| p.state(*r).is_possible());
            assert_eq!(in_relation(&t, w).unwrap().is_possible(), within);
        }
    }
}

#[test]
fn instant_at_shared_boundaries() {
    let w = UncertainInterval::from_days(2.0, 2.0, 5.0, 5.0).unwrap();
    let at = |x: f64| UncertainInterval::from_days(x, x, x, x).unwrap();
    let p = profile(&at(2.0), &w, Instant, Interval).unwrap();
    assert_eq!(p.reliable_relation(), Some(Starts));
    let p = profile(&at(5.0), &w, Instant, Interval).unwrap();
    assert_eq!(p.reliable_relation(), Some(Finishes));
    let p = profile(&at(3.0), &w, Instant, Interval).unwrap();
    assert_eq!(p.reliable_relation(), Some(During));
}

#[test]
fn instant_pairs() {
    let ts = instants(6);
    for a in &ts {
        for b in &ts {
            let p = profile(a, b, Instant, Instant).unwrap();
            assert_eq!(p, oracle_profile(a, b, Instant, Instant));
            for rel in p.possible_set().iter() {
                assert!([Before, Equals, After].contains(&rel));
            }
        }
    }
}
