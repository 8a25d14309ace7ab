//! Property tests over random knots built as closures of braids.

mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use knotq::alexander::{delta, knot_matrix, linearize};
use knotq::coloring::{affine_colorings, count_colorings, find_nontrivial_coloring};
use knotq::diagram::{ArcId, Crossing, Diagram, Sign};
use knotq::finiteq::FiniteQuandle;
use knotq::laurent::LaurentPoly;
use knotq::presentation::present_knot;

const MAX_STRANDS: usize = 4;
const MAX_BRAID_LENGTH: usize = 9;
const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];
const MAX_QUOTIENT_SIZE: usize = 64;

/// A braid generator: `σ_i` (positive) or `σ_i⁻¹`, with `i` zero-based.
type BraidLetter = (usize, bool);

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        parent[x] = find(parent, parent[x]);
    }
    parent[x]
}

/// The closure of a braid on `strands` strands, or `None` if it has more than
/// one component. At `σ_i` the strand at position `i + 1` passes over, at
/// `σ_i⁻¹` the strand at position `i`.
fn braid_closure(strands: usize, word: &[BraidLetter]) -> Option<Diagram> {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &(i, _) in word {
        perm.swap(i, i + 1);
    }
    let mut pos = 0;
    for _ in 1..strands {
        pos = perm[pos];
        if pos == 0 {
            return None;
        }
    }

    let mut segment: Vec<usize> = (0..strands).collect();
    let mut next = strands;
    let mut raw = Vec::new();
    for &(i, positive) in word {
        let (under, over) = if positive { (i, i + 1) } else { (i + 1, i) };
        raw.push((segment[under], segment[over], next, positive));
        segment[under] = segment[over];
        segment[over] = next;
        next += 1;
    }
    let mut parent: Vec<usize> = (0..next).collect();
    for (p, &s) in segment.iter().enumerate() {
        let (a, b) = (find(&mut parent, s), find(&mut parent, p));
        parent[a] = b;
    }
    let mut ids = vec![0; next];
    let mut arcs = 0;
    for s in 0..next {
        let r = find(&mut parent, s);
        if ids[r] == 0 {
            arcs += 1;
            ids[r] = arcs;
        }
    }
    let arc = |s: usize, parent: &mut [usize]| -> ArcId { ids[find(parent, s)] };
    let crossings = raw
        .into_iter()
        .map(|(u, o, w, positive)| Crossing {
            under_in: arc(u, &mut parent),
            over: arc(o, &mut parent),
            under_out: arc(w, &mut parent),
            sign: if positive {
                Sign::Positive
            } else {
                Sign::Negative
            },
        })
        .collect();
    Some(Diagram::classical(arcs, crossings).expect("braid closures are valid diagrams"))
}

fn braid() -> impl Strategy<Value = (usize, Vec<BraidLetter>)> {
    (2..=MAX_STRANDS).prop_flat_map(|k| {
        (
            Just(k),
            prop::collection::vec((0..k - 1, any::<bool>()), 0..=MAX_BRAID_LENGTH),
        )
    })
}

fn knot() -> impl Strategy<Value = Diagram> {
    braid().prop_filter_map("closure is a link", |(k, w)| braid_closure(k, &w))
}

fn knot_delta(d: &Diagram) -> LaurentPoly {
    delta(&knot_matrix(d).unwrap(), 1).unwrap()
}

#[test]
fn braid_closure_of_trefoil_braid() {
    let d = braid_closure(2, &[(0, true); 3]).unwrap();
    assert_eq!(d.arc_count(), 3);
    assert_eq!(knot_delta(&d).to_string(), "t^2 - t + 1");
    let fig8 = braid_closure(3, &[(0, true), (1, false), (0, true), (1, false)]).unwrap();
    assert_eq!(knot_delta(&fig8).to_string(), "t^2 - 3t + 1");
    assert!(braid_closure(2, &[(0, true); 2]).is_none());
}

#[test]
fn diagram_and_presentation_routes_agree_on_data_files() {
    for name in ["trefoil", "figure_eight", "unknot", "left_trefoil"] {
        let d = common::load(name);
        let via_presentation = linearize(&present_knot(&d).unwrap()).unwrap();
        assert_eq!(via_presentation, knot_matrix(&d).unwrap(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn delta_is_normalized_at_one_and_symmetric(d in knot()) {
        let a = knot_delta(&d);
        prop_assert!(!a.is_zero());
        prop_assert_eq!(a.eval_int(1).unwrap().abs(), BigRational::one());
        prop_assert_eq!(a.normalize(), a.mirror().normalize());
        let det = a.eval_int(-1).unwrap().to_integer();
        prop_assert!(det.is_odd());
    }

    #[test]
    fn invariants_survive_relabeling(d in knot(), seed in any::<u64>()) {
        let n = d.arc_count();
        let mut perm: Vec<ArcId> = (1..=n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let e = d.relabel(&perm).unwrap();
        prop_assert_eq!(knot_delta(&d).normalize(), knot_delta(&e).normalize());
        for (n, m) in [(3u64, 2i64), (5, 2), (5, 4), (7, 3)] {
            prop_assert_eq!(
                affine_colorings(&d, n, m).unwrap().count,
                affine_colorings(&e, n, m).unwrap().count
            );
        }
    }

    #[test]
    fn json_round_trip(d in knot()) {
        prop_assert_eq!(Diagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn solver_matches_search_on_random_knots(d in knot()) {
        for (n, m) in [(3u64, 2i64), (5, 2), (5, 3), (7, 3)] {
            let q = FiniteQuandle::affine(n, m).unwrap();
            let searched = count_colorings(&d, &q).unwrap();
            prop_assert_eq!(affine_colorings(&d, n, m).unwrap().count, BigInt::from(searched));
        }
    }

    /// A knot whose `Δ_1` stays nonconstant mod `p` colors nontrivially by
    /// `F_p[t]/(Δ_1)`.
    #[test]
    fn delta_predicts_colorings_over_finite_fields(d in knot()) {
        let a = knot_delta(&d);
        for p in SMALL_PRIMES {
            let degree = a.max_exp().unwrap_or(0) - a.min_exp().unwrap_or(0);
            if (p as usize).pow(degree as u32) > MAX_QUOTIENT_SIZE {
                continue;
            }
            let Ok(q) = FiniteQuandle::affine_poly_quotient(p, &a) else { continue };
            let found = find_nontrivial_coloring(&d, &q).unwrap();
            prop_assert!(found.is_some(), "Δ = {} over F_{}", a, p);
        }
    }
}
