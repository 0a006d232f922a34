use std::collections::BTreeMap;

use labconf::configs::{Segment, SegmentConfig};
use labconf::scanning::{alpha_eval, from_unit, phi, phi_bar, rescale_from_unit, rescale_to_unit, to_unit};
use labconf::spaces::{FiniteSites, IntervalLabel, Site};
use labconf::Scalar;
use proptest::prelude::*;

type W = SegmentConfig<Site, IntervalLabel>;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-200i64..200, 1i64..50).prop_map(|(n, d)| Scalar::new(n, d))
}

fn label() -> impl Strategy<Value = IntervalLabel> {
    (0i64..=16).prop_map(|n| IntervalLabel::new(Scalar::new(n, 16)).unwrap())
}

/// Raw entries with at most one segment per site, so they never overlap.
fn raw_segments() -> impl Strategy<Value = Vec<Segment<Site, IntervalLabel>>> {
    prop::collection::btree_map(0u32..6, (scalar(), 1i64..40, label()), 0..6).prop_map(
        |m: BTreeMap<u32, (Scalar, i64, IntervalLabel)>| {
            m.into_iter()
                .map(|(y, (a, len, x))| {
                    let b = &a + Scalar::new(len, 7);
                    Segment::new(a, b, Site(y), x)
                })
                .collect()
        },
    )
}

proptest! {
    #[test]
    fn normal_form_ignores_order(raw in raw_segments().prop_shuffle(), seed in any::<u64>()) {
        let w = W::normalize(raw.clone()).unwrap();
        let mut rev = raw;
        let k = (seed as usize) % rev.len().max(1);
        rev.rotate_left(k);
        rev.reverse();
        prop_assert_eq!(W::normalize(rev).unwrap(), w);
    }

    #[test]
    fn rescale_round_trip(raw in raw_segments()) {
        let w = W::normalize(raw).unwrap();
        let u = rescale_to_unit(&w);
        prop_assert!(u.in_unit_interval());
        prop_assert_eq!(rescale_from_unit(&u).unwrap(), w);
    }

    #[test]
    fn unit_map_round_trip(t in scalar()) {
        let u = to_unit(&t);
        prop_assert!(u.in_open_unit_interval());
        prop_assert_eq!(from_unit(&u).unwrap(), t);
    }

    #[test]
    fn json_round_trip(raw in raw_segments()) {
        let w = W::normalize(raw).unwrap();
        let text = serde_json::to_string(&w).unwrap();
        let back: W = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn phi_bar_then_phi(raw in raw_segments()) {
        let k = phi(&W::normalize(raw).unwrap());
        let w = phi_bar(&FiniteSites::new(6), &k).unwrap();
        prop_assert_eq!(phi(&w), k);
    }

    #[test]
    fn loops_are_based(raw in raw_segments()) {
        let w = rescale_to_unit(&W::normalize(raw).unwrap());
        prop_assert!(alpha_eval(&w, &Scalar::zero()).is_empty());
        prop_assert!(alpha_eval(&w, &Scalar::one()).is_empty());
    }
}
