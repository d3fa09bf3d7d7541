use proptest::prelude::*;

use qqcluster::quiver::VertexId;
use qqcluster::qseries::KMonomial;
use qqcluster::sl2::{compatible, factorize, ptolemy_check, roundtrip_batch, roundtrip_check, End, Segment};

fn monomial() -> impl Strategy<Value = KMonomial> {
    (-5i64..=5, prop::collection::vec((-5i64..=5, -5i64..=5), 0..8)).prop_map(|(a, psi)| {
        let mut m = KMonomial::weight(1, vec![2 * a]);
        for (k, e) in psi {
            m.add_psi(VertexId::new(1, 2 * k), e);
        }
        m
    })
}

fn end() -> impl Strategy<Value = End> {
    prop_oneof![Just(End::NegInf), Just(End::PosInf), (-6i64..=6).prop_map(End::Fin)]
}

fn segment() -> impl Strategy<Value = Segment> {
    (end(), end()).prop_filter_map("empty segment", |(a, b)| Segment::new(a, b).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_round_trips(m in monomial()) {
        let c = roundtrip_check(&m, 3).unwrap();
        prop_assert!(c.pass, "{:?}", c.detail);
    }

    #[test]
    fn compatibility_is_symmetric(x in segment(), y in segment()) {
        prop_assert_eq!(compatible(&x, &y), compatible(&y, &x));
    }

    #[test]
    fn compatible_pairs_factorize_to_themselves(x in segment(), y in segment()) {
        prop_assume!(compatible(&x, &y) && x.r.finite().is_some() && y.r.finite().is_some());
        let m = x.ell_weight().mul(&y.ell_weight());
        let mut want = vec![x, y];
        want.sort();
        want.retain(|s| !s.is_unit());
        let mut got = factorize(&m).unwrap().segments;
        got.retain(|s| !s.is_unit());
        prop_assert_eq!(got, want);
    }

    #[test]
    fn ptolemy_holds_off_the_grid(r in -8i64..8, len in 0i64..4, gap in 1i64..4, tail in 1i64..4) {
        let (s, r2) = (r + len, r + gap.min(len + 1));
        let s2 = s + tail;
        let c = ptolemy_check(End::Fin(r), End::Fin(s), End::Fin(r2), End::Fin(s2), 4).unwrap();
        prop_assert!(c.pass, "{:?}", c.detail);
    }
}

#[test]
fn seeded_batch_is_reproducible() {
    let a = roundtrip_batch(20, 5, 7, 2).unwrap();
    assert!(a.iter().all(|c| c.pass));
    assert_eq!(a, roundtrip_batch(20, 5, 7, 2).unwrap());
    assert_ne!(a, roundtrip_batch(20, 5, 8, 2).unwrap());
}
