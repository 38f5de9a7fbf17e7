//! Property tests over arbitrary shapes and points.

use std::collections::BTreeMap;

use proptest::prelude::*;

use geocrystal::birational::{sigma, xi};
use geocrystal::bkinf::{self, e_pow, eps_phi, kashiwara, weyl_s_iter, weyl_s_tilde, Op};
use geocrystal::geomcrystal::{act_e, epsilon, gamma, weyl_s};
use geocrystal::iso::{omega, omega_inv};
use geocrystal::lattice::AnyPoint;
use geocrystal::tropical::{to_maxplus, trop_e, trop_eps, trop_weyl, trop_wt};
use geocrystal::{BElement, MaxPlus, Semifield, Shape, TropPoint, XPoint, Q};
use num_bigint::BigInt;

fn shape() -> impl Strategy<Value = Shape> {
    (2usize..=6)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_map(|(n, k)| Shape::new(n, k).unwrap())
}

fn small_shape() -> impl Strategy<Value = Shape> {
    (2usize..=4)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_map(|(n, k)| Shape::new(n, k).unwrap())
}

fn trop_point(s: Shape, bound: i64) -> impl Strategy<Value = TropPoint> {
    prop::collection::vec(-bound..=bound, s.size()).prop_map(move |v| {
        let mut it = v.into_iter();
        TropPoint::from_fn(s, |_, _| it.next().unwrap())
    })
}

fn rational() -> impl Strategy<Value = Q> {
    (1i64..=9, 1i64..=9).prop_map(|(a, b)| Q::new(BigInt::from(a), BigInt::from(b)))
}

fn x_point(s: Shape) -> impl Strategy<Value = XPoint> {
    prop::collection::vec(rational(), s.size()).prop_map(move |v| {
        let mut it = v.into_iter();
        XPoint::from_fn(s, |_, _| it.next().unwrap())
    })
}

fn shape_and_trop() -> impl Strategy<Value = TropPoint> {
    shape().prop_flat_map(|s| trop_point(s, 12))
}

fn shape_and_x() -> impl Strategy<Value = XPoint> {
    small_shape().prop_flat_map(x_point)
}

fn maxplus() -> impl Strategy<Value = MaxPlus> {
    prop_oneof![1 => Just(MaxPlus::NEG_INF), 6 => (-50i64..=50).prop_map(MaxPlus::fin)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maxplus_is_a_commutative_semiring(a in maxplus(), b in maxplus(), c in maxplus()) {
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.plus(&MaxPlus::zero()), a);
        prop_assert_eq!(a.times(&MaxPlus::one()), a);
        prop_assert_eq!(a.plus(&a), a);
    }

    #[test]
    fn omega_is_bijective(x in shape_and_trop()) {
        let b = omega(&x);
        prop_assert!(b.row_sums_vanish());
        prop_assert_eq!(omega_inv(&b), x);
    }

    #[test]
    fn omega_intertwines(x in shape_and_trop(), d in -3i64..=3) {
        let b = omega(&x);
        for i in 0..=x.shape().n() {
            prop_assert_eq!(trop_wt(&x, i), bkinf::wt(&b, i));
            prop_assert_eq!(trop_eps(&x, i), eps_phi(&b, i).0);
            prop_assert_eq!(omega(&trop_e(&x, i, d)), e_pow(&b, i, d));
        }
    }

    #[test]
    fn tropical_matches_maxplus_engine(x in shape_and_trop(), d in -4i64..=4) {
        let mx = to_maxplus(&x);
        for i in 0..=x.shape().n() {
            prop_assert_eq!(gamma(&mx, i).value(), trop_wt(&x, i));
            prop_assert_eq!(epsilon(&mx, i).value(), trop_eps(&x, i));
            let engine = act_e(&mx, i, &MaxPlus::fin(d)).map(|v| v.value());
            prop_assert_eq!(engine, trop_e(&x, i, d));
        }
    }

    #[test]
    fn tropical_action_is_a_group_action(x in shape_and_trop(), c in -5i64..=5, d in -5i64..=5) {
        for i in 0..=x.shape().n() {
            prop_assert_eq!(trop_e(&trop_e(&x, i, c), i, d), trop_e(&x, i, c + d));
            prop_assert_eq!(trop_eps(&trop_e(&x, i, c), i), trop_eps(&x, i) - c);
            prop_assert_eq!(trop_weyl(&trop_weyl(&x, i), i), x.clone());
        }
    }

    #[test]
    fn kashiwara_operators_invert(x in shape_and_trop()) {
        let b = omega(&x);
        for i in 0..=x.shape().n() {
            let e = kashiwara(&b, Op::E, i);
            prop_assert_eq!(kashiwara(&e, Op::F, i), b.clone());
            let (e0, p0) = eps_phi(&b, i);
            prop_assert_eq!(eps_phi(&e, i), (e0 - 1, p0 + 1));
            prop_assert_eq!(weyl_s_tilde(&b, i), weyl_s_iter(&b, i));
        }
    }

    #[test]
    fn extremal_tuples_minimize_delta(x in shape_and_trop()) {
        let b: BElement = omega(&x);
        let min = bkinf::c_set(b.shape()).iter().map(|c| bkinf::delta(&b, c)).min().unwrap();
        let ce = bkinf::extremal_c(&b, bkinf::Which::E).unwrap();
        let cf = bkinf::extremal_c(&b, bkinf::Which::F).unwrap();
        prop_assert_eq!(bkinf::delta(&b, &ce), min);
        prop_assert_eq!(bkinf::delta(&b, &cf), min);
    }

    #[test]
    fn sigma_and_xi_invert(x in shape_and_x()) {
        let y = sigma(&x);
        prop_assert!(y.check_positive().is_ok());
        prop_assert_eq!(xi(&y), x);
    }

    #[test]
    fn geometric_weyl_is_involutive(x in shape_and_x()) {
        for i in 0..=x.shape().n() {
            prop_assert_eq!(weyl_s(&weyl_s(&x, i), i), x.clone());
        }
    }

    #[test]
    fn geometric_action_is_a_group_action(x in shape_and_x(), c in rational(), d in rational()) {
        for i in 0..=x.shape().n() {
            let cd = &c * &d;
            prop_assert_eq!(act_e(&act_e(&x, i, &c), i, &d), act_e(&x, i, &cd));
            prop_assert_eq!(epsilon(&act_e(&x, i, &c), i), epsilon(&x, i) / &c);
        }
    }

    #[test]
    fn point_json_round_trips(x in shape_and_x(), t in shape_and_trop()) {
        for p in [AnyPoint::X(x), AnyPoint::Trop(t)] {
            let text = serde_json::to_string(&p.to_json()).unwrap();
            let back = AnyPoint::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            prop_assert_eq!(back, p);
        }
    }

    #[test]
    fn belement_json_round_trips(x in shape_and_trop()) {
        let b = omega(&x);
        let text = serde_json::to_string(&b.to_json()).unwrap();
        let back = BElement::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, b);
    }
}

#[test]
fn entries_off_lattice_are_rejected() {
    let s = Shape::new(3, 2).unwrap();
    let m: BTreeMap<_, _> = [((3, 1), 0i64)].into();
    assert!(TropPoint::from_entries(s, &m).is_err());
}
