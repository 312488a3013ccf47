use num_bigint::BigInt;
use proptest::prelude::*;

use interpkit_core::zx::harness::zx_harness;
use interpkit_core::zx::maps::{decode_poly, encode_poly, h_inverse, h_map, iota_map};
use interpkit_core::zx::{Poly, ZxHost};

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-20i64..20, 0..5).prop_filter_map("nonnegative", |c| {
        let p = Poly::from_i64s(&c);
        p.is_nonnegative().then_some(p)
    })
}

proptest! {
    #[test]
    fn semiring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&b).is_nonnegative() && a.mul(&b).is_nonnegative());
    }

    #[test]
    fn order_is_discrete_and_compatible(a in poly(), b in poly(), c in poly()) {
        if a < b {
            prop_assert!(a.add(&c) < b.add(&c));
            prop_assert!(a.add(&Poly::constant(1)) <= b);
        }
        if let Some(d) = b.sub(&a) {
            prop_assert_eq!(a.add(&d), b);
        }
    }

    #[test]
    fn shift_is_an_automorphism(a in poly(), b in poly()) {
        let x = Poly::x();
        let h = |p: &Poly| h_map(&x, p).unwrap();
        prop_assert_eq!(h(&a.add(&b)), h(&a).add(&h(&b)));
        prop_assert_eq!(h(&a.mul(&b)), h(&a).mul(&h(&b)));
        prop_assert_eq!(a < b, h(&a) < h(&b));
        prop_assert_eq!(h_inverse(&x, &h(&a)).unwrap(), a);
    }

    #[test]
    fn text_and_codes_round_trip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<Poly>().unwrap(), a.clone());
        let c = encode_poly(&a);
        prop_assert_eq!(decode_poly(&c).unwrap(), a.clone());
        prop_assert_eq!(iota_map(&Poly::x(), &c).unwrap(), a.compose(&Poly::x()));
    }
}

#[test]
fn known_values() {
    let x = Poly::x();
    assert_eq!(h_map(&x, &x), Some("X+1".parse().unwrap()));
    assert_eq!(h_map(&"X^2".parse().unwrap(), &x), None);
    assert_eq!(Poly::constant(BigInt::from(3)).to_string(), "3");
}

#[test]
fn harness_passes_small() {
    assert!(zx_harness(7, 50).pass());
    assert!(ZxHost::default().extra.contains(&Poly::x()));
}
