use proptest::prelude::*;
use std::cmp::Ordering;

use scca::algebra::{bracket, Gen};
use scca::halfint::HalfInt;
use scca::pbw::{compare_total, weight, Family, PBWMonomial};
use scca::rat::{rat, rat_from_string, rat_to_string};

fn arb_gen() -> impl Strategy<Value = Gen> {
    prop_oneof![
        (-3i64..=3).prop_map(Gen::L),
        (-3i64..=3).prop_map(Gen::H),
        (-3i64..=2).prop_map(|t| Gen::g(HalfInt::from_twice(2 * t + 1))),
        (-3i64..=2).prop_map(|t| Gen::f(HalfInt::from_twice(2 * t + 1))),
        Just(Gen::C1),
        Just(Gen::C2),
        Just(Gen::C3),
    ]
}

fn arb_monomial() -> impl Strategy<Value = PBWMonomial> {
    // a handful of letters in positions 1..=4; duplicate odd letters dropped
    proptest::collection::vec((0u8..4, 1u32..=4), 0..5).prop_map(|letters| {
        let mut m = PBWMonomial::one();
        for (f, p) in letters {
            let fam = match f {
                0 => Family::L,
                1 => Family::H,
                2 => Family::G,
                _ => Family::F,
            };
            let _ = m.add_letter(fam, p);
        }
        m
    })
}

proptest! {
    #[test]
    fn total_order_is_antisymmetric(a in arb_monomial(), b in arb_monomial()) {
        let ab = compare_total(&a, &b);
        let ba = compare_total(&b, &a);
        prop_assert_eq!(ab, ba.reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
    }

    #[test]
    fn total_order_is_transitive(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        let mut v = vec![a, b, c];
        v.sort_by(|x, y| compare_total(x, y));
        prop_assert!(compare_total(&v[0], &v[1]) != Ordering::Greater);
        prop_assert!(compare_total(&v[1], &v[2]) != Ordering::Greater);
        prop_assert!(compare_total(&v[0], &v[2]) != Ordering::Greater);
    }

    #[test]
    fn total_order_refines_weight(a in arb_monomial(), b in arb_monomial()) {
        if weight(&a) < weight(&b) {
            prop_assert_eq!(compare_total(&a, &b), Ordering::Less);
        }
    }

    #[test]
    fn bracket_antisymmetry(x in arb_gen(), y in arb_gen()) {
        let mut r = bracket(x, y);
        let sign = if x.is_odd() && y.is_odd() {
            scca::rat::rat_int(-1)
        } else {
            scca::rat::rat_int(1)
        };
        r.add_scaled(&bracket(y, x), &sign);
        prop_assert!(r.is_zero(), "({x},{y}) residual {r}");
    }

    #[test]
    fn bracket_jacobi(x in arb_gen(), y in arb_gen(), z in arb_gen()) {
        use scca::algebra::{bracket_elements, LieElement};
        let mut r = LieElement::zero();
        r.add_scaled(&bracket_elements(&LieElement::term(x, scca::rat::rat_int(1)), &bracket(y, z)), &scca::rat::rat_int(1));
        r.add_scaled(&bracket_elements(&bracket(x, y), &LieElement::term(z, scca::rat::rat_int(1))), &scca::rat::rat_int(-1));
        let s = if x.is_odd() && y.is_odd() {
            scca::rat::rat_int(-1)
        } else {
            scca::rat::rat_int(1)
        };
        r.add_scaled(&bracket_elements(&LieElement::term(y, scca::rat::rat_int(1)), &bracket(x, z)), &(-s));
        prop_assert!(r.is_zero(), "({x},{y},{z}) residual {r}");
    }

    #[test]
    fn bracket_respects_grading(x in arb_gen(), y in arb_gen()) {
        let d = x.degree() + y.degree();
        for (g, _) in bracket(x, y).iter() {
            if g.is_central() {
                prop_assert!(d.is_zero(), "central term away from degree 0 in [{x},{y}]");
            } else {
                prop_assert_eq!(g.degree(), d);
            }
        }
    }

    #[test]
    fn rational_strings_roundtrip(p in -40i64..=40, q in 1i64..=12) {
        let r = rat(p, q);
        let s = rat_to_string(&r);
        prop_assert!(!s.contains('.'));
        prop_assert_eq!(rat_from_string(&s).unwrap(), r);
    }
}
