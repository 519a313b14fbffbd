mod common;

use cohnloc::algebra::{parse_element, smith_normal_form, BaseField, Fp, Ring, Scalar};
use common::*;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;
use rand::Rng;

fn backends() -> Vec<Ring> {
    vec![
        Ring::Integers,
        Ring::Rationals,
        Ring::prime_field(7).unwrap(),
        Ring::free_algebra(BaseField::Rationals, 2).unwrap(),
        Ring::free_algebra(BaseField::PrimeField(5), 3).unwrap(),
    ]
}

fn random_element(rng: &mut impl Rng, ring: Ring) -> Scalar {
    match ring {
        Ring::Integers => z(rng.gen_range(-50..=50)),
        Ring::Rationals | Ring::PrimeField(_) => {
            // denominators stay below 7 so they are units in F7 too
            let text = format!("{}/{}", rng.gen_range(0..=30), rng.gen_range(1..=6));
            let x = parse_element(ring, &text).unwrap();
            if rng.gen_bool(0.5) { -x } else { x }
        }
        Ring::FreeAlgebra { num_vars, .. } => poly(ring, &random_poly_text(rng, num_vars, 3, None)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn involution_is_an_anti_automorphism(seed in any::<u64>()) {
        let mut rng = rng(seed);
        for ring in backends() {
            let (a, b) = (random_element(&mut rng, ring), random_element(&mut rng, ring));
            prop_assert_eq!(a.involute().involute(), a.clone());
            prop_assert_eq!((&a * &b).involute(), &b.involute() * &a.involute());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equal_elements_have_equal_representations(seed in any::<u64>()) {
        let mut rng = rng(seed);
        for ring in backends() {
            let (a, b, c) = (random_element(&mut rng, ring), random_element(&mut rng, ring), random_element(&mut rng, ring));
            let left = &(&a + &b) * &c;
            let right = &(&a * &c) + &(&b * &c);
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(left.to_string(), right.to_string());
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            // a - a built through negation is the canonical zero
            let zero = &a + &(-&a);
            prop_assert!(zero.is_zero());
            prop_assert_eq!(zero, Scalar::zero(ring));
        }
    }

    #[test]
    fn printed_elements_parse_back(seed in any::<u64>()) {
        let mut rng = rng(seed);
        for ring in backends() {
            let a = random_element(&mut rng, ring);
            prop_assert_eq!(parse_element(ring, &a.to_string()).unwrap(), a);
        }
    }

    #[test]
    fn augmentation_is_multiplicative(seed in any::<u64>()) {
        let mut rng = rng(seed);
        for ring in backends().into_iter().filter(|r| !r.is_commutative()) {
            let (a, b) = (random_element(&mut rng, ring), random_element(&mut rng, ring));
            let ab = (&a * &b).augment().unwrap();
            prop_assert_eq!(ab, &a.augment().unwrap() * &b.augment().unwrap());
            prop_assert_eq!((&a + &b).augment().unwrap(), &a.augment().unwrap() + &b.augment().unwrap());
        }
    }

    #[test]
    fn smith_form_postconditions(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (r, k) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let a = int_matrix(&mut rng, r, k, 9);
        let f = smith_normal_form(&a).unwrap();
        prop_assert_eq!(f.u.mul(&a).unwrap().mul(&f.v).unwrap(), f.s.clone());
        prop_assert!(is_unit_abs(&bareiss_det(&rows_of(&f.u))));
        prop_assert!(is_unit_abs(&bareiss_det(&rows_of(&f.v))));
        let d = &f.invariant_factors;
        for w in d.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(d.iter().all(|x| x.is_positive()));
        // the rank oracle agrees with the number of invariant factors
        prop_assert_eq!(d.len(), rank_q(&rational_rows(&a)));
    }
}

#[test]
fn prime_field_residues_are_canonical() {
    let f7 = Ring::prime_field(7).unwrap();
    assert_eq!(parse_element(f7, "-1").unwrap(), parse_element(f7, "6").unwrap());
    assert_eq!(parse_element(f7, "1/2").unwrap(), parse_element(f7, "4").unwrap());
    assert_eq!(Fp::new(-8, 7).value(), 6);
    assert!(parse_element(f7, "1/7").is_err());
    assert!(parse_element(f7, "0").unwrap().is_zero());
}
