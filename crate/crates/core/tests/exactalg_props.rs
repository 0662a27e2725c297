mod common;

use common::*;
use proptest::prelude::*;
use ylocal_core::exactalg::{poly_gcd, poly_lcm, reduce_fraction};
use ylocal_core::Field;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(Q, 3, 3, 4), b in poly(Q, 3, 3, 4), c in poly(Q, 3, 3, 4)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn gcd_lcm_product(a in nonzero_poly(Q, 3, 2, 3), b in nonzero_poly(Q, 3, 2, 3), c in nonzero_poly(Q, 3, 1, 3)) {
        // a common factor makes the gcd nontrivial often enough
        let (a, b) = (&a * &c, &b * &c);
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert!(c.divides(&g));
        let l = poly_lcm(&a, &b).unwrap();
        prop_assert_eq!((&g * &l).monic(), (&a * &b).monic());
    }

    #[test]
    fn gcd_lcm_product_mod_p(a in nonzero_poly(Field::Prime(7), 2, 3, 3), b in nonzero_poly(Field::Prime(7), 2, 3, 3)) {
        let g = poly_gcd(&a, &b).unwrap();
        prop_assert!(g.divides(&a) && g.divides(&b));
        let l = poly_lcm(&a, &b).unwrap();
        prop_assert_eq!((&g * &l).monic(), (&a * &b).monic());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(Q, 3, 3, 4), b in poly(Q, 3, 3, 4), p in scalars(Q, 3)) {
        let (ea, eb) = (a.evaluate(&p).unwrap(), b.evaluate(&p).unwrap());
        prop_assert_eq!((&a * &b).evaluate(&p).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).evaluate(&p).unwrap(), &ea + &eb);
    }

    #[test]
    fn reduce_fraction_is_idempotent(h in poly(Q, 3, 2, 3), k in nonzero_poly(Q, 3, 2, 3), c in nonzero_poly(Q, 3, 1, 2)) {
        let r = reduce_fraction(&(&h * &c), &(&k * &c)).unwrap();
        let again = reduce_fraction(r.numerator(), r.denominator()).unwrap();
        prop_assert_eq!(&again, &r);
        // same value: h * den == k * num
        prop_assert_eq!(&h * r.denominator(), &k * r.numerator());
    }

    #[test]
    fn homogeneity_is_multiplicative(a in homogeneous(Q, 3, 2, 4), b in homogeneous(Q, 3, 3, 4)) {
        let p = &a * &b;
        prop_assert!(p.is_homogeneous());
        if !p.is_zero() {
            prop_assert_eq!(p.homogeneous_degree(), Some(5));
        }
    }

    #[test]
    fn division_identity(a in poly(Q, 2, 3, 4), b in nonzero_poly(Q, 2, 2, 3)) {
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
    }
}
