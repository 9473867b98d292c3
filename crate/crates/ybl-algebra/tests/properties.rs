use std::sync::Arc;

use proptest::prelude::*;
use ybl_algebra::{expand_at_infinity, gcd, q, Field, Matrix, Mono, MultiPoly, RatFunc, Role, UPoly, VarRegistry, Q};

fn reg() -> Arc<VarRegistry> {
    VarRegistry::new(vec![("z1", Role::Z(1)), ("z2", Role::Z(2)), ("h", Role::H)]).unwrap()
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -5i64..6, 1i64..4), 0..5).prop_map(|terms| {
        let r = reg();
        let t = terms.into_iter().map(|((a, b, c), n, d)| (Mono::from_exps(&[a, b, c]), q(n, d))).collect();
        MultiPoly::from_terms(Some(r), t)
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (poly_strategy(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn gcd_divides_and_recovers_common_factor(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let g = gcd(&(&a * &b), &(&a * &c));
        prop_assert!((&a * &b).exact_div(&g).is_some());
        prop_assert!((&a * &c).exact_div(&g).is_some());
        prop_assert!(g.exact_div(&MultiPoly::from_z(Some(reg()), a.primitive_z().1)).is_some());
    }

    #[test]
    fn normalize_idempotent(f in ratfunc_strategy(), g in ratfunc_strategy()) {
        let again = RatFunc::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&again, &f);
        prop_assert_eq!(f == g, (&f - &g).is_zero());
        prop_assert_eq!(&(&f + &g) - &g, f);
    }

    #[test]
    fn det_is_multiplicative(a in prop::collection::vec(poly_strategy(), 9), b in prop::collection::vec(poly_strategy(), 9)) {
        let ma = Matrix::new(3, 3, a.into_iter().map(RatFunc::from).collect()).unwrap();
        let mb = Matrix::new(3, 3, b.into_iter().map(RatFunc::from).collect()).unwrap();
        let lhs = ma.mul(&mb).det().unwrap();
        let rhs = ma.det().unwrap().mul(&mb.det().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn det_is_multiplicative_rational(a in prop::collection::vec(ratfunc_strategy(), 4), b in prop::collection::vec(ratfunc_strategy(), 4)) {
        let ma = Matrix::new(2, 2, a).unwrap();
        let mb = Matrix::new(2, 2, b).unwrap();
        let lhs = ma.mul(&mb).det().unwrap();
        let rhs = ma.det().unwrap().mul(&mb.det().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn expansion_of_geometric_products(c1 in -6i64..7, c2 in -6i64..7, k in 0usize..3) {
        // u^k / ((u - c1)(u - c2))^... closed form: coefficients of 1/((u-a)(u-b)) are h_{s-2}(a,b)
        let (a, b) = (Q::from_integer(c1.into()), Q::from_integer(c2.into()));
        let den = UPoly::linear(&a).mul(&UPoly::linear(&b));
        let mut num = UPoly::one();
        for _ in 0..k {
            num = num.mul(&UPoly::linear(&Q::from_integer(0.into())));
        }
        let got = expand_at_infinity(&num, &den, 10).unwrap();
        for (s, g) in got.iter().enumerate() {
            let m = s as i64 + k as i64 - 2;
            let mut expect = Q::from_integer(0.into());
            if m >= 0 {
                for i in 0..=m {
                    expect += num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), (m - i) as usize);
                }
            }
            prop_assert_eq!(g, &expect);
        }
    }
}
