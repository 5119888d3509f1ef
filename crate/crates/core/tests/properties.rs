use besselpoly::bessel_poly::{pn_polys, raise_power};
use besselpoly::moments::{moments, shift_functional_check};
use besselpoly::{poly_gcd, Field, Polynomial, Rational, RationalFunction};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=15).prop_map(|(n, d)| Rational::frac(n, d))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=15).prop_map(|(n, d)| Rational::frac(n, d))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Polynomial<Rational>> {
    (prop::collection::vec(rational(), 0..=max_degree), 1i64..=9).prop_map(|(mut c, lead)| {
        c.push(Rational::from(lead));
        Polynomial::new(c)
    })
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(3), poly(2)).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn ratfunc_normal_form(f in ratfunc(), g in ratfunc()) {
        prop_assert_eq!(RationalFunction::new(f.num().clone(), f.den().clone()).unwrap(), f.clone());
        prop_assert!(f.minus(&f).is_zero());
        if !g.is_zero() {
            prop_assert_eq!(f.times(&g).divided(&g).unwrap(), f.clone());
        }
        prop_assert!(f.den().is_monic());
    }

    #[test]
    fn ratfunc_serde_roundtrip(f in ratfunc()) {
        let text = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<RationalFunction>(&text).unwrap(), f);
    }

    #[test]
    fn gcd_scales(p in poly(3), q in poly(3), r in poly(2)) {
        let lhs = poly_gcd(&(&p * &r), &(&q * &r)).unwrap();
        let rhs = (&r * &poly_gcd(&p, &q).unwrap()).monic().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pochhammer_split(y in rational(), m in 0usize..=8, n in 0usize..=8) {
        let shifted = &y + &Rational::from(m as i64);
        prop_assert_eq!(y.pochhammer(m + n), &y.pochhammer(m) * &shifted.pochhammer(n));
    }

    #[test]
    fn raise_power_commutes(alpha in positive_rational(), n in 0usize..=6, k in 0usize..=6) {
        let seq = pn_polys(n + k, &alpha).unwrap();
        prop_assert_eq!(raise_power(&seq[n], k, &alpha), seq[n + k].clone());
        prop_assert_eq!(seq[n].coeff(0), alpha.powi(2 * n as u32));
    }

    #[test]
    fn moments_shift(alpha in positive_rational()) {
        prop_assert!(shift_functional_check(8, &alpha).unwrap().is_empty());
        prop_assert!(moments(8, &alpha).unwrap().values().iter().all(Rational::is_positive));
    }
}
