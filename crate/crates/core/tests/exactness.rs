use arith_bertini::elimination::sylvester_resultant;
use arith_bertini::exactalg::{binary_gcd, make_vars, BinaryForm, Domain, MultiPoly, Scalar, Vars};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn vars3() -> Vars {
    make_vars(&["X0", "X1", "X2"])
}

fn rat() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn arb_poly(vars: Vars, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), rat()), 0..=max_terms).prop_map(move |terms| {
        MultiPoly::from_terms(&vars, Domain::Rational, terms.into_iter().map(|(e, c)| (e, Scalar::rational(c)))).unwrap()
    })
}

/// Homogeneous form of degree `d` in the given variables.
fn arb_form(vars: Vars, d: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(0..=d, n - 1), rat()), 1..=max_terms).prop_map(move |terms| {
        let terms = terms.into_iter().filter_map(|(mut e, c)| {
            let used: u32 = e.iter().sum();
            if used > d {
                return None;
            }
            e.push(d - used);
            Some((e, Scalar::rational(c)))
        });
        MultiPoly::from_terms(&vars, Domain::Rational, terms).unwrap()
    })
}

fn point(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(rat().prop_map(Scalar::rational), n)
}

fn binary_product(parts: &[Vec<BigRational>], vars: &Vars) -> MultiPoly {
    let mut acc = MultiPoly::one(vars, Domain::Rational);
    for c in parts {
        let f = BinaryForm { degree: c.len() as u32 - 1, coeffs: c.clone() }.to_poly(vars);
        acc = acc.checked_mul(&f).unwrap();
    }
    acc
}

fn binary_parts(max_deg: usize) -> impl Strategy<Value = Vec<BigRational>> {
    (1..=max_deg).prop_flat_map(|d| prop::collection::vec((-4i64..=4).prop_map(|n| BigRational::from_integer(n.into())), d + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn l1_norm_is_submultiplicative(a in arb_poly(vars3(), 3, 5), b in arb_poly(vars3(), 3, 5)) {
        let prod = a.checked_mul(&b).unwrap();
        prop_assert!(prod.l1_norm().unwrap() <= a.l1_norm().unwrap() * b.l1_norm().unwrap());
    }

    #[test]
    fn euler_identity_for_forms(f in (0u32..=4).prop_flat_map(|d| arb_form(vars3(), d, 6))) {
        let deg = f.total_degree().unwrap_or(0);
        let mut lhs = MultiPoly::zero(f.vars(), Domain::Rational);
        for i in 0..3 {
            let xi = MultiPoly::var(f.vars(), i, Domain::Rational);
            lhs = lhs.checked_add(&xi.checked_mul(&f.partial_derivative(i).unwrap()).unwrap()).unwrap();
        }
        prop_assert_eq!(lhs, f.scale(&Scalar::rational(BigRational::from_integer(BigInt::from(deg)))));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in arb_poly(vars3(), 3, 5), b in arb_poly(vars3(), 3, 5), pt in point(3)) {
        let (va, vb) = (a.eval(&pt).unwrap(), b.eval(&pt).unwrap());
        prop_assert_eq!(a.checked_mul(&b).unwrap().eval(&pt).unwrap(), va.mul(&vb));
        prop_assert_eq!(a.checked_add(&b).unwrap().eval(&pt).unwrap(), va.add(&vb));
        prop_assert_eq!(a.checked_sub(&b).unwrap().eval(&pt).unwrap(), va.sub(&vb));
    }

    #[test]
    fn resultant_vanishes_exactly_with_a_common_factor(
        shared in prop::collection::vec(binary_parts(2), 0..=1),
        fa in binary_parts(2),
        gb in binary_parts(2),
    ) {
        let v = make_vars(&["X0", "X1"]);
        let mut fp = shared.clone();
        fp.push(fa);
        let mut gp = shared;
        gp.push(gb);
        let f = binary_product(&fp, &v);
        let g = binary_product(&gp, &v);
        prop_assume!(!f.is_zero() && !g.is_zero());
        let res = sylvester_resultant(&f, &g, 0, 1).unwrap();
        prop_assert!(res.is_constant());
        let common = binary_gcd(&BinaryForm::from_poly(&f).unwrap(), &BinaryForm::from_poly(&g).unwrap());
        prop_assert_eq!(res.is_zero(), common.degree > 0);
    }
}

#[test]
fn resultant_of_linear_forms_is_their_determinant() {
    let v = make_vars(&["X0", "X1"]);
    // (2 X0 + 3 X1, 5 X0 - X1): coefficients listed from the X0 power down
    let f = MultiPoly::from_int_terms(&v, &[(&[1, 0], 2), (&[0, 1], 3)]);
    let g = MultiPoly::from_int_terms(&v, &[(&[1, 0], 5), (&[0, 1], -1)]);
    let r = sylvester_resultant(&f, &g, 0, 1).unwrap();
    assert_eq!(r.constant_term(), Scalar::int(-2 - 3 * 5));
}
