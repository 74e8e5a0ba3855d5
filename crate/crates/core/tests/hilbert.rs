use arith_bertini::exactalg::{indexed_vars, Domain, MultiPoly, Scalar};
use arith_bertini::variety::VarietyPresentation;
use proptest::prelude::*;

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim k[X0,X1,X2]_l / (f)` for a plane curve of degree `d`.
fn plane_curve_h(l: u64, d: u64) -> u64 {
    choose(l + 2, 2) - if l >= d { choose(l - d + 2, 2) } else { 0 }
}

fn conic() -> VarietyPresentation {
    let x = indexed_vars("X", 3);
    let g = MultiPoly::from_int_terms(&x, &[(&[1, 0, 1], 1), (&[0, 2, 0], -1)]);
    VarietyPresentation::new(2, vec![g], 1, 2).unwrap()
}

fn fermat_cubic() -> VarietyPresentation {
    let x = indexed_vars("X", 3);
    let g = MultiPoly::from_int_terms(&x, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)]);
    VarietyPresentation::new(2, vec![g], 1, 3).unwrap()
}

/// `deg · (l + dim)^dim`, written out independently of the library.
fn phi(degree: u64, dim: u32, l: u64) -> u64 {
    degree * (l + dim as u64).pow(dim)
}

#[test]
fn projective_spaces_meet_the_binomial_count() {
    for n in 1..=2u64 {
        let p = VarietyPresentation::projective_space(n as usize);
        for l in 0..=12u32 {
            let q = p.ideal_graded_piece(l).quotient_dim as u64;
            assert_eq!(q, choose(l as u64 + n, n), "P^{n} level {l}");
            assert!(q <= phi(1, n as u32, l as u64));
        }
    }
}

#[test]
fn plane_curves_match_their_hilbert_function_and_the_bound() {
    for (v, d) in [(conic(), 2), (fermat_cubic(), 3)] {
        for l in 0..=12u32 {
            let q = v.ideal_graded_piece(l).quotient_dim as u64;
            assert_eq!(q, plane_curve_h(l as u64, d), "degree {d} level {l}");
            assert!(q <= phi(d, 1, l as u64), "degree {d} level {l}");
            assert_eq!(v.hilbert_bound(l as u64), phi(d, 1, l as u64) as u128);
        }
        v.check_hilbert_bound(12).unwrap();
        v.cross_check_dim_degree(6).unwrap();
    }
}

#[test]
fn understated_degree_is_rejected() {
    let x = indexed_vars("X", 3);
    let g = MultiPoly::from_int_terms(&x, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)]);
    let wrong = VarietyPresentation::new(2, vec![g], 1, 1).unwrap();
    assert!(wrong.check_hilbert_bound(12).is_err());
}

fn arb_form(d: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0..=d, 0..=d, -3i64..=3), 1..=4).prop_map(move |terms| {
        let x = indexed_vars("X", 3);
        let terms = terms.into_iter().filter(|(a, b, _)| a + b <= d).map(|(a, b, c)| (vec![a, b, d - a - b], Scalar::int(c)));
        MultiPoly::from_terms(&x, Domain::Rational, terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adding_generators_never_grows_the_quotient(extra in prop::collection::vec((1u32..=3).prop_flat_map(arb_form), 1..=2)) {
        let extra: Vec<MultiPoly> = extra.into_iter().filter(|f| !f.is_zero()).collect();
        prop_assume!(!extra.is_empty());
        let base = conic();
        let mut gens = base.generators().to_vec();
        gens.extend(extra);
        let bigger = VarietyPresentation::new(2, gens, 0, 1).unwrap();
        for l in 0..=8u32 {
            prop_assert!(bigger.ideal_graded_piece(l).quotient_dim <= base.ideal_graded_piece(l).quotient_dim);
        }
    }
}
