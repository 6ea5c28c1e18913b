use jetdiff_core::jetscheme::{
    classical_rank_test, generic_cokernel_rank, higher_rank_test, jet_equations, nobile_certificate, on_jet_scheme,
    presentation_of, sample_smooth_jet, VERDICT_NOT_ISOMORPHISM, ATTEMPTS_PER_SAMPLE,
};
use jetdiff_core::linalg::{generic_rank, minors, trial_rng};
use jetdiff_core::{dn_matrix, jac_m, parse_poly, Error, FieldSpec, Point};

fn zeros(spec: FieldSpec, s: usize) -> Vec<jetdiff_core::FieldElement> {
    vec![spec.zero(); s]
}

#[test]
fn surface_singularities_are_certified() {
    for (src, field) in [
        ("x1*x2 - x3^2", FieldSpec::Rationals),
        ("x1^2 + x2^2 - x3^2", FieldSpec::Rationals),
        ("x1^2 - x2^2*x3", FieldSpec::Rationals),
        ("x1*x2 - x3^2", FieldSpec::prime(5).unwrap()),
    ] {
        let f = parse_poly(src, 3, field).unwrap();
        for (n, m) in [(1, 1), (1, 2)] {
            let c = nobile_certificate(&f, n, m, &zeros(field, 3), 6, 1).unwrap();
            assert!(c.membership && c.rank_deficient, "{src}");
            assert_eq!(c.cokernel.expected, presentation_of(&f, n, m).unwrap().expected_cokernel_rank());
            assert_eq!(c.verdict, VERDICT_NOT_ISOMORPHISM, "{src} over {field}, n={n}, m={m}");
        }
    }
}

#[test]
fn order_one_cokernel_is_jet_dimension() {
    // with m = 1 the generic cokernel rank is (n+1)(s−1)
    let q = FieldSpec::Rationals;
    let f = parse_poly("x1*x2 - x3^2 + x1^3", 3, q).unwrap();
    for n in 0..3 {
        let r = generic_cokernel_rank(&presentation_of(&f, n, 1).unwrap(), 4, 2).unwrap();
        assert!(r.all_match);
        assert_eq!(r.cokernel_rank, (n as usize + 1) * 2);
        assert_eq!(r.expected as u32, jet_equations(&f, n).unwrap().expected_dimension());
    }
}

#[test]
fn generic_rank_of_presentation_is_full() {
    let q = FieldSpec::Rationals;
    let f = parse_poly("x1^3 - x2^2", 2, q).unwrap();
    for (n, m) in [(0, 2), (1, 1), (1, 2), (2, 2)] {
        let d = dn_matrix(&jac_m(std::slice::from_ref(&f), m).unwrap(), n).unwrap();
        assert_eq!(generic_rank(&d, 3, 0).unwrap().rank, d.rows());
    }
    // the minors of the ordinary Jacobian generate the singular locus
    let j = jac_m(std::slice::from_ref(&f), 1).unwrap();
    let set = minors(&j, 1).unwrap();
    let origin = Point::from_flat(q, 2, &zeros(q, 2)).unwrap();
    assert!(set.minors.iter().all(|x| x.value.evaluate(&origin).unwrap().is_zero()));
}

#[test]
fn sampled_jets_pass_both_tests_over_prime_fields() {
    // over GF(2) the only point of this curve is the singular origin
    for p in [3u64, 7, 101] {
        let field = FieldSpec::prime(p).unwrap();
        let f = parse_poly("x1^3 - x2^2 + x1*x2", 2, field).unwrap();
        for t in 0..5 {
            let n = 2;
            let pt = sample_smooth_jet(&f, n, &mut trial_rng(p, t), ATTEMPTS_PER_SAMPLE).unwrap();
            let d = jet_equations(&f, n).unwrap();
            assert!(on_jet_scheme(&d, &pt).unwrap());
            assert!(classical_rank_test(&d, &pt).unwrap().full);
            assert!(higher_rank_test(&d, &pt, 2).unwrap().full);
        }
    }
}

#[test]
fn smooth_base_is_rejected() {
    let q = FieldSpec::Rationals;
    let f = parse_poly("x1*x2 - x3^2", 3, q).unwrap();
    let base = [q.one(), q.one(), q.one()];
    assert_eq!(nobile_certificate(&f, 1, 2, &base, 2, 0), Err(Error::NotSingularBase { var: 1 }));
}

#[test]
fn no_smooth_points_is_reported() {
    let q = FieldSpec::Rationals;
    // the origin is the only rational point
    let f = parse_poly("x1^2 + x2^2 + x3^2", 3, q).unwrap();
    let r = nobile_certificate(&f, 1, 1, &zeros(q, 3), 2, 0);
    assert!(matches!(r, Err(Error::NoSmoothPointFound { .. })));
    let f2 = FieldSpec::prime(2).unwrap();
    let f = parse_poly("x1^3 - x2^2 + x1*x2", 2, f2).unwrap();
    assert!(matches!(sample_smooth_jet(&f, 1, &mut trial_rng(0, 0), 50), Err(Error::NoSmoothPointFound { attempts: 50 })));
}
