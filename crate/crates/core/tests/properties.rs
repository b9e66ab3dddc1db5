use knotcert::certify::{full_report, ribbon_obstructions, CertificateStatus, KnotPresentation};
use knotcert::diagram::{braid_to_pd, is_positive_diagram, mirror, wirtinger, BraidWord};
use knotcert::forms::signature;
use knotcert::linalg::{det_bareiss, transpose};
use knotcert::polyalg::{
    alexander_from_seifert, conway_from_seifert, degree_d, divides, rational_roots, sturm_real_root_count, Bound,
    LaurentPolynomial,
};
use knotcert::seifert::{seifert_matrix, seifert_matrix_from_braid, seifert_surface, SeifertMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn letters(n: usize, positive: bool) -> impl Strategy<Value = i64> {
    (1..n as i64, any::<bool>()).prop_map(move |(i, s)| if s || positive { i } else { -i })
}

fn braid(positive: bool) -> impl Strategy<Value = BraidWord> {
    (2usize..=4)
        .prop_flat_map(move |n| (Just(n), prop::collection::vec(letters(n, positive), 0..=12)))
        .prop_filter_map("closure is a link", |(n, w)| BraidWord::new(n, w).ok())
}

fn small_poly() -> impl Strategy<Value = LaurentPolynomial> {
    (-3i64..=3, prop::collection::vec(-4i64..=4, 1..=4))
        .prop_map(|(low, c)| LaurentPolynomial::from_ascending(low, c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn skew_det(v: &SeifertMatrix) -> BigInt {
    let t = transpose(v.entries());
    let diff: Vec<Vec<BigInt>> =
        v.entries().iter().zip(&t).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
    det_bareiss(&diff)
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn alexander_is_normalized(b in braid(false)) {
        let v = seifert_matrix_from_braid(&b).unwrap();
        let delta = alexander_from_seifert(&v).unwrap();
        prop_assert!(delta.is_symmetric());
        prop_assert_eq!(delta.eval_at_one(), BigInt::from(1));
        prop_assert_eq!(skew_det(&v), BigInt::from(1));
    }

    #[test]
    fn conway_matches_alexander(b in braid(false)) {
        let v = seifert_matrix_from_braid(&b).unwrap();
        let delta = alexander_from_seifert(&v).unwrap();
        let conway = conway_from_seifert(&v).unwrap();
        prop_assert_eq!(conway.substitute_x(), delta.substitute_power(2));
        if det_bareiss(v.entries()) != BigInt::from(0) {
            prop_assert_eq!(conway.degree() as u64, degree_d(&delta).unwrap());
        }
    }

    #[test]
    fn connected_sum_is_multiplicative(a in braid(false), b in braid(false)) {
        let (va, vb) = (seifert_matrix_from_braid(&a).unwrap(), seifert_matrix_from_braid(&b).unwrap());
        let sum = va.direct_sum(&vb);
        prop_assert_eq!(
            alexander_from_seifert(&sum).unwrap(),
            &alexander_from_seifert(&va).unwrap() * &alexander_from_seifert(&vb).unwrap()
        );
        prop_assert_eq!(signature(&sum).unwrap(), signature(&va).unwrap() + signature(&vb).unwrap());
    }

    #[test]
    fn positive_braids_realize_genus(b in braid(true)) {
        let d = braid_to_pd(&b).unwrap();
        let surface = seifert_surface(&d).unwrap();
        prop_assert_eq!(surface.seifert_circle_count, b.strand_count());
        prop_assert_eq!(2 * surface.genus, b.len() + 1 - b.strand_count());
        let v = seifert_matrix(&d).unwrap();
        prop_assert_eq!(v.size(), 2 * surface.genus);
        let delta = alexander_from_seifert(&v).unwrap();
        prop_assert_eq!(degree_d(&delta).unwrap(), 2 * surface.genus as u64);
        let sigma = signature(&v).unwrap();
        prop_assert!(sigma.unsigned_abs() <= degree_d(&delta).unwrap());
    }

    #[test]
    fn diagram_from_braid(b in braid(false)) {
        let d = braid_to_pd(&b).unwrap();
        prop_assert_eq!(d.crossing_count(), b.len());
        prop_assert_eq!(is_positive_diagram(&d), b.is_positive());
        prop_assert_eq!(d.writhe(), b.letters().iter().map(|l| l.signum()).sum::<i64>());
        prop_assert_eq!(mirror(&mirror(&d)), d.clone());
        if d.crossing_count() > 0 {
            let w = wirtinger(&d).unwrap();
            prop_assert_eq!(w.generator_count, d.crossing_count());
            prop_assert_eq!(w.relators.len(), d.crossing_count());
            prop_assert!(w.check_abelianization().is_ok());
        }
    }

    #[test]
    fn mirror_negates_signature(b in braid(false)) {
        let d = braid_to_pd(&b).unwrap();
        let (v, m) = (seifert_matrix(&d).unwrap(), seifert_matrix(&mirror(&d)).unwrap());
        prop_assert_eq!(signature(&m).unwrap(), -signature(&v).unwrap());
        prop_assert_eq!(alexander_from_seifert(&m).unwrap(), alexander_from_seifert(&v).unwrap());
        prop_assert_eq!(signature(&v.mirror()).unwrap(), -signature(&v).unwrap());
    }

    #[test]
    fn seifert_input_never_certifies(b in braid(true)) {
        let v = seifert_matrix_from_braid(&b).unwrap();
        let r = full_report(&KnotPresentation::Seifert(SeifertMatrix::user_supplied(v.entries().clone()).unwrap()))
            .unwrap();
        prop_assert!(r.certificates.iter().all(|c| c.status == CertificateStatus::NotCertified));
    }

    #[test]
    fn larger_degree_is_obstructed(a in braid(true), b in braid(true)) {
        let ra = full_report(&KnotPresentation::Braid(a)).unwrap();
        let rb = full_report(&KnotPresentation::Braid(b)).unwrap();
        let r = ribbon_obstructions(&ra, &rb).unwrap();
        let degree = r.check("degree-bound").unwrap();
        prop_assert_eq!(degree.passed, ra.degree_d <= rb.degree_d);
        if ra.degree_d > rb.degree_d {
            prop_assert!(r.obstructed);
        }
    }

    #[test]
    fn products_are_divisible(p in small_poly(), q in small_poly()) {
        prop_assert!(divides(&p, &(&p * &q)).unwrap());
        prop_assert!(divides(&q, &(&p * &q)).unwrap());
    }

    #[test]
    fn linear_factors_are_found(
        factors in prop::collection::vec((1i64..=4, -4i64..=4).prop_filter("nonzero root", |f| f.1 != 0), 1..=3),
        extra in small_poly(),
    ) {
        let mut p = extra;
        for (a, b) in &factors {
            p = &p * &LaurentPolynomial::from_ascending(0, [-b, *a]);
        }
        let found = rational_roots(&p).unwrap();
        for (a, b) in &factors {
            let q = BigRational::new((*b).into(), (*a).into());
            prop_assert!(found.roots.iter().any(|w| w.root == q), "{} missing from {}", q, p);
        }
        for w in &found.roots {
            prop_assert_eq!(p.eval_rational(&w.root).unwrap(), BigRational::from_integer(0.into()));
        }
    }

    #[test]
    fn sturm_counts_constructed_roots(roots in prop::collection::btree_set((-6i64..=6).prop_filter("t = 0 is outside the domain", |r| *r != 0), 1..=5), cut in -6i64..=6) {
        let mut p = LaurentPolynomial::one();
        for r in &roots {
            p = &p * &LaurentPolynomial::from_ascending(0, [-r, 1]);
        }
        let below = roots.iter().filter(|&&r| r < cut).count();
        let above = roots.iter().filter(|&&r| r > cut).count();
        prop_assert_eq!(sturm_real_root_count(&p, &Bound::NegInfinity, &Bound::int(cut)).unwrap(), below);
        prop_assert_eq!(sturm_real_root_count(&p, &Bound::int(cut), &Bound::PosInfinity).unwrap(), above);
    }
}
