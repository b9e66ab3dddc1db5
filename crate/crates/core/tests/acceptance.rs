//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines always reach the test log.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use knotcert::certify::{full_report, ribbon_obstructions, InvariantReport, KnotPresentation};
use knotcert::cli::{parse_table, KnotTableEntry};
use knotcert::corpus::starter_table;
use knotcert::diagram::{parse_braid, wirtinger};
use knotcert::forms::{invariant_factors, modules_isomorphic, signature_bound_check, ModuleInvariantFactors};
use knotcert::polyalg::{
    alexander_from_fox, alexander_from_seifert, rational_roots, sturm_real_root_count, Bound, LaurentPolynomial, QPoly,
};
use knotcert::seifert::seifert_matrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn corpus() -> Vec<(KnotTableEntry, KnotPresentation)> {
    parse_table(&starter_table())
        .into_iter()
        .map(|row| {
            let e = row.expect("corpus rows parse");
            let p = e.presentation().expect("corpus payloads parse");
            (e, p)
        })
        .collect()
}

fn reports() -> Vec<(String, KnotPresentation, InvariantReport)> {
    corpus()
        .into_iter()
        .map(|(e, p)| {
            let r = full_report(&p).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            (e.name, p, r)
        })
        .collect()
}

fn named(reports: &[(String, KnotPresentation, InvariantReport)], name: &str) -> InvariantReport {
    reports.iter().find(|r| r.0 == name).unwrap_or_else(|| panic!("no {name}")).2.clone()
}

fn braid(s: &str) -> InvariantReport {
    full_report(&KnotPresentation::Braid(parse_braid(s).unwrap())).unwrap()
}

fn oracle_equivalence() {
    let mut diagrams = 0;
    for (e, p) in corpus() {
        let Some(d) = p.diagram().unwrap() else { continue };
        diagrams += 1;
        let seifert = alexander_from_seifert(&seifert_matrix(&d).unwrap()).unwrap();
        let fox = if d.crossing_count() == 0 {
            LaurentPolynomial::one()
        } else {
            alexander_from_fox(&wirtinger(&d).unwrap()).unwrap()
        };
        assert_eq!(seifert, fox, "{}", e.name);
    }
    assert!(diagrams > 200);
}

fn golden_values() {
    let t = braid("2: 1 1 1");
    assert_eq!(t.alexander.to_string(), "t - 1 + t^-1");
    assert_eq!(t.conway.to_string(), "z^2 + 1");
    assert_eq!((t.signature, t.degree_d), (-2, 2));
    assert_eq!(t.invariant_factors.unwrap().factors, vec![QPoly::from_ints([1, -1, 1])]);
    let t25 = braid("2: 1 1 1 1 1");
    assert_eq!(t25.alexander.to_string(), "t^2 - t + 1 - t^-1 + t^-2");
    assert_eq!(t25.signature, -4);
    assert_eq!(t25.conway.to_string(), "z^4 + 3z^2 + 1");
}

fn no_rational_roots_for_positive_braids() {
    let mut random = 0;
    for (name, p, r) in reports() {
        if !name.starts_with("random-") {
            continue;
        }
        random += 1;
        assert!(matches!(&p, KnotPresentation::Braid(b) if b.is_positive()), "{name}");
        assert!(r.rational_roots.is_empty(), "{name}: {}", r.alexander);
        assert!(r.conway.all_nonnegative(), "{name}: {}", r.conway);
        assert_eq!(r.real_roots.positive, 0, "{name}: {}", r.alexander);
    }
    assert_eq!(random, 200);
}

fn root_witnesses() {
    for (name, _, r) in reports() {
        for w in &r.rational_roots.roots {
            let a = w.witness.clone().unwrap_or_else(|| panic!("{name}: root {} has no witness", w.root));
            assert!(!a.is_zero() && a != BigInt::from(1));
            assert_eq!(&w.root * BigRational::from_integer(a.clone()), BigRational::from_integer(a - 1));
        }
    }
    let six = rational_roots(&LaurentPolynomial::from_ascending(-1, [-2, 5, -2])).unwrap();
    let got: Vec<(String, String)> =
        six.roots.iter().map(|w| (w.root.to_string(), w.witness.as_ref().unwrap().to_string())).collect();
    assert_eq!(got, vec![("1/2".to_string(), "2".to_string()), ("2".to_string(), "-1".to_string())]);
}

fn signature_bound_boundary() {
    assert!(!signature_bound_check(-4, 8).unwrap());
    let mut checked = 0;
    for (name, _, r) in reports() {
        if r.is_positive() && r.degree_d / 2 <= 4 {
            checked += 1;
            assert!(signature_bound_check(r.signature, r.degree_d as i64).unwrap(), "{name}");
        }
    }
    assert!(checked > 100);
}

fn negative_real_root_of_10_139() {
    let r = named(&reports(), "10_139");
    assert_eq!(r.alexander.to_string(), "t^4 - t^3 + 2t - 3 + 2t^-1 - t^-3 + t^-4");
    assert!(r.rational_roots.is_empty());
    let negative = sturm_real_root_count(&r.alexander, &Bound::NegInfinity, &Bound::int(0)).unwrap();
    assert!(negative >= 1);
    // independent check: a sign change of t^4 * delta between negative integers
    let p = r.alexander.to_qpoly();
    let sign = |x: i64| p.eval(&BigRational::from_integer(x.into())).signum();
    assert!((-5..-1).any(|x| sign(x) != sign(x + 1) && !sign(x).is_zero()));
}

fn invariant_factor_machinery() {
    for (name, _, r) in reports() {
        let Some(f) = &r.invariant_factors else { continue };
        let delta = r.alexander.to_qpoly();
        assert_eq!(f.product(), delta.monic(), "{name}");
    }
    let f = QPoly::from_ints([1, -1, 1]);
    let double = ModuleInvariantFactors { factors: vec![f.clone(), f.clone()] };
    let square = ModuleInvariantFactors { factors: vec![&f * &f] };
    assert!(!modules_isomorphic(&double, &square));
    let t = parse_braid("2: 1 1 1").unwrap();
    let v = knotcert::seifert::seifert_matrix_from_braid(&t).unwrap();
    assert_eq!(invariant_factors(&v.direct_sum(&v)).unwrap(), double);
}

fn ribbon_obstruction_sanity() {
    let all = reports();
    let unknot = named(&all, "unknot");
    let trefoil = named(&all, "trefoil");
    let six = named(&all, "6_1");
    let r = ribbon_obstructions(&unknot, &trefoil).unwrap();
    assert!(!r.check("alexander-equality").unwrap().passed);
    for (name, _, k) in &all {
        let r = ribbon_obstructions(k, k).unwrap();
        assert!(!r.obstructed, "{name}");
    }
    let r = ribbon_obstructions(&trefoil, &six).unwrap();
    assert!(!r.check("alexander-divisibility").unwrap().passed);
}

fn scan_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("starter.knots");
    std::fs::write(&table, starter_table()).unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "8"] {
        let report = dir.path().join(format!("report-{jobs}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_knotcert"))
            .args(["--format", "json", "scan"])
            .arg(&table)
            .arg("--report")
            .arg(&report)
            .args(["--jobs", jobs])
            .output()
            .unwrap();
        assert!(status.status.success());
        outputs.push(std::fs::read(&report).unwrap());
    }
    assert!(!outputs[0].is_empty());
    assert!(outputs[0] == outputs[1], "reports differ between jobs = 1 and jobs = 8");
}

fn main() {
    let criteria: [(&str, fn()); 9] = [
        ("Seifert and Fox Alexander polynomials agree on every corpus diagram", oracle_equivalence),
        ("trefoil and T(2,5) golden values", golden_values),
        (
            "200 random positive braids: no rational roots, nonnegative Conway, no roots in (0, inf)",
            no_rational_roots_for_positive_braids,
        ),
        ("every rational root has an integer witness a with q = (a - 1)/a; 6_1 roots", root_witnesses),
        ("signature bound: (-4, 8) fails, positive corpus entries of genus <= 4 pass", signature_bound_boundary),
        ("10_139 has a negative real root and no rational roots", negative_real_root_of_10_139),
        (
            "invariant factors multiply to the Alexander polynomial; [f, f] differs from [f^2]",
            invariant_factor_machinery,
        ),
        ("ribbon obstruction sanity", ribbon_obstruction_sanity),
        ("scan reports identical for jobs = 1 and jobs = 8", scan_determinism),
    ];
    let mut failures = 0;
    for (i, (what, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        let ok = outcome.is_ok() && secs < 10.0;
        if !ok {
            failures += 1;
        }
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} ({secs:.2}s) {what}", i + 1);
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
