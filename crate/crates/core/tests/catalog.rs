use cbseries::catalog::{params, Catalog, CatalogError, Method, Params, Verdict, VerifyConfig, REPORT_FIELDS};
use cbseries::exact::{ConstName, ConstVec, Rational};
use cbseries::numerics::{bits_for_digits, eval_constvec, ten_pow_neg, BigFloat};
use proptest::prelude::*;
use rug::Integer;

// --- independent term oracles, written straight from the summands ---

fn c(n: i64, k: i64) -> Rational {
    assert!(0 <= k && k <= n, "C({n},{k})");
    // Pascal-free product formula, independent of the crate's binomial
    let mut num = Integer::from(1);
    let mut den = Integer::from(1);
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    Rational::from((num, den))
}

fn q(p: i64, d: i64) -> Rational {
    Rational::from((p, d))
}

fn pow4(e: i64) -> Rational {
    let p = Rational::from(Integer::from(Integer::u_pow_u(4, e.unsigned_abs() as u32)));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// `C(4n,2n) / (4^n (2n+1)(2n+2r+1) C(2n+2r,n+r))`
fn kunle1(r: i64, n: i64) -> Rational {
    c(4 * n, 2 * n) * pow4(-n) / q((2 * n + 1) * (2 * n + 2 * r + 1), 1) / c(2 * n + 2 * r, n + r)
}

fn kunle2(r: i64, n: i64) -> Rational {
    c(4 * n - 2, 2 * n - 1) * pow4(-n) / q(n * (2 * n + 2 * r - 1), 1) / c(2 * n + 2 * r - 2, n + r - 1)
}

fn b_family(r: i64, n: i64) -> Rational {
    let lin = q(n, (2 * n - 1) * (2 * n - 1) * (4 * n + 2 * r - 1));
    lin * pow4(n) * c(2 * n, n) / c(4 * n + 2 * r - 2, 2 * n + r - 1)
}

fn wp_quartic(r: i64, n: i64) -> Rational {
    let lin = q(n, (2 * n + 2 * r + 3) * (2 * n - 1) * (2 * n - 1) * (2 * n + 1) * (2 * n + 3));
    lin * c(2 * n, n) / c(2 * n + 2 * r + 2, n + r + 1)
}

fn sec6(r: i64, n: i64) -> Rational {
    // 1/(4^n n (n+3/2)) C(4n+2r, 2n+r) / C(2n,n)
    pow4(-n) / (q(n, 1) * q(2 * n + 3, 2)) * c(4 * n + 2 * r, 2 * n + r) / c(2 * n, n)
}

fn bhandari1(n: i64) -> Rational {
    pow4(n) / q((2 * n - 1) * (2 * n - 1), 1) * c(2 * n, n) / c(4 * n, 2 * n)
}

fn tol8() -> BigFloat {
    ten_pow_neg(8, 64)
}

#[test]
fn term_at_examples() {
    let cat = Catalog::standard();
    assert_eq!(cat.term_at("thm-kunle1", &params([("r", 0)]), 1).unwrap(), q(1, 12));
    assert_eq!(cat.term_at("intro-bhandari-1", &Params::new(), 0).unwrap(), q(1, 1));
    // 1/(5*1*3*5) * C(2,1)/C(4,2)
    assert_eq!(cat.term_at("thm-5.0.2", &params([("r", 0)]), 1).unwrap(), q(1, 225));
}

#[test]
fn terms_match_independent_transcriptions() {
    let cat = Catalog::standard();
    for r in 0..=6 {
        for n in 1..=40 {
            let p = params([("r", r)]);
            assert_eq!(cat.term_at("thm-kunle1", &p, n).unwrap(), kunle1(r, n), "kunle1 r={r} n={n}");
            assert_eq!(cat.term_at("thm-5.0.2", &p, n).unwrap(), wp_quartic(r, n), "wp quartic r={r} n={n}");
            if r >= 1 {
                assert_eq!(cat.term_at("thm-kunle2", &p, n).unwrap(), kunle2(r, n), "kunle2 r={r} n={n}");
                assert_eq!(cat.term_at("thm-2.1.4", &p, n).unwrap(), b_family(r, n), "b family r={r} n={n}");
            }
            if r >= 3 {
                assert_eq!(cat.term_at("thm-sec6", &p, n).unwrap(), sec6(r, n), "sec6 r={r} n={n}");
            }
        }
    }
    for n in 0..=40 {
        assert_eq!(cat.term_at("intro-bhandari-1", &Params::new(), n).unwrap(), bhandari1(n));
    }
}

#[test]
fn ratio_iteration_equals_direct_evaluation() {
    let cat = Catalog::standard();
    for s in &cat.series {
        for values in &s.sweep {
            let term = (s.term)(values);
            for item in term.iter_from(s.start_index).take(200) {
                let (n, t) = item.unwrap();
                assert_eq!(t, term.at(n).unwrap(), "{} {values:?} n={n}", s.id);
            }
        }
    }
    for g in &cat.gf {
        for values in &g.sweep {
            for x in &g.samples {
                let term = g.lhs_term(values, x);
                for item in term.iter_from(g.start_index).take(100) {
                    let (n, t) = item.unwrap();
                    assert_eq!(t, term.at(n).unwrap(), "{} {values:?} x={x} n={n}", g.id);
                }
            }
        }
    }
}

#[test]
fn pochhammer_form_matches_binomial_form() {
    let cat = Catalog::standard();
    for r in 0..=4 {
        let p = params([("r", r)]);
        for n in 1..=100 {
            let binom = cat.term_at("thm-5.0.2", &p, n).unwrap();
            let poch = cat.term_at("thm-5.0.2-pochhammer-form", &p, n).unwrap();
            assert_eq!(poch * pow4(-(r + 1)), binom, "r={r} n={n}");
        }
    }
}

#[test]
fn term_below_start_is_rejected() {
    let cat = Catalog::standard();
    let err = cat.term_at("thm-kunle1", &params([("r", 0)]), 0).unwrap_err();
    assert!(matches!(err, CatalogError::ParamOutOfDomain { .. }), "{err}");
}

#[test]
fn rhs_closed_examples() {
    let cat = Catalog::standard();
    let k = cat.rhs_closed("thm-kunle1-corollary", &params([("r", 0)])).unwrap();
    assert_eq!(k, "3 - 2*sqrt2".parse::<ConstVec>().unwrap());
    let w = cat.rhs_closed("thm-5.0.2-example", &params([("r", 0)])).unwrap();
    assert_eq!(w, ConstVec::term(q(1, 2048), ConstName::PiSq));
    // (8/9)(209 - 110 sqrt2 + 102 ln2 - 102 ln(1+sqrt2))
    let s = cat.rhs_closed("thm-sec6", &params([("r", 3)])).unwrap();
    let expected = ConstVec::from_terms([
        (q(8 * 209, 9), ConstName::One),
        (q(-8 * 110, 9), ConstName::Sqrt2),
        (q(8 * 102, 9), ConstName::Ln2),
        (q(-8 * 102, 9), ConstName::Ln1pSqrt2),
    ]);
    assert_eq!(s, expected);
}

#[test]
fn rhs_closed_errors() {
    let cat = Catalog::standard();
    let err = cat.rhs_closed("thm-kunle2", &params([("r", 0)])).unwrap_err();
    assert!(err.to_string().contains("parameter out of domain (r ≥ 1)"), "{err}");
    assert!(matches!(cat.rhs_closed("intro-bhandari-3", &Params::new()), Err(CatalogError::NoClosedForm(_))));
    assert!(matches!(cat.rhs_closed("nope", &Params::new()), Err(CatalogError::UnknownIdentity(_))));
    assert!(matches!(cat.rhs_closed("thm-kunle1", &Params::new()), Err(CatalogError::MissingParam { .. })));
    assert!(matches!(
        cat.rhs_closed("thm-kunle1", &params([("r", 1), ("s", 2)])),
        Err(CatalogError::UnexpectedParam { .. })
    ));
    assert!(matches!(
        cat.rhs_closed("gf-lemma-2.0.1", &Params::new()),
        Err(CatalogError::WrongKind { .. })
    ));
    assert!(matches!(
        cat.rhs_closed("thm-sec6-example", &params([("r", 6)])),
        Err(CatalogError::ParamOutOfDomain { .. })
    ));
}

#[test]
fn listing() {
    let cat = Catalog::standard();
    let list = cat.list();
    let ids: Vec<&str> = list.iter().map(|d| d.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
    let find = |id: &str| list.iter().find(|d| d.id == id).unwrap();
    assert_eq!(find("thm-kunle1").params, "r ≥ 0");
    assert_eq!(find("thm-5.0.1").params, "m ≥ 0, r ≥ 1");
    assert_eq!(find("gf-lemma-2.0.3").x_domain.as_deref(), Some("[0, 4)"));
    for id in [
        "intro-bhandari-1",
        "intro-bhandari-2",
        "intro-bhandari-3",
        "thm-2.1.4",
        "thm-2.1.5",
        "thm-2.1.6",
        "thm-kunle1",
        "thm-kunle2",
        "thm-5.0.1",
        "coro1",
        "thm-5.0.2",
        "thm-5.0.3",
        "thm-5.0.4",
        "thm-5.0.5",
        "thm-5.0.2-pochhammer-form",
        "thm-sec6",
        "gf-lemma-2.0.1",
        "gf-lemma-2.0.2",
        "gf-lemma-2.0.3",
        "gf-lemma-2.0.4",
        "gf-lemma-2.0.6",
        "gf-buhari",
        "gf-G1t",
        "gf-G2t",
        "gf-boyadzhiev",
    ] {
        assert!(ids.contains(&id), "{id} missing");
    }
    assert!(Catalog::empty().list().is_empty());
}

#[test]
fn verify_series_examples() {
    let cat = Catalog::standard();
    let r = cat.verify_series("thm-kunle1-corollary", &params([("r", 0)]), &tol8(), 5000, 60).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.abs_discrepancy < 1e-8);
    assert_eq!(r.reference, eval_constvec(&"3 - 2*sqrt2".parse().unwrap(), 60));
    assert!(!r.offset_note);
    assert!(r.terms_used <= 5000);

    let r = cat.verify_series("thm-2.1.5-example", &params([("r", 1)]), &tol8(), 5000, 60).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    // (2 + 2 sqrt2)/225 = 0.0214591...
    let expected = (2.0 + 2.0 * 2f64.sqrt()) / 225.0;
    assert!((r.estimate.to_f64() - expected).abs() < 1e-12);
}

#[test]
fn kunle1_with_2000_terms() {
    let cat = Catalog::standard();
    let r = cat.verify_series("thm-kunle1", &params([("r", 0)]), &tol8(), 2000, 60).unwrap();
    assert!(r.passed());
    assert!(r.abs_discrepancy < 1e-8);
}

#[test]
fn verify_series_rejects_bad_config() {
    let cat = Catalog::standard();
    let p = params([("r", 0)]);
    assert!(matches!(
        cat.verify_series("thm-kunle1", &p, &tol8(), 99, 60),
        Err(CatalogError::InvalidConfig(_))
    ));
    assert!(matches!(
        cat.verify_series("thm-kunle1", &p, &BigFloat::with_val(64, 0), 1000, 60),
        Err(CatalogError::InvalidConfig(_))
    ));
    assert!(matches!(
        cat.verify_series("gf-buhari", &Params::new(), &tol8(), 1000, 60),
        Err(CatalogError::WrongKind { .. })
    ));
}

#[test]
fn negative_control() {
    let base = Catalog::standard();
    let entry = base.series_entry("thm-kunle1-corollary").unwrap();
    let mut cat = Catalog::empty();
    cat.insert_series(entry.perturbed(q(1, 1000)));
    let r = cat.verify_series("thm-kunle1-corollary", &params([("r", 0)]), &tol8(), 5000, 60).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    assert!((r.abs_discrepancy.to_f64() - 1e-3).abs() < 1e-9);
    // the same entry inside a batch run also fails
    let config = VerifyConfig {
        max_terms: 2000,
        jobs: 2,
        ..VerifyConfig::default()
    };
    let reports = cat.verify_all(&config).unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| !r.passed()));
}

#[test]
fn verbatim_start_index_is_flagged() {
    let cat = Catalog::standard();
    let r = cat.verify_series("intro-bhandari-1", &Params::new(), &tol8(), 5000, 60).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    assert!(r.offset_note);
    // the n = 0 term is exactly 1
    assert!((r.abs_discrepancy.to_f64() - 1.0).abs() < 1e-8);
    let fixed = cat.verify_series("intro-bhandari-1-from-1", &Params::new(), &tol8(), 5000, 60).unwrap();
    assert!(fixed.passed());
    // 4(sqrt2 - 1)
    assert!((fixed.reference.to_f64() - 4.0 * (2f64.sqrt() - 1.0)).abs() < 1e-14);

    let g = cat
        .verify_gf("gf-G2-lemma-verbatim", &Params::new(), &q(1, 2), 200, 40)
        .unwrap();
    assert_eq!(g.verdict, Verdict::Fail);
    assert!(g.offset_note);
}

#[test]
fn empty_catalog_verifies_nothing() {
    let reports = Catalog::empty().verify_all(&VerifyConfig::default()).unwrap();
    assert!(reports.is_empty());
}

#[test]
fn small_budget_fails_slow_entries() {
    let config = VerifyConfig {
        max_terms: 100,
        ..VerifyConfig::default()
    };
    let reports = Catalog::standard().verify_all(&config).unwrap();
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|r| r.id == "thm-kunle1"));
    assert!(failed.iter().all(|r| r.non_convergence.is_some()), "failures carry a non-convergence note");
}

#[test]
fn batch_is_deterministic_and_ordered() {
    let cat = Catalog::standard();
    let mut config = VerifyConfig {
        tol: ten_pow_neg(4, 64),
        max_terms: 2000,
        jobs: 1,
        ..VerifyConfig::default()
    };
    let a = cat.verify_all(&config).unwrap();
    config.jobs = 3;
    let b = cat.verify_all(&config).unwrap();
    let c = cat.verify_all(&config).unwrap();
    assert_eq!(a, b);
    assert_eq!(b, c);
    assert!(a.len() >= 60);
    assert!(a.iter().all(|r| r.passed()), "{:?}", a.iter().find(|r| !r.passed()));
    assert!(a.windows(2).all(|w| w[0].id <= w[1].id));
    // numeric parameter order, not lexicographic
    let kunle2: Vec<&str> = a
        .iter()
        .filter(|r| r.id == "thm-kunle2")
        .map(|r| r.params["r"].as_str())
        .collect();
    assert_eq!(kunle2, ["1", "2", "3", "4", "5"]);
    assert!(a.iter().all(|r| !r.id.ends_with("verbatim") && r.id != "intro-bhandari-1"));
}

#[test]
fn report_serializes_the_fixed_schema() {
    let cat = Catalog::standard();
    let r = cat.verify_series("thm-5.0.4-example", &params([("r", 0)]), &tol8(), 1000, 40).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    let mut expected = REPORT_FIELDS.to_vec();
    expected.sort_unstable();
    assert_eq!(keys, expected);
    for f in ["estimate", "reference", "abs_discrepancy"] {
        let s = obj[f].as_str().unwrap();
        let mantissa = s.trim_start_matches('-').split('e').next().unwrap().replace('.', "");
        assert_eq!(mantissa.len(), 40, "{f}: {s}");
    }
    assert_eq!(obj["method"], r.method.as_str());
    assert_eq!(r.record().len(), REPORT_FIELDS.len());
}

#[test]
fn gf_examples() {
    let cat = Catalog::standard();
    let r = cat.verify_gf("gf-lemma-2.0.4", &Params::new(), &q(1, 2), 200, 30).unwrap();
    assert!(r.passed());
    assert_eq!(r.method, Method::Exact);
    // 1 - x^2/6 - sqrt(1-x^2)/2 - arcsin(x)/(2x) at x = 1/2
    let x = 0.5f64;
    let oracle = 1.0 - x * x / 6.0 - (1.0 - x * x).sqrt() / 2.0 - x.asin() / (2.0 * x);
    assert!((r.estimate.to_f64() - oracle).abs() < 1e-15);

    // sin y = 1/2, y = pi/6: 1/cos(pi/12)
    let r = cat.verify_gf("gf-G2t", &Params::new(), &q(1, 2), 200, 30).unwrap();
    assert!(r.passed());
    let oracle = 1.0 / (std::f64::consts::PI / 12.0).cos();
    assert!((r.reference.to_f64() - oracle).abs() < 1e-15);

    let r = cat.verify_gf("gf-boyadzhiev", &params([("m", 2)]), &q(1, 8), 200, 30).unwrap();
    assert!(r.passed());
    assert_eq!(r.params["x"], "1/8");
    assert_eq!(r.params["m"], "2");
}

#[test]
fn gf_domain_guards() {
    let cat = Catalog::standard();
    let none = Params::new();
    for (id, x) in [
        ("gf-lemma-2.0.3", q(4, 1)),
        ("gf-lemma-2.0.3", q(-1, 2)),
        ("gf-lemma-2.0.1", q(1, 1)),
        ("gf-G1", q(0, 1)),
    ] {
        assert!(
            matches!(cat.verify_gf(id, &none, &x, 100, 30), Err(CatalogError::DomainError { .. })),
            "{id} at {x}"
        );
    }
    assert!(matches!(
        cat.verify_gf("gf-boyadzhiev", &params([("m", 0)]), &q(1, 4), 100, 30),
        Err(CatalogError::DomainError { .. })
    ));
    assert!(matches!(
        cat.verify_gf("gf-lemma-2.0.3", &none, &q(1, 1), 49, 30),
        Err(CatalogError::InvalidConfig(_))
    ));
}

#[test]
fn truncation_shortfall_is_reported() {
    // at x = 7/2 this generating series converges like (7/8)^n: 50 terms are far
    // from 30 digits
    let cat = Catalog::standard();
    let r = cat.verify_gf("gf-lemma-2.0.3", &Params::new(), &q(7, 2), 50, 30).unwrap();
    assert!(!r.passed());
    assert!(r.non_convergence.is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kunle_terms_match_oracle(r in 1i64..30, n in 1i64..300) {
        let cat = Catalog::standard();
        let p = params([("r", r)]);
        prop_assert_eq!(cat.term_at("thm-kunle1", &p, n).unwrap(), kunle1(r, n));
        prop_assert_eq!(cat.term_at("thm-kunle2", &p, n).unwrap(), kunle2(r, n));
    }

    #[test]
    fn series_terms_are_positive_and_decreasing(r in 1i64..8, n in 2i64..400) {
        let cat = Catalog::standard();
        let p = params([("r", r)]);
        for id in ["thm-2.1.4", "thm-kunle1", "thm-5.0.2", "thm-5.0.4", "coro1"] {
            let a = cat.term_at(id, &p, n).unwrap();
            let b = cat.term_at(id, &p, n + 1).unwrap();
            prop_assert!(a > 0 && b > 0 && b < a, "{} r={} n={}", id, r, n);
        }
    }

    #[test]
    fn perturbation_moves_reference_exactly(num in -1000i64..1000, r in 0i64..4) {
        prop_assume!(num != 0);
        let cat = Catalog::standard();
        let entry = cat.series_entry("thm-kunle1").unwrap();
        let delta = q(num, 1_000_000);
        let shifted = entry.perturbed(delta.clone());
        let mut one = Catalog::empty();
        one.insert_series(shifted);
        let p = params([("r", r)]);
        let diff = one.rhs_closed("thm-kunle1", &p).unwrap() - cat.rhs_closed("thm-kunle1", &p).unwrap();
        prop_assert_eq!(diff, ConstVec::rational(delta));
    }
}

#[test]
fn tolerance_precision_is_respected() {
    // a tighter tolerance than 1e-8 is honoured through the working precision
    let cat = Catalog::standard();
    let tol = ten_pow_neg(15, bits_for_digits(40));
    let r = cat.verify_series("thm-5.0.4-example", &params([("r", 0)]), &tol, 20_000, 60).unwrap();
    assert!(r.passed(), "{}", r.abs_discrepancy);
}
