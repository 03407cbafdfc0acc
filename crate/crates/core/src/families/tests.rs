use super::*;
use crate::error::Error;

fn outcome(v: &Verification, id: &str) -> Outcome {
    v.check(id).unwrap_or_else(|| panic!("no check {id}")).outcome
}

#[test]
fn gamma_p_rejects_bad_primes() {
    assert!(matches!(gamma_p(4), Err(Error::NotPrime(4))));
    assert!(matches!(gamma_p(3), Err(Error::TooSmall(3))));
}

#[test]
fn gamma_p_degrees() {
    for p in [5, 7, 11] {
        assert_eq!(gamma_p(p).unwrap().field.degree() as u64, p - 1);
        let r = gamma_p_variant(p, GammaVariant::Repaired).unwrap();
        assert_eq!(r.field.degree() as u64, (p - 1) / 2);
        assert!(gamma_p(p).unwrap().sin_cos_fields_agree);
    }
}

#[test]
fn gamma5_signs_match_floats() {
    let data = gamma_p(5).unwrap();
    let places = crate::places::archimedean_places(&data.field).unwrap();
    assert!(places[0].is_identity());
    for v in &places {
        // ζ_20 ↦ ζ_20^t sends cos 2π/5 to cos 2πt/5
        let t = v.representative() as f64;
        let b = (2.0 * std::f64::consts::PI * t / 5.0).cos() - 1.0 + 32.0 / 25.0;
        let expected = if b > 0.0 { crate::cyclo::Sign::Positive } else { crate::cyclo::Sign::Negative };
        assert_eq!(v.sign(&data.b).unwrap(), expected, "t = {t}");
    }
}

#[test]
fn stated_gamma5_report() {
    let v = verify_gamma_p(5, &DEFAULT_Q_LIST, GammaVariant::Stated).unwrap();
    for id in ["sin-cos-field", "totally-real", "degree", "b-interval"] {
        assert_eq!(outcome(&v, id), Outcome::Pass, "{id}");
    }
    // b lies in the quadratic subfield, so its signs come in equal pairs
    assert_eq!(v.check("sign-pattern").unwrap().detail["pattern"], "+--+");
    assert_eq!(outcome(&v, "sign-pattern"), Outcome::Fail);
    assert_eq!(outcome(&v, "fuchsian"), Outcome::Fail);
    // j² = b_5 has denominator 25
    assert_eq!(outcome(&v, "order-closure"), Outcome::Fail);
    for q in DEFAULT_Q_LIST {
        assert_eq!(outcome(&v, &format!("period-{q}")), Outcome::Pass, "q = {q}");
    }
    assert_eq!(v.check("period-5").unwrap().detail["certificate"], "witness");
    assert_eq!(v.check("period-7").unwrap().detail["certificate"], "subfield");
}

#[test]
fn stated_gamma7_periods() {
    let v = verify_gamma_p(7, &DEFAULT_Q_LIST, GammaVariant::Stated).unwrap();
    for q in DEFAULT_Q_LIST {
        assert_eq!(outcome(&v, &format!("period-{q}")), Outcome::Pass, "q = {q}");
    }
}

#[test]
fn repaired_variant_passes_structural_checks() {
    for p in [5, 7] {
        let v = verify_gamma_p(p, &[], GammaVariant::Repaired).unwrap();
        assert!(v.all_passed(), "p = {p}: {:?}", v.failed().iter().map(|c| &c.id).collect::<Vec<_>>());
    }
}

#[test]
fn elkies_data() {
    let d = elkies().unwrap();
    assert_eq!(d.field.degree(), 3);
    assert!(d.trusted_ram_finite.is_empty());
    let ram = elkies_ramification(&d).unwrap();
    assert!(ram.is_complete());
    assert!(ram.ram_finite().is_empty());
    assert!(matches!(verify_elkies(13), Err(Error::Invalid(_))));
}

#[test]
fn elkies_report_passes() {
    let v = verify_elkies(60).unwrap();
    assert!(v.all_passed(), "{:?}", v.failed().iter().map(|c| &c.id).collect::<Vec<_>>());
    let rows = v.check("splitting-table").unwrap().detail["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 17);
    let at = |p: u64| rows.iter().find(|r| r["p"] == p).unwrap().clone();
    assert_eq!((at(13)["g"].as_u64(), at(13)["orbit"].as_u64()), (Some(3), Some(3)));
    assert_eq!((at(7)["e"].as_u64(), at(7)["g"].as_u64()), (Some(3), Some(1)));
    assert_eq!(at(11)["g"].as_u64(), Some(1));
}
