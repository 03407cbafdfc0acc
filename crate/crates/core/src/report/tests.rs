use super::*;
use crate::expr::parse_field_spec;
use crate::families::{elkies, verify_elkies};

fn validate(r: &Report) {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let instance: Value = serde_json::from_str(&r.to_json()).unwrap();
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{}: {errors:#?}", r.kind);
}

fn elkies_spec() -> FieldSpec {
    parse_field_spec("Qcos:7").unwrap()
}

#[test]
fn every_kind_validates() {
    let spec = elkies_spec();
    let alg = algebra_from_exprs(&spec, "c", "c").unwrap();
    let trusted = parse_trust(&spec, "empty").unwrap();
    let raw = ramification(&alg, None).unwrap();
    let ram = ramification(&alg, Some(&trusted)).unwrap();

    let reports = vec![
        field_report("field Qcos:7", &spec),
        split_report("split", &spec, 2, 50).unwrap(),
        ram_report("ram", &raw, None).unwrap(),
        ram_report("ram", &ram, Some(&trusted)).unwrap(),
        periods_report("periods", &ram, Some(&trusted), None).unwrap(),
        periods_report("periods", &raw, None, Some(20)).unwrap(),
        galois_report("galois", &ram, Some(&trusted), 3).unwrap(),
        verification_report("verify elkies", &verify_elkies(20).unwrap(), elkies().unwrap().field.describe()),
        error_report("ram", &parse_element("cos(1/7").unwrap_err()),
    ];
    for r in &reports {
        validate(r);
    }
    assert_eq!(reports[2].status, Status::Undetermined);
    assert_eq!(reports[3].status, Status::Pass);
    assert_eq!(reports[4].status, Status::Pass);
    assert_eq!(reports[6].status, Status::Pass);
    assert_eq!(reports[7].status, Status::Pass);
    assert_eq!(reports[8].results["offset"], 8);
}

#[test]
fn schema_rejects_malformed_reports() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let good: Value = serde_json::from_str(&field_report("field", &elkies_spec()).to_json()).unwrap();
    assert!(validator.is_valid(&good));
    let mut bad = good.clone();
    bad["schema"] = json!("afg-report/0");
    assert!(!validator.is_valid(&bad));
    let mut bad = good.clone();
    bad["status"] = json!("maybe");
    assert!(!validator.is_valid(&bad));
    let mut bad = good;
    bad["results"]["minimal_conductor"] = json!(-1);
    assert!(!validator.is_valid(&bad));
}

#[test]
fn reports_are_deterministic() {
    let run = || {
        let spec = elkies_spec();
        let alg = algebra_from_exprs(&spec, "c", "c").unwrap();
        let ram = ramification(&alg, Some(&[])).unwrap();
        periods_report("periods", &ram, Some(&[]), None).unwrap().to_json()
    };
    assert_eq!(run(), run());
}

#[test]
fn trust_tokens() {
    let spec = elkies_spec();
    assert!(parse_trust(&spec, "empty").unwrap().is_empty());
    assert_eq!(parse_trust(&spec, "13").unwrap().len(), 3);
    assert_eq!(parse_trust(&spec, "13:1,13:1,7").unwrap().len(), 2);
    assert!(parse_trust(&spec, "13:x").is_err());
    assert!(parse_trust(&spec, "12").is_err());
    assert!(parse_trust(&spec, "13:7").is_err());
}

#[test]
fn text_carries_the_json_leaves() {
    let spec = elkies_spec();
    let alg = algebra_from_exprs(&spec, "c", "c").unwrap();
    let ram = ramification(&alg, Some(&[])).unwrap();
    let r = periods_report("periods", &ram, Some(&[]), None).unwrap();
    let text = render_text(&r);
    assert!(text.starts_with("periods [pass] periods (afg-report/1)"));
    assert!(text.contains("results.members = [1, 2, 3, 4, 6, 7, 14]"));
    assert!(text.contains("results.bound = 72"));
    for n in &r.notes {
        assert!(text.contains(n.as_str()));
    }
}

#[test]
fn algebra_errors() {
    let spec = elkies_spec();
    assert!(matches!(algebra_from_exprs(&spec, "c", "0"), Err(Error::Invalid(_)) | Err(Error::ZeroElement)));
    assert!(matches!(algebra_from_exprs(&spec, "zeta", "c"), Err(Error::NotInField)));
    assert!(matches!(algebra_from_exprs(&spec, "c +", "c"), Err(Error::Parse { .. })));
}
