//! Three operations for the static page in `www/`: splitting of primes,
//! ramification, and the period set. Each returns a JSON report string; the
//! report carries `kind: "error"` when the input is rejected.

use afg_core::expr::parse_field_spec;
use afg_core::report::{self, Report};
use afg_core::Error;
use wasm_bindgen::prelude::*;

const MAX_PRIME: u64 = 5_000;

fn finish(command: &str, r: Result<Report, Error>) -> String {
    match r {
        Ok(r) => r.to_json(),
        Err(e) => report::error_report(command, &e).to_json(),
    }
}

fn trust(field: &afg_core::expr::FieldSpec, src: &str) -> Result<Option<Vec<afg_core::places::FinitePlace>>, Error> {
    if src.trim().is_empty() {
        Ok(None)
    } else {
        report::parse_trust(field, src).map(Some)
    }
}

pub fn split_json(field: &str, lo: u32, hi: u32) -> String {
    let command = format!("split --field {field} --primes {lo}..{hi}");
    finish(
        &command,
        (|| {
            if u64::from(hi) > MAX_PRIME || lo > hi {
                return Err(Error::Invalid(format!("prime range must lie within 2..{MAX_PRIME}")));
            }
            report::split_report(&command, &parse_field_spec(field)?, lo.into(), hi.into())
        })(),
    )
}

pub fn ram_json(field: &str, a: &str, b: &str, trust_ramf: &str) -> String {
    let command = format!("ram --field {field} --a {a} --b {b} --trust-ramf {trust_ramf}");
    finish(
        &command,
        (|| {
            let spec = parse_field_spec(field)?;
            let alg = report::algebra_from_exprs(&spec, a, b)?;
            let trusted = trust(&spec, trust_ramf)?;
            let ram = report::ramification(&alg, trusted.as_deref())?;
            report::ram_report(&command, &ram, trusted.as_deref())
        })(),
    )
}

pub fn periods_json(field: &str, a: &str, b: &str, trust_ramf: &str) -> String {
    let command = format!("periods --field {field} --a {a} --b {b} --trust-ramf {trust_ramf}");
    finish(
        &command,
        (|| {
            let spec = parse_field_spec(field)?;
            if spec.field.degree() > 12 {
                return Err(Error::Invalid("the page is limited to fields of degree at most 12".into()));
            }
            let alg = report::algebra_from_exprs(&spec, a, b)?;
            let trusted = trust(&spec, trust_ramf)?;
            let ram = report::ramification(&alg, trusted.as_deref())?;
            report::periods_report(&command, &ram, trusted.as_deref(), None)
        })(),
    )
}

#[wasm_bindgen]
pub fn split(field: &str, lo: u32, hi: u32) -> String {
    split_json(field, lo, hi)
}

#[wasm_bindgen]
pub fn ramification(field: &str, a: &str, b: &str, trust_ramf: &str) -> String {
    ram_json(field, a, b, trust_ramf)
}

#[wasm_bindgen]
pub fn periods(field: &str, a: &str, b: &str, trust_ramf: &str) -> String {
    periods_json(field, a, b, trust_ramf)
}
