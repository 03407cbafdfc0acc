use super::Bindings;
use crate::cyclo::{cos_element, sin_element, AbelianField, CycloElement};
use crate::error::{Error, Result};
use num_rational::BigRational;

/// A field named on the command line, with the names usable in elements.
#[derive(Clone)]
pub struct FieldSpec {
    pub source: String,
    pub field: AbelianField,
    pub bindings: Bindings,
}

fn number(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .ok()
        .filter(|n| (1..=100_000).contains(n))
        .ok_or_else(|| Error::Invalid(format!("{what}: expected an integer in 1..=100000, got {s:?}")))
}

fn two_cos(n: u64) -> CycloElement {
    cos_element(1, n).scale(&BigRational::from_integer(2.into()))
}

/// `Qcos:n`, `Qzeta+:n`: Q(cos 2π/n), with `c` = 2cos 2π/n.
/// `Qsin:n`: Q(sin 2π/n), with `s` = sin 2π/n and `c` = 2cos 2π/n.
/// `custom:N;h1,h2,...`: the subfield of Q(ζ_N) fixed by ⟨h1, h2, ...⟩.
/// Every spec also binds `zeta` = ζ_N, which lies in k only when k = Q(ζ_N).
pub fn parse_field_spec(src: &str) -> Result<FieldSpec> {
    let (kind, arg) = src
        .split_once(':')
        .ok_or_else(|| Error::Invalid(format!("field spec {src:?}: expected KIND:ARG")))?;
    let mut bindings = Bindings::new();
    let field = match kind {
        "Qcos" | "Qzeta+" => {
            let n = number(arg, kind)?;
            bindings.insert("c".into(), two_cos(n));
            if kind == "Qcos" {
                AbelianField::cos_field(n)
            } else {
                AbelianField::real_cyclotomic(n)
            }
        }
        "Qsin" => {
            let n = number(arg, kind)?;
            bindings.insert("c".into(), two_cos(n));
            bindings.insert("s".into(), sin_element(1, n));
            AbelianField::sin_field(n)
        }
        "custom" => {
            let (n, gens) = arg.split_once(';').unwrap_or((arg, ""));
            let n = number(n, "conductor")?;
            let gens = gens
                .split(',')
                .filter(|g| !g.trim().is_empty())
                .map(|g| number(g, "generator"))
                .collect::<Result<Vec<_>>>()?;
            AbelianField::new(n, &gens)?
        }
        _ => {
            return Err(Error::Invalid(format!(
                "field spec {src:?}: kind must be Qcos, Qsin, Qzeta+ or custom"
            )))
        }
    };
    bindings.insert("zeta".into(), CycloElement::zeta_pow(field.conductor().max(1), 1));
    Ok(FieldSpec {
        source: src.to_string(),
        field,
        bindings,
    })
}
