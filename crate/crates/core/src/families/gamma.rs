//! (−1, b_p / Q(sin 2π/p)) with b_p = cos 2π/p − 1 + 32/p².

use super::{Check, Outcome, Verification};
use crate::cyclo::{cos_element, field_contains, sin_element, units, AbelianField, CycloElement, FieldElement, Sign};
use crate::error::{Error, Result};
use crate::invariants::{fuchsian_check, period_test, RamificationData, Verdict};
use crate::places::archimedean_places;
use crate::quat::{find_sqrt_witness, QuaternionAlgebra, QuaternionOrder};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

pub const DEFAULT_Q_LIST: [u64; 4] = [5, 7, 11, 13];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaVariant {
    /// Over Q(sin 2π/p) with j² = b_p, R_k = Z[2cos π/2p].
    Stated,
    /// Over Q(cos 2π/p) with j² = 4p²·b_p, R_k = Z[2cos 2π/p]: the same
    /// archimedean signs at the embeddings of Q(cos 2π/p), with integral b.
    Repaired,
}

impl GammaVariant {
    pub fn name(self) -> &'static str {
        match self {
            GammaVariant::Stated => "stated",
            GammaVariant::Repaired => "repaired",
        }
    }
}

#[derive(Clone)]
pub struct GammaPData {
    pub p: u64,
    pub variant: GammaVariant,
    pub field: AbelianField,
    pub b: FieldElement,
    pub algebra: QuaternionAlgebra,
    pub order: QuaternionOrder,
    /// stab(sin 2π/p) = stab(cos π/2p) in (Z/4pZ)*.
    pub sin_cos_fields_agree: bool,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn gamma_p(p: u64) -> Result<GammaPData> {
    gamma_p_variant(p, GammaVariant::Stated)
}

pub fn gamma_p_variant(p: u64, variant: GammaVariant) -> Result<GammaPData> {
    if !units::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::TooSmall(p));
    }
    let pi = p as i64;
    let sin = sin_element(1, p);
    let cos_quarter = cos_element(1, 4 * p);
    let sin_cos_fields_agree = sin.stabilizer() == cos_quarter.stabilizer();
    // cos 2π/p − 1 + 32/p²
    let b_p = &cos_element(1, p) + &CycloElement::rational(&q(32 - pi * pi, pi * pi), 1);
    let (field, b, generator) = match variant {
        GammaVariant::Stated => {
            let k = AbelianField::sin_field(p);
            let b = k.element(&b_p)?;
            let g = k.element(&cos_quarter.scale(&q(2, 1)))?;
            (k, b, g)
        }
        GammaVariant::Repaired => {
            let k = AbelianField::real_cyclotomic(p);
            let b = k.element(&b_p.scale(&q(4 * pi * pi, 1)))?;
            let g = k.element(&cos_element(1, p).scale(&q(2, 1)))?;
            (k, b, g)
        }
    };
    let algebra = QuaternionAlgebra::new(&-field.one(), &b)?;
    let order = QuaternionOrder::standard(&algebra, &generator)?;
    Ok(GammaPData {
        p,
        variant,
        field,
        b,
        algebra,
        order,
        sin_cos_fields_agree,
    })
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Negative => "-",
        Sign::Zero => "0",
        Sign::Positive => "+",
    }
}

/// Membership of q in the odd periods, with the certificate used.
fn period_claim(data: &GammaPData, q_: u64) -> Result<Check> {
    let p = data.p;
    let k = &data.field;
    let id = format!("period-{q_}");
    let expected = q_ == p;
    let claim = format!("{q_} is {}a period", if expected { "" } else { "not " });
    if !field_contains(k, &cos_element(1, q_)) {
        let detail = json!({ "certificate": "subfield", "cos_in_field": false });
        return Ok(Check::new(&id, claim, Outcome::from_bool(!expected), detail));
    }
    let sin = sin_element(1, q_);
    let target = {
        let c = k.element(&cos_element(1, q_))?;
        &c * &c - k.one()
    };
    // sin(2π/q)·i squares to −sin² 2π/q whenever sin 2π/q ∈ k
    if field_contains(k, &sin) {
        let s = k.element(&sin)?;
        let w = data.algebra.i().scale(&s);
        let squares = w.mul(&w)?.as_scalar() == Some(&target);
        let detail = json!({
            "certificate": "witness",
            "cos_in_field": true,
            "witness": w.serialize(),
            "squares_to_minus_sin_squared": squares,
        });
        return Ok(Check::new(&id, claim, Outcome::from_bool(expected && squares), detail));
    }
    if let Some(w) = find_sqrt_witness(&data.algebra, &target, 2) {
        let detail = json!({ "certificate": "witness", "cos_in_field": true, "witness": w.serialize() });
        return Ok(Check::new(&id, claim, Outcome::from_bool(expected), detail));
    }
    let ram = RamificationData::compute(&data.algebra)?;
    let report = period_test(&ram, q_, Some(0))?;
    let outcome = match report.in_period_set {
        Verdict::Undetermined => Outcome::Undetermined,
        v => Outcome::from_bool((v == Verdict::Yes) == expected),
    };
    let detail = json!({
        "certificate": "criterion",
        "cos_in_field": true,
        "verdict": report.in_period_set,
        "places": report.bhn.map(|b| b.checks),
    });
    Ok(Check::new(&id, claim, outcome, detail))
}

pub fn verify_gamma_p(p: u64, q_list: &[u64], variant: GammaVariant) -> Result<Verification> {
    let data = gamma_p_variant(p, variant)?;
    let k = &data.field;
    let mut out = Verification::new(format!("gamma-p p={p} variant={}", variant.name()));

    out.push(Check::new(
        "sin-cos-field",
        "Q(sin 2π/p) = Q(cos π/2p) inside Q(ζ_4p)",
        Outcome::from_bool(data.sin_cos_fields_agree),
        json!({ "conductor": 4 * p }),
    ));
    out.push(Check::new(
        "totally-real",
        "k is totally real",
        Outcome::from_bool(k.is_totally_real()),
        json!({ "field": k.describe() }),
    ));
    let expected_degree = match variant {
        GammaVariant::Stated => p - 1,
        GammaVariant::Repaired => (p - 1) / 2,
    };
    out.push(Check::new(
        "degree",
        format!("[k:Q] = {expected_degree}"),
        Outcome::from_bool(k.degree() as u64 == expected_degree),
        json!({ "degree": k.degree() }),
    ));

    // 1 − 32/p² strictly between cos 4π/p and cos 2π/p
    let pi = p as i64;
    let r = CycloElement::rational(&q(pi * pi - 32, pi * pi), 1);
    let above = &cos_element(1, p) - &r;
    let below = &r - &cos_element(2, p);
    let s1 = crate::cyclo::certified_sign(&above, 1)?;
    let s2 = crate::cyclo::certified_sign(&below, 1)?;
    out.push(Check::new(
        "b-interval",
        "cos 4π/p < 1 − 32/p² < cos 2π/p",
        Outcome::from_bool(s1 == Sign::Positive && s2 == Sign::Positive),
        json!({ "cos2_minus_r": s1, "r_minus_cos4": s2 }),
    ));

    let places = archimedean_places(k)?;
    let mut signs = Vec::new();
    for v in &places {
        signs.push((v.representative(), v.sign(&data.b)?));
    }
    let pattern_ok = signs
        .iter()
        .enumerate()
        .all(|(n, (_, s))| *s == if n == 0 { Sign::Positive } else { Sign::Negative });
    out.push(Check::new(
        "sign-pattern",
        "b positive at the identity embedding and negative at every other",
        Outcome::from_bool(pattern_ok),
        json!({
            "pattern": signs.iter().map(|(_, s)| sign_str(*s)).collect::<String>(),
            "embeddings": signs.iter().map(|(t, s)| json!({ "rep": t, "sign": s })).collect::<Vec<_>>(),
        }),
    ));

    let fuchsian = fuchsian_check(&data.algebra)?;
    out.push(Check::new(
        "fuchsian",
        "A ⊗ R ≅ M₂(R) × H^(d−1)",
        Outcome::from_bool(fuchsian),
        json!({ "fuchsian": fuchsian }),
    ));

    let cert = data.order.closure_check()?;
    out.push(Check::new(
        "order-closure",
        "R_k + R_k i + R_k j + R_k k is closed under multiplication",
        Outcome::from_bool(cert.closed),
        serde_json::to_value(&cert).expect("plain data"),
    ));

    for &q_ in q_list {
        out.push(period_claim(&data, q_)?);
    }
    Ok(out)
}
