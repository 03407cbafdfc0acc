//! (c, c / Q(ζ_7)^+) with c = ζ_7 + ζ_7^{-1}, and its order
//! Z[c][i, j'] with j' = (1 + c·i + (c² + c + 1)·j)/2.

use super::{Check, Outcome, Verification};
use crate::cyclo::{cos_element, units, AbelianField, FieldElement};
use crate::error::{Error, Result};
use crate::galois::{conjugate_invariants, orbit, same_algebra, verify_period_invariance, AlgebraInvariantData};
use crate::invariants::{fuchsian_check, period_set, ram_infinity, RamificationData, DEFAULT_WITNESS_BOUND};
use crate::places::{archimedean_places, splitting_type, FinitePlace};
use crate::quat::{QuaternionAlgebra, QuaternionElement, QuaternionOrder};
use num_rational::BigRational;
use serde_json::json;

/// ζ ↦ ζ³ generates Gal(k/Q), which is cyclic of order 3.
pub const ELKIES_SIGMA: u64 = 3;

#[derive(Clone)]
pub struct ElkiesData {
    pub field: AbelianField,
    pub c: FieldElement,
    pub algebra: QuaternionAlgebra,
    pub order: QuaternionOrder,
    /// Ram_f as known from outside (empty); wild places cannot be computed here.
    pub trusted_ram_finite: Vec<FinitePlace>,
}

pub fn elkies() -> Result<ElkiesData> {
    let k = AbelianField::real_cyclotomic(7);
    let c = k.element(&cos_element(1, 7).scale(&BigRational::from_integer(2.into())))?;
    let algebra = QuaternionAlgebra::new(&c, &c)?;
    let w = &(&c * &c + &c) + &k.one();
    let jp = algebra
        .element([k.one(), c.clone(), w, k.zero()])
        .scale_rational(&BigRational::new(1.into(), 2.into()));
    let ijp = algebra.i().mul(&jp)?;
    let order = QuaternionOrder::new([algebra.one(), algebra.i(), jp, ijp], &c)?;
    Ok(ElkiesData {
        field: k,
        c,
        algebra,
        order,
        trusted_ram_finite: Vec::new(),
    })
}

pub fn elkies_ramification(data: &ElkiesData) -> Result<RamificationData> {
    RamificationData::with_trusted(&data.algebra, &data.trusted_ram_finite)
}

fn matrix_checks(data: &ElkiesData) -> Result<(bool, serde_json::Value)> {
    let alg = &data.algebra;
    let img = |x: &QuaternionElement| x.matrix_image();
    let (i, j) = (img(&alg.i())?, img(&alg.j())?);
    let c_id = img(&alg.scalar(&data.c))?;
    let i_sq = i.mul(&i) == c_id;
    let j_sq = j.mul(&j) == c_id;
    let anti = i.mul(&j) == img(&alg.j().mul(&alg.i())?.neg())?;
    let mut products = true;
    let mut determinants = true;
    for x in data.order.basis() {
        let mx = img(x)?;
        let det = mx.determinant();
        determinants &= det.v.is_zero() && det.u == x.norm();
        for y in data.order.basis() {
            products &= img(&x.mul(y)?)? == mx.mul(&img(y)?);
        }
    }
    let ok = i_sq && j_sq && anti && products && determinants;
    Ok((
        ok,
        json!({
            "i_squared_is_c": i_sq,
            "j_squared_is_c": j_sq,
            "ij_is_minus_ji": anti,
            "order_basis_products": products,
            "determinant_is_norm": determinants,
        }),
    ))
}

pub fn verify_elkies(prime_bound: u64) -> Result<Verification> {
    if prime_bound < 14 {
        return Err(Error::Invalid("prime bound must be at least 14".into()));
    }
    let data = elkies()?;
    let k = &data.field;
    let mut out = Verification::new(format!("elkies prime-bound={prime_bound}"));

    let (ok, detail) = matrix_checks(&data)?;
    out.push(Check::new(
        "matrix-model",
        "i ↦ diag(√c, −√c), j ↦ [[0, √c], [√c, 0]] is a ring homomorphism",
        Outcome::from_bool(ok),
        detail,
    ));

    let cert = data.order.closure_check()?;
    out.push(Check::new(
        "order-closure",
        "Z[c][i, j'] is closed under multiplication",
        Outcome::from_bool(cert.closed),
        serde_json::to_value(&cert).expect("plain data"),
    ));

    let ram_inf = ram_infinity(&data.algebra)?;
    let all = archimedean_places(k)?;
    let two_others = ram_inf.len() == 2 && ram_inf.iter().all(|v| !v.is_identity()) && all.len() == 3;
    out.push(Check::new(
        "archimedean-ramification",
        "ramified at exactly the two non-identity real places",
        Outcome::from_bool(two_others),
        json!({ "ramified": ram_inf.iter().map(|v| v.label()).collect::<Vec<_>>() }),
    ));
    let fuchsian = fuchsian_check(&data.algebra)?;
    out.push(Check::new(
        "fuchsian",
        "A ⊗ R ≅ M₂(R) × H²",
        Outcome::from_bool(fuchsian),
        json!({ "fuchsian": fuchsian }),
    ));

    let mut rows = Vec::new();
    let mut table_ok = true;
    let mut orbits_ok = true;
    for p in (2..=prime_bound).filter(|&p| units::is_prime(p)) {
        let s = splitting_type(k, p)?;
        let expected_g = if p % 7 == 1 || p % 7 == 6 { 3 } else { 1 };
        let expected_e = if p == 7 { 3 } else { 1 };
        table_ok &= s.g == expected_g && s.e == expected_e && s.e * s.f * s.g == 3;
        let orbit_len = orbit(ELKIES_SIGMA, &s.places[0])?.len() as u32;
        orbits_ok &= orbit_len == s.g;
        rows.push(json!({ "p": p, "e": s.e, "f": s.f, "g": s.g, "orbit": orbit_len }));
    }
    out.push(Check::new(
        "splitting-table",
        "g = 3 iff p ≡ ±1 mod 7, otherwise g = 1; (e, f, g) = (3, 1, 1) at 7",
        Outcome::from_bool(table_ok),
        json!({ "rows": rows }),
    ));
    out.push(Check::new(
        "galois-orbits",
        "the places above each prime form one Galois orbit",
        Outcome::from_bool(orbits_ok),
        json!({ "sigma": ELKIES_SIGMA }),
    ));

    let ram = elkies_ramification(&data)?;
    let periods = period_set(&ram, None, DEFAULT_WITNESS_BOUND)?;
    let required = [1u64, 2, 3, 7, 14];
    let contains = required.iter().all(|m| periods.members.contains(m));
    let bounded = periods.members.iter().all(|&m| units::totient(m) <= 6);
    out.push(Check::new(
        "periods",
        "with Ram_f = ∅ trusted: {1, 2, 3, 7, 14} ⊆ P and φ(m) ≤ 6 for every m ∈ P",
        Outcome::from_bool(contains && bounded && periods.undetermined.is_empty()),
        json!({
            "members": periods.members,
            "undetermined": periods.undetermined,
            "bound": periods.bound,
            "ram_finite_provenance": "trusted",
        }),
    ));

    let inv = AlgebraInvariantData::from_ramification(&ram);
    let conj = conjugate_invariants(&inv, ELKIES_SIGMA)?;
    let fixed = same_algebra(&inv, &conj)?;
    out.push(Check::new(
        "conjugate-fixed",
        "Ram_f is Galois-stable, so A^σ ≅ A",
        match fixed {
            Some(b) => Outcome::from_bool(b),
            None => Outcome::Undetermined,
        },
        json!({ "sigma": ELKIES_SIGMA }),
    ));
    let report = verify_period_invariance(&ram, ELKIES_SIGMA)?;
    out.push(Check::new(
        "period-invariance",
        "P(Γ) = P(Γ^σ)",
        Outcome::from_bool(report.periods_equal && report.odd_route_equal),
        serde_json::to_value(&report).expect("plain data"),
    ));
    Ok(out)
}
