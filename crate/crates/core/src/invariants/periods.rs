//! The embedding test for k(√c) and the periods of the commensurator.

use super::{in_field, Provenance, RamificationData};
use crate::cyclo::{cos_element, field_contains, units::totient, FieldElement, Sign};
use crate::error::{Error, Result};
use crate::places::{local_is_square, splits_in_cyclotomic_extension, sqrt_in_field, FinitePlace};
use crate::quat::{find_sqrt_witness, QuaternionElement};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

/// How the splitting of a place in k(√c) was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    RealSign,
    LocalSquare,
    CyclotomicGroup,
    Unavailable,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceCheck {
    pub place: String,
    /// Ramification of A at the place; `None` when undetermined.
    pub ramified: Option<bool>,
    pub provenance: Provenance,
    /// Whether the place splits in k(√c); `None` when undecidable here.
    pub split: Option<bool>,
    pub route: Route,
}

#[derive(Clone, Debug, Serialize)]
pub struct BhnOutcome {
    pub verdict: Verdict,
    pub checks: Vec<PlaceCheck>,
    /// Set when some candidate prime could not be factored.
    pub incomplete_candidates: bool,
}

fn finite_split(v: &FinitePlace, c: &FieldElement, m: Option<u64>) -> Result<(Option<bool>, Route)> {
    if v.is_tame() {
        return Ok((Some(local_is_square(v, c)?), Route::LocalSquare));
    }
    if let Some(m) = m {
        if let Some(s) = splits_in_cyclotomic_extension(v, m) {
            return Ok((Some(s), Route::CyclotomicGroup));
        }
    }
    Ok((None, Route::Unavailable))
}

/// Brauer–Hasse–Noether: K = k(√c) embeds in A iff no place of Ram(A) splits
/// in K. `cyclotomic` names m when K = k(ζ_m), which decides splitting at
/// wild and ramified places through decomposition groups.
pub fn bhn_embeds(ram: &RamificationData, c: &FieldElement, cyclotomic: Option<u64>) -> Result<BhnOutcome> {
    if c.is_zero() {
        return Err(Error::ZeroElement);
    }
    if let Some(r) = sqrt_in_field(c).root() {
        return Err(Error::NotQuadratic(format!("{c} = ({r})²")));
    }
    let mut checks = Vec::new();
    for v in ram.ram_infinite() {
        let split = v.sign(c)? == Sign::Positive;
        checks.push(PlaceCheck {
            place: v.label(),
            ramified: Some(true),
            provenance: Provenance::Computed,
            split: Some(split),
            route: Route::RealSign,
        });
    }
    for e in ram.entries() {
        if e.ramified == Some(false) {
            continue;
        }
        let (split, route) = finite_split(&e.place, c, cyclotomic)?;
        checks.push(PlaceCheck {
            place: e.place.label(),
            ramified: e.ramified,
            provenance: e.provenance,
            split,
            route,
        });
    }
    let incomplete_candidates = !ram.unresolved_cofactors().is_empty();
    let refuted = checks
        .iter()
        .any(|k| k.ramified == Some(true) && k.split == Some(true));
    let open = checks.iter().any(|k| k.split != Some(false)) || incomplete_candidates;
    let verdict = if refuted {
        Verdict::No
    } else if open {
        Verdict::Undetermined
    } else {
        Verdict::Yes
    };
    Ok(BhnOutcome {
        verdict,
        checks,
        incomplete_candidates,
    })
}

/// Closed-form witnesses only; larger bounds search rational coordinates.
pub const DEFAULT_WITNESS_BOUND: Option<u32> = Some(0);

#[derive(Clone, Debug)]
pub struct PeriodReport {
    pub m: u64,
    pub in_period_set: Verdict,
    /// cos 2π/m ∈ k.
    pub subfield_ok: bool,
    pub bhn: Option<BhnOutcome>,
    pub witness: Option<QuaternionElement>,
    /// The verdict came from the witness rather than the local criterion.
    pub decided_by_witness: bool,
}

/// −sin² 2π/m = cos² 2π/m − 1, as an element of k.
fn minus_sin_squared(ram: &RamificationData, m: u64) -> Result<FieldElement> {
    let cos = in_field(ram.algebra(), &cos_element(1, m))?;
    Ok(&cos * &cos - ram.algebra().field().one())
}

fn trivial(m: u64, verdict: Verdict, subfield_ok: bool) -> PeriodReport {
    PeriodReport {
        m,
        in_period_set: verdict,
        subfield_ok,
        bhn: None,
        witness: None,
        decided_by_witness: false,
    }
}

/// Whether Comm(Γ) contains an element of order m: cos 2π/m ∈ k and
/// k(ζ_m) = k(√(−sin² 2π/m)) embeds in A.
/// `witness_bound: None` skips the witness search.
pub fn period_test(ram: &RamificationData, m: u64, witness_bound: Option<u32>) -> Result<PeriodReport> {
    if m == 0 {
        return Err(Error::Invalid("period must be positive".into()));
    }
    if m <= 2 {
        return Ok(trivial(m, Verdict::Yes, true));
    }
    if !field_contains(ram.algebra().field(), &cos_element(1, m)) {
        return Ok(trivial(m, Verdict::No, false));
    }
    let c = minus_sin_squared(ram, m)?;
    decide(ram, m, &c, witness_bound)
}

fn decide(ram: &RamificationData, m: u64, c: &FieldElement, witness_bound: Option<u32>) -> Result<PeriodReport> {
    let bhn = bhn_embeds(ram, c, Some(m))?;
    let mut verdict = bhn.verdict;
    let mut witness = None;
    let mut decided_by_witness = false;
    if let (Some(bound), true) = (witness_bound, verdict != Verdict::No) {
        witness = find_sqrt_witness(ram.algebra(), c, bound);
        if witness.is_some() && verdict == Verdict::Undetermined {
            // x² = c with c not a square in k gives k(x) ≅ k(√c) inside A
            verdict = Verdict::Yes;
            decided_by_witness = true;
        }
    }
    Ok(PeriodReport {
        m,
        in_period_set: verdict,
        subfield_ok: true,
        bhn: Some(bhn),
        witness,
        decided_by_witness,
    })
}

/// The odd-order formulation: for odd m, cos 4π/m ∈ k and a square root of
/// −sin² 2π/m = (cos 4π/m − 1)/2 in A. Only the criterion, no witness.
pub fn period_test_odd_route(ram: &RamificationData, m: u64) -> Result<Verdict> {
    if m % 2 == 0 || m < 3 {
        return Err(Error::Invalid(format!("{m} is not an odd integer >= 3")));
    }
    let cos2 = cos_element(2, m);
    if !field_contains(ram.algebra().field(), &cos2) {
        return Ok(Verdict::No);
    }
    let k = ram.algebra().field();
    let c = (in_field(ram.algebra(), &cos2)? - k.one()).scale(&num_rational::BigRational::new(1.into(), 2.into()));
    Ok(bhn_embeds(ram, &c, Some(m))?.verdict)
}

#[derive(Clone, Debug)]
pub struct PeriodSet {
    pub members: Vec<u64>,
    pub undetermined: Vec<u64>,
    /// Largest m examined.
    pub bound: u64,
    pub reports: Vec<PeriodReport>,
}

/// All m ≤ 8d² passing the period test; beyond that φ(m) > 2d, so cos 2π/m
/// has degree above d. `max` lowers the bound.
pub fn period_set(ram: &RamificationData, max: Option<u64>, witness_bound: Option<u32>) -> Result<PeriodSet> {
    let d = ram.algebra().field().degree() as u64;
    let bound = max.map_or(8 * d * d, |m| m.min(8 * d * d)).max(2);
    let mut out = PeriodSet {
        members: Vec::new(),
        undetermined: Vec::new(),
        bound,
        reports: Vec::new(),
    };
    for m in 1..=bound {
        // [Q(cos 2π/m) : Q] = φ(m)/2 for m ≥ 3
        if m >= 3 && totient(m) > 2 * d {
            continue;
        }
        let report = period_test(ram, m, witness_bound)?;
        match report.in_period_set {
            Verdict::Yes => out.members.push(m),
            Verdict::Undetermined => out.undetermined.push(m),
            Verdict::No => {}
        }
        if report.subfield_ok {
            out.reports.push(report);
        }
    }
    Ok(out)
}
