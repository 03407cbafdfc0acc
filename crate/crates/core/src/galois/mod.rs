//! Galois conjugation of invariant data.
//!
//! Every representable field is abelian, hence normal, so k^σ = k and
//! conjugation only permutes places.

#[cfg(test)]
mod tests;

use crate::cyclo::{units, AbelianField};
use crate::error::{Error, Result};
use crate::invariants::{period_set, period_test_odd_route, FiniteEntry, PeriodSet, RamificationData, Verdict};
use crate::places::FinitePlace;
use serde::Serialize;
use std::collections::BTreeSet;

/// σ: ζ_N ↦ ζ_N^t, read modulo the field's conductor.
pub fn check_exponent(k: &AbelianField, t: u64) -> Result<u64> {
    let n = k.conductor();
    if n <= 2 {
        return Ok(1);
    }
    let t = t % n;
    if num_integer::Integer::gcd(&t, &n) != 1 {
        return Err(Error::NotAUnit(t, n));
    }
    Ok(t)
}

pub fn act_on_place(t: u64, v: &FinitePlace) -> Result<FinitePlace> {
    let t = check_exponent(v.field(), t)?;
    Ok(v.conjugate(t))
}

/// Orbit of a place under the cyclic group generated by σ_t.
pub fn orbit(t: u64, v: &FinitePlace) -> Result<Vec<FinitePlace>> {
    let mut out = vec![v.clone()];
    let mut w = act_on_place(t, v)?;
    while &w != v {
        out.push(w.clone());
        w = act_on_place(t, &w)?;
    }
    Ok(out)
}

/// The data determining an algebra up to isomorphism once the archimedean
/// pattern is fixed: the field, Ram_f and unramifiedness at the identity.
#[derive(Clone, Debug)]
pub struct AlgebraInvariantData {
    pub field: AbelianField,
    pub ram_finite: BTreeSet<FinitePlace>,
    pub undetermined: BTreeSet<FinitePlace>,
    pub unramified_identity: bool,
}

impl AlgebraInvariantData {
    pub fn from_ramification(ram: &RamificationData) -> Self {
        AlgebraInvariantData {
            field: ram.algebra().field().clone(),
            ram_finite: ram.ram_finite().into_iter().collect(),
            undetermined: ram.undetermined().into_iter().collect(),
            unramified_identity: ram.ram_infinite().iter().all(|v| !v.is_identity()),
        }
    }
}

pub fn conjugate_invariants(data: &AlgebraInvariantData, t: u64) -> Result<AlgebraInvariantData> {
    let t = check_exponent(&data.field, t)?;
    let map = |s: &BTreeSet<FinitePlace>| s.iter().map(|v| v.conjugate(t)).collect();
    Ok(AlgebraInvariantData {
        field: data.field.clone(),
        ram_finite: map(&data.ram_finite),
        undetermined: map(&data.undetermined),
        unramified_identity: data.unramified_identity,
    })
}

/// Equal Ram_f over the same field. `None` if undetermined places could
/// still make the sets differ.
pub fn same_algebra(d1: &AlgebraInvariantData, d2: &AlgebraInvariantData) -> Result<Option<bool>> {
    if d1.field != d2.field {
        return Err(Error::FieldMismatch);
    }
    if d1.undetermined.is_empty() && d2.undetermined.is_empty() {
        return Ok(Some(d1.ram_finite == d2.ram_finite));
    }
    // the determined parts already differ
    let all1: BTreeSet<_> = d1.ram_finite.union(&d1.undetermined).collect();
    let all2: BTreeSet<_> = d2.ram_finite.union(&d2.undetermined).collect();
    if !d1.ram_finite.iter().all(|v| all2.contains(v)) || !d2.ram_finite.iter().all(|v| all1.contains(v)) {
        return Ok(Some(false));
    }
    Ok(None)
}

/// Ramification data of the conjugate algebra: field unchanged, Ram_f
/// moved by σ, the archimedean pattern (unramified at the identity only)
/// kept as is.
pub fn conjugate_ramification(ram: &RamificationData, t: u64) -> Result<RamificationData> {
    let t = check_exponent(ram.algebra().field(), t)?;
    let entries = ram
        .entries()
        .iter()
        .map(|e| FiniteEntry {
            place: e.place.conjugate(t),
            ramified: e.ramified,
            provenance: e.provenance,
        })
        .collect();
    Ok(ram.with_entries(entries))
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodSummary {
    pub members: Vec<u64>,
    pub undetermined: Vec<u64>,
    pub bound: u64,
}

impl From<&PeriodSet> for PeriodSummary {
    fn from(s: &PeriodSet) -> Self {
        PeriodSummary {
            members: s.members.clone(),
            undetermined: s.undetermined.clone(),
            bound: s.bound,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub sigma: u64,
    pub original: PeriodSummary,
    pub conjugate: PeriodSummary,
    pub periods_equal: bool,
    /// Odd m whose square-root criterion differs between the two.
    pub odd_route_mismatches: Vec<u64>,
    pub odd_route_equal: bool,
}

/// Period sets of A and of its conjugate under σ. Both are computed from the
/// criterion alone (no witnesses), since a witness in A says nothing about
/// the conjugate algebra.
pub fn verify_period_invariance(ram: &RamificationData, t: u64) -> Result<InvarianceReport> {
    let conj = conjugate_ramification(ram, t)?;
    let original = period_set(ram, None, None)?;
    let conjugate = period_set(&conj, None, None)?;
    let mut mismatches = Vec::new();
    for m in (3..=original.bound).step_by(2) {
        if units::totient(m) > 2 * ram.algebra().field().degree() as u64 {
            continue;
        }
        let a: Verdict = period_test_odd_route(ram, m)?;
        let b: Verdict = period_test_odd_route(&conj, m)?;
        if a != b {
            mismatches.push(m);
        }
    }
    Ok(InvarianceReport {
        sigma: t,
        periods_equal: original.members == conjugate.members && original.undetermined == conjugate.undetermined,
        original: PeriodSummary::from(&original),
        conjugate: PeriodSummary::from(&conjugate),
        odd_route_equal: mismatches.is_empty(),
        odd_route_mismatches: mismatches,
    })
}
