//! Ramification of a quaternion algebra, the Fuchsian condition, the
//! quadratic embedding test and the period set.

mod periods;


pub use periods::{
    bhn_embeds, period_set, period_test, period_test_odd_route, BhnOutcome, PeriodReport, PeriodSet,
    PlaceCheck, Route, Verdict, DEFAULT_WITNESS_BOUND,
};

use crate::cyclo::FieldElement;
use crate::error::{Error, Result};
use crate::places::{
    archimedean_places, hilbert_symbol_finite, hilbert_symbol_real, splitting_type, ArchimedeanPlace,
    FinitePlace,
};
use crate::quat::QuaternionAlgebra;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    Trusted,
    ResolvedByParity,
    Undetermined,
}

/// Status of one candidate finite place.
#[derive(Clone, Debug)]
pub struct FiniteEntry {
    pub place: FinitePlace,
    pub ramified: Option<bool>,
    pub provenance: Provenance,
}

#[derive(Clone, Debug)]
pub struct RamificationData {
    algebra: QuaternionAlgebra,
    archimedean_count: usize,
    ram_infinite: Vec<ArchimedeanPlace>,
    entries: Vec<FiniteEntry>,
    /// Norm cofactors that could not be split into primes below 2^64; places
    /// above their prime factors are candidates we cannot even name.
    unresolved: Vec<BigInt>,
    /// Trusted input that contradicts a computed symbol.
    conflicts: Vec<String>,
}

/// Places ramified in A among the real places.
pub fn ram_infinity(alg: &QuaternionAlgebra) -> Result<Vec<ArchimedeanPlace>> {
    let mut out = Vec::new();
    for v in archimedean_places(alg.field())? {
        if hilbert_symbol_real(alg.a(), alg.b(), &v)? == -1 {
            out.push(v);
        }
    }
    Ok(out)
}

/// True iff A ⊗ R ≅ M₂(R) × H^{d−1}: unramified exactly at the identity.
pub fn fuchsian_check(alg: &QuaternionAlgebra) -> Result<bool> {
    let all = archimedean_places(alg.field())?;
    let ram = ram_infinity(alg)?;
    Ok(ram.len() + 1 == all.len() && ram.iter().all(|v| !v.is_identity()))
}

const TRIAL_LIMIT: u64 = 1 << 16;

/// Prime factors of |n| that fit in a u64, and any cofactor left unsplit.
fn prime_factors(n: &BigInt) -> (BTreeSet<u64>, Option<BigInt>) {
    let mut primes = BTreeSet::new();
    let mut rest = n.magnitude().clone();
    if rest.is_zero() {
        return (primes, None);
    }
    let mut d = 2u64;
    while d < TRIAL_LIMIT && rest > BigUint::one() {
        let bd = BigUint::from(d);
        if (&rest % &bd).is_zero() {
            primes.insert(d);
            while (&rest % &bd).is_zero() {
                rest /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return (primes, None);
    }
    let (found, unfactored) = num_prime::nt_funcs::factors(rest, None);
    let mut leftover = BigUint::one();
    for (p, _) in found {
        match p.to_u64() {
            Some(p) => {
                primes.insert(p);
            }
            None => leftover *= p,
        }
    }
    for c in unfactored.unwrap_or_default() {
        leftover *= c;
    }
    let leftover = (!leftover.is_one()).then(|| BigInt::from_biguint(Sign::Plus, leftover));
    (primes, leftover)
}

/// Rational primes below which A can ramify: 2, those dividing the conductor,
/// and those dividing the numerators and denominators of N(a), N(b).
pub fn candidate_primes(alg: &QuaternionAlgebra) -> (BTreeSet<u64>, Vec<BigInt>) {
    let mut primes = BTreeSet::from([2u64]);
    let mut unresolved = Vec::new();
    let n = alg.field().conductor();
    primes.extend(crate::cyclo::units::prime_divisors(n));
    for x in [alg.a(), alg.b()] {
        let norm = x.norm();
        for part in [norm.numer(), norm.denom()] {
            let (ps, rest) = prime_factors(part);
            primes.extend(ps);
            unresolved.extend(rest);
        }
    }
    (primes, unresolved)
}

impl RamificationData {
    /// Computes every symbol that tame local arithmetic can decide, then
    /// applies the parity law if exactly one place is left open.
    pub fn compute(alg: &QuaternionAlgebra) -> Result<Self> {
        let mut data = Self::compute_raw(alg)?;
        data.resolve_by_parity();
        data.assert_parity()?;
        Ok(data)
    }

    fn compute_raw(alg: &QuaternionAlgebra) -> Result<Self> {
        let archimedean_count = archimedean_places(alg.field())?.len();
        let ram_infinite = ram_infinity(alg)?;
        let (primes, unresolved) = candidate_primes(alg);
        let mut entries = Vec::new();
        for p in primes {
            for place in splitting_type(alg.field(), p)?.places {
                let entry = if place.is_tame() {
                    let s = hilbert_symbol_finite(alg.a(), alg.b(), &place)?;
                    FiniteEntry {
                        place,
                        ramified: Some(s == -1),
                        provenance: Provenance::Computed,
                    }
                } else {
                    FiniteEntry {
                        place,
                        ramified: None,
                        provenance: Provenance::Undetermined,
                    }
                };
                entries.push(entry);
            }
        }
        Ok(RamificationData {
            algebra: alg.clone(),
            archimedean_count,
            ram_infinite,
            entries,
            unresolved,
            conflicts: Vec::new(),
        })
    }

    /// As [`compute`](Self::compute), with Ram_f supplied externally for the
    /// places local arithmetic cannot decide. Computed symbols are kept; a
    /// trusted set that disagrees with one is recorded as a conflict.
    pub fn with_trusted(alg: &QuaternionAlgebra, trusted: &[FinitePlace]) -> Result<Self> {
        let mut data = Self::compute_raw(alg)?;
        let trusted: BTreeSet<&FinitePlace> = trusted.iter().collect();
        for entry in &mut data.entries {
            let claimed = trusted.contains(&entry.place);
            match entry.ramified {
                None => {
                    entry.ramified = Some(claimed);
                    entry.provenance = Provenance::Trusted;
                }
                Some(r) if r != claimed => data.conflicts.push(format!(
                    "{}: computed {}, trusted {}",
                    entry.place.label(),
                    if r { "ramified" } else { "unramified" },
                    if claimed { "ramified" } else { "unramified" },
                )),
                Some(_) => {}
            }
        }
        // a trusted place outside the candidates
        for v in trusted {
            if !data.entries.iter().any(|e| &e.place == v) {
                if data.unresolved.is_empty() {
                    data.conflicts
                        .push(format!("{}: not a candidate, so computed unramified", v.label()));
                } else {
                    data.entries.push(FiniteEntry {
                        place: v.clone(),
                        ramified: Some(true),
                        provenance: Provenance::Trusted,
                    });
                }
            }
        }
        // the trusted list is a complete Ram_f, so unnamed candidates are unramified
        data.unresolved.clear();
        data.assert_parity()?;
        Ok(data)
    }

    /// Data with Ram_f set to exactly `ram_finite`, bypassing both the local
    /// symbols and the parity law. For exercising the period machinery on
    /// invariant data that need not come from an algebra.
    pub fn synthetic(alg: &QuaternionAlgebra, ram_finite: &[FinitePlace]) -> Result<Self> {
        Ok(RamificationData {
            algebra: alg.clone(),
            archimedean_count: archimedean_places(alg.field())?.len(),
            ram_infinite: ram_infinity(alg)?,
            entries: ram_finite
                .iter()
                .map(|v| FiniteEntry {
                    place: v.clone(),
                    ramified: Some(true),
                    provenance: Provenance::Trusted,
                })
                .collect(),
            unresolved: Vec::new(),
            conflicts: Vec::new(),
        })
    }

    fn resolve_by_parity(&mut self) {
        if !self.unresolved.is_empty() {
            return;
        }
        let open: Vec<usize> = (0..self.entries.len())
            .filter(|&n| self.entries[n].ramified.is_none())
            .collect();
        if let [only] = open[..] {
            let odd = (self.ram_infinite.len() + self.ram_finite().len()).is_odd();
            self.entries[only].ramified = Some(odd);
            self.entries[only].provenance = Provenance::ResolvedByParity;
        }
    }

    fn assert_parity(&self) -> Result<()> {
        match self.parity_holds() {
            Some(false) => Err(Error::ParityViolation(self.ram_count())),
            _ => Ok(()),
        }
    }

    pub fn algebra(&self) -> &QuaternionAlgebra {
        &self.algebra
    }

    pub fn ram_infinite(&self) -> &[ArchimedeanPlace] {
        &self.ram_infinite
    }

    pub fn archimedean_count(&self) -> usize {
        self.archimedean_count
    }

    pub fn entries(&self) -> &[FiniteEntry] {
        &self.entries
    }

    pub fn ram_finite(&self) -> Vec<FinitePlace> {
        self.entries
            .iter()
            .filter(|e| e.ramified == Some(true))
            .map(|e| e.place.clone())
            .collect()
    }

    pub fn undetermined(&self) -> Vec<FinitePlace> {
        self.entries
            .iter()
            .filter(|e| e.ramified.is_none())
            .map(|e| e.place.clone())
            .collect()
    }

    pub fn unresolved_cofactors(&self) -> &[BigInt] {
        &self.unresolved
    }

    pub fn conflicts(&self) -> &[String] {
        &self.conflicts
    }

    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty() && self.entries.iter().all(|e| e.ramified.is_some())
    }

    pub fn ram_count(&self) -> usize {
        self.ram_infinite.len() + self.ram_finite().len()
    }

    /// `None` while anything is open.
    pub fn parity_holds(&self) -> Option<bool> {
        self.is_complete().then(|| self.ram_count().is_even())
    }

    /// Ramification status of an arbitrary place of k.
    pub fn status(&self, v: &FinitePlace) -> Option<bool> {
        match self.entries.iter().find(|e| &e.place == v) {
            Some(e) => e.ramified,
            None if self.unresolved.is_empty() => Some(false),
            None => None,
        }
    }

    /// The same data with Ram_f replaced; used for Galois conjugates.
    pub fn with_entries(&self, entries: Vec<FiniteEntry>) -> Self {
        RamificationData {
            entries,
            ..self.clone()
        }
    }
}

/// Ram_f together with the places left undetermined.
pub fn ram_finite(alg: &QuaternionAlgebra) -> Result<(Vec<FinitePlace>, Vec<FinitePlace>)> {
    let data = RamificationData::compute(alg)?;
    Ok((data.ram_finite(), data.undetermined()))
}

/// Element c as an element of the algebra's base field.
pub(crate) fn in_field(alg: &QuaternionAlgebra, c: &crate::cyclo::CycloElement) -> Result<FieldElement> {
    alg.field().element(c)
}
