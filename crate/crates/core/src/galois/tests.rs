use super::*;
use crate::cyclo::{cos_element, AbelianField};
use crate::invariants::period_test;
use crate::places::splitting_type;
use crate::quat::QuaternionAlgebra;
use num_rational::BigRational;

fn elkies() -> QuaternionAlgebra {
    let k = AbelianField::real_cyclotomic(7);
    let c = k
        .element(&cos_element(1, 7).scale(&BigRational::from_integer(2.into())))
        .unwrap();
    QuaternionAlgebra::new(&c, &c).unwrap()
}

#[test]
fn exponents_are_checked() {
    let k = AbelianField::real_cyclotomic(7);
    assert_eq!(check_exponent(&k, 10).unwrap(), 3);
    assert!(matches!(check_exponent(&k, 14), Err(Error::NotAUnit(0, 7))));
    assert_eq!(check_exponent(&AbelianField::rationals(), 5).unwrap(), 1);
}

#[test]
fn orbits_over_split_and_inert_primes() {
    let k = AbelianField::real_cyclotomic(7);
    for (p, size) in [(13, 3), (29, 3), (2, 1), (3, 1), (7, 1)] {
        let places = splitting_type(&k, p).unwrap().places;
        let o = orbit(3, &places[0]).unwrap();
        assert_eq!(o.len(), size, "p = {p}");
        let as_set: BTreeSet<_> = o.into_iter().collect();
        let all: BTreeSet<_> = places.into_iter().collect();
        assert_eq!(as_set, all);
    }
    // σ_{−1} is trivial on the real subfield
    let p13 = splitting_type(&k, 13).unwrap().places;
    for v in &p13 {
        assert_eq!(&act_on_place(6, v).unwrap(), v);
    }
}

#[test]
fn action_is_a_group_action() {
    let k = AbelianField::real_cyclotomic(11);
    let places = splitting_type(&k, 23).unwrap().places;
    assert_eq!(places.len(), 5);
    for v in &places {
        let a = act_on_place(2, &act_on_place(3, v).unwrap()).unwrap();
        assert_eq!(a, act_on_place(6, v).unwrap());
    }
}

#[test]
fn conjugation_moves_a_single_split_place() {
    let alg = elkies();
    let p13 = splitting_type(alg.field(), 13).unwrap().places;
    let one = RamificationData::synthetic(&alg, &p13[..1]).unwrap();
    let data = AlgebraInvariantData::from_ramification(&one);
    let conj = conjugate_invariants(&data, 3).unwrap();
    assert_eq!(same_algebra(&data, &conj).unwrap(), Some(false));
    let back = (0..3).try_fold(data.clone(), |d, _| conjugate_invariants(&d, 3)).unwrap();
    assert_eq!(same_algebra(&data, &back).unwrap(), Some(true));
}

#[test]
fn same_algebra_with_open_places() {
    let alg = elkies();
    let raw = RamificationData::compute(&alg).unwrap();
    let data = AlgebraInvariantData::from_ramification(&raw);
    assert_eq!(data.undetermined.len(), 2);
    let conj = conjugate_invariants(&data, 3).unwrap();
    assert_eq!(same_algebra(&data, &conj).unwrap(), None);
    let other = AlgebraInvariantData {
        ram_finite: splitting_type(&alg.field(), 13).unwrap().places.into_iter().collect(),
        ..data.clone()
    };
    assert_eq!(same_algebra(&data, &other).unwrap(), Some(false));
    let rationals = AlgebraInvariantData {
        field: AbelianField::rationals(),
        ..data.clone()
    };
    assert!(matches!(same_algebra(&data, &rationals), Err(Error::FieldMismatch)));
}

#[test]
fn elkies_periods_are_invariant() {
    let ram = RamificationData::with_trusted(&elkies(), &[]).unwrap();
    let report = verify_period_invariance(&ram, 3).unwrap();
    assert!(report.periods_equal);
    assert!(report.odd_route_equal);
    assert_eq!(report.original.members, report.conjugate.members);
}

#[test]
fn galois_stable_synthetic_orbit_has_invariant_periods() {
    // all three places above 13 together with P_7: a Galois-stable Ram_f
    let alg = elkies();
    let mut ramf = splitting_type(alg.field(), 13).unwrap().places;
    ramf.extend(splitting_type(alg.field(), 7).unwrap().places);
    let ram = RamificationData::synthetic(&alg, &ramf).unwrap();
    assert_eq!(ram.parity_holds(), Some(true));
    let report = verify_period_invariance(&ram, 3).unwrap();
    assert!(report.periods_equal && report.odd_route_equal);
    // the orbit alone violates parity but is still stable
    let orbit_only = RamificationData::synthetic(&alg, &ramf[..3]).unwrap();
    assert!(verify_period_invariance(&orbit_only, 3).unwrap().periods_equal);
}

#[test]
fn conjugate_keeps_verdicts_of_stable_data() {
    let alg = elkies();
    let p13 = splitting_type(alg.field(), 13).unwrap().places;
    let single = RamificationData::synthetic(&alg, &p13[..1]).unwrap();
    let conj = conjugate_ramification(&single, 3).unwrap();
    assert_ne!(single.ram_finite(), conj.ram_finite());
    // k(ζ_m) is Galois over Q, so σ carries split places to split places
    for m in [3, 7, 14] {
        assert_eq!(
            period_test(&single, m, None).unwrap().in_period_set,
            period_test(&conj, m, None).unwrap().in_period_set,
        );
    }
}
