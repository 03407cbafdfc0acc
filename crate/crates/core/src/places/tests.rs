use super::*;
use crate::cyclo::{cos_element, sin_element, CycloElement};
use num_rational::BigRational;
use proptest::prelude::*;
use std::collections::HashSet;
use std::sync::OnceLock;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn elkies_field() -> AbelianField {
    AbelianField::real_cyclotomic(7)
}

fn c7(k: &AbelianField) -> FieldElement {
    k.element(&cos_element(1, 7).scale(&q(2, 1))).unwrap()
}

#[test]
fn archimedean_place_counts() {
    assert_eq!(archimedean_places(&AbelianField::rationals()).unwrap().len(), 1);
    let places = archimedean_places(&elkies_field()).unwrap();
    assert_eq!(places.len(), 3);
    assert!(places[0].is_identity());
    assert_eq!(archimedean_places(&AbelianField::sin_field(5)).unwrap().len(), 4);
    let cyclo7 = AbelianField::new(7, &[1]).unwrap();
    assert!(matches!(archimedean_places(&cyclo7), Err(Error::NotTotallyReal)));
}

#[test]
fn elkies_splitting_examples() {
    let k = elkies_field();
    let s = splitting_type(&k, 7).unwrap();
    assert_eq!((s.e, s.f, s.g), (3, 1, 1));
    let s = splitting_type(&k, 13).unwrap();
    assert_eq!((s.e, s.f, s.g), (1, 1, 3));
    let labels: Vec<String> = s.places.iter().map(FinitePlace::label).collect();
    assert_eq!(labels, ["P_{1,13}", "P_{2,13}", "P_{3,13}"]);
    let s = splitting_type(&k, 2).unwrap();
    assert_eq!((s.e, s.f, s.g), (1, 3, 1));
    assert!(matches!(splitting_type(&k, 15), Err(Error::NotPrime(15))));
}

#[test]
fn elkies_split_iff_plus_minus_one_mod_7() {
    let k = elkies_field();
    for p in (2..200).filter(|&p| units::is_prime(p)) {
        let s = splitting_type(&k, p).unwrap();
        let expected = if p % 7 == 1 || p % 7 == 6 { 3 } else { 1 };
        assert_eq!(s.g, expected, "p = {p}");
    }
}

#[test]
fn efg_equals_degree() {
    let fields = [
        AbelianField::rationals(),
        elkies_field(),
        AbelianField::sin_field(5),
        AbelianField::sin_field(7),
        AbelianField::new(20, &[1]).unwrap(),
        AbelianField::new(21, &[4]).unwrap(),
        AbelianField::real_cyclotomic(24),
        AbelianField::new(15, &[14]).unwrap(),
    ];
    for k in &fields {
        for p in (2..60).filter(|&p| units::is_prime(p)) {
            let s = splitting_type(k, p).unwrap();
            assert_eq!((s.e * s.f * s.g) as usize, k.degree(), "{k:?} at {p}");
            assert_eq!(s.places.len(), s.g as usize);
        }
    }
}

#[test]
fn non_minimal_conductor_does_not_invent_ramification() {
    // Q presented inside Q(ζ_7)
    let k = AbelianField::new(7, &[3]).unwrap();
    assert_eq!(k.degree(), 1);
    assert_eq!(k.minimal_conductor(), 1);
    let s = splitting_type(&k, 7).unwrap();
    assert_eq!((s.e, s.f, s.g), (1, 1, 1));
    let lv = local_valuation_unit(&s.places[0], &k.int(49)).unwrap();
    assert_eq!(lv.v, 2);
}

#[test]
fn padic_context_examples() {
    let k = elkies_field();
    for v in splitting_type(&k, 13).unwrap().places {
        let ctx = PadicContext::new(&v, 4).unwrap();
        let ring = ctx.ring();
        // ω lives in the unramified extension of degree ord_7(13) = 2; the
        // place itself has residue field F_13
        assert_eq!(ring.degree(), 2);
        assert_eq!(v.residue_degree(), 1);
        let w = ctx.lifted_root();
        assert_eq!(ring.pow_u64(w, 7), ring.one());
        assert_ne!(*w, ring.one());
    }
    let ctx = PadicContext::new(&splitting_type(&AbelianField::rationals(), 5).unwrap().places[0], 3).unwrap();
    assert_eq!(ctx.ring().modulus(), &BigInt::from(125));
    let seven = splitting_type(&k, 7).unwrap().places[0].clone();
    assert!(matches!(PadicContext::new(&seven, 3), Err(Error::UnsupportedPlace { p: 7, .. })));
    let two = splitting_type(&k, 2).unwrap().places[0].clone();
    assert!(matches!(PadicContext::new(&two, 3), Err(Error::UnsupportedPlace { p: 2, .. })));
}

#[test]
fn valuation_unit_examples() {
    let rationals = AbelianField::rationals();
    for p in [3u64, 5, 13] {
        let v = splitting_type(&rationals, p).unwrap().places[0].clone();
        let lv = local_valuation_unit(&v, &rationals.int(p as i64)).unwrap();
        assert_eq!(lv.v, 1);
        assert_eq!(lv.unit, lv.residue_ring().one());
        let lv = local_valuation_unit(&v, &rationals.int(1)).unwrap();
        assert_eq!((lv.v, lv.unit.clone()), (0, lv.residue_ring().one()));
        let lv = local_valuation_unit(&v, &rationals.rational(&q(2, (p * p) as i64))).unwrap();
        assert_eq!(lv.v, -2);
    }
    let k = elkies_field();
    let c = c7(&k);
    assert_eq!(c.norm(), q(1, 1));
    for v in splitting_type(&k, 13).unwrap().places {
        assert_eq!(local_valuation_unit(&v, &c).unwrap().v, 0);
    }
    assert!(matches!(
        local_valuation_unit(&splitting_type(&k, 13).unwrap().places[0], &k.zero()),
        Err(Error::ZeroElement)
    ));
}

/// c ≡ r modulo exactly one of the three primes above 13 when r is a root of
/// T³+T²−2T−1 mod 13.
#[test]
fn valuation_distinguishes_split_places() {
    let k = elkies_field();
    let c = c7(&k);
    let r = (0..13i64)
        .find(|r| (r * r * r + r * r - 2 * r - 1).rem_euclid(13) == 0)
        .unwrap();
    let x = &c - &k.int(r);
    let vals: Vec<i64> = splitting_type(&k, 13)
        .unwrap()
        .places
        .iter()
        .map(|v| local_valuation_unit(v, &x).unwrap().v)
        .collect();
    assert_eq!(vals.iter().filter(|&&v| v > 0).count(), 1, "{vals:?}");
}

#[test]
fn local_square_examples() {
    let rationals = AbelianField::rationals();
    let at = |p: u64| splitting_type(&rationals, p).unwrap().places[0].clone();
    for p in [3u64, 5, 7, 11, 13] {
        assert!(local_is_square(&at(p), &rationals.int(4)).unwrap());
        assert!(!local_is_square(&at(p), &rationals.int(p as i64)).unwrap());
    }
    assert!(local_is_square(&at(13), &rationals.int(-1)).unwrap());
    assert!(!local_is_square(&at(7), &rationals.int(-1)).unwrap());
    // −1 is always a square in F_49
    let k = elkies_field();
    let inert = splitting_type(&AbelianField::new(4, &[1]).unwrap(), 7).unwrap().places[0].clone();
    assert_eq!(inert.residue_degree(), 2);
    assert!(local_is_square(&inert, &inert.field().int(-1)).unwrap());
    assert!(local_is_square(&splitting_type(&k, 3).unwrap().places[0], &k.int(-1)).is_ok());
}

#[test]
fn hilbert_symbol_examples() {
    let rationals = AbelianField::rationals();
    let inf = archimedean_places(&rationals).unwrap()[0].clone();
    assert_eq!(hilbert_symbol_real(&rationals.int(-1), &rationals.int(-1), &inf).unwrap(), -1);
    assert_eq!(hilbert_symbol_real(&rationals.int(1), &rationals.int(1), &inf).unwrap(), 1);
    let k = AbelianField::sin_field(5);
    let b5 = k
        .element(&(&(&cos_element(1, 5) - &CycloElement::from_int(1)) + &CycloElement::rational(&q(32, 25), 1)))
        .unwrap();
    let id = archimedean_places(&k).unwrap()[0].clone();
    assert!(id.is_identity());
    assert_eq!(hilbert_symbol_real(&k.int(-1), &b5, &id).unwrap(), 1);

    let at = |p: u64| splitting_type(&rationals, p).unwrap().places[0].clone();
    assert_eq!(hilbert_symbol_finite(&rationals.int(2), &rationals.int(3), &at(7)).unwrap(), 1);
    // 3 is a non-residue mod 7
    assert_eq!(hilbert_symbol_finite(&rationals.int(7), &rationals.int(3), &at(7)).unwrap(), -1);
    assert_eq!(hilbert_symbol_finite(&rationals.int(-1), &rationals.int(-1), &at(3)).unwrap(), 1);
    assert_eq!(hilbert_symbol_finite(&rationals.int(3), &rationals.int(-3), &at(3)).unwrap(), 1);
    assert_eq!(hilbert_symbol_finite(&rationals.int(3), &rationals.int(3), &at(3)).unwrap(), -1);
}

#[test]
fn cyclotomic_extension_splitting_matches_local_squares() {
    // K = k(√(−sin² 2π/m)) = k(ζ_m) for cos 2π/m ∈ k
    let k = elkies_field();
    for m in [3u64, 4, 7, 14] {
        let s2 = &(&cos_element(1, m) * &cos_element(1, m)) - &CycloElement::from_int(1);
        let c = k.element(&s2).unwrap();
        for p in (3..80).filter(|&p| units::is_prime(p) && p != 7 && m % p != 0) {
            for v in splitting_type(&k, p).unwrap().places {
                let group = splits_in_cyclotomic_extension(&v, m).unwrap();
                assert_eq!(group, local_is_square(&v, &c).unwrap(), "m = {m}, {v:?}");
            }
        }
    }
    // 2 has order 3 mod 7, so the inert prime of k splits in Q(ζ_7)
    let v = splitting_type(&k, 2).unwrap().places[0].clone();
    assert_eq!(splits_in_cyclotomic_extension(&v, 7), Some(true));
    assert_eq!(splits_in_cyclotomic_extension(&v, 14), Some(true));
    // 3 is a primitive root mod 7: inert in k, then inert again in Q(ζ_7)
    let v = splitting_type(&k, 3).unwrap().places[0].clone();
    assert_eq!(splits_in_cyclotomic_extension(&v, 7), Some(false));
    assert_eq!(splits_in_cyclotomic_extension(&v, 1), None);
}

#[test]
fn square_roots() {
    let k = AbelianField::sin_field(5);
    let s = k.element(&sin_element(1, 5)).unwrap();
    let root = sqrt_in_field(&(&s * &s)).root().cloned().unwrap();
    assert!(root == s || root == -&s);

    let r5 = AbelianField::real_cyclotomic(5);
    let sqrt5 = &r5.element(&cos_element(1, 5).scale(&q(4, 1))).unwrap() + &r5.int(1);
    assert_eq!(&sqrt5 * &sqrt5, r5.int(5));
    let root = sqrt_in_field(&r5.int(5)).root().cloned().unwrap();
    assert!(root == sqrt5 || root == -&sqrt5);

    let r8 = AbelianField::real_cyclotomic(8);
    let root = sqrt_in_field(&r8.int(2)).root().cloned().unwrap();
    assert_eq!(&root * &root, r8.int(2));

    let k7 = elkies_field();
    assert!(matches!(sqrt_in_field(&k7.int(2)), SqrtOutcome::NotSquare(_)));
    assert!(matches!(sqrt_in_field(&k7.int(-1)), SqrtOutcome::NotSquare(_)));
    let c = c7(&k7);
    let root = sqrt_in_field(&(&c * &c)).root().cloned().unwrap();
    assert!(root == c || root == -&c);
    assert_eq!(
        sqrt_in_field(&k7.rational(&q(9, 4))).root().cloned(),
        Some(k7.rational(&q(3, 2)))
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn square_root_recovers_random_squares(coords in proptest::collection::vec(-5i64..=5, 3), den in 1i64..4) {
        let k = elkies_field();
        let c = c7(&k);
        let y = &(&k.rational(&q(coords[0], den)) + &c.scale(&q(coords[1], 1))) + &(&c * &c).scale(&q(coords[2], 1));
        let x = &y * &y;
        match sqrt_in_field(&x) {
            SqrtOutcome::Root(r) => prop_assert!(r == y || r == -&y),
            other => prop_assert!(false, "{other:?}"),
        }
    }
}

// --- brute-force local squares -------------------------------------------

/// A quadratic (or rational) field with an independent model of its local
/// ring at p: (Z/p^s)[T]/(T² + c1·T + c0), θ ↦ T.
struct Model {
    field: AbelianField,
    theta: FieldElement,
    /// (c0, c1) of the minimal polynomial of θ, or None for Q.
    poly: Option<(i64, i64)>,
    p: u64,
    s: u32,
}

impl Model {
    fn modulus(&self) -> i64 {
        (self.p as i64).pow(self.s)
    }

    fn reduce(&self, a: i64, b: i64) -> (i64, i64) {
        let m = self.modulus();
        (a.rem_euclid(m), b.rem_euclid(m))
    }

    fn square(&self, a: i64, b: i64) -> (i64, i64) {
        match self.poly {
            None => self.reduce(a * a, 0),
            Some((c0, c1)) => {
                // (a + bT)² = a² + 2abT + b²T², T² = −c1 T − c0
                let t2 = b * b;
                self.reduce(a * a - t2 * c0, 2 * a * b - t2 * c1)
            }
        }
    }

    fn squares(&self) -> HashSet<(i64, i64)> {
        let m = self.modulus();
        let bs = if self.poly.is_some() { m } else { 1 };
        let mut out = HashSet::new();
        for a in 0..m {
            for b in 0..bs {
                out.insert(self.square(a, b));
            }
        }
        out
    }
}

fn models() -> &'static Vec<(Model, HashSet<(i64, i64)>)> {
    static MODELS: OnceLock<Vec<(Model, HashSet<(i64, i64)>)>> = OnceLock::new();
    MODELS.get_or_init(|| {
        let rationals = AbelianField::rationals();
        let gauss = AbelianField::new(4, &[1]).unwrap();
        let eisenstein = AbelianField::new(3, &[1]).unwrap();
        let golden = AbelianField::real_cyclotomic(5);
        let i = gauss.element(&CycloElement::zeta_pow(4, 1)).unwrap();
        let w = eisenstein.element(&CycloElement::zeta_pow(3, 1)).unwrap();
        let g = golden.element(&cos_element(1, 5).scale(&q(2, 1))).unwrap();
        let mut out = Vec::new();
        for (p, s) in [(3u64, 3u32), (5, 3), (7, 3), (11, 2), (13, 2)] {
            out.push(Model { field: rationals.clone(), theta: rationals.int(0), poly: None, p, s });
        }
        // inert: Q(i) at 3, 7, 11; Q(ζ_3) at 5, 11; Q(√5) at 3, 7; split: Q(i) at 5, 13
        for (p, s) in [(3u64, 3u32), (7, 2), (11, 1), (5, 2), (13, 1)] {
            out.push(Model { field: gauss.clone(), theta: i.clone(), poly: Some((1, 0)), p, s });
        }
        for (p, s) in [(5u64, 2u32), (11, 1), (7, 2)] {
            out.push(Model { field: eisenstein.clone(), theta: w.clone(), poly: Some((1, 1)), p, s });
        }
        for (p, s) in [(3u64, 3u32), (7, 2), (11, 1)] {
            out.push(Model { field: golden.clone(), theta: g.clone(), poly: Some((-1, 1)), p, s });
        }
        out.into_iter()
            .map(|m| {
                let sq = m.squares();
                (m, sq)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn local_squares_match_brute_force(index in 0usize..16, a in -60i64..60, b in -60i64..60) {
        let (model, squares) = &models()[index];
        let k = &model.field;
        let b = if model.poly.is_some() { b } else { 0 };
        let x = &k.int(a) + &model.theta.scale(&q(b, 1));
        prop_assume!(!x.is_zero());
        let norm = x.norm().to_integer();
        prop_assume!(v_p(&norm, model.p) < model.s);
        let brute = squares.contains(&model.reduce(a, b));
        let places = splitting_type(k, model.p).unwrap().places;
        let mut local = true;
        for v in &places {
            local &= local_is_square(v, &x).unwrap();
        }
        prop_assert_eq!(brute, local, "{:?} at p = {}, x = {} + {}θ", k, model.p, a, b);
    }
}

fn tame_setups() -> Vec<(AbelianField, FinitePlace)> {
    let mut out = Vec::new();
    let rationals = AbelianField::rationals();
    for p in [3u64, 5, 7, 13] {
        out.push((rationals.clone(), splitting_type(&rationals, p).unwrap().places[0].clone()));
    }
    let k = elkies_field();
    for p in [3u64, 13, 29] {
        for v in splitting_type(&k, p).unwrap().places {
            out.push((k.clone(), v));
        }
    }
    let s5 = AbelianField::sin_field(5);
    out.push((s5.clone(), splitting_type(&s5, 11).unwrap().places[0].clone()));
    out
}

fn element_strategy() -> impl Strategy<Value = (i64, i64, i64)> {
    (-40i64..40, -6i64..6, -3i64..3).prop_filter("nonzero", |t| *t != (0, 0, 0))
}

fn build(k: &AbelianField, (a0, a1, a2): (i64, i64, i64)) -> FieldElement {
    if k.degree() == 1 {
        return k.int(a0 + 41 * a1 + 1000 * a2);
    }
    // generic small element a0 + a1·g + a2·g² for g a fixed generator
    let g = k
        .basis()
        .into_iter()
        .map(|b| k.element(&b).unwrap())
        .find(|b| b.as_rational().is_none())
        .unwrap();
    &(&k.int(a0) + &g.scale(&q(a1, 1))) + &(&g * &g).scale(&q(a2, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn hilbert_symbol_laws(setup in 0usize..12, a in element_strategy(), b in element_strategy(), b2 in element_strategy()) {
        let setups = tame_setups();
        let (k, v) = &setups[setup % setups.len()];
        let a = build(k, a);
        let b = build(k, b);
        let b2 = build(k, b2);
        prop_assume!(!a.is_zero() && !b.is_zero() && !b2.is_zero());
        let ab = hilbert_symbol_finite(&a, &b, v).unwrap();
        prop_assert_eq!(ab, hilbert_symbol_finite(&b, &a, v).unwrap());
        prop_assert_eq!(hilbert_symbol_finite(&a, &-&a, v).unwrap(), 1);
        let ab2 = hilbert_symbol_finite(&a, &b2, v).unwrap();
        prop_assert_eq!(hilbert_symbol_finite(&a, &(&b * &b2), v).unwrap(), ab * ab2);
    }

    #[test]
    fn valuation_is_stable_under_precision(setup in 0usize..12, a in element_strategy()) {
        let setups = tame_setups();
        let (k, v) = &setups[setup % setups.len()];
        let x = build(k, a);
        prop_assume!(!x.is_zero());
        let bound = valuation_bound(&x, v.residue_char());
        let low = PadicContext::new(v, bound + 1).unwrap().valuation_unit(&x).unwrap();
        let high = PadicContext::new(v, 2 * bound + 12).unwrap().valuation_unit(&x).unwrap();
        prop_assert_eq!(low.v, high.v);
        prop_assert_eq!(low.unit, high.unit);
    }
}
