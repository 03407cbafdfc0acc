use super::*;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rat(n: i64, d: i64) -> CycloElement {
    CycloElement::rational(&q(n, d), 1)
}

#[test]
fn cos_of_simple_angles() {
    assert_eq!(cos_element(0, 1), CycloElement::from_int(1));
    assert_eq!(cos_element(1, 3).as_rational(), Some(q(-1, 2)));
    assert_eq!(cos_element(1, 4).as_rational(), Some(q(0, 1)));
    assert_eq!(cos_element(1, 2).as_rational(), Some(q(-1, 1)));
    assert_eq!(cos_element(2, 6), cos_element(1, 3));
    assert_eq!(cos_element(-1, 7), cos_element(1, 7));
}

/// Expands ∏ (T − 2cos 2πj/7) over j ∈ {1,2,4} by hand in Q(ζ_7).
#[test]
fn cos_2pi_over_7_oracle() {
    let roots: Vec<CycloElement> = [1, 2, 4]
        .iter()
        .map(|&j| cos_element(j, 7).scale(&q(2, 1)))
        .collect();
    // elementary symmetric functions
    let e1 = &(&roots[0] + &roots[1]) + &roots[2];
    let e2 = &(&(&roots[0] * &roots[1]) + &(&roots[0] * &roots[2])) + &(&roots[1] * &roots[2]);
    let e3 = &(&roots[0] * &roots[1]) * &roots[2];
    // T^3 - e1 T^2 + e2 T - e3 = T^3 + T^2 - 2T - 1
    assert_eq!(e1.as_rational(), Some(q(-1, 1)));
    assert_eq!(e2.as_rational(), Some(q(-2, 1)));
    assert_eq!(e3.as_rational(), Some(q(1, 1)));

    let c = cos_element(1, 7).scale(&q(2, 1));
    assert_eq!(
        c.minimal_polynomial(),
        vec![q(-1, 1), q(-2, 1), q(1, 1), q(1, 1)]
    );
    // 8x^3 + 4x^2 - 4x - 1 for cos itself, made monic
    assert_eq!(
        cos_element(1, 7).minimal_polynomial(),
        vec![q(-1, 8), q(-1, 2), q(1, 2), q(1, 1)]
    );
}

#[test]
fn arithmetic_examples() {
    let c = &CycloElement::zeta_pow(7, 1) + &CycloElement::zeta_pow(7, -1);
    assert_eq!(&c * &CycloElement::from_int(1), c);
    let sum = &cos_element(1, 5) + &cos_element(2, 5);
    assert_eq!(sum.as_rational(), Some(q(-1, 2)));
    let c7 = cos_element(1, 7);
    let s7 = sin_element(1, 7);
    assert_eq!(s7.conductor(), 28);
    let pyth = &(&c7 * &c7) + &(&s7 * &s7);
    assert_eq!(pyth.as_rational(), Some(q(1, 1)));
    assert_eq!(
        CycloElement::from_int(3).checked_div(&CycloElement::from_int(0)),
        Err(Error::DivisionByZero)
    );
}

#[test]
fn stabilizer_examples() {
    assert_eq!(cos_element(1, 7).stabilizer().elements(), &[1, 6]);
    let s5 = sin_element(1, 5);
    assert_eq!(s5.conductor(), 20);
    let stab = s5.stabilizer();
    assert_eq!(stab.order(), 2);
    assert_eq!(totient(20) as usize / stab.order(), 4);
    assert_eq!(CycloElement::one(12).stabilizer(), Subgroup::full(12));
}

#[test]
fn galois_apply_examples() {
    let c = &CycloElement::zeta_pow(7, 1) + &CycloElement::zeta_pow(7, -1);
    assert_eq!(c.galois_apply(1).unwrap(), c);
    assert_eq!(rat(3, 4).lift(9).galois_apply(2).unwrap(), rat(3, 4).lift(9));
    let expected = &CycloElement::zeta_pow(7, 3) + &CycloElement::zeta_pow(7, -3);
    assert_eq!(c.galois_apply(3).unwrap(), expected);
    assert_eq!(expected, cos_element(3, 7).scale(&q(2, 1)));
    assert!(c.galois_apply(7).is_err());
}

#[test]
fn minimal_polynomial_examples() {
    assert_eq!(rat(1, 2).minimal_polynomial(), vec![q(-1, 2), q(1, 1)]);
    assert_eq!(
        cos_element(1, 5).minimal_polynomial(),
        vec![q(-1, 4), q(1, 2), q(1, 1)]
    );
}

/// Oracle: cos 72° satisfies x² + x/2 − 1/4 and that root is expressible in a
/// Q-basis of Q(ζ_20)^+ (solved directly by linear algebra).
#[test]
fn field_contains_examples() {
    let k = AbelianField::real_cyclotomic(20);
    assert_eq!(k.degree(), 4);
    let c = cos_element(1, 5);
    let x2 = &c * &c;
    let poly = &(&x2 + &c.scale(&q(1, 2))) - &rat(1, 4);
    assert!(poly.is_zero());
    let basis = k.basis();
    let target = c.lift(20).coefficients();
    let rows: Vec<Vec<BigRational>> = (0..8)
        .map(|r| basis.iter().map(|b| b.coefficients()[r].clone()).collect())
        .collect();
    assert!(matches!(linalg::solve(&rows, &target), Solution::Unique(_)));
    assert!(field_contains(&k, &c));

    let sin5 = AbelianField::sin_field(5);
    assert!(!field_contains(&sin5, &cos_element(1, 7)));
    assert!(field_contains(&sin5, &CycloElement::one(1)));
    assert!(field_contains(&AbelianField::rationals(), &rat(5, 3)));
}

#[test]
fn is_integral_examples() {
    let k = AbelianField::real_cyclotomic(7);
    let c = k.element(&cos_element(1, 7).scale(&q(2, 1))).unwrap();
    let c2 = &c * &c;
    let coords = is_integral(&c2, &c).unwrap().unwrap();
    assert_eq!(coords, vec![0.into(), 0.into(), 1.into()]);
    let c3 = &c2 * &c;
    let coords = is_integral(&c3, &c).unwrap().unwrap();
    assert_eq!(coords, vec![1.into(), 2.into(), BigInt::from(-1)]);
    assert_eq!(is_integral(&k.rational(&q(1, 2)), &c).unwrap(), None);
    // a generator of a proper subfield is not a basis
    assert_eq!(is_integral(&c, &k.int(2)).err(), Some(Error::NotABasis));
}

#[test]
fn demotion_round_trip() {
    // cos(2π/14) = -cos(6π/7) lives in Q(ζ_7)
    let x = cos_element(1, 14);
    let y = x.to_conductor(7).unwrap();
    assert_eq!(y, -cos_element(3, 7));
    assert_eq!(y.lift(14), x);
    assert!(CycloElement::zeta_pow(5, 1).to_conductor(7).is_none());
}

#[test]
fn serialization_form() {
    assert_eq!(cos_element(1, 3).serialize(), "[3; -1/2, 0]");
    assert_eq!(rat(-7, 3).serialize(), "[1; -7/3]");
    assert_eq!(CycloElement::zeta_pow(4, 1).serialize(), "[4; 0, 1]");
}

/// Q(sin 2π/p) and Q(cos π/2p) are the same subfield of Q(ζ_{4p}).
#[test]
fn sine_field_equals_quarter_cosine_field() {
    for p in [5u64, 7, 11, 13] {
        let s = sin_element(1, p).lift(4 * p).stabilizer();
        let c = cos_element(1, 4 * p).stabilizer();
        assert_eq!(s, c, "p = {p}");
        assert_eq!(AbelianField::sin_field(p).degree() as u64, p - 1);
    }
}

fn small_conductor() -> impl Strategy<Value = u64> {
    1u64..=40
}

fn element_in(n: u64) -> impl Strategy<Value = CycloElement> {
    let deg = totient(n) as usize;
    proptest::collection::vec((-6i64..=6, 1i64..=4), deg).prop_map(move |cs| {
        let coeffs: Vec<BigRational> = cs.iter().map(|&(a, b)| q(a, b)).collect();
        CycloElement::from_rationals(n, &coeffs).unwrap()
    })
}

fn three_elements() -> impl Strategy<Value = (CycloElement, CycloElement, CycloElement)> {
    small_conductor().prop_flat_map(|n| (element_in(n), element_in(n), element_in(n)))
}

fn unit_of(n: u64) -> impl Strategy<Value = u64> {
    let us = units::units(n);
    (0..us.len()).prop_map(move |i| us[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms((x, y, z) in three_elements()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        if !y.is_zero() {
            let quotient = x.checked_div(&y).unwrap();
            prop_assert_eq!(&quotient * &y, x.clone());
        }
    }

    #[test]
    fn galois_action_is_a_ring_homomorphism(
        (n, x, y, t1, t2) in small_conductor().prop_flat_map(|n| (Just(n), element_in(n), element_in(n), unit_of(n), unit_of(n)))
    ) {
        let s = |e: &CycloElement, t: u64| e.galois_apply(t).unwrap();
        prop_assert_eq!(s(&(&x + &y), t1), &s(&x, t1) + &s(&y, t1));
        prop_assert_eq!(s(&(&x * &y), t1), &s(&x, t1) * &s(&y, t1));
        let t12 = units::mul_mod(t1, t2, n);
        prop_assert_eq!(s(&x, t12), s(&s(&x, t2), t1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minimal_polynomial_vanishes((n, x) in (1u64..=24).prop_flat_map(|n| (Just(n), element_in(n)))) {
        let poly = x.minimal_polynomial();
        let mut acc = CycloElement::zero(n);
        for c in poly.iter().rev() {
            acc = &(&acc * &x) + &CycloElement::rational(c, n);
        }
        prop_assert!(acc.is_zero());
        prop_assert_eq!((poly.len() - 1) * x.stabilizer().order(), totient(n) as usize);
    }

    #[test]
    fn angle_identities(a in 0i64..60, n in 1u64..30) {
        let c = cos_element(a, n);
        let s = sin_element(a, n);
        prop_assert_eq!((&(&c * &c) + &(&s * &s)).as_rational(), Some(q(1, 1)));
        let double = &(&c * &c).scale(&q(2, 1)) - &CycloElement::from_int(1);
        prop_assert_eq!(double, cos_element(2 * a, n));
    }

    #[test]
    fn refinement_never_flips_a_sign(a in 1i64..30, n in 2u64..30, r in -3i64..=3, t_index in 0usize..8) {
        let x = &cos_element(a, n) - &CycloElement::rational(&q(r, 4), 1);
        let us = units::units(x.conductor());
        let t = us[t_index % us.len()];
        let certified = certified_sign(&x, t).unwrap();
        for bits in [64u32, 128, 256, 512] {
            if let Some(s) = sign_at_precision(&x, t, bits).unwrap() {
                prop_assert_eq!(s, certified);
            }
        }
        let (re, _) = x.approx_at(t);
        if re.abs() > 1e-9 {
            prop_assert_eq!(certified == Sign::Positive, re > 0.0);
        }
    }
}

/// b_5 = cos 2π/5 − 1 + 32/25: the positive conjugates are isolated from the
/// minimal polynomial's rational sign changes and compared with the certified signs.
#[test]
fn b5_signs_against_root_isolation() {
    let b5 = &(&cos_element(1, 5) - &rat(1, 1)) + &rat(32, 25);
    let poly = b5.minimal_polynomial();
    let eval = |x: &BigRational| poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c);
    // isolate roots on a grid of step 1/100 over [-3, 3]
    let mut roots = Vec::new();
    for i in -300..300 {
        let lo = q(i, 100);
        let hi = q(i + 1, 100);
        let (a, b) = (eval(&lo), eval(&hi));
        if a.is_zero() || (a < BigRational::zero()) != (b < BigRational::zero()) {
            roots.push((lo, hi));
        }
    }
    assert_eq!(roots.len(), 2);
    // identity root near 0.589 lies in a positive interval, the other is negative
    let (id_re, _) = b5.approx_at(1);
    let (tau_re, _) = b5.approx_at(2);
    let locate = |v: f64| {
        roots
            .iter()
            .find(|(lo, hi)| {
                let lo = lo.numer().to_string().parse::<f64>().unwrap() / lo.denom().to_string().parse::<f64>().unwrap();
                let hi = hi.numer().to_string().parse::<f64>().unwrap() / hi.denom().to_string().parse::<f64>().unwrap();
                lo <= v && v <= hi
            })
            .cloned()
            .unwrap()
    };
    assert!(locate(id_re).0 > BigRational::zero());
    assert!(locate(tau_re).1 < BigRational::zero());
    assert_eq!(certified_sign(&b5, 1).unwrap(), Sign::Positive);
    assert_eq!(certified_sign(&b5, 2).unwrap(), Sign::Negative);
    assert_eq!(certified_sign(&CycloElement::zero(5), 3).unwrap(), Sign::Zero);
}
