use commgroup::module::{
    abelianize_free, abelianize_surface, act, act_monomial, braces, braces_surface, fox_of_element,
    fox_vector, relator_class, surface_quotient, Case,
};
use commgroup::sample::{self, Stream};
use commgroup::{LaurentPoly, ModuleElement, SurfacePresentation, TSymbol, Word};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(rank: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, rank), -3i64..=3), 0..5)
        .prop_map(move |terms| LaurentPoly::from_terms(rank, terms).unwrap())
}

fn seeded() -> impl Strategy<Value = ChaCha8Rng> {
    any::<u64>().prop_map(ChaCha8Rng::seed_from_u64)
}

fn element(rng: &mut ChaCha8Rng, rank: usize) -> ModuleElement {
    let mut m = ModuleElement::zero(rank, Case::Free);
    for _ in 0..rng.gen_range(0..4) {
        let s = sample::symbol(rng, rank, 2);
        let one = ModuleElement::symbol(rank, Case::Free, s, rng.gen_range(-3..=3)).unwrap();
        m = m.try_add(&one).unwrap();
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a * &b).augment(), a.augment() * b.augment());
        prop_assert_eq!(LaurentPoly::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn action_is_a_module_structure(a in poly(3), b in poly(3), mut rng in seeded()) {
        let m = element(&mut rng, 3);
        let m2 = element(&mut rng, 3);
        let lhs = act(&a, &act(&b, &m).unwrap()).unwrap();
        prop_assert_eq!(lhs, act(&(&a * &b), &m).unwrap());
        let sum = act(&a, &m.try_add(&m2).unwrap()).unwrap();
        prop_assert_eq!(sum, act(&a, &m).unwrap().try_add(&act(&a, &m2).unwrap()).unwrap());
        prop_assert_eq!(act(&LaurentPoly::one(3), &m).unwrap(), m.clone());
        prop_assert_eq!(ModuleElement::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn abelianization_is_equivariant(mut rng in seeded()) {
        let c = sample::commutator_word(&mut rng, 3, 16);
        let d = sample::commutator_word(&mut rng, 3, 16);
        let len = rng.gen_range(0..8);
        let w = sample::reduced_word(&mut rng, 3, len);
        let ac = abelianize_free(&c).unwrap();
        prop_assert_eq!(
            abelianize_free(&(&c * &d)).unwrap(),
            ac.try_add(&abelianize_free(&d).unwrap()).unwrap()
        );
        prop_assert_eq!(
            abelianize_free(&c.conjugate_by(&w)).unwrap(),
            act_monomial(w.abelianize().coords(), &ac).unwrap()
        );
    }

    #[test]
    fn fox_product_rule(mut rng in seeded()) {
        let lu = rng.gen_range(0..10);
        let lv = rng.gen_range(0..10);
        let u = sample::reduced_word(&mut rng, 3, lu);
        let v = sample::reduced_word(&mut rng, 3, lv);
        let (fu, fv, fuv) = (fox_vector(&u), fox_vector(&v), fox_vector(&(&u * &v)));
        let shift = u.abelianize();
        for i in 0..3 {
            prop_assert_eq!(&fuv.0[i], &(&fu.0[i] + &fv.0[i].shift(shift.coords())));
        }
        let total = &fox_vector(&u).fundamental_sum() + &LaurentPoly::one(3);
        prop_assert_eq!(total, LaurentPoly::monomial(shift.coords().to_vec(), 1));
    }

    #[test]
    fn magnus_map_is_linear(mut rng in seeded()) {
        let m = element(&mut rng, 3);
        let m2 = element(&mut rng, 3);
        let mut sum = fox_of_element(&m);
        sum.add_scaled(&fox_of_element(&m2), 1);
        prop_assert_eq!(sum, fox_of_element(&m.try_add(&m2).unwrap()));
    }
}

#[test]
fn braces_agree_with_the_definition() {
    let mut rng = sample::rng(11, Stream::Module);
    for _ in 0..60 {
        let n = rng.gen_range(2..=4);
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        let h = sample::exponent(&mut rng, n, 2);
        let lift = Word::sorted_monomial(n, 1, &h);
        let c = Word::from_letters(n, &[-(i as i64), -(j as i64), i as i64, j as i64]).unwrap();
        assert_eq!(
            braces(n, i, j, &h).unwrap(),
            abelianize_free(&c.conjugate_by(&lift)).unwrap()
        );
    }
    assert!(braces(3, 2, 2, &[0, 0, 0]).is_err());
    assert!(braces(3, 3, 1, &[0, 0, 0]).is_err());
}

#[test]
fn braces_on_the_first_generator_are_unit_symbols() {
    let m = braces(3, 1, 3, &[2, -1, 4]).unwrap();
    let expected: TSymbol = "C[1,3](2,-1,4)".parse().unwrap();
    assert_eq!(m.as_unit_symbol(), Some(&expected));
}

#[test]
fn surface_classes() {
    let p = SurfacePresentation::new(2).unwrap();
    let rc = relator_class(2).unwrap();
    assert!(surface_quotient(&rc).unwrap().is_zero());
    let r = p.relator().clone();
    assert!(abelianize_surface(&p, &r).unwrap().is_zero());
    let w = Word::parse(4, "x3^-1 x4^-1 x3 x4").unwrap();
    let m = abelianize_surface(&p, &w).unwrap();
    assert_eq!(m, braces_surface(&p, 3, 4, &[0, 0, 0, 0]).unwrap());
    assert!(m.terms().all(|(s, _)| !(s.i == 1 && s.j == 2)));
    let b12 = braces_surface(&p, 1, 2, &[0, 0, 0, 0]).unwrap();
    assert_eq!(b12, m.neg());
}

#[test]
fn surface_abelianization_matches_rewriting() {
    let p = SurfacePresentation::new(2).unwrap();
    let mut rng = sample::rng(5, Stream::Quotient);
    for _ in 0..40 {
        let w = sample::commutator_word(&mut rng, 4, 16);
        let bw = commgroup::rewrite_surface(&p, &w).unwrap();
        let via_free = surface_quotient(&abelianize_free(&w).unwrap()).unwrap();
        assert_eq!(abelianize_surface(&p, &w).unwrap(), via_free);
        assert_eq!(
            ModuleElement::from_basis_word(bw.word(), Case::Surface),
            via_free
        );
    }
}

#[test]
fn invalid_inputs() {
    assert!(abelianize_free(&Word::parse(2, "x1").unwrap()).is_err());
    assert!(braces(3, 0, 2, &[0, 0, 0]).is_err());
    assert!(braces(3, 1, 2, &[0, 0]).is_err());
    assert!(ModuleElement::symbol(4, Case::Surface, "C[1,2](0,0,0,0)".parse().unwrap(), 1).is_err());
    assert!(LaurentPoly::from_json("{").is_err());
    assert!(relator_class(0).is_err());
}
