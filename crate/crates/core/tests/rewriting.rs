use commgroup::rewrite::{express_zero_sum, normalize_conjugator, rewrite_sub, SSymbol, ZWord};
use commgroup::sample::{self, Stream};
use commgroup::surface_rewrite::{rewrite_surface, surface_basis_enumerate};
use commgroup::{
    expand, free_basis_enumerate, rewrite, BasisWord, Error, Sign, SurfacePresentation, TSymbol,
    Word,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn commutator_word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    any::<u64>().prop_map(move |s| sample::commutator_word(&mut ChaCha8Rng::seed_from_u64(s), rank, max_len))
}

fn basis_word(rank: usize) -> impl Strategy<Value = BasisWord> {
    any::<u64>().prop_map(move |s| sample::basis_word(&mut ChaCha8Rng::seed_from_u64(s), rank, 6, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn free_round_trip(w in commutator_word(4, 30)) {
        prop_assert_eq!(rewrite(&w).unwrap().expand(), w);
    }

    #[test]
    fn rewrite_is_a_homomorphism(u in commutator_word(3, 20), v in commutator_word(3, 20)) {
        let mut joined = rewrite(&u).unwrap();
        joined.append(&rewrite(&v).unwrap());
        prop_assert_eq!(rewrite(&(&u * &v)).unwrap(), joined);
        prop_assert_eq!(rewrite(&u.inverse()).unwrap(), rewrite(&u).unwrap().inverse());
    }

    #[test]
    fn basis_words_are_normal_forms(bw in basis_word(3)) {
        prop_assert_eq!(rewrite(&bw.expand()).unwrap(), bw);
    }

    #[test]
    fn text_lines_round_trip(bw in basis_word(4)) {
        let text = bw.to_lines().join("\n");
        prop_assert_eq!(BasisWord::parse_lines(4, &text).unwrap(), bw);
    }

    #[test]
    fn surface_rewrite_is_idempotent(seed in any::<u64>()) {
        let p = SurfacePresentation::new(2).unwrap();
        let w = sample::commutator_word(&mut ChaCha8Rng::seed_from_u64(seed), 4, 20);
        let out = rewrite_surface(&p, &w).unwrap();
        prop_assert!(p.surface_equal(&out.expand(), &w).unwrap());
        prop_assert_eq!(rewrite_surface(&p, &out.expand()).unwrap(), out);
    }

    #[test]
    fn relator_products_rewrite_to_empty(seed in any::<u64>()) {
        let p = SurfacePresentation::new(2).unwrap();
        let w = sample::relator_product(&mut ChaCha8Rng::seed_from_u64(seed), &p, 3, 4);
        prop_assert!(rewrite_surface(&p, &w).unwrap().is_empty());
    }
}

#[test]
fn single_commutator() {
    let w = Word::parse(2, "x1^-1 x2^-1 x1 x2").unwrap();
    let bw = rewrite(&w).unwrap();
    assert_eq!(bw.to_lines(), vec!["+ C[1,2](0,0)"]);
    assert_eq!(expand(&bw), w);
}

#[test]
fn conjugated_commutator() {
    let s: TSymbol = "C[1,3](1,2,0)".parse().unwrap();
    let bw = rewrite(&s.expand()).unwrap();
    assert_eq!(bw, BasisWord::single(s, Sign::Plus));
}

#[test]
fn every_enumerated_symbol_is_its_own_normal_form() {
    for n in 2..=4 {
        for s in free_basis_enumerate(n, 1) {
            let bw = rewrite(&s.expand()).unwrap();
            assert_eq!(bw, BasisWord::single(s.clone(), Sign::Plus), "{s}");
        }
    }
}

#[test]
fn enumeration_counts() {
    assert_eq!(free_basis_enumerate(2, 1).len(), 9);
    assert_eq!(free_basis_enumerate(3, 1).len(), 2 * 27 + 9);
    assert_eq!(surface_basis_enumerate(2, 0).len(), 5);
}

#[test]
fn rejects_words_outside_the_commutator_subgroup() {
    let w = Word::parse(2, "x1").unwrap();
    let err = rewrite(&w).unwrap_err();
    assert!(matches!(err, Error::NotInCommutatorSubgroup(_)));
    assert_eq!(err.code(), "not-in-commutator-subgroup");
    let p = SurfacePresentation::new(2).unwrap();
    assert!(rewrite_surface(&p, &Word::parse(4, "x3 x3").unwrap()).is_err());
}

#[test]
fn sub_rewrite_uses_only_high_symbols() {
    let w = Word::parse(4, "x3^-1 x4^-1 x3 x4").unwrap();
    let bw = rewrite_sub(&w, 3).unwrap();
    assert!(bw.letters().iter().all(|(s, _)| s.i >= 3));
    assert_eq!(bw.expand(), w);
    assert!(rewrite_sub(&Word::parse(4, "x1 x3 x1^-1 x3^-1").unwrap(), 3).is_err());
}

#[test]
fn ladder_expression_reproduces_the_kernel_word() {
    let mut rng = sample::rng(3, Stream::FreeRoundTrip);
    for _ in 0..60 {
        let mut zw = ZWord::new(4, 1);
        let count = 2 * rng.gen_range(0..4);
        let mut signs: Vec<Sign> = (0..count)
            .map(|t| if t % 2 == 0 { Sign::Plus } else { Sign::Minus })
            .collect();
        signs.shuffle(&mut rng);
        for s in signs {
            let len = rng.gen_range(0..5);
            let v = sample::reduced_word(&mut rng, 3, len).reindex(1, 4).unwrap();
            zw.push(v, s);
        }
        let pieces = express_zero_sum(&zw).unwrap();
        let mut product = Word::identity(4);
        for (s, e) in &pieces {
            let x = s.expand();
            product.push_word(&if *e == Sign::Plus { x } else { x.inverse() });
        }
        assert_eq!(product, zw.product());
    }
    let mut odd = ZWord::new(2, 1);
    odd.push(Word::identity(2), Sign::Plus);
    assert!(matches!(express_zero_sum(&odd), Err(Error::NonzeroExponentSum(1))));
}

#[test]
fn normalized_conjugators_expand_correctly() {
    let s = SSymbol {
        i: 1,
        j: 3,
        k: 2,
        u: Word::parse(3, "x3 x2^-1 x3").unwrap(),
    };
    assert_eq!(normalize_conjugator(&s).expand(), s.expand());
}
