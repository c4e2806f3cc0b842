use std::collections::HashMap;

use commgroup::homology::{
    column_rank, exterior_basis, free_case_complex, injectivity_truncation_check,
    koszul_differential, smith_normal_form_dense, smith_normal_form_sparse, smith_with_transforms,
    surface_case_complex,
};
use commgroup::module::{braces, Case};
use commgroup::rewrite::exponent_box;
use commgroup::sample::{self, Stream};
use commgroup::{IntegerMatrix, ModuleElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> IntegerMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| if rng.gen_bool(0.4) { rng.gen_range(-9..=9) } else { 0 })
                .collect()
        })
        .collect();
    IntegerMatrix::from_rows(&data).unwrap()
}

/// Product of the invariant factors equals the gcd of the maximal nonzero minors, checked on
/// square full-rank inputs where that gcd is the absolute determinant.
#[test]
fn snf_matches_determinant() {
    let mut rng = sample::rng(1, Stream::Koszul);
    for _ in 0..40 {
        let n = rng.gen_range(1..=5);
        let m = random_matrix(&mut rng, n, n);
        let det = m.determinant().unwrap();
        let form = smith_normal_form_dense(&m);
        if det.is_zero() {
            assert!(form.rank() < n);
        } else {
            let prod = form.divisors.iter().fold(BigInt::one(), |a, d| a * d);
            assert_eq!(prod, det.abs());
        }
    }
}

#[test]
fn snf_transforms_are_unimodular_and_chain() {
    let mut rng = sample::rng(2, Stream::Koszul);
    for _ in 0..40 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m = random_matrix(&mut rng, r, c);
        let dec = smith_with_transforms(&m);
        assert_eq!(dec.u.try_mul(&m).unwrap().try_mul(&dec.v).unwrap(), dec.d);
        assert!(dec.u.determinant().unwrap().abs().is_one());
        assert!(dec.v.determinant().unwrap().abs().is_one());
        let divs = dec.form().divisors;
        for w in divs.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for i in 0..r {
            for j in 0..c {
                if i != j {
                    assert!(dec.d.get(i, j).is_zero());
                }
            }
        }
    }
}

#[test]
fn sparse_and_dense_snf_agree() {
    let mut rng = sample::rng(3, Stream::Koszul);
    for _ in 0..60 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let m = random_matrix(&mut rng, r, c);
        let mut triples = Vec::new();
        for i in 0..r {
            for j in 0..c {
                if !m.get(i, j).is_zero() {
                    triples.push((i, j, m.get(i, j).clone()));
                }
            }
        }
        let sparse = smith_normal_form_sparse(r, c, triples);
        assert_eq!(sparse, smith_normal_form_dense(&m));
    }
}

#[test]
fn injectivity_on_small_boxes() {
    assert!(injectivity_truncation_check(1, 0).unwrap());
    assert!(injectivity_truncation_check(1, 1).unwrap());
    assert!(injectivity_truncation_check(2, 1).unwrap());
    assert!(injectivity_truncation_check(1, -1).is_err());
}

#[test]
fn homology_json_shape() {
    let h = free_case_complex(3, 1).unwrap().homology_at(1).unwrap();
    assert_eq!(h.to_json(), r#"{"betti":1,"torsion":[]}"#);
    let h = surface_case_complex(2, 0).unwrap().homology_at(0).unwrap();
    assert_eq!(h.to_json(), r#"{"betti":5,"torsion":[]}"#);
    assert!(surface_case_complex(0, 1).is_err());
}

/// On a box, the relations spanned by shifted Koszul triples account for every linear relation
/// among the shifted braces classes.
///
/// Pair generators `t^h e_ij` are restricted to `h_i, h_j < bound`, and triple generators
/// `t^h e_ijk` to `h_i, h_j, h_k < bound`, so the truncated complex is a tensor product of
/// exact one-variable truncations.
#[test]
fn presentation_faithfulness_bridge() {
    let bound = 1;
    for n in [3, 4] {
        let pairs = exterior_basis(n, 2);
        let triples = exterior_basis(n, 3);
        let cube = exponent_box(n, bound);

        let mut index: HashMap<(Vec<i64>, usize), usize> = HashMap::new();
        let mut images = Vec::new();
        for h in &cube {
            for (p, pair) in pairs.iter().enumerate() {
                if pair.iter().all(|&i| h[i - 1] < bound) {
                    index.insert((h.clone(), p), images.len());
                    images.push(braces(n, pair[0], pair[1], h).unwrap());
                }
            }
        }
        let nullity = images.len() - column_rank(&images);

        let d3 = koszul_differential(n, 3);
        let mut entries = Vec::new();
        let mut col = 0;
        for h in &cube {
            for (t, triple) in triples.iter().enumerate() {
                if !triple.iter().all(|&i| h[i - 1] < bound) {
                    continue;
                }
                let mut image = ModuleElement::zero(n, Case::Free);
                for r in 0..pairs.len() {
                    for (e, c) in d3.get(r, t).terms() {
                        let target: Vec<i64> = h.iter().zip(e).map(|(a, b)| a + b).collect();
                        let row = index[&(target.clone(), r)];
                        entries.push((row, col, BigInt::from(c)));
                        image = image.try_add(&images[row].scale(c)).unwrap();
                    }
                }
                assert!(image.is_zero(), "shifted Koszul relation {triple:?} at {h:?}");
                col += 1;
            }
        }
        let relation_rank = smith_normal_form_sparse(images.len(), col, entries).rank();
        assert!(nullity > 0);
        assert_eq!(relation_rank, nullity, "n = {n}");
    }
}
