//! Seeded random inputs for property suites, the self-test driver and benchmarks.
//!
//! Every suite draws from its own ChaCha stream of one seed, so adding draws to one suite
//! never shifts another.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rewrite::symbol::{BasisWord, Sign, TSymbol};
use crate::surface::SurfacePresentation;
use crate::word::Word;

/// Named random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    FreeRoundTrip = 1,
    FreeNormalForm = 2,
    SurfaceRoundTrip = 3,
    Dehn = 4,
    Module = 5,
    Fox = 6,
    Koszul = 7,
    WellDefined = 8,
    Filtration = 9,
    Quotient = 10,
    Bench = 11,
}

pub fn rng(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream as u64);
    r
}

fn random_letter(rng: &mut impl Rng, rank: usize) -> i64 {
    let i = rng.gen_range(1..=rank) as i64;
    if rng.gen_bool(0.5) {
        i
    } else {
        -i
    }
}

/// A reduced word with exactly `len` letters.
pub fn reduced_word(rng: &mut impl Rng, rank: usize, len: usize) -> Word {
    let mut letters: Vec<i64> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = random_letter(rng, rank);
        if letters.last() != Some(&-l) {
            letters.push(l);
        }
    }
    Word::from_letters(rank, &letters).expect("letters in range")
}

/// A word with zero abelianization and reduced length at most `max_len`.
///
/// Draws a random half, then appends a shuffled copy of its inverse letters.
pub fn commutator_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    let half = rng.gen_range(0..=max_len / 2);
    let first: Vec<i64> = (0..half).map(|_| random_letter(rng, rank)).collect();
    let mut second: Vec<i64> = first.iter().map(|l| -l).collect();
    second.shuffle(rng);
    let mut letters = first;
    letters.extend(second);
    Word::from_letters(rank, &letters).expect("letters in range")
}

/// A word whose abelianization is nonzero.
pub fn noncommutator_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=max_len.max(1));
        let w = reduced_word(rng, rank, len);
        if !w.abelianize().is_zero() {
            return w;
        }
    }
}

pub fn exponent(rng: &mut impl Rng, dim: usize, bound: i64) -> Vec<i64> {
    (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect()
}

pub fn symbol(rng: &mut impl Rng, rank: usize, bound: i64) -> TSymbol {
    let i = rng.gen_range(1..rank);
    let j = rng.gen_range(i + 1..=rank);
    TSymbol {
        i,
        j,
        k: exponent(rng, rank - i + 1, bound),
    }
}

/// A reduced basis word with at most `max_symbols` letters.
pub fn basis_word(rng: &mut impl Rng, rank: usize, max_symbols: usize, bound: i64) -> BasisWord {
    let target = rng.gen_range(0..=max_symbols);
    let mut bw = BasisWord::new(rank);
    while bw.len() < target {
        let s = symbol(rng, rank, bound);
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        if let Some((top, e)) = bw.letters().last() {
            if *top == s && *e != sign {
                continue;
            }
        }
        bw.push(s, sign);
    }
    bw
}

/// A product of at most `max_factors` conjugates of `r^{±1}`.
pub fn relator_product(
    rng: &mut impl Rng,
    p: &SurfacePresentation,
    max_factors: usize,
    conj_len: usize,
) -> Word {
    let count = rng.gen_range(1..=max_factors.max(1));
    let mut w = Word::identity(p.rank());
    for _ in 0..count {
        let len = rng.gen_range(0..=conj_len);
        let u = reduced_word(rng, p.rank(), len);
        let r = if rng.gen_bool(0.5) {
            p.relator().clone()
        } else {
            p.relator().inverse()
        };
        w.push_word(&r.conjugate_by(&u));
    }
    w
}
