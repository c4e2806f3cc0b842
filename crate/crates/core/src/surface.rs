//! The closed surface group `pi_1(Sigma_g) = <x_1..x_2g | [x_1,x_2]...[x_{2g-1},x_{2g}]>`
//! and its word problem.
//!
//! For `g >= 2` the single relator has length `4g` and all pieces have length one, so
//! Dehn's algorithm decides triviality. For `g = 1` the group is `Z^2` and triviality is
//! vanishing abelianization.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::word::{commutator, Run, Word};

/// The genus-`g` one-relator presentation with a precomputed rotation table.
#[derive(Debug, Clone)]
pub struct SurfacePresentation {
    genus: usize,
    relator: Word,
    /// All cyclic rotations of the relator and of its inverse, as signed letters.
    rotations: Vec<Vec<i64>>,
    /// Rotation indices keyed by their first letter.
    by_first: HashMap<i64, Vec<usize>>,
}

/// `[x_1,x_2][x_3,x_4]...[x_{2g-1},x_{2g}]` as a reduced word of rank `2g`.
pub fn relator(genus: usize) -> Result<Word> {
    if genus == 0 {
        return Err(Error::InvalidGenus(genus));
    }
    let rank = 2 * genus;
    let mut r = Word::identity(rank);
    for i in 0..genus {
        let a = Word::generator(rank, 2 * i + 1)?;
        let b = Word::generator(rank, 2 * i + 2)?;
        r.push_word(&commutator(&a, &b)?);
    }
    Ok(r)
}

/// `rho = [x_3,x_4]...[x_{2g-1},x_{2g}]`, so that `[x_1,x_2] = rho^-1` in the surface group.
pub fn relator_tail(genus: usize) -> Result<Word> {
    if genus == 0 {
        return Err(Error::InvalidGenus(genus));
    }
    let rank = 2 * genus;
    let mut r = Word::identity(rank);
    for i in 1..genus {
        let a = Word::generator(rank, 2 * i + 1)?;
        let b = Word::generator(rank, 2 * i + 2)?;
        r.push_word(&commutator(&a, &b)?);
    }
    Ok(r)
}

impl SurfacePresentation {
    pub fn new(genus: usize) -> Result<Self> {
        let relator = relator(genus)?;
        let letters = relator.letters();
        debug_assert_eq!(letters.len(), 4 * genus);
        let inverse: Vec<i64> = letters.iter().rev().map(|l| -l).collect();
        let mut rotations = Vec::with_capacity(8 * genus);
        for base in [&letters, &inverse] {
            for shift in 0..base.len() {
                let mut rot = base[shift..].to_vec();
                rot.extend_from_slice(&base[..shift]);
                rotations.push(rot);
            }
        }
        let mut by_first: HashMap<i64, Vec<usize>> = HashMap::new();
        for (t, rot) in rotations.iter().enumerate() {
            by_first.entry(rot[0]).or_default().push(t);
        }
        Ok(SurfacePresentation {
            genus,
            relator,
            rotations,
            by_first,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn rotation_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if w.rank() != self.rank() {
            Err(Error::SurfaceRank {
                genus: self.genus,
                found: w.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// Decides whether `w = 1` in the surface group.
    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        self.check_word(w)?;
        if self.genus == 1 {
            return Ok(w.abelianize().is_zero());
        }
        if !w.abelianize().is_zero() {
            return Ok(false);
        }
        Ok(self.dehn_residue(w.letters()).is_empty())
    }

    /// Runs Dehn's algorithm to completion and returns the irreducible residue.
    pub fn dehn_residue(&self, mut letters: Vec<i64>) -> Vec<i64> {
        let relator_len = 4 * self.genus;
        let threshold = 2 * self.genus + 1;
        loop {
            letters = cyclic_core(free_reduce(&letters));
            let Some((pos, rot, len)) = self.find_replacement(&letters, threshold) else {
                return letters;
            };
            let before = letters.len();
            let complement: Vec<i64> = self.rotations[rot][len..]
                .iter()
                .rev()
                .map(|l| -l)
                .collect();
            debug_assert!(complement.len() < len);
            letters.splice(pos..pos + len, complement);
            assert!(
                letters.len() + 2 * len - relator_len == before,
                "Dehn replacement must shrink the word"
            );
        }
    }

    /// Leftmost, then longest, subword agreeing with more than half of a rotation.
    fn find_replacement(&self, letters: &[i64], threshold: usize) -> Option<(usize, usize, usize)> {
        if letters.len() < threshold {
            return None;
        }
        for pos in 0..=letters.len() - threshold {
            let Some(cands) = self.by_first.get(&letters[pos]) else {
                continue;
            };
            let mut best: Option<(usize, usize)> = None;
            for &rot in cands {
                let len = self.rotations[rot]
                    .iter()
                    .zip(&letters[pos..])
                    .take_while(|(a, b)| a == b)
                    .count();
                if len >= threshold && best.is_none_or(|(_, l)| len > l) {
                    best = Some((rot, len));
                }
            }
            if let Some((rot, len)) = best {
                return Some((pos, rot, len));
            }
        }
        None
    }

    /// `w1 = w2` in the surface group.
    pub fn surface_equal(&self, w1: &Word, w2: &Word) -> Result<bool> {
        self.check_word(w1)?;
        self.check_word(w2)?;
        self.is_trivial(&(w1 * &w2.inverse()))
    }
}

fn free_reduce(letters: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_core(letters: Vec<i64>) -> Vec<i64> {
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo] == -letters[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    letters[lo..hi].to_vec()
}

/// Splits `w = conj^-1 core conj` with `core` cyclically reduced.
pub fn cyclically_reduce(w: &Word) -> (Word, Word) {
    let mut runs: VecDeque<Run> = w.runs().iter().copied().collect();
    let mut prefix = Word::identity(w.rank());
    while runs.len() >= 2 {
        let (f, l) = (runs[0], runs[runs.len() - 1]);
        if f.index != l.index || f.exp.signum() == l.exp.signum() {
            break;
        }
        let m = f.exp.abs().min(l.exp.abs()) * f.exp.signum();
        prefix.push_power(f.index, m);
        runs[0].exp -= m;
        let back = runs.len() - 1;
        runs[back].exp += m;
        if runs[back].exp == 0 {
            runs.pop_back();
        }
        if runs[0].exp == 0 {
            runs.pop_front();
        }
    }
    let core = w.conjugate_by(&prefix);
    debug_assert_eq!(core.runs(), runs.make_contiguous());
    (core, prefix.inverse())
}

pub fn is_trivial(p: &SurfacePresentation, w: &Word) -> Result<bool> {
    p.is_trivial(w)
}

pub fn surface_equal(p: &SurfacePresentation, w1: &Word, w2: &Word) -> Result<bool> {
    p.surface_equal(w1, w2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::conjugate;

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    #[test]
    fn relator_words() {
        assert_eq!(relator(1).unwrap().to_string(), "x1^-1 x2^-1 x1 x2");
        assert_eq!(
            relator(2).unwrap().to_string(),
            "x1^-1 x2^-1 x1 x2 x3^-1 x4^-1 x3 x4"
        );
        for g in 1..=4 {
            let r = relator(g).unwrap();
            assert!(r.abelianize().is_zero());
            assert_eq!(r.len(), 4 * g);
        }
        assert!(matches!(relator(0), Err(Error::InvalidGenus(0))));
    }

    #[test]
    fn rotation_table_size() {
        for g in 1..=4 {
            assert_eq!(SurfacePresentation::new(g).unwrap().rotation_count(), 8 * g);
        }
    }

    #[test]
    fn cyclic_reduction_examples() {
        let (core, conj) = cyclically_reduce(&w(2, "x1 x2 x1^-1"));
        assert_eq!(core, w(2, "x2"));
        assert_eq!(conj, w(2, "x1^-1"));
        let (core, conj) = cyclically_reduce(&Word::identity(2));
        assert!(core.is_identity() && conj.is_identity());
        let (core, conj) = cyclically_reduce(&w(2, "x1 x2"));
        assert_eq!(core, w(2, "x1 x2"));
        assert!(conj.is_identity());
    }

    #[test]
    fn cyclic_reduction_partial_runs() {
        for s in [
            "x1^3 x2 x1^-1",
            "x1^2 x2 x1^-5",
            "x1 x2 x3 x2^-1 x1^-1",
            "x2^2 x1 x2^-2",
            "x1^4",
            "x1 x2^3 x1^-1",
        ] {
            let v = w(3, s);
            let (core, conj) = cyclically_reduce(&v);
            assert_eq!(core.conjugate_by(&conj), v, "{s}");
            let runs = core.runs();
            if runs.len() >= 2 {
                let (f, l) = (runs[0], runs[runs.len() - 1]);
                assert!(f.index != l.index || f.exp.signum() == l.exp.signum(), "{s}");
            }
        }
    }

    #[test]
    fn dehn_examples() {
        let p = SurfacePresentation::new(2).unwrap();
        let r = relator(2).unwrap();
        assert!(p.is_trivial(&r).unwrap());
        assert!(!p.is_trivial(&w(4, "x1")).unwrap());
        let u = w(4, "x1 x3^-1");
        let c = conjugate(&r, &u).unwrap();
        // free-group identity w = u^-1 r u
        assert_eq!(c, &(&u.inverse() * &r) * &u);
        assert!(p.is_trivial(&c).unwrap());
    }

    #[test]
    fn surface_equality_examples() {
        let p = SurfacePresentation::new(2).unwrap();
        assert!(p.surface_equal(&w(4, "x1 x2"), &w(4, "x1 x2")).unwrap());
        let c21 = commutator(&w(4, "x2"), &w(4, "x1")).unwrap();
        let rho = relator_tail(2).unwrap();
        assert!(p.surface_equal(&c21, &rho).unwrap());
        assert!(!p.surface_equal(&w(4, "x1"), &w(4, "x2")).unwrap());
        // [x1,x2] itself is not trivial
        let c12 = commutator(&w(4, "x1"), &w(4, "x2")).unwrap();
        assert!(!p.is_trivial(&c12).unwrap());
    }

    #[test]
    fn genus_one_uses_abelianization() {
        let p = SurfacePresentation::new(1).unwrap();
        assert!(p.is_trivial(&w(2, "x1 x2 x1^-1 x2^-1")).unwrap());
        assert!(!p.is_trivial(&w(2, "x1")).unwrap());
    }

    #[test]
    fn rank_is_checked() {
        let p = SurfacePresentation::new(2).unwrap();
        assert!(matches!(
            p.is_trivial(&w(3, "x1")),
            Err(Error::SurfaceRank { genus: 2, found: 3 })
        ));
    }
}
