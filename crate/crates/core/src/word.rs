//! Words in a free group of finite rank.
//!
//! A [`Word`] is stored in run-length form: a sequence of `(generator, exponent)` runs in
//! which adjacent runs use different generators and no exponent is zero. This is the
//! reduced form, so two words are equal as group elements exactly when they are equal as
//! values. Conjugators such as `x_i^k` with large `k` stay a single run.
//!
//! Exponents are `i64`. All exponent arithmetic is overflow-checked and panics rather than
//! wrapping; inputs parsed from text are limited to `|e| < 2^32`, so no sequence of group
//! operations on parsed words can reach the limit in practice.
//!
//! Conventions: `conjugate(x, y) = y^-1 x y` and `commutator(x, y) = x^-1 y^-1 x y`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Largest absolute exponent accepted by the text parser.
pub const MAX_PARSED_EXPONENT: i64 = 1 << 32;

/// The generating set `{x_1, ..., x_rank}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    rank: usize,
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.rank {
            Err(Error::LetterOutOfRange {
                index,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }
}

/// A maximal block `x_index^exp` of a reduced word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run {
    pub index: usize,
    pub exp: i64,
}

impl Run {
    pub fn new(index: usize, exp: i64) -> Self {
        Run { index, exp }
    }
}

/// A freely reduced word over a fixed alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    runs: Vec<Run>,
}

/// Exponent-sum image of a word in `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianVector(pub Vec<i64>);

impl AbelianVector {
    pub fn zero(rank: usize) -> Self {
        AbelianVector(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &AbelianVector) -> AbelianVector {
        assert_eq!(self.0.len(), other.0.len(), "abelian vector length mismatch");
        AbelianVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| checked_add(*a, *b))
                .collect(),
        )
    }

    pub fn neg(&self) -> AbelianVector {
        AbelianVector(self.0.iter().map(|a| checked_neg(*a)).collect())
    }
}

pub(crate) fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("exponent overflow")
}

pub(crate) fn checked_neg(a: i64) -> i64 {
    a.checked_neg().expect("exponent overflow")
}

pub(crate) fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("exponent overflow")
}

/// Appends a run to a reduced run stack, merging and cancelling as needed.
fn push_run(stack: &mut Vec<Run>, run: Run) {
    if run.exp == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.index == run.index => {
            top.exp = checked_add(top.exp, run.exp);
            if top.exp == 0 {
                stack.pop();
            }
        }
        _ => stack.push(run),
    }
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            runs: Vec::new(),
        }
    }

    /// `x_index^exp`.
    pub fn power(rank: usize, index: usize, exp: i64) -> Result<Self> {
        Alphabet::new(rank)?.check_index(index)?;
        let mut runs = Vec::new();
        push_run(&mut runs, Run::new(index, exp));
        Ok(Word { rank, runs })
    }

    pub fn generator(rank: usize, index: usize) -> Result<Self> {
        Word::power(rank, index, 1)
    }

    /// Freely reduces an arbitrary sequence of runs (zero exponents allowed).
    pub fn from_runs(rank: usize, runs: impl IntoIterator<Item = Run>) -> Result<Self> {
        let alphabet = Alphabet::new(rank)?;
        let mut stack = Vec::new();
        for run in runs {
            alphabet.check_index(run.index)?;
            push_run(&mut stack, run);
        }
        Ok(Word { rank, runs: stack })
    }

    /// Builds from runs already known to be in range; used on hot internal paths.
    pub(crate) fn from_runs_unchecked(rank: usize, runs: impl IntoIterator<Item = Run>) -> Self {
        let mut stack = Vec::new();
        for run in runs {
            debug_assert!(run.index >= 1 && run.index <= rank);
            push_run(&mut stack, run);
        }
        Word { rank, runs: stack }
    }

    /// Freely reduces signed letters: `+i` is `x_i`, `-i` is `x_i^-1`.
    pub fn from_letters(rank: usize, letters: &[i64]) -> Result<Self> {
        let runs = letters.iter().map(|&l| {
            if l == 0 {
                // index 0 is always rejected by check_index
                Run::new(0, 1)
            } else {
                Run::new(l.unsigned_abs() as usize, l.signum())
            }
        });
        Word::from_runs(rank, runs)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|r| r.exp.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// The word spelled out as signed letters.
    pub fn letters(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.len());
        for r in &self.runs {
            let l = r.index as i64 * r.exp.signum();
            for _ in 0..r.exp.unsigned_abs() {
                out.push(l);
            }
        }
        out
    }

    fn check_same(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            Err(Error::AlphabetMismatch {
                left: self.rank,
                right: other.rank,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_mul(&self, other: &Word) -> Result<Word> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Word) -> Word {
        let mut runs = self.runs.clone();
        runs.reserve(other.runs.len());
        for &r in &other.runs {
            push_run(&mut runs, r);
        }
        Word {
            rank: self.rank,
            runs,
        }
    }

    /// Multiplies in place on the right.
    pub fn push_word(&mut self, other: &Word) {
        assert_eq!(self.rank, other.rank, "alphabet mismatch");
        for &r in &other.runs {
            push_run(&mut self.runs, r);
        }
    }

    /// Multiplies in place on the right by `x_index^exp`.
    pub fn push_power(&mut self, index: usize, exp: i64) {
        assert!(index >= 1 && index <= self.rank, "letter out of range");
        push_run(&mut self.runs, Run::new(index, exp));
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            runs: self
                .runs
                .iter()
                .rev()
                .map(|r| Run::new(r.index, checked_neg(r.exp)))
                .collect(),
        }
    }

    /// `self^exp`.
    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..exp.unsigned_abs() {
            out.push_word(&base);
        }
        out
    }

    /// `by^-1 self by`.
    pub fn conjugate_by(&self, by: &Word) -> Word {
        let mut out = by.inverse();
        out.push_word(self);
        out.push_word(by);
        out
    }

    pub fn abelianize(&self) -> AbelianVector {
        let mut v = vec![0i64; self.rank];
        for r in &self.runs {
            v[r.index - 1] = checked_add(v[r.index - 1], r.exp);
        }
        AbelianVector(v)
    }

    /// Deletes every run whose generator is in `drop`, then reduces.
    pub fn retract_delete(&self, drop: &[usize]) -> Word {
        Word::from_runs_unchecked(
            self.rank,
            self.runs
                .iter()
                .copied()
                .filter(|r| !drop.contains(&r.index)),
        )
    }

    /// Keeps only generators with index `>= first`.
    pub(crate) fn retract_below(&self, first: usize) -> Word {
        Word::from_runs_unchecked(
            self.rank,
            self.runs.iter().copied().filter(|r| r.index >= first),
        )
    }

    /// Indices of the generators that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.runs.iter().map(|r| r.index).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// The same word viewed in a larger alphabet.
    pub fn embed(&self, new_rank: usize) -> Result<Word> {
        if new_rank < self.rank {
            if let Some(r) = self.runs.iter().find(|r| r.index > new_rank) {
                return Err(Error::LetterOutOfRange {
                    index: r.index,
                    rank: new_rank,
                });
            }
        }
        Alphabet::new(new_rank)?;
        Ok(Word {
            rank: new_rank,
            runs: self.runs.clone(),
        })
    }

    /// Renames `x_i` to `x_{i + offset}` and moves to the alphabet of rank `new_rank`.
    pub fn reindex(&self, offset: isize, new_rank: usize) -> Result<Word> {
        let alphabet = Alphabet::new(new_rank)?;
        let mut runs = Vec::with_capacity(self.runs.len());
        for r in &self.runs {
            let idx = r.index as isize + offset;
            if idx < 1 {
                return Err(Error::LetterOutOfRange {
                    index: 0,
                    rank: new_rank,
                });
            }
            alphabet.check_index(idx as usize)?;
            runs.push(Run::new(idx as usize, r.exp));
        }
        Ok(Word {
            rank: new_rank,
            runs,
        })
    }

    /// `x_first^{v_first} x_{first+1}^{v_{first+1}} ... x_n^{v_n}` for an exponent vector
    /// indexed from `first`.
    pub fn sorted_monomial(rank: usize, first: usize, exps: &[i64]) -> Word {
        Word::from_runs_unchecked(
            rank,
            exps.iter()
                .enumerate()
                .map(|(t, &e)| Run::new(first + t, e)),
        )
    }

    /// Parses the canonical text form, e.g. `"x3^-2 x1"`. The empty string is the identity.
    pub fn parse(rank: usize, text: &str) -> Result<Word> {
        let alphabet = Alphabet::new(rank)?;
        let mut runs = Vec::new();
        for token in text.split_whitespace() {
            let run = parse_token(token)?;
            alphabet.check_index(run.index)?;
            runs.push(run);
        }
        Word::from_runs(rank, runs)
    }
}

fn parse_token(token: &str) -> Result<Run> {
    let bad = |reason: &str| Error::parse("word", token, reason);
    let rest = token
        .strip_prefix('x')
        .ok_or_else(|| bad("token must start with 'x'"))?;
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (rest, None),
    };
    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("generator index must be a positive integer"));
    }
    let index: usize = idx.parse().map_err(|_| bad("generator index too large"))?;
    let exp = match exp {
        None => 1,
        Some(e) => {
            let v: i64 = e.parse().map_err(|_| bad("exponent must be an integer"))?;
            if v.abs() >= MAX_PARSED_EXPONENT {
                return Err(bad("exponent out of range"));
            }
            v
        }
    };
    Ok(Run::new(index, exp))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, r) in self.runs.iter().enumerate() {
            if t > 0 {
                f.write_str(" ")?;
            }
            if r.exp == 1 {
                write!(f, "x{}", r.index)?;
            } else {
                write!(f, "x{}^{}", r.index, r.exp)?;
            }
        }
        Ok(())
    }
}

impl Mul for &Word {
    type Output = Word;

    /// Panics on alphabet mismatch; use [`Word::try_mul`] for a checked product.
    fn mul(self, rhs: &Word) -> Word {
        self.try_mul(rhs).expect("alphabet mismatch")
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(mut self, rhs: Word) -> Word {
        self.push_word(&rhs);
        self
    }
}

/// Freely reduces a sequence of signed letters over `alphabet`.
pub fn reduce(alphabet: Alphabet, letters: &[i64]) -> Result<Word> {
    Word::from_letters(alphabet.rank(), letters)
}

pub fn multiply(u: &Word, v: &Word) -> Result<Word> {
    u.try_mul(v)
}

pub fn invert(u: &Word) -> Word {
    u.inverse()
}

/// `y^-1 x y`.
pub fn conjugate(x: &Word, y: &Word) -> Result<Word> {
    x.check_same(y)?;
    Ok(x.conjugate_by(y))
}

/// `x^-1 y^-1 x y`.
pub fn commutator(x: &Word, y: &Word) -> Result<Word> {
    x.check_same(y)?;
    let mut out = x.inverse();
    out.push_word(&y.inverse());
    out.push_word(x);
    out.push_word(y);
    Ok(out)
}

pub fn abelianize_vector(w: &Word) -> AbelianVector {
    w.abelianize()
}

pub fn retract_delete(w: &Word, drop: &[usize]) -> Word {
    w.retract_delete(drop)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let a = Alphabet::new(3).unwrap();
        assert!(reduce(a, &[1, -1]).unwrap().is_identity());
        assert_eq!(reduce(a, &[1, 2, 2, -2, -2, 1]).unwrap(), w(3, "x1^2"));
        let c = reduce(a, &[-1, -2, 1, 2]).unwrap();
        assert_eq!(c.to_string(), "x1^-1 x2^-1 x1 x2");
        assert!(matches!(
            reduce(a, &[4]),
            Err(Error::LetterOutOfRange { index: 4, rank: 3 })
        ));
    }

    #[test]
    fn multiply_and_invert() {
        let x1 = w(3, "x1");
        assert!(multiply(&x1, &invert(&x1)).unwrap().is_identity());
        assert_eq!(invert(&w(3, "x1 x2")), w(3, "x2^-1 x1^-1"));
        assert_eq!(multiply(&w(3, "x1 x2"), &w(3, "x2^-1 x3")).unwrap(), w(3, "x1 x3"));
        assert!(matches!(
            multiply(&w(2, "x1"), &w(3, "x1")),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn conjugation_and_commutators() {
        let (x1, x2, x3) = (w(3, "x1"), w(3, "x2"), w(3, "x3"));
        assert_eq!(conjugate(&x1, &Word::identity(3)).unwrap(), x1);
        assert_eq!(conjugate(&x1, &x2).unwrap(), w(3, "x2^-1 x1 x2"));
        let lhs = conjugate(&conjugate(&x1, &x2).unwrap(), &x3).unwrap();
        let rhs = conjugate(&x1, &(&x2 * &x3)).unwrap();
        assert_eq!(lhs, rhs);

        let c = commutator(&x1, &x2).unwrap();
        assert_eq!(c.to_string(), "x1^-1 x2^-1 x1 x2");
        assert!(commutator(&x1, &x1).unwrap().is_identity());
        assert_eq!(c.inverse(), commutator(&x2, &x1).unwrap());
    }

    #[test]
    fn abelianization() {
        let c = commutator(&w(2, "x1"), &w(2, "x2")).unwrap();
        assert!(c.abelianize().is_zero());
        assert!(w(2, "x1 x2^2 x1 x2^-2 x1^-2").abelianize().is_zero());
        assert_eq!(w(2, "x1^3 x2^-1").abelianize(), AbelianVector(vec![3, -1]));
    }

    #[test]
    fn retraction() {
        assert_eq!(w(3, "x1 x2 x1^-1").retract_delete(&[1]), w(3, "x2"));
        let c = commutator(&w(3, "x1"), &w(3, "x2")).unwrap();
        assert!(c.retract_delete(&[1]).is_identity());
        let v = w(3, "x2 x3 x2^-1");
        assert_eq!(v.retract_delete(&[1]), v);
    }

    #[test]
    fn text_form() {
        assert_eq!(w(3, "x3^-2 x1").to_string(), "x3^-2 x1");
        assert!(w(3, "").is_identity());
        assert_eq!(w(3, "  x1   x1 ").to_string(), "x1^2");
        assert_eq!(w(2, "x2^1 x1^0").to_string(), "x2");
        for bad in ["y1", "x", "x1^", "x1^a", "x-1", "x1^99999999999"] {
            assert!(matches!(Word::parse(2, bad), Err(Error::Parse { .. })), "{bad}");
        }
        assert!(matches!(
            Word::parse(2, "x3"),
            Err(Error::LetterOutOfRange { .. })
        ));
        assert!(matches!(Word::parse(0, ""), Err(Error::EmptyAlphabet)));
    }

    #[test]
    fn reindex_and_embed() {
        let v = w(2, "x1 x2^-3");
        assert_eq!(v.reindex(1, 3).unwrap(), w(3, "x2 x3^-3"));
        assert_eq!(v.embed(4).unwrap().rank(), 4);
        assert!(w(3, "x3").embed(2).is_err());
        assert!(w(3, "x1").reindex(-1, 3).is_err());
    }

    #[test]
    fn letters_roundtrip() {
        let v = w(3, "x1^2 x3^-1 x2");
        assert_eq!(v.letters(), vec![1, 1, -3, 2]);
        assert_eq!(Word::from_letters(3, &v.letters()).unwrap(), v);
        assert_eq!(v.len(), 4);
    }
}
