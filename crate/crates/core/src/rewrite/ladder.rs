//! The normal closure `K` of a pivot generator `x_p` inside the free group on
//! `x_p, ..., x_n`, and the free basis of `B = K ∩ [F, F]`.
//!
//! `K` is free on the conjugates `z_v = v x_p v^-1` with `v` ranging over the free group on
//! `T = {x_{p+1}, ..., x_n}`. An element of `B` is a closed path from `(1, 0)` in the Cayley
//! graph of `F(T) × Z`: `x_p` moves one step up the vertical line over the current vertex,
//! a letter of `T` crosses a rung of the ladder sitting over an edge of the tree of `F(T)`.
//! Cutting the path into maximal runs of crossings through a single ladder writes the
//! element as a product of ladder loops, and a ladder loop is a product of its squares.
//!
//! For an edge `b -- a` with `a = b x_j`, the square between heights `l` and `l + 1` is
//! `[x_p, x_j]^{x_p^{-l-1} a^-1}`, i.e. the [`SSymbol`] `(j, -l-1, a^-1)`.

use crate::error::{Error, Result};
use crate::rewrite::symbol::Sign;
use crate::word::{checked_add, Word};

/// `[x_i, x_j]^{x_i^k u}` with `u` a word in `x_{i+1}, ..., x_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SSymbol {
    pub i: usize,
    pub j: usize,
    pub k: i64,
    pub u: Word,
}

impl SSymbol {
    pub fn expand(&self) -> Word {
        let n = self.u.rank();
        let mut conj = Word::power(n, self.i, self.k).expect("pivot in range");
        conj.push_word(&self.u);
        let mut w = conj.inverse();
        w.push_power(self.i, -1);
        w.push_power(self.j, -1);
        w.push_power(self.i, 1);
        w.push_power(self.j, 1);
        w.push_word(&conj);
        w
    }
}

/// A word in the free basis `{z_v}` of the normal closure of the pivot generator.
///
/// The letter `(v, +1)` denotes `v x_p v^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZWord {
    rank: usize,
    pivot: usize,
    letters: Vec<(Word, Sign)>,
}

impl ZWord {
    pub fn new(rank: usize, pivot: usize) -> Self {
        ZWord {
            rank,
            pivot,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(
        rank: usize,
        pivot: usize,
        letters: impl IntoIterator<Item = (Word, Sign)>,
    ) -> Result<Self> {
        let mut zw = ZWord::new(rank, pivot);
        for (v, s) in letters {
            if v.rank() != rank {
                return Err(Error::AlphabetMismatch {
                    left: rank,
                    right: v.rank(),
                });
            }
            if v.runs().iter().any(|r| r.index <= pivot) {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} must avoid x1..x{pivot}"
                )));
            }
            zw.push(v, s);
        }
        Ok(zw)
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn letters(&self) -> &[(Word, Sign)] {
        &self.letters
    }

    pub fn push(&mut self, v: Word, s: Sign) {
        if let Some((top, t)) = self.letters.last() {
            if *top == v && *t != s {
                self.letters.pop();
                return;
            }
        }
        self.letters.push((v, s));
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|(_, s)| s.value()).sum()
    }

    /// The element of the free group this z-word denotes.
    pub fn product(&self) -> Word {
        let mut w = Word::identity(self.rank);
        for (v, s) in &self.letters {
            w.push_word(v);
            w.push_power(self.pivot, s.value());
            w.push_word(&v.inverse());
        }
        w
    }
}

/// Scans `b` left to right, emitting one z-letter per pivot letter at the current vertex.
pub fn rs_scan_k(b: &Word) -> Result<ZWord> {
    rs_scan(b, 1)
}

pub(crate) fn rs_scan(b: &Word, pivot: usize) -> Result<ZWord> {
    let rest = b.retract_delete(&[pivot]);
    if !rest.is_identity() {
        return Err(Error::NotInNormalClosure(rest.to_string()));
    }
    let mut zw = ZWord::new(b.rank(), pivot);
    let mut vertex = Word::identity(b.rank());
    for r in b.runs() {
        if r.index == pivot {
            let s = Sign::from_exp(r.exp);
            for _ in 0..r.exp.unsigned_abs() {
                zw.push(vertex.clone(), s);
            }
        } else {
            vertex.push_power(r.index, r.exp);
        }
    }
    Ok(zw)
}

/// Writes a zero-sum z-word in the basis `[x_p, x_j]^{x_p^k u}` of `K ∩ [F, F]`.
pub fn express_zero_sum(zw: &ZWord) -> Result<Vec<(SSymbol, Sign)>> {
    let sum = zw.exponent_sum();
    if sum != 0 {
        return Err(Error::NonzeroExponentSum(sum));
    }
    Ok(express_path(&zw.product(), zw.pivot))
}

/// One rung crossing: `true` when it goes from the forward endpoint `a` to `b`.
#[derive(Debug, Clone, Copy)]
struct Crossing {
    to_b: bool,
    height: i64,
}

struct Piece {
    j: usize,
    /// Forward endpoint: `a = b x_j`.
    a: Word,
    /// Signed letter of the latest crossing.
    last: i64,
    crossings: Vec<Crossing>,
}

/// Expresses an element of `K ∩ [F, F]` (closed path at height zero) in square symbols.
///
/// `b` must only use generators `>= pivot`, lie in the normal closure of `x_pivot`, and
/// have zero `x_pivot` exponent sum.
pub(crate) fn express_path(b: &Word, pivot: usize) -> Vec<(SSymbol, Sign)> {
    let rank = b.rank();
    let mut out: Vec<(SSymbol, Sign)> = Vec::new();
    let mut vertex = Word::identity(rank);
    let mut height = 0i64;
    let mut piece: Option<Piece> = None;

    for r in b.runs() {
        if r.index == pivot {
            height = checked_add(height, r.exp);
            continue;
        }
        let sigma = r.exp.signum();
        let letter = r.index as i64 * sigma;
        for _ in 0..r.exp.unsigned_abs() {
            let continues = piece.as_ref().is_some_and(|p| p.last == -letter);
            if !continues {
                if let Some(p) = piece.take() {
                    close_piece(p, pivot, &mut out);
                }
            }
            let next = {
                let mut v = vertex.clone();
                v.push_power(r.index, sigma);
                v
            };
            // sigma = +1: vertex is b, next is a. sigma = -1: vertex is a, next is b.
            let crossing = Crossing {
                to_b: sigma < 0,
                height,
            };
            match piece.as_mut() {
                Some(p) => {
                    p.last = letter;
                    p.crossings.push(crossing);
                }
                None => {
                    let a = if sigma > 0 { next.clone() } else { vertex.clone() };
                    piece = Some(Piece {
                        j: r.index,
                        a,
                        last: letter,
                        crossings: vec![crossing],
                    });
                }
            }
            vertex = next;
        }
    }
    if let Some(p) = piece.take() {
        close_piece(p, pivot, &mut out);
    }
    debug_assert!(vertex.is_identity() && height == 0, "path must close up");
    out
}

fn close_piece(p: Piece, pivot: usize, out: &mut Vec<(SSymbol, Sign)>) {
    let mut b = p.a.clone();
    b.push_power(p.j, -1);
    let parent_is_b = b.len() < p.a.len();

    let first = p.crossings[0];
    let last = *p.crossings.last().expect("piece has a crossing");
    let starts_at_b = !first.to_b;
    let ends_at_b = last.to_b;

    let mut seq: Vec<Crossing> = Vec::with_capacity(p.crossings.len() + 4);
    if parent_is_b {
        seq.push(Crossing {
            to_b: true,
            height: 0,
        });
    }
    if starts_at_b != parent_is_b {
        seq.push(Crossing {
            to_b: starts_at_b,
            height: 0,
        });
    }
    seq.extend_from_slice(&p.crossings);
    if ends_at_b != parent_is_b {
        seq.push(Crossing {
            to_b: parent_is_b,
            height: 0,
        });
    }
    if parent_is_b {
        seq.push(Crossing {
            to_b: false,
            height: 0,
        });
    }
    debug_assert!(seq.len().is_multiple_of(2));

    let u = p.a.inverse();
    let square = |level: i64| SSymbol {
        i: pivot,
        j: p.j,
        k: -checked_add(level, 1),
        u: u.clone(),
    };
    for pair in seq.chunks_exact(2) {
        let (out_x, back) = (pair[0], pair[1]);
        debug_assert!(out_x.to_b && !back.to_b, "crossings must alternate");
        let (lo, hi) = (out_x.height, back.height);
        if hi > lo {
            for level in lo..hi {
                push_reduced(out, square(level), Sign::Plus);
            }
        } else {
            for level in (hi..lo).rev() {
                push_reduced(out, square(level), Sign::Minus);
            }
        }
    }
}

fn push_reduced(out: &mut Vec<(SSymbol, Sign)>, s: SSymbol, sign: Sign) {
    if let Some((top, t)) = out.last() {
        if *top == s && *t != sign {
            out.pop();
            return;
        }
    }
    out.push((s, sign));
}

/// Product of expansions, for checking.
pub fn expand_ssymbols(rank: usize, symbols: &[(SSymbol, Sign)]) -> Word {
    let mut w = Word::identity(rank);
    for (s, e) in symbols {
        let x = s.expand();
        match e {
            Sign::Plus => w.push_word(&x),
            Sign::Minus => w.push_word(&x.inverse()),
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::commutator;

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    #[test]
    fn scan_examples() {
        let c = commutator(&w(2, "x1"), &w(2, "x2")).unwrap();
        let zw = rs_scan_k(&c).unwrap();
        assert_eq!(
            zw.letters(),
            &[
                (Word::identity(2), Sign::Minus),
                (w(2, "x2^-1"), Sign::Plus)
            ]
        );
        assert_eq!(zw.product(), c);

        let b = w(2, "x1 x2^2 x1 x2^-2 x1^-2");
        let zw = rs_scan_k(&b).unwrap();
        assert_eq!(
            zw.letters(),
            &[
                (Word::identity(2), Sign::Plus),
                (w(2, "x2^2"), Sign::Plus),
                (Word::identity(2), Sign::Minus),
                (Word::identity(2), Sign::Minus),
            ]
        );
        assert_eq!(zw.product(), b);

        let zw = rs_scan_k(&w(2, "x1")).unwrap();
        assert_eq!(zw.letters(), &[(Word::identity(2), Sign::Plus)]);

        assert!(matches!(
            rs_scan_k(&w(2, "x2 x1")),
            Err(Error::NotInNormalClosure(_))
        ));
    }

    #[test]
    fn zero_sum_single_edge() {
        // (1,-1)(x2^-1,+1) is [x1,x2]
        let zw = ZWord::from_letters(
            2,
            1,
            [(Word::identity(2), Sign::Minus), (w(2, "x2^-1"), Sign::Plus)],
        )
        .unwrap();
        let out = express_zero_sum(&zw).unwrap();
        assert_eq!(
            out,
            vec![(
                SSymbol {
                    i: 1,
                    j: 2,
                    k: 0,
                    u: Word::identity(2)
                },
                Sign::Plus
            )]
        );
        assert_eq!(expand_ssymbols(2, &out), zw.product());
    }

    #[test]
    fn zero_sum_telescoping() {
        // z_1 z_{x2} z_1^-2 on the edge 1 -- x2 (a = x2, b = 1):
        // g(e,-1) g(e,-2)^-1 g(e,-1)^-1 with g(e,k) = (j=2, k, u=a^-1)
        let zw = ZWord::from_letters(
            2,
            1,
            [
                (Word::identity(2), Sign::Plus),
                (w(2, "x2"), Sign::Plus),
                (Word::identity(2), Sign::Minus),
                (Word::identity(2), Sign::Minus),
            ],
        )
        .unwrap();
        let g = |k| SSymbol {
            i: 1,
            j: 2,
            k,
            u: w(2, "x2^-1"),
        };
        let out = express_zero_sum(&zw).unwrap();
        assert_eq!(
            out,
            vec![(g(-1), Sign::Plus), (g(-2), Sign::Minus), (g(-1), Sign::Minus)]
        );
        assert_eq!(expand_ssymbols(2, &out), zw.product());
    }

    #[test]
    fn zero_sum_trivial_and_errors() {
        let zw = ZWord::from_letters(
            2,
            1,
            [(Word::identity(2), Sign::Plus), (Word::identity(2), Sign::Minus)],
        )
        .unwrap();
        assert!(express_zero_sum(&zw).unwrap().is_empty());
        let zw = ZWord::from_letters(2, 1, [(Word::identity(2), Sign::Plus)]).unwrap();
        assert_eq!(express_zero_sum(&zw), Err(Error::NonzeroExponentSum(1)));
    }

    #[test]
    fn deep_vertices_with_heights() {
        // vertices far from the root and nonzero heights on several ladders
        let n = 4;
        let cases = [
            "x2 x3^-1 x1^2 x3 x4 x1^-1 x4^-1 x2^-1 x1^-1",
            "x3^2 x1^-3 x3^-1 x2 x1^2 x2^-1 x3^-1 x1",
            "x1^5 x2 x3 x1^-2 x3^-1 x2^-1 x1^-3",
            "x4^-1 x2^-2 x1 x2 x1 x2 x1^-2 x4",
        ];
        for s in cases {
            let b = w(n, s);
            let zw = rs_scan_k(&b).unwrap();
            let out = express_zero_sum(&zw).unwrap();
            assert_eq!(expand_ssymbols(n, &out), b, "{s}");
        }
    }
}
