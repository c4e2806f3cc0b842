//! Rewriting elements of `[π, π]`, `π = π_1(Σ_g)`, in the basis of all symbols
//! `[x_i,x_j]^{x_i^{k_i}...x_{2g}^{k_{2g}}}` with `(i, j) != (1, 2)`.
//!
//! Pipeline:
//! 1. [`y_scan`] writes `w` as a product of conjugates `x_j^{x_1^a x_2^b}` (`j >= 3`) times a
//!    residual `x_2^B x_1^A`, using `x_2^-1 x_1 x_2 = x_1 ρ^-1` whenever an `x_2` has to pass
//!    an `x_1`-block.
//! 2. [`phi_project`] forgets the conjugators, giving `a_F` in `[F, F]` with `F = F(x_3..x_2g)`.
//! 3. `b_K = Y · a_F^-1` lies in the kernel of that projection; [`tree_substitute`] moves every
//!    letter to the root of the `(a, b)` grid, leaving plain letters and [`DSymbol`]s.
//! 4. [`kernel_rs`] collects the plain letters into conjugators, each conjugator is sorted
//!    modulo `[F, F]`, and the correction is rewritten by the free rewriter on `x_3..x_2g`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rewrite::free::Rewriter;
use crate::rewrite::symbol::{free_basis_enumerate, BasisWord, Sign, TSymbol};
use crate::surface::{relator_tail, SurfacePresentation};
use crate::word::{checked_add, checked_neg, Word};

/// `x_j^{x_1^a x_2^b}` raised to `sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct YLetter {
    pub j: usize,
    pub a: i64,
    pub b: i64,
    pub sign: Sign,
}

impl YLetter {
    pub fn expand(&self, rank: usize) -> Word {
        let mut w = Word::identity(rank);
        w.push_power(2, checked_neg(self.b));
        w.push_power(1, checked_neg(self.a));
        w.push_power(self.j, self.sign.value());
        w.push_power(1, self.a);
        w.push_power(2, self.b);
        w
    }
}

/// A freely reduced word in [`YLetter`]s.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct YWord {
    letters: Vec<YLetter>,
}

impl YWord {
    pub fn new() -> Self {
        YWord::default()
    }

    pub fn letters(&self) -> &[YLetter] {
        &self.letters
    }

    pub fn push(&mut self, y: YLetter) {
        if let Some(top) = self.letters.last() {
            if top.j == y.j && top.a == y.a && top.b == y.b && top.sign != y.sign {
                self.letters.pop();
                return;
            }
        }
        self.letters.push(y);
    }

    pub fn inverse(&self) -> YWord {
        YWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|y| YLetter {
                    sign: y.sign.flip(),
                    ..*y
                })
                .collect(),
        }
    }

    pub fn append(&mut self, other: &YWord) {
        for y in &other.letters {
            self.push(*y);
        }
    }

    pub fn expand(&self, rank: usize) -> Word {
        let mut w = Word::identity(rank);
        for y in &self.letters {
            w.push_word(&y.expand(rank));
        }
        w
    }
}

/// `[x_1,x_j]^{x_1^{k1} x_2^{k2}}` (family 1) or `[x_2,x_j]^{x_2^{k2}}` (family 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DSymbol {
    One { j: usize, k1: i64, k2: i64 },
    Two { j: usize, k2: i64 },
}

impl DSymbol {
    pub fn family(&self) -> u8 {
        match self {
            DSymbol::One { .. } => 1,
            DSymbol::Two { .. } => 2,
        }
    }

    pub fn j(&self) -> usize {
        match *self {
            DSymbol::One { j, .. } | DSymbol::Two { j, .. } => j,
        }
    }

    pub fn expand(&self, rank: usize) -> Word {
        let (i, j, conj) = match *self {
            DSymbol::One { j, k1, k2 } => {
                let mut c = Word::identity(rank);
                c.push_power(1, k1);
                c.push_power(2, k2);
                (1, j, c)
            }
            DSymbol::Two { j, k2 } => {
                let mut c = Word::identity(rank);
                c.push_power(2, k2);
                (2, j, c)
            }
        };
        let mut w = conj.inverse();
        w.push_power(i, -1);
        w.push_power(j, -1);
        w.push_power(i, 1);
        w.push_power(j, 1);
        w.push_word(&conj);
        w
    }
}

impl fmt::Display for DSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DSymbol::One { j, k1, k2 } => write!(f, "D1({j};{k1},{k2})"),
            DSymbol::Two { j, k2 } => write!(f, "D2({j};{k2})"),
        }
    }
}

/// A letter of the word produced by [`tree_substitute`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedLetter {
    Plain { j: usize, sign: Sign },
    D { symbol: DSymbol, sign: Sign },
}

impl MixedLetter {
    fn inverse(self) -> MixedLetter {
        match self {
            MixedLetter::Plain { j, sign } => MixedLetter::Plain {
                j,
                sign: sign.flip(),
            },
            MixedLetter::D { symbol, sign } => MixedLetter::D {
                symbol,
                sign: sign.flip(),
            },
        }
    }
}

pub fn expand_mixed(rank: usize, letters: &[MixedLetter]) -> Word {
    let mut w = Word::identity(rank);
    for l in letters {
        match *l {
            MixedLetter::Plain { j, sign } => w.push_power(j, sign.value()),
            MixedLetter::D { symbol, sign } => match sign {
                Sign::Plus => w.push_word(&symbol.expand(rank)),
                Sign::Minus => w.push_word(&symbol.expand(rank).inverse()),
            },
        }
    }
    w
}

/// `D^v` raised to `sign`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelLetter {
    pub symbol: DSymbol,
    pub conj: Word,
    pub sign: Sign,
}

impl KernelLetter {
    pub fn expand(&self, rank: usize) -> Word {
        let x = self.symbol.expand(rank).conjugate_by(&self.conj);
        match self.sign {
            Sign::Plus => x,
            Sign::Minus => x.inverse(),
        }
    }
}

/// A word in the surface basis: no symbol has `(i, j) = (1, 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceBasisWord {
    genus: usize,
    word: BasisWord,
}

impl SurfaceBasisWord {
    pub fn new(genus: usize, word: BasisWord) -> Result<Self> {
        if word.rank() != 2 * genus {
            return Err(Error::SurfaceRank {
                genus,
                found: word.rank(),
            });
        }
        if let Some((s, _)) = word.letters().iter().find(|(s, _)| s.i == 1 && s.j == 2) {
            return Err(Error::InvalidSymbol(format!(
                "{s} is not a surface basis symbol"
            )));
        }
        Ok(SurfaceBasisWord { genus, word })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn word(&self) -> &BasisWord {
        &self.word
    }

    pub fn letters(&self) -> &[(TSymbol, Sign)] {
        self.word.letters()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn expand(&self) -> Word {
        self.word.expand()
    }

    pub fn to_lines(&self) -> Vec<String> {
        self.word.to_lines()
    }
}

impl fmt::Display for SurfaceBasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// Scans `w` into Y-letters and the residual `(A, B)` with `w = Y · x_2^B x_1^A` in `π`.
pub fn y_scan(p: &SurfacePresentation, w: &Word) -> Result<(YWord, (i64, i64))> {
    p.check_word(w)?;
    let rho: Vec<i64> = relator_tail(p.genus())?.letters();
    let rho_inv: Vec<i64> = rho.iter().rev().map(|l| -l).collect();

    let mut stream: Vec<i64> = w.letters();
    stream.reverse();
    let mut pending_x2 = stream.iter().filter(|l| l.abs() == 2).count();

    let mut y = YWord::new();
    let (mut a, mut b) = (0i64, 0i64);
    while let Some(letter) = stream.pop() {
        let eps = letter.signum();
        match letter.unsigned_abs() as usize {
            1 => a = checked_add(a, eps),
            2 if a == 0 => {
                b = checked_add(b, eps);
                pending_x2 -= 1;
            }
            2 => {
                // x_2 -> x_1^-A x_2 (x_1 ρ^-1)^A and x_2^-1 -> (ρ x_1^-1)^A x_2^-1 x_1^A
                let mut splice: Vec<i64> = Vec::new();
                let cycle: Vec<i64> = if (eps > 0) == (a > 0) {
                    std::iter::once(1).chain(rho_inv.iter().copied()).collect()
                } else {
                    rho.iter().copied().chain(std::iter::once(-1)).collect()
                };
                let reps = a.unsigned_abs();
                let block = std::iter::repeat_n(-a.signum(), reps as usize);
                if eps > 0 {
                    splice.extend(block);
                    splice.push(2);
                    for _ in 0..reps {
                        splice.extend_from_slice(&cycle);
                    }
                } else {
                    for _ in 0..reps {
                        splice.extend_from_slice(&cycle);
                    }
                    splice.push(-2);
                    splice.extend(std::iter::repeat_n(a.signum(), reps as usize));
                }
                debug_assert_eq!(splice.iter().filter(|l| l.abs() == 2).count(), 1);
                stream.extend(splice.into_iter().rev());
            }
            j => y.push(YLetter {
                j,
                a: checked_neg(a),
                b: checked_neg(b),
                sign: Sign::from_exp(eps),
            }),
        }
    }
    debug_assert_eq!(pending_x2, 0);
    Ok((y, (a, b)))
}

/// Forgets conjugators: `x_j^{x_1^a x_2^b} -> x_j`.
pub fn phi_project(rank: usize, yw: &YWord) -> Word {
    let mut w = Word::identity(rank);
    for y in yw.letters() {
        w.push_power(y.j, y.sign.value());
    }
    w
}

/// Replaces every Y-letter by the root letter `x_j` times a path of D-symbols.
///
/// `y_{a+1,b} = y_{a,b} D1(a,b)^-1` and `y_{0,b+1} = y_{0,b} D2(b)^-1`.
pub fn tree_substitute(yw: &YWord) -> Vec<MixedLetter> {
    let mut out: Vec<MixedLetter> = Vec::new();
    for y in yw.letters() {
        let path = tree_path(y.j, y.a, y.b);
        match y.sign {
            Sign::Plus => out.extend(path),
            Sign::Minus => out.extend(path.into_iter().rev().map(MixedLetter::inverse)),
        }
    }
    out
}

fn tree_path(j: usize, a: i64, b: i64) -> Vec<MixedLetter> {
    let mut path = vec![MixedLetter::Plain { j, sign: Sign::Plus }];
    if b >= 0 {
        for m in 0..b {
            path.push(MixedLetter::D {
                symbol: DSymbol::Two { j, k2: m },
                sign: Sign::Minus,
            });
        }
    } else {
        for m in (b..0).rev() {
            path.push(MixedLetter::D {
                symbol: DSymbol::Two { j, k2: m },
                sign: Sign::Plus,
            });
        }
    }
    if a >= 0 {
        for n in 0..a {
            path.push(MixedLetter::D {
                symbol: DSymbol::One { j, k1: n, k2: b },
                sign: Sign::Minus,
            });
        }
    } else {
        for n in (a..0).rev() {
            path.push(MixedLetter::D {
                symbol: DSymbol::One { j, k1: n, k2: b },
                sign: Sign::Plus,
            });
        }
    }
    path
}

/// Collects plain letters into conjugators: `p D^ε = (D^{p^-1})^ε p`.
pub fn kernel_rs(rank: usize, mixed: &[MixedLetter]) -> Result<Vec<KernelLetter>> {
    let mut prefix = Word::identity(rank);
    let mut out: Vec<KernelLetter> = Vec::new();
    for l in mixed {
        match *l {
            MixedLetter::Plain { j, sign } => prefix.push_power(j, sign.value()),
            MixedLetter::D { symbol, sign } => {
                let conj = prefix.inverse();
                if let Some(top) = out.last() {
                    if top.symbol == symbol && top.conj == conj && top.sign != sign {
                        out.pop();
                        continue;
                    }
                }
                out.push(KernelLetter { symbol, conj, sign });
            }
        }
    }
    if !prefix.is_identity() {
        return Err(Error::NotInKernel(prefix.to_string()));
    }
    Ok(out)
}

/// Rewrites `w` in the surface basis.
pub fn rewrite_surface(p: &SurfacePresentation, w: &Word) -> Result<SurfaceBasisWord> {
    p.check_word(w)?;
    let ab = w.abelianize();
    if !ab.is_zero() {
        return Err(Error::NotInCommutatorSubgroup(ab.0));
    }
    let rank = p.rank();
    if p.genus() == 1 {
        return SurfaceBasisWord::new(1, BasisWord::new(rank));
    }
    let (y, residual) = y_scan(p, w)?;
    debug_assert_eq!(residual, (0, 0));
    let a_f = phi_project(rank, &y);

    let mut a_root = YWord::new();
    for r in a_f.runs() {
        for _ in 0..r.exp.unsigned_abs() {
            a_root.push(YLetter {
                j: r.index,
                a: 0,
                b: 0,
                sign: Sign::from_exp(r.exp),
            });
        }
    }
    let mut b_k = y;
    b_k.append(&a_root.inverse());

    let mixed = tree_substitute(&b_k);
    let kernel = kernel_rs(rank, &mixed)?;

    let mut rewriter = Rewriter::default();
    let mut corrections: HashMap<Word, (Vec<i64>, BasisWord)> = HashMap::new();
    let mut out = BasisWord::new(rank);
    for kl in &kernel {
        if !corrections.contains_key(&kl.conj) {
            let exps = kl.conj.abelianize().0[2..].to_vec();
            let sorted = Word::sorted_monomial(rank, 3, &exps);
            let c = &sorted.inverse() * &kl.conj;
            let rc = rewriter.rewrite_from(&c, 3);
            corrections.insert(kl.conj.clone(), (exps, rc));
        }
        let (exps, rc) = &corrections[&kl.conj];
        let symbol = match kl.symbol {
            DSymbol::One { j, k1, k2 } => {
                let mut k = vec![k1, k2];
                k.extend_from_slice(exps);
                TSymbol { i: 1, j, k }
            }
            DSymbol::Two { j, k2 } => {
                let mut k = vec![k2];
                k.extend_from_slice(exps);
                TSymbol { i: 2, j, k }
            }
        };
        let t = BasisWord::single(symbol, kl.sign).conjugate_by(rc);
        out.append(&t);
    }
    out.append(&rewriter.rewrite_from(&a_f, 3));
    SurfaceBasisWord::new(p.genus(), out)
}

/// All rank-`2g` symbols with `(i, j) != (1, 2)` and entries bounded by `bound`.
pub fn surface_basis_enumerate(genus: usize, bound: i64) -> Vec<TSymbol> {
    free_basis_enumerate(2 * genus, bound)
        .into_iter()
        .filter(|s| !(s.i == 1 && s.j == 2))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::commutator;

    fn w(rank: usize, s: &str) -> Word {
        Word::parse(rank, s).unwrap()
    }

    fn p2() -> SurfacePresentation {
        SurfacePresentation::new(2).unwrap()
    }

    #[test]
    fn y_scan_examples() {
        let p = p2();
        let (y, res) = y_scan(&p, &w(4, "x3")).unwrap();
        assert_eq!(
            y.letters(),
            &[YLetter {
                j: 3,
                a: 0,
                b: 0,
                sign: Sign::Plus
            }]
        );
        assert_eq!(res, (0, 0));

        let (y, res) = y_scan(&p, &w(4, "x1 x3 x1^-1")).unwrap();
        assert_eq!(
            y.letters(),
            &[YLetter {
                j: 3,
                a: -1,
                b: 0,
                sign: Sign::Plus
            }]
        );
        assert_eq!(res, (0, 0));

        let c = commutator(&w(4, "x2"), &w(4, "x1")).unwrap();
        let (y, res) = y_scan(&p, &c).unwrap();
        assert_eq!(res, (0, 0));
        assert!(p
            .surface_equal(&y.expand(4), &relator_tail(2).unwrap())
            .unwrap());
    }

    #[test]
    fn y_scan_preserves_value() {
        let p = p2();
        for s in [
            "x1^2 x2 x3 x1^-1",
            "x1^-3 x2^-1 x4 x1 x2^2",
            "x2 x1 x2^-1 x1^-1 x3",
            "x1 x2^-1 x1^-2 x2^3 x1",
        ] {
            let v = w(4, s);
            let (y, (a, bb)) = y_scan(&p, &v).unwrap();
            let mut rhs = y.expand(4);
            rhs.push_power(2, bb);
            rhs.push_power(1, a);
            assert!(p.surface_equal(&rhs, &v).unwrap(), "{s}");
        }
    }

    #[test]
    fn tree_examples() {
        let one = |sign| YWord {
            letters: vec![YLetter {
                j: 3,
                a: 1,
                b: 0,
                sign,
            }],
        };
        assert_eq!(
            tree_substitute(&one(Sign::Plus)),
            vec![
                MixedLetter::Plain {
                    j: 3,
                    sign: Sign::Plus
                },
                MixedLetter::D {
                    symbol: DSymbol::One { j: 3, k1: 0, k2: 0 },
                    sign: Sign::Minus
                }
            ]
        );
        let y = YWord {
            letters: vec![YLetter {
                j: 3,
                a: 0,
                b: -1,
                sign: Sign::Plus,
            }],
        };
        assert_eq!(
            tree_substitute(&y),
            vec![
                MixedLetter::Plain {
                    j: 3,
                    sign: Sign::Plus
                },
                MixedLetter::D {
                    symbol: DSymbol::Two { j: 3, k2: -1 },
                    sign: Sign::Plus
                }
            ]
        );
        for (a, b) in [(2, 3), (-2, 1), (3, -2), (-1, -3), (0, 0)] {
            for sign in [Sign::Plus, Sign::Minus] {
                let y = YWord {
                    letters: vec![YLetter { j: 4, a, b, sign }],
                };
                assert_eq!(expand_mixed(4, &tree_substitute(&y)), y.expand(4));
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let d = DSymbol::One { j: 3, k1: 0, k2: 0 };
        let dl = MixedLetter::D {
            symbol: d,
            sign: Sign::Plus,
        };
        let x3 = |sign| MixedLetter::Plain { j: 3, sign };
        assert_eq!(
            kernel_rs(4, &[dl]).unwrap(),
            vec![KernelLetter {
                symbol: d,
                conj: Word::identity(4),
                sign: Sign::Plus
            }]
        );
        assert_eq!(
            kernel_rs(4, &[x3(Sign::Plus), dl, x3(Sign::Minus)]).unwrap(),
            vec![KernelLetter {
                symbol: d,
                conj: w(4, "x3^-1"),
                sign: Sign::Plus
            }]
        );
        assert!(kernel_rs(4, &[x3(Sign::Plus), x3(Sign::Minus)])
            .unwrap()
            .is_empty());
        assert!(matches!(
            kernel_rs(4, &[x3(Sign::Plus)]),
            Err(Error::NotInKernel(_))
        ));
    }

    #[test]
    fn rewrite_surface_examples() {
        let p = p2();
        let c34 = commutator(&w(4, "x3"), &w(4, "x4")).unwrap();
        let out = rewrite_surface(&p, &c34).unwrap();
        assert_eq!(out.to_lines(), vec!["+ C[3,4](0,0)"]);

        let c13 = commutator(&w(4, "x1"), &w(4, "x3")).unwrap();
        let out = rewrite_surface(&p, &c13).unwrap();
        assert_eq!(out.to_lines(), vec!["+ C[1,3](0,0,0,0)"]);

        let c12 = commutator(&w(4, "x1"), &w(4, "x2")).unwrap();
        let out = rewrite_surface(&p, &c12).unwrap();
        assert!(!out.is_empty());
        assert!(p.surface_equal(&out.expand(), &c12).unwrap());
    }

    #[test]
    fn relator_collapses() {
        let p = p2();
        let r = p.relator().clone();
        let out = rewrite_surface(&p, &r).unwrap();
        assert!(out.is_empty());
        let rc = r.conjugate_by(&w(4, "x2 x1^-2 x4"));
        assert!(rewrite_surface(&p, &rc).unwrap().is_empty());
    }

    #[test]
    fn genus_one_is_empty() {
        let p = SurfacePresentation::new(1).unwrap();
        let c = commutator(&w(2, "x1"), &w(2, "x2")).unwrap();
        assert!(rewrite_surface(&p, &c).unwrap().is_empty());
        assert!(rewrite_surface(&p, &w(2, "x1")).is_err());
    }

    #[test]
    fn enumerate_counts() {
        assert!(surface_basis_enumerate(1, 3).is_empty());
        assert_eq!(surface_basis_enumerate(2, 0).len(), 5);
        assert_eq!(surface_basis_enumerate(2, 1).len(), 225);
    }
}
