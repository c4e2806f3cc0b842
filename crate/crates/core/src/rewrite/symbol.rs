use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::Word;

/// `+1` or `-1` exponent on a basis letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_exp(e: i64) -> Sign {
        if e < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// The commutator `[x_i, x_j]` conjugated by `x_i^{k_i} x_{i+1}^{k_{i+1}} ... x_n^{k_n}`.
///
/// `k` holds `n - i + 1` entries, so the rank is implied by `i` and `k.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TSymbol {
    pub i: usize,
    pub j: usize,
    pub k: Vec<i64>,
}

impl TSymbol {
    pub fn new(rank: usize, i: usize, j: usize, k: Vec<i64>) -> Result<Self> {
        let s = TSymbol { i, j, k };
        s.validate(rank)?;
        Ok(s)
    }

    /// Same as [`TSymbol::new`] with every exponent zero.
    pub fn bare(rank: usize, i: usize, j: usize) -> Result<Self> {
        TSymbol::new(rank, i, j, vec![0; (rank + 1).saturating_sub(i)])
    }

    pub fn rank(&self) -> usize {
        self.i + self.k.len() - 1
    }

    pub fn validate(&self, rank: usize) -> Result<()> {
        if self.i == 0 || self.i >= self.j || self.j > rank {
            return Err(Error::InvalidSymbol(format!(
                "{self} needs 1 <= i < j <= {rank}"
            )));
        }
        if self.k.len() != rank - self.i + 1 {
            return Err(Error::InvalidSymbol(format!(
                "{self} needs {} exponents for rank {rank}",
                rank - self.i + 1
            )));
        }
        Ok(())
    }

    /// The conjugator `x_i^{k_i} ... x_n^{k_n}`.
    pub fn conjugator(&self) -> Word {
        Word::sorted_monomial(self.rank(), self.i, &self.k)
    }

    /// The group element this symbol names, as a reduced word.
    pub fn expand(&self) -> Word {
        let rank = self.rank();
        let u = self.conjugator();
        let mut w = u.inverse();
        w.push_power(self.i, -1);
        w.push_power(self.j, -1);
        w.push_power(self.i, 1);
        w.push_power(self.j, 1);
        w.push_word(&u);
        debug_assert_eq!(w.rank(), rank);
        w
    }

    /// Exponent vector over all `n` coordinates (zeros below `i`).
    pub fn full_exponent(&self) -> Vec<i64> {
        let mut h = vec![0; self.i - 1];
        h.extend_from_slice(&self.k);
        h
    }
}

impl fmt::Display for TSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C[{},{}](", self.i, self.j)?;
        for (t, e) in self.k.iter().enumerate() {
            if t > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for TSymbol {
    type Err = Error;

    /// Parses `C[i,j](k_i,...,k_n)`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |reason: &str| Error::parse("symbol", s, reason);
        let body = compact
            .strip_prefix("C[")
            .ok_or_else(|| bad("expected 'C['"))?;
        let (ij, rest) = body.split_once(']').ok_or_else(|| bad("missing ']'"))?;
        let (i, j) = ij.split_once(',').ok_or_else(|| bad("expected 'i,j'"))?;
        let i: usize = i.parse().map_err(|_| bad("bad index i"))?;
        let j: usize = j.parse().map_err(|_| bad("bad index j"))?;
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| bad("expected '(k_i,...,k_n)'"))?;
        let k = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|e| e.parse::<i64>().map_err(|_| bad("bad exponent")))
                .collect::<Result<Vec<_>>>()?
        };
        if i == 0 || k.is_empty() {
            return Err(bad("need i >= 1 and at least one exponent"));
        }
        let sym = TSymbol { i, j, k };
        sym.validate(sym.rank())?;
        Ok(sym)
    }
}

/// A word in basis symbols, kept freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisWord {
    rank: usize,
    letters: Vec<(TSymbol, Sign)>,
}

impl BasisWord {
    pub fn new(rank: usize) -> Self {
        BasisWord {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(
        rank: usize,
        letters: impl IntoIterator<Item = (TSymbol, Sign)>,
    ) -> Result<Self> {
        let mut bw = BasisWord::new(rank);
        for (s, e) in letters {
            s.validate(rank)?;
            bw.push(s, e);
        }
        Ok(bw)
    }

    pub fn single(symbol: TSymbol, sign: Sign) -> Self {
        let mut bw = BasisWord::new(symbol.rank());
        bw.push(symbol, sign);
        bw
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[(TSymbol, Sign)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, symbol: TSymbol, sign: Sign) {
        debug_assert_eq!(symbol.rank(), self.rank);
        if let Some((top, s)) = self.letters.last() {
            if *top == symbol && *s != sign {
                self.letters.pop();
                return;
            }
        }
        self.letters.push((symbol, sign));
    }

    pub fn append(&mut self, other: &BasisWord) {
        for (s, e) in &other.letters {
            self.push(s.clone(), *e);
        }
    }

    pub fn inverse(&self) -> BasisWord {
        BasisWord {
            rank: self.rank,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(s, e)| (s.clone(), e.flip()))
                .collect(),
        }
    }

    /// `c^-1 self c`.
    pub fn conjugate_by(&self, c: &BasisWord) -> BasisWord {
        let mut out = c.inverse();
        out.append(self);
        out.append(c);
        out
    }

    pub fn is_reduced(&self) -> bool {
        self.letters
            .windows(2)
            .all(|w| !(w[0].0 == w[1].0 && w[0].1 != w[1].1))
    }

    /// The product of the symbol expansions.
    pub fn expand(&self) -> Word {
        let mut w = Word::identity(self.rank);
        for (s, e) in &self.letters {
            match e {
                Sign::Plus => w.push_word(&s.expand()),
                Sign::Minus => w.push_word(&s.expand().inverse()),
            }
        }
        w
    }

    /// One `"+ C[i,j](...)"` line per letter.
    pub fn to_lines(&self) -> Vec<String> {
        self.letters
            .iter()
            .map(|(s, e)| format!("{} {}", e.as_char(), s))
            .collect()
    }

    /// Inverse of [`BasisWord::to_lines`]; blank lines are skipped.
    pub fn parse_lines(rank: usize, text: &str) -> Result<Self> {
        let mut bw = BasisWord::new(rank);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (sign, rest) = match line.chars().next() {
                Some('+') => (Sign::Plus, &line[1..]),
                Some('-') => (Sign::Minus, &line[1..]),
                _ => (Sign::Plus, line),
            };
            let sym: TSymbol = rest.trim().parse()?;
            sym.validate(rank)?;
            bw.push(sym, sign);
        }
        Ok(bw)
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, (s, e)) in self.letters.iter().enumerate() {
            if t > 0 {
                f.write_str(" ")?;
            }
            match e {
                Sign::Plus => write!(f, "{s}")?,
                Sign::Minus => write!(f, "{s}^-1")?,
            }
        }
        Ok(())
    }
}

pub fn expand_symbol(s: &TSymbol) -> Word {
    s.expand()
}

pub fn expand(bw: &BasisWord) -> Word {
    bw.expand()
}

/// Every symbol of rank `n` with all exponents in `[-bound, bound]`.
pub fn free_basis_enumerate(n: usize, bound: i64) -> Vec<TSymbol> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in exponent_box(n - i + 1, bound) {
                out.push(TSymbol { i, j, k });
            }
        }
    }
    out
}

/// All integer vectors of length `dim` with entries in `[-bound, bound]`, lexicographic.
pub fn exponent_box(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(dim)];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-bound..=bound).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}
