//! Koszul differentials of `(t_1 - 1, ..., t_n - 1)` over `Z[Z^n]`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::homology::matrix::IntegerMatrix;
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rank: usize,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rank: usize, rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rank,
            rows,
            cols,
            entries: vec![LaurentPoly::zero(rank); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: LaurentPoly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn try_mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != other.rows {
            return Err(Error::RankMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = LaurentMatrix::zeros(self.rank, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = LaurentPoly::zero(self.rank);
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Evaluates every entry at `t = 1`.
    pub fn specialize(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, BigInt::from(self.get(r, c).augment()));
            }
        }
        m
    }

    /// Places `self` above `below`.
    pub fn stack(&self, below: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.cols, below.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&below.entries);
        LaurentMatrix {
            rank: self.rank,
            rows: self.rows + below.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Places `self` left of `right`.
    pub fn augment_cols(&self, right: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.rows, right.rows);
        let cols = self.cols + right.cols;
        let mut out = LaurentMatrix::zeros(self.rank, self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..right.cols {
                out.set(r, self.cols + c, right.get(r, c).clone());
            }
        }
        out
    }
}

/// The `p`-element subsets of `{1, ..., n}` in lexicographic order.
pub fn exterior_basis(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n + 1 - i < left {
                break;
            }
            cur.push(i);
            go(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, p, &mut Vec::new(), &mut out);
    out
}

/// `Λ^p R^n -> Λ^{p-1} R^n`, `e_S -> Σ_s (-1)^s (t_{S_s} - 1) e_{S - S_s}`.
pub fn koszul_differential(n: usize, p: usize) -> LaurentMatrix {
    let source = exterior_basis(n, p);
    let target = if p == 0 { Vec::new() } else { exterior_basis(n, p - 1) };
    let mut m = LaurentMatrix::zeros(n, target.len(), source.len());
    for (c, s) in source.iter().enumerate() {
        for pos in 0..s.len() {
            let mut face = s.clone();
            let i = face.remove(pos);
            let r = target.binary_search(&face).expect("face is a basis subset");
            let entry = LaurentPoly::t_minus_one(n, i);
            let entry = if pos % 2 == 0 { entry } else { entry.scale(-1) };
            m.set(r, c, entry);
        }
    }
    m
}
