//! Smith normal form over `Z`.
//!
//! [`smith_normal_form`] works on a sparse copy and only returns the invariant factors.
//! [`smith_with_transforms`] is the dense textbook algorithm that also records the unimodular
//! row and column transforms; it doubles as an oracle for the sparse one.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::homology::matrix::IntegerMatrix;

/// Invariant factors `d_1 | d_2 | ... | d_r`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub divisors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Divisors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal in Smith form.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    pub fn form(&self) -> SmithForm {
        let n = self.d.rows().min(self.d.cols());
        SmithForm {
            divisors: (0..n)
                .map(|t| self.d.get(t, t).clone())
                .filter(|x| !x.is_zero())
                .collect(),
        }
    }
}

/// Makes a list of positive divisors into a divisibility chain.
fn normalize_chain(mut ds: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..ds.len() {
        for j in i + 1..ds.len() {
            let g = ds[i].gcd(&ds[j]);
            let l = ds[i].lcm(&ds[j]);
            ds[i] = g;
            ds[j] = l;
        }
    }
    ds
}

pub fn smith_with_transforms(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    let row_op = |d: &mut IntegerMatrix, u: &mut IntegerMatrix, dst: usize, src: usize, q: &BigInt| {
        d.add_row(dst, src, q);
        u.add_row(dst, src, q);
    };
    let col_op = |d: &mut IntegerMatrix, v: &mut IntegerMatrix, dst: usize, src: usize, q: &BigInt| {
        d.add_col(dst, src, q);
        v.add_col(dst, src, q);
    };

    for t in 0..rows.min(cols) {
        let Some((r, c)) = min_abs_in(&d, t, t) else {
            break;
        };
        d.swap_rows(t, r);
        u.swap_rows(t, r);
        d.swap_cols(t, c);
        v.swap_cols(t, c);
        loop {
            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..rows {
                if !d.get(r, t).is_zero() {
                    let q = -(d.get(r, t) / &pivot);
                    row_op(&mut d, &mut u, r, t, &q);
                    clean &= d.get(r, t).is_zero();
                }
            }
            for c in t + 1..cols {
                if !d.get(t, c).is_zero() {
                    let q = -(d.get(t, c) / &pivot);
                    col_op(&mut d, &mut v, c, t, &q);
                    clean &= d.get(t, c).is_zero();
                }
            }
            if !clean {
                let (r, c) = min_abs_on_cross(&d, t);
                d.swap_rows(t, r);
                u.swap_rows(t, r);
                d.swap_cols(t, c);
                v.swap_cols(t, c);
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                .find(|&(r, c)| !(d.get(r, c) % &pivot).is_zero());
            match bad {
                Some((r, _)) => row_op(&mut d, &mut u, t, r, &BigInt::one()),
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, d, v }
}

fn min_abs_in(d: &IntegerMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in r0..d.rows() {
        for c in c0..d.cols() {
            let x = d.get(r, c);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                best = Some((a, r, c));
            }
        }
    }
    best.map(|(_, r, c)| (r, c))
}

fn min_abs_on_cross(d: &IntegerMatrix, t: usize) -> (usize, usize) {
    let mut cells: Vec<(usize, usize)> = vec![(t, t)];
    cells.extend((t + 1..d.rows()).map(|r| (r, t)));
    cells.extend((t + 1..d.cols()).map(|c| (t, c)));
    cells
        .into_iter()
        .filter(|&(r, c)| !d.get(r, c).is_zero())
        .min_by_key(|&(r, c)| d.get(r, c).abs())
        .expect("pivot cross is nonzero")
}

/// Dense Smith form without keeping transforms.
pub fn smith_normal_form_dense(m: &IntegerMatrix) -> SmithForm {
    smith_with_transforms(m).form()
}

struct Sparse {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl Sparse {
    fn new(rows: usize, cols: usize) -> Self {
        Sparse {
            rows: vec![BTreeMap::new(); rows],
            cols: vec![BTreeSet::new(); cols],
        }
    }

    fn set(&mut self, r: usize, c: usize, x: BigInt) {
        if x.is_zero() {
            self.rows[r].remove(&c);
            self.cols[c].remove(&r);
        } else {
            self.rows[r].insert(c, x);
            self.cols[c].insert(r);
        }
    }

    /// `row[dst] -= q * row[src]`.
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        let src_row: Vec<(usize, BigInt)> =
            self.rows[src].iter().map(|(c, x)| (*c, x.clone())).collect();
        for (c, x) in src_row {
            let cur = self.rows[dst].get(&c).cloned().unwrap_or_default();
            self.set(dst, c, cur - q * x);
        }
    }

    /// Minimal absolute value, ties broken by the Markowitz count.
    fn pick(&self, candidates: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for (r, c) in candidates {
            let a = self.rows[r][&c].abs();
            let cost = (self.rows[r].len() - 1) * (self.cols[c].len() - 1);
            let better = match &best {
                None => true,
                Some((b, bc, _, _)) => a < *b || (a == *b && cost < *bc),
            };
            if better {
                best = Some((a, cost, r, c));
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn all_entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.keys().map(move |c| (r, *c)))
    }
}

/// Invariant factors by sparse elimination with min-abs/Markowitz pivoting.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let entries = (0..m.rows()).flat_map(|r| {
        (0..m.cols())
            .filter(move |&c| !m.get(r, c).is_zero())
            .map(move |c| (r, c, m.get(r, c).clone()))
    });
    smith_normal_form_sparse(m.rows(), m.cols(), entries)
}

/// Same as [`smith_normal_form`] for a matrix given by `(row, col, value)` triples.
/// Repeated positions are summed.
pub fn smith_normal_form_sparse(
    rows: usize,
    cols: usize,
    entries: impl IntoIterator<Item = (usize, usize, BigInt)>,
) -> SmithForm {
    let mut s = Sparse::new(rows, cols);
    for (r, c, x) in entries {
        let cur = s.rows[r].get(&c).cloned().unwrap_or_default();
        s.set(r, c, cur + x);
    }
    let mut diag: Vec<BigInt> = Vec::new();
    while let Some((mut r, mut c)) = s.pick(s.all_entries()) {
        loop {
            let pivot = s.rows[r][&c].clone();
            let others: Vec<usize> = s.cols[c].iter().copied().filter(|&x| x != r).collect();
            for r2 in &others {
                let q = &s.rows[*r2][&c] / &pivot;
                if !q.is_zero() {
                    s.sub_row(*r2, r, &q);
                }
            }
            if s.cols[c].len() > 1 {
                let cands: Vec<(usize, usize)> = s.cols[c].iter().map(|&x| (x, c)).collect();
                (r, c) = s.pick(cands.into_iter()).expect("column is nonzero");
                continue;
            }
            // Column c holds only the pivot, so column operations touch row r alone.
            let row_entries: Vec<(usize, BigInt)> = s.rows[r]
                .iter()
                .filter(|(x, _)| **x != c)
                .map(|(x, v)| (*x, v.clone()))
                .collect();
            for (c2, x) in row_entries {
                s.set(r, c2, x % &pivot);
            }
            if s.rows[r].len() > 1 {
                let cands: Vec<(usize, usize)> = s.rows[r].keys().map(|&x| (r, x)).collect();
                (r, c) = s.pick(cands.into_iter()).expect("row is nonzero");
                continue;
            }
            diag.push(pivot.abs());
            s.set(r, c, BigInt::zero());
            break;
        }
    }
    diag.sort();
    SmithForm {
        divisors: normalize_chain(diag),
    }
}

pub fn rank(m: &IntegerMatrix) -> usize {
    smith_normal_form(m).rank()
}
