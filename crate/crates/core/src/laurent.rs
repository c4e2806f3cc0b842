//! Sparse Laurent polynomials in `t_1, ..., t_n` with integer coefficients, i.e. the group
//! ring `Z[Z^n]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{checked_add, checked_mul};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: Vec<i64>,
    c: i64,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    rank: usize,
    terms: Vec<TermJson>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        LaurentPoly::monomial(vec![0; rank], 1)
    }

    /// `c · t^e`.
    pub fn monomial(e: Vec<i64>, c: i64) -> Self {
        let mut p = LaurentPoly::zero(e.len());
        p.add_term(e, c);
        p
    }

    /// `t_i - 1`.
    pub fn t_minus_one(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i - 1] = 1;
        let mut p = LaurentPoly::monomial(e, 1);
        p.add_term(vec![0; rank], -1);
        p
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Result<Self> {
        let mut p = LaurentPoly::zero(rank);
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::RankMismatch(format!(
                    "exponent {e:?} in a rank-{rank} polynomial"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, i64)> {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[i64]) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Vec<i64>, c: i64) {
        debug_assert_eq!(e.len(), self.rank);
        if c == 0 {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let v = checked_add(*slot.get(), c);
                if v == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = v;
                }
            }
        }
    }

    pub fn scale(&self, c: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.rank);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), checked_mul(*v, c));
        }
        p
    }

    /// Multiplies by the monomial `t^h`.
    pub fn shift(&self, h: &[i64]) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_vec(e, h), *c))
                .collect(),
        }
    }

    /// The augmentation `t_i -> 1`.
    pub fn augment(&self) -> i64 {
        self.terms.values().fold(0, |acc, c| checked_add(acc, *c))
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), *c);
        }
        Ok(p)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut p = LaurentPoly::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                p.add_term(add_vec(e1, e2), checked_mul(*c1, *c2));
            }
        }
        Ok(p)
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch(format!(
                "Laurent polynomials of rank {} and {}",
                self.rank, other.rank
            )))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { e: e.clone(), c: *c })
                .collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PolyJson = serde_json::from_str(text)
            .map_err(|e| Error::parse("Laurent polynomial", text, e.to_string()))?;
        LaurentPoly::from_terms(raw.rank, raw.terms.into_iter().map(|t| (t.e, t.c)))
    }
}

pub(crate) fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| checked_add(*x, *y)).collect()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("rank mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(&-rhs).expect("rank mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("rank mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " {} ", if *c < 0 { '-' } else { '+' })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| {
                    if *x == 1 {
                        format!("t{}", i + 1)
                    } else {
                        format!("t{}^{}", i + 1, x)
                    }
                })
                .collect();
            let a = c.unsigned_abs();
            match (monomial.is_empty(), a) {
                (true, _) => write!(f, "{a}")?,
                (false, 1) => write!(f, "{}", monomial.join("*"))?,
                (false, _) => write!(f, "{a}*{}", monomial.join("*"))?,
            }
        }
        Ok(())
    }
}
