//! Rewriting elements of `[F_n, F_n]` in the basis `[x_i,x_j]^{x_i^{k_i} ... x_n^{k_n}}`.
//!
//! Split `w = b a` with `a` the retraction away from `x_1` and `b` in `K ∩ [F, F]`, express
//! `b` in square symbols, sort every conjugator modulo `[F(T), F(T)]`, and recurse on `a`
//! over the smaller alphabet.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rewrite::ladder::{express_path, SSymbol};
use crate::rewrite::symbol::{BasisWord, Sign, TSymbol};
use crate::word::Word;

/// Rewrites `w` in the free basis of `[F_n, F_n]`.
pub fn rewrite(w: &Word) -> Result<BasisWord> {
    check_commutator(w)?;
    Ok(Rewriter::default().rewrite_from(w, 1))
}

/// Rewrites a word that only uses `x_first, ..., x_n`; every output symbol has `i >= first`.
pub fn rewrite_sub(w: &Word, first: usize) -> Result<BasisWord> {
    if let Some(r) = w.runs().iter().find(|r| r.index < first) {
        return Err(Error::InvalidArgument(format!(
            "x{} occurs but only x{first}..x{} are allowed",
            r.index,
            w.rank()
        )));
    }
    check_commutator(w)?;
    Ok(Rewriter::default().rewrite_from(w, first))
}

fn check_commutator(w: &Word) -> Result<()> {
    let ab = w.abelianize();
    if ab.is_zero() {
        Ok(())
    } else {
        Err(Error::NotInCommutatorSubgroup(ab.0))
    }
}

/// Replaces the conjugator of a square symbol by its sorted representative.
pub fn normalize_conjugator(s: &SSymbol) -> BasisWord {
    Rewriter::default().normalize(s)
}

/// Memoizes the correction sandwich for each conjugator seen during one rewrite.
#[derive(Default)]
pub(crate) struct Rewriter {
    corrections: HashMap<(usize, Word), (Vec<i64>, BasisWord)>,
}

impl Rewriter {
    pub(crate) fn rewrite_from(&mut self, w: &Word, first: usize) -> BasisWord {
        let n = w.rank();
        let mut out = BasisWord::new(n);
        let mut current = w.clone();
        for pivot in first..n {
            let a = current.retract_below(pivot + 1);
            let b = &current * &a.inverse();
            for (s, sign) in express_path(&b, pivot) {
                let t = self.normalize(&s);
                match sign {
                    Sign::Plus => out.append(&t),
                    Sign::Minus => out.append(&t.inverse()),
                }
            }
            current = a;
        }
        debug_assert!(current.is_identity());
        out
    }

    pub(crate) fn normalize(&mut self, s: &SSymbol) -> BasisWord {
        let first = s.i + 1;
        let key = (s.i, s.u.clone());
        if !self.corrections.contains_key(&key) {
            let ab = s.u.abelianize();
            let exps = ab.0[first - 1..].to_vec();
            let sorted = Word::sorted_monomial(s.u.rank(), first, &exps);
            let c = &sorted.inverse() * &s.u;
            let rc = self.rewrite_from(&c, first);
            self.corrections.insert(key.clone(), (exps, rc));
        }
        let (exps, rc) = &self.corrections[&key];
        let mut k = Vec::with_capacity(exps.len() + 1);
        k.push(s.k);
        k.extend_from_slice(exps);
        let symbol = TSymbol {
            i: s.i,
            j: s.j,
            k,
        };
        BasisWord::single(symbol, Sign::Plus).conjugate_by(rc)
    }
}
