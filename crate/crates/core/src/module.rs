//! `[F_n, F_n]^ab` and `[π, π]^ab` as modules over `Z[Z^n]`, in basis-symbol coordinates.
//!
//! `t^h` acts through conjugation: `t^h · {x_i, x_j}^k = {x_i, x_j}^{k + h}`, where the braces
//! class `{x_i, x_j}^k` is the image of `[x_i, x_j]^w` for any `w` with abelianization `k`.
//! When `k` vanishes below `i` the class is a single basis symbol; otherwise it is computed by
//! rewriting.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{add_vec, LaurentPoly};
use crate::rewrite::free::rewrite;
use crate::rewrite::symbol::{BasisWord, TSymbol};
use crate::surface::SurfacePresentation;
use crate::surface_rewrite::rewrite_surface;
use crate::word::{checked_add, checked_mul, commutator, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Free,
    Surface,
}

/// A finite integer combination of basis symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    rank: usize,
    case: Case,
    terms: BTreeMap<TSymbol, i64>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: usize,
    j: usize,
    k: Vec<i64>,
    c: i64,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    rank: usize,
    case: Case,
    terms: Vec<TermJson>,
}

impl ModuleElement {
    pub fn zero(rank: usize, case: Case) -> Self {
        ModuleElement {
            rank,
            case,
            terms: BTreeMap::new(),
        }
    }

    pub fn symbol(rank: usize, case: Case, s: TSymbol, c: i64) -> Result<Self> {
        let mut m = ModuleElement::zero(rank, case);
        m.check_symbol(&s)?;
        m.add_term(s, c);
        Ok(m)
    }

    pub fn from_terms(
        rank: usize,
        case: Case,
        terms: impl IntoIterator<Item = (TSymbol, i64)>,
    ) -> Result<Self> {
        let mut m = ModuleElement::zero(rank, case);
        for (s, c) in terms {
            m.check_symbol(&s)?;
            m.add_term(s, c);
        }
        Ok(m)
    }

    fn check_symbol(&self, s: &TSymbol) -> Result<()> {
        s.validate(self.rank)?;
        if self.case == Case::Surface {
            if !self.rank.is_multiple_of(2) {
                return Err(Error::RankMismatch(format!(
                    "surface module needs even rank, got {}",
                    self.rank
                )));
            }
            if s.i == 1 && s.j == 2 {
                return Err(Error::InvalidSymbol(format!(
                    "{s} is not a surface basis symbol"
                )));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn case(&self) -> Case {
        self.case
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TSymbol, i64)> {
        self.terms.iter().map(|(s, c)| (s, *c))
    }

    pub fn coefficient(&self, s: &TSymbol) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    /// The unique `(symbol, 1)` term, if the element is a single unit-coefficient symbol.
    pub fn as_unit_symbol(&self) -> Option<&TSymbol> {
        match self.terms.iter().next() {
            Some((s, 1)) if self.terms.len() == 1 => Some(s),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, s: TSymbol, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(s) {
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

    fn check_same(&self, other: &ModuleElement) -> Result<()> {
        if self.rank != other.rank || self.case != other.case {
            return Err(Error::RankMismatch(format!(
                "{:?} rank {} vs {:?} rank {}",
                self.case, self.rank, other.case, other.rank
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ModuleElement) -> Result<ModuleElement> {
        self.check_same(other)?;
        let mut m = self.clone();
        m.add_scaled(other, 1);
        Ok(m)
    }

    pub(crate) fn add_scaled(&mut self, other: &ModuleElement, c: i64) {
        for (s, v) in &other.terms {
            self.add_term(s.clone(), checked_mul(*v, c));
        }
    }

    pub fn scale(&self, c: i64) -> ModuleElement {
        let mut m = ModuleElement::zero(self.rank, self.case);
        m.add_scaled(self, c);
        m
    }

    pub fn neg(&self) -> ModuleElement {
        self.scale(-1)
    }

    /// Signed symbol count of a basis word.
    pub fn from_basis_word(bw: &BasisWord, case: Case) -> ModuleElement {
        let mut m = ModuleElement::zero(bw.rank(), case);
        for (s, e) in bw.letters() {
            m.add_term(s.clone(), e.value());
        }
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ElementJson {
            rank: self.rank,
            case: self.case,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| TermJson {
                    i: s.i,
                    j: s.j,
                    k: s.k.clone(),
                    c: *c,
                })
                .collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ElementJson = serde_json::from_str(text)
            .map_err(|e| Error::parse("module element", text, e.to_string()))?;
        ModuleElement::from_terms(
            raw.rank,
            raw.case,
            raw.terms
                .into_iter()
                .map(|t| (TSymbol { i: t.i, j: t.j, k: t.k }, t.c)),
        )
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (s, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if n > 0 {
                write!(f, " {sign} ")?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            match c.unsigned_abs() {
                1 => write!(f, "{s}")?,
                a => write!(f, "{a}*{s}")?,
            }
        }
        Ok(())
    }
}

/// Image of `w` in `[F_n, F_n]^ab`.
pub fn abelianize_free(w: &Word) -> Result<ModuleElement> {
    Ok(ModuleElement::from_basis_word(&rewrite(w)?, Case::Free))
}

/// Image of `w` in `[π, π]^ab`.
pub fn abelianize_surface(p: &SurfacePresentation, w: &Word) -> Result<ModuleElement> {
    let bw = rewrite_surface(p, w)?;
    Ok(ModuleElement::from_basis_word(bw.word(), Case::Surface))
}

fn check_pair(rank: usize, i: usize, j: usize, h: &[i64]) -> Result<()> {
    if i == 0 || i >= j || j > rank {
        return Err(Error::IndexOutOfRange(format!(
            "braces needs 1 <= i < j <= {rank}, got ({i},{j})"
        )));
    }
    if h.len() != rank {
        return Err(Error::RankMismatch(format!(
            "offset of length {} for rank {rank}",
            h.len()
        )));
    }
    Ok(())
}

fn braces_word(rank: usize, i: usize, j: usize, h: &[i64]) -> Word {
    let xi = Word::power(rank, i, 1).expect("index checked");
    let xj = Word::power(rank, j, 1).expect("index checked");
    let c = commutator(&xi, &xj).expect("same rank");
    c.conjugate_by(&Word::sorted_monomial(rank, 1, h))
}

/// `{x_i, x_j}^h` in `[F_n, F_n]^ab`.
pub fn braces(rank: usize, i: usize, j: usize, h: &[i64]) -> Result<ModuleElement> {
    check_pair(rank, i, j, h)?;
    if h[..i - 1].iter().all(|x| *x == 0) {
        let s = TSymbol {
            i,
            j,
            k: h[i - 1..].to_vec(),
        };
        return ModuleElement::symbol(rank, Case::Free, s, 1);
    }
    abelianize_free(&braces_word(rank, i, j, h))
}

/// `{x_i, x_j}^h` in `[π, π]^ab`.
pub fn braces_surface(p: &SurfacePresentation, i: usize, j: usize, h: &[i64]) -> Result<ModuleElement> {
    let rank = p.rank();
    check_pair(rank, i, j, h)?;
    if !(i == 1 && j == 2) && h[..i - 1].iter().all(|x| *x == 0) {
        let s = TSymbol {
            i,
            j,
            k: h[i - 1..].to_vec(),
        };
        return ModuleElement::symbol(rank, Case::Surface, s, 1);
    }
    abelianize_surface(p, &braces_word(rank, i, j, h))
}

/// The action of a Laurent polynomial.
pub fn act(poly: &LaurentPoly, m: &ModuleElement) -> Result<ModuleElement> {
    if poly.rank() != m.rank {
        return Err(Error::RankMismatch(format!(
            "polynomial rank {} acting on module rank {}",
            poly.rank(),
            m.rank
        )));
    }
    let surface = match m.case {
        Case::Free => None,
        Case::Surface => Some(SurfacePresentation::new(m.rank / 2)?),
    };
    let mut out = ModuleElement::zero(m.rank, m.case);
    for (h, c) in poly.terms() {
        for (s, v) in &m.terms {
            let k = add_vec(&s.full_exponent(), h);
            let image = match &surface {
                None => braces(m.rank, s.i, s.j, &k)?,
                Some(p) => braces_surface(p, s.i, s.j, &k)?,
            };
            out.add_scaled(&image, checked_mul(c, *v));
        }
    }
    Ok(out)
}

/// `act(t^h, m)`.
pub fn act_monomial(h: &[i64], m: &ModuleElement) -> Result<ModuleElement> {
    act(&LaurentPoly::monomial(h.to_vec(), 1), m)
}

/// Abelianized Fox derivatives `(∂w/∂x_1, ..., ∂w/∂x_n)` in `Z[Z^n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoxVector(pub Vec<LaurentPoly>);

impl FoxVector {
    pub fn zero(rank: usize) -> Self {
        FoxVector(vec![LaurentPoly::zero(rank); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `Σ_i ∂w/∂x_i · (t_i - 1)`, which equals `w̄ - 1`.
    pub fn fundamental_sum(&self) -> LaurentPoly {
        let n = self.rank();
        let mut total = LaurentPoly::zero(n);
        for (i, comp) in self.0.iter().enumerate() {
            total = &total + &(comp * &LaurentPoly::t_minus_one(n, i + 1));
        }
        total
    }

    pub fn add_scaled(&mut self, other: &FoxVector, c: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a = &*a + &b.scale(c);
        }
    }
}

/// Fox derivatives with the product rule `∂(uv) = ∂u + ū ∂v`.
pub fn fox_vector(w: &Word) -> FoxVector {
    let n = w.rank();
    let mut fox = FoxVector::zero(n);
    let mut prefix = vec![0i64; n];
    for r in w.runs() {
        let comp = &mut fox.0[r.index - 1];
        let idx = r.index - 1;
        if r.exp > 0 {
            for m in 0..r.exp {
                let mut e = prefix.clone();
                e[idx] = checked_add(e[idx], m);
                comp.add_term(e, 1);
            }
        } else {
            for m in r.exp..0 {
                let mut e = prefix.clone();
                e[idx] = checked_add(e[idx], m);
                comp.add_term(e, -1);
            }
        }
        prefix[idx] = checked_add(prefix[idx], r.exp);
    }
    fox
}

/// The Fox vector of a module element, summed symbol by symbol.
pub fn fox_of_element(m: &ModuleElement) -> FoxVector {
    let mut fox = FoxVector::zero(m.rank);
    for (s, c) in &m.terms {
        fox.add_scaled(&fox_vector(&s.expand()), *c);
    }
    fox
}

/// `(t_i - 1){x_j,x_k}^h - (t_j - 1){x_i,x_k}^h + (t_k - 1){x_i,x_j}^h`, which must vanish.
pub fn koszul_relation_check(
    rank: usize,
    (i, j, k): (usize, usize, usize),
    h: &[i64],
) -> Result<ModuleElement> {
    if !(1 <= i && i < j && j < k && k <= rank) {
        return Err(Error::IndexOutOfRange(format!(
            "need 1 <= i < j < k <= {rank}, got ({i},{j},{k})"
        )));
    }
    let mut out = ModuleElement::zero(rank, Case::Free);
    let terms = [(i, (j, k), 1), (j, (i, k), -1), (k, (i, j), 1)];
    for (t, (a, b), sign) in terms {
        let bra = braces(rank, a, b, h)?;
        let moved = act(&LaurentPoly::t_minus_one(rank, t), &bra)?;
        out.add_scaled(&moved, sign);
    }
    Ok(out)
}

/// The projection `[F_n, F_n]^ab -> [F(x_2..x_n), F(x_2..x_n)]^ab`, relabelled to rank `n - 1`.
pub fn filtration_project(m: &ModuleElement) -> Result<ModuleElement> {
    if m.case != Case::Free {
        return Err(Error::InvalidArgument(
            "filtration projection is defined on the free case".into(),
        ));
    }
    if m.rank < 2 {
        return Err(Error::RankMismatch(format!(
            "filtration projection needs rank >= 2, got {}",
            m.rank
        )));
    }
    let mut out = ModuleElement::zero(m.rank - 1, Case::Free);
    for (s, c) in &m.terms {
        if s.i >= 2 {
            out.add_term(
                TSymbol {
                    i: s.i - 1,
                    j: s.j - 1,
                    k: s.k.clone(),
                },
                *c,
            );
        }
    }
    Ok(out)
}

/// `{r} = Σ_i C[2i-1, 2i](0, ..., 0)` in `[F_{2g}, F_{2g}]^ab`.
pub fn relator_class(genus: usize) -> Result<ModuleElement> {
    if genus == 0 {
        return Err(Error::InvalidGenus(genus));
    }
    let rank = 2 * genus;
    let mut m = ModuleElement::zero(rank, Case::Free);
    for t in 1..=genus {
        m.add_term(TSymbol::bare(rank, 2 * t - 1, 2 * t)?, 1);
    }
    Ok(m)
}

/// The surjection `[F_{2g}, F_{2g}]^ab -> [π, π]^ab`.
pub fn surface_quotient(m: &ModuleElement) -> Result<ModuleElement> {
    if m.case != Case::Free || !m.rank.is_multiple_of(2) {
        return Err(Error::RankMismatch(format!(
            "surface quotient needs a free element of even rank, got {:?} rank {}",
            m.case, m.rank
        )));
    }
    let p = SurfacePresentation::new(m.rank / 2)?;
    let mut out = ModuleElement::zero(m.rank, Case::Surface);
    for (s, c) in &m.terms {
        if s.i == 1 && s.j == 2 {
            out.add_scaled(&abelianize_surface(&p, &s.expand())?, *c);
        } else {
            out.add_term(s.clone(), *c);
        }
    }
    Ok(out)
}
