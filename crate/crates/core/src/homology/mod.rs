//! Integer chain complexes, Smith normal form, and the Koszul-type complexes computing
//! `H_k(Z^n; [F_n, F_n]^ab)` and `H_k(Z^{2g}; [π, π]^ab)`.

pub mod koszul;
pub mod matrix;
pub mod snf;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::module::{act_monomial, braces, relator_class, ModuleElement};
use crate::rewrite::symbol::exponent_box;

pub use koszul::{exterior_basis, koszul_differential, LaurentMatrix};
pub use matrix::IntegerMatrix;
pub use snf::{
    rank, smith_normal_form, smith_normal_form_dense, smith_normal_form_sparse,
    smith_with_transforms, SmithDecomposition, SmithForm,
};

/// `C_0 <- C_1 <- ... <- C_m` with `d_k : C_k -> C_{k-1}`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    dims: Vec<usize>,
    diffs: Vec<IntegerMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyResult {
    pub fn to_json(&self) -> String {
        let torsion: Vec<String> = self.torsion.iter().map(BigInt::to_string).collect();
        format!("{{\"betti\":{},\"torsion\":[{}]}}", self.betti, torsion.join(","))
    }
}

impl ChainComplex {
    /// `diffs[k - 1]` is `d_k`, a `dims[k-1] x dims[k]` matrix.
    pub fn new(dims: Vec<usize>, diffs: Vec<IntegerMatrix>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::InvalidArgument(format!(
                "{} chain groups need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != dims[k] || d.cols() != dims[k + 1] {
                return Err(Error::RankMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        for k in 1..diffs.len() {
            let dd = diffs[k - 1].try_mul(&diffs[k])?;
            assert!(dd.is_zero(), "d_{} d_{} != 0", k, k + 1);
        }
        Ok(ChainComplex { dims, diffs })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn differential(&self, k: usize) -> Option<&IntegerMatrix> {
        k.checked_sub(1).and_then(|i| self.diffs.get(i))
    }

    /// `H_k = ker d_k / im d_{k+1}`.
    pub fn homology_at(&self, k: usize) -> Result<HomologyResult> {
        if k > self.top() {
            return Err(Error::IndexOutOfRange(format!(
                "H_{k} of a complex with top degree {}",
                self.top()
            )));
        }
        let rank_out = self.differential(k).map_or(0, rank);
        let incoming = self.differential(k + 1).map(smith_normal_form);
        let rank_in = incoming.as_ref().map_or(0, SmithForm::rank);
        let torsion = incoming.map(|f| f.torsion()).unwrap_or_default();
        Ok(HomologyResult {
            betti: self.dims[k] - rank_out - rank_in,
            torsion,
        })
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The Laurent-level truncated Koszul resolution `Λ^{k+2} R^n`, `k = 0..=top`.
fn free_case_laurent(n: usize, top: usize) -> Vec<LaurentMatrix> {
    (1..=top).map(|k| koszul_differential(n, k + 2)).collect()
}

fn check_and_specialize(laurent: &[LaurentMatrix]) -> Result<Vec<IntegerMatrix>> {
    for k in 1..laurent.len() {
        let dd = laurent[k - 1].try_mul(&laurent[k])?;
        assert!(dd.is_zero(), "Laurent d_{} d_{} != 0", k, k + 1);
    }
    Ok(laurent.iter().map(LaurentMatrix::specialize).collect())
}

/// The resolution of `[F_n, F_n]^ab` tensored down to `Z`, with chain groups up to degree
/// `max_k + 1` so that `H_0..H_{max_k}` are exact.
pub fn free_case_complex(n: usize, max_k: usize) -> Result<ChainComplex> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("free case needs n >= 2, got {n}")));
    }
    let top = max_k + 1;
    let diffs = check_and_specialize(&free_case_laurent(n, top))?;
    for d in &diffs {
        assert!(d.is_zero(), "specialized Koszul differential is nonzero");
    }
    let dims = (0..=top).map(|k| binomial(n, k + 2)).collect();
    ChainComplex::new(dims, diffs)
}

/// Coordinates of `Σ_i e_{2i-1} ∧ e_{2i}` in the basis [`exterior_basis`]`(2g, 2)`.
pub fn symplectic_form(genus: usize) -> Vec<i64> {
    exterior_basis(2 * genus, 2)
        .iter()
        .map(|s| i64::from(s[0] % 2 == 1 && s[1] == s[0] + 1))
        .collect()
}

/// Image of a vector in `Λ^2 Z^n` under `e_i ∧ e_j -> {x_i, x_j}^0`.
pub fn wedge_to_module(n: usize, coords: &[i64]) -> Result<ModuleElement> {
    let basis = exterior_basis(n, 2);
    let mut m = ModuleElement::zero(n, crate::module::Case::Free);
    for (s, c) in basis.iter().zip(coords) {
        if *c != 0 {
            m.add_scaled(&braces(n, s[0], s[1], &vec![0; n])?, *c);
        }
    }
    Ok(m)
}

/// The mapping cone of `R -> Λ^• R^{2g}`, `1 -> λ`, tensored down to `Z`.
pub fn surface_case_complex(genus: usize, max_k: usize) -> Result<ChainComplex> {
    if genus == 0 {
        return Err(Error::InvalidGenus(genus));
    }
    let n = 2 * genus;
    let lambda = symplectic_form(genus);
    assert_eq!(
        wedge_to_module(n, &lambda)?,
        relator_class(genus)?,
        "λ must lift the relator class"
    );

    let top = max_k + 1;
    let mut laurent = free_case_laurent(n, top);
    let mut lambda_col = LaurentMatrix::zeros(n, lambda.len(), 1);
    for (r, c) in lambda.iter().enumerate() {
        if *c != 0 {
            lambda_col.set(r, 0, crate::laurent::LaurentPoly::monomial(vec![0; n], *c));
        }
    }
    laurent[0] = laurent[0].augment_cols(&lambda_col);
    if top >= 2 {
        let cols = laurent[1].cols();
        laurent[1] = laurent[1].stack(&LaurentMatrix::zeros(n, 1, cols));
    }
    let diffs = check_and_specialize(&laurent)?;
    let dims = (0..=top)
        .map(|k| binomial(n, k + 2) + usize::from(k == 1))
        .collect();
    ChainComplex::new(dims, diffs)
}

/// Whether `{act(t^h, {r}) : h ∈ [-bound, bound]^{2g}}` is linearly independent.
pub fn injectivity_truncation_check(genus: usize, bound: i64) -> Result<bool> {
    if bound < 0 {
        return Err(Error::InvalidArgument(format!("box bound must be >= 0, got {bound}")));
    }
    let rc = relator_class(genus)?;
    let boxed = exponent_box(2 * genus, bound);
    let columns: Vec<ModuleElement> = boxed
        .iter()
        .map(|h| act_monomial(h, &rc))
        .collect::<Result<_>>()?;
    Ok(column_rank(&columns) == columns.len())
}

/// Rank of the matrix whose columns are the given elements in symbol coordinates.
pub fn column_rank(columns: &[ModuleElement]) -> usize {
    let mut rows = std::collections::HashMap::new();
    let mut entries = Vec::new();
    for (c, m) in columns.iter().enumerate() {
        for (s, v) in m.terms() {
            let next = rows.len();
            let r = *rows.entry(s.clone()).or_insert(next);
            entries.push((r, c, BigInt::from(v)));
        }
    }
    let form = smith_normal_form_sparse(rows.len(), columns.len(), entries);
    debug_assert!(form.divisors.iter().all(|d| !d.is_zero()));
    form.rank()
}
