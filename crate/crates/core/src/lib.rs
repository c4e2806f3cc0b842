//! Free bases of commutator subgroups of free groups and closed surface groups.

pub mod error;
pub mod homology;
pub mod laurent;
pub mod module;
pub mod rewrite;
pub mod sample;
pub mod surface;
pub mod surface_rewrite;
pub mod word;

pub use error::{Error, Result};
pub use homology::{ChainComplex, HomologyResult, IntegerMatrix};
pub use laurent::LaurentPoly;
pub use module::{Case, FoxVector, ModuleElement};
pub use rewrite::{expand, expand_symbol, free_basis_enumerate, rewrite, BasisWord, Sign, TSymbol};
pub use surface::SurfacePresentation;
pub use surface_rewrite::{rewrite_surface, SurfaceBasisWord};
pub use word::{AbelianVector, Alphabet, Run, Word};
