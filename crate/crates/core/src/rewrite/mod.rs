//! The free rewriter: basis symbols, the ladder decomposition of `K ∩ [F, F]`, and the
//! recursive rewrite of `[F_n, F_n]`.

pub mod free;
pub mod ladder;
pub mod symbol;

pub use free::{normalize_conjugator, rewrite, rewrite_sub};
pub use ladder::{express_zero_sum, rs_scan_k, SSymbol, ZWord};
pub use symbol::{expand, expand_symbol, exponent_box, free_basis_enumerate, BasisWord, Sign, TSymbol};
