//! The real cyclotomic `Z_2`-tower `B_n = Q(X_n)`, `X_n = 2cos(pi / 2^(n+1))`.
//!
//! Elements of `Z[X_n]` live in the power basis `1, X_n, .., X_n^(2^n - 1)`
//! and are reduced eagerly modulo the minimal polynomial `mu_n`. The tower
//! relation `X_n^2 = 2 + X_{n-1}` drives everything: `mu_0(x) = x`,
//! `mu_n(x) = mu_{n-1}(x^2 - 2)`, the embedding `Z[X_{n-1}] -> Z[X_n]`, the
//! split `x = a + X_n b` and the relative norm `a^2 - (2 + X_{n-1}) b^2`.

mod elem;
mod real;
mod triple;

pub use elem::{cos_poly, eta, minimal_poly, TowerElem};
pub use real::{embedding_value, numeric_embed, Fixed};
pub use triple::{tower_triple, verify_tower, EmbeddingCheck, TowerReport, TowerTriple};

/// Default fractional precision for the numeric embeddings.
pub const DEFAULT_PRECISION_BITS: u32 = 256;
/// Default number of unrolled convergents in the numeric check.
pub const DEFAULT_ITERATIONS: usize = 200;
