//! Exact computer algebra for Rota-Baxter algebras.
//!
//! The crate provides:
//! - [`ncpoly`]: noncommutative polynomials over `x1, x2, ...` with exact
//!   rational coefficients and the lexicographic leading-monomial machinery;
//! - [`seq_rba`]: the standard Rota-Baxter algebra of truncated polynomial
//!   sequences with the shifted partial-sum operator, plus commutative and
//!   weight-zero carriers;
//! - [`rb_core`]: the abstract Rota-Baxter contract, the derived double,
//!   pre-Lie and dendriform products, Spitzer iterates, truncated formal
//!   power series, Atkinson factorization and Magnus coefficients;
//! - [`free_rba`]: the word problem — expression trees over one generator and
//!   an operator symbol, rewriting to the elementary-monomial basis, and the
//!   universal evaluation morphism;
//! - [`ncqsym`]: quasi-symmetric functions over noncommuting variables;
//! - [`hopf_dynkin`]: the Spitzer and double Spitzer Hopf algebras with
//!   coproduct, antipode, convolution, Dynkin operator and its inverse;
//! - [`identities`]: cut permutations and the classical and noncommutative
//!   Bohnenblust-Spitzer identity checks.

pub mod free_rba;
pub mod hopf_dynkin;
pub mod identities;
pub mod linalg;
pub mod ncpoly;
pub mod ncqsym;
pub mod rational;
pub mod rb_core;
pub mod seq_rba;

pub use ncpoly::{lex_less, NcPoly, Word};
pub use rational::Rational;

/// Deterministic RNG used by the randomized checks and tests.
pub fn test_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
