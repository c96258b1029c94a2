//! Exact computations on artinian monomial algebras `S/I`, `S = Q[x_1..x_n]`,
//! with `I` generated in a single degree: Hilbert functions, weak and strong
//! Lefschetz verdicts with kernel witnesses, graded Betti tables, binomial
//! Toeplitz matrices, line-segment hypotheses, and a seeded scan harness for
//! theorem-consistency and conjecture checks.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod conjectures;
pub mod error;
pub mod hilbert;
pub mod ideal;
pub mod lefschetz;
pub mod linalg;
pub mod monomial;
pub mod named;
pub mod resolution;
pub mod scan;
pub mod segments;
pub mod toeplitz;

pub use error::{Error, Result};
pub use ideal::{IdealJson, MonomialIdeal, MonomialQuotient};
pub use lefschetz::{LefschetzReport, LinearForm};
pub use linalg::IntMatrix;
pub use monomial::Monomial;
