//! Banded binomial Toeplitz matrices `T_{n,m,k}` with entry
//! `(i, j) = C(n, k + j - i)`, and their identification with the matrix of
//! `×(x+y)^n` on a two-variable monomial complete intersection.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{GeneralMonomialIdeal, MonomialQuotient};
use crate::lefschetz::{multiplication_matrix, LinearForm};
use crate::linalg::{decimal, decimal_matrix, IntMatrix};
use crate::monomial::{binomial, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToeplitzSpec {
    pub n: u32,
    pub m: usize,
    pub k: i64,
}

/// How `C(n, i)` is read outside `0 < i <= n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BinomialConvention {
    /// `C(n, 0) = 1`, zero for `i < 0` or `i > n`.
    #[default]
    Standard,
    /// Zero for `i <= 0` or `i > n`, so `C(n, 0) = 0`.
    Verbatim,
}

impl BinomialConvention {
    fn choose(self, n: u32, i: i64) -> u64 {
        match self {
            BinomialConvention::Verbatim if i <= 0 => 0,
            _ => binomial(n as i64, i),
        }
    }
}

pub fn toeplitz_matrix(spec: ToeplitzSpec, conv: BinomialConvention) -> Result<IntMatrix> {
    if spec.m == 0 {
        return Err(Error::InvalidArgument("Toeplitz size m must be at least 1".into()));
    }
    let mut t = IntMatrix::zeros(spec.m, spec.m);
    for i in 0..spec.m {
        for j in 0..spec.m {
            let v = conv.choose(spec.n, spec.k + j as i64 - i as i64);
            if v != 0 {
                t.set(i, j, BigInt::from(v));
            }
        }
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToeplitzReport {
    pub spec: ToeplitzSpec,
    pub convention: BinomialConvention,
    #[serde(with = "decimal_matrix")]
    pub matrix: Vec<Vec<BigInt>>,
    #[serde(with = "decimal")]
    pub determinant: BigInt,
    pub invertible: bool,
}

pub fn toeplitz_invertible(spec: ToeplitzSpec, conv: BinomialConvention) -> Result<ToeplitzReport> {
    let t = toeplitz_matrix(spec, conv)?;
    let determinant = t.determinant()?;
    Ok(ToeplitzReport {
        spec,
        convention: conv,
        matrix: t.to_rows(),
        invertible: determinant != BigInt::from(0),
        determinant,
    })
}

/// `(x^{m+n-k}, y^{m+k})` in `K[x, y]`. Its degree `m-1` and `m+n-1`
/// pieces both have dimension `m`.
pub fn two_var_ideal(spec: ToeplitzSpec) -> GeneralMonomialIdeal {
    let (n, m, k) = (spec.n as i64, spec.m as i64, spec.k);
    GeneralMonomialIdeal::new(
        2,
        vec![
            Monomial::new(vec![(m + n - k) as u32, 0]),
            Monomial::new(vec![0, (m + k) as u32]),
        ],
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossOracle {
    pub spec: ToeplitzSpec,
    pub equal: bool,
    #[serde(with = "decimal_matrix")]
    pub toeplitz: Vec<Vec<BigInt>>,
    /// Transposed multiplication matrix, rows and columns reordered to the
    /// bases `x^{m-i} y^{i-1}` and `x^{m+n-k-j} y^{k+j-1}`.
    #[serde(with = "decimal_matrix")]
    pub multiplication: Vec<Vec<BigInt>>,
}

/// Compares `T_{n,m,k}` against `×(x+y)^n : (S/J)_{m-1} → (S/J)_{m+n-1}`
/// for `J = (x^{m+n-k}, y^{m+k})`, source basis `x^{m-i} y^{i-1}` indexing
/// rows and target basis `x^{m+n-k-j} y^{k+j-1}` indexing columns.
pub fn two_var_cross_oracle(spec: ToeplitzSpec, conv: BinomialConvention) -> Result<CrossOracle> {
    if spec.k < 0 || spec.k > spec.n as i64 {
        return Err(Error::InvalidArgument(format!(
            "cross-oracle needs 0 <= k <= n, got k = {}",
            spec.k
        )));
    }
    let t = toeplitz_matrix(spec, conv)?;
    let (n, m, k) = (spec.n as i64, spec.m as i64, spec.k);
    let ideal = two_var_ideal(spec);
    let src_basis = ideal.standard_monomials((m - 1) as u32);
    let tgt_basis = ideal.standard_monomials((m + n - 1) as u32);
    let mult = multiplication_matrix(&ideal, (m - 1) as u32, spec.n, &LinearForm::canonical(2));

    let paper_src: Vec<Monomial> = (1..=m)
        .map(|i| Monomial::new(vec![(m - i) as u32, (i - 1) as u32]))
        .collect();
    let paper_tgt: Vec<Monomial> = (1..=m)
        .map(|j| Monomial::new(vec![(m + n - k - j) as u32, (k + j - 1) as u32]))
        .collect();
    let locate = |basis: &[Monomial], wanted: &[Monomial]| -> Option<Vec<usize>> {
        wanted.iter().map(|w| basis.iter().position(|b| b == w)).collect()
    };
    let perms = locate(&tgt_basis, &paper_tgt).zip(locate(&src_basis, &paper_src));
    let (equal, multiplication) = match perms {
        Some((rows, cols)) if tgt_basis.len() == spec.m && src_basis.len() == spec.m => {
            let p = mult.permuted(&rows, &cols).transpose();
            (p == t, p.to_rows())
        }
        _ => (false, mult.to_rows()),
    };
    Ok(CrossOracle {
        spec,
        equal,
        toeplitz: t.to_rows(),
        multiplication,
    })
}
