//! Multiplication and differentiation matrices on `S/I` and its inverse
//! system, weak/strong Lefschetz verdicts, and kernel witnesses.
//!
//! Bases are the standard monomials in decreasing graded-lex order. Matrices
//! have rows indexed by the target basis and columns by the source basis.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::hilbert_function;
use crate::ideal::{MonomialIdeal, MonomialQuotient};
use crate::linalg::{decimal, normalize_primitive, IntMatrix};
use crate::monomial::Monomial;

/// Upper end of the coefficient range for random linear forms.
pub const RANDOM_COEFF_MAX: i64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::ZeroForm);
        }
        Ok(Self { coeffs })
    }

    /// `x_1 + ... + x_n`.
    pub fn canonical(n: usize) -> Self {
        Self { coeffs: vec![1; n] }
    }

    /// `x_i + x_j` (zero-based indices).
    pub fn pair(n: usize, i: usize, j: usize) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[i] = 1;
        coeffs[j] = 1;
        Self { coeffs }
    }

    /// Coefficients drawn uniformly from `[1, RANDOM_COEFF_MAX]`.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        Self {
            coeffs: (0..n).map(|_| rng.gen_range(1..=RANDOM_COEFF_MAX)).collect(),
        }
    }

    pub fn parse(s: &str, n: usize) -> Result<Self> {
        Self::new(crate::ideal::parse_linear_coeffs(s, n)?)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub(crate) fn check_arity(&self, n: usize) -> Result<()> {
        if self.coeffs.len() != n {
            return Err(Error::FormArity {
                expected: n,
                found: self.coeffs.len(),
            });
        }
        Ok(())
    }
}

fn index_of(basis: &[Monomial]) -> HashMap<&Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

fn factorials(t: u32) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for k in 1..=t {
        let next = &f[k as usize - 1] * BigInt::from(k);
        f.push(next);
    }
    f
}

/// Matrix of `x ↦ ℓ^t · x` from `(S/J)_j` to `(S/J)_{j+t}` in the
/// standard-monomial bases. Entry `(v, u)` is the multinomial
/// `t! / ∏ (v-u)_i!` times `∏ c_i^{(v-u)_i}` when `u | v`, else zero.
pub fn multiplication_matrix<Q: MonomialQuotient + ?Sized>(
    q: &Q,
    j: u32,
    t: u32,
    form: &LinearForm,
) -> IntMatrix {
    let src = q.standard_monomials(j);
    let tgt = q.standard_monomials(j + t);
    multiplication_matrix_on(&src, &tgt, t, form)
}

pub(crate) fn multiplication_matrix_on(
    src: &[Monomial],
    tgt: &[Monomial],
    t: u32,
    form: &LinearForm,
) -> IntMatrix {
    let fact = factorials(t);
    let powers: Vec<Vec<BigInt>> = form
        .coeffs
        .iter()
        .map(|&c| {
            let mut p = vec![BigInt::one()];
            for e in 1..=t as usize {
                let next = &p[e - 1] * BigInt::from(c);
                p.push(next);
            }
            p
        })
        .collect();
    let mut m = IntMatrix::zeros(tgt.len(), src.len());
    for (r, v) in tgt.iter().enumerate() {
        for (c, u) in src.iter().enumerate() {
            let Some(delta) = v.div(u) else { continue };
            let mut entry = fact[t as usize].clone();
            for (i, &e) in delta.exponents().iter().enumerate() {
                if e > 0 {
                    entry /= &fact[e as usize];
                    entry *= &powers[i][e as usize];
                }
            }
            if !entry.is_zero() {
                m.set(r, c, entry);
            }
        }
    }
    m
}

/// Matrix of the contraction `F ↦ ℓ ∘ F` from the degree-`k` piece of the
/// inverse system to degree `k-1`. Entry `(u', u)` is `c_i * u_i` when
/// `u = u' * y_i`.
pub fn differentiation_matrix<Q: MonomialQuotient + ?Sized>(q: &Q, k: u32, form: &LinearForm) -> IntMatrix {
    assert!(k >= 1, "differentiation needs k >= 1");
    let src = q.standard_monomials(k);
    let tgt = q.standard_monomials(k - 1);
    let m = differentiation_matrix_on(&src, &tgt, form);
    #[cfg(debug_assertions)]
    {
        let dual = multiplication_matrix_on(&tgt, &src, 1, form);
        debug_assert_eq!(m.rank(), dual.rank(), "duality of ∘ℓ and ×ℓ in degree {k}");
    }
    m
}

fn differentiation_matrix_on(src: &[Monomial], tgt: &[Monomial], form: &LinearForm) -> IntMatrix {
    let row = index_of(tgt);
    let mut m = IntMatrix::zeros(tgt.len(), src.len());
    for (c, u) in src.iter().enumerate() {
        for (i, &coeff) in form.coeffs.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            let Some(lower) = u.div_var(i) else { continue };
            if let Some(&r) = row.get(&lower) {
                let v = BigInt::from(coeff) * BigInt::from(u.exponent(i));
                let cur = m.get(r, c) + v;
                m.set(r, c, cur);
            }
        }
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }
}

/// One map `×ℓ^t : (S/I)_j → (S/I)_{j+t}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub j: u32,
    pub t: u32,
    pub src: usize,
    pub tgt: usize,
    pub rank: usize,
    pub maximal: bool,
}

impl Cell {
    pub fn surjective(&self) -> bool {
        self.rank == self.tgt
    }

    pub fn injective(&self) -> bool {
        self.rank == self.src
    }
}

fn cell(ideal: &MonomialIdeal, j: u32, t: u32, form: &LinearForm) -> Cell {
    let m = multiplication_matrix(ideal, j, t, form);
    let rank = m.rank();
    Cell {
        j,
        t,
        src: m.cols(),
        tgt: m.rows(),
        rank,
        maximal: rank == m.rows().min(m.cols()),
    }
}

/// Element of the inverse system in one degree, with integer coefficients
/// on dual monomials listed in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelForm {
    pub degree: u32,
    pub terms: Vec<KernelTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelTerm {
    pub monomial: Monomial,
    #[serde(with = "decimal")]
    pub coeff: BigInt,
}

impl KernelForm {
    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.monomial)
    }

    /// Re-checks `ℓ ∘ F = 0` with exact arithmetic.
    pub fn is_annihilated_by(&self, ideal: &MonomialIdeal, form: &LinearForm) -> bool {
        if self.degree == 0 || self.terms.is_empty() {
            return false;
        }
        let basis = ideal.standard_monomials(self.degree);
        let idx = index_of(&basis);
        let mut v = vec![BigInt::zero(); basis.len()];
        for t in &self.terms {
            match idx.get(&t.monomial) {
                Some(&i) => v[i] = t.coeff.clone(),
                None => return false,
            }
        }
        if v.iter().all(Zero::is_zero) {
            return false;
        }
        let tgt = ideal.standard_monomials(self.degree - 1);
        let d = differentiation_matrix_on(&basis, &tgt, form);
        d.mul_vec(&v).iter().all(Zero::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub verdict: Verdict,
    /// Linear form the cells were computed with.
    pub form: LinearForm,
    pub cells: Vec<Cell>,
    /// `(j, t)` of every non-maximal cell.
    pub failures: Vec<(u32, u32)>,
    pub witnesses: Vec<KernelForm>,
    /// Number of random forms tried before this report was chosen.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
}

impl LefschetzReport {
    fn from_cells(form: LinearForm, cells: Vec<Cell>) -> Self {
        let failures: Vec<(u32, u32)> = cells.iter().filter(|c| !c.maximal).map(|c| (c.j, c.t)).collect();
        Self {
            verdict: if failures.is_empty() {
                Verdict::Holds
            } else {
                Verdict::Fails
            },
            form,
            cells,
            failures,
            witnesses: Vec::new(),
            trials: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }

    pub fn failure_degrees(&self) -> Vec<u32> {
        self.failures.iter().map(|&(j, _)| j).collect()
    }

    pub fn cell(&self, j: u32, t: u32) -> Option<&Cell> {
        self.cells.iter().find(|c| c.j == j && c.t == t)
    }
}

/// `×ℓ` in every degree `0 ≤ j ≤ top`, for an arbitrary linear form.
pub fn wlp_check_with(ideal: &MonomialIdeal, form: &LinearForm) -> Result<LefschetzReport> {
    ideal.require_artinian()?;
    form.check_arity(ideal.n())?;
    let hf = hilbert_function(ideal)?;
    let cells: Vec<Cell> = (0..=hf.top()).map(|j| cell(ideal, j, 1, form)).collect();
    check_surjectivity_propagates(&cells, ideal.d())?;
    Ok(LefschetzReport::from_cells(form.clone(), cells))
}

/// Weak Lefschetz check with `x_1 + ... + x_n`, plus a kernel witness for
/// each failing degree.
pub fn wlp_check(ideal: &MonomialIdeal) -> Result<LefschetzReport> {
    let mut report = wlp_check_with(ideal, &LinearForm::canonical(ideal.n()))?;
    for j in report.failure_degrees() {
        report.witnesses.push(wlp_failure_witness(ideal, j)?);
    }
    Ok(report)
}

/// Once `×ℓ` is onto `(S/I)_d`, it stays onto in every later degree.
fn check_surjectivity_propagates(cells: &[Cell], d: u32) -> Result<()> {
    let Some(first) = cells.iter().position(|c| c.j + 1 >= d && c.surjective()) else {
        return Ok(());
    };
    if let Some(bad) = cells[first..].iter().find(|c| !c.surjective()) {
        return Err(Error::Internal(format!(
            "×ℓ surjective from degree {} but not from degree {}",
            cells[first].j, bad.j
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SlpMode {
    Canonical,
    Random { seed: u64, trials: usize },
}

/// All `×ℓ^t` for `t ≥ 1` between nonzero graded pieces.
pub fn slp_check_with(ideal: &MonomialIdeal, form: &LinearForm) -> Result<LefschetzReport> {
    ideal.require_artinian()?;
    form.check_arity(ideal.n())?;
    let hf = hilbert_function(ideal)?;
    let top = hf.top();
    let mut cells = Vec::new();
    for t in 1..=top + 1 {
        for j in 0..=(top + 1 - t) {
            if hf.at(j as i64) == 0 || hf.at((j + t) as i64) == 0 {
                continue;
            }
            cells.push(cell(ideal, j, t, form));
        }
    }
    Ok(LefschetzReport::from_cells(form.clone(), cells))
}

pub fn slp_check(ideal: &MonomialIdeal, mode: SlpMode) -> Result<LefschetzReport> {
    match mode {
        SlpMode::Canonical => slp_check_with(ideal, &LinearForm::canonical(ideal.n())),
        SlpMode::Random { seed, trials } => {
            if trials == 0 {
                return Err(Error::InvalidArgument("random mode needs at least one trial".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<LefschetzReport> = None;
            for k in 1..=trials {
                let form = LinearForm::random(ideal.n(), &mut rng);
                let mut report = slp_check_with(ideal, &form)?;
                report.trials = Some(k);
                let better = best.as_ref().is_none_or(|b| report.failures.len() < b.failures.len());
                if better {
                    let done = report.holds();
                    best = Some(report);
                    if done {
                        break;
                    }
                }
            }
            Ok(best.expect("at least one trial"))
        }
    }
}

/// `×ℓ^t` alone, in every source degree `0 ≤ j ≤ top`.
pub fn power_map_check(ideal: &MonomialIdeal, t: u32, form: &LinearForm) -> Result<LefschetzReport> {
    if t == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    form.check_arity(ideal.n())?;
    let hf = hilbert_function(ideal)?;
    let cells = (0..=hf.top()).map(|j| cell(ideal, j, t, form)).collect();
    Ok(LefschetzReport::from_cells(form.clone(), cells))
}

/// A nonzero `F` in degree `j+1` of the inverse system with
/// `(x_1 + ... + x_n) ∘ F = 0`, certifying that `×(x_1 + ... + x_n)` is not
/// onto `(S/I)_{j+1}`. Coefficients are coprime with the first one positive.
pub fn wlp_failure_witness(ideal: &MonomialIdeal, j: u32) -> Result<KernelForm> {
    ideal.require_artinian()?;
    let form = LinearForm::canonical(ideal.n());
    let c = cell(ideal, j, 1, &form);
    if c.maximal {
        return Err(Error::NotAFailure(j));
    }
    let src = ideal.standard_monomials(j + 1);
    let tgt = ideal.standard_monomials(j);
    let d = differentiation_matrix_on(&src, &tgt, &form);
    let kernel = d.nullspace();
    let Some(first) = kernel.first() else {
        return Err(Error::NoWitness(j));
    };
    let coeffs = normalize_primitive(first.primitive());
    if !d.mul_vec(&coeffs).iter().all(Zero::is_zero) {
        return Err(Error::Internal("kernel vector not annihilated".into()));
    }
    let terms = src
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(monomial, coeff)| KernelTerm { monomial, coeff })
        .collect();
    Ok(KernelForm { degree: j + 1, terms })
}

/// A monomial of the support, a variable dividing it (one-based), and a
/// degree below its exponent that no support monomial attains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainViolation {
    pub monomial: Monomial,
    pub var: usize,
    pub missing_degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportChainReport {
    pub holds: bool,
    pub violations: Vec<ChainViolation>,
}

/// For every `m` in the support and every `y_i | m`, each degree
/// `0 ≤ e < deg_i(m)` must be attained as `deg_i` of some support monomial.
pub fn support_chain_violations(form: &KernelForm) -> Vec<ChainViolation> {
    let support: Vec<&Monomial> = form.support().collect();
    let mut out = Vec::new();
    for m in &support {
        for i in 0..m.nvars() {
            for e in 0..m.exponent(i) {
                if !support.iter().any(|s| s.exponent(i) == e) {
                    out.push(ChainViolation {
                        monomial: (*m).clone(),
                        var: i + 1,
                        missing_degree: e,
                    });
                }
            }
        }
    }
    out
}

pub fn check_support_chain(ideal: &MonomialIdeal, form: &KernelForm) -> Result<SupportChainReport> {
    if !form.is_annihilated_by(ideal, &LinearForm::canonical(ideal.n())) {
        return Err(Error::UnverifiedForm);
    }
    let violations = support_chain_violations(form);
    Ok(SupportChainReport {
        holds: violations.is_empty(),
        violations,
    })
}
