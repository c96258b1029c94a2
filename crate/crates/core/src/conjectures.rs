//! Instance checkers for the containment `m^d ⊆ I + (l_p, ..., l_n)` (plain
//! and squared), the power-of-`ℓ` conjecture, and a brute-force expansion
//! oracle used to re-verify any counterexample candidate.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::standard_monomials;
use crate::ideal::{MonomialIdeal, MonomialQuotient};
use crate::lefschetz::{power_map_check, LefschetzReport, LinearForm};
use crate::linalg::IntMatrix;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::segments::conjecture39_exponent;

/// Linear forms for a containment check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EhuForms {
    Explicit { forms: Vec<LinearForm> },
    Random { seed: u64, trials: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhuTrial {
    pub forms: Vec<LinearForm>,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EhuStatus {
    Contained,
    NotContained,
    /// Every random trial failed. Evidence only, not a proof.
    FailsGenerically,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhuReport {
    pub p: usize,
    pub squared: bool,
    pub status: EhuStatus,
    /// Some trial certified the containment.
    pub holds: bool,
    /// Every trial certified the containment.
    pub holds_all: bool,
    pub trials: Vec<EhuTrial>,
}

fn forms_independent(forms: &[LinearForm]) -> bool {
    let rows: Vec<Vec<i64>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    IntMatrix::from_rows(&rows).rank() == forms.len()
}

/// Whether `S_d` is spanned by `I_d` together with the degree-`d` part of
/// `(forms)` or `(forms)^2`. Computed modulo `I`: the products are projected
/// onto the standard monomials of degree `d` and must span them.
pub fn containment_holds(ideal: &MonomialIdeal, forms: &[LinearForm], squared: bool) -> bool {
    let n = ideal.n();
    let d = ideal.d();
    let rows = standard_monomials(ideal, d);
    if rows.is_empty() {
        return true;
    }
    let index: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let factors: Vec<BTreeMap<Vec<u32>, BigInt>> = if squared {
        let mut out = Vec::new();
        for a in 0..forms.len() {
            for b in a..forms.len() {
                let mut q = BTreeMap::new();
                for (i, &ci) in forms[a].coeffs().iter().enumerate() {
                    for (k, &ck) in forms[b].coeffs().iter().enumerate() {
                        if ci != 0 && ck != 0 {
                            let m = Monomial::var(n, i).mul_var(k).exponents().to_vec();
                            *q.entry(m).or_insert_with(BigInt::zero) += BigInt::from(ci) * BigInt::from(ck);
                        }
                    }
                }
                out.push(q);
            }
        }
        out
    } else {
        forms
            .iter()
            .map(|f| {
                f.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (Monomial::var(n, i).exponents().to_vec(), BigInt::from(c)))
                    .collect()
            })
            .collect()
    };
    let fdeg = if squared { 2 } else { 1 };
    if d < fdeg {
        return false;
    }

    let multipliers = monomials_of_degree(n, d - fdeg, None);
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    for f in &factors {
        for u in &multipliers {
            let mut col = vec![BigInt::zero(); rows.len()];
            let mut any = false;
            for (m, c) in f {
                if let Some(&r) = index.get(&u.mul(&Monomial::new(m.clone()))) {
                    col[r] += c;
                    any = true;
                }
            }
            if any && col.iter().any(|x| !x.is_zero()) {
                columns.push(col);
            }
        }
    }
    if columns.len() < rows.len() {
        return false;
    }
    let mut m = IntMatrix::zeros(rows.len(), columns.len());
    for (c, col) in columns.into_iter().enumerate() {
        for (r, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                m.set(r, c, v);
            }
        }
    }
    m.rank() == rows.len()
}

/// `m^d ⊆ I + (l_p, ..., l_n)` (or the square of that ideal) for the given
/// `n - p + 1` forms, or for seeded random forms over several trials.
pub fn ehu_containment(ideal: &MonomialIdeal, p: usize, forms: &EhuForms, squared: bool) -> Result<EhuReport> {
    ideal.require_artinian()?;
    let n = ideal.n();
    if !(1..=n).contains(&p) {
        return Err(Error::InvalidArgument(format!("p must lie in [1, {n}], got {p}")));
    }
    let count = n - p + 1;
    let mut trials = Vec::new();
    let random = match forms {
        EhuForms::Explicit { forms } => {
            if forms.len() != count {
                return Err(Error::InvalidArgument(format!(
                    "p = {p} needs {count} linear forms, got {}",
                    forms.len()
                )));
            }
            for f in forms {
                f.check_arity(n)?;
            }
            if !forms_independent(forms) {
                return Err(Error::DependentForms);
            }
            trials.push(EhuTrial {
                forms: forms.clone(),
                holds: containment_holds(ideal, forms, squared),
            });
            false
        }
        EhuForms::Random { seed, trials: k } => {
            if *k == 0 {
                return Err(Error::InvalidArgument("random mode needs at least one trial".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*k {
                let forms = loop {
                    let fs: Vec<LinearForm> = (0..count).map(|_| LinearForm::random(n, &mut rng)).collect();
                    if forms_independent(&fs) {
                        break fs;
                    }
                };
                let holds = containment_holds(ideal, &forms, squared);
                trials.push(EhuTrial { forms, holds });
            }
            true
        }
    };
    let holds = trials.iter().any(|t| t.holds);
    let holds_all = trials.iter().all(|t| t.holds);
    let status = match (holds, random) {
        (true, _) => EhuStatus::Contained,
        (false, false) => EhuStatus::NotContained,
        (false, true) => EhuStatus::FailsGenerically,
    };
    Ok(EhuReport {
        p,
        squared,
        status,
        holds,
        holds_all,
        trials,
    })
}

/// Outcome of the power-of-`ℓ` conjecture on one ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conj39Record {
    /// Componentwise-minimal exponent; `None` when `(S/I)_d = 0`.
    pub exponent: Option<Vec<u32>>,
    pub a: u32,
    /// `a ≥ 1`, so the statement says something.
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<LefschetzReport>,
    /// Failing degrees, after confirmation by the expansion oracle.
    pub counterexample: bool,
}

/// Runs `×(x_1 + ... + x_n)^a` with `a = Σ a_i` for the componentwise-minimal
/// exponent `(a_i)` of the degree-`d` standard monomials. A failing degree
/// only counts once the expansion oracle reproduces it.
pub fn conjecture39_check(ideal: &MonomialIdeal) -> Result<Conj39Record> {
    ideal.require_artinian()?;
    let exponent = match conjecture39_exponent(ideal) {
        Ok(e) => Some(e),
        Err(Error::EmptyDegree) => None,
        Err(e) => return Err(e),
    };
    let a: u32 = exponent.iter().flatten().sum();
    if a == 0 {
        return Ok(Conj39Record {
            exponent,
            a,
            applicable: false,
            report: None,
            counterexample: false,
        });
    }
    let form = LinearForm::canonical(ideal.n());
    let report = power_map_check(ideal, a, &form)?;
    for &(j, t) in &report.failures {
        let cell = report.cell(j, t).expect("failure has a cell");
        let oracle = expansion_matrix(ideal, j, t, &form);
        let rank = oracle.rank_rational();
        if rank != cell.rank || (oracle.rows(), oracle.cols()) != (cell.tgt, cell.src) {
            return Err(Error::Internal(format!(
                "expansion oracle disagrees in degree {j} for power {t}: rank {rank} vs {}",
                cell.rank
            )));
        }
    }
    Ok(Conj39Record {
        exponent,
        a,
        applicable: true,
        counterexample: !report.holds(),
        report: Some(report),
    })
}

/// `×ℓ^t` from `(S/I)_j` to `(S/I)_{j+t}` by expanding `ℓ^t` one factor at a
/// time and multiplying each source monomial, then dropping terms in `I`.
/// Shares nothing with the multinomial formula behind the main builder.
pub fn expansion_matrix(ideal: &MonomialIdeal, j: u32, t: u32, form: &LinearForm) -> IntMatrix {
    let n = ideal.n();
    let mut power: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    power.insert(vec![0; n], BigInt::one());
    for _ in 0..t {
        let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e, c) in &power {
            for (i, &ci) in form.coeffs().iter().enumerate() {
                if ci == 0 {
                    continue;
                }
                let mut f = e.clone();
                f[i] += 1;
                *next.entry(f).or_insert_with(BigInt::zero) += c * BigInt::from(ci);
            }
        }
        power = next;
    }
    let src = standard_monomials(ideal, j);
    let tgt = standard_monomials(ideal, j + t);
    let row_of: HashMap<&[u32], usize> = tgt.iter().enumerate().map(|(i, m)| (m.exponents(), i)).collect();
    let mut m = IntMatrix::zeros(tgt.len(), src.len());
    for (col, u) in src.iter().enumerate() {
        for (e, c) in &power {
            let v: Vec<u32> = u.exponents().iter().zip(e).map(|(a, b)| a + b).collect();
            let mono = Monomial::new(v);
            if ideal.contains(&mono) {
                continue;
            }
            if let Some(&row) = row_of.get(mono.exponents()) {
                let entry = m.get(row, col) + c;
                m.set(row, col, entry);
            }
        }
    }
    m
}
