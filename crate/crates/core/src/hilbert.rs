//! Quotient bases, Hilbert functions, socles and support statistics of
//! `S/I` for an artinian monomial ideal `I`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ideal::{MonomialIdeal, MonomialQuotient};
use crate::monomial::{binomial, Monomial};

/// Monomial basis of `(S/I)_k`, which is also the monomial basis of the
/// inverse system in degree `k`.
pub fn standard_monomials(ideal: &MonomialIdeal, k: u32) -> Vec<Monomial> {
    ideal.standard_monomials(k)
}

/// `H(0), H(1), ..., H(top), 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertFunction {
    values: Vec<u64>,
}

impl HilbertFunction {
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Last degree with `H(k) != 0`; this is also `reg(S/I)`.
    pub fn top(&self) -> u32 {
        (self.values.len() - 2) as u32
    }

    /// `H(k)`, zero for negative or out-of-range `k`.
    pub fn at(&self, k: i64) -> u64 {
        if k < 0 {
            return 0;
        }
        self.values.get(k as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }
}

pub fn hilbert_function(ideal: &MonomialIdeal) -> Result<HilbertFunction> {
    ideal.require_artinian()?;
    let mut values = Vec::new();
    let mut k = 0;
    loop {
        let h = standard_monomials(ideal, k).len() as u64;
        values.push(h);
        if h == 0 {
            break;
        }
        k += 1;
    }
    Ok(HilbertFunction { values })
}

/// Monomial socle of `S/I`, keyed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleSet {
    pub by_degree: BTreeMap<u32, Vec<Monomial>>,
}

impl SocleSet {
    pub fn len(&self) -> usize {
        self.by_degree.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.by_degree.values().flatten()
    }
}

pub fn is_socle_monomial(ideal: &MonomialIdeal, m: &Monomial) -> bool {
    !ideal.contains(m) && (0..ideal.n()).all(|i| ideal.contains(&m.mul_var(i)))
}

pub fn socle(ideal: &MonomialIdeal) -> Result<SocleSet> {
    let hf = hilbert_function(ideal)?;
    let mut out = SocleSet::default();
    for k in 0..=hf.top() {
        let ms: Vec<Monomial> = standard_monomials(ideal, k)
            .into_iter()
            .filter(|m| (0..ideal.n()).all(|i| ideal.contains(&m.mul_var(i))))
            .collect();
        if !ms.is_empty() {
            out.by_degree.insert(k, ms);
        }
    }
    Ok(out)
}

/// Support statistics of the degree-`d` standard monomials against a
/// linear-step count `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportProfile {
    pub r: usize,
    /// `None` when `(S/I)_d = 0`.
    pub min_support: Option<usize>,
    /// Every degree-`d` standard monomial involves at least `r + 1` variables.
    pub support_holds: bool,
    pub h_d: u64,
    /// `C(n, r+1) * H(d - r - 1)`.
    pub bound: u64,
    pub bound_holds: bool,
}

pub fn support_profile(ideal: &MonomialIdeal, r: usize) -> Result<SupportProfile> {
    let hf = hilbert_function(ideal)?;
    let d = ideal.d();
    let survivors = standard_monomials(ideal, d);
    let min_support = survivors.iter().map(Monomial::support_size).min();
    let h_d = survivors.len() as u64;
    let bound = binomial(ideal.n() as i64, r as i64 + 1) * hf.at(d as i64 - r as i64 - 1);
    Ok(SupportProfile {
        r,
        min_support,
        support_holds: min_support.is_none_or(|s| s > r),
        h_d,
        bound,
        bound_holds: h_d <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn exps(ms: &[Monomial]) -> Vec<Vec<u32>> {
        ms.iter().map(|m| m.exponents().to_vec()).collect()
    }

    #[test]
    fn togliatti_degree_three_basis() {
        let i = named::togliatti();
        let got = exps(&standard_monomials(&i, 3));
        assert_eq!(
            got,
            vec![
                vec![2, 1, 0],
                vec![2, 0, 1],
                vec![1, 2, 0],
                vec![1, 0, 2],
                vec![0, 2, 1],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn maximal_power_vanishes_in_degree_d() {
        let i = MonomialIdeal::maximal_power(3, 4).unwrap();
        assert!(standard_monomials(&i, 4).is_empty());
        assert_eq!(standard_monomials(&i, 3).len() as u64, binomial(5, 3));
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_function(&named::togliatti()).unwrap().values(), &[1, 3, 6, 6, 3, 0]);
        assert_eq!(
            hilbert_function(&MonomialIdeal::maximal_power(2, 2).unwrap()).unwrap().values(),
            &[1, 2, 0]
        );
        let hf = hilbert_function(&named::cubics_without_xyz()).unwrap();
        assert_eq!(hf.values(), &[1, 3, 6, 1, 0]);
        assert_eq!(hf.top(), 3);
    }

    #[test]
    fn hilbert_rejects_non_artinian() {
        let i = MonomialIdeal::parse_gens("x1^2,x1*x2", 2, 2).unwrap();
        assert!(hilbert_function(&i).is_err());
    }

    #[test]
    fn socle_examples() {
        let s = socle(&named::togliatti()).unwrap();
        assert_eq!(s.by_degree.keys().copied().collect::<Vec<_>>(), vec![4]);
        assert_eq!(exps(&s.by_degree[&4]), vec![vec![2, 2, 0], vec![2, 0, 2], vec![0, 2, 2]]);
        assert!(!is_socle_monomial(&named::togliatti(), &Monomial::new(vec![2, 1, 0])));

        // x_i^2 * x_k always lands in I, so the squares are socle too
        let s = socle(&named::cubics_without_xyz()).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(exps(&s.by_degree[&2]), vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        assert_eq!(exps(&s.by_degree[&3]), vec![vec![1, 1, 1]]);

        let s = socle(&MonomialIdeal::maximal_power(3, 3).unwrap()).unwrap();
        assert_eq!(s.by_degree.len(), 1);
        assert_eq!(s.by_degree[&2].len(), 6);
    }

    #[test]
    fn support_profile_examples() {
        let p = support_profile(&named::cubics_without_xyz(), 2).unwrap();
        assert_eq!(p.min_support, Some(3));
        assert!(p.support_holds);
        assert_eq!((p.h_d, p.bound), (1, 1));
        assert!(p.bound_holds);

        let p = support_profile(&named::togliatti(), 1).unwrap();
        assert_eq!(p.min_support, Some(2));
        assert!(p.support_holds && p.bound_holds);

        let p = support_profile(&MonomialIdeal::maximal_power(3, 2).unwrap(), 3).unwrap();
        assert_eq!(p.min_support, None);
        assert_eq!((p.h_d, p.bound), (0, 0));
        assert!(p.support_holds && p.bound_holds);
    }
}
