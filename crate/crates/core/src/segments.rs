//! Line segments of degree-`d` standard monomials and the divisibility
//! hypotheses that guarantee maximal rank of powers of `x_i + x_j`.
//!
//! Axis indices in this module are one-based, `1 ≤ i < j ≤ n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::standard_monomials;
use crate::ideal::{MonomialIdeal, MonomialQuotient};
use crate::lefschetz::{power_map_check, LinearForm};
use crate::monomial::{monomials_of_degree, Monomial};

/// Monomials `m_1, ..., m_r` of degree `d`, all divisible by `x_i x_j`, with
/// `(x_j / x_i) m_t = m_{t+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSegment {
    pub i: usize,
    pub j: usize,
    pub monomials: Vec<Monomial>,
    /// `(x_i / x_j) m_1 ∈ I` and `(x_j / x_i) m_r ∈ I`.
    pub maximal: bool,
}

impl LineSegment {
    /// `(a, b)` with `x_i^a x_j^b` the largest such divisor of every member.
    pub fn uniform_divisor(&self) -> (u32, u32) {
        let a = self.monomials.iter().map(|m| m.exponent(self.i - 1)).min().unwrap_or(0);
        let b = self.monomials.iter().map(|m| m.exponent(self.j - 1)).min().unwrap_or(0);
        (a, b)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

fn check_axes(ideal: &MonomialIdeal, i: usize, j: usize) -> Result<()> {
    if !(1 <= i && i < j && j <= ideal.n()) {
        return Err(Error::InvalidArgument(format!(
            "axes must satisfy 1 <= i < j <= {}, got ({i}, {j})",
            ideal.n()
        )));
    }
    Ok(())
}

/// Splits the degree-`d` standard monomials divisible by `x_i x_j` into
/// runs along `(x_i, x_j)`. Groups share the exponents of every other
/// variable; inside a group runs are ordered by `x_i`-exponent descending.
pub fn segment_decomposition(ideal: &MonomialIdeal, i: usize, j: usize) -> Result<Vec<LineSegment>> {
    check_axes(ideal, i, j)?;
    let (xi, xj) = (i - 1, j - 1);
    let survivors: Vec<Monomial> = standard_monomials(ideal, ideal.d())
        .into_iter()
        .filter(|m| m.exponent(xi) >= 1 && m.exponent(xj) >= 1)
        .collect();

    let frozen = |m: &Monomial| {
        let mut e = m.exponents().to_vec();
        e[xi] = 0;
        e[xj] = 0;
        e
    };
    let mut groups: Vec<(Vec<u32>, Vec<Monomial>)> = Vec::new();
    for m in survivors {
        let key = frozen(&m);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, g)) => g.push(m),
            None => groups.push((key, vec![m])),
        }
    }

    let mut out = Vec::new();
    for (_, mut group) in groups {
        group.sort_by_key(|m| std::cmp::Reverse(m.exponent(xi)));
        let mut run: Vec<Monomial> = Vec::new();
        for m in group {
            let extends = run.last().is_some_and(|last| last.exponent(xi) == m.exponent(xi) + 1);
            if !extends && !run.is_empty() {
                out.push(close_segment(ideal, i, j, std::mem::take(&mut run)));
            }
            run.push(m);
        }
        if !run.is_empty() {
            out.push(close_segment(ideal, i, j, run));
        }
    }
    Ok(out)
}

fn close_segment(ideal: &MonomialIdeal, i: usize, j: usize, monomials: Vec<Monomial>) -> LineSegment {
    let (xi, xj) = (i - 1, j - 1);
    let before = monomials[0].swap_var(xj, xi).expect("x_j divides every member");
    let after = monomials[monomials.len() - 1]
        .swap_var(xi, xj)
        .expect("x_i divides every member");
    LineSegment {
        i,
        j,
        maximal: ideal.contains(&before) && ideal.contains(&after),
        monomials,
    }
}

/// Result of checking one segment against the ideal `J_M` generated by
/// every degree-`d` monomial outside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentLemmaCheck {
    pub segment: LineSegment,
    pub power: u32,
    pub holds: bool,
}

/// `×(x_i + x_j)^{a+b}` on `S/J_M` must have maximal rank in every degree.
pub fn segment_lemma_check(ideal: &MonomialIdeal, segment: &LineSegment) -> Result<SegmentLemmaCheck> {
    let n = ideal.n();
    let gens: Vec<Monomial> = monomials_of_degree(n, ideal.d(), None)
        .into_iter()
        .filter(|m| !segment.monomials.contains(m))
        .collect();
    let j_m = MonomialIdeal::new(n, ideal.d(), gens)?;
    let (a, b) = segment.uniform_divisor();
    let power = a + b;
    let report = power_map_check(&j_m, power, &LinearForm::pair(n, segment.i - 1, segment.j - 1))?;
    Ok(SegmentLemmaCheck {
        segment: segment.clone(),
        power,
        holds: report.holds(),
    })
}

/// `(i, j)` with `x_i^a x_j^b` dividing every degree-`d` standard monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairExponents {
    pub i: usize,
    pub j: usize,
    pub a: u32,
    pub b: u32,
}

/// Every axis pair with its componentwise-minimal exponents, in
/// lexicographic order of `(i, j)`. Empty when `(S/I)_d = 0`.
pub fn xy_candidates(ideal: &MonomialIdeal) -> Vec<PairExponents> {
    let survivors = standard_monomials(ideal, ideal.d());
    if survivors.is_empty() {
        return Vec::new();
    }
    let n = ideal.n();
    let min_exp = |v: usize| survivors.iter().map(|m| m.exponent(v)).min().unwrap_or(0);
    let mins: Vec<u32> = (0..n).map(min_exp).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(PairExponents {
                i: i + 1,
                j: j + 1,
                a: mins[i],
                b: mins[j],
            });
        }
    }
    out
}

/// First pair with the largest `a + b`, if that sum is at least one.
pub fn xy_hypothesis(ideal: &MonomialIdeal) -> Result<Option<PairExponents>> {
    ideal.require_artinian()?;
    let mut best: Option<PairExponents> = None;
    for p in xy_candidates(ideal) {
        if p.a + p.b >= 1 && best.is_none_or(|b| p.a + p.b > b.a + b.b) {
            best = Some(p);
        }
    }
    Ok(best)
}

/// First pair `(i, j)` such that a degree-`d` monomial is standard exactly
/// when `x_i x_j` divides it.
pub fn slp_hypothesis(ideal: &MonomialIdeal) -> Result<Option<(usize, usize)>> {
    ideal.require_artinian()?;
    let n = ideal.n();
    let all = monomials_of_degree(n, ideal.d(), None);
    for i in 0..n {
        for j in i + 1..n {
            let ok = all
                .iter()
                .all(|m| (m.exponent(i) >= 1 && m.exponent(j) >= 1) == !ideal.contains(m));
            if ok {
                return Ok(Some((i + 1, j + 1)));
            }
        }
    }
    Ok(None)
}

/// Componentwise minimum of the exponent vectors of the degree-`d`
/// standard monomials.
pub fn conjecture39_exponent(ideal: &MonomialIdeal) -> Result<Vec<u32>> {
    ideal.require_artinian()?;
    let survivors = standard_monomials(ideal, ideal.d());
    if survivors.is_empty() {
        return Err(Error::EmptyDegree);
    }
    Ok((0..ideal.n())
        .map(|v| survivors.iter().map(|m| m.exponent(v)).min().unwrap_or(0))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn cubics_without_xyz_has_one_singleton_segment() {
        let segs = segment_decomposition(&named::cubics_without_xyz(), 1, 2).unwrap();
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].monomials, vec![Monomial::new(vec![1, 1, 1])]);
        assert!(segs[0].maximal);
    }

    #[test]
    fn two_variable_run() {
        let i = MonomialIdeal::parse_gens("x^3,y^3", 2, 3).unwrap();
        let segs = segment_decomposition(&i, 1, 2).unwrap();
        assert_eq!(segs.len(), 1);
        assert_eq!(
            segs[0].monomials,
            vec![Monomial::new(vec![2, 1]), Monomial::new(vec![1, 2])]
        );
        assert!(segs[0].maximal);
        assert_eq!(segs[0].uniform_divisor(), (1, 1));
    }

    #[test]
    fn gaps_split_runs_and_maximality_is_reported() {
        // x^3y, x^2y^2 removed in the middle: x^3 y ... leave x^2y^2 in I
        let i = MonomialIdeal::parse_gens("x^4,y^4,x^2*y^2", 2, 4).unwrap();
        let segs = segment_decomposition(&i, 1, 2).unwrap();
        assert_eq!(segs.len(), 2);
        assert!(segs.iter().all(|s| s.len() == 1 && s.maximal));

        let ci = MonomialIdeal::parse_gens("x^3,y^3,z^3", 3, 3).unwrap();
        let segs = segment_decomposition(&ci, 1, 2).unwrap();
        assert_eq!(segs.len(), 2);
        assert!(segs[0].maximal);
        // xyz: (x/y)xyz = x^2 z is standard
        assert_eq!(segs[1].monomials, vec![Monomial::new(vec![1, 1, 1])]);
        assert!(!segs[1].maximal);
    }

    #[test]
    fn maximal_power_has_no_segments() {
        let i = MonomialIdeal::maximal_power(3, 3).unwrap();
        assert!(segment_decomposition(&i, 1, 3).unwrap().is_empty());
        assert_eq!(xy_hypothesis(&i).unwrap(), None);
        assert_eq!(slp_hypothesis(&i).unwrap(), None);
        assert_eq!(conjecture39_exponent(&i).unwrap_err(), Error::EmptyDegree);
    }

    #[test]
    fn bad_axes() {
        let i = named::togliatti();
        assert!(segment_decomposition(&i, 2, 2).is_err());
        assert!(segment_decomposition(&i, 0, 1).is_err());
        assert!(segment_decomposition(&i, 1, 4).is_err());
    }

    #[test]
    fn hypotheses_on_named_ideals() {
        let r = named::cubics_without_xyz();
        assert_eq!(xy_hypothesis(&r).unwrap(), Some(PairExponents { i: 1, j: 2, a: 1, b: 1 }));
        assert_eq!(conjecture39_exponent(&r).unwrap(), vec![1, 1, 1]);
        assert_eq!(slp_hypothesis(&r).unwrap(), None);

        let t = named::togliatti();
        assert_eq!(xy_hypothesis(&t).unwrap(), None);
        assert_eq!(conjecture39_exponent(&t).unwrap(), vec![0, 0, 0]);
        assert_eq!(slp_hypothesis(&t).unwrap(), None);

        assert_eq!(slp_hypothesis(&named::cubics_not_divisible_by_xy()).unwrap(), Some((1, 2)));
    }

    #[test]
    fn single_survivor() {
        // every cubic except x1^3... not artinian; use x1^2*x2 as the survivor
        let gens: Vec<Monomial> = monomials_of_degree(2, 3, None)
            .into_iter()
            .filter(|m| m.exponents() != [2, 1])
            .collect();
        let i = MonomialIdeal::new(2, 3, gens).unwrap();
        assert_eq!(conjecture39_exponent(&i).unwrap(), vec![2, 1]);
    }

    #[test]
    fn lemma_holds_on_small_segments() {
        let ci = MonomialIdeal::parse_gens("x^3,y^3,z^3", 3, 3).unwrap();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            for seg in segment_decomposition(&ci, i, j).unwrap() {
                assert!(segment_lemma_check(&ci, &seg).unwrap().holds);
            }
        }
    }
}
