//! Graded Betti numbers of `S/I` from the lcm lattice of `I`.
//!
//! For a multidegree `b`, the upper Koszul simplicial complex `K^b(I)` has
//! faces the squarefree `τ ⊆ supp(b)` with `x^{b-τ} ∈ I`, and
//! `β_{i+1,b}(S/I) = dim H̃_{i-1}(K^b(I); Q)`. Only lcms of generator subsets
//! carry nonzero Betti numbers, so those are the only `b` visited.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{hilbert_function, HilbertFunction};
use crate::ideal::{MonomialIdeal, MonomialQuotient};
use crate::linalg::IntMatrix;
use crate::monomial::Monomial;

/// All lcms of nonempty generator subsets.
pub fn lcm_multidegrees(ideal: &MonomialIdeal) -> BTreeSet<Vec<u32>> {
    let gens = ideal.generators();
    let mut seen: BTreeSet<Vec<u32>> = gens.iter().map(|g| g.exponents().to_vec()).collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    // lcm(A ∪ {g}) = lcm(lcm(A), g), so joining with generators reaches every subset
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in gens {
                let l = a.lcm(g);
                if seen.insert(l.exponents().to_vec()) {
                    next.push(l);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Downward-closed family of subsets of `{0..n-1}`, stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplexFaces {
    pub vertices: Vec<usize>,
    faces: Vec<u32>,
}

impl SimplicialComplexFaces {
    /// The void complex (no faces, not even `∅`).
    pub fn void() -> Self {
        Self {
            vertices: Vec::new(),
            faces: Vec::new(),
        }
    }

    pub fn from_faces(vertices: Vec<usize>, faces: impl IntoIterator<Item = u32>) -> Result<Self> {
        let set: BTreeSet<u32> = faces.into_iter().collect();
        for &f in &set {
            let mut bits = f;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                if !set.contains(&(f & !low)) {
                    return Err(Error::NotDownwardClosed);
                }
                bits &= !low;
            }
        }
        let mut faces: Vec<u32> = set.into_iter().collect();
        faces.sort_by_key(|f| (f.count_ones(), *f));
        Ok(Self { vertices, faces })
    }

    /// Every subset of `vertices`.
    pub fn simplex(vertices: Vec<usize>) -> Self {
        let mask: u32 = vertices.iter().map(|&v| 1u32 << v).sum();
        Self::from_faces(vertices, subsets(mask)).expect("a simplex is closed")
    }

    pub fn faces(&self) -> &[u32] {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }
}

fn subsets(mask: u32) -> impl Iterator<Item = u32> {
    let mut sub = Some(mask);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

/// `K^b(I)`: squarefree `τ ≤ b` on `supp(b)` with `x^{b-τ} ∈ I`.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, b: &[u32]) -> SimplicialComplexFaces {
    let vertices: Vec<usize> = (0..b.len()).filter(|&i| b[i] >= 1).collect();
    let mask: u32 = vertices.iter().map(|&v| 1u32 << v).sum();
    let faces = subsets(mask).filter(|&tau| {
        let m: Vec<u32> = b
            .iter()
            .enumerate()
            .map(|(i, &e)| e - ((tau >> i) & 1))
            .collect();
        ideal.contains(&Monomial::new(m))
    });
    SimplicialComplexFaces::from_faces(vertices, faces).expect("upper Koszul complexes are closed")
}

/// `dim H̃_q` for `q = -1, 0, 1, ...` (index `q + 1`). The void complex has
/// no homology at all; `{∅}` has `H̃_{-1} = 1`.
pub fn reduced_homology_dims(c: &SimplicialComplexFaces) -> Vec<usize> {
    if c.is_void() {
        return vec![0];
    }
    let top = c.faces.iter().map(|f| f.count_ones()).max().unwrap_or(0) as usize;
    // by_size[s]: faces with s vertices, i.e. dimension s - 1
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    for &f in &c.faces {
        by_size[f.count_ones() as usize].push(f);
    }
    // rank of ∂ from faces of size s to size s - 1, s >= 1
    let mut ranks = vec![0usize; top + 2];
    for s in 1..=top {
        ranks[s] = boundary_matrix(&by_size[s], &by_size[s - 1]).rank();
    }
    (0..=top)
        .map(|s| by_size[s].len() - ranks[s] - ranks[s + 1])
        .collect()
}

fn boundary_matrix(faces: &[u32], lower: &[u32]) -> IntMatrix {
    let row: BTreeMap<u32, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut m = IntMatrix::zeros(lower.len(), faces.len());
    for (c, &f) in faces.iter().enumerate() {
        let mut k = 0;
        for v in 0..32 {
            if f & (1 << v) == 0 {
                continue;
            }
            let r = row[&(f & !(1 << v))];
            m.set(r, c, if k % 2 == 0 { 1.into() } else { (-1).into() });
            k += 1;
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultigradedBetti {
    pub i: usize,
    pub b: Vec<u32>,
    pub value: u64,
}

/// `β_{i,j}(S/I)`, keyed by `(i, j)`; zero entries are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    entries: BTreeMap<(usize, u32), u64>,
    multigraded: Vec<MultigradedBetti>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, u32), u64> {
        &self.entries
    }

    pub fn multigraded(&self) -> &[MultigradedBetti] {
        &self.multigraded
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `Σ_i (-1)^i β_{i,j}` as the coefficient of `t^j`.
    pub fn alternating_polynomial(&self) -> Vec<i64> {
        let deg = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut p = vec![0i64; deg + 1];
        for (&(i, j), &b) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            p[j as usize] += sign * b as i64;
        }
        trim(p)
    }

    /// `Σ(-1)^i β_{i,j} t^j == (Σ H(k) t^k)(1-t)^n` coefficientwise.
    pub fn satisfies_euler_identity(&self, hf: &HilbertFunction) -> bool {
        self.alternating_polynomial() == hilbert_numerator(hf, self.n)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Coefficients of `(Σ H(k) t^k)(1-t)^n`.
pub fn hilbert_numerator(hf: &HilbertFunction, n: usize) -> Vec<i64> {
    let mut p: Vec<i64> = hf.values().iter().map(|&h| h as i64).collect();
    for _ in 0..n {
        let mut q = vec![0i64; p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            q[k] += c;
            q[k + 1] -= c;
        }
        p = q;
    }
    trim(p)
}

pub fn betti_table(ideal: &MonomialIdeal) -> BettiTable {
    let degrees: Vec<Vec<u32>> = lcm_multidegrees(ideal).into_iter().collect();
    let per_degree: Vec<Vec<MultigradedBetti>> = degrees
        .par_iter()
        .map(|b| {
            let h = reduced_homology_dims(&upper_koszul_complex(ideal, b));
            h.iter()
                .enumerate()
                .filter(|&(_, &v)| v > 0)
                // index q + 1 holds H̃_q, which gives β_{q+2,b}(S/I)
                .map(|(idx, &v)| MultigradedBetti {
                    i: idx + 1,
                    b: b.clone(),
                    value: v as u64,
                })
                .collect()
        })
        .collect();
    let mut entries = BTreeMap::new();
    entries.insert((0, 0), 1);
    let mut multigraded = vec![MultigradedBetti {
        i: 0,
        b: vec![0; ideal.n()],
        value: 1,
    }];
    for mb in per_degree.into_iter().flatten() {
        let j: u32 = mb.b.iter().sum();
        *entries.entry((mb.i, j)).or_insert(0) += mb.value;
        multigraded.push(mb);
    }
    BettiTable {
        n: ideal.n(),
        entries,
        multigraded,
    }
}

/// Largest `r ≤ n` with `β_{i,j} = 0` for all `1 ≤ i ≤ r`, `j ≥ i + d`.
pub fn linear_steps(table: &BettiTable, d: u32) -> usize {
    for i in 1..=table.n {
        if table.entries.iter().any(|(&(ii, j), &b)| ii == i && j >= i as u32 + d && b > 0) {
            return i - 1;
        }
    }
    table.n
}

/// `reg(S/I)` computed as `max{j - i : β_{i,j} ≠ 0}` and checked against the
/// top nonzero degree of the Hilbert function.
pub fn regularity(ideal: &MonomialIdeal) -> Result<u32> {
    let hf = hilbert_function(ideal)?;
    let table = betti_table(ideal);
    regularity_from(&table, &hf)
}

pub fn regularity_from(table: &BettiTable, hf: &HilbertFunction) -> Result<u32> {
    let from_betti = table
        .entries
        .keys()
        .map(|&(i, j)| j as i64 - i as i64)
        .max()
        .unwrap_or(0);
    if from_betti != hf.top() as i64 {
        return Err(Error::Internal(format!(
            "regularity mismatch: Betti table gives {from_betti}, Hilbert function gives {}",
            hf.top()
        )));
    }
    Ok(hf.top())
}
