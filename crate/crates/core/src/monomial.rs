//! Exponent-vector monomials.
//!
//! A [`Monomial`] is used both as an element of `S = K[x_1..x_n]` and as a
//! dual monomial of the inverse system in `K[y_1..y_n]`; the exponent vector
//! is the same in both readings.
//!
//! The crate-wide order is graded lexicographic with `x_1 > x_2 > ... > x_n`.
//! Bases are always listed from largest to smallest in that order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Self { exps }
    }

    pub fn pure_power(n: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; n];
        exps[i] = e;
        Self { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// `deg_i(m)`: the largest `e` with `x_i^e | m`.
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Number of variables that divide `self`.
    pub fn support_size(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other | self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::new(
            self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial { exps }
    }

    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial { exps })
    }

    /// `(x_to / x_from) * self`, if `x_from | self`.
    pub fn swap_var(&self, from: usize, to: usize) -> Option<Monomial> {
        let mut m = self.div_var(from)?;
        m.exps[to] += 1;
        Some(m)
    }

    /// Graded lexicographic comparison, `x_1 > ... > x_n`.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `k` in `n` variables, each exponent at most
/// `max_exp` when given, in decreasing graded-lex order.
pub fn monomials_of_degree(n: usize, k: u32, max_exp: Option<u32>) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    let cap = max_exp.unwrap_or(u32::MAX);
    let mut exps = vec![0u32; n];
    fill(&mut exps, 0, k, cap, &mut out);
    out
}

fn fill(exps: &mut [u32], pos: usize, remaining: u32, cap: u32, out: &mut Vec<Monomial>) {
    let n = exps.len();
    if pos == n - 1 {
        if remaining <= cap {
            exps[pos] = remaining;
            out.push(Monomial::new(exps.to_vec()));
        }
        return;
    }
    // the remaining variables can absorb at most cap each
    let tail_room = (n - pos - 1) as u64 * cap as u64;
    let hi = remaining.min(cap);
    for e in (0..=hi).rev() {
        if ((remaining - e) as u64) > tail_room {
            break;
        }
        exps[pos] = e;
        fill(exps, pos + 1, remaining - e, cap, out);
    }
    exps[pos] = 0;
}

/// Binomial coefficient as `u64`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
