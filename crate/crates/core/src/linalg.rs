//! Dense integer matrices with exact rank, determinant and kernel over `Q`.
//!
//! Rank uses fraction-free (Bareiss) elimination. Before running it, a rank
//! computation modulo a 61-bit prime is tried: the rank mod `p` never exceeds
//! the rank over `Q`, so when it already equals `min(rows, cols)` it is the
//! exact answer. Otherwise the Bareiss result is returned.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Self { rows, cols, data }
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| x.into()));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rows with columns permuted: entry `(r, c)` of the result is entry
    /// `(row_perm[r], col_perm[c])` of `self`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(row_perm.len(), col_perm.len());
        for (r, &sr) in row_perm.iter().enumerate() {
            for (c, &sc) in col_perm.iter().enumerate() {
                out.set(r, c, self.get(sr, sc).clone());
            }
        }
        out
    }

    /// Exact rank over `Q`.
    pub fn rank(&self) -> usize {
        let full = self.rows.min(self.cols);
        if full == 0 {
            return 0;
        }
        if rank_mod_p(self) == full {
            return full;
        }
        self.rank_bareiss()
    }

    /// Exact rank by fraction-free elimination alone.
    pub fn rank_bareiss(&self) -> usize {
        bareiss(self).rank
    }

    /// Exact rank by Gauss-Jordan elimination over `Q` (independent route).
    pub fn rank_rational(&self) -> usize {
        rref(self).1.len()
    }

    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(BigInt::one());
        }
        let e = bareiss(self);
        if e.rank < self.rows {
            return Ok(BigInt::zero());
        }
        let det = e.last_pivot;
        Ok(if e.swaps % 2 == 1 { -det } else { det })
    }

    /// Basis of the right kernel over `Q`, one vector per free column of the
    /// reduced row echelon form.
    pub fn nullspace(&self) -> Vec<RationalVector> {
        let (reduced, pivots) = rref(self);
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[row][free].clone();
            }
            basis.push(RationalVector::from_rationals(&v));
        }
        basis
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rational vector stored as integer numerators over one positive
/// denominator, with `gcd(numerators, denominator) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalVector {
    #[serde(with = "decimal_vec")]
    pub numerators: Vec<BigInt>,
    #[serde(with = "decimal")]
    pub denominator: BigInt,
}

impl RationalVector {
    pub fn from_rationals(v: &[BigRational]) -> Self {
        let den = v
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let nums: Vec<BigInt> = v.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        let g = nums.iter().fold(den.clone(), |acc, x| acc.gcd(x));
        Self {
            numerators: nums.into_iter().map(|x| x / &g).collect(),
            denominator: den / g,
        }
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.iter().all(Zero::is_zero)
    }

    /// Integer multiple with coprime entries and first nonzero entry positive.
    pub fn primitive(&self) -> Vec<BigInt> {
        normalize_primitive(self.numerators.clone())
    }
}

/// Divides by the gcd of the entries and fixes the sign so the first nonzero
/// entry is positive.
pub fn normalize_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in &mut v {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
    v
}

struct Elimination {
    rank: usize,
    last_pivot: BigInt,
    swaps: usize,
}

fn bareiss(m: &IntMatrix) -> Elimination {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.to_rows();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        // smallest nonzero magnitude keeps intermediate entries short
        let pivot = (rank..rows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by(|&x, &y| a[x][col].magnitude().cmp(a[y][col].magnitude()));
        let Some(p) = pivot else { continue };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let (top, bottom) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        let pv = &prow[col];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[col]);
            for c in col + 1..cols {
                let v = pv * &row[c] - &factor * &prow[c];
                row[c] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = top[rank][col].clone();
        rank += 1;
    }
    Elimination {
        rank,
        last_pivot: prev,
        swaps,
    }
}

fn rref(m: &IntMatrix) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows)
        .map(|r| m.row(r).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.rows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let pivot_row = a[row].clone();
            for (x, y) in a[r].iter_mut().zip(&pivot_row).skip(col) {
                *x -= &f * y;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

fn reduce(x: &BigInt) -> u64 {
    if let Some(v) = x.to_i64() {
        return v.rem_euclid(P as i64) as u64;
    }
    let p = BigInt::from(P);
    x.mod_floor(&p).to_u64().expect("residue fits in u64")
}

fn rank_mod_p(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<u64>> = (0..m.rows).map(|r| m.row(r).iter().map(reduce).collect()).collect();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(p) = (rank..m.rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(p, rank);
        let inv = powmod(a[rank][col], P - 2);
        let (top, bottom) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in bottom.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let f = mulmod(row[col], inv);
            for c in col..m.cols {
                row[c] = (row[c] + P - mulmod(f, prow[c])) % P;
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) mod decimal_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

pub(crate) mod decimal_matrix {
    use num_bigint::BigInt;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }
}
