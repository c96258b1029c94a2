//! Monomial ideals generated in a single degree, plus the parsers for the
//! JSON and human-readable input formats.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};

/// Anything that determines a monomial basis of a graded quotient `S/J`.
pub trait MonomialQuotient {
    fn nvars(&self) -> usize;

    fn contains(&self, m: &Monomial) -> bool;

    /// Degree-`k` monomials outside the ideal, decreasing graded-lex order.
    fn standard_monomials(&self, k: u32) -> Vec<Monomial> {
        monomials_of_degree(self.nvars(), k, None)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }
}

/// Monomial ideal with all minimal generators in one degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    d: u32,
    gens: Vec<Monomial>,
}

/// Wire format: `{"n": 3, "d": 3, "gens": [[3,0,0], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub d: u32,
    pub gens: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    /// Validates and stores the generators in decreasing graded-lex order.
    pub fn new(n: usize, d: u32, gens: Vec<Monomial>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVariables);
        }
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let mut seen = HashSet::with_capacity(gens.len());
        for (index, g) in gens.iter().enumerate() {
            if g.nvars() != n {
                return Err(Error::WrongArity {
                    index,
                    expected: n,
                    found: g.nvars(),
                });
            }
            if g.degree() != d {
                return Err(Error::WrongDegree {
                    index,
                    expected: d,
                    found: g.degree(),
                });
            }
            if !seen.insert(g.clone()) {
                return Err(Error::DuplicateGenerator(g.to_string()));
            }
        }
        let mut gens = gens;
        gens.sort_by(|a, b| b.grlex_cmp(a));
        Ok(Self { n, d, gens })
    }

    pub fn from_exponents(n: usize, d: u32, gens: Vec<Vec<u32>>) -> Result<Self> {
        Self::new(n, d, gens.into_iter().map(Monomial::new).collect())
    }

    /// `m^d`: every monomial of degree `d`.
    pub fn maximal_power(n: usize, d: u32) -> Result<Self> {
        Self::new(n, d, monomials_of_degree(n, d, None))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_artinian(&self) -> bool {
        self.first_missing_power().is_none()
    }

    pub fn require_artinian(&self) -> Result<()> {
        match self.first_missing_power() {
            Some(i) => Err(Error::NotArtinian(i + 1)),
            None => Ok(()),
        }
    }

    fn first_missing_power(&self) -> Option<usize> {
        (0..self.n).find(|&i| !self.gens.contains(&Monomial::pure_power(self.n, i, self.d)))
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            n: self.n,
            d: self.d,
            gens: self.gens.iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }

    pub fn from_json(j: IdealJson) -> Result<Self> {
        Self::from_exponents(j.n, j.d, j.gens)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: IdealJson = serde_json::from_str(s).map_err(|e| Error::Parse {
            token: s.chars().take(40).collect(),
            reason: e.to_string(),
        })?;
        Self::from_json(j)
    }

    /// Parses `x1^3, x2^3, x3^3, x1*x2*x3` (or `x^3, y*z, ...`).
    pub fn parse_gens(s: &str, n: usize, d: u32) -> Result<Self> {
        let gens = split_list(s)
            .into_iter()
            .map(|tok| parse_monomial(tok, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, d, gens)
    }

    /// Human-readable generator list, inverse of [`MonomialIdeal::parse_gens`].
    pub fn gens_string(&self) -> String {
        self.gens
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl MonomialQuotient for MonomialIdeal {
    fn nvars(&self) -> usize {
        self.n
    }

    fn contains(&self, m: &Monomial) -> bool {
        m.degree() >= self.d && self.gens.iter().any(|g| g.divides(m))
    }

    fn standard_monomials(&self, k: u32) -> Vec<Monomial> {
        // pure powers x_i^d in I bound every standard exponent by d-1
        let cap = if self.is_artinian() { Some(self.d - 1) } else { None };
        monomials_of_degree(self.n, k, cap)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }
}

/// A monomial ideal with generators of arbitrary degrees.
#[derive(Clone, Debug)]
pub struct GeneralMonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl GeneralMonomialIdeal {
    pub fn new(n: usize, gens: Vec<Monomial>) -> Self {
        assert!(gens.iter().all(|g| g.nvars() == n));
        Self { n, gens }
    }
}

impl MonomialQuotient for GeneralMonomialIdeal {
    fn nvars(&self) -> usize {
        self.n
    }

    fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

const LETTERS: [char; 6] = ['x', 'y', 'z', 'w', 'v', 'u'];

/// Variable index for `x7` (one-based) or a bare letter from `x, y, z, w, v, u`.
fn parse_var(tok: &str, n: usize) -> Result<usize> {
    let err = |reason: &str| Error::Parse {
        token: tok.to_string(),
        reason: reason.to_string(),
    };
    let mut chars = tok.chars();
    let first = chars.next().ok_or_else(|| err("empty variable"))?;
    let rest = chars.as_str();
    let idx = if first == 'x' && !rest.is_empty() {
        let k: usize = rest.parse().map_err(|_| err("expected x<index>"))?;
        if k == 0 {
            return Err(err("variable indices start at 1"));
        }
        k - 1
    } else if rest.is_empty() {
        LETTERS
            .iter()
            .position(|&c| c == first)
            .ok_or_else(|| err("unknown variable"))?
    } else {
        return Err(err("unknown variable"));
    };
    if idx >= n {
        return Err(err(&format!("variable out of range for n = {n}")));
    }
    Ok(idx)
}

/// Parses a `*`-separated product of variable powers.
pub fn parse_monomial(s: &str, n: usize) -> Result<Monomial> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse {
            token: s.to_string(),
            reason: "empty monomial".into(),
        });
    }
    let mut exps = vec![0u32; n];
    for factor in compact.split('*') {
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => {
                let e: u32 = e.parse().map_err(|_| Error::Parse {
                    token: factor.to_string(),
                    reason: "exponent must be a non-negative integer".into(),
                })?;
                (v, e)
            }
            None => (factor, 1),
        };
        let i = parse_var(var, n)?;
        exps[i] += exp;
    }
    Ok(Monomial::new(exps))
}

/// Parses an integer linear form like `x - y`, `2*x1 + 3x2`, `x1+x2+x3`.
pub fn parse_linear_coeffs(s: &str, n: usize) -> Result<Vec<i64>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse {
            token: s.to_string(),
            reason: "empty linear form".into(),
        });
    }
    let mut coeffs = vec![0i64; n];
    let mut terms: Vec<(i64, String)> = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    for c in compact.chars() {
        if c == '+' || c == '-' {
            if !cur.is_empty() {
                terms.push((sign, std::mem::take(&mut cur)));
            } else if !terms.is_empty() || sign != 1 {
                return Err(Error::Parse {
                    token: compact.clone(),
                    reason: "dangling sign".into(),
                });
            }
            sign = if c == '-' { -1 } else { 1 };
        } else {
            cur.push(c);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse {
            token: compact,
            reason: "trailing sign".into(),
        });
    }
    terms.push((sign, cur));
    for (sign, term) in terms {
        let split = term
            .find(|c: char| !c.is_ascii_digit())
            .ok_or_else(|| Error::Parse {
                token: term.clone(),
                reason: "constant term in a linear form".into(),
            })?;
        let (num, var) = term.split_at(split);
        let var = var.strip_prefix('*').unwrap_or(var);
        if var.contains('^') {
            return Err(Error::Parse {
                token: term.clone(),
                reason: "linear forms cannot contain powers".into(),
            });
        }
        let c: i64 = if num.is_empty() {
            1
        } else {
            num.parse().map_err(|_| Error::Parse {
                token: term.clone(),
                reason: "bad coefficient".into(),
            })?
        };
        coeffs[parse_var(var, n)?] += sign * c;
    }
    Ok(coeffs)
}
