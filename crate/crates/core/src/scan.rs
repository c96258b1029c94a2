//! Seeded ideal sampling, exhaustive enumeration up to permuting variables,
//! and the scan harness that checks every ideal against the theorem suite
//! and the two conjectures.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conjectures::{conjecture39_check, ehu_containment, Conj39Record, EhuForms, EhuReport, EhuStatus};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_function, socle, standard_monomials, support_profile, HilbertFunction};
use crate::ideal::{IdealJson, MonomialIdeal};
use crate::lefschetz::{
    check_support_chain, power_map_check, slp_check, wlp_check, wlp_check_with, LefschetzReport, LinearForm, SlpMode,
    Verdict,
};
use crate::monomial::{binomial, monomials_of_degree, Monomial};
use crate::resolution::{betti_table, linear_steps, regularity_from, BettiTable};
use crate::segments::{conjecture39_exponent, slp_hypothesis, xy_candidates, xy_hypothesis, PairExponents};

/// Exit status for a scan with no violations and no counterexamples.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

/// Records are computed in parallel in chunks of this size and written in
/// input order as each chunk completes.
const CHUNK: usize = 32;

/// Largest number of optional generators enumerated exhaustively.
const MAX_EXHAUSTIVE_FREE: usize = 22;

/// Pure powers `x_i^d` plus `gen_count - n` distinct degree-`d` monomials
/// chosen uniformly, deterministic in `seed`.
pub fn sample_ideal(n: usize, d: u32, gen_count: usize, seed: u64) -> Result<MonomialIdeal> {
    if n == 0 {
        return Err(Error::NoVariables);
    }
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let total = binomial((n as u32 + d - 1) as i64, d as i64) as usize;
    if gen_count < n || gen_count > total {
        return Err(Error::InvalidArgument(format!(
            "generator count must lie in [{n}, {total}] for n = {n}, d = {d}, got {gen_count}"
        )));
    }
    let (mut gens, others) = split_pure_powers(n, d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in sample(&mut rng, others.len(), gen_count - n).into_iter() {
        gens.push(others[k].clone());
    }
    MonomialIdeal::new(n, d, gens)
}

fn split_pure_powers(n: usize, d: u32) -> (Vec<Monomial>, Vec<Monomial>) {
    monomials_of_degree(n, d, None)
        .into_iter()
        .partition(|m| m.support_size() == 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Smallest sorted generator list in the orbit under permuting variables.
pub fn orbit_representative(gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = gens.first().map_or(0, Vec::len);
    permutations(n)
        .iter()
        .map(|p| {
            let mut g: Vec<Vec<u32>> = gens.iter().map(|e| p.iter().map(|&k| e[k]).collect()).collect();
            g.sort();
            g
        })
        .min()
        .unwrap_or_default()
}

/// Every artinian ideal generated in degree `d`, one per orbit of the
/// symmetric group on the variables.
pub fn exhaustive_ideals(n: usize, d: u32) -> Result<Vec<MonomialIdeal>> {
    if n == 0 {
        return Err(Error::NoVariables);
    }
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let (pure, others) = split_pure_powers(n, d);
    if others.len() > MAX_EXHAUSTIVE_FREE {
        return Err(Error::InvalidArgument(format!(
            "exhaustive enumeration over {} optional generators is too large",
            others.len()
        )));
    }
    let perms = permutations(n);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << others.len()) {
        let mut gens = pure.clone();
        gens.extend((0..others.len()).filter(|k| mask >> k & 1 == 1).map(|k| others[k].clone()));
        let mut key: Vec<Vec<u32>> = gens.iter().map(|m| m.exponents().to_vec()).collect();
        key.sort();
        let is_rep = perms.iter().all(|p| {
            let mut g: Vec<Vec<u32>> = key.iter().map(|e| p.iter().map(|&k| e[k]).collect()).collect();
            g.sort();
            g >= key
        });
        if is_rep {
            out.push(MonomialIdeal::new(n, d, gens)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Wlp,
    Slp,
    Betti,
    Ehu,
    Conj39,
    TheoremSuite,
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "wlp" => Ok(Check::Wlp),
            "slp" => Ok(Check::Slp),
            "betti" => Ok(Check::Betti),
            "ehu" => Ok(Check::Ehu),
            "conj39" => Ok(Check::Conj39),
            "theorem-suite" => Ok(Check::TheoremSuite),
            other => Err(Error::Parse {
                token: other.to_string(),
                reason: "unknown check; expected wlp, slp, betti, ehu, conj39 or theorem-suite".into(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScanMode {
    Exhaustive,
    Samples { count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Inclusive; an empty range yields an empty scan.
    pub n_range: (usize, usize),
    pub d_range: (u32, u32),
    /// Inclusive bounds on the total generator count, pure powers included.
    pub gen_range: Option<(usize, usize)>,
    pub mode: ScanMode,
    pub seed: u64,
    pub checks: BTreeSet<Check>,
    /// Random linear-form trials for containment, MMN and random SLP checks.
    pub trials: usize,
    /// Adds wall-clock time to each record, which breaks byte-for-byte
    /// reproducibility.
    pub timing: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            n_range: (3, 3),
            d_range: (3, 3),
            gen_range: None,
            mode: ScanMode::Exhaustive,
            seed: 0,
            checks: [Check::Wlp, Check::Slp, Check::Betti, Check::TheoremSuite].into_iter().collect(),
            trials: 5,
            timing: false,
        }
    }
}

impl ScanConfig {
    fn gen_bounds(&self, n: usize, d: u32) -> Option<(usize, usize)> {
        let total = binomial((n as u32 + d - 1) as i64, d as i64) as usize;
        let (lo, hi) = self.gen_range.unwrap_or((n, total));
        let (lo, hi) = (lo.max(n), hi.min(total));
        (lo <= hi).then_some((lo, hi))
    }

    fn pairs(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for n in self.n_range.0..=self.n_range.1 {
            for d in self.d_range.0..=self.d_range.1 {
                out.push((n, d));
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let nonempty_n = self.n_range.0 <= self.n_range.1;
        let nonempty_d = self.d_range.0 <= self.d_range.1;
        if nonempty_n && nonempty_d {
            if self.n_range.0 == 0 {
                return Err(Error::NoVariables);
            }
            if self.d_range.0 == 0 {
                return Err(Error::ZeroDegree);
            }
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        Ok(())
    }
}

/// The ideals a scan visits, in order.
pub fn scan_ideals(cfg: &ScanConfig) -> Result<Vec<MonomialIdeal>> {
    cfg.validate()?;
    let mut out = Vec::new();
    match cfg.mode {
        ScanMode::Exhaustive => {
            for (n, d) in cfg.pairs() {
                let Some((lo, hi)) = cfg.gen_bounds(n, d) else {
                    continue;
                };
                out.extend(
                    exhaustive_ideals(n, d)?
                        .into_iter()
                        .filter(|i| (lo..=hi).contains(&i.generators().len())),
                );
            }
        }
        ScanMode::Samples { count } => {
            let pairs: Vec<(usize, u32, (usize, usize))> = cfg
                .pairs()
                .into_iter()
                .filter_map(|(n, d)| cfg.gen_bounds(n, d).map(|b| (n, d, b)))
                .collect();
            if pairs.is_empty() {
                return Ok(out);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..count {
                let (n, d, (lo, hi)) = pairs[rng.gen_range(0..pairs.len())];
                let g = rng.gen_range(lo..=hi);
                out.push(sample_ideal(n, d, g, rng.gen())?);
            }
        }
    }
    Ok(out)
}

/// Consistency flags. `None` means the hypothesis did not apply or the
/// inputs were not computed; `Some(false)` is a violation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyFlags {
    /// `r = n-1` gives the WLP.
    pub a: Option<bool>,
    /// `r = n-1` gives `m^d ⊆ I + (x_i + x_j)^2` for every pair.
    pub b: Option<bool>,
    /// `r ≥ n-2` and `reg ≤ d` give the WLP.
    pub c: Option<bool>,
    /// Every `(i, j, a, b)` divisibility pattern gives maximal rank of
    /// `×(x_i + x_j)^{a+b}`.
    pub d: Option<bool>,
    /// The two-variable divisibility criterion gives the SLP.
    pub e: Option<bool>,
    /// `×ℓ` not onto `(S/I)_d` forces `H(d) ≥ d+1`.
    pub f: Option<bool>,
    /// Support bound and Hilbert bound from `r`.
    pub g: Option<bool>,
    /// Every kernel witness has full support chains.
    pub h: Option<bool>,
    /// `m^d ⊆ I + (l_{r+1}, ..., l_n)` for every independent choice tried.
    pub i: Option<bool>,
    /// A random form gives the same ranks as `x_1 + ... + x_n`.
    pub mmn_agreement: Option<bool>,
    /// Alternating Betti sum matches the Hilbert series numerator.
    pub euler: Option<bool>,
    /// Socle agrees with a brute-force divisibility test and, when the
    /// Betti table is known, with `β_{n, j+n}` in each degree `j`.
    pub socle: Option<bool>,
}

impl ConsistencyFlags {
    fn violations(&self) -> Vec<String> {
        let named = [
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("e", self.e),
            ("f", self.f),
            ("g", self.g),
            ("h", self.h),
            ("i", self.i),
            ("mmn_agreement", self.mmn_agreement),
            ("euler", self.euler),
            ("socle", self.socle),
        ];
        named
            .into_iter()
            .filter(|(_, v)| *v == Some(false))
            .map(|(k, _)| k.to_string())
            .collect()
    }
}

fn socle_consistent(ideal: &MonomialIdeal, hf: &HilbertFunction, table: Option<&BettiTable>) -> Result<bool> {
    let n = ideal.n();
    let soc = socle(ideal)?;
    for k in 0..=hf.top() {
        let brute: Vec<Monomial> = standard_monomials(ideal, k)
            .into_iter()
            .filter(|m| {
                (0..n).all(|i| {
                    let up = m.mul_var(i);
                    ideal.generators().iter().any(|g| g.divides(&up))
                })
            })
            .collect();
        let listed = soc.by_degree.get(&k).cloned().unwrap_or_default();
        if brute != listed {
            return Ok(false);
        }
        if let Some(t) = table {
            if t.get(n, k + n as u32) != listed.len() as u64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub xy: Option<PairExponents>,
    pub slp_pair: Option<(usize, usize)>,
    pub conj39_exponent: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub index: usize,
    pub ideal: IdealJson,
    pub hilbert: HilbertFunction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear_steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reg: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wlp: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub wlp_failure_degrees: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slp: Option<Verdict>,
    /// Best of `trials` random forms; recorded, never a violation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slp_random: Option<Verdict>,
    pub hypotheses: Hypotheses,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ehu: Option<EhuReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conj39: Option<Conj39Record>,
    pub flags: ConsistencyFlags,
    pub violations: Vec<String>,
    pub counterexample: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn record_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Checks one ideal. Failures inside the checks land in `error` and count
/// as a violation; they never abort the scan.
pub fn scan_record(index: usize, ideal: &MonomialIdeal, cfg: &ScanConfig) -> ScanRecord {
    let start = Instant::now();
    let mut rec = ScanRecord {
        index,
        ideal: ideal.to_json(),
        hilbert: HilbertFunction::default(),
        linear_steps: None,
        reg: None,
        wlp: None,
        wlp_failure_degrees: Vec::new(),
        slp: None,
        slp_random: None,
        hypotheses: Hypotheses::default(),
        ehu: None,
        conj39: None,
        flags: ConsistencyFlags::default(),
        violations: Vec::new(),
        counterexample: false,
        error: None,
        elapsed_ms: None,
    };
    if let Err(e) = fill_record(&mut rec, ideal, cfg) {
        rec.error = Some(e.to_string());
        rec.violations.push("error".into());
    }
    if cfg.timing {
        rec.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    rec
}

fn fill_record(rec: &mut ScanRecord, ideal: &MonomialIdeal, cfg: &ScanConfig) -> Result<()> {
    let has = |c: Check| cfg.checks.contains(&c);
    let suite = has(Check::TheoremSuite);
    let n = ideal.n();
    let d = ideal.d();
    let mut rng = record_rng(cfg.seed, rec.index);

    let hf = hilbert_function(ideal)?;
    rec.hilbert = hf.clone();
    rec.hypotheses = Hypotheses {
        xy: xy_hypothesis(ideal)?,
        slp_pair: slp_hypothesis(ideal)?,
        conj39_exponent: conjecture39_exponent(ideal).ok(),
    };

    rec.flags.socle = Some(socle_consistent(ideal, &hf, None)?);
    let mut r = None;
    let mut reg = None;
    if has(Check::Betti) || has(Check::Ehu) || suite {
        let table = betti_table(ideal);
        r = Some(linear_steps(&table, d));
        reg = Some(regularity_from(&table, &hf)?);
        rec.flags.euler = Some(table.satisfies_euler_identity(&hf));
        rec.flags.socle = Some(socle_consistent(ideal, &hf, Some(&table))?);
    }
    rec.linear_steps = r;
    rec.reg = reg;

    let mut wlp = None;
    if has(Check::Wlp) || suite {
        let report = wlp_check(ideal)?;
        let ranks = |r: &LefschetzReport| r.cells.iter().map(|c| c.rank).collect::<Vec<_>>();
        let mut agree = true;
        for _ in 0..cfg.trials {
            let random = wlp_check_with(ideal, &LinearForm::random(n, &mut rng))?;
            agree &= ranks(&report) == ranks(&random);
        }
        rec.flags.mmn_agreement = Some(agree);
        rec.wlp = Some(report.verdict);
        rec.wlp_failure_degrees = report.failure_degrees();
        wlp = Some(report);
    }

    let need_slp = has(Check::Slp) || (suite && rec.hypotheses.slp_pair.is_some());
    if need_slp {
        rec.slp = Some(slp_check(ideal, SlpMode::Canonical)?.verdict);
        let mode = SlpMode::Random {
            seed: rng.gen(),
            trials: cfg.trials,
        };
        rec.slp_random = Some(slp_check(ideal, mode)?.verdict);
    }

    if has(Check::Ehu) {
        let r = r.expect("betti computed");
        if r < n {
            let forms = EhuForms::Random {
                seed: rng.gen(),
                trials: cfg.trials,
            };
            let report = ehu_containment(ideal, r + 1, &forms, true)?;
            if report.status == EhuStatus::FailsGenerically {
                rec.counterexample = true;
            }
            rec.ehu = Some(report);
        }
    }

    if has(Check::Conj39) {
        let c = conjecture39_check(ideal)?;
        rec.counterexample |= c.counterexample;
        rec.conj39 = Some(c);
    }

    if suite {
        let r = r.expect("betti computed");
        let reg = reg.expect("betti computed");
        let wlp = wlp.expect("wlp computed");
        let wlp_holds = wlp.holds();
        let f = &mut rec.flags;

        if n >= 2 && r == n - 1 {
            f.a = Some(wlp_holds);
            let mut all = true;
            for i in 0..n {
                for j in i + 1..n {
                    let forms = EhuForms::Explicit {
                        forms: vec![LinearForm::pair(n, i, j)],
                    };
                    all &= ehu_containment(ideal, n, &forms, true)?.holds;
                }
            }
            f.b = Some(all);
        }
        if r + 2 >= n && reg <= d {
            f.c = Some(wlp_holds);
        }

        let patterns: Vec<PairExponents> = xy_candidates(ideal).into_iter().filter(|p| p.a + p.b >= 1).collect();
        if !patterns.is_empty() {
            let mut all = true;
            for p in patterns {
                let form = LinearForm::pair(n, p.i - 1, p.j - 1);
                all &= power_map_check(ideal, p.a + p.b, &form)?.holds();
            }
            f.d = Some(all);
        }

        if rec.hypotheses.slp_pair.is_some() {
            f.e = Some(rec.slp == Some(Verdict::Holds));
        }

        if let Some(cell) = wlp.cell(d - 1, 1) {
            if !cell.surjective() {
                f.f = Some(hf.at(d as i64) > d as u64);
            }
        }

        let profile = support_profile(ideal, r)?;
        f.g = Some(profile.support_holds && profile.bound_holds);

        if !wlp.witnesses.is_empty() {
            let mut all = true;
            for w in &wlp.witnesses {
                all &= check_support_chain(ideal, w)?.holds;
            }
            f.h = Some(all);
        }

        f.i = Some(if r >= n {
            hf.at(d as i64) == 0
        } else {
            let p = r + 1;
            let coordinate = EhuForms::Explicit {
                forms: (p - 1..n)
                    .map(|k| LinearForm::new((0..n).map(|v| i64::from(v == k)).collect()))
                    .collect::<Result<_>>()?,
            };
            let random = EhuForms::Random {
                seed: rng.gen(),
                trials: cfg.trials,
            };
            ehu_containment(ideal, p, &coordinate, false)?.holds_all
                && ehu_containment(ideal, p, &random, false)?.holds_all
        });
    }

    rec.violations = rec.flags.violations();
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub records: usize,
    /// Records with at least one violated flag or an error.
    pub violations: usize,
    pub violation_counts: BTreeMap<String, usize>,
    pub violation_indices: Vec<usize>,
    pub counterexamples: usize,
    pub counterexample_indices: Vec<usize>,
    pub errors: usize,
    pub wlp_checked: usize,
    pub wlp_failures: usize,
    pub slp_checked: usize,
    pub slp_failures: usize,
    pub exit_code: i32,
}

impl ScanSummary {
    fn absorb(&mut self, rec: &ScanRecord) {
        self.records += 1;
        if !rec.violations.is_empty() {
            self.violations += 1;
            self.violation_indices.push(rec.index);
            for v in &rec.violations {
                *self.violation_counts.entry(v.clone()).or_default() += 1;
            }
        }
        if rec.counterexample {
            self.counterexamples += 1;
            self.counterexample_indices.push(rec.index);
        }
        if rec.error.is_some() {
            self.errors += 1;
        }
        if let Some(v) = rec.wlp {
            self.wlp_checked += 1;
            self.wlp_failures += usize::from(!v.holds());
        }
        if let Some(v) = rec.slp {
            self.slp_checked += 1;
            self.slp_failures += usize::from(!v.holds());
        }
        self.exit_code = if self.violations > 0 {
            EXIT_VIOLATIONS
        } else if self.counterexamples > 0 {
            EXIT_COUNTEREXAMPLE
        } else {
            EXIT_OK
        };
    }
}

/// Runs the scan on `jobs` worker threads (`0` lets the pool decide),
/// writing one JSON line per record to `out` in input order.
pub fn scan<W: Write>(cfg: &ScanConfig, jobs: usize, out: &mut W) -> Result<ScanSummary> {
    let ideals = scan_ideals(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let mut summary = ScanSummary::default();
    for (c, chunk) in ideals.chunks(CHUNK).enumerate() {
        let records: Vec<ScanRecord> = pool.install(|| {
            chunk
                .par_iter()
                .enumerate()
                .map(|(k, ideal)| scan_record(c * CHUNK + k, ideal, cfg))
                .collect()
        });
        for rec in &records {
            let line = serde_json::to_string(rec).map_err(|e| Error::Internal(e.to_string()))?;
            writeln!(out, "{line}").map_err(|e| Error::Io(e.to_string()))?;
            summary.absorb(rec);
        }
        out.flush().map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(summary)
}

/// [`scan`] without output, returning the records as well.
pub fn scan_collect(cfg: &ScanConfig, jobs: usize) -> Result<(Vec<ScanRecord>, ScanSummary)> {
    let mut buf = Vec::new();
    let summary = scan(cfg, jobs, &mut buf)?;
    let records = String::from_utf8(buf)
        .map_err(|e| Error::Internal(e.to_string()))?
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Internal(e.to_string())))
        .collect::<Result<_>>()?;
    Ok((records, summary))
}
