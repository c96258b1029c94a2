//! Acceptance run. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or overruns its time budget.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use monolef::hilbert::{hilbert_function, standard_monomials};
use monolef::lefschetz::{differentiation_matrix, multiplication_matrix};
use monolef::monomial::{binomial, monomials_of_degree};
use monolef::resolution::betti_table;
use monolef::scan::sample_ideal;
use monolef::toeplitz::{toeplitz_matrix, two_var_cross_oracle, BinomialConvention, ToeplitzSpec};
use monolef::{IntMatrix, LinearForm, Monomial, MonomialIdeal};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Poly = BTreeMap<Vec<u32>, BigInt>;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

/// Runs the binary; returns exit code, parsed stdout (or the last stdout
/// line for scans with --out) and raw stdout.
fn cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_monolef")).args(args).output().expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout);
    let v = serde_json::from_str(text.trim()).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v)
}

fn temp_path(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("monolef-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

fn read_jsonl(path: &str) -> Vec<Value> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn in_ideal(gens: &[Monomial], e: &[u32]) -> bool {
    gens.iter().any(|g| g.exponents().iter().zip(e).all(|(a, b)| a <= b))
}

/// `ℓ^t · u` modulo `I`, one factor of `ℓ` at a time, reducing after each.
fn multiply_reduce(ideal: &MonomialIdeal, u: &Monomial, t: u32, form: &[i64]) -> Poly {
    let gens = ideal.generators();
    let mut p: Poly = BTreeMap::new();
    if !in_ideal(gens, u.exponents()) {
        p.insert(u.exponents().to_vec(), BigInt::from(1));
    }
    for _ in 0..t {
        let mut q: Poly = BTreeMap::new();
        for (e, c) in &p {
            for (i, &ci) in form.iter().enumerate() {
                let mut f = e.clone();
                f[i] += 1;
                if ci != 0 && !in_ideal(gens, &f) {
                    *q.entry(f).or_insert_with(BigInt::zero) += c * BigInt::from(ci);
                }
            }
        }
        q.retain(|_, c| !c.is_zero());
        p = q;
    }
    p
}

fn oracle_matrix(ideal: &MonomialIdeal, j: u32, t: u32, form: &[i64]) -> IntMatrix {
    let src = standard_monomials(ideal, j);
    let tgt = standard_monomials(ideal, j + t);
    let mut m = IntMatrix::zeros(tgt.len(), src.len());
    for (c, u) in src.iter().enumerate() {
        for (e, v) in multiply_reduce(ideal, u, t, form) {
            let r = tgt.iter().position(|x| x.exponents() == e.as_slice()).expect("reduced term is standard");
            m.set(r, c, v);
        }
    }
    m
}

/// Hilbert function by counting monomials outside the ideal.
fn brute_hilbert(ideal: &MonomialIdeal) -> Vec<i64> {
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let h = monomials_of_degree(ideal.n(), k, None)
            .iter()
            .filter(|m| !in_ideal(ideal.generators(), m.exponents()))
            .count();
        out.push(h as i64);
        if h == 0 {
            return out;
        }
        k += 1;
    }
}

fn random_ideal(rng: &mut ChaCha8Rng, max_n: usize, min_d: u32, max_d: u32) -> MonomialIdeal {
    let n = rng.gen_range(1..=max_n);
    let d = rng.gen_range(min_d..=max_d);
    let total = binomial((n as u32 + d - 1) as i64, d as i64) as usize;
    let count = rng.gen_range(n..=total);
    sample_ideal(n, d, count, rng.gen()).unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn remark_golden() -> Outcome {
    let r = data("remark28.json");
    let (code, v) = cli(&["betti", "--ideal", &r]);
    if code != 0 {
        return fail(format!("betti exited {code}"));
    }
    let got: BTreeMap<(u64, u64), u64> = v["betti"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["i"].as_u64() != Some(0))
        .map(|e| ((e["i"].as_u64().unwrap(), e["j"].as_u64().unwrap()), e["b"].as_u64().unwrap()))
        .collect();
    let want: BTreeMap<(u64, u64), u64> = [((1, 3), 9), ((2, 4), 12), ((3, 5), 3), ((3, 6), 1)].into_iter().collect();
    if got != want {
        return fail(format!("betti table {got:?}"));
    }
    if v["linear_steps"] != 2 {
        return fail(format!("linear_steps {}", v["linear_steps"]));
    }
    let (_, x) = cli(&["ehu", "--ideal", &r, "--forms", "x", "--squared"]);
    let (_, xy) = cli(&["ehu", "--ideal", &r, "--forms", "x-y", "--squared"]);
    if x["holds"] != false || xy["holds"] != true {
        return fail(format!("ehu x -> {}, x-y -> {}", x["holds"], xy["holds"]));
    }
    pass("β13=9 β24=12 β35=3 β36=1, r=2; (x)^2 fails, (x-y)^2 contains m^3")
}

fn togliatti_golden() -> Outcome {
    let t = data("togliatti.json");
    let (_, w) = cli(&["wlp", "--ideal", &t]);
    let degrees: Vec<u64> = w["failures"].as_array().unwrap().iter().map(|f| f[0].as_u64().unwrap()).collect();
    let cell = w["cells"].as_array().unwrap().iter().find(|c| c["j"] == 2).cloned().unwrap_or(Value::Null);
    if w["verdict"] != "fails" || degrees != [2] || cell["src"] != 6 || cell["tgt"] != 6 || cell["rank"] != 5 {
        return fail(format!("wlp {} failures {degrees:?} cell {cell}", w["verdict"]));
    }
    let (_, b) = cli(&["betti", "--ideal", &t]);
    if b["linear_steps"] != 1 || b["reg"] != 4 {
        return fail(format!("linear_steps {} reg {}", b["linear_steps"], b["reg"]));
    }
    let (_, h) = cli(&["hilbert", "--ideal", &t]);
    if h["hilbert"][4].as_u64().unwrap_or(0) == 0 {
        return fail("H(4) = 0, so m^4 would lie in I");
    }
    pass("fails in degree 2 with rank 5 on 6x6, r=1, reg=4, H(4)>0")
}

fn toeplitz_sweep() -> Outcome {
    let mut count = 0;
    for n in 0..=8u32 {
        for m in 1..=8usize {
            for k in 0..=n as i64 {
                let spec = ToeplitzSpec { n, m, k };
                let t = toeplitz_matrix(spec, BinomialConvention::Standard).unwrap();
                if t.determinant().unwrap().is_zero() {
                    return fail(format!("T({n},{m},{k}) singular"));
                }
                // (x+y)^n on K[x,y]/(x^{m+n-k}, y^{m+k}) from degree m-1 to m+n-1
                let gens = [
                    Monomial::new(vec![(m as i64 + n as i64 - k) as u32, 0]),
                    Monomial::new(vec![0, (m as i64 + k) as u32]),
                ];
                let mut oracle = IntMatrix::zeros(m, m);
                for i in 1..=m {
                    let u = [(m - i) as u32, (i - 1) as u32];
                    let mut p: Poly = BTreeMap::new();
                    p.insert(u.to_vec(), BigInt::from(1));
                    for _ in 0..n {
                        let mut q: Poly = BTreeMap::new();
                        for (e, c) in &p {
                            for v in 0..2 {
                                let mut f = e.clone();
                                f[v] += 1;
                                if !in_ideal(&gens, &f) {
                                    *q.entry(f).or_insert_with(BigInt::zero) += c;
                                }
                            }
                        }
                        p = q;
                    }
                    for (e, c) in p {
                        // target basis x^{m+n-k-j} y^{k+j-1}
                        let col = e[1] as i64 - k + 1;
                        if !(1..=m as i64).contains(&col) {
                            return fail(format!("T({n},{m},{k}): term y^{} outside target basis", e[1]));
                        }
                        oracle.set(i - 1, col as usize - 1, c);
                    }
                }
                if oracle != t {
                    return fail(format!("T({n},{m},{k}) differs from expansion oracle"));
                }
                if !two_var_cross_oracle(spec, BinomialConvention::Standard).unwrap().equal {
                    return fail(format!("T({n},{m},{k}) cross-oracle mismatch"));
                }
                count += 1;
            }
        }
    }
    pass(format!("{count} matrices invertible and equal to the (x+y)^n expansion"))
}

fn euler_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..500 {
        let ideal = random_ideal(&mut rng, 4, 1, 5);
        let n = ideal.n();
        // HF(t) (1-t)^n with binomial signs
        let h = brute_hilbert(&ideal);
        let mut rhs = vec![0i64; h.len() + n];
        for (k, &hk) in h.iter().enumerate() {
            for s in 0..=n {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                rhs[k + s] += sign * binomial(n as i64, s as i64) as i64 * hk;
            }
        }
        let table = betti_table(&ideal);
        let mut lhs = vec![0i64; rhs.len()];
        for (&(i, j), &b) in table.entries() {
            if j as usize >= lhs.len() {
                lhs.resize(j as usize + 1, 0);
            }
            lhs[j as usize] += if i % 2 == 0 { b as i64 } else { -(b as i64) };
        }
        let len = lhs.len().max(rhs.len());
        lhs.resize(len, 0);
        rhs.resize(len, 0);
        if lhs != rhs {
            return fail(format!("trial {trial}: {} breaks the identity", ideal.gens_string()));
        }
    }
    pass("500 seeded ideals, n<=4, d<=5")
}

fn flag_census(records: &[Value]) -> Result<BTreeMap<String, usize>, String> {
    let mut fired = BTreeMap::new();
    for r in records {
        if r.get("error").is_some() {
            return Err(format!("record {} errored: {}", r["index"], r["error"]));
        }
        for (k, v) in r["flags"].as_object().unwrap() {
            match v {
                Value::Bool(false) => return Err(format!("record {} violates ({k})", r["index"])),
                Value::Bool(true) => *fired.entry(k.clone()).or_default() += 1,
                _ => {}
            }
        }
    }
    Ok(fired)
}

fn theorem_scan() -> Outcome {
    let checks = "wlp,slp,betti,theorem-suite";
    let ex = temp_path("c5-exhaustive.jsonl");
    let (code, s) = cli(&["scan", "--n", "3", "--d", "3", "--exhaustive", "--checks", checks, "--out", &ex]);
    if code != 0 || s["violations"] != 0 {
        return fail(format!("exhaustive scan exit {code}, summary {s}"));
    }
    let sm = temp_path("c5-samples.jsonl");
    let (code2, s2) = cli(&[
        "scan", "--n", "4", "--d", "2..4", "--samples", "1000", "--seed", "5", "--checks", checks, "--out", &sm,
    ]);
    if code2 != 0 || s2["violations"] != 0 {
        return fail(format!("sample scan exit {code2}, summary {s2}"));
    }
    let mut records = read_jsonl(&ex);
    records.extend(read_jsonl(&sm));
    match flag_census(&records) {
        Err(e) => fail(e),
        Ok(fired) => {
            let missing: Vec<&str> = ["a", "b", "c", "d", "e", "f", "g", "h", "i"]
                .into_iter()
                .filter(|k| !fired.contains_key(*k))
                .collect();
            if !missing.is_empty() {
                return fail(format!("flags never exercised: {missing:?}"));
            }
            let counts: Vec<String> = fired.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            pass(format!("{} + {} records, exit 0; flags checked {}", s["records"], s2["records"], counts.join(" ")))
        }
    }
}

fn two_variable_slp() -> Outcome {
    let (code, s) = cli(&["scan", "--n", "2", "--d", "1..5", "--exhaustive", "--checks", "slp", "--out", &temp_path("c6.jsonl")]);
    let records = s["records"].as_u64().unwrap_or(0);
    if code != 0 || records == 0 || s["slp_checked"] != records || s["slp_failures"] != 0 {
        return fail(format!("exit {code}, summary {s}"));
    }
    pass(format!("{records} ideals, all SLP"))
}

fn conjecture_run() -> Outcome {
    let ex = temp_path("c7-exhaustive.jsonl");
    let sm = temp_path("c7-samples.jsonl");
    let (c1, s1) = cli(&["scan", "--n", "3", "--d", "3", "--exhaustive", "--checks", "conj39", "--out", &ex]);
    let (c2, s2) = cli(&[
        "scan", "--n", "3", "--d", "4", "--samples", "500", "--seed", "7", "--checks", "conj39", "--out", &sm,
    ]);
    if c1 == 3 || c2 == 3 || s1["counterexamples"] != 0 || s2["counterexamples"] != 0 {
        return fail(format!("counterexample reported: {s1} / {s2}"));
    }
    if c1 != 0 || c2 != 0 {
        return fail(format!("scan exits {c1}, {c2}"));
    }
    // independent re-check of every non-vacuous record
    let mut applicable = 0;
    for r in read_jsonl(&ex).into_iter().chain(read_jsonl(&sm)) {
        let c = &r["conj39"];
        if c["applicable"] != true {
            continue;
        }
        applicable += 1;
        let j = &r["ideal"];
        let gens: Vec<Vec<u32>> = serde_json::from_value(j["gens"].clone()).unwrap();
        let ideal = MonomialIdeal::from_exponents(3, j["d"].as_u64().unwrap() as u32, gens).unwrap();
        let a = c["a"].as_u64().unwrap() as u32;
        let top = hilbert_function(&ideal).unwrap().top();
        for k in 0..=top {
            let m = oracle_matrix(&ideal, k, a, &[1, 1, 1]);
            if m.rank_rational() != m.rows().min(m.cols()) {
                return fail(format!("oracle finds a failure at degree {k} for {}", ideal.gens_string()));
            }
        }
    }
    pass(format!(
        "{} + {} records, {applicable} non-vacuous, zero counterexamples",
        s1["records"], s2["records"]
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cells = 0;
    for _ in 0..50 {
        let ideal = random_ideal(&mut rng, 3, 1, 4);
        let n = ideal.n();
        let top = hilbert_function(&ideal).unwrap().top();
        let random: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        let mut forms = vec![vec![1; n]];
        if random.iter().any(|&c| c != 0) {
            forms.push(random);
        }
        for coeffs in &forms {
            let form = LinearForm::new(coeffs.clone()).unwrap();
            for j in 0..=top {
                for t in 1..=top + 1 - j {
                    if multiplication_matrix(&ideal, j, t, &form) != oracle_matrix(&ideal, j, t, coeffs) {
                        return fail(format!("{} j={j} t={t} form {coeffs:?}", ideal.gens_string()));
                    }
                    cells += 1;
                }
            }
            for k in 1..=top + 1 {
                let mult = multiplication_matrix(&ideal, k - 1, 1, &form).rank();
                let diff = differentiation_matrix(&ideal, k, &form).rank();
                if mult != diff {
                    return fail(format!("{} degree {k}: rank {mult} vs {diff}", ideal.gens_string()));
                }
            }
        }
    }
    pass(format!("50 ideals, {cells} (j,t) matrices, duality ranks equal"))
}

fn main() {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        (1, "remark golden", 1, remark_golden),
        (2, "togliatti golden", 1, togliatti_golden),
        (3, "toeplitz sweep", 10, toeplitz_sweep),
        (4, "euler identity", 300, euler_identity),
        (5, "theorem-consistency scan", 900, theorem_scan),
        (6, "two-variable slp", 60, two_variable_slp),
        (7, "conjecture evidence run", 600, conjecture_run),
        (8, "oracle equivalence", 120, oracle_equivalence),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let ok = outcome.pass && in_time;
        failed += usize::from(!ok);
        println!(
            "criterion {id} {} {name}: {}{} [{:.2}s / {limit}s]",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            if in_time { "" } else { " (over time budget)" },
            elapsed.as_secs_f64(),
        );
    }
    std::fs::remove_dir_all(std::env::temp_dir().join(format!("monolef-acceptance-{}", std::process::id()))).ok();
    if failed > 0 {
        println!("acceptance: {failed} criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all 8 criteria passed");
}
