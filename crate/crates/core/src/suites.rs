//! Verification suites. Each suite runs a batch of checks and returns a
//! [`Report`]; the command-line tool and the acceptance target both use them.
//!
//! Reports keep asserted checks (`metrics`, `violations`) apart from
//! observational `probes`, which record quantities that are measured but not
//! asserted.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::comm::{ceil_log2, check_fooling_set, recheck_fooling_set, type1_game, type2_game, Mode, Outcome};
use crate::ecc::{sample_pair_from, BlockCode};
use crate::gadget1::{build_z, characteristic, disj_gadget, sidecar, type1_code, type1_gap};
use crate::gadget2::{
    build_matrix, build_matrix_from_words, chain_bound, grid_max_weight, key_case, key_submatrix,
    lis_equals_max_path_check, matrix_chain, sigma, type2_bounds, type2_codes, Matrix,
};
use crate::lis::{es_witness, lis, lis_dp, lis_exhaustive, lis_patience, IndexSet, Monotone, Sequence};
use crate::order::{interval_count, random_order, type1_witness, verify_type1};
use crate::robp::{
    build_distinguisher, patience_program, random_increasing, search_separated_family, verify_separated_family,
    DEFAULT_C,
};
use crate::{rng, Error, Result};

/// Suite names accepted by [`run`].
pub const SUITES: &[&str] = &[
    "oracles",
    "type1",
    "grid",
    "type2",
    "keys",
    "claim1",
    "claim2",
    "disj",
    "es",
    "random-order",
    "fooling",
    "determinism",
];

/// Optional overrides; `None` selects each suite's default.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub seed: u64,
    pub n: Option<usize>,
    pub m: Option<u64>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub k: Option<usize>,
    pub count: Option<usize>,
    pub budget: Option<u64>,
}

/// Violations listed in a report beyond this many are only counted.
pub const MAX_LISTED_VIOLATIONS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<String>,
    pub metrics: BTreeMap<String, Value>,
    pub probes: BTreeMap<String, Value>,
    pub elapsed_ms: u64,
}

impl Report {
    fn new(suite: &str) -> Report {
        Report {
            suite: suite.to_string(),
            passed: true,
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            metrics: BTreeMap::new(),
            probes: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, msg: String) {
        self.passed = false;
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED_VIOLATIONS {
            self.violations.push(msg);
        }
    }

    /// Merges per-item results computed in parallel, in item order.
    fn absorb(&mut self, results: Vec<std::result::Result<(), String>>) {
        for r in results {
            self.check(r.is_ok(), || r.err().unwrap_or_default());
        }
    }

    fn metric(&mut self, key: &str, value: impl Serialize) {
        self.metrics.insert(key.to_string(), json!(value));
    }

    fn probe(&mut self, key: &str, value: impl Serialize) {
        self.probes.insert(key.to_string(), json!(value));
    }

    /// The report without its timing field, for reproducibility comparisons.
    pub fn without_timing(&self) -> Report {
        Report {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

pub fn run(suite: &str, cfg: &Config) -> Result<Report> {
    let start = Instant::now();
    let mut report = match suite {
        "oracles" => oracles(cfg),
        "type1" => type1(cfg),
        "grid" => grid(cfg),
        "type2" => type2(cfg),
        "keys" => keys(cfg),
        "claim1" => claim1(cfg),
        "claim2" => claim2(cfg),
        "disj" => disj(cfg),
        "es" => es(cfg),
        "random-order" => random_orders(cfg),
        "fooling" => fooling(cfg),
        "determinism" => determinism(cfg),
        other => Err(Error::Precondition(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u64>> {
    let mut cur: Vec<u64> = (1..=n as u64).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn oracle_item(x: &Sequence) -> std::result::Result<(), String> {
    let (p, witness) = lis_patience(x);
    let d = lis_dp(x);
    let e = lis_exhaustive(x).map_err(|e| e.to_string())?;
    let picked: Vec<u64> = witness.iter().map(|i| x.symbols()[i - 1]).collect();
    let valid = picked.len() == p && picked.windows(2).all(|w| w[0] < w[1]);
    if p == d && d == e && valid {
        Ok(())
    } else {
        Err(format!("{x}: patience {p}, dp {d}, exhaustive {e}, witness valid {valid}"))
    }
}

fn oracles(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("oracles");
    let count = cfg.count.unwrap_or(10_000);
    let max_n = cfg.n.unwrap_or(15).min(crate::lis::EXHAUSTIVE_MAX_LEN);
    let max_alphabet = cfg.m.unwrap_or(8).max(1);
    let results: Vec<_> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut g = rng::derived(cfg.seed, i as u64);
            let n = g.gen_range(0..=max_n);
            let a = g.gen_range(1..=max_alphabet);
            let x = Sequence::new((0..n).map(|_| g.gen_range(1..=a)).collect(), a).expect("within bound");
            oracle_item(&x)
        })
        .collect();
    r.absorb(results);
    let perms: Vec<_> = permutations(5)
        .into_iter()
        .map(|p| oracle_item(&Sequence::from_symbols(p)))
        .collect();
    r.metric("permutations", perms.len());
    r.absorb(perms);
    r.metric("random_sequences", count);
    r.metric("max_n", max_n);
    r.metric("max_alphabet", max_alphabet);
    Ok(r)
}

fn type1(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("type1");
    let n = cfg.n.unwrap_or(64);
    let (lb, ub) = type1_gap(n)?;
    let code = type1_code(n, cfg.seed)?;
    let words = code.enumerate(1 << 16)?;
    r.metric("n", n);
    r.metric("equal_lower_bound", lb);
    r.metric("unequal_upper_bound", ub);
    r.metric("code_size", words.len());
    r.metric("code_distance", code.verified_distance());
    r.check(code.verified_distance() * 16 >= n, || {
        format!("code distance {} below n/16", code.verified_distance())
    });
    r.check(words.len() >= 16, || format!("code has {} < 16 words", words.len()));
    let lis_table: Vec<Vec<usize>> = words
        .par_iter()
        .map(|u| words.iter().map(|v| lis(&build_z(u, v).expect("equal lengths").z_uv)).collect())
        .collect();
    let (mut min_equal, mut max_unequal) = (usize::MAX, 0);
    for a in 0..words.len() {
        min_equal = min_equal.min(lis_table[a][a]);
        r.check(lis_table[a][a] >= lb, || format!("word {a}: lis(z_uu) = {} < {lb}", lis_table[a][a]));
        for b in a + 1..words.len() {
            let m = lis_table[a][b].min(lis_table[b][a]);
            max_unequal = max_unequal.max(m);
            r.check(m <= ub, || format!("words {a}, {b}: min orientation lis {m} > {ub}"));
        }
    }
    r.probe("min_equal_lis", min_equal);
    r.probe("max_unequal_min_lis", max_unequal);
    Ok(r)
}

fn all_binary_words(p: usize) -> Vec<Vec<u32>> {
    (0..1u32 << p).map(|w| (0..p).map(|b| w >> b & 1).collect()).collect()
}

/// All `q`-tuples of words, indexed in mixed radix.
fn tuple(words: &[Vec<u32>], q: usize, mut idx: usize) -> Vec<Vec<u32>> {
    (0..q)
        .map(|_| {
            let w = words[idx % words.len()].clone();
            idx /= words.len();
            w
        })
        .collect()
}

fn grid(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("grid");
    let count = cfg.count.unwrap_or(500);
    let max_pq = cfg.p.unwrap_or(3);
    let random: Vec<(bool, std::result::Result<(), String>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut g = rng::derived(cfg.seed, i as u64);
            let (rows, cols) = (g.gen_range(1..=10), g.gen_range(1..=16));
            let density = g.gen_range(0.05..0.95);
            let data = (0..rows)
                .map(|_| (0..cols).map(|_| g.gen_bool(density) as u8).collect())
                .collect();
            let m = Matrix::from_rows(data).expect("rectangular");
            path_item(&m, &format!("random matrix {i}"))
        })
        .collect();
    let mut exceeds = 0u64;
    let mut total = 0u64;
    for (ex, res) in random {
        exceeds += ex as u64;
        total += 1;
        r.check(res.is_ok(), || res.err().unwrap_or_default());
    }
    r.metric("random_matrices", count);

    let mut built = 0u64;
    for p in 1..=max_pq {
        let words = all_binary_words(p);
        for q in 1..=max_pq {
            let tuples = words.len().pow(q as u32);
            let results: Vec<(bool, std::result::Result<(), String>)> = (0..tuples * tuples)
                .into_par_iter()
                .map(|idx| {
                    let u = tuple(&words, q, idx / tuples);
                    let v = tuple(&words, q, idx % tuples);
                    let m = build_matrix_from_words(&u, &v).expect("valid words");
                    path_item(&m, &format!("p={p} q={q} u={u:?} v={v:?}"))
                })
                .collect();
            for (ex, res) in results {
                exceeds += ex as u64;
                total += 1;
                built += 1;
                r.check(res.is_ok(), || res.err().unwrap_or_default());
            }
            // The coded pipeline: M, M' and sigma from outer codewords.
            if let Ok((inner, outer)) = type2_codes(p, q, cfg.seed) {
                for u in outer.enumerate(1 << 12).unwrap_or_default().iter().take(16) {
                    let inst = build_matrix(u, u, &inner)?;
                    r.check(inst.sigma == sigma(&inst.m), || format!("p={p} q={q}: sigma mismatch"));
                    let (ex, res) = path_item(&inst.m, &format!("coded p={p} q={q} u={u:?}"));
                    exceeds += ex as u64;
                    total += 1;
                    r.check(res.is_ok(), || res.err().unwrap_or_default());
                }
            }
        }
    }
    r.metric("word_pair_matrices", built);
    r.probe("full_sigma_exceeds_weight", exceeds);
    r.probe("full_sigma_exceeds_rate", exceeds as f64 / total.max(1) as f64);
    Ok(r)
}

fn path_item(m: &Matrix, label: &str) -> (bool, std::result::Result<(), String>) {
    match lis_equals_max_path_check(m) {
        Ok(c) if c.ok() => (c.full_exceeds, Ok(())),
        Ok(c) => (
            c.full_exceeds,
            Err(format!(
                "{label}: weight {}, nonzero lis {}, full lis {}",
                c.max_weight, c.lis_nonzero, c.lis_full
            )),
        ),
        Err(e) => (false, Err(format!("{label}: {e}"))),
    }
}

/// Outer codewords sampled or enumerated for the equal-word check.
const EQUAL_ENUMERATE_MAX: u128 = 20_000;
const EQUAL_SAMPLES: usize = 200;
const DISTINCT_EXHAUSTIVE_MAX: u128 = 10_000;

fn type2_weight(inner: &BlockCode, u: &[u32], v: &[u32]) -> Result<usize> {
    let words = |w: &[u32]| -> Result<Vec<Vec<u32>>> { w.iter().map(|&s| inner.word(s as u128)).collect() };
    Ok(grid_max_weight(&build_matrix_from_words(&words(u)?, &words(v)?)?)?.0)
}

fn type2(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("type2");
    let pairs = cfg.count.unwrap_or(50);
    let scales: Vec<(usize, usize)> = match (cfg.p, cfg.q) {
        (Some(p), Some(q)) => vec![(p, q)],
        _ => [2, 4, 8].iter().flat_map(|&p| [2, 4, 8].map(|q| (p, q))).collect(),
    };
    let mut per_scale = Vec::new();
    let mut equality_hits = 0u64;
    let mut equal_total = 0u64;
    for (p, q) in scales {
        let (ub, lb) = type2_bounds(p, q)?;
        let (inner, outer) = type2_codes(p, q, cfg.seed)?;
        let mut g = rng::derived(cfg.seed, (p * 1000 + q) as u64);
        let size = outer.size().unwrap_or(u128::MAX);
        let equal_words: Vec<Vec<u32>> = if size <= EQUAL_ENUMERATE_MAX {
            outer.enumerate(EQUAL_ENUMERATE_MAX)?
        } else {
            (0..EQUAL_SAMPLES).map(|_| crate::ecc::sample_from(&outer, &mut g)).collect()
        };
        let equal: Vec<usize> = equal_words
            .par_iter()
            .map(|u| type2_weight(&inner, u, u))
            .collect::<Result<_>>()?;
        for (u, &w) in equal_words.iter().zip(&equal) {
            r.check(w <= ub, || format!("p={p} q={q} u={u:?}: equal weight {w} > {ub}"));
            equality_hits += (w == ub) as u64;
        }
        equal_total += equal.len() as u64;

        let mut distinct: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        if size * size <= DISTINCT_EXHAUSTIVE_MAX {
            let all = outer.enumerate(DISTINCT_EXHAUSTIVE_MAX)?;
            for a in &all {
                for b in &all {
                    if a != b {
                        distinct.push((a.clone(), b.clone()));
                    }
                }
            }
        }
        let exhaustive_pairs = distinct.len();
        for _ in 0..pairs {
            distinct.push(sample_pair_from(&outer, &mut g)?);
        }
        let weights: Vec<usize> = distinct
            .par_iter()
            .map(|(u, v)| type2_weight(&inner, u, v))
            .collect::<Result<_>>()?;
        for ((u, v), &w) in distinct.iter().zip(&weights) {
            r.check(w >= lb, || format!("p={p} q={q} u={u:?} v={v:?}: weight {w} < {lb}"));
        }
        per_scale.push(json!({
            "p": p,
            "q": q,
            "equal_upper_bound": ub,
            "unequal_lower_bound": lb,
            "inner": inner.summary(),
            "outer": outer.summary(),
            "equal_checked": equal.len(),
            "equal_max_weight": equal.iter().max(),
            "distinct_exhaustive": exhaustive_pairs,
            "distinct_sampled": pairs,
            "distinct_min_weight": weights.iter().min(),
            "chain_bound_8": chain_bound(p, q),
            "chain_bound_16": p * q / (16 * (p + q)),
        }));
    }
    r.metric("scales", per_scale);
    r.probe("equal_weight_attains_bound", equality_hits);
    r.probe("equal_weight_attains_bound_rate", equality_hits as f64 / equal_total.max(1) as f64);
    Ok(r)
}

fn keys(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("keys");
    let mut weights = BTreeMap::new();
    for (a, b) in [(0, 0), (1, 1), (1, 0), (0, 1)] {
        let kc = key_case(a, b);
        let expected = if a == b { 5 } else { 6 };
        r.check(kc.max_weight == expected, || {
            format!("bits ({a},{b}): max weight {} != {expected}", kc.max_weight)
        });
        weights.insert(format!("{a}{b}"), kc.max_weight);
    }
    // Key sub-matrices inside a built grid match the stand-alone cases.
    let mut g = rng::seeded(cfg.seed);
    let (p, q) = (3, 3);
    let u: Vec<Vec<u32>> = (0..q).map(|_| (0..p).map(|_| g.gen_range(0..2)).collect()).collect();
    let v: Vec<Vec<u32>> = (0..q).map(|_| (0..p).map(|_| g.gen_range(0..2)).collect()).collect();
    let m = build_matrix_from_words(&u, &v)?;
    for i in 1..=p {
        for j in 1..=q {
            let kc = key_case(u[j - 1][i - 1], v[j - 1][i - 1]);
            r.check(key_submatrix(&m, i, j) == kc.sub, || format!("key sub-matrix ({i},{j}) differs"));
        }
    }
    r.metric("weights", weights);
    Ok(r)
}

fn claim1(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("claim1");
    let count = cfg.count.unwrap_or(200);
    let ns: Vec<usize> = cfg.n.map_or(vec![5, 10, 15], |n| vec![n]);
    let mut cases = [0u64; 2];
    for &n in &ns {
        if n < 5 {
            return Err(Error::Precondition("claim1 needs n >= 5".into()));
        }
        let m = cfg.m.unwrap_or(DEFAULT_C * n as u64);
        let results: Vec<std::result::Result<u8, String>> = (0..count)
            .into_par_iter()
            .map(|i| {
                let mut g = rng::derived(cfg.seed ^ (n as u64) << 32, i as u64);
                let x = random_increasing(n, m, &mut g).map_err(|e| e.to_string())?;
                let s = IndexSet::from_unsorted(index::sample(&mut g, n, n / 5).into_iter().map(|i| i + 1).collect())
                    .expect("distinct indices");
                let y = loop {
                    let y = if g.gen_bool(0.5) && x.symbols()[n - 1] < m {
                        let from = g.gen_range(0..n);
                        let v = x.symbols().iter().enumerate().map(|(j, &v)| v + (j >= from) as u64);
                        Sequence::new(v.collect(), m).expect("within m")
                    } else {
                        random_increasing(n, m, &mut g).map_err(|e| e.to_string())?
                    };
                    if s.iter().any(|i| x.symbols()[i - 1] != y.symbols()[i - 1]) {
                        break y;
                    }
                };
                let d = build_distinguisher(&x, &y, &s, m, DEFAULT_C).map_err(|e| format!("n={n} #{i}: {e}"))?;
                // Independent re-check of every postcondition.
                let (xt, yt) = (d.x_tilde.symbols(), d.y_tilde.symbols());
                let on_s = s.iter().all(|i| xt[i - 1] == x.symbols()[i - 1] && yt[i - 1] == y.symbols()[i - 1]);
                let off_s = (1..=n).filter(|i| !s.contains(*i)).all(|i| xt[i - 1] == yt[i - 1]);
                let range = xt.iter().chain(yt).all(|&v| v <= m + 1);
                let gap = lis_dp(&d.x_tilde).abs_diff(lis_dp(&d.y_tilde)) == 1;
                if on_s && off_s && range && gap {
                    Ok(d.case)
                } else {
                    Err(format!("n={n} #{i}: on_s {on_s} off_s {off_s} range {range} gap {gap}"))
                }
            })
            .collect();
        for res in results {
            if let Ok(c) = &res {
                cases[*c as usize - 1] += 1;
            }
            r.check(res.is_ok(), || res.err().unwrap_or_default());
        }
    }
    r.metric("ns", &ns);
    r.metric("triples_per_n", count);
    r.metric("c", DEFAULT_C);
    r.probe("first_disagreement_case", cases[0]);
    r.probe("last_disagreement_case", cases[1]);
    Ok(r)
}

fn claim2(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("claim2");
    let n = cfg.n.unwrap_or(10);
    let m = cfg.m.unwrap_or(1000);
    let k = cfg.k.unwrap_or(n / 5);
    let target = cfg.count.unwrap_or(8);
    let budget = cfg.budget.unwrap_or(100_000);
    match search_separated_family(n, m, k, target, cfg.seed, budget) {
        Ok(fam) => {
            r.metric("family_size", fam.len());
            r.check(fam.len() >= target, || format!("family of {} < {target}", fam.len()));
            let ok = verify_separated_family(&fam.members, k)?;
            r.check(ok, || "family fails exhaustive separation check".into());
            let doubled = verify_separated_family(&fam.doubled().members, k)?;
            r.check(doubled, || "doubled family fails separation check".into());
            let binom = (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128);
            r.metric("subsets_checked", binom);
            r.metric("pairs_checked", fam.len() * (fam.len() - 1) / 2);
        }
        Err(fail) => {
            r.metric("family_size", fail.largest.len());
            r.check(false, || fail.to_string());
        }
    }
    r.metric("n", n);
    r.metric("m", m);
    r.metric("k", k);
    r.metric("budget", budget);
    Ok(r)
}

/// All size-`k` subsets of `[m]`.
pub fn k_subsets(m: usize, k: usize) -> Vec<IndexSet> {
    (0u64..1 << m)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| IndexSet::new((1..=m).filter(|i| s >> (i - 1) & 1 == 1).collect()).expect("sorted"))
        .collect()
}

fn disj(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("disj");
    let m = cfg.m.unwrap_or(4) as usize;
    let k = cfg.k.unwrap_or(2);
    if 2 * m + 1 > crate::lis::EXHAUSTIVE_MAX_LEN {
        return Err(Error::TooLarge(format!("m = {m} exceeds the exhaustive oracle")));
    }
    let subsets = k_subsets(m, k);
    let mut disjoint = 0;
    for a in &subsets {
        for b in &subsets {
            let x = disj_gadget(&characteristic(a, m)?, &characteristic(b, m)?)?;
            let l = lis_exhaustive(&x)?;
            let dis = a.is_disjoint(b);
            disjoint += dis as u64;
            r.check((l == 2 * k + 1) == dis, || {
                format!("A={:?} B={:?}: lis {l}, disjoint {dis}", a.as_slice(), b.as_slice())
            });
        }
    }
    r.metric("pairs", subsets.len() * subsets.len());
    r.metric("disjoint_pairs", disjoint);
    Ok(r)
}

fn es(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("es");
    let n = cfg.n.unwrap_or(5);
    let (rr, ss) = (cfg.k.unwrap_or(3), cfg.k.unwrap_or(3));
    let perms = permutations(n);
    for p in &perms {
        let x = Sequence::from_symbols(p.clone());
        match es_witness(&x, rr, ss) {
            Ok(w) => {
                let vals: Vec<u64> = w.indices().iter().map(|i| p[i - 1]).collect();
                let ok = match &w {
                    Monotone::Increasing(_) => vals.len() >= rr && vals.windows(2).all(|v| v[0] < v[1]),
                    Monotone::Decreasing(_) => vals.len() >= ss && vals.windows(2).all(|v| v[0] > v[1]),
                };
                r.check(ok, || format!("{p:?}: invalid witness {w:?}"));
            }
            Err(e) => r.check(false, || format!("{p:?}: {e}")),
        }
    }
    r.metric("permutations", perms.len());
    r.metric("r", rr);
    r.metric("s", ss);
    Ok(r)
}

fn random_orders(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("random-order");
    let n = cfg.n.unwrap_or(128);
    let count = cfg.count.unwrap_or(1000);
    let m = cfg.k.unwrap_or(n / 32);
    let results: Vec<(bool, bool, usize)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let order = random_order(n, rng::derived(cfg.seed, i as u64).gen());
            let prefix = IndexSet::from_unsorted((1..=n / 2).map(|s| order.pi(s)).collect()).expect("distinct");
            match type1_witness(&order, m) {
                Some(w) => (true, verify_type1(&order, &w), interval_count(&prefix)),
                None => (false, true, interval_count(&prefix)),
            }
        })
        .collect();
    let found = results.iter().filter(|x| x.0).count();
    for (i, &(_, verified, _)) in results.iter().enumerate() {
        r.check(verified, || format!("order {i}: witness fails verification"));
    }
    let rate = found as f64 / count.max(1) as f64;
    r.check(100 * found >= 99 * count, || format!("success rate {rate} below 0.99"));
    let mean_g = results.iter().map(|x| x.2 as f64).sum::<f64>() / count.max(1) as f64;
    r.metric("n", n);
    r.metric("m", m);
    r.metric("orders", count);
    r.metric("witnesses_found", found);
    r.metric("success_rate", rate);
    r.probe("mean_interval_count", mean_g);
    Ok(r)
}

fn fooling(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("fooling");
    let n = cfg.n.unwrap_or(64);
    let game = type1_game(n, type1_code(n, cfg.seed)?)?;
    let diag = game.diagonal()?;
    let cert = check_fooling_set(&game, &diag, Outcome::One, cfg.budget.unwrap_or(1 << 24), cfg.seed);
    r.check(cert.is_valid(), || format!("type-1 certificate violations: {:?}", cert.violations));
    r.check(cert.mode == Mode::Exhaustive, || "type-1 certificate was sampled".into());
    r.check(cert.bound_bits == ceil_log2(diag.len()) && cert.bound_bits >= 4, || {
        format!("bound {} bits for |S| = {}", cert.bound_bits, diag.len())
    });
    r.check(recheck_fooling_set(&game, &diag, Outcome::One), || "sequential re-check failed".into());
    r.metric("type1_certificate", &cert);

    let chains = cfg.count.unwrap_or(100);
    let side = 32;
    let results: Vec<std::result::Result<usize, String>> = (0..chains)
        .into_par_iter()
        .map(|i| {
            let mut g = rng::derived(cfg.seed ^ 0xc4a1, i as u64);
            let mut a = Matrix::zeros(side, side);
            for j in 1..=side {
                let ones = g.gen_range(side / 4..=side / 2);
                let mut rows: Vec<usize> = (1..=side).collect();
                rows.shuffle(&mut g);
                for &row in &rows[..ones] {
                    a.set(row, j, 1);
                }
            }
            let chain = matrix_chain(&a).map_err(|e| format!("matrix {i}: {e}"))?;
            let monotone = chain.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
            let ones = chain.iter().all(|&(x, y)| a.get(x, y) == 1);
            if monotone && ones && chain.len() >= chain_bound(side, side) {
                Ok(chain.len())
            } else {
                Err(format!("matrix {i}: chain {chain:?}"))
            }
        })
        .collect();
    let shortest = results.iter().filter_map(|x| x.as_ref().ok()).min().copied();
    r.absorb(results.into_iter().map(|x| x.map(|_| ())).collect());
    r.metric("chain_matrices", chains);
    r.metric("chain_bound", chain_bound(side, side));
    r.probe("shortest_chain", shortest);

    let pq = cfg.p.unwrap_or(128);
    let game2 = type2_game(pq, pq, cfg.seed)?;
    let diag2 = game2.sampled_diagonal(6, cfg.seed);
    let cert2 = check_fooling_set(&game2, &diag2, Outcome::One, 1 << 20, cfg.seed);
    r.check(cert2.is_valid(), || format!("type-2 certificate violations: {:?}", cert2.violations));
    r.metric("type2_certificate", &cert2);
    Ok(r)
}

/// Text artifacts from every generator for one seed.
pub fn artifacts(seed: u64) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    let code = type1_code(64, seed)?;
    out.push(("type1_code".into(), code.to_text()?));
    let mut g = rng::seeded(seed);
    let (u, v) = sample_pair_from(&code, &mut g)?;
    let inst = build_z(&u, &v)?;
    out.push(("z_uv".into(), inst.z_uv.to_text()));
    out.push(("z_vu".into(), inst.z_vu.to_text()));
    out.push(("type1_sidecar".into(), serde_json::to_string(&sidecar(&inst, None)).expect("serializable")));
    let (inner, outer) = type2_codes(4, 4, seed)?;
    out.push(("type2_inner".into(), inner.to_text()?));
    out.push(("type2_outer".into(), outer.to_text()?));
    let (a, b) = sample_pair_from(&outer, &mut g)?;
    let grid = build_matrix(&a, &b, &inner)?;
    out.push(("type2_matrix".into(), grid.m.to_text()));
    out.push(("type2_sigma".into(), grid.sigma.to_text()));
    let order = random_order(128, seed);
    out.push(("random_order".into(), order.to_text()));
    let w = type1_witness(&order, 4);
    out.push(("type1_witness".into(), serde_json::to_string(&w).expect("serializable")));
    let fam = search_separated_family(10, 1000, 2, 8, seed, 100_000).map_err(|e| Error::CodeSearch(e.to_string()))?;
    out.push(("family".into(), serde_json::to_string(&fam).expect("serializable")));
    let x = random_increasing(10, 1000, &mut g)?;
    let y = random_increasing(10, 1000, &mut g)?;
    let s = IndexSet::full(10);
    let s = IndexSet::new(s.as_slice()[..2].to_vec())?;
    if s.iter().any(|i| x.symbols()[i - 1] != y.symbols()[i - 1]) {
        let d = build_distinguisher(&x, &y, &s, 1000, DEFAULT_C)?;
        out.push(("distinguisher".into(), serde_json::to_string(&d).expect("serializable")));
    }
    out.push(("patience_program".into(), patience_program(3, 3)?.to_json()));
    let game = type1_game(64, code)?;
    let cert = check_fooling_set(&game, &game.diagonal()?, Outcome::One, 1 << 20, seed);
    out.push(("certificate".into(), crate::comm::certificate_report(&cert).1.to_string()));
    Ok(out)
}

fn determinism(cfg: &Config) -> Result<Report> {
    let mut r = Report::new("determinism");
    let first = artifacts(cfg.seed)?;
    let second = artifacts(cfg.seed)?;
    r.check(first.len() == second.len(), || "artifact lists differ in length".into());
    for ((name, a), (_, b)) in first.iter().zip(&second) {
        r.check(a == b, || format!("{name} differs between runs"));
    }
    let other = artifacts(cfg.seed.wrapping_add(1))?;
    let differing = first.iter().zip(&other).filter(|(a, b)| a.1 != b.1).count();
    r.metric("artifacts", first.len());
    r.probe("artifacts_changed_by_seed", differing);
    let a = run("oracles", &Config { count: Some(200), ..cfg.clone() })?;
    let b = run("oracles", &Config { count: Some(200), ..cfg.clone() })?;
    r.check(a.without_timing() == b.without_timing(), || "suite reports differ between runs".into());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_count() {
        let p = permutations(5);
        assert_eq!(p.len(), 120);
        assert_eq!(p[0], vec![1, 2, 3, 4, 5]);
        assert_eq!(p[119], vec![5, 4, 3, 2, 1]);
        assert_eq!(permutations(0), vec![Vec::<u64>::new()]);
    }

    #[test]
    fn small_suites_pass() {
        for suite in ["keys", "disj", "es", "claim2"] {
            let rep = run(suite, &Config::default()).unwrap();
            assert!(rep.passed, "{suite}: {:?}", rep.violations);
        }
        let rep = run("oracles", &Config { count: Some(100), ..Config::default() }).unwrap();
        assert!(rep.passed && rep.checked == 220);
        assert!(run("nope", &Config::default()).is_err());
    }

    #[test]
    fn failures_are_reported() {
        // k = 1 has pairs with lis 3 = 2k+1 only when disjoint, but k = 3 at
        // m = 4 forces intersections.
        let rep = run("disj", &Config { k: Some(3), ..Config::default() }).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.metrics["disjoint_pairs"], 0);
        let rep = run("random-order", &Config { n: Some(32), k: Some(8), count: Some(50), ..Config::default() }).unwrap();
        assert!(!rep.passed);
        assert!(rep.violation_count >= 1);
    }
}
