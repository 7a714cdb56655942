//! `lis-lab`: generate adversarial LIS instances, run the verification suites
//! and emit JSON or CSV reports.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};

use lis_lab::ecc::BlockCode;
use lis_lab::gadget1::{build_z, characteristic, disj_gadget, embed_in_order, sidecar, type1_code, type1_gap};
use lis_lab::gadget2::{build_matrix, grid_max_weight, type2_bounds, type2_codes};
use lis_lab::lis::{distance_to_monotonicity, lds, lis, lis_exhaustive, Sequence};
use lis_lab::order::{random_order, type1_witness};
use lis_lab::robp::{
    check_computes_lis, check_read_once, patience_program, search_separated_family, verify_separated_family,
    BranchingProgram,
};
use lis_lab::suites::{self, Config, Report};
use lis_lab::{rng, IndexSet};

#[derive(Parser)]
#[command(name = "lis-lab", version, about = "Adversarial LIS instances and their brute-force verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print lis, lds and distance to monotonicity of a sequence file.
    Lis { file: PathBuf },
    /// Generate an instance: sequence/matrix files plus a JSON sidecar.
    Gen {
        kind: GenKind,
        #[command(flatten)]
        params: Params,
        /// type1 only: also embed z_uv in a random stream order.
        #[arg(long)]
        embed: bool,
    },
    /// Run a verification suite; exits nonzero iff an assertion fails.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
        #[command(flatten)]
        params: Params,
    },
    /// Measure the gadget gap over a range of sizes.
    Sweep {
        kind: SweepKind,
        #[command(flatten)]
        params: Params,
    },
    /// Validate a branching program JSON file.
    Bp {
        file: PathBuf,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Type1,
    Type2,
    Disj,
    Family,
    Program,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Type1,
    Type2,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

fn positive_usize(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> std::result::Result<u64, String> {
    positive_usize(s).map(|v| v as u64)
}

#[derive(Args, Clone)]
struct Params {
    #[arg(long, value_parser = positive_usize)]
    n: Option<usize>,
    #[arg(long, value_parser = positive_u64)]
    m: Option<u64>,
    #[arg(long, value_parser = positive_usize)]
    p: Option<usize>,
    #[arg(long, value_parser = positive_usize)]
    q: Option<usize>,
    #[arg(long, value_parser = positive_usize)]
    k: Option<usize>,
    /// Branching factor (alphabet size) of a branching program.
    #[arg(long = "R", value_parser = positive_u64)]
    r: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = positive_usize)]
    count: Option<usize>,
    #[arg(long, value_parser = positive_u64)]
    budget: Option<u64>,
    /// Output file (verify, sweep, bp) or directory (gen).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl Params {
    fn config(&self) -> Config {
        Config {
            seed: self.seed,
            n: self.n,
            m: self.m,
            p: self.p,
            q: self.q,
            k: self.k,
            count: self.count,
            budget: self.budget,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(t) = std::env::var("LIS_LAB_THREADS") {
        match t.parse::<usize>() {
            Ok(t) if t > 0 => {
                if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
                    eprintln!("warning: could not cap threads: {e}");
                }
            }
            _ => {
                eprintln!("error: LIS_LAB_THREADS must be a positive integer, got {t:?}");
                return ExitCode::from(2);
            }
        }
    }
    let outcome = match cli.cmd {
        Cmd::Lis { file } => cmd_lis(&file),
        Cmd::Gen { kind, params, embed } => cmd_gen(kind, &params, embed),
        Cmd::Verify { suite, params } => cmd_verify(&suite, &params),
        Cmd::Sweep { kind, params } => cmd_sweep(kind, &params),
        Cmd::Bp { file, params } => cmd_bp(&file, &params),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_lis(file: &Path) -> Result<bool> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let x = Sequence::parse(&text).with_context(|| format!("parsing {}", file.display()))?;
    println!("lis={}", lis(&x));
    println!("lds={}", lds(&x));
    println!("d_m={}", distance_to_monotonicity(&x));
    Ok(true)
}

/// Writes `text` to `path`, or to stdout when no path is given.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Renders rows of flat JSON objects as CSV with the given columns.
fn to_csv(columns: &[&str], rows: &[Value]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns)?;
    for row in rows {
        w.write_record(columns.iter().map(|c| match &row[*c] {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        }))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

struct GenOut {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl GenOut {
    fn new(params: &Params) -> Result<GenOut> {
        let dir = params.out.clone().unwrap_or_else(|| PathBuf::from("."));
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(GenOut { dir, written: Vec::new() })
    }

    fn write(&mut self, name: &str, text: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        self.written.push(path);
        Ok(())
    }

    fn finish(self) {
        for p in self.written {
            println!("{}", p.display());
        }
    }
}

/// Two distinct codeword indices drawn from `seed`.
fn pick_pair(code: &BlockCode, seed: u64) -> Result<(u128, u128)> {
    let size = code.size().context("code too large to index")?;
    if size < 2 {
        bail!("code has fewer than two codewords");
    }
    let mut g = rng::seeded(seed);
    let a = g.gen_range(0..size);
    let b = (a + g.gen_range(1..size)) % size;
    Ok((a, b))
}

fn cmd_gen(kind: GenKind, params: &Params, embed: bool) -> Result<bool> {
    let mut out = GenOut::new(params)?;
    let seed = params.seed;
    match kind {
        GenKind::Type1 => {
            let n = params.n.unwrap_or(64);
            let code = type1_code(n, seed)?;
            let (a, b) = pick_pair(&code, seed)?;
            let inst = build_z(&code.word(a)?, &code.word(b)?)?;
            out.write("z_uv.txt", &inst.z_uv.to_text())?;
            out.write("z_vu.txt", &inst.z_vu.to_text())?;
            let mut witness = None;
            if embed {
                let order = random_order(16 * inst.len(), seed);
                let w = type1_witness(&order, 2 * inst.blocks())
                    .context("no type-1 witness found in the random order; try another seed")?;
                out.write("order.txt", &order.to_text())?;
                out.write("x.txt", &embed_in_order(&inst, &order, &w)?.to_text())?;
                witness = Some(w);
            }
            let (lb, ub) = type1_gap(n)?;
            let side = json!({
                "kind": "type1",
                "seed": seed,
                "u_index": a.to_string(),
                "v_index": b.to_string(),
                "code": code.summary(),
                "expected_bounds": [lb, ub],
                "instance": sidecar(&inst, witness.as_ref()),
            });
            out.write("type1.json", &pretty(&side))?;
        }
        GenKind::Type2 => {
            let (p, q) = (params.p.unwrap_or(2), params.q.unwrap_or(2));
            let (inner, outer) = type2_codes(p, q, seed)?;
            let (a, b) = pick_pair(&outer, seed)?;
            let inst = build_matrix(&outer.word(a)?, &outer.word(b)?, &inner)?;
            let (ub, lb) = type2_bounds(p, q)?;
            let (weight, path) = grid_max_weight(&inst.m)?;
            out.write("matrix.txt", &inst.m.to_text())?;
            out.write("sigma.txt", &inst.sigma.to_text())?;
            let side = json!({
                "kind": "type2",
                "seed": seed,
                "p": p,
                "q": q,
                "rows": inst.m.rows(),
                "cols": inst.m.cols(),
                "u_index": a.to_string(),
                "v_index": b.to_string(),
                "u": inst.u,
                "v": inst.v,
                "inner": inner.summary(),
                "outer": outer.summary(),
                "equal_upper_bound": ub,
                "unequal_lower_bound": lb,
                "max_path_weight": weight,
                "max_path": path.cells,
                "lis_sigma_nonzero": lis(&inst.sigma.without_zeros()),
            });
            out.write("type2.json", &pretty(&side))?;
        }
        GenKind::Disj => {
            let m = params.m.unwrap_or(4) as usize;
            let k = params.k.unwrap_or(2);
            if k > m {
                bail!("k = {k} exceeds m = {m}");
            }
            let mut g = rng::seeded(seed);
            let mut subset = || {
                IndexSet::from_unsorted(rand::seq::index::sample(&mut g, m, k).into_iter().map(|i| i + 1).collect())
            };
            let (sa, sb) = (subset()?, subset()?);
            let x = disj_gadget(&characteristic(&sa, m)?, &characteristic(&sb, m)?)?;
            let l = lis(&x);
            let exhaustive = lis_exhaustive(&x).ok();
            let disjoint = sa.is_disjoint(&sb);
            out.write("disj.txt", &x.to_text())?;
            let side = json!({
                "kind": "disj",
                "seed": seed,
                "m": m,
                "k": k,
                "a": sa.as_slice(),
                "b": sb.as_slice(),
                "disjoint": disjoint,
                "lis": l,
                "lis_exhaustive": exhaustive,
                "disjoint_iff_lis_is_2k_plus_1": (l == 2 * k + 1) == disjoint,
            });
            out.write("disj.json", &pretty(&side))?;
        }
        GenKind::Family => {
            let n = params.n.unwrap_or(10);
            let m = params.m.unwrap_or(1000);
            let k = params.k.unwrap_or(n / 5);
            let target = params.count.unwrap_or(8);
            let budget = params.budget.unwrap_or(100_000);
            let fam = search_separated_family(n, m, k, target, seed, budget)?;
            let verified = verify_separated_family(&fam.members, k)?;
            let seqs: Vec<String> = fam.members.iter().map(|s| s.to_text()).collect();
            out.write("family.txt", &seqs.concat())?;
            let side = json!({
                "kind": "family",
                "seed": seed,
                "budget": budget,
                "target": target,
                "verified": verified,
                "family": fam,
            });
            out.write("family.json", &pretty(&side))?;
        }
        GenKind::Program => {
            let n = params.n.unwrap_or(3);
            let r = params.r.unwrap_or(3);
            let bp = patience_program(n, r)?;
            out.write("program.json", &(bp.to_json() + "\n"))?;
        }
    }
    out.finish();
    Ok(true)
}

const VERIFY_COLUMNS: &[&str] = &["suite", "seed", "passed", "checked", "violation_count", "elapsed_ms"];

fn cmd_verify(suite: &str, params: &Params) -> Result<bool> {
    let report: Report = suites::run(suite, &params.config())?;
    let text = match params.format {
        Format::Json => pretty(&report),
        Format::Csv => {
            let mut row = serde_json::to_value(&report)?;
            row["seed"] = json!(params.seed);
            to_csv(VERIFY_COLUMNS, &[row])?
        }
    };
    emit(params.out.as_deref(), &text)?;
    eprintln!(
        "{} {}: {} checks, {} violations",
        if report.passed { "PASS" } else { "FAIL" },
        report.suite,
        report.checked,
        report.violation_count
    );
    for v in &report.violations {
        eprintln!("  {v}");
    }
    Ok(report.passed)
}

const TYPE1_SWEEP_COLUMNS: &[&str] = &[
    "n",
    "seed",
    "code_size",
    "code_distance",
    "equal_lower_bound",
    "unequal_upper_bound",
    "min_equal_lis",
    "max_unequal_lis",
    "separated",
];

const TYPE2_SWEEP_COLUMNS: &[&str] = &[
    "p",
    "q",
    "seed",
    "inner_size",
    "outer_size",
    "equal_upper_bound",
    "unequal_lower_bound",
    "max_equal_weight",
    "min_unequal_weight",
    "pairs",
    "separated",
];

fn sweep_type1(params: &Params) -> Result<Vec<Value>> {
    let max_n = params.n.unwrap_or(128);
    let max_words = params.count.unwrap_or(64);
    let mut rows = Vec::new();
    let mut n = 32;
    while n <= max_n {
        let code = type1_code(n, params.seed)?;
        let (lb, ub) = type1_gap(n)?;
        let take = code.size().map_or(max_words as u128, |s| s.min(max_words as u128));
        let words = (0..take).map(|i| code.word(i)).collect::<lis_lab::Result<Vec<_>>>()?;
        let z = |a: &[u32], b: &[u32]| -> Result<usize> { Ok(lis(&build_z(a, b)?.z_uv)) };
        let mut min_equal = usize::MAX;
        let mut max_unequal = 0;
        for (i, u) in words.iter().enumerate() {
            min_equal = min_equal.min(z(u, u)?);
            for v in &words[i + 1..] {
                max_unequal = max_unequal.max(z(u, v)?.min(z(v, u)?));
            }
        }
        rows.push(json!({
            "n": n,
            "seed": params.seed,
            "code_size": code.size().map(|s| s.to_string()),
            "code_distance": code.verified_distance(),
            "equal_lower_bound": lb,
            "unequal_upper_bound": ub,
            "min_equal_lis": min_equal,
            "max_unequal_lis": max_unequal,
            "separated": min_equal > max_unequal,
        }));
        n *= 2;
    }
    Ok(rows)
}

fn sweep_type2(params: &Params) -> Result<Vec<Value>> {
    let max_p = params.p.unwrap_or(32);
    let pairs = params.count.unwrap_or(20);
    let mut rows = Vec::new();
    let mut p = 2;
    while p <= max_p {
        let q = params.q.unwrap_or(p);
        let (inner, outer) = type2_codes(p, q, params.seed)?;
        let (ub, lb) = type2_bounds(p, q)?;
        let mut g = rng::seeded(params.seed);
        let (mut max_equal, mut min_unequal) = (0, usize::MAX);
        for _ in 0..pairs {
            let (u, v) = lis_lab::ecc::sample_pair_from(&outer, &mut g)?;
            max_equal = max_equal.max(grid_max_weight(&build_matrix(&u, &u, &inner)?.m)?.0);
            min_unequal = min_unequal.min(grid_max_weight(&build_matrix(&u, &v, &inner)?.m)?.0);
        }
        rows.push(json!({
            "p": p,
            "q": q,
            "seed": params.seed,
            "inner_size": inner.size().map(|s| s.to_string()),
            "outer_size": outer.size().map(|s| s.to_string()),
            "equal_upper_bound": ub,
            "unequal_lower_bound": lb,
            "max_equal_weight": max_equal,
            "min_unequal_weight": min_unequal,
            "pairs": pairs,
            "separated": max_equal < min_unequal,
        }));
        p *= 2;
    }
    Ok(rows)
}

fn cmd_sweep(kind: SweepKind, params: &Params) -> Result<bool> {
    let (rows, columns) = match kind {
        SweepKind::Type1 => (sweep_type1(params)?, TYPE1_SWEEP_COLUMNS),
        SweepKind::Type2 => (sweep_type2(params)?, TYPE2_SWEEP_COLUMNS),
    };
    let text = match params.format {
        Format::Json => pretty(&rows),
        Format::Csv => to_csv(columns, &rows)?,
    };
    emit(params.out.as_deref(), &text)?;
    Ok(true)
}

fn cmd_bp(file: &Path, params: &Params) -> Result<bool> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let bp = BranchingProgram::from_json(&text)?;
    let round_trip = BranchingProgram::from_json(&bp.to_json())? == bp;
    let read_once = check_read_once(&bp)?;
    let computes_lis = match (params.n, params.r) {
        (Some(n), Some(r)) => Some(check_computes_lis(&bp, n, r)?),
        _ => None,
    };
    let report = json!({
        "file": file.display().to_string(),
        "alphabet": bp.alphabet,
        "levels": bp.levels.len(),
        "size": bp.size(),
        "round_trip": round_trip,
        "read_once": read_once,
        "computes_lis": computes_lis,
    });
    let text = match params.format {
        Format::Json => pretty(&report),
        Format::Csv => to_csv(&["file", "alphabet", "levels", "size", "round_trip", "read_once", "computes_lis"], &[report])?,
    };
    emit(params.out.as_deref(), &text)?;
    Ok(round_trip && computes_lis != Some(false))
}
