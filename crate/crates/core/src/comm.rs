//! Two-party game functions, fooling-set certificates, and the games built
//! from the type-1 and type-2 gadgets.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::ecc::{sample_from, BlockCode};
use crate::gadget1::{build_z, type1_gap};
use crate::gadget2::{build_matrix_from_words, grid_max_weight, type2_bounds, type2_codes};
use crate::lis::lis;
use crate::{rng, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Zero,
    One,
    /// The input fell strictly between the two thresholds.
    Invalid,
}

/// `f: X x X -> {0, 1, Invalid}`; deterministic and total.
pub trait GameFunction: Sync {
    type Input: Clone + PartialEq + Send + Sync + Serialize;

    fn name(&self) -> String;
    fn params(&self) -> Value;
    fn eval(&self, x: &Self::Input, y: &Self::Input) -> Outcome;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { pairs: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Member `index` of the set does not evaluate to the common value.
    Member { index: usize, got: Outcome },
    /// Both crosses of members `a` and `b` evaluate to the common value.
    Cross { a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoolingCertificate {
    pub game: String,
    pub params: Value,
    pub set_size: usize,
    pub value: Outcome,
    pub bound_bits: u32,
    pub mode: Mode,
    pub seed: u64,
    pub violations: Vec<Violation>,
}

impl FoolingCertificate {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `ceil(log2(t))`, with 0 for `t <= 1`.
pub fn ceil_log2(t: usize) -> u32 {
    if t <= 1 {
        0
    } else {
        usize::BITS - (t - 1).leading_zeros()
    }
}

/// Checks that every member evaluates to `z` and that for every two members
/// `(x1, y1), (x2, y2)` at least one cross `f(x1, y2)`, `f(x2, y1)` differs
/// from `z`. All unordered member pairs are checked when `|S|^2 <= budget`;
/// otherwise `budget` pairs are sampled with `seed`.
pub fn check_fooling_set<G: GameFunction>(
    f: &G,
    set: &[(G::Input, G::Input)],
    z: Outcome,
    budget: u64,
    seed: u64,
) -> FoolingCertificate {
    let mut violations: Vec<Violation> = set
        .par_iter()
        .enumerate()
        .filter_map(|(index, (x, y))| {
            let got = f.eval(x, y);
            (got != z).then_some(Violation::Member { index, got })
        })
        .collect();
    let t = set.len();
    let cross_fails = |a: usize, b: usize| {
        let (x1, y1) = &set[a];
        let (x2, y2) = &set[b];
        f.eval(x1, y2) == z && f.eval(x2, y1) == z
    };
    let square = (t as u128) * (t as u128);
    let mode = if square <= budget as u128 {
        violations.extend(
            (0..t)
                .into_par_iter()
                .flat_map_iter(|a| (a + 1..t).map(move |b| (a, b)))
                .filter(|&(a, b)| cross_fails(a, b))
                .map(|(a, b)| Violation::Cross { a, b })
                .collect::<Vec<_>>(),
        );
        Mode::Exhaustive
    } else {
        let mut rng = rng::seeded(seed);
        let pairs: Vec<(usize, usize)> = (0..budget)
            .map(|_| loop {
                let (a, b) = (rng.gen_range(0..t), rng.gen_range(0..t));
                if a != b {
                    break (a.min(b), a.max(b));
                }
            })
            .collect();
        let mut found: Vec<(usize, usize)> = pairs.into_par_iter().filter(|&(a, b)| cross_fails(a, b)).collect();
        found.sort_unstable();
        found.dedup();
        violations.extend(found.into_iter().map(|(a, b)| Violation::Cross { a, b }));
        Mode::Sampled { pairs: budget }
    };
    FoolingCertificate {
        game: f.name(),
        params: f.params(),
        set_size: t,
        value: z,
        bound_bits: ceil_log2(t),
        mode,
        seed,
        violations,
    }
}

/// Independent sequential re-check of the fooling-set definition over all
/// ordered member pairs.
pub fn recheck_fooling_set<G: GameFunction>(f: &G, set: &[(G::Input, G::Input)], z: Outcome) -> bool {
    for (i, (x1, y1)) in set.iter().enumerate() {
        if f.eval(x1, y1) != z {
            return false;
        }
        for (j, (x2, y2)) in set.iter().enumerate() {
            if i != j && f.eval(x1, y2) == z && f.eval(x2, y1) == z {
                return false;
            }
        }
    }
    true
}

/// Human-readable summary plus the JSON record.
pub fn certificate_report(cert: &FoolingCertificate) -> (String, Value) {
    let mode = match &cert.mode {
        Mode::Exhaustive => "exhaustive".to_string(),
        Mode::Sampled { pairs } => format!("sampled, {pairs} pairs, seed {}, not exhaustive", cert.seed),
    };
    let status = if cert.is_valid() {
        "valid".to_string()
    } else {
        format!("INVALID ({} violations)", cert.violations.len())
    };
    let text = format!(
        "{} {}: fooling set of size {} for value {:?} is {status} [{mode}]\n\
         deterministic communication >= {} bits; an R-pass streaming algorithm needs Omega({} / R) bits of memory\n",
        cert.game, cert.params, cert.set_size, cert.value, cert.bound_bits, cert.bound_bits
    );
    let record = json!({
        "game": cert.game,
        "params": cert.params,
        "set_size": cert.set_size,
        "bound_bits": cert.bound_bits,
        "mode": cert.mode,
        "seed": cert.seed,
        "violations": cert.violations,
    });
    (text, record)
}

/// Equality on `[0, size)`.
pub struct EqualityGame {
    pub size: u32,
}

impl GameFunction for EqualityGame {
    type Input = u32;

    fn name(&self) -> String {
        "equality".into()
    }

    fn params(&self) -> Value {
        json!({ "size": self.size })
    }

    fn eval(&self, x: &u32, y: &u32) -> Outcome {
        if x == y {
            Outcome::One
        } else {
            Outcome::Zero
        }
    }
}

/// `f(u, v) = 1` if `lis(z(u, v)) >= n/2`, `0` if it is at most
/// `floor(15n/32) + 1`.
pub struct Type1Game {
    n: usize,
    high: usize,
    low: usize,
    code: BlockCode,
}

pub fn type1_game(n: usize, code: BlockCode) -> Result<Type1Game> {
    let (high, low) = type1_gap(n)?;
    if code.alphabet_size() != 2 || code.length() != n / 4 {
        return Err(Error::Precondition(format!("type-1 game needs binary codewords of length {}", n / 4)));
    }
    if code.verified_distance() * 16 < n {
        return Err(Error::Precondition(format!(
            "code distance {} is below n/16 = {}",
            code.verified_distance(),
            n / 16
        )));
    }
    Ok(Type1Game { n, high, low, code })
}

impl Type1Game {
    pub fn code(&self) -> &BlockCode {
        &self.code
    }

    pub fn thresholds(&self) -> (usize, usize) {
        (self.high, self.low)
    }

    /// `{(u, u) : u in C}`.
    pub fn diagonal(&self) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
        Ok(self.code.enumerate(1 << 20)?.into_iter().map(|u| (u.clone(), u)).collect())
    }
}

impl GameFunction for Type1Game {
    type Input = Vec<u32>;

    fn name(&self) -> String {
        "type1".into()
    }

    fn params(&self) -> Value {
        json!({ "n": self.n, "code_distance": self.code.verified_distance(), "code_size": self.code.size() })
    }

    fn eval(&self, u: &Vec<u32>, v: &Vec<u32>) -> Outcome {
        let Ok(inst) = build_z(u, v) else { return Outcome::Invalid };
        let l = lis(&inst.z_uv);
        if l >= self.high {
            Outcome::One
        } else if l <= self.low {
            Outcome::Zero
        } else {
            Outcome::Invalid
        }
    }
}

/// `f(u, v) = 1` if the grid weight of `(u, v)` is at most the equal-word
/// ceiling, `0` if it reaches the distinct-word floor.
pub struct Type2Game {
    p: usize,
    q: usize,
    seed: u64,
    high: usize,
    low: usize,
    inner: BlockCode,
    outer: BlockCode,
}

pub fn type2_game(p: usize, q: usize, seed: u64) -> Result<Type2Game> {
    let (high, low) = type2_bounds(p, q)?;
    if low <= high {
        return Err(Error::Precondition(format!(
            "bounds ({high}, {low}) at p = {p}, q = {q} do not separate"
        )));
    }
    let (inner, outer) = type2_codes(p, q, seed)?;
    Ok(Type2Game {
        p,
        q,
        seed,
        high,
        low,
        inner,
        outer,
    })
}

impl Type2Game {
    pub fn codes(&self) -> (&BlockCode, &BlockCode) {
        (&self.inner, &self.outer)
    }

    pub fn thresholds(&self) -> (usize, usize) {
        (self.high, self.low)
    }

    pub fn weight(&self, u: &[u32], v: &[u32]) -> Result<usize> {
        let words = |w: &[u32]| -> Result<Vec<Vec<u32>>> { w.iter().map(|&s| self.inner.word(s as u128)).collect() };
        let m = build_matrix_from_words(&words(u)?, &words(v)?)?;
        Ok(grid_max_weight(&m)?.0)
    }

    /// Diagonal over `count` distinct sampled outer codewords.
    pub fn sampled_diagonal(&self, count: usize, seed: u64) -> Vec<(Vec<u32>, Vec<u32>)> {
        let mut rng = rng::seeded(seed);
        let mut words: Vec<Vec<u32>> = Vec::with_capacity(count);
        let limit = self.outer.size().map_or(count, |s| s.min(count as u128) as usize);
        while words.len() < limit {
            let w = sample_from(&self.outer, &mut rng);
            if !words.contains(&w) {
                words.push(w);
            }
        }
        words.into_iter().map(|w| (w.clone(), w)).collect()
    }
}

impl GameFunction for Type2Game {
    type Input = Vec<u32>;

    fn name(&self) -> String {
        "type2".into()
    }

    fn params(&self) -> Value {
        json!({ "p": self.p, "q": self.q, "seed": self.seed })
    }

    fn eval(&self, u: &Vec<u32>, v: &Vec<u32>) -> Outcome {
        match self.weight(u, v) {
            Ok(w) if w <= self.high => Outcome::One,
            Ok(w) if w >= self.low => Outcome::Zero,
            _ => Outcome::Invalid,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget1::type1_code;

    #[test]
    fn equality_diagonal() {
        let f = EqualityGame { size: 4 };
        let set: Vec<(u32, u32)> = (0..4).map(|x| (x, x)).collect();
        let cert = check_fooling_set(&f, &set, Outcome::One, 1000, 0);
        assert!(cert.is_valid());
        assert_eq!(cert.bound_bits, 2);
        assert_eq!(cert.mode, Mode::Exhaustive);
        assert!(recheck_fooling_set(&f, &set, Outcome::One));
    }

    #[test]
    fn violations_are_named() {
        let f = EqualityGame { size: 4 };
        // Crosses (0,3) and (2,1) are unequal too.
        let set = vec![(0, 1), (2, 3)];
        let cert = check_fooling_set(&f, &set, Outcome::Zero, 1000, 0);
        assert_eq!(cert.violations, vec![Violation::Cross { a: 0, b: 1 }]);
        assert!(!recheck_fooling_set(&f, &set, Outcome::Zero));
        let cert = check_fooling_set(&f, &[(0, 0), (1, 2)], Outcome::One, 1000, 0);
        assert_eq!(cert.violations, vec![Violation::Member { index: 1, got: Outcome::Zero }]);
    }

    #[test]
    fn sampled_mode_is_flagged() {
        let f = EqualityGame { size: 64 };
        let set: Vec<(u32, u32)> = (0..64).map(|x| (x, x)).collect();
        let cert = check_fooling_set(&f, &set, Outcome::One, 100, 9);
        assert_eq!(cert.mode, Mode::Sampled { pairs: 100 });
        let (text, record) = certificate_report(&cert);
        assert!(text.contains("not exhaustive"));
        assert_eq!(record["bound_bits"], 6);
        assert_eq!(record["mode"]["kind"], "sampled");
    }

    #[test]
    fn log_arithmetic() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(16), 4);
        assert_eq!(ceil_log2(17), 5);
        let f = EqualityGame { size: 16 };
        let set: Vec<(u32, u32)> = (0..16).map(|x| (x, x)).collect();
        let (text, _) = certificate_report(&check_fooling_set(&f, &set, Outcome::One, 1 << 20, 0));
        assert!(text.contains(">= 4 bits"));
    }

    #[test]
    fn type1_diagonal_is_fooling() {
        let game = type1_game(64, type1_code(64, 1).unwrap()).unwrap();
        let diag = game.diagonal().unwrap();
        assert!(diag.len() >= 16);
        let words: Vec<&Vec<u32>> = diag.iter().map(|(u, _)| u).collect();
        for u in &words {
            for v in &words {
                let out = game.eval(u, v);
                assert_ne!(out, Outcome::Invalid);
                if u == v {
                    assert_eq!(out, Outcome::One);
                } else {
                    assert!(out == Outcome::Zero || game.eval(v, u) == Outcome::Zero);
                }
            }
        }
        let cert = check_fooling_set(&game, &diag, Outcome::One, 1 << 20, 0);
        assert!(cert.is_valid());
        assert_eq!(cert.bound_bits, ceil_log2(diag.len()));
        assert!(recheck_fooling_set(&game, &diag, Outcome::One));
        assert!(type1_game(48, type1_code(64, 1).unwrap()).is_err());
    }

    #[test]
    fn type2_diagonal_at_separating_scale() {
        let game = type2_game(128, 128, 3).unwrap();
        assert_eq!(game.thresholds(), (1408, 1409));
        let diag = game.sampled_diagonal(6, 4);
        let cert = check_fooling_set(&game, &diag, Outcome::One, 1 << 20, 0);
        assert!(cert.is_valid(), "{:?}", cert.violations);
    }

    #[test]
    fn type2_game_requires_separation() {
        let err = type2_game(2, 2, 0).err().unwrap();
        assert!(err.to_string().contains("(22, 19)"));
    }
}
