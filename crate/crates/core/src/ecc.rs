//! Block codes with exhaustively verified minimum distance.
//!
//! Three codes feed the fooling sets: a binary code for the interleaving
//! gadget, a binary inner code, and an outer code whose alphabet is the set of
//! inner codewords. Inner codes are random linear codes redrawn until their
//! distance verifies; outer codes are Reed–Solomon codes over a prime field
//! whose elements are mapped injectively onto inner codewords.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::rng::{self, LabRng};
use crate::{Error, Result};

/// Number of generator matrices drawn before [`gen_inner_binary`] gives up.
pub const INNER_RETRY_BUDGET: usize = 2000;

/// Largest `|C|^2 * length` that [`min_distance`] will examine.
pub const PAIRWISE_BUDGET: u128 = 4_000_000_000;

/// Reed–Solomon codes with at most this many codewords are verified pairwise;
/// larger ones rely on the Singleton-tight algebraic distance plus sampling.
pub const OUTER_EXHAUSTIVE_MAX_SIZE: u128 = 4096;

/// Pairs drawn when a code is too large for pairwise verification.
pub const SAMPLED_PAIRS: usize = 1000;

/// How a code's distance was established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    /// Every pair of codewords was compared.
    Exhaustive,
    /// Reed–Solomon distance `q - k + 1`, spot-checked on sampled pairs.
    AlgebraicSampled { pairs: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ReedSolomon {
    prime: u64,
    dimension: usize,
    points: Vec<u64>,
    /// Field element -> alphabet symbol (an inner-codeword index).
    symbol_of: Vec<u32>,
}

impl ReedSolomon {
    fn encode(&self, message: &[u64]) -> Vec<u32> {
        self.points
            .iter()
            .map(|&a| {
                // Horner evaluation of sum message[i] * a^i.
                let v = message
                    .iter()
                    .rev()
                    .fold(0u64, |acc, &c| (acc * a + c) % self.prime);
                self.symbol_of[v as usize]
            })
            .collect()
    }

    fn message_from_index(&self, mut index: u128) -> Vec<u64> {
        (0..self.dimension)
            .map(|_| {
                let d = (index % self.prime as u128) as u64;
                index /= self.prime as u128;
                d
            })
            .collect()
    }

    fn random_message(&self, rng: &mut LabRng) -> Vec<u64> {
        (0..self.dimension)
            .map(|_| rng.gen_range(0..self.prime))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Explicit(Vec<Vec<u32>>),
    ReedSolomon(ReedSolomon),
}

/// A set of equal-length words over `[0, alphabet_size)` with a verified
/// minimum Hamming distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCode {
    alphabet_size: u64,
    length: usize,
    verified_distance: usize,
    verification: Verification,
    strategy: String,
    repr: Repr,
}

/// Serializable description of a generated code, including the desk-scale
/// parameters that were chosen for it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeSummary {
    pub alphabet_size: u64,
    pub length: usize,
    pub size: Option<u128>,
    pub log2_size: f64,
    pub rate: f64,
    pub verified_distance: usize,
    pub verification: Verification,
    pub strategy: String,
}

impl BlockCode {
    /// Builds an explicit code and verifies its distance pairwise.
    pub fn from_words(alphabet_size: u64, words: Vec<Vec<u32>>) -> Result<BlockCode> {
        let length = words
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::Precondition("a code needs at least one codeword".into()))?;
        if length == 0 {
            return Err(Error::Precondition("codeword length must be at least 1".into()));
        }
        for w in &words {
            if w.len() != length {
                return Err(Error::LengthMismatch {
                    left: length,
                    right: w.len(),
                });
            }
            if let Some(&s) = w.iter().find(|&&s| s as u64 >= alphabet_size) {
                return Err(Error::Precondition(format!(
                    "symbol {s} outside alphabet of size {alphabet_size}"
                )));
            }
        }
        let mut code = BlockCode {
            alphabet_size,
            length,
            verified_distance: length,
            verification: Verification::Exhaustive,
            strategy: "explicit".into(),
            repr: Repr::Explicit(words),
        };
        if code.codewords().map_or(0, <[_]>::len) >= 2 {
            let d = min_distance(&code)?;
            if d == 0 {
                return Err(Error::Precondition("codewords must be distinct".into()));
            }
            code.verified_distance = d;
        }
        Ok(code)
    }

    pub fn alphabet_size(&self) -> u64 {
        self.alphabet_size
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn verified_distance(&self) -> usize {
        self.verified_distance
    }

    pub fn strategy(&self) -> &str {
        &self.strategy
    }

    pub fn verification(&self) -> &Verification {
        &self.verification
    }

    /// Number of codewords, or `None` if it does not fit in a `u128`.
    pub fn size(&self) -> Option<u128> {
        match &self.repr {
            Repr::Explicit(w) => Some(w.len() as u128),
            Repr::ReedSolomon(rs) => (rs.prime as u128).checked_pow(rs.dimension as u32),
        }
    }

    pub fn log2_size(&self) -> f64 {
        match &self.repr {
            Repr::Explicit(w) => (w.len() as f64).log2(),
            Repr::ReedSolomon(rs) => rs.dimension as f64 * (rs.prime as f64).log2(),
        }
    }

    /// The codewords, when the code is stored explicitly.
    pub fn codewords(&self) -> Option<&[Vec<u32>]> {
        match &self.repr {
            Repr::Explicit(w) => Some(w),
            Repr::ReedSolomon(_) => None,
        }
    }

    /// The `index`-th codeword in a fixed enumeration order.
    pub fn word(&self, index: u128) -> Result<Vec<u32>> {
        let size = self.size();
        if size.is_some_and(|s| index >= s) {
            return Err(Error::IndexOutOfRange {
                index: index as usize,
                len: size.unwrap_or(0) as usize,
            });
        }
        Ok(match &self.repr {
            Repr::Explicit(w) => w[index as usize].clone(),
            Repr::ReedSolomon(rs) => rs.encode(&rs.message_from_index(index)),
        })
    }

    /// All codewords, refusing codes with more than `max_size` words.
    pub fn enumerate(&self, max_size: u128) -> Result<Vec<Vec<u32>>> {
        match self.size() {
            Some(s) if s <= max_size => (0..s).map(|i| self.word(i)).collect(),
            _ => Err(Error::TooLarge(format!(
                "code has about 2^{:.1} codewords (limit {max_size})",
                self.log2_size()
            ))),
        }
    }

    fn random_word(&self, rng: &mut LabRng) -> Vec<u32> {
        match &self.repr {
            Repr::Explicit(w) => w[rng.gen_range(0..w.len())].clone(),
            Repr::ReedSolomon(rs) => rs.encode(&rs.random_message(rng)),
        }
    }

    pub fn summary(&self) -> CodeSummary {
        let log2_size = self.log2_size();
        CodeSummary {
            alphabet_size: self.alphabet_size,
            length: self.length,
            size: self.size(),
            log2_size,
            rate: log2_size / (self.length as f64 * (self.alphabet_size as f64).log2().max(1.0)),
            verified_distance: self.verified_distance,
            verification: self.verification.clone(),
            strategy: self.strategy.clone(),
        }
    }

    /// Renders `alphabet length size distance` followed by one codeword per line.
    pub fn to_text(&self) -> Result<String> {
        let words = self.enumerate(u32::MAX as u128)?;
        let mut out = format!(
            "{} {} {} {}\n",
            self.alphabet_size,
            self.length,
            words.len(),
            self.verified_distance
        );
        for w in &words {
            let line = w.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            let _ = writeln!(out, "{line}");
        }
        Ok(out)
    }

    /// Parses the code file format and re-verifies the declared distance.
    pub fn parse(text: &str) -> Result<BlockCode> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::parse(hline + 1, e.to_string()))?;
        let [alphabet, length, size, distance] = nums[..] else {
            return Err(Error::parse(hline + 1, "header must be `alphabet length size distance`"));
        };
        let mut words = Vec::new();
        for (lineno, line) in lines {
            let w: Vec<u32> = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::parse(lineno + 1, e.to_string()))?;
            if w.len() as u64 != length {
                return Err(Error::parse(lineno + 1, format!("expected {length} symbols")));
            }
            words.push(w);
        }
        if words.len() as u64 != size {
            return Err(Error::parse(hline + 1, format!("declared {size} codewords, found {}", words.len())));
        }
        let code = BlockCode::from_words(alphabet, words)?;
        if (code.verified_distance as u64) < distance {
            return Err(Error::Precondition(format!(
                "declared distance {distance} but minimum distance is {}",
                code.verified_distance
            )));
        }
        Ok(code)
    }
}

pub fn hamming(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Exact minimum pairwise Hamming distance by comparing every pair.
pub fn min_distance(code: &BlockCode) -> Result<usize> {
    let size = code.size().unwrap_or(u128::MAX);
    if size < 2 {
        return Err(Error::Precondition("minimum distance needs at least 2 codewords".into()));
    }
    let work = size.saturating_mul(size).saturating_mul(code.length as u128);
    if work > PAIRWISE_BUDGET {
        return Err(Error::TooLarge(format!(
            "pairwise distance check of {size} codewords exceeds budget"
        )));
    }
    let owned;
    let words: &[Vec<u32>] = match code.codewords() {
        Some(w) => w,
        None => {
            owned = code.enumerate(size)?;
            &owned
        }
    };
    let mut best = code.length;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            best = best.min(hamming(&words[i], &words[j]));
        }
    }
    Ok(best)
}

/// Minimum distance over `pairs` sampled distinct pairs (an upper bound on
/// the true minimum distance).
pub fn sampled_min_distance(code: &BlockCode, pairs: usize, seed: u64) -> Result<usize> {
    let mut rng = rng::seeded(seed);
    let mut best = code.length;
    for _ in 0..pairs {
        let (a, b) = draw_distinct_pair(code, &mut rng)?;
        best = best.min(hamming(&a, &b));
    }
    Ok(best)
}

/// Random binary linear code of length `length` and dimension `min_log_size`
/// whose minimum distance is at least `distance`.
pub fn gen_inner_binary(length: usize, distance: usize, min_log_size: usize, seed: u64) -> Result<BlockCode> {
    if distance > length {
        return Err(Error::Precondition(format!(
            "distance {distance} exceeds codeword length {length}"
        )));
    }
    if min_log_size == 0 || min_log_size > length {
        return Err(Error::Precondition(format!(
            "dimension {min_log_size} must lie in 1..={length}"
        )));
    }
    if min_log_size > 20 {
        return Err(Error::TooLarge(format!("2^{min_log_size} codewords")));
    }
    let k = min_log_size;
    for attempt in 0..INNER_RETRY_BUDGET {
        let mut rng = rng::derived(seed, attempt as u64);
        let generator: Vec<Vec<u8>> = (0..k)
            .map(|_| (0..length).map(|_| rng.gen_range(0..2u8)).collect())
            .collect();
        let words: Vec<Vec<u32>> = (0..1usize << k)
            .map(|msg| {
                (0..length)
                    .map(|col| {
                        (0..k)
                            .filter(|&row| msg >> row & 1 == 1)
                            .fold(0u32, |acc, row| acc ^ generator[row][col] as u32)
                    })
                    .collect()
            })
            .collect();
        // Linear code: minimum distance equals the minimum nonzero weight,
        // and a zero-weight nonzero message means the generator is singular.
        let min_weight = words[1..]
            .iter()
            .map(|w| w.iter().filter(|&&b| b == 1).count())
            .min()
            .unwrap_or(length);
        if min_weight == 0 || min_weight < distance {
            continue;
        }
        let mut code = BlockCode::from_words(2, words)?;
        code.strategy = format!("random linear [{length},{k}] seed {seed} attempt {attempt}");
        if code.verified_distance < distance {
            return Err(Error::SelfCheck(format!(
                "linear weight {min_weight} disagrees with pairwise distance {}",
                code.verified_distance
            )));
        }
        return Ok(code);
    }
    Err(Error::CodeSearch(format!(
        "no binary [{length},{k}] code with distance >= {distance} in {INNER_RETRY_BUDGET} draws"
    )))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn next_prime(n: u64) -> u64 {
    (n.max(2)..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

/// Outer code of length `q` over the alphabet of `inner`'s codeword indices.
///
/// Reed–Solomon of dimension `min(floor(q/2), q + 1 - distance_target)` over the
/// smallest prime field of size at least `q`, whose elements map injectively to
/// inner codewords. When that field is larger than the inner code and `q <= 6`,
/// a greedy lexicographic code over the inner alphabet is used instead.
pub fn gen_outer(q: usize, inner: &BlockCode, distance_target: usize, seed: u64) -> Result<BlockCode> {
    let inner_size = inner.size().unwrap_or(u128::MAX);
    if q == 0 {
        return Err(Error::Precondition("outer length must be at least 1".into()));
    }
    if inner_size < q as u128 {
        return Err(Error::Precondition(format!(
            "inner code has {inner_size} codewords but the outer code needs at least q = {q} \
             distinct symbols to embed its evaluation alphabet"
        )));
    }
    if distance_target == 0 || distance_target > q {
        return Err(Error::Precondition(format!(
            "distance target {distance_target} must lie in 1..={q}"
        )));
    }
    let dimension = (q / 2).min(q + 1 - distance_target).max(1);
    let prime = next_prime(q as u64);
    let mut rng = rng::seeded(seed);
    let alphabet = inner_size.min(u32::MAX as u128) as u64;

    if (prime as u128) <= inner_size {
        let mut symbols: Vec<u32> = (0..alphabet as u32).collect();
        symbols.shuffle(&mut rng);
        symbols.truncate(prime as usize);
        let rs = ReedSolomon {
            prime,
            dimension,
            points: (0..q as u64).collect(),
            symbol_of: symbols,
        };
        let mut code = BlockCode {
            alphabet_size: alphabet,
            length: q,
            verified_distance: q + 1 - dimension,
            verification: Verification::Exhaustive,
            strategy: format!("reed-solomon [{q},{dimension}] over GF({prime}) seed {seed}"),
            repr: Repr::ReedSolomon(rs),
        };
        let size = code.size().unwrap_or(u128::MAX);
        if size <= OUTER_EXHAUSTIVE_MAX_SIZE {
            code.verified_distance = min_distance(&code)?;
        } else {
            let sampled = sampled_min_distance(&code, SAMPLED_PAIRS, seed ^ 0x5eed)?;
            if sampled < code.verified_distance {
                return Err(Error::SelfCheck(format!(
                    "sampled pair at distance {sampled} below algebraic distance {}",
                    code.verified_distance
                )));
            }
            code.verification = Verification::AlgebraicSampled { pairs: SAMPLED_PAIRS };
        }
        if code.verified_distance < distance_target {
            return Err(Error::SelfCheck(format!(
                "outer distance {} below target {distance_target}",
                code.verified_distance
            )));
        }
        return Ok(code);
    }

    if q > 6 {
        return Err(Error::CodeSearch(format!(
            "GF({prime}) does not embed into {inner_size} inner codewords and q = {q} is too long for greedy search"
        )));
    }
    gen_outer_greedy(q, inner, distance_target, seed)
}

/// Largest `|inner|^q` scanned by [`gen_outer_greedy`].
pub const GREEDY_MAX_WORDS: u128 = 1 << 16;

/// Greedy lexicographic outer code of length `q` over the inner codeword
/// indices, with symbols relabelled by a seeded shuffle. Works for any inner
/// size, including fewer than `q` codewords.
pub fn gen_outer_greedy(q: usize, inner: &BlockCode, distance_target: usize, seed: u64) -> Result<BlockCode> {
    let inner_size = inner.size().unwrap_or(u128::MAX);
    if q == 0 || distance_target == 0 || distance_target > q {
        return Err(Error::Precondition(format!(
            "need 1 <= distance target {distance_target} <= q = {q}"
        )));
    }
    let space = inner_size.checked_pow(q as u32).filter(|&s| s <= GREEDY_MAX_WORDS);
    if space.is_none() {
        return Err(Error::TooLarge(format!("greedy scan of {inner_size}^{q} words")));
    }
    let alphabet = inner_size as u64;
    let mut rng = rng::seeded(seed);
    let words = greedy_code(alphabet as u32, q, distance_target);
    let mut relabel: Vec<u32> = (0..alphabet as u32).collect();
    relabel.shuffle(&mut rng);
    let words = words
        .into_iter()
        .map(|w| w.into_iter().map(|s| relabel[s as usize]).collect())
        .collect();
    let mut code = BlockCode::from_words(alphabet, words)?;
    code.strategy = format!("greedy lexicode length {q} over {alphabet} symbols seed {seed}");
    if code.verified_distance < distance_target {
        return Err(Error::SelfCheck("greedy code below distance target".into()));
    }
    Ok(code)
}

/// Lexicographic greedy code: scan all words in order, keep those at distance
/// at least `distance` from every kept word.
fn greedy_code(alphabet: u32, length: usize, distance: usize) -> Vec<Vec<u32>> {
    let mut kept: Vec<Vec<u32>> = Vec::new();
    let mut word = vec![0u32; length];
    loop {
        if kept.iter().all(|k| hamming(k, &word) >= distance) {
            kept.push(word.clone());
        }
        // Odometer increment, most significant symbol first.
        let mut pos = length;
        loop {
            if pos == 0 {
                return kept;
            }
            pos -= 1;
            word[pos] += 1;
            if word[pos] < alphabet {
                break;
            }
            word[pos] = 0;
        }
    }
}

fn draw_distinct_pair(code: &BlockCode, rng: &mut LabRng) -> Result<(Vec<u32>, Vec<u32>)> {
    if code.size().is_some_and(|s| s < 2) {
        return Err(Error::Precondition("need at least 2 codewords for a pair".into()));
    }
    match &code.repr {
        Repr::Explicit(w) => {
            let i = rng.gen_range(0..w.len());
            let mut j = rng.gen_range(0..w.len() - 1);
            if j >= i {
                j += 1;
            }
            Ok((w[i].clone(), w[j].clone()))
        }
        Repr::ReedSolomon(_) => {
            let a = code.random_word(rng);
            loop {
                let b = code.random_word(rng);
                if b != a {
                    return Ok((a, b));
                }
            }
        }
    }
}

/// A uniformly random codeword, determined by `seed`.
pub fn sample_codeword(code: &BlockCode, seed: u64) -> Result<Vec<u32>> {
    if code.size() == Some(0) {
        return Err(Error::Precondition("empty code".into()));
    }
    Ok(code.random_word(&mut rng::seeded(seed)))
}

/// A uniformly random ordered pair of distinct codewords, determined by `seed`.
pub fn sample_distinct_pair(code: &BlockCode, seed: u64) -> Result<(Vec<u32>, Vec<u32>)> {
    draw_distinct_pair(code, &mut rng::seeded(seed))
}

/// Draws codewords from an existing RNG stream (used by sweeps that need many
/// samples from one seed).
pub fn sample_from(code: &BlockCode, rng: &mut LabRng) -> Vec<u32> {
    code.random_word(rng)
}

pub fn sample_pair_from(code: &BlockCode, rng: &mut LabRng) -> Result<(Vec<u32>, Vec<u32>)> {
    draw_distinct_pair(code, rng)
}

/// Desk-scale dimension for an inner binary code of length `length`.
pub fn desk_rate_dimension(length: usize) -> usize {
    length.div_ceil(8).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(words: &[&str]) -> BlockCode {
        let words = words
            .iter()
            .map(|w| w.bytes().map(|b| (b - b'0') as u32).collect())
            .collect();
        BlockCode::from_words(2, words).unwrap()
    }

    #[test]
    fn min_distance_examples() {
        assert_eq!(min_distance(&code(&["000", "111"])).unwrap(), 3);
        assert_eq!(min_distance(&code(&["00", "01", "10", "11"])).unwrap(), 1);
        assert!(min_distance(&code(&["010"])).is_err());
    }

    #[test]
    fn reed_solomon_4_2_over_gf5_has_distance_3() {
        // Brute force: every pair of the 25 evaluation vectors of degree-<2
        // polynomials at points 0..4 over GF(5).
        let mut words = Vec::new();
        for a in 0..5u32 {
            for b in 0..5u32 {
                words.push((0..4u32).map(|x| (a + b * x) % 5).collect::<Vec<_>>());
            }
        }
        let mut best = usize::MAX;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                best = best.min(hamming(&words[i], &words[j]));
            }
        }
        assert_eq!(best, 3);
        let c = BlockCode::from_words(5, words).unwrap();
        assert_eq!(min_distance(&c).unwrap(), 3);
    }

    #[test]
    fn inner_examples() {
        let c = gen_inner_binary(16, 4, 2, 0).unwrap();
        assert!(c.size().unwrap() >= 4);
        assert!(min_distance(&c).unwrap() >= 4);

        assert!(matches!(gen_inner_binary(4, 5, 2, 0), Err(Error::Precondition(_))));

        let rep = gen_inner_binary(3, 3, 1, 9).unwrap();
        let mut words = rep.codewords().unwrap().to_vec();
        words.sort();
        assert_eq!(words, vec![vec![0, 0, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn inner_budget_exhaustion_is_reported() {
        // No binary [8,4] code has distance 5 (Griesmer bound); the search must give up.
        let err = gen_inner_binary(8, 5, 4, 0).unwrap_err();
        assert!(matches!(err, Error::CodeSearch(msg) if msg.contains("2000 draws")));
    }

    #[test]
    fn outer_examples() {
        let inner = gen_inner_binary(8, 2, 3, 1).unwrap();
        let outer = gen_outer(4, &inner, 2, 5).unwrap();
        assert_eq!(outer.size(), Some(25));
        assert!(min_distance(&outer).unwrap() >= 3);
        assert_eq!(outer.verification(), &Verification::Exhaustive);

        let outer2 = gen_outer(2, &inner, 1, 5).unwrap();
        let words = outer2.enumerate(100).unwrap();
        assert!(words.len() >= 2);
        assert_eq!(min_distance(&outer2).unwrap(), 2);

        let small = code(&["000", "111", "110"]);
        let err = gen_outer(4, &small, 2, 0).unwrap_err();
        assert!(matches!(err, Error::Precondition(msg) if msg.contains("embed")));
    }

    #[test]
    fn outer_greedy_fallback() {
        // 4 inner words, q = 4: GF(5) does not fit, greedy search takes over.
        let inner = code(&["00", "01", "10", "11"]);
        let outer = gen_outer(4, &inner, 2, 3).unwrap();
        assert!(outer.strategy.starts_with("greedy"));
        assert!(min_distance(&outer).unwrap() >= 2);
        assert!(outer.size().unwrap() >= 16);
    }

    #[test]
    fn greedy_outer_with_few_inner_words() {
        let inner = code(&["00", "01", "10", "11"]);
        assert!(gen_outer(8, &inner, 4, 0).is_err());
        let outer = gen_outer_greedy(8, &inner, 4, 0).unwrap();
        assert_eq!(outer.length(), 8);
        assert!(min_distance(&outer).unwrap() >= 4);
        assert!(outer.size().unwrap() >= 8);
        assert!(gen_outer_greedy(9, &gen_inner_binary(8, 2, 3, 0).unwrap(), 4, 0).is_err());
    }

    #[test]
    fn large_outer_is_sampled() {
        let inner = gen_inner_binary(16, 4, 5, 2).unwrap();
        let outer = gen_outer(16, &inner, 8, 2).unwrap();
        assert_eq!(outer.verified_distance(), 9);
        assert!(matches!(outer.verification(), Verification::AlgebraicSampled { .. }));
        let d = sampled_min_distance(&outer, 1000, 11).unwrap();
        assert!(d >= 9);
    }

    #[test]
    fn sampling_examples() {
        let c = code(&["000", "111"]);
        let w = sample_codeword(&c, 4).unwrap();
        assert!(w == vec![0, 0, 0] || w == vec![1, 1, 1]);
        let (a, b) = sample_distinct_pair(&c, 4).unwrap();
        assert_ne!(a, b);
        assert_eq!(sample_distinct_pair(&c, 4).unwrap(), (a, b));
        assert!(sample_distinct_pair(&code(&["01"]), 0).is_err());
    }

    #[test]
    fn determinism() {
        assert_eq!(gen_inner_binary(16, 4, 4, 7).unwrap(), gen_inner_binary(16, 4, 4, 7).unwrap());
        let inner = gen_inner_binary(12, 3, 4, 7).unwrap();
        let a = gen_outer(6, &inner, 3, 1).unwrap();
        let b = gen_outer(6, &inner, 3, 1).unwrap();
        assert_eq!(a.to_text().unwrap(), b.to_text().unwrap());
    }

    #[test]
    fn text_format_round_trip() {
        let c = gen_inner_binary(8, 2, 3, 0).unwrap();
        let text = c.to_text().unwrap();
        assert!(text.starts_with("2 8 8 "));
        let back = BlockCode::parse(&text).unwrap();
        assert_eq!(back.codewords(), c.codewords());
        assert!(BlockCode::parse("2 3 2 3\n000\n").is_err());
        assert!(BlockCode::parse("2 3 2 3\n0 0 0\n1 1 0\n").is_err());
    }
}
