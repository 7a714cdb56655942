//! Levelled R-way branching programs, the restriction merge, the
//! distinguisher construction for query-once algorithms, and the search for
//! restriction-separated families of increasing sequences.

use std::collections::{BTreeMap, HashMap};

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::lis::{lis_dp, lis_len, IndexSet, Sequence};
use crate::{rng, Error, Result};

/// A node: either queries an input position (1-based) and branches on its
/// value, or is a sink carrying an output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, try_from = "RawNode")]
pub enum Node {
    Query { query: usize, edges: BTreeMap<u64, usize> },
    Sink { output: u64 },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    query: Option<usize>,
    edges: Option<BTreeMap<String, usize>>,
    output: Option<u64>,
}

impl TryFrom<RawNode> for Node {
    type Error = String;

    fn try_from(raw: RawNode) -> std::result::Result<Node, String> {
        match raw {
            RawNode {
                query: Some(query),
                edges: Some(edges),
                output: None,
            } => {
                let edges = edges
                    .into_iter()
                    .map(|(k, v)| k.parse::<u64>().map(|k| (k, v)).map_err(|_| format!("edge label {k:?} is not a symbol")))
                    .collect::<std::result::Result<_, _>>()?;
                Ok(Node::Query { query, edges })
            }
            RawNode {
                query: None,
                edges: None,
                output: Some(output),
            } => Ok(Node::Sink { output }),
            _ => Err("a node needs either `query` and `edges` or `output`".into()),
        }
    }
}

/// Edges from level `l` point to indices in level `l + 1`; the root is the
/// single node on level 0. Edge labels are the symbols `1..=alphabet`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingProgram {
    pub alphabet: u64,
    pub levels: Vec<Vec<Node>>,
}

impl BranchingProgram {
    pub fn constant(alphabet: u64, output: u64) -> BranchingProgram {
        BranchingProgram {
            alphabet,
            levels: vec![vec![Node::Sink { output }]],
        }
    }

    pub fn size(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.alphabet == 0 {
            return Err(Error::Malformed("alphabet must be at least 1".into()));
        }
        if self.levels.first().map(Vec::len) != Some(1) {
            return Err(Error::Malformed("level 0 must hold exactly the root".into()));
        }
        for (l, level) in self.levels.iter().enumerate() {
            for (k, node) in level.iter().enumerate() {
                let Node::Query { query, edges } = node else { continue };
                let at = format!("node {k} on level {l}");
                if *query == 0 {
                    return Err(Error::Malformed(format!("{at} queries index 0")));
                }
                let next = self
                    .levels
                    .get(l + 1)
                    .ok_or_else(|| Error::Malformed(format!("{at} queries on the last level")))?;
                if edges.len() as u64 != self.alphabet || !(1..=self.alphabet).all(|s| edges.contains_key(&s)) {
                    return Err(Error::Malformed(format!("{at} lacks an edge for some symbol in 1..={}", self.alphabet)));
                }
                if let Some((s, t)) = edges.iter().find(|(_, &t)| t >= next.len()) {
                    return Err(Error::Malformed(format!("{at}: edge {s} targets missing node {t}")));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<BranchingProgram> {
        let bp: BranchingProgram = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        bp.validate()?;
        Ok(bp)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("programs serialize")
    }
}

/// Follows the edges labelled by the queried symbols. Returns the sink's
/// output and the visited `(level, node)` pairs.
pub fn eval(bp: &BranchingProgram, x: &Sequence) -> Result<(u64, Vec<(usize, usize)>)> {
    let (mut level, mut node) = (0usize, 0usize);
    let mut path = Vec::new();
    loop {
        path.push((level, node));
        let n = bp
            .levels
            .get(level)
            .and_then(|l| l.get(node))
            .ok_or_else(|| Error::Malformed(format!("missing node {node} on level {level}")))?;
        match n {
            Node::Sink { output } => return Ok((*output, path)),
            Node::Query { query, edges } => {
                let symbol = x.get(*query)?;
                if symbol == 0 || symbol > bp.alphabet {
                    return Err(Error::SymbolOutOfRange {
                        position: *query,
                        symbol,
                        bound: bp.alphabet,
                    });
                }
                node = *edges
                    .get(&symbol)
                    .ok_or_else(|| Error::Malformed(format!("no edge {symbol} at level {level}")))?;
                level += 1;
            }
        }
    }
}

/// True iff no root-to-sink path queries an index twice.
pub fn check_read_once(bp: &BranchingProgram) -> Result<bool> {
    bp.validate()?;
    fn dfs(bp: &BranchingProgram, level: usize, node: usize, seen: &mut Vec<usize>) -> bool {
        match &bp.levels[level][node] {
            Node::Sink { .. } => true,
            Node::Query { query, edges } => {
                if seen.contains(query) {
                    return false;
                }
                seen.push(*query);
                let mut targets: Vec<usize> = edges.values().copied().collect();
                targets.sort_unstable();
                targets.dedup();
                let ok = targets.into_iter().all(|t| dfs(bp, level + 1, t, seen));
                seen.pop();
                ok
            }
        }
    }
    Ok(dfs(bp, 0, 0, &mut Vec::new()))
}

/// Largest `m^n` accepted by [`check_computes_lis`].
pub const COMPUTES_LIS_BUDGET: u64 = 1_000_000;

fn all_inputs(n: usize, m: u64) -> Result<impl Iterator<Item = Vec<u64>>> {
    let total = m
        .checked_pow(n as u32)
        .filter(|&t| t <= COMPUTES_LIS_BUDGET)
        .ok_or_else(|| Error::TooLarge(format!("{m}^{n} inputs exceeds {COMPUTES_LIS_BUDGET}")))?;
    Ok((0..total).map(move |mut code| {
        let mut x = vec![0u64; n];
        for slot in x.iter_mut().rev() {
            *slot = code % m + 1;
            code /= m;
        }
        x
    }))
}

/// True iff `bp` outputs `lis(x)` on every `x` in `[1, m]^n`.
pub fn check_computes_lis(bp: &BranchingProgram, n: usize, m: u64) -> Result<bool> {
    bp.validate()?;
    for x in all_inputs(n, m)? {
        let x = Sequence::new(x, m)?;
        if eval(bp, &x)?.0 != lis_dp(&x) as u64 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reads positions `1..=n` in order; the nodes on level `l` are the distinct
/// patience pile-top vectors reachable after `l` symbols over `[1, m]`.
pub fn patience_program(n: usize, m: u64) -> Result<BranchingProgram> {
    if m == 0 {
        return Err(Error::Precondition("alphabet must be at least 1".into()));
    }
    let mut states: Vec<Vec<u64>> = vec![Vec::new()];
    let mut levels = Vec::with_capacity(n + 1);
    for l in 0..n {
        let mut next: Vec<Vec<u64>> = Vec::new();
        let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut level = Vec::with_capacity(states.len());
        for tails in &states {
            let mut edges = BTreeMap::new();
            for s in 1..=m {
                let mut t = tails.clone();
                let pos = t.partition_point(|&v| v < s);
                if pos == t.len() {
                    t.push(s);
                } else {
                    t[pos] = s;
                }
                let id = *index.entry(t.clone()).or_insert_with(|| {
                    next.push(t);
                    next.len() - 1
                });
                edges.insert(s, id);
            }
            level.push(Node::Query { query: l + 1, edges });
        }
        levels.push(level);
        states = next;
    }
    levels.push(
        states
            .iter()
            .map(|t| Node::Sink { output: t.len() as u64 })
            .collect(),
    );
    Ok(BranchingProgram { alphabet: m, levels })
}

/// Full decision tree over `[1, m]^n`: `next_query` picks the position to
/// read from the history of `(position, symbol)` pairs, and every leaf
/// outputs `output` of the completed input (unread positions are 0).
pub fn decision_tree(
    n: usize,
    m: u64,
    next_query: impl Fn(&[(usize, u64)]) -> usize,
    output: impl Fn(&[u64]) -> u64,
) -> Result<BranchingProgram> {
    if m.checked_pow(n as u32).is_none_or(|t| t > COMPUTES_LIS_BUDGET) {
        return Err(Error::TooLarge(format!("decision tree with {m}^{n} leaves")));
    }
    let mut histories: Vec<Vec<(usize, u64)>> = vec![Vec::new()];
    let mut levels = Vec::with_capacity(n + 1);
    for _ in 0..n {
        let mut next = Vec::with_capacity(histories.len() * m as usize);
        let mut level = Vec::with_capacity(histories.len());
        for h in &histories {
            let query = next_query(h);
            let mut edges = BTreeMap::new();
            for s in 1..=m {
                let mut h2 = h.clone();
                h2.push((query, s));
                edges.insert(s, next.len());
                next.push(h2);
            }
            level.push(Node::Query { query, edges });
        }
        levels.push(level);
        histories = next;
    }
    levels.push(
        histories
            .iter()
            .map(|h| {
                let mut x = vec![0u64; n];
                for &(p, s) in h {
                    if (1..=n).contains(&p) {
                        x[p - 1] = s;
                    }
                }
                Node::Sink { output: output(&x) }
            })
            .collect(),
    );
    Ok(BranchingProgram { alphabet: m, levels })
}

/// Memorizes `lis` for every input, reading positions left to right.
pub fn table_program(n: usize, m: u64) -> Result<BranchingProgram> {
    decision_tree(n, m, |h| h.len() + 1, |x| lis_len(x) as u64)
}

/// Reads position 1, then `2, 3` if it saw symbol 1 and `3, 2` otherwise.
pub fn adaptive_example(m: u64) -> Result<BranchingProgram> {
    decision_tree(
        3,
        m,
        |h| {
            let first_is_one = h.first().is_some_and(|&(_, s)| s == 1);
            match (h.len(), first_is_one) {
                (0, _) => 1,
                (1, true) | (2, false) => 2,
                _ => 3,
            }
        },
        |x| lis_len(x) as u64,
    )
}

/// Two levels that both query position 1.
pub fn repeated_query_example() -> BranchingProgram {
    let edges = |t: [usize; 2]| BTreeMap::from([(1, t[0]), (2, t[1])]);
    BranchingProgram {
        alphabet: 2,
        levels: vec![
            vec![Node::Query { query: 1, edges: edges([0, 1]) }],
            vec![
                Node::Query { query: 1, edges: edges([0, 0]) },
                Node::Query { query: 2, edges: edges([0, 0]) },
            ],
            vec![Node::Sink { output: 1 }],
        ],
    }
}

/// `x` on `S`, `z` off `S`.
pub fn merge_f_s(x: &Sequence, z: &Sequence, s: &IndexSet) -> Result<Sequence> {
    if x.len() != z.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: z.len(),
        });
    }
    s.check_within(x.len())?;
    let symbols = (1..=x.len())
        .map(|i| if s.contains(i) { x.symbols()[i - 1] } else { z.symbols()[i - 1] })
        .collect();
    Sequence::new(symbols, x.alphabet_bound().max(z.alphabet_bound()))
}

/// Default `c` in the requirement `m >= c * n`.
pub const DEFAULT_C: u64 = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distinguisher {
    pub x_tilde: Sequence,
    pub y_tilde: Sequence,
    /// 1 when built around the first disagreement, 2 around the last.
    pub case: u8,
    pub lis_x: usize,
    pub lis_y: usize,
}

fn strictly_increasing_within(x: &Sequence, m: u64) -> bool {
    x.symbols().windows(2).all(|w| w[0] < w[1]) && x.symbols().iter().all(|&v| (1..=m).contains(&v))
}

/// Completes `x|_S` and `y|_S` with a common filler so the two LIS values
/// differ by exactly one.
///
/// With `l` the first position of `S` where they disagree: if at least
/// `2n/5` positions outside `S` follow `l`, positions before `l` get 0 and
/// those after get the values of `x|_S` and `y|_S` above `min(x_l, y_l)` in
/// increasing order followed by `m+1`. Otherwise, with `r` the last
/// disagreement, positions after `r` get `m+1` and those before get a 0, the
/// values below `max(x_r, y_r)` in increasing order, then 0s.
pub fn build_distinguisher(x: &Sequence, y: &Sequence, s: &IndexSet, m: u64, c: u64) -> Result<Distinguisher> {
    let n = x.len();
    if y.len() != n {
        return Err(Error::LengthMismatch { left: n, right: y.len() });
    }
    s.check_within(n)?;
    if s.is_empty() || s.len() != n / 5 {
        return Err(Error::Precondition(format!("|S| = {} but n/5 = {}", s.len(), n / 5)));
    }
    if m < c.saturating_mul(n as u64) {
        return Err(Error::Precondition(format!("m = {m} is below c*n = {}", c * n as u64)));
    }
    if !strictly_increasing_within(x, m) || !strictly_increasing_within(y, m) {
        return Err(Error::Precondition("x and y must be strictly increasing over [1, m]".into()));
    }
    let disagree: Vec<usize> = s.iter().filter(|&i| x.symbols()[i - 1] != y.symbols()[i - 1]).collect();
    let (Some(&l), Some(&r)) = (disagree.first(), disagree.last()) else {
        return Err(Error::Precondition("x and y agree on S".into()));
    };
    let val = |seq: &Sequence, i: usize| seq.symbols()[i - 1];
    let restricted: Vec<u64> = s.iter().flat_map(|i| [val(x, i), val(y, i)]).collect();
    let free: Vec<usize> = (1..=n).filter(|&i| !s.contains(i)).collect();
    let after_l: Vec<usize> = free.iter().copied().filter(|&i| i > l).collect();
    let mut filler = vec![0u64; n + 1];
    let case = if 5 * after_l.len() >= 2 * n {
        let pivot = val(x, l).min(val(y, l));
        let mut e: Vec<u64> = restricted.into_iter().filter(|&v| v > pivot).collect();
        e.sort_unstable();
        e.dedup();
        for (k, &i) in after_l.iter().enumerate() {
            filler[i] = e.get(k).copied().unwrap_or(m + 1);
        }
        1
    } else {
        let pivot = val(x, r).max(val(y, r));
        let mut e: Vec<u64> = restricted.into_iter().filter(|&v| v < pivot).collect();
        e.sort_unstable();
        e.dedup();
        let before: Vec<usize> = free.iter().copied().filter(|&i| i < r).collect();
        for (k, &i) in before.iter().enumerate().skip(1) {
            filler[i] = e.get(k - 1).copied().unwrap_or(0);
        }
        for &i in free.iter().filter(|&&i| i > r) {
            filler[i] = m + 1;
        }
        2
    };
    let z = Sequence::new(filler[1..].to_vec(), m + 1)?;
    let x_tilde = Sequence::new(merge_f_s(x, &z, s)?.into_symbols(), m + 1)?;
    let y_tilde = Sequence::new(merge_f_s(y, &z, s)?.into_symbols(), m + 1)?;
    let (lis_x, lis_y) = (lis_dp(&x_tilde), lis_dp(&y_tilde));
    let agrees_off_s = (1..=n)
        .filter(|i| !s.contains(*i))
        .all(|i| val(&x_tilde, i) == val(&y_tilde, i));
    let keeps_s = s.iter().all(|i| val(&x_tilde, i) == val(x, i) && val(&y_tilde, i) == val(y, i));
    if lis_x.abs_diff(lis_y) != 1 || !agrees_off_s || !keeps_s {
        return Err(Error::SelfCheck(format!(
            "distinguisher failed (case {case}): x~ = {x_tilde} (lis {lis_x}), y~ = {y_tilde} (lis {lis_y})"
        )));
    }
    Ok(Distinguisher {
        x_tilde,
        y_tilde,
        case,
        lis_x,
        lis_y,
    })
}

/// Uniformly random strictly increasing sequence of length `n` over `[1, m]`.
pub fn random_increasing(n: usize, m: u64, rng: &mut rng::LabRng) -> Result<Sequence> {
    if (m as usize) < n {
        return Err(Error::Precondition(format!("no increasing sequence of length {n} over [1, {m}]")));
    }
    let mut values: Vec<u64> = index::sample(rng, m as usize, n).into_iter().map(|v| v as u64 + 1).collect();
    values.sort_unstable();
    Sequence::new(values, m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatedFamily {
    pub n: usize,
    pub m: u64,
    pub k: usize,
    pub members: Vec<Sequence>,
}

impl SeparatedFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Every symbol doubled; values then lie in `[2, 2m]`.
    pub fn doubled(&self) -> SeparatedFamily {
        SeparatedFamily {
            m: 2 * self.m,
            members: self
                .members
                .iter()
                .map(|x| Sequence::new(x.symbols().iter().map(|v| 2 * v).collect(), 2 * self.m).expect("within 2m"))
                .collect(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("family search stopped at size {} after {samples} samples (target {target})", largest.len())]
pub struct SearchFailure {
    pub largest: SeparatedFamily,
    pub samples: u64,
    pub target: usize,
}

fn agreements(x: &Sequence, y: &Sequence) -> usize {
    x.symbols().iter().zip(y.symbols()).filter(|(a, b)| a == b).count()
}

/// Samples uniform increasing sequences and keeps each one whose agreement
/// count with every kept member is below `k` (so no size-`k` restriction
/// coincides). Stops at `target` members or after `budget` samples.
pub fn search_separated_family(
    n: usize,
    m: u64,
    k: usize,
    target: usize,
    seed: u64,
    budget: u64,
) -> std::result::Result<SeparatedFamily, SearchFailure> {
    let mut family = SeparatedFamily {
        n,
        m,
        k,
        members: Vec::new(),
    };
    let mut rng = rng::seeded(seed);
    let mut samples = 0;
    while family.len() < target && samples < budget {
        samples += 1;
        let Ok(x) = random_increasing(n, m, &mut rng) else { break };
        if family.members.iter().all(|y| agreements(&x, y) < k) {
            family.members.push(x);
        }
    }
    if family.len() >= target {
        Ok(family)
    } else {
        Err(SearchFailure {
            largest: family,
            samples,
            target,
        })
    }
}

/// Largest `C(n,k) * |T|^2` accepted by [`verify_separated_family`].
pub const VERIFY_BUDGET: u128 = 1_000_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Checks every size-`k` subset `S` and every pair of distinct members
/// literally: no two members may coincide on `S`.
pub fn verify_separated_family(members: &[Sequence], k: usize) -> Result<bool> {
    let Some(first) = members.first() else { return Ok(true) };
    let n = first.len();
    if members.iter().any(|x| x.len() != n) {
        return Err(Error::Precondition("family members differ in length".into()));
    }
    let work = binomial(n, k) * (members.len() as u128).pow(2);
    if work > VERIFY_BUDGET {
        return Err(Error::TooLarge(format!("{work} subset-pair checks")));
    }
    if k > n {
        return Ok(true);
    }
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        for (a, x) in members.iter().enumerate() {
            for y in &members[a + 1..] {
                if subset.iter().all(|&i| x.symbols()[i] == y.symbols()[i]) {
                    return Ok(false);
                }
            }
        }
        // Advance to the next k-subset in lexicographic order.
        let Some(t) = (0..k).rev().find(|&t| subset[t] < n - k + t) else { break };
        subset[t] += 1;
        for u in t + 1..k {
            subset[u] = subset[u - 1] + 1;
        }
    }
    Ok(true)
}
