//! Streaming orders and their interleaving structure.
//!
//! A [`StreamOrder`] is a permutation `pi` of `[1, n]`: the `i`-th streamed
//! item is the symbol at original position `pi[i]`. Index sets in witnesses
//! (`I`, `J`, blocks) are *stream* indices; the interleaving conditions are
//! stated on the original positions they map to.

pub mod stream;

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::lis::IndexSet;
use crate::{rng, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct StreamOrder {
    pi: Vec<usize>,
    inverse: Vec<usize>,
}

impl TryFrom<Vec<usize>> for StreamOrder {
    type Error = Error;

    fn try_from(pi: Vec<usize>) -> Result<Self> {
        StreamOrder::new(pi)
    }
}

impl From<StreamOrder> for Vec<usize> {
    fn from(order: StreamOrder) -> Vec<usize> {
        order.pi
    }
}

impl StreamOrder {
    /// Validates that `pi` is a bijection on `[1, pi.len()]`.
    pub fn new(pi: Vec<usize>) -> Result<StreamOrder> {
        let n = pi.len();
        let mut inverse = vec![0usize; n];
        for (i, &p) in pi.iter().enumerate() {
            if p == 0 || p > n {
                return Err(Error::IndexOutOfRange { index: p, len: n });
            }
            if inverse[p - 1] != 0 {
                return Err(Error::Precondition(format!("position {p} streamed twice")));
            }
            inverse[p - 1] = i + 1;
        }
        Ok(StreamOrder { pi, inverse })
    }

    pub fn identity(n: usize) -> StreamOrder {
        StreamOrder::new((1..=n).collect()).expect("identity is a permutation")
    }

    /// Odd original positions in natural order, then even ones.
    pub fn odds_then_evens(n: usize) -> StreamOrder {
        let pi = (1..=n).step_by(2).chain((2..=n).step_by(2)).collect();
        StreamOrder::new(pi).expect("odds then evens is a permutation")
    }

    /// Splits `[1, n]` into consecutive blocks of size `block`, streaming the
    /// odd-numbered blocks first and the even-numbered blocks afterwards.
    pub fn odd_blocks_then_even(n: usize, block: usize) -> Result<StreamOrder> {
        if block == 0 || !n.is_multiple_of(block) {
            return Err(Error::Precondition(format!("{block} does not divide {n}")));
        }
        let blocks = n / block;
        let range = |b: usize| (b * block + 1)..=((b + 1) * block);
        let pi = (0..blocks)
            .step_by(2)
            .chain((1..blocks).step_by(2))
            .flat_map(range)
            .collect();
        StreamOrder::new(pi)
    }

    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    /// Original position of the `i`-th streamed item (1-based).
    pub fn pi(&self, i: usize) -> usize {
        self.pi[i - 1]
    }

    /// Stream index at which original position `p` arrives (1-based).
    pub fn stream_index_of(&self, p: usize) -> usize {
        self.inverse[p - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.pi
    }

    /// Parses `n` on the first line followed by `pi_1 ... pi_n`.
    pub fn parse(text: &str) -> Result<StreamOrder> {
        let mut tokens = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'))
            .flat_map(|(no, l)| l.split_whitespace().map(move |t| (no + 1, t)));
        let (line, tok) = tokens.next().ok_or_else(|| Error::parse(1, "missing n"))?;
        let n: usize = tok.parse().map_err(|_| Error::parse(line, format!("bad n {tok:?}")))?;
        let pi = tokens
            .map(|(line, t)| t.parse::<usize>().map_err(|_| Error::parse(line, format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if pi.len() != n {
            return Err(Error::parse(1, format!("declared n = {n}, found {} entries", pi.len())));
        }
        StreamOrder::new(pi)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.len());
        let body = self.pi.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{body}");
        out
    }
}

/// Stream index sets `I` (all streamed before `J`) whose original positions
/// interleave `I, J, I, J, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type1Witness {
    pub i: IndexSet,
    pub j: IndexSet,
    pub m: usize,
}

impl Type1Witness {
    /// Original positions `(a_1, b_1, ..., a_m, b_m)` in increasing order,
    /// `a_t` coming from `I` and `b_t` from `J`.
    pub fn interleaved_positions(&self, order: &StreamOrder) -> Vec<usize> {
        let mut a: Vec<usize> = self.i.iter().map(|s| order.pi(s)).collect();
        let mut b: Vec<usize> = self.j.iter().map(|s| order.pi(s)).collect();
        a.sort_unstable();
        b.sort_unstable();
        a.into_iter().zip(b).flat_map(|(x, y)| [x, y]).collect()
    }
}

/// Checks the type-1 definition directly: `|I| = |J| = m`, `max I < min J`,
/// and the original positions alternate starting from `I`.
pub fn verify_type1(order: &StreamOrder, w: &Type1Witness) -> bool {
    let n = order.len();
    if w.m == 0 || w.i.len() != w.m || w.j.len() != w.m {
        return false;
    }
    if w.i.check_within(n).is_err() || w.j.check_within(n).is_err() {
        return false;
    }
    if w.i.max() >= w.j.min() {
        return false;
    }
    let chain = w.interleaved_positions(order);
    chain.windows(2).all(|p| p[0] < p[1]) && chain.last().is_some_and(|&p| p <= n)
}

/// Number of maximal runs of consecutive integers in `a` (the minimal number
/// of intervals whose union is `a`).
pub fn interval_count(a: &IndexSet) -> usize {
    let s = a.as_slice();
    s.iter()
        .enumerate()
        .filter(|&(k, &x)| k == 0 || s[k - 1] + 1 != x)
        .count()
}

/// Maximal runs `[start, end]` of the set `a`, in increasing order.
fn runs(a: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 0;
    while p < a.len() {
        if a[p] {
            let start = p;
            while p < a.len() && a[p] {
                p += 1;
            }
            out.push((start + 1, p));
        } else {
            p += 1;
        }
    }
    out
}

/// Type-1 witness from the interval decomposition of the first half of the
/// stream.
///
/// Let `A` be the original positions streamed first (`pi_1 .. pi_{n/2}`). Each
/// maximal run `[s, e]` of `A` with `e < n` yields a left endpoint `s` in `A`
/// and a gap point `e + 1` outside `A`; the first `m` such runs give `I` and
/// `J`. Sound but incomplete: `None` does not prove the order is not type 1.
pub fn type1_witness(order: &StreamOrder, m: usize) -> Option<Type1Witness> {
    let n = order.len();
    if m == 0 || 2 * m > n {
        return None;
    }
    prefix_interval_witness(order, n / 2, m)
}

fn prefix_interval_witness(order: &StreamOrder, prefix: usize, m: usize) -> Option<Type1Witness> {
    let n = order.len();
    let mut in_a = vec![false; n];
    for s in 1..=prefix {
        in_a[order.pi(s) - 1] = true;
    }
    let picks: Vec<(usize, usize)> = runs(&in_a)
        .into_iter()
        .filter(|&(_, end)| end < n)
        .take(m)
        .map(|(start, end)| (start, end + 1))
        .collect();
    if picks.len() < m {
        return None;
    }
    let i = IndexSet::from_unsorted(picks.iter().map(|&(s, _)| order.stream_index_of(s)).collect()).ok()?;
    let j = IndexSet::from_unsorted(picks.iter().map(|&(_, g)| order.stream_index_of(g)).collect()).ok()?;
    let w = Type1Witness { i, j, m };
    verify_type1(order, &w).then_some(w)
}

/// Complete type-1 recognizer.
///
/// For every split point `k`, positions streamed in the first `k` steps form
/// `A` and the rest form `B`; the longest `A, B, A, B, ...` alternation along
/// original positions is found greedily. The order is type 1 with parameter
/// `m` iff some split admits `m` alternating pairs.
pub fn type1_witness_complete(order: &StreamOrder, m: usize) -> Option<Type1Witness> {
    let n = order.len();
    if m == 0 || 2 * m > n {
        return None;
    }
    for k in 1..n {
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(m);
        let mut pending: Option<usize> = None;
        for p in 1..=n {
            let in_a = order.stream_index_of(p) <= k;
            match (pending, in_a) {
                (None, true) => pending = Some(p),
                (Some(a), false) => {
                    pairs.push((a, p));
                    pending = None;
                    if pairs.len() == m {
                        break;
                    }
                }
                _ => {}
            }
        }
        if pairs.len() == m {
            let i = IndexSet::from_unsorted(pairs.iter().map(|&(a, _)| order.stream_index_of(a)).collect()).ok()?;
            let j = IndexSet::from_unsorted(pairs.iter().map(|&(_, b)| order.stream_index_of(b)).collect()).ok()?;
            let w = Type1Witness { i, j, m };
            debug_assert!(verify_type1(order, &w));
            return Some(w);
        }
    }
    None
}

/// Checks the type-2 definition for the given blocks of stream indices.
pub fn verify_type2(order: &StreamOrder, blocks: &[IndexSet]) -> bool {
    let n = order.len();
    let Some(first) = blocks.first() else {
        return false;
    };
    let s = first.len();
    if s == 0 || blocks.iter().any(|b| b.len() != s || b.check_within(n).is_err()) {
        return false;
    }
    let mut seen = vec![false; n];
    for b in blocks {
        for i in b.iter() {
            if std::mem::replace(&mut seen[i - 1], true) {
                return false;
            }
        }
    }
    let odd_max = blocks.iter().step_by(2).filter_map(IndexSet::max).max();
    let even_min = blocks.iter().skip(1).step_by(2).filter_map(IndexSet::min).min();
    if let (Some(hi), Some(lo)) = (odd_max, even_min) {
        if hi >= lo {
            return false;
        }
    }
    blocks.windows(2).all(|w| {
        let hi = w[0].iter().map(|i| order.pi(i)).max();
        let lo = w[1].iter().map(|i| order.pi(i)).min();
        hi < lo
    })
}

/// Singleton blocks `{i_1}, {j_1}, ..., {i_m}, {j_m}` of a type-1 witness,
/// ordered by original position.
pub fn type1_as_type2_blocks(order: &StreamOrder, w: &Type1Witness) -> Vec<IndexSet> {
    w.interleaved_positions(order)
        .into_iter()
        .map(|p| IndexSet::new(vec![order.stream_index_of(p)]).expect("singleton"))
        .collect()
}

/// Blocks for [`StreamOrder::odd_blocks_then_even`]: `B_l` holds the stream
/// indices of the `l`-th block of original positions.
pub fn consecutive_blocks(order: &StreamOrder, block: usize) -> Vec<IndexSet> {
    (0..order.len() / block)
        .map(|b| {
            let idx = (b * block + 1..=(b + 1) * block).map(|p| order.stream_index_of(p)).collect();
            IndexSet::from_unsorted(idx).expect("distinct stream indices")
        })
        .collect()
}

/// Uniformly random order from a seeded shuffle.
pub fn random_order(n: usize, seed: u64) -> StreamOrder {
    let mut pi: Vec<usize> = (1..=n).collect();
    pi.shuffle(&mut rng::seeded(seed));
    StreamOrder::new(pi).expect("shuffle of a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    /// Exhaustive type-1 check over all disjoint `(I, J)` pairs.
    fn brute_type1(order: &StreamOrder, m: usize) -> bool {
        let n = order.len();
        for imask in 0u32..1 << n {
            if imask.count_ones() as usize != m {
                continue;
            }
            for jmask in 0u32..1 << n {
                if jmask & imask != 0 || jmask.count_ones() as usize != m {
                    continue;
                }
                let to_set = |mask: u32| {
                    IndexSet::new((0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()).unwrap()
                };
                let w = Type1Witness { i: to_set(imask), j: to_set(jmask), m };
                if verify_type1(order, &w) {
                    return true;
                }
            }
        }
        false
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn interval_count_examples() {
        let n = 16;
        assert_eq!(interval_count(&IndexSet::full(n / 2)), 1);
        let evens = IndexSet::new((2..=n).step_by(2).collect()).unwrap();
        assert_eq!(interval_count(&evens), n / 2);
        assert_eq!(interval_count(&IndexSet::empty()), 0);
        assert_eq!(interval_count(&set(&[1, 2, 4, 7, 8, 9])), 3);
    }

    #[test]
    fn odds_then_evens_witness() {
        let order = StreamOrder::odds_then_evens(8);
        let w = type1_witness(&order, 4).unwrap();
        assert_eq!(w.i, set(&[1, 2, 3, 4]));
        assert_eq!(w.j, set(&[5, 6, 7, 8]));
        assert!(verify_type1(&order, &w));
    }

    #[test]
    fn identity_order() {
        let order = StreamOrder::identity(2);
        let w = type1_witness(&order, 1).unwrap();
        assert_eq!((w.i.clone(), w.j.clone()), (set(&[1]), set(&[2])));

        let order = StreamOrder::identity(8);
        let w = type1_witness_complete(&order, 1).unwrap();
        assert_eq!((w.i, w.j), (set(&[1]), set(&[2])));
        assert!(type1_witness(&order, 1).is_some());
        assert!(type1_witness(&order, 2).is_none());
        assert!(type1_witness_complete(&order, 2).is_none());
        for n in 4..=8 {
            assert!(!brute_type1(&StreamOrder::identity(n), 2), "n = {n}");
        }
    }

    #[test]
    fn complete_recognizer_matches_brute_force() {
        for n in 2..=6 {
            for pi in permutations(n) {
                let order = StreamOrder::new(pi).unwrap();
                for m in 1..=n / 2 {
                    let fast = type1_witness_complete(&order, m);
                    assert_eq!(fast.is_some(), brute_type1(&order, m), "{order:?} m={m}");
                    if let Some(w) = type1_witness(&order, m) {
                        assert!(fast.is_some());
                        assert!(verify_type1(&order, &w));
                    }
                }
            }
        }
    }

    #[test]
    fn interval_construction_covers_g_minus_one_parameters() {
        // For every half-size subset A at n <= 12, the order streaming A first
        // admits witnesses for every m < g(A).
        for n in (2..=12).step_by(2) {
            for mask in 0u32..1 << n {
                if mask.count_ones() as usize != n / 2 {
                    continue;
                }
                let a: Vec<usize> = (1..=n).filter(|p| mask >> (p - 1) & 1 == 1).collect();
                let rest = (1..=n).filter(|p| mask >> (p - 1) & 1 == 0);
                let order = StreamOrder::new(a.iter().copied().chain(rest).collect()).unwrap();
                let g = interval_count(&IndexSet::new(a).unwrap());
                let found = (1..=n / 2).filter(|&m| type1_witness(&order, m).is_some()).count();
                assert!(g - 1 <= found, "n={n} mask={mask:b} g={g} found={found}");
            }
        }
    }

    #[test]
    fn type2_examples() {
        let order = StreamOrder::odd_blocks_then_even(16, 4).unwrap();
        let blocks = consecutive_blocks(&order, 4);
        assert!(verify_type2(&order, &blocks));

        let order = StreamOrder::odds_then_evens(8);
        let w = type1_witness(&order, 4).unwrap();
        assert!(verify_type2(&order, &type1_as_type2_blocks(&order, &w)));

        let overlapping = vec![set(&[1, 2]), set(&[2, 3])];
        assert!(!verify_type2(&StreamOrder::identity(4), &overlapping));
        // Identity order: odd blocks are not all streamed before even blocks.
        let blocks = vec![set(&[1]), set(&[2]), set(&[3])];
        assert!(!verify_type2(&StreamOrder::identity(3), &blocks));
    }

    #[test]
    fn random_order_examples() {
        assert_eq!(random_order(1, 5), StreamOrder::identity(1));
        assert_eq!(random_order(50, 9), random_order(50, 9));
        assert_ne!(random_order(50, 9), random_order(50, 10));
    }

    #[test]
    fn permutation_format() {
        let order = random_order(10, 3);
        assert_eq!(StreamOrder::parse(&order.to_text()).unwrap(), order);
        assert!(StreamOrder::parse("3\n1 2 2\n").is_err());
        assert!(StreamOrder::parse("3\n1 2\n").is_err());
    }
}
