//! Exact longest increasing / decreasing subsequence engines.
//!
//! Three independent tiers compute the same quantity: patience sorting
//! (`O(n log n)`, with a witness), the quadratic dynamic program, and bit-mask
//! enumeration for `n <= 20`. Increasing always means *strictly* increasing,
//! so repeated symbols (the zeros the gadgets pad with) count at most once.

use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest input accepted by [`lis_exhaustive`].
pub const EXHAUSTIVE_MAX_LEN: usize = 20;

/// A finite sequence of non-negative symbols over the alphabet `[0, m]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequence {
    symbols: Vec<u64>,
    alphabet_bound: u64,
}

impl Sequence {
    /// Builds a sequence, rejecting any symbol above `alphabet_bound`.
    pub fn new(symbols: Vec<u64>, alphabet_bound: u64) -> Result<Self> {
        if let Some((pos, &s)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s > alphabet_bound)
        {
            return Err(Error::SymbolOutOfRange {
                position: pos + 1,
                symbol: s,
                bound: alphabet_bound,
            });
        }
        Ok(Sequence {
            symbols,
            alphabet_bound: alphabet_bound.max(1),
        })
    }

    /// Builds a sequence whose alphabet bound is its largest symbol (at least 1).
    pub fn from_symbols(symbols: Vec<u64>) -> Self {
        let alphabet_bound = symbols.iter().copied().max().unwrap_or(0).max(1);
        Sequence {
            symbols,
            alphabet_bound,
        }
    }

    pub fn symbols(&self) -> &[u64] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u64> {
        self.symbols
    }

    pub fn alphabet_bound(&self) -> u64 {
        self.alphabet_bound
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol at 1-based position `index`.
    pub fn get(&self, index: usize) -> Result<u64> {
        if index == 0 || index > self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            });
        }
        Ok(self.symbols[index - 1])
    }

    /// The subsequence `x|_I`.
    pub fn restrict(&self, indices: &IndexSet) -> Result<Sequence> {
        indices.check_within(self.len())?;
        let symbols = indices.iter().map(|i| self.symbols[i - 1]).collect();
        Ok(Sequence {
            symbols,
            alphabet_bound: self.alphabet_bound,
        })
    }

    /// Sequence with every symbol deleted that equals zero.
    pub fn without_zeros(&self) -> Sequence {
        Sequence {
            symbols: self.symbols.iter().copied().filter(|&s| s != 0).collect(),
            alphabet_bound: self.alphabet_bound,
        }
    }

    /// Parses whitespace-separated decimal integers; lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Sequence> {
        let mut symbols = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim_start().starts_with('#') {
                continue;
            }
            for tok in line.split_whitespace() {
                let s = tok
                    .parse::<u64>()
                    .map_err(|e| Error::parse(lineno + 1, format!("bad symbol {tok:?}: {e}")))?;
                symbols.push(s);
            }
        }
        Ok(Sequence::from_symbols(symbols))
    }

    /// Renders the sequence in the text format accepted by [`Sequence::parse`].
    pub fn to_text(&self) -> String {
        let mut out = self
            .symbols
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        out.push('\n');
        out
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Sorted, distinct, 1-based positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first() == Some(&0) {
            return Err(Error::IndexOutOfRange { index: 0, len: 0 });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::UnsortedIndexSet);
        }
        Ok(IndexSet(indices))
    }

    /// Sorts and deduplicates arbitrary indices.
    pub fn from_unsorted(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        IndexSet::new(indices)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    /// Converts 0-based positions (already sorted) into a 1-based set.
    pub(crate) fn from_zero_based(positions: &[usize]) -> Self {
        IndexSet(positions.iter().map(|p| p + 1).collect())
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&last) if last > n => Err(Error::IndexOutOfRange { index: last, len: n }),
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() && b < other.0.len() {
            match self.0[a].cmp(&other.0[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Vec<usize> {
        s.0
    }
}

/// Length of the longest strictly increasing subsequence of any ordered slice.
///
/// Patience sorting: `tails[k]` is the smallest possible last element of an
/// increasing subsequence of length `k + 1`; lower-bound search keeps it strict.
pub fn lis_len<T: Ord + Clone>(xs: &[T]) -> usize {
    let mut tails: Vec<T> = Vec::with_capacity(xs.len());
    for x in xs {
        let pos = tails.partition_point(|t| t < x);
        if pos == tails.len() {
            tails.push(x.clone());
        } else {
            tails[pos] = x.clone();
        }
    }
    tails.len()
}

/// For each position, the length of the longest strictly increasing
/// subsequence that *starts* there.
fn start_lengths<T: Ord + Clone>(xs: &[T]) -> Vec<usize> {
    let mut out = vec![0; xs.len()];
    let mut tails: Vec<Reverse<T>> = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate().rev() {
        let key = Reverse(x.clone());
        let pos = tails.partition_point(|t| *t < key);
        if pos == tails.len() {
            tails.push(key);
        } else {
            tails[pos] = key;
        }
        out[i] = pos + 1;
    }
    out
}

/// 0-based positions of the lexicographically smallest longest strictly
/// increasing subsequence.
pub fn lis_positions<T: Ord + Clone>(xs: &[T]) -> Vec<usize> {
    let starts = start_lengths(xs);
    let mut need = starts.iter().copied().max().unwrap_or(0);
    let mut picked = Vec::with_capacity(need);
    let mut last: Option<&T> = None;
    for (i, x) in xs.iter().enumerate() {
        if need == 0 {
            break;
        }
        if starts[i] >= need && last.is_none_or(|l| l < x) {
            picked.push(i);
            last = Some(x);
            need -= 1;
        }
    }
    picked
}

/// Patience-sorting LIS with its lexicographically smallest witness.
pub fn lis_patience(x: &Sequence) -> (usize, IndexSet) {
    let positions = lis_positions(x.symbols());
    (positions.len(), IndexSet::from_zero_based(&positions))
}

/// Convenience: patience LIS length of a sequence.
pub fn lis(x: &Sequence) -> usize {
    lis_len(x.symbols())
}

/// Quadratic dynamic program, independent of the patience implementation.
pub fn lis_dp(x: &Sequence) -> usize {
    lis_dp_slice(x.symbols())
}

pub fn lis_dp_slice(xs: &[u64]) -> usize {
    let mut best = vec![1usize; xs.len()];
    for i in 0..xs.len() {
        for j in 0..i {
            if xs[j] < xs[i] && best[j] + 1 > best[i] {
                best[i] = best[j] + 1;
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Enumerates every subsequence (as a bit mask) and keeps the longest strictly
/// increasing one. Refuses inputs longer than [`EXHAUSTIVE_MAX_LEN`].
pub fn lis_exhaustive(x: &Sequence) -> Result<usize> {
    let xs = x.symbols();
    let n = xs.len();
    if n > EXHAUSTIVE_MAX_LEN {
        return Err(Error::TooLarge(format!(
            "exhaustive LIS needs n <= {EXHAUSTIVE_MAX_LEN}, got {n}"
        )));
    }
    // valid[mask]: the positions in `mask` read left to right are strictly increasing.
    let total = 1usize << n;
    let mut valid = vec![false; total];
    valid[0] = true;
    let mut best = 0;
    for mask in 1..total {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask ^ (1 << top);
        let ok = valid[rest] && {
            if rest == 0 {
                true
            } else {
                let prev = usize::BITS as usize - 1 - rest.leading_zeros() as usize;
                xs[prev] < xs[top]
            }
        };
        valid[mask] = ok;
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    Ok(best)
}

/// Longest strictly decreasing subsequence.
pub fn lds(x: &Sequence) -> usize {
    let reversed: Vec<Reverse<u64>> = x.symbols().iter().map(|&s| Reverse(s)).collect();
    lis_len(&reversed)
}

fn lds_witness(x: &Sequence) -> IndexSet {
    let reversed: Vec<Reverse<u64>> = x.symbols().iter().map(|&s| Reverse(s)).collect();
    IndexSet::from_zero_based(&lis_positions(&reversed))
}

/// LIS of `x|_I`.
pub fn lis_restricted(x: &Sequence, indices: &IndexSet) -> Result<usize> {
    Ok(lis(&x.restrict(indices)?))
}

/// `n - lis(x)`: the minimum number of deletions leaving an increasing sequence.
pub fn distance_to_monotonicity(x: &Sequence) -> usize {
    x.len() - lis(x)
}

/// A monotone subsequence certified by the Erdős–Szekeres theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Monotone {
    Increasing(IndexSet),
    Decreasing(IndexSet),
}

impl Monotone {
    pub fn indices(&self) -> &IndexSet {
        match self {
            Monotone::Increasing(s) | Monotone::Decreasing(s) => s,
        }
    }
}

/// Finds an increasing subsequence of length `>= r` or a decreasing one of
/// length `>= s` in a sequence of pairwise distinct symbols of length at
/// least `(r-1)(s-1)+1`.
pub fn es_witness(x: &Sequence, r: usize, s: usize) -> Result<Monotone> {
    if r == 0 || s == 0 {
        return Err(Error::Precondition("r and s must be positive".into()));
    }
    let needed = (r - 1) * (s - 1) + 1;
    if x.len() < needed {
        return Err(Error::Precondition(format!(
            "length {} is below (r-1)(s-1)+1 = {needed}",
            x.len()
        )));
    }
    let mut sorted = x.symbols().to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition("symbols must be pairwise distinct".into()));
    }
    let (len, inc) = lis_patience(x);
    if len >= r {
        return Ok(Monotone::Increasing(inc));
    }
    let dec = lds_witness(x);
    if dec.len() >= s {
        return Ok(Monotone::Decreasing(dec));
    }
    Err(Error::SelfCheck(format!(
        "no monotone witness: lis {len} < {r} and lds {} < {s}",
        dec.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> Sequence {
        Sequence::from_symbols(v.to_vec())
    }

    #[test]
    fn patience_examples() {
        assert_eq!(lis_patience(&seq(&[1, 2, 3])).0, 3);
        assert_eq!(lis_patience(&seq(&[5, 4, 3, 2, 1])).0, 1);
        let (len, w) = lis_patience(&seq(&[0, 5, 0, 0, 6]));
        assert_eq!(len, 3);
        assert_eq!(w.as_slice(), &[1, 2, 5]);
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // Candidates of length 2: {1,3},{1,4},{2,3},{2,4}; smallest is {1,3}.
        let (_, w) = lis_patience(&seq(&[2, 1, 3, 3]));
        assert_eq!(w.as_slice(), &[1, 3]);
        let (_, w) = lis_patience(&seq(&[3, 1, 4, 2, 5]));
        assert_eq!(w.as_slice(), &[1, 3, 5]);
    }

    #[test]
    fn dp_examples() {
        assert_eq!(lis_dp(&seq(&[])), 0);
        assert_eq!(lis_dp(&seq(&[2, 2, 2])), 1);
        assert_eq!(lis_dp(&seq(&[1, 0, 0, 2])), 2);
    }

    #[test]
    fn exhaustive_examples() {
        assert_eq!(lis_exhaustive(&seq(&[3, 1, 4, 2, 5])).unwrap(), 3);
        assert_eq!(lis_exhaustive(&seq(&[7])).unwrap(), 1);
        assert_eq!(lis_exhaustive(&seq(&[0, 0])).unwrap(), 1);
        assert_eq!(lis_exhaustive(&seq(&[])).unwrap(), 0);
        assert!(matches!(
            lis_exhaustive(&seq(&[0; 21])),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn lds_examples() {
        assert_eq!(lds(&seq(&[5, 4, 3])), 3);
        assert_eq!(lds(&seq(&[1, 2, 3])), 1);
        assert_eq!(lds(&seq(&[3, 1, 4, 2, 5])), 2);
    }

    #[test]
    fn restricted_examples() {
        let x = seq(&[9, 1, 2, 9]);
        assert_eq!(lis_restricted(&x, &IndexSet::new(vec![2, 3]).unwrap()).unwrap(), 2);
        assert_eq!(lis_restricted(&x, &IndexSet::empty()).unwrap(), 0);
        assert_eq!(lis_restricted(&seq(&[1, 2, 3]), &IndexSet::full(3)).unwrap(), 3);
        assert!(matches!(
            lis_restricted(&x, &IndexSet::new(vec![5]).unwrap()),
            Err(Error::IndexOutOfRange { index: 5, len: 4 })
        ));
    }

    #[test]
    fn es_examples() {
        assert_eq!(
            es_witness(&seq(&[2, 1]), 2, 2).unwrap(),
            Monotone::Decreasing(IndexSet::new(vec![1, 2]).unwrap())
        );
        match es_witness(&seq(&[3, 1, 4, 2, 5]), 3, 3).unwrap() {
            Monotone::Increasing(w) => assert_eq!(w.as_slice(), &[1, 3, 5]),
            other => panic!("expected increasing witness, got {other:?}"),
        }
        let k = 6;
        let sorted = seq(&(1..=k as u64).collect::<Vec<_>>());
        assert_eq!(
            es_witness(&sorted, k, 2).unwrap(),
            Monotone::Increasing(IndexSet::full(k))
        );
    }

    #[test]
    fn es_rejects_bad_inputs() {
        assert!(es_witness(&seq(&[1, 2]), 3, 3).is_err());
        assert!(es_witness(&seq(&[1, 1, 2, 3, 4]), 3, 3).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance_to_monotonicity(&seq(&[1, 2, 3])), 0);
        assert_eq!(distance_to_monotonicity(&seq(&[3, 2, 1])), 2);
        assert_eq!(distance_to_monotonicity(&seq(&[1, 0, 0, 2])), 2);
    }

    #[test]
    fn alphabet_bound_enforced() {
        assert!(matches!(
            Sequence::new(vec![1, 9], 8),
            Err(Error::SymbolOutOfRange { position: 2, symbol: 9, bound: 8 })
        ));
    }

    #[test]
    fn text_format() {
        let x = Sequence::parse("# header\n3 1  4\n\n1 5\n").unwrap();
        assert_eq!(x.symbols(), &[3, 1, 4, 1, 5]);
        assert_eq!(Sequence::parse(&x.to_text()).unwrap(), x);
        assert!(Sequence::parse("").unwrap().is_empty());
        assert!(matches!(Sequence::parse("1 -2"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![2, 1]).is_err());
        assert!(IndexSet::new(vec![1, 1]).is_err());
        assert!(IndexSet::new(vec![0]).is_err());
        assert_eq!(IndexSet::from_unsorted(vec![3, 1, 3]).unwrap().as_slice(), &[1, 3]);
    }
}
