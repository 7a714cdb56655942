//! Multi-pass streaming harness with state-size accounting.
//!
//! Items arrive as `(original_index, symbol)` pairs in stream order. The
//! algorithm does not see the order in advance; it only observes the pairs.
//! After every item the harness asks the algorithm for the size of its
//! serialized state and records the peak.

use serde::{Deserialize, Serialize};

use crate::lis::{lis_len, Sequence};
use crate::order::StreamOrder;
use crate::{Error, Result};

/// A (possibly multi-pass) streaming algorithm for a sequence statistic.
pub trait StreamingAlgorithm {
    fn init(&mut self, n: usize, alphabet_bound: u64);
    fn process(&mut self, original_index: usize, symbol: u64);
    /// Called after every pass; `pass` is 0-based.
    fn end_pass(&mut self, pass: usize);
    fn finish(&mut self) -> u64;
    /// Size in bits of the state the algorithm would need to carry forward.
    fn state_bits(&self) -> Result<u64>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamRun {
    pub output: u64,
    pub passes_used: usize,
    pub max_state_bits: u64,
}

/// Streams `x` in `order`, `passes` times.
pub fn run_stream<A: StreamingAlgorithm + ?Sized>(
    alg: &mut A,
    x: &Sequence,
    order: &StreamOrder,
    passes: usize,
) -> Result<StreamRun> {
    if passes == 0 {
        return Err(Error::Precondition("at least one pass is required".into()));
    }
    if order.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: order.len(),
        });
    }
    alg.init(x.len(), x.alphabet_bound());
    let mut peak = alg.state_bits()?;
    for pass in 0..passes {
        for i in 1..=order.len() {
            let p = order.pi(i);
            alg.process(p, x.symbols()[p - 1]);
            peak = peak.max(alg.state_bits()?);
        }
        alg.end_pass(pass);
    }
    Ok(StreamRun {
        output: alg.finish(),
        passes_used: passes,
        max_state_bits: peak,
    })
}

/// `ceil(log2(v + 1))`: bits needed to write any value in `[0, v]`.
pub fn bits_for(v: u64) -> u64 {
    (u64::BITS - v.leading_zeros()) as u64
}

/// Keeps every `(index, symbol)` pair from the first pass and computes the
/// exact LIS at the end. Correct under every order.
#[derive(Clone, Debug, Default)]
pub struct StoreAll {
    n: usize,
    bound: u64,
    pass: usize,
    items: Vec<(usize, u64)>,
}

impl StreamingAlgorithm for StoreAll {
    fn init(&mut self, n: usize, alphabet_bound: u64) {
        *self = StoreAll {
            n,
            bound: alphabet_bound,
            ..StoreAll::default()
        };
    }

    fn process(&mut self, original_index: usize, symbol: u64) {
        if self.pass == 0 {
            self.items.push((original_index, symbol));
        }
    }

    fn end_pass(&mut self, pass: usize) {
        self.pass = pass + 1;
    }

    fn finish(&mut self) -> u64 {
        self.items.sort_unstable();
        let symbols: Vec<u64> = self.items.iter().map(|&(_, s)| s).collect();
        lis_len(&symbols) as u64
    }

    fn state_bits(&self) -> Result<u64> {
        let per_item = bits_for(self.n as u64) + bits_for(self.bound);
        (self.items.len() as u64)
            .checked_mul(per_item)
            .ok_or_else(|| Error::State("state size overflows u64".into()))
    }
}

/// One-pass patience sorting over arrival order; exact only when the order
/// is the natural one.
#[derive(Clone, Debug, Default)]
pub struct PatienceBaseline {
    bound: u64,
    pass: usize,
    tails: Vec<u64>,
}

impl StreamingAlgorithm for PatienceBaseline {
    fn init(&mut self, _n: usize, alphabet_bound: u64) {
        *self = PatienceBaseline {
            bound: alphabet_bound,
            ..PatienceBaseline::default()
        };
    }

    fn process(&mut self, _original_index: usize, symbol: u64) {
        if self.pass > 0 {
            return;
        }
        let pos = self.tails.partition_point(|&t| t < symbol);
        if pos == self.tails.len() {
            self.tails.push(symbol);
        } else {
            self.tails[pos] = symbol;
        }
    }

    fn end_pass(&mut self, pass: usize) {
        self.pass = pass + 1;
    }

    fn finish(&mut self) -> u64 {
        self.tails.len() as u64
    }

    fn state_bits(&self) -> Result<u64> {
        Ok(self.tails.len() as u64 * bits_for(self.bound))
    }
}
