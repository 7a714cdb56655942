//! Codeword-interleaving gadget for type-1 orders and the set-disjointness
//! gadget.
//!
//! For binary words `u, v` of length `b`, `z(u, v)` has length `4b` and is
//! built from `b` blocks. Block `i` takes its odd positions from `u_i` (values
//! `0` and `2i-1`) and its even positions from `v_i` (values `0` and `2i`).

use serde::{Deserialize, Serialize};

use crate::ecc::{gen_inner_binary, BlockCode};
use crate::lis::{lis, IndexSet, Sequence};
use crate::order::{verify_type1, StreamOrder, Type1Witness};
use crate::{Error, Result};

/// One of the four block shapes, indexed by `(u_i, v_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockCase {
    /// `u_i = 0, v_i = 0`: `(0, 0, 2i-1, 2i)`
    BothZero,
    /// `u_i = 1, v_i = 0`: `(2i-1, 0, 0, 2i)`
    AliceOne,
    /// `u_i = 0, v_i = 1`: `(0, 2i, 2i-1, 0)`
    BobOne,
    /// `u_i = 1, v_i = 1`: `(2i-1, 2i, 0, 0)`
    BothOne,
}

impl BlockCase {
    pub fn of(u_bit: u32, v_bit: u32) -> BlockCase {
        match (u_bit != 0, v_bit != 0) {
            (false, false) => BlockCase::BothZero,
            (true, false) => BlockCase::AliceOne,
            (false, true) => BlockCase::BobOne,
            (true, true) => BlockCase::BothOne,
        }
    }

    /// Case number 1..=4.
    pub fn number(self) -> u8 {
        match self {
            BlockCase::BothZero => 1,
            BlockCase::AliceOne => 2,
            BlockCase::BobOne => 3,
            BlockCase::BothOne => 4,
        }
    }

    /// The block's four symbols for block index `i` (1-based).
    pub fn block(self, i: u64) -> [u64; 4] {
        let (a, b) = (2 * i - 1, 2 * i);
        match self {
            BlockCase::BothZero => [0, 0, a, b],
            BlockCase::AliceOne => [a, 0, 0, b],
            BlockCase::BobOne => [0, b, a, 0],
            BlockCase::BothOne => [a, b, 0, 0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type1Instance {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    pub z_uv: Sequence,
    pub z_vu: Sequence,
    /// Block cases of `z_uv`.
    pub cases: Vec<BlockCase>,
}

impl Type1Instance {
    pub fn blocks(&self) -> usize {
        self.u.len()
    }

    pub fn len(&self) -> usize {
        self.z_uv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z_uv.is_empty()
    }
}

fn check_binary(w: &[u32]) -> Result<()> {
    match w.iter().position(|&b| b > 1) {
        Some(p) => Err(Error::SymbolOutOfRange {
            position: p + 1,
            symbol: w[p] as u64,
            bound: 1,
        }),
        None => Ok(()),
    }
}

/// Bit `i` (1-based) becomes `(0, 2i-1)` if it is 0 and `(2i-1, 0)` if it is 1.
pub fn expand_alice(u: &[u32]) -> Vec<u64> {
    expand(u, |i| 2 * i - 1)
}

/// Bit `i` (1-based) becomes `(0, 2i)` if it is 0 and `(2i, 0)` if it is 1.
pub fn expand_bob(v: &[u32]) -> Vec<u64> {
    expand(v, |i| 2 * i)
}

fn expand(w: &[u32], value: impl Fn(u64) -> u64) -> Vec<u64> {
    w.iter()
        .enumerate()
        .flat_map(|(k, &b)| {
            let x = value(k as u64 + 1);
            if b == 0 {
                [0, x]
            } else {
                [x, 0]
            }
        })
        .collect()
}

fn interleave(u: &[u32], v: &[u32]) -> Sequence {
    let a = expand_alice(u);
    let b = expand_bob(v);
    let symbols = a.iter().zip(&b).flat_map(|(&x, &y)| [x, y]).collect();
    Sequence::new(symbols, 2 * u.len().max(1) as u64).expect("gadget symbols lie within 2b")
}

pub fn build_z(u: &[u32], v: &[u32]) -> Result<Type1Instance> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    check_binary(u)?;
    check_binary(v)?;
    Ok(Type1Instance {
        u: u.to_vec(),
        v: v.to_vec(),
        z_uv: interleave(u, v),
        z_vu: interleave(v, u),
        cases: u.iter().zip(v).map(|(&a, &b)| BlockCase::of(a, b)).collect(),
    })
}

/// Places `z` at the interleaved original positions of `w` and fills every
/// other position with 0. Odd positions of `z` go to `I`, even ones to `J`.
pub fn embed(z: &Sequence, order: &StreamOrder, w: &Type1Witness) -> Result<Sequence> {
    if 2 * w.m != z.len() {
        return Err(Error::LengthMismatch {
            left: z.len(),
            right: 2 * w.m,
        });
    }
    if !verify_type1(order, w) {
        return Err(Error::Precondition("witness is not a type-1 witness for this order".into()));
    }
    let mut out = vec![0u64; order.len()];
    for (pos, &value) in w.interleaved_positions(order).iter().zip(z.symbols()) {
        out[pos - 1] = value;
    }
    Sequence::new(out, z.alphabet_bound())
}

/// Embeds `z_uv` of `inst`; the witness must have `m = 2 * blocks`.
pub fn embed_in_order(inst: &Type1Instance, order: &StreamOrder, w: &Type1Witness) -> Result<Sequence> {
    if w.m != 2 * inst.blocks() {
        return Err(Error::Precondition(format!(
            "witness parameter {} does not match 2 * {} blocks",
            w.m,
            inst.blocks()
        )));
    }
    embed(&inst.z_uv, order, w)
}

/// Set-disjointness gadget: a leading 0, then `(A_i * 2i, B_i * (2i-1))` for
/// each `i`.
pub fn disj_gadget(a: &[u32], b: &[u32]) -> Result<Sequence> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    check_binary(a)?;
    check_binary(b)?;
    let mut symbols = vec![0u64];
    for (k, (&x, &y)) in a.iter().zip(b).enumerate() {
        let i = k as u64 + 1;
        symbols.push(x as u64 * 2 * i);
        symbols.push(y as u64 * (2 * i - 1));
    }
    Sequence::new(symbols, 2 * a.len().max(1) as u64)
}

/// Characteristic vector of `set` within `[m]`.
pub fn characteristic(set: &IndexSet, m: usize) -> Result<Vec<u32>> {
    set.check_within(m)?;
    Ok((1..=m).map(|i| set.contains(i) as u32).collect())
}

/// `(n/2, floor(15n/32) + 1)`: the LIS lower bound for equal words and the
/// upper bound on the smaller orientation for distant words.
pub fn type1_gap(n: usize) -> Result<(usize, usize)> {
    if n == 0 || !n.is_multiple_of(32) {
        return Err(Error::Precondition(format!("n = {n} must be a positive multiple of 32")));
    }
    Ok((n / 2, 15 * n / 32 + 1))
}

/// Binary code for gadget length `n`: codewords of length `n/4`, distance at
/// least `n/16`, and `max(4, n/16)` information bits.
pub fn type1_code(n: usize, seed: u64) -> Result<BlockCode> {
    type1_gap(n)?;
    let length = n / 4;
    gen_inner_binary(length, n / 16, (n / 16).max(4).min(length), seed)
}

/// JSON sidecar describing a generated instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Type1Sidecar {
    pub n: usize,
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    pub cases: Vec<u8>,
    pub equal_lower_bound: usize,
    pub unequal_upper_bound: usize,
    pub lis_z_uv: usize,
    pub lis_z_vu: usize,
    pub witness: Option<Type1Witness>,
}

pub fn sidecar(inst: &Type1Instance, witness: Option<&Type1Witness>) -> Type1Sidecar {
    let n = inst.len();
    let (lb, ub) = type1_gap(n).unwrap_or((n / 2, 15 * n / 32 + 1));
    Type1Sidecar {
        n,
        u: inst.u.clone(),
        v: inst.v.clone(),
        cases: inst.cases.iter().map(|c| c.number()).collect(),
        equal_lower_bound: lb,
        unequal_upper_bound: ub,
        lis_z_uv: lis(&inst.z_uv),
        lis_z_vu: lis(&inst.z_vu),
        witness: witness.cloned(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lis::{lis_dp, lis_exhaustive};
    use crate::order::{random_order, type1_witness};

    #[test]
    fn expansions() {
        assert_eq!(expand_alice(&[0]), vec![0, 1]);
        assert_eq!(expand_alice(&[1]), vec![1, 0]);
        assert_eq!(expand_alice(&[1, 0]), vec![1, 0, 0, 3]);
        assert_eq!(expand_bob(&[0]), vec![0, 2]);
        assert_eq!(expand_bob(&[1]), vec![2, 0]);
        assert_eq!(expand_bob(&[0, 1]), vec![0, 2, 4, 0]);
        for w in [vec![0, 1, 1, 0, 1], vec![0; 4]] {
            let e = expand_alice(&w);
            assert_eq!(e.iter().filter(|&&x| x == 0).count(), w.len());
        }
    }

    #[test]
    fn z_examples() {
        let inst = build_z(&[1, 0], &[1, 0]).unwrap();
        assert_eq!(inst.z_uv.symbols(), &[1, 2, 0, 0, 0, 0, 3, 4]);
        assert_eq!(lis_exhaustive(&inst.z_uv).unwrap(), 4);

        let inst = build_z(&[1], &[0]).unwrap();
        assert_eq!(inst.z_uv.symbols(), &[1, 0, 0, 2]);
        assert_eq!(inst.z_vu.symbols(), &[0, 2, 1, 0]);
        assert_eq!(lis_exhaustive(&inst.z_uv).unwrap(), 2);
        assert_eq!(lis_exhaustive(&inst.z_vu).unwrap(), 2);

        let inst = build_z(&[0], &[1]).unwrap();
        assert_eq!(inst.z_uv.symbols(), &[0, 2, 1, 0]);
        assert_eq!(inst.cases, vec![BlockCase::BobOne]);

        assert!(matches!(build_z(&[0, 1], &[1]), Err(Error::LengthMismatch { .. })));
        assert!(build_z(&[2], &[1]).is_err());
    }

    #[test]
    fn case_table_and_block_lis() {
        for i in 1..=16u64 {
            for (ub, vb) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
                let mut u = vec![0; i as usize];
                let mut v = vec![0; i as usize];
                u[i as usize - 1] = ub;
                v[i as usize - 1] = vb;
                let inst = build_z(&u, &v).unwrap();
                let case = BlockCase::of(ub, vb);
                let start = 4 * (i as usize - 1);
                let block = &inst.z_uv.symbols()[start..start + 4];
                assert_eq!(block, case.block(i));
                let nonzero: Vec<u64> = block.iter().copied().filter(|&x| x != 0).collect();
                let expected = if case == BlockCase::BobOne { 1 } else { 2 };
                assert_eq!(crate::lis::lis_dp_slice(&nonzero), expected);
            }
        }
    }

    #[test]
    fn odd_positions_depend_only_on_u() {
        let u = [1, 0, 1, 1, 0];
        let v = [0, 0, 1, 0, 1];
        let base = build_z(&u, &v).unwrap();
        for k in 0..v.len() {
            let mut v2 = v;
            v2[k] ^= 1;
            let other = build_z(&u, &v2).unwrap();
            for p in (0..base.len()).step_by(2) {
                assert_eq!(base.z_uv.symbols()[p], other.z_uv.symbols()[p]);
            }
        }
    }

    #[test]
    fn gap_formula() {
        assert_eq!(type1_gap(64).unwrap(), (32, 31));
        assert_eq!(type1_gap(32).unwrap(), (16, 16));
        assert_eq!(type1_gap(128).unwrap(), (64, 61));
        assert!(type1_gap(48).is_err());
        assert!(type1_gap(0).is_err());
    }

    #[test]
    fn identity_embedding_is_z() {
        let inst = build_z(&[1, 0, 0, 1], &[0, 0, 1, 1]).unwrap();
        let n = inst.len();
        let order = StreamOrder::odds_then_evens(n);
        let w = type1_witness(&order, n / 2).unwrap();
        // Odds-then-evens: I covers every odd position and J every even one.
        let out = embed_in_order(&inst, &order, &w).unwrap();
        assert_eq!(out, inst.z_uv);
    }

    #[test]
    fn all_zero_words_embed_to_increasing_nonzeros() {
        let inst = build_z(&[0; 4], &[0; 4]).unwrap();
        let order = random_order(128, 5);
        let w = type1_witness(&order, 8).unwrap();
        let out = embed_in_order(&inst, &order, &w).unwrap();
        let nonzero: Vec<u64> = out.symbols().iter().copied().filter(|&x| x != 0).collect();
        assert_eq!(nonzero, (1..=8).collect::<Vec<u64>>());
    }

    #[test]
    fn embedding_keeps_gap_within_one() {
        let code = type1_code(32, 3).unwrap();
        let words = code.codewords().unwrap();
        let order = random_order(256, 11);
        let w = type1_witness(&order, 16).unwrap();
        for u in words.iter().take(6) {
            for v in words.iter().take(6) {
                let inst = build_z(u, v).unwrap();
                let out = embed_in_order(&inst, &order, &w).unwrap();
                let nz = lis(&inst.z_uv.without_zeros());
                let got = lis_dp(&out);
                assert!(got >= lis(&inst.z_uv) && got <= nz + 1);
                let restricted: Vec<u64> = w
                    .interleaved_positions(&order)
                    .iter()
                    .map(|&p| out.symbols()[p - 1])
                    .collect();
                assert_eq!(restricted, inst.z_uv.symbols());
            }
        }
        let short = Type1Witness { m: 4, ..w };
        assert!(embed_in_order(&build_z(&[0; 8], &[0; 8]).unwrap(), &order, &short).is_err());
    }

    #[test]
    fn disjointness_examples() {
        let x = disj_gadget(&[1, 0], &[0, 1]).unwrap();
        assert_eq!(x.symbols(), &[0, 2, 0, 0, 3]);
        assert_eq!(lis_exhaustive(&x).unwrap(), 3);
        let x = disj_gadget(&[1], &[1]).unwrap();
        assert_eq!(x.symbols(), &[0, 2, 1]);
        assert_eq!(lis_exhaustive(&x).unwrap(), 2);
        let x = disj_gadget(&[0, 0, 0], &[0, 0, 0]).unwrap();
        assert_eq!(lis(&x), 1);
        assert!(disj_gadget(&[1], &[1, 0]).is_err());
    }

    #[test]
    fn disjointness_exhaustive_m4_k2() {
        let subsets: Vec<IndexSet> = (0u32..16)
            .filter(|s| s.count_ones() == 2)
            .map(|s| IndexSet::new((1..=4).filter(|i| s >> (i - 1) & 1 == 1).collect()).unwrap())
            .collect();
        let mut pairs = 0;
        for a in &subsets {
            for b in &subsets {
                let x = disj_gadget(&characteristic(a, 4).unwrap(), &characteristic(b, 4).unwrap()).unwrap();
                let l = lis_exhaustive(&x).unwrap();
                assert_eq!(l == 5, a.is_disjoint(b));
                assert!(l <= 5);
                pairs += 1;
            }
        }
        assert_eq!(pairs, 36);
    }

    #[test]
    fn type1_gap_holds_on_generated_code() {
        let code = type1_code(64, 1).unwrap();
        assert!(code.verified_distance() >= 4);
        let words = code.codewords().unwrap();
        let (lb, ub) = type1_gap(64).unwrap();
        for u in words {
            for v in words {
                let inst = build_z(u, v).unwrap();
                if u == v {
                    assert!(lis(&inst.z_uv) >= lb);
                } else {
                    assert!(lis(&inst.z_uv).min(lis(&inst.z_vu)) <= ub);
                }
            }
        }
    }

    #[test]
    fn sidecar_round_trips() {
        let inst = build_z(&[1, 0], &[0, 0]).unwrap();
        let s = sidecar(&inst, None);
        assert_eq!(s.cases, vec![2, 1]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<Type1Sidecar>(&json).unwrap(), s);
    }
}
