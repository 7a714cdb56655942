//! Grid gadget for type-2 orders.
//!
//! Two outer codewords `u, v` (length `q`, symbols are inner codeword
//! indices, inner length `p`) define a 0/1 matrix `M` with `9p` rows and `8q`
//! columns. Column `8i-4` holds Alice's expanded inner word `u^(i)`, column
//! `8i-3` holds Bob's `v^(i)`, and every other column has a 1 on rows
//! `9, 18, ...`. The valuation `M'` numbers the 1-entries row-major and `sigma`
//! reads `M'` column by column, so strictly increasing subsequences of the
//! nonzero part of `sigma` are exactly monotone chains of 1-entries.

use serde::{Deserialize, Serialize};

use crate::ecc::{gen_inner_binary, gen_outer, gen_outer_greedy, BlockCode};
use crate::lis::{lis, lis_positions, Sequence};
use crate::{Error, Result};

/// Column segment for one inner bit.
pub fn expand_bit_9(bit: u32) -> [u8; 9] {
    if bit != 0 {
        [1, 1, 0, 0, 0, 0, 1, 1, 0]
    } else {
        [0, 0, 1, 1, 1, 1, 0, 0, 0]
    }
}

/// Dense 0/1 matrix, row-major, 1-based accessors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    left: cols,
                    right: row.len(),
                });
            }
            if let Some(c) = row.iter().position(|&b| b > 1) {
                return Err(Error::Malformed(format!("entry ({}, {}) is not 0/1", r + 1, c + 1)));
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[(i - 1) * self.cols + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, b: u8) {
        self.data[(i - 1) * self.cols + (j - 1)] = b;
    }

    pub fn ones(&self) -> usize {
        self.data.iter().filter(|&&b| b == 1).count()
    }

    pub fn column_ones(&self, j: usize) -> usize {
        (1..=self.rows).filter(|&i| self.get(i, j) == 1).count()
    }

    /// Sub-matrix with rows `r0..r0+h` and columns `c0..c0+w` (1-based start).
    pub fn submatrix(&self, r0: usize, c0: usize, h: usize, w: usize) -> Matrix {
        let mut out = Matrix::zeros(h, w);
        for i in 0..h {
            for j in 0..w {
                out.set(i + 1, j + 1, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    /// `rows cols` header, then one line of 0/1 digits per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for row in self.data.chunks(self.cols.max(1)).take(self.rows) {
            out.extend(row.iter().map(|&b| if b == 1 { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Matrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(hl + 1, "header must be `rows cols`")))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::parse(hl + 1, "header must be `rows cols`"));
        };
        let mut body = Vec::with_capacity(rows);
        for (ln, line) in lines {
            let row: Vec<u8> = line
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(Error::parse(ln + 1, format!("unexpected character {c:?}"))),
                })
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::parse(ln + 1, format!("expected {cols} digits, found {}", row.len())));
            }
            body.push(row);
        }
        if body.len() != rows {
            return Err(Error::parse(hl + 1, format!("expected {rows} rows, found {}", body.len())));
        }
        if rows == 0 {
            return Ok(Matrix::zeros(0, cols));
        }
        Matrix::from_rows(body)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridInstance {
    pub p: usize,
    pub q: usize,
    /// Outer codewords: one inner codeword index per block pair.
    pub u: Vec<u32>,
    pub v: Vec<u32>,
    pub m: Matrix,
    /// Row-major valuation.
    pub m_prime: Vec<u64>,
    pub sigma: Sequence,
}

/// Builds `M` directly from the inner words: `u_cols[i]` and `v_cols[i]` are
/// the binary words placed in columns `8i+4` and `8i+5` (0-based `i`).
pub fn build_matrix_from_words(u_cols: &[Vec<u32>], v_cols: &[Vec<u32>]) -> Result<Matrix> {
    if u_cols.len() != v_cols.len() {
        return Err(Error::LengthMismatch {
            left: u_cols.len(),
            right: v_cols.len(),
        });
    }
    let q = u_cols.len();
    let p = u_cols.first().map_or(0, Vec::len);
    if q == 0 || p == 0 {
        return Err(Error::Precondition("p and q must be at least 1".into()));
    }
    for w in u_cols.iter().chain(v_cols) {
        if w.len() != p {
            return Err(Error::LengthMismatch { left: p, right: w.len() });
        }
        if w.iter().any(|&b| b > 1) {
            return Err(Error::Precondition("inner words must be binary".into()));
        }
    }
    let (rows, cols) = (9 * p, 8 * q);
    let mut m = Matrix::zeros(rows, cols);
    for j in 1..=cols {
        for band in 1..=p {
            m.set(9 * band, j, 1);
        }
    }
    for i in 1..=q {
        for (col, word) in [(8 * i - 4, &u_cols[i - 1]), (8 * i - 3, &v_cols[i - 1])] {
            for (k, &bit) in word.iter().enumerate() {
                for (t, &b) in expand_bit_9(bit).iter().enumerate() {
                    m.set(9 * k + t + 1, col, b);
                }
            }
        }
    }
    Ok(m)
}

/// Full pipeline `(u, v) -> M -> M' -> sigma` for outer codewords over `inner`.
pub fn build_matrix(u: &[u32], v: &[u32], inner: &BlockCode) -> Result<GridInstance> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if inner.alphabet_size() != 2 {
        return Err(Error::Precondition("inner code must be binary".into()));
    }
    let words = |w: &[u32]| -> Result<Vec<Vec<u32>>> { w.iter().map(|&s| inner.word(s as u128)).collect() };
    let m = build_matrix_from_words(&words(u)?, &words(v)?)?;
    let m_prime = valuate(&m);
    let sigma = serialize(&m, &m_prime);
    Ok(GridInstance {
        p: inner.length(),
        q: u.len(),
        u: u.to_vec(),
        v: v.to_vec(),
        m,
        m_prime,
        sigma,
    })
}

/// `M'_{i,j} = cols * (i-1) + j` where `M_{i,j} = 1`, else 0 (row-major).
pub fn valuate(m: &Matrix) -> Vec<u64> {
    let mut out = vec![0u64; m.rows * m.cols];
    for i in 1..=m.rows {
        for j in 1..=m.cols {
            if m.get(i, j) == 1 {
                out[(i - 1) * m.cols + (j - 1)] = (m.cols * (i - 1) + j) as u64;
            }
        }
    }
    out
}

/// Column-major concatenation of the valuation.
pub fn serialize(m: &Matrix, m_prime: &[u64]) -> Sequence {
    let symbols = (0..m.cols)
        .flat_map(|j| (0..m.rows).map(move |i| m_prime[i * m.cols + j]))
        .collect();
    Sequence::new(symbols, (m.rows * m.cols).max(1) as u64).expect("valuation lies within rows * cols")
}

pub fn sigma(m: &Matrix) -> Sequence {
    serialize(m, &valuate(m))
}

/// Monotone path from `(1,1)` to `(rows, cols)` using right and down steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPath {
    pub cells: Vec<(usize, usize)>,
    pub weight: usize,
}

impl GridPath {
    pub fn is_monotone(&self, rows: usize, cols: usize) -> bool {
        self.cells.first() == Some(&(1, 1))
            && self.cells.last() == Some(&(rows, cols))
            && self
                .cells
                .windows(2)
                .all(|w| (w[1].0 == w[0].0 && w[1].1 == w[0].1 + 1) || (w[1].0 == w[0].0 + 1 && w[1].1 == w[0].1))
    }

    pub fn weight_in(&self, m: &Matrix) -> usize {
        self.cells.iter().filter(|&&(i, j)| m.get(i, j) == 1).count()
    }
}

/// Maximum number of 1-entries on a monotone path, with a path achieving it.
pub fn grid_max_weight(m: &Matrix) -> Result<(usize, GridPath)> {
    let (rows, cols) = (m.rows, m.cols);
    if rows == 0 || cols == 0 {
        return Err(Error::Precondition("matrix must be nonempty".into()));
    }
    let mut best = vec![0u32; rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            let up = if i > 0 { best[(i - 1) * cols + j] } else { 0 };
            let left = if j > 0 { best[i * cols + j - 1] } else { 0 };
            best[i * cols + j] = up.max(left) + m.data[i * cols + j] as u32;
        }
    }
    let mut cells = Vec::with_capacity(rows + cols - 1);
    let (mut i, mut j) = (rows - 1, cols - 1);
    loop {
        cells.push((i + 1, j + 1));
        if i == 0 && j == 0 {
            break;
        }
        let from_up = i > 0 && (j == 0 || best[(i - 1) * cols + j] >= best[i * cols + j - 1]);
        if from_up {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    cells.reverse();
    let weight = best[rows * cols - 1] as usize;
    Ok((weight, GridPath { cells, weight }))
}

/// Largest matrix (rows + cols) enumerated by [`grid_max_weight_exhaustive`].
pub const EXHAUSTIVE_PATH_MAX_STEPS: usize = 24;

/// Enumerates every monotone path; for oracle checks on small matrices.
pub fn grid_max_weight_exhaustive(m: &Matrix) -> Result<usize> {
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::Precondition("matrix must be nonempty".into()));
    }
    if m.rows + m.cols > EXHAUSTIVE_PATH_MAX_STEPS {
        return Err(Error::TooLarge(format!("{}x{} path enumeration", m.rows, m.cols)));
    }
    fn walk(m: &Matrix, i: usize, j: usize, acc: usize, best: &mut usize) {
        let acc = acc + m.get(i, j) as usize;
        if i == m.rows && j == m.cols {
            *best = (*best).max(acc);
            return;
        }
        if i < m.rows {
            walk(m, i + 1, j, acc, best);
        }
        if j < m.cols {
            walk(m, i, j + 1, acc, best);
        }
    }
    let mut best = 0;
    walk(m, 1, 1, 0, &mut best);
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCheck {
    pub max_weight: usize,
    pub lis_nonzero: usize,
    pub lis_full: usize,
    pub nonzero_matches: bool,
    pub full_within_one: bool,
    pub full_exceeds: bool,
}

impl PathCheck {
    pub fn ok(&self) -> bool {
        self.nonzero_matches && self.full_within_one
    }
}

/// Compares the grid path DP with the LIS of `sigma(M)`.
pub fn lis_equals_max_path_check(m: &Matrix) -> Result<PathCheck> {
    let (w, _) = grid_max_weight(m)?;
    let s = sigma(m);
    let lis_nonzero = lis(&s.without_zeros());
    let lis_full = lis(&s);
    Ok(PathCheck {
        max_weight: w,
        lis_nonzero,
        lis_full,
        nonzero_matches: lis_nonzero == w,
        full_within_one: lis_full == w || lis_full == w + 1,
        full_exceeds: lis_full == w + 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyCase {
    pub u_bit: u32,
    pub v_bit: u32,
    pub sub: Matrix,
    pub max_weight: usize,
}

/// The 8x2 key sub-matrix for one bit pair and its maximum internal path weight.
pub fn key_case(u_bit: u32, v_bit: u32) -> KeyCase {
    let mut sub = Matrix::zeros(8, 2);
    for (c, bit) in [(1, u_bit), (2, v_bit)] {
        for (t, &b) in expand_bit_9(bit)[..8].iter().enumerate() {
            sub.set(t + 1, c, b);
        }
    }
    let (max_weight, _) = grid_max_weight(&sub).expect("8x2 is nonempty");
    KeyCase {
        u_bit,
        v_bit,
        sub,
        max_weight,
    }
}

/// Key sub-matrix `(i, j)` of a grid: rows `9(i-1)+1 ..= 9(i-1)+8`, columns
/// `8j-4` and `8j-3`.
pub fn key_submatrix(m: &Matrix, i: usize, j: usize) -> Matrix {
    m.submatrix(9 * (i - 1) + 1, 8 * j - 4, 8, 2)
}

/// `floor(r * s / (8 * (r + s)))`.
pub fn chain_bound(s: usize, r: usize) -> usize {
    if r + s == 0 {
        return 0;
    }
    r * s / (8 * (r + s))
}

/// Longest chain of 1-entries strictly increasing in both coordinates, found
/// as an LIS after mapping `(i, j)` to `r*i - j + 1` and listing each column's
/// values in decreasing order.
///
/// Every column must contain at least `ceil(s/4)` ones.
pub fn matrix_chain(a: &Matrix) -> Result<Vec<(usize, usize)>> {
    let (s, r) = (a.rows, a.cols);
    let need = s.div_ceil(4);
    if let Some(j) = (1..=r).find(|&j| a.column_ones(j) < need) {
        return Err(Error::Precondition(format!(
            "column {j} has {} ones, fewer than ceil(s/4) = {need}",
            a.column_ones(j)
        )));
    }
    let mut cells = Vec::new();
    for j in 1..=r {
        for i in (1..=s).rev() {
            if a.get(i, j) == 1 {
                cells.push((i, j));
            }
        }
    }
    let values: Vec<i64> = cells.iter().map(|&(i, j)| (r * i) as i64 - j as i64 + 1).collect();
    let chain: Vec<(usize, usize)> = lis_positions(&values).into_iter().map(|k| cells[k]).collect();
    let monotone = chain.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
    if !monotone || chain.len() < chain_bound(s, r) {
        return Err(Error::SelfCheck(format!(
            "chain of length {} (bound {}) monotone = {monotone}",
            chain.len(),
            chain_bound(s, r)
        )));
    }
    Ok(chain)
}

/// `(4p + 6q + min(p,q), 4p + 6q - 3 + min(p,q) + floor(pq / (16(p+q))))`:
/// the weight ceiling for equal codewords and floor for distinct ones.
pub fn type2_bounds(p: usize, q: usize) -> Result<(usize, usize)> {
    if p == 0 || q == 0 {
        return Err(Error::Precondition("p and q must be at least 1".into()));
    }
    let base = 4 * p + 6 * q + p.min(q);
    Ok((base, base - 3 + p * q / (16 * (p + q))))
}

/// Inner and outer codes for a `(p, q)` grid.
///
/// Inner: binary, length `p`, distance `ceil(p/4)`, dimension
/// `max(ceil(log2 F), min(ceil(p/8), 8))` capped at `p`, where `F` is the
/// smallest prime at least `q`; the cap of 8 keeps pairwise verification
/// exhaustive. Outer: length `q`, distance at least `ceil(q/2)`, Reed–Solomon
/// when the field embeds into the inner code and a greedy code otherwise.
pub fn type2_codes(p: usize, q: usize, seed: u64) -> Result<(BlockCode, BlockCode)> {
    if p == 0 || q == 0 {
        return Err(Error::Precondition("p and q must be at least 1".into()));
    }
    let field = (q as u64..).find(|&n| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0));
    let field = field.expect("primes are unbounded");
    let log_field = (u64::BITS - (field - 1).leading_zeros()) as usize;
    let k = p.div_ceil(8).min(8).max(log_field).min(p).max(1);
    let inner = gen_inner_binary(p, p.div_ceil(4), k, seed)?;
    let distance = q.div_ceil(2);
    let outer = match gen_outer(q, &inner, distance, seed.wrapping_add(1)) {
        Ok(code) => code,
        Err(Error::Precondition(_) | Error::CodeSearch(_)) => gen_outer_greedy(q, &inner, distance, seed.wrapping_add(1))?,
        Err(e) => return Err(e),
    };
    Ok((inner, outer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lis::lis_dp;
    use crate::rng;
    use rand::Rng;

    const FIG2: [&str; 18] = [
        "0000000000011000",
        "0000000000011000",
        "0001100000000000",
        "0001100000000000",
        "0001100000000000",
        "0001100000000000",
        "0000000000011000",
        "0000000000011000",
        "1110011111100111",
        "0001000000010000",
        "0001000000010000",
        "0000100000001000",
        "0000100000001000",
        "0000100000001000",
        "0000100000001000",
        "0001000000010000",
        "0001000000010000",
        "1110011111100111",
    ];

    fn fig2() -> Matrix {
        let text = format!("18 16\n{}\n", FIG2.join("\n"));
        Matrix::parse(&text).unwrap()
    }

    fn random_matrix(rng: &mut crate::rng::LabRng, rows: usize, cols: usize, density: f64) -> Matrix {
        let rows: Vec<Vec<u8>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_bool(density) as u8).collect())
            .collect();
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn bit_patterns() {
        assert_eq!(expand_bit_9(1), [1, 1, 0, 0, 0, 0, 1, 1, 0]);
        assert_eq!(expand_bit_9(0), [0, 0, 1, 1, 1, 1, 0, 0, 0]);
        for b in 0..2 {
            assert_eq!(expand_bit_9(b).iter().filter(|&&x| x == 1).count(), 4);
        }
    }

    #[test]
    fn figure_example_matrix() {
        let m = build_matrix_from_words(&[vec![0, 1], vec![1, 1]], &[vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!((m.rows(), m.cols()), (18, 16));
        assert_eq!(m, fig2());
        let check = lis_equals_max_path_check(&m).unwrap();
        assert!(check.nonzero_matches);
        assert_eq!(lis_dp(&sigma(&m).without_zeros()), check.max_weight);
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = fig2();
        assert_eq!(Matrix::parse(&m.to_text()).unwrap(), m);
        assert!(Matrix::parse("2 2\n01\n1\n").is_err());
        assert!(Matrix::parse("1 2\n02\n").is_err());
        assert!(Matrix::parse("2 2\n01\n").is_err());
    }

    #[test]
    fn build_matrix_through_codes() {
        let (inner, outer) = type2_codes(2, 2, 1).unwrap();
        let words = outer.enumerate(1 << 20).unwrap();
        for u in &words {
            let inst = build_matrix(u, u, &inner).unwrap();
            assert_eq!(inst.sigma.len(), 18 * 16);
            for i in 1..=2 {
                for j in 1..=2 {
                    let sub = key_submatrix(&inst.m, i, j);
                    for r in 1..=8 {
                        assert_eq!(sub.get(r, 1), sub.get(r, 2));
                    }
                }
            }
        }
        assert!(build_matrix(&[0], &[0, 1], &inner).is_err());
    }

    #[test]
    fn filler_columns_have_one_per_band() {
        let m = fig2();
        for j in (1..=16).filter(|j| j % 8 != 4 && j % 8 != 5) {
            assert_eq!(m.column_ones(j), 2);
            assert_eq!(m.get(9, j), 1);
            assert_eq!(m.get(18, j), 1);
        }
    }

    #[test]
    fn odd_blocks_depend_only_on_u() {
        let u = vec![vec![0, 1, 1], vec![1, 0, 0]];
        let a = build_matrix_from_words(&u, &[vec![0, 0, 0], vec![1, 1, 1]]).unwrap();
        let b = build_matrix_from_words(&u, &[vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        for block in (1..=4).step_by(2) {
            for j in 4 * block - 3..=4 * block {
                for i in 1..=27 {
                    assert_eq!(a.get(i, j), b.get(i, j));
                }
            }
        }
    }

    #[test]
    fn valuation_examples() {
        let mut m = Matrix::zeros(3, 8);
        m.set(1, 1, 1);
        m.set(2, 3, 1);
        let v = valuate(&m);
        assert_eq!(v[0], 1);
        assert_eq!(v[8 + 2], 11);
        let s = serialize(&m, &v);
        assert_eq!(s.len(), 24);
        assert_eq!(s.symbols()[0], 1);
        assert_eq!(s.symbols()[2 * 3 + 1], 11);
        assert!(sigma(&Matrix::zeros(4, 4)).symbols().iter().all(|&x| x == 0));
    }

    #[test]
    fn max_weight_examples() {
        assert_eq!(grid_max_weight(&Matrix::zeros(3, 5)).unwrap().0, 0);
        let ones = Matrix::from_rows(vec![vec![1; 7]; 4]).unwrap();
        let (w, path) = grid_max_weight(&ones).unwrap();
        assert_eq!(w, 10);
        assert!(path.is_monotone(4, 7));
        assert!(grid_max_weight(&Matrix::zeros(0, 3)).is_err());
    }

    #[test]
    fn dp_matches_path_enumeration() {
        let mut rng = rng::seeded(3);
        for _ in 0..300 {
            let rows = rng.gen_range(1..=8);
            let cols = rng.gen_range(1..=12);
            let m = random_matrix(&mut rng, rows, cols, 0.4);
            let (w, path) = grid_max_weight(&m).unwrap();
            assert_eq!(w, grid_max_weight_exhaustive(&m).unwrap());
            assert!(path.is_monotone(rows, cols));
            assert_eq!(path.weight_in(&m), w);
        }
    }

    #[test]
    fn path_check_on_random_matrices() {
        let mut rng = rng::seeded(4);
        let check = lis_equals_max_path_check(&Matrix::zeros(3, 3)).unwrap();
        assert_eq!((check.max_weight, check.lis_nonzero, check.lis_full), (0, 0, 1));
        for _ in 0..500 {
            let rows = rng.gen_range(1..=10);
            let cols = rng.gen_range(1..=16);
            let density = rng.gen_range(0.05..0.9);
            let m = random_matrix(&mut rng, rows, cols, density);
            let check = lis_equals_max_path_check(&m).unwrap();
            assert!(check.ok(), "{check:?}");
        }
    }

    #[test]
    fn key_case_weights() {
        assert_eq!(key_case(1, 1).max_weight, 5);
        assert_eq!(key_case(0, 0).max_weight, 5);
        assert_eq!(key_case(1, 0).max_weight, 6);
        assert_eq!(key_case(0, 1).max_weight, 6);
    }

    #[test]
    fn chain_examples() {
        let mut rng = rng::seeded(5);
        for _ in 0..20 {
            let mut a = Matrix::zeros(32, 32);
            for j in 1..=32 {
                let mut rows: Vec<usize> = (1..=32).collect();
                rand::seq::SliceRandom::shuffle(&mut rows[..], &mut rng);
                for &i in &rows[..8] {
                    a.set(i, j, 1);
                }
            }
            let chain = matrix_chain(&a).unwrap();
            assert!(chain.len() >= 2);
            assert!(chain.iter().all(|&(i, j)| a.get(i, j) == 1));
        }
        let mut diag = Matrix::zeros(4, 4);
        for k in 1..=4 {
            diag.set(k, k, 1);
        }
        assert_eq!(matrix_chain(&diag).unwrap(), vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
        assert_eq!(chain_bound(8, 8), 0);
        assert_eq!(chain_bound(32, 32), 2);
        assert!(matrix_chain(&Matrix::zeros(4, 4)).is_err());
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(type2_bounds(2, 2).unwrap(), (22, 19));
        assert_eq!(type2_bounds(64, 64).unwrap(), (704, 703));
        // 4*400 + 6*400 + 400 = 4400; floor(160000 / 12800) = 12.
        let (ub, lb) = type2_bounds(400, 400).unwrap();
        assert_eq!((ub, lb), (4400, 4409));
        assert!(lb > ub);
        assert!(type2_bounds(0, 3).is_err());
    }

    #[test]
    fn codes_for_small_scales() {
        for (p, q) in [(2, 2), (2, 4), (4, 8), (8, 8)] {
            let (inner, outer) = type2_codes(p, q, 9).unwrap();
            assert_eq!(inner.length(), p);
            assert!(inner.verified_distance() >= p.div_ceil(4));
            assert_eq!(outer.length(), q);
            assert!(outer.verified_distance() >= q.div_ceil(2));
        }
        let (inner, outer) = type2_codes(2, 8, 9).unwrap();
        assert_eq!(inner.size(), Some(4));
        assert!(outer.strategy().starts_with("greedy"));
        assert!(outer.verified_distance() >= 4);
    }
}
