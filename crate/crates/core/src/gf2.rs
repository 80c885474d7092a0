//! Bit-packed vectors and matrices over GF(2), the evaluation map, and the
//! brute-force oracles used to check the code formulas.
//!
//! Positions of a length-`2^m` vector are points `u ∈ F_2^m`, indexed by the
//! integer `u_0 + 2 u_1 + ... + 2^{m-1} u_{m-1}`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialSet};

/// Resource limits for matrix construction and codeword enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `m` for which length-`2^m` vectors are materialized.
    pub matrix_variables: usize,
    /// Largest dimension whose `2^k` codewords may be enumerated.
    pub enumeration_dimension: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            matrix_variables: 16,
            enumeration_dimension: 24,
        }
    }
}

impl Caps {
    pub(crate) fn check_matrix(&self, m: usize) -> Result<()> {
        if m > self.matrix_variables {
            return Err(Error::cap(
                "variable count for matrix construction",
                m as u64,
                self.matrix_variables as u64,
            ));
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            len,
            words: vec![u64::MAX; len.div_ceil(64)],
        };
        v.clear_tail();
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        BitVector { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// `out[u] = self[perm[u]]`.
    pub fn permute(&self, perm: &[usize]) -> BitVector {
        assert_eq!(perm.len(), self.len);
        BitVector::from_bools(perm.iter().map(|&p| self.get(p)))
    }

    fn lowest_set_bit(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn clear_tail(&mut self) {
        if !self.len.is_multiple_of(64) {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.len % 64)) - 1;
            }
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl std::str::FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?} in bit row"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(BitVector::from_bools(bits))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    ncols: usize,
    rows: Vec<BitVector>,
}

impl BinaryMatrix {
    pub fn new(ncols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::RaggedMatrix);
        }
        Ok(BinaryMatrix { ncols, rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = BitVector::zeros(n);
                r.set(i, true);
                r
            })
            .collect();
        BinaryMatrix { ncols: n, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &BinaryMatrix) -> BinaryMatrix {
        let ncols = self.ncols * other.ncols;
        let mut rows = Vec::with_capacity(self.nrows() * other.nrows());
        for a in &self.rows {
            for b in &other.rows {
                let mut row = BitVector::zeros(ncols);
                for ja in 0..self.ncols {
                    if a.get(ja) {
                        for jb in 0..other.ncols {
                            if b.get(jb) {
                                row.set(ja * other.ncols + jb, true);
                            }
                        }
                    }
                }
                rows.push(row);
            }
        }
        BinaryMatrix { ncols, rows }
    }

    /// Applies the same coordinate permutation to every row.
    pub fn permute_columns(&self, perm: &[usize]) -> BinaryMatrix {
        BinaryMatrix {
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.permute(perm)).collect(),
        }
    }

    pub fn stack(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.ncols != other.ncols {
            return Err(Error::RaggedMatrix);
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BinaryMatrix {
            ncols: self.ncols,
            rows,
        })
    }

    /// `M · v^T` for each row, i.e. the syndrome of `v`.
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        BitVector::from_bools(self.rows.iter().map(|r| r.dot(v)))
    }

    /// One line per row, `'0'`/`'1'` characters.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.nrows() * (self.ncols + 1));
        for r in &self.rows {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<BitVector>>>()?;
        let ncols = rows.first().map_or(0, BitVector::len);
        BinaryMatrix::new(ncols, rows)
    }

    /// Basis of the row space in echelon form: each basis vector has a
    /// distinct lowest set bit (its pivot) that no other basis vector has.
    fn echelon_basis(&self) -> Vec<BitVector> {
        let mut pivots: Vec<Option<usize>> = vec![None; self.ncols];
        let mut basis: Vec<BitVector> = Vec::new();
        for r in &self.rows {
            let mut v = r.clone();
            while let Some(p) = v.lowest_set_bit() {
                match pivots[p] {
                    Some(b) => v.xor_assign(&basis[b]),
                    None => {
                        pivots[p] = Some(basis.len());
                        basis.push(v);
                        break;
                    }
                }
            }
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.echelon_basis().len()
    }

    /// Basis of `{ v : M v^T = 0 }`, one vector per row.
    pub fn nullspace_basis(&self) -> BinaryMatrix {
        // Reduced row echelon form with pivot columns.
        let mut rows: Vec<BitVector> = self.rows.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            if r == rows.len() {
                break;
            }
            let Some(sel) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, sel);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivot_cols.push(col);
            r += 1;
        }
        let mut is_pivot = vec![false; self.ncols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let basis = (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::zeros(self.ncols);
                v.set(free, true);
                for (row, &pc) in rows.iter().zip(&pivot_cols) {
                    if row.get(free) {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect();
        BinaryMatrix {
            ncols: self.ncols,
            rows: basis,
        }
    }

    /// Whether `v` lies in the row space (augmented-rank test).
    pub fn spans(&self, v: &BitVector) -> bool {
        let mut aug = self.rows.clone();
        aug.push(v.clone());
        let aug = BinaryMatrix {
            ncols: self.ncols,
            rows: aug,
        };
        aug.rank() == self.rank()
    }

    /// Whether the row space of `other` is contained in that of `self`.
    pub fn row_space_contains(&self, other: &BinaryMatrix) -> bool {
        if self.ncols != other.ncols {
            return false;
        }
        let r = self.rank();
        self.stack(other).map(|s| s.rank() == r).unwrap_or(false)
    }

    pub fn row_space_equal(&self, other: &BinaryMatrix) -> bool {
        self.ncols == other.ncols
            && self.rank() == other.rank()
            && self.row_space_contains(other)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.nrows(), self.ncols)?;
        f.write_str(&self.to_text())
    }
}

/// `ev(g)`: bit `u` is `1` iff every variable of `g` is `1` at `u`.
pub fn evaluate(g: &Monomial) -> Result<BitVector> {
    evaluate_with(g, &Caps::default())
}

pub fn evaluate_with(g: &Monomial, caps: &Caps) -> Result<BitVector> {
    caps.check_matrix(g.m())?;
    let n = 1usize << g.m();
    let mask = g.bits() as usize;
    let mut v = BitVector::zeros(n);
    for u in 0..n {
        if u & mask == mask {
            v.words[u / 64] |= 1 << (u % 64);
        }
    }
    Ok(v)
}

/// One row `ev(g)` per monomial, in increasing bit-set order.
pub fn generator_matrix(set: &MonomialSet) -> Result<BinaryMatrix> {
    let caps = Caps::default();
    caps.check_matrix(set.m())?;
    let rows = set
        .iter()
        .map(|g| evaluate_with(g, &caps))
        .collect::<Result<Vec<_>>>()?;
    BinaryMatrix::new(1 << set.m(), rows)
}

/// `G_m`, the `m`-fold Kronecker power of `[[1, 1], [0, 1]]`, built by
/// repeated Kronecker products.
pub fn kronecker_gm(m: usize) -> Result<BinaryMatrix> {
    Caps::default().check_matrix(m)?;
    let base = BinaryMatrix::new(
        2,
        vec![
            BitVector::from_bools([true, true]),
            BitVector::from_bools([false, true]),
        ],
    )?;
    let mut g = base.clone();
    for _ in 1..m {
        g = g.kronecker(&base);
    }
    Ok(g)
}

/// Minimum nonzero weight of the row space and the number of codewords of
/// that weight, by enumerating all `2^k` codewords in Gray-code order.
pub fn min_weight_bruteforce(matrix: &BinaryMatrix) -> Result<(usize, u64)> {
    min_weight_bruteforce_with(matrix, &Caps::default())
}

pub fn min_weight_bruteforce_with(matrix: &BinaryMatrix, caps: &Caps) -> Result<(usize, u64)> {
    let basis = matrix.echelon_basis();
    let k = basis.len();
    if k == 0 {
        return Err(Error::NoNonzeroCodeword);
    }
    if k > caps.enumeration_dimension {
        return Err(Error::cap(
            "code dimension for enumeration",
            k as u64,
            caps.enumeration_dimension as u64,
        ));
    }
    // Fix the top `split` message bits per chunk and walk a Gray code over
    // the rest; chunks are independent.
    let split = k.saturating_sub(12).min(12);
    let low = k - split;
    let (best, count) = (0u64..1 << split)
        .into_par_iter()
        .map(|chunk| {
            let mut word = BitVector::zeros(matrix.ncols);
            for (j, b) in basis[low..].iter().enumerate() {
                if chunk >> j & 1 == 1 {
                    word.xor_assign(b);
                }
            }
            let mut best = usize::MAX;
            let mut count = 0u64;
            let mut consider = |w: &BitVector| {
                if w.is_zero() {
                    return;
                }
                let wt = w.weight();
                if wt < best {
                    best = wt;
                    count = 1;
                } else if wt == best {
                    count += 1;
                }
            };
            consider(&word);
            for i in 1u64..(1 << low) {
                word.xor_assign(&basis[i.trailing_zeros() as usize]);
                consider(&word);
            }
            (best, count)
        })
        .reduce(
            || (usize::MAX, 0),
            |a, b| match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal => (a.0, a.1 + b.1),
            },
        );
    Ok((best, count))
}

/// Every codeword of the given weight, by the same enumeration.
pub fn codewords_of_weight(matrix: &BinaryMatrix, weight: usize) -> Result<Vec<BitVector>> {
    let caps = Caps::default();
    let basis = matrix.echelon_basis();
    let k = basis.len();
    if k > caps.enumeration_dimension {
        return Err(Error::cap(
            "code dimension for enumeration",
            k as u64,
            caps.enumeration_dimension as u64,
        ));
    }
    let mut out = Vec::new();
    let mut word = BitVector::zeros(matrix.ncols);
    if weight == 0 {
        out.push(word.clone());
    }
    for i in 1u64..(1 << k) {
        word.xor_assign(&basis[i.trailing_zeros() as usize]);
        if word.weight() == weight {
            out.push(word.clone());
        }
    }
    Ok(out)
}
