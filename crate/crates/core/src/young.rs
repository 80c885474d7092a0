//! Young diagrams attached to monomials, and Gaussian binomial coefficients.
//!
//! A monomial `g = x_{i_1} ... x_{i_d}` (with `i_1 < ... < i_d`) of degree
//! `d` in `m` variables corresponds to the partition
//! `λ_g = (i_d - (d-1), ..., i_2 - 1, i_1 - 0)` inside the `d × (m-d)` grid.
//! Part `λ_k = i_k - (k-1)` counts the variables absent from `g` below
//! `x_{i_k}`, which is why `|λ_g|` shows up in orbit sizes.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A partition inside a `rows × width` grid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    /// Parts in weakly decreasing order, exactly `rows` of them (zeros
    /// included).
    parts: Vec<usize>,
    width: usize,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>, rows: usize, width: usize) -> Result<Self> {
        if parts.len() > rows {
            return Err(Error::InvalidPartition(format!(
                "{} parts do not fit in {rows} rows",
                parts.len()
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        if parts.first().is_some_and(|&p| p > width) {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} exceed width {width}"
            )));
        }
        parts.resize(rows, 0);
        Ok(Partition { parts, width })
    }

    /// Parts, largest first.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of boxes `|λ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// The partition `λ_g`; the constant monomial maps to the empty partition
/// in the `0 × m` grid.
pub fn young_partition(g: &Monomial) -> Partition {
    let d = g.degree();
    let mut parts: Vec<usize> = g.indices().enumerate().map(|(k, i)| i - k).collect();
    parts.reverse();
    Partition {
        parts,
        width: g.m() - d,
    }
}

/// Inverse of [`young_partition`]: `i_k = λ_k + (k-1)` with `λ_1` the
/// smallest part.
pub fn monomial_from_partition(lambda: &Partition) -> Result<Monomial> {
    let m = lambda.rows() + lambda.width();
    let indices: Vec<usize> = lambda
        .parts()
        .iter()
        .rev()
        .enumerate()
        .map(|(k, &part)| part + k)
        .collect();
    Monomial::from_indices(m, &indices)
}

/// Every partition inside the `rows × width` grid.
pub fn partitions_in_grid(rows: usize, width: usize) -> Vec<Partition> {
    fn extend(prefix: &mut Vec<usize>, rows: usize, bound: usize, width: usize, out: &mut Vec<Partition>) {
        if prefix.len() == rows {
            out.push(Partition {
                parts: prefix.clone(),
                width,
            });
            return;
        }
        for part in (0..=bound).rev() {
            prefix.push(part);
            extend(prefix, rows, part, width, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(rows), rows, width, width, &mut out);
    out
}

/// The Gaussian binomial coefficient `[m choose r]_2`, the number of
/// `r`-dimensional subspaces of `F_2^m`:
/// `(2^m - 1)(2^m - 2) ... (2^m - 2^{r-1}) / ((2^r - 1)(2^r - 2) ... (2^r - 2^{r-1}))`.
pub fn gaussian_binomial(m: i64, r: i64) -> Result<BigUint> {
    if r < 0 || m < 0 || r > m {
        return Err(Error::GaussianBinomialRange { m, r });
    }
    let two = BigUint::from(2u32);
    let pow = |e: i64| two.pow(e as u32);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= pow(m) - pow(i);
        den *= pow(r) - pow(i);
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}
