//! The lower triangular affine group `LTA(m, 2)`, its action on monomials,
//! and monomial orbits.
//!
//! A map `(A, b)` acts on a monomial by substituting every `x_i` with
//! `y_i = x_i + Σ_{j<i} a_ij x_j + b_i` and expanding in `R_m`. Evaluated,
//! `ev((A, b)·g)` is `ev(g)` with positions permuted by `u ↦ A u + b`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{evaluate, BitVector, Caps};
use crate::monomial::{low_mask, Monomial};
use crate::young::young_partition;

/// Largest `log2` orbit size that [`orbit_enumerate`] will produce.
pub const ORBIT_ENUMERATION_MAX_LOG2: usize = 24;

/// Largest `m` for which the whole group is enumerated.
pub const GROUP_ENUMERATION_MAX_VARIABLES: usize = 6;

/// An element of `R_m`: a GF(2) sum of distinct monomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanPolynomial {
    m: usize,
    // Sorted, distinct bit sets.
    terms: Vec<u32>,
}

impl BooleanPolynomial {
    pub fn zero(m: usize) -> Self {
        BooleanPolynomial { m, terms: Vec::new() }
    }

    pub fn one(m: usize) -> Self {
        BooleanPolynomial { m, terms: vec![0] }
    }

    pub fn from_monomial(g: &Monomial) -> Self {
        BooleanPolynomial {
            m: g.m(),
            terms: vec![g.bits()],
        }
    }

    /// Sum of the given terms, cancelling repeated ones mod 2.
    pub fn from_terms<I: IntoIterator<Item = u32>>(m: usize, terms: I) -> Self {
        let mut t: Vec<u32> = terms.into_iter().collect();
        cancel_pairs(&mut t);
        BooleanPolynomial { m, terms: t }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms
            .iter()
            .map(move |&b| Monomial::new(self.m, b).expect("term within m variables"))
    }

    pub fn term_bits(&self) -> &[u32] {
        &self.terms
    }

    pub fn contains(&self, g: &Monomial) -> bool {
        self.terms.binary_search(&g.bits()).is_ok()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.count_ones() as usize).max()
    }

    pub fn add(&self, other: &BooleanPolynomial) -> BooleanPolynomial {
        let mut t = self.terms.clone();
        t.extend_from_slice(&other.terms);
        cancel_pairs(&mut t);
        BooleanPolynomial { m: self.m, terms: t }
    }

    /// Product in `R_m`, using `x_i^2 = x_i` termwise.
    pub fn mul(&self, other: &BooleanPolynomial) -> BooleanPolynomial {
        let mut t = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &a in &self.terms {
            for &b in &other.terms {
                t.push(a | b);
            }
        }
        cancel_pairs(&mut t);
        BooleanPolynomial { m: self.m, terms: t }
    }

    pub fn evaluate(&self) -> Result<BitVector> {
        let mut v = BitVector::zeros(1 << self.m);
        Caps::default().check_matrix(self.m)?;
        for g in self.terms() {
            v.xor_assign(&evaluate(&g)?);
        }
        Ok(v)
    }
}

fn cancel_pairs(t: &mut Vec<u32>) {
    t.sort_unstable();
    let mut out = Vec::with_capacity(t.len());
    let mut i = 0;
    while i < t.len() {
        let mut j = i;
        while j < t.len() && t[j] == t[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(t[i]);
        }
        i = j;
    }
    *t = out;
}

impl fmt::Display for BooleanPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Largest terms first.
        for (n, g) in self.terms().collect::<Vec<_>>().iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BooleanPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `x ↦ A x + b` with `A` unit lower triangular.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LowerTriangularAffineMap {
    m: usize,
    // Row i of A as a bit set over columns; bit i always set.
    rows: Vec<u32>,
    b: u32,
}

impl LowerTriangularAffineMap {
    /// Builds a map from the rows of `A` (bit `j` of `rows[i]` is `a_ij`)
    /// and the translation bits `b`.
    pub fn new(m: usize, rows: Vec<u32>, b: u32) -> Result<Self> {
        if rows.len() != m {
            return Err(Error::Parse(format!("expected {m} rows, got {}", rows.len())));
        }
        for (i, &r) in rows.iter().enumerate() {
            if r & (1 << i) == 0 || r >> i != 1 {
                return Err(Error::Parse(format!(
                    "row {i} ({r:#b}) is not unit lower triangular"
                )));
            }
        }
        if b & !low_mask(m) != 0 {
            return Err(Error::Parse(format!("translation {b:#b} has bits beyond m = {m}")));
        }
        Ok(LowerTriangularAffineMap { m, rows, b })
    }

    pub fn identity(m: usize) -> Self {
        LowerTriangularAffineMap {
            m,
            rows: (0..m).map(|i| 1u32 << i).collect(),
            b: 0,
        }
    }

    /// Uniform element of `LTA(m, 2)`: every strictly lower entry and every
    /// `b_i` is an independent fair bit.
    pub fn random(m: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(m, &mut rng)
    }

    pub fn random_with<R: Rng>(m: usize, rng: &mut R) -> Self {
        let rows = (0..m)
            .map(|i| {
                let lower = if i == 0 { 0 } else { rng.random::<u32>() & low_mask(i) };
                lower | 1 << i
            })
            .collect();
        let b = rng.random::<u32>() & low_mask(m);
        LowerTriangularAffineMap { m, rows, b }
    }

    /// Every element of `LTA(m, 2)`, `2^{m(m-1)/2 + m}` maps.
    pub fn all(m: usize) -> Result<impl Iterator<Item = LowerTriangularAffineMap>> {
        if m > GROUP_ENUMERATION_MAX_VARIABLES {
            return Err(Error::cap(
                "variable count for group enumeration",
                m as u64,
                GROUP_ENUMERATION_MAX_VARIABLES as u64,
            ));
        }
        let lower = m * (m - 1) / 2;
        Ok((0u64..1 << (lower + m)).map(move |code| {
            let mut rest = code;
            let rows = (0..m)
                .map(|i| {
                    let lo = (rest & ((1u64 << i) - 1)) as u32;
                    rest >>= i;
                    lo | 1 << i
                })
                .collect();
            LowerTriangularAffineMap {
                m,
                rows,
                b: rest as u32,
            }
        }))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn b(&self, i: usize) -> bool {
        self.b >> i & 1 == 1
    }

    /// `A u + b` on a point given by its integer index.
    pub fn apply(&self, u: u32) -> u32 {
        let mut out = self.b;
        for (i, &r) in self.rows.iter().enumerate() {
            out ^= ((r & u).count_ones() & 1) << i;
        }
        out
    }

    /// `y_i = x_i + Σ_{j<i} a_ij x_j + b_i`.
    pub fn substitution(&self, i: usize) -> BooleanPolynomial {
        let mut terms: Vec<u32> = (0..=i)
            .filter(|&j| self.a(i, j))
            .map(|j| 1u32 << j)
            .collect();
        if self.b(i) {
            terms.push(0);
        }
        BooleanPolynomial::from_terms(self.m, terms)
    }

    /// `(A, b)·g`, the product of the substitutions for the variables of `g`.
    pub fn act(&self, g: &Monomial) -> BooleanPolynomial {
        g.indices()
            .fold(BooleanPolynomial::one(self.m), |acc, i| acc.mul(&self.substitution(i)))
    }

    /// Position permutation `u ↦ index of A u + b`. Applying it to a codeword
    /// `c` gives `c'[u] = c[perm[u]]`, which maps `ev(P)` to `ev((A, b)·P)`.
    pub fn coordinate_permutation(&self) -> Vec<usize> {
        (0..1u32 << self.m).map(|u| self.apply(u) as usize).collect()
    }
}

impl fmt::Debug for LowerTriangularAffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LTA(m={}, A=[", self.m)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            for j in 0..=i {
                write!(f, "{}", r >> j & 1)?;
            }
        }
        write!(f, "], b={:0width$b})", self.b.reverse_bits() >> (32 - self.m.max(1)), width = self.m)
    }
}

/// `lta_action`: the polynomial `(A, b)·g`.
pub fn lta_action(map: &LowerTriangularAffineMap, g: &Monomial) -> Result<BooleanPolynomial> {
    if map.m() != g.m() {
        return Err(Error::IncompatibleVariableCount(map.m(), g.m()));
    }
    Ok(map.act(g))
}

/// `|LTA(m,2)·g| = 2^{deg g + |λ_g|}`.
pub fn orbit_size(g: &Monomial) -> BigUint {
    BigUint::from(2u32).pow((g.degree() + young_partition(g).size()) as u32)
}

/// Free entries of the subgroup `LTA(m,2)_g`: `a_ij` with `i ∈ ind(g)`,
/// `j ∉ ind(g)`, `j < i`, and `b_i` with `i ∈ ind(g)`.
fn stabilizer_free_entries(g: &Monomial) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut entries = Vec::new();
    for i in g.indices() {
        for j in (0..i).filter(|&j| !g.contains(j)) {
            entries.push((i, j));
        }
    }
    (entries, g.indices().collect())
}

/// The orbit of `g`, one polynomial per element of `LTA(m,2)_g`.
pub fn orbit_enumerate(g: &Monomial) -> Result<Vec<BooleanPolynomial>> {
    let (entries, translations) = stabilizer_free_entries(g);
    let free = entries.len() + translations.len();
    if free > ORBIT_ENUMERATION_MAX_LOG2 {
        return Err(Error::cap(
            "log2 orbit size",
            free as u64,
            ORBIT_ENUMERATION_MAX_LOG2 as u64,
        ));
    }
    let m = g.m();
    let mut out = Vec::with_capacity(1 << free);
    for params in 0u64..1 << free {
        let mut rows: Vec<u32> = (0..m).map(|i| 1u32 << i).collect();
        for (n, &(i, j)) in entries.iter().enumerate() {
            if params >> n & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        let mut b = 0u32;
        for (n, &i) in translations.iter().enumerate() {
            if params >> (entries.len() + n) & 1 == 1 {
                b |= 1 << i;
            }
        }
        let map = LowerTriangularAffineMap { m, rows, b };
        out.push(map.act(g));
    }
    Ok(out)
}

/// Evaluations of `(A, b)·g` over the whole group, computed by permuting
/// positions of `ev(g)` rather than by expanding polynomials.
pub fn orbit_evaluations_exhaustive(g: &Monomial) -> Result<BTreeSet<BitVector>> {
    let ev = evaluate(g)?;
    let mut out = BTreeSet::new();
    for map in LowerTriangularAffineMap::all(g.m())? {
        out.insert(ev.permute(&map.coordinate_permutation()));
    }
    Ok(out)
}
