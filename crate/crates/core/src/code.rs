//! Monomial codes `C(I)`: duality, Reed-Muller sandwich degrees, minimum
//! distance and minimum-weight codewords.

use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BinaryMatrix, BitVector, Caps};
use crate::lta::{orbit_enumerate, LowerTriangularAffineMap};
use crate::monomial::{Monomial, MonomialSet};
use crate::young::young_partition;

/// Largest `|W_min|` that [`MonomialCode::min_weight_enumerate`] will build.
pub const MIN_WEIGHT_ENUMERATION_CAP: u64 = 1 << 20;

/// The code spanned by the evaluations of a monomial set.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialCode {
    set: MonomialSet,
    decreasing: bool,
    weakly_decreasing: bool,
}

/// Parameters of `C(I)^⊥` obtained from those of `C(I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualParameters {
    pub r_minus: usize,
    pub r_plus: usize,
    pub min_distance: u64,
}

impl MonomialCode {
    pub fn new(set: MonomialSet) -> Self {
        let decreasing = set.is_decreasing();
        let weakly_decreasing = set.is_weakly_decreasing();
        MonomialCode {
            set,
            decreasing,
            weakly_decreasing,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = u32>>(m: usize, bits: I) -> Result<Self> {
        Ok(Self::new(MonomialSet::from_bits(m, bits)?))
    }

    /// `R(r, m)`, spanned by all monomials of degree at most `r`.
    pub fn reed_muller(r: usize, m: usize) -> Result<Self> {
        Ok(Self::new(MonomialSet::degree_at_most(m, r)?))
    }

    pub fn m(&self) -> usize {
        self.set.m()
    }

    pub fn monomials(&self) -> &MonomialSet {
        &self.set
    }

    pub fn length(&self) -> u64 {
        1 << self.m()
    }

    pub fn dimension(&self) -> usize {
        self.set.len()
    }

    pub fn is_decreasing(&self) -> bool {
        self.decreasing
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.weakly_decreasing
    }

    fn require_decreasing(&self) -> Result<()> {
        if !self.decreasing {
            return Err(Error::NotDecreasing);
        }
        Ok(())
    }

    fn require_nonempty(&self) -> Result<()> {
        self.require_decreasing()?;
        if self.set.is_empty() {
            return Err(Error::EmptyCode);
        }
        Ok(())
    }

    pub fn generator_matrix(&self) -> Result<BinaryMatrix> {
        gf2::generator_matrix(&self.set)
    }

    /// `C(M_m \ Ǐ)`, the dual of a decreasing code.
    pub fn dual(&self) -> Result<MonomialCode> {
        self.require_decreasing()?;
        Ok(Self::new(self.set.complements().complement_in_all()?))
    }

    /// The dual computed as a nullspace, for any `I`.
    pub fn dual_by_nullspace(&self) -> Result<BinaryMatrix> {
        Ok(self.generator_matrix()?.nullspace_basis())
    }

    /// Largest `r` with `x_0 ... x_{r-1} ∈ I`.
    pub fn r_plus(&self) -> Result<usize> {
        self.require_nonempty()?;
        let m = self.m();
        Ok((0..=m)
            .take_while(|&r| self.set.contains(&Monomial::lowest_of_degree(m, r).expect("r <= m")))
            .last()
            .unwrap_or(0))
    }

    /// Largest `r` with `x_{m-r} ... x_{m-1} ∈ I`.
    pub fn r_minus(&self) -> Result<usize> {
        self.require_nonempty()?;
        let m = self.m();
        Ok((0..=m)
            .take_while(|&r| self.set.contains(&Monomial::highest_of_degree(m, r).expect("r <= m")))
            .last()
            .unwrap_or(0))
    }

    /// `2^{m - r₊}`.
    pub fn min_distance(&self) -> Result<u64> {
        Ok(1 << (self.m() - self.r_plus()?))
    }

    /// `r₋(C^⊥) = m - 1 - r₊`, `r₊(C^⊥) = m - 1 - r₋` and
    /// `d(C^⊥) = 2^{r₋ + 1}`. `None` for the full space, whose dual is zero.
    pub fn dual_parameters(&self) -> Result<Option<DualParameters>> {
        let r_plus = self.r_plus()?;
        let r_minus = self.r_minus()?;
        if r_plus == self.m() {
            return Ok(None);
        }
        Ok(Some(DualParameters {
            r_minus: self.m() - 1 - r_plus,
            r_plus: self.m() - 1 - r_minus,
            min_distance: 1 << (r_minus + 1),
        }))
    }

    /// `C(I) ⊆ C(I)^⊥`, decided by checking that no `f ∈ I` has `f̌ ∈ I`.
    pub fn weakly_self_dual(&self) -> Result<bool> {
        self.require_decreasing()?;
        let half = 1usize << (self.m() - 1);
        if self.set.len() > half {
            return Err(Error::RateAboveHalf {
                size: self.set.len(),
                half,
            });
        }
        Ok(self.set.iter().all(|f| !self.set.contains(&f.complement())))
    }

    /// `|W_min| = 2^{r₊} Σ_{g ∈ I_{r₊}} 2^{|λ_g|}`.
    pub fn min_weight_count(&self) -> Result<BigUint> {
        let r = self.r_plus()?;
        let sum: BigUint = self
            .set
            .of_degree(r)
            .map(|g| BigUint::from(2u32).pow(young_partition(g).size() as u32))
            .sum();
        Ok(sum << r)
    }

    /// Minimum-weight codewords, as evaluations of the orbits of the
    /// degree-`r₊` members of `I`.
    pub fn min_weight_enumerate(&self) -> Result<BTreeSet<BitVector>> {
        Caps::default().check_matrix(self.m())?;
        let count = self.min_weight_count()?;
        if count > BigUint::from(MIN_WEIGHT_ENUMERATION_CAP) {
            return Err(Error::cap(
                "minimum-weight codeword count",
                u64::try_from(&count).unwrap_or(u64::MAX),
                MIN_WEIGHT_ENUMERATION_CAP,
            ));
        }
        let r = self.r_plus()?;
        let mut out = BTreeSet::new();
        for f in self.set.of_degree(r) {
            for p in orbit_enumerate(f)? {
                out.insert(p.evaluate()?);
            }
        }
        Ok(out)
    }

    /// Exhaustive minimum distance and count over all `2^{|I|}` codewords.
    pub fn min_weight_bruteforce(&self) -> Result<(usize, BigUint)> {
        let (d, count) = gf2::min_weight_bruteforce(&self.generator_matrix()?)?;
        Ok((d, BigUint::from(count)))
    }

    /// Codeword membership by augmented rank.
    pub fn contains(&self, word: &BitVector) -> Result<bool> {
        Ok(self.generator_matrix()?.spans(word))
    }

    /// Whether `u ↦ A u + b` maps the code onto itself.
    pub fn is_invariant_under(&self, map: &LowerTriangularAffineMap) -> Result<bool> {
        if map.m() != self.m() {
            return Err(Error::IncompatibleVariableCount(self.m(), map.m()));
        }
        let g = self.generator_matrix()?;
        Ok(g.row_space_equal(&g.permute_columns(&map.coordinate_permutation())))
    }

    pub fn to_file(&self) -> CodeFile {
        CodeFile {
            m: self.m(),
            monomials: self.set.bits(),
            meta: serde_json::Map::new(),
        }
    }
}

impl std::fmt::Debug for MonomialCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C({:?})", self.set)
    }
}

/// On-disk description of a code: `{"m", "monomials", "meta"}` with the
/// monomials as bit-set integers in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeFile {
    pub m: usize,
    pub monomials: Vec<u32>,
    #[serde(default)]
    pub meta: serde_json::Map<String, serde_json::Value>,
}

impl CodeFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut file: CodeFile = serde_json::from_str(text)?;
        file.monomials.sort_unstable();
        file.monomials.dedup();
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_code(&self) -> Result<MonomialCode> {
        MonomialCode::from_bits(self.m, self.monomials.iter().copied())
    }

    /// Canonical serialization: sorted monomials, sorted meta keys, trailing
    /// newline.
    pub fn to_canonical_json(&self) -> String {
        let mut canonical = self.clone();
        canonical.monomials.sort_unstable();
        canonical.monomials.dedup();
        let mut text = serde_json::to_string_pretty(&canonical).expect("serializable");
        text.push('\n');
        text
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_canonical_json())?;
        Ok(())
    }
}
