//! Square-free monomials over `x_0, ..., x_{m-1}` and the two partial orders
//! on them.
//!
//! A monomial is stored as a bit set: bit `j` is set iff `x_j` divides it.
//! The same integer is the row index of the monomial in the Kronecker
//! generator matrix and its position in the canonical code file.
//!
//! Two orders are provided:
//!
//! * the weak order `f ≼_w g`, which is plain divisibility;
//! * the order `f ≼ g`: for equal degrees, the sorted index tuples are
//!   compared componentwise; otherwise `f ≼ g` iff some divisor `g*` of `g`
//!   with `deg g* = deg f` satisfies `f ≼ g*`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported variable count.
pub const MAX_VARIABLES: usize = 30;

/// Largest variable count for which exhaustive structures (intervals,
/// closures, the full monomial set) are built.
pub const EXHAUSTIVE_MAX_VARIABLES: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    // Field order matters for the derived `Ord`: within a fixed `m` the
    // order is the integer order on bit sets.
    m: u8,
    bits: u32,
}

impl Monomial {
    pub fn new(m: usize, bits: u32) -> Result<Self> {
        check_variable_count(m)?;
        if m < 32 && bits >> m != 0 {
            return Err(Error::IndexOutOfRange {
                index: 31 - bits.leading_zeros() as usize,
                m,
            });
        }
        Ok(Monomial { m: m as u8, bits })
    }

    pub fn from_indices(m: usize, indices: &[usize]) -> Result<Self> {
        check_variable_count(m)?;
        let mut bits = 0u32;
        for &i in indices {
            if i >= m {
                return Err(Error::IndexOutOfRange { index: i, m });
            }
            bits |= 1 << i;
        }
        Ok(Monomial { m: m as u8, bits })
    }

    /// The constant monomial `1`.
    pub fn one(m: usize) -> Result<Self> {
        Monomial::new(m, 0)
    }

    pub fn variable(m: usize, i: usize) -> Result<Self> {
        Monomial::from_indices(m, &[i])
    }

    /// `x_0 x_1 ... x_{r-1}`, the smallest monomial of degree `r`.
    pub fn lowest_of_degree(m: usize, r: usize) -> Result<Self> {
        check_variable_count(m)?;
        if r > m {
            return Err(Error::IndexOutOfRange { index: r, m });
        }
        Monomial::new(m, low_mask(r))
    }

    /// `x_{m-r} ... x_{m-1}`, the largest monomial of degree `r`.
    pub fn highest_of_degree(m: usize, r: usize) -> Result<Self> {
        check_variable_count(m)?;
        if r > m {
            return Err(Error::IndexOutOfRange { index: r, m });
        }
        Monomial::new(m, low_mask(r) << (m - r))
    }

    /// Parses `"1"`, a product such as `"x3*x1*x0"` or `"x0x2"` (any order),
    /// or a decimal bit-set integer.
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let text = text.trim();
        if text == "1" && m > 0 {
            return Monomial::one(m);
        }
        if !text.is_empty() && text.bytes().all(|b| b.is_ascii_digit()) {
            let bits: u32 = text
                .parse()
                .map_err(|_| Error::MonomialParse(text.to_string()))?;
            return Monomial::new(m, bits);
        }
        let mut indices = Vec::new();
        for factor in text.split('*') {
            let factor = factor.trim();
            let rest = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::MonomialParse(text.to_string()))?;
            for var in rest.split('x') {
                let index = var
                    .strip_prefix('_')
                    .unwrap_or(var)
                    .parse::<usize>()
                    .map_err(|_| Error::MonomialParse(text.to_string()))?;
                if indices.contains(&index) {
                    // x_i^2 = x_i
                    continue;
                }
                indices.push(index);
            }
        }
        Monomial::from_indices(m, &indices)
    }

    pub fn m(&self) -> usize {
        self.m as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn degree(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_one(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 32 && self.bits & (1 << i) != 0
    }

    /// Variable indices in increasing order (`ind(g)`).
    pub fn indices(&self) -> impl Iterator<Item = usize> + Clone {
        BitIter(self.bits)
    }

    /// Multiplicative complement: the product of the variables absent from
    /// `self`.
    pub fn complement(&self) -> Monomial {
        Monomial {
            m: self.m,
            bits: !self.bits & low_mask(self.m()),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.compatible(other)?;
        Ok(Monomial {
            m: self.m,
            bits: self.bits & other.bits,
        })
    }

    /// Product in `R_m` (where `x_i^2 = x_i`).
    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.compatible(other)?;
        Ok(Monomial {
            m: self.m,
            bits: self.bits | other.bits,
        })
    }

    /// `self ≼_w other`, i.e. `self` divides `other`.
    pub fn weak_leq(&self, other: &Monomial) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.divides(other))
    }

    /// `self ≼ other`.
    pub fn leq(&self, other: &Monomial) -> Result<bool> {
        self.compatible(other)?;
        Ok(leq_bits(self.bits, other.bits, self.m()))
    }

    /// Immediate predecessors under `≼`: drop one variable, or shift one
    /// variable `x_i` down to `x_{i-1}` when `x_{i-1}` is absent. Their
    /// reflexive-transitive closure is the downset of `self`.
    pub fn predecessors(&self) -> impl Iterator<Item = Monomial> + '_ {
        let drops = self.indices().map(move |i| Monomial {
            m: self.m,
            bits: self.bits & !(1 << i),
        });
        let shifts = self
            .indices()
            .filter(move |&i| i > 0 && self.bits & (1 << (i - 1)) == 0)
            .map(move |i| Monomial {
                m: self.m,
                bits: (self.bits & !(1 << i)) | (1 << (i - 1)),
            });
        drops.chain(shifts)
    }

    /// Immediate predecessors under divisibility.
    pub fn divisors_one_less(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.indices().map(move |i| Monomial {
            m: self.m,
            bits: self.bits & !(1 << i),
        })
    }

    fn compatible(&self, other: &Monomial) -> Result<()> {
        if self.m != other.m {
            return Err(Error::IncompatibleVariableCount(self.m(), other.m()));
        }
        Ok(())
    }
}

/// `f ≼ g` on raw bit sets.
///
/// Componentwise domination of sorted index tuples is equivalent to: for
/// every threshold `t`, `g` has at least as many indices `>= t` as `f`.
/// With `t = 0` this also enforces `deg f <= deg g`, and it matches the
/// choice of `g*` as the `deg f` largest indices of `g`.
pub(crate) fn leq_bits(f: u32, g: u32, m: usize) -> bool {
    (0..m.max(1)).all(|t| (f >> t).count_ones() <= (g >> t).count_ones())
}

pub(crate) fn low_mask(r: usize) -> u32 {
    if r >= 32 {
        u32::MAX
    } else {
        (1u32 << r) - 1
    }
}

fn check_variable_count(m: usize) -> Result<()> {
    if m == 0 || m > MAX_VARIABLES {
        return Err(Error::VariableCountOutOfRange {
            m,
            max: MAX_VARIABLES,
        });
    }
    Ok(())
}

pub(crate) fn check_exhaustive(m: usize) -> Result<()> {
    if m > EXHAUSTIVE_MAX_VARIABLES {
        return Err(Error::cap(
            "variable count for exhaustive enumeration",
            m as u64,
            EXHAUSTIVE_MAX_VARIABLES as u64,
        ));
    }
    Ok(())
}

#[derive(Clone)]
struct BitIter(u32);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (n, i) in self.indices().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (m={})", self.m)
    }
}

/// A finite set of monomials sharing the same variable count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialSet {
    m: usize,
    members: BTreeSet<Monomial>,
}

impl MonomialSet {
    pub fn empty(m: usize) -> Result<Self> {
        check_variable_count(m)?;
        Ok(MonomialSet {
            m,
            members: BTreeSet::new(),
        })
    }

    pub fn from_monomials<I>(m: usize, monomials: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut set = MonomialSet::empty(m)?;
        for g in monomials {
            set.insert(g)?;
        }
        Ok(set)
    }

    pub fn from_bits<I>(m: usize, bits: I) -> Result<Self>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut set = MonomialSet::empty(m)?;
        for b in bits {
            set.insert(Monomial::new(m, b)?)?;
        }
        Ok(set)
    }

    /// All `2^m` monomials (`M_m`).
    pub fn all(m: usize) -> Result<Self> {
        check_variable_count(m)?;
        check_exhaustive(m)?;
        MonomialSet::from_bits(m, 0..(1u32 << m))
    }

    /// All monomials of degree at most `r`: the defining set of the
    /// Reed-Muller code `R(r, m)`.
    pub fn degree_at_most(m: usize, r: usize) -> Result<Self> {
        check_variable_count(m)?;
        check_exhaustive(m)?;
        let bits = (0..(1u32 << m)).filter(|b| b.count_ones() as usize <= r);
        MonomialSet::from_bits(m, bits)
    }

    pub fn insert(&mut self, g: Monomial) -> Result<bool> {
        if g.m() != self.m {
            return Err(Error::IncompatibleVariableCount(self.m, g.m()));
        }
        Ok(self.members.insert(g))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: &Monomial) -> bool {
        self.members.contains(g)
    }

    pub fn contains_bits(&self, bits: u32) -> bool {
        self.members.contains(&Monomial {
            m: self.m as u8,
            bits,
        })
    }

    /// Members in increasing bit-set order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Monomial> + ExactSizeIterator {
        self.members.iter()
    }

    pub fn bits(&self) -> Vec<u32> {
        self.members.iter().map(Monomial::bits).collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.members.iter().map(Monomial::degree).max()
    }

    /// Members of the given degree.
    pub fn of_degree(&self, d: usize) -> impl Iterator<Item = &Monomial> {
        self.members.iter().filter(move |g| g.degree() == d)
    }

    /// Closed downward under `≼`.
    ///
    /// Checks that every immediate predecessor of every member is a member,
    /// which takes `O(|I| m)` lookups.
    pub fn is_decreasing(&self) -> bool {
        self.members
            .iter()
            .all(|f| f.predecessors().all(|g| self.members.contains(&g)))
    }

    /// Closed downward under divisibility.
    pub fn is_weakly_decreasing(&self) -> bool {
        self.members
            .iter()
            .all(|f| f.divisors_one_less().all(|g| self.members.contains(&g)))
    }

    /// Smallest decreasing superset.
    pub fn decreasing_closure(&self) -> Result<MonomialSet> {
        check_exhaustive(self.m)?;
        let mut out = self.members.clone();
        let mut stack: Vec<Monomial> = self.members.iter().copied().collect();
        while let Some(f) = stack.pop() {
            for g in f.predecessors() {
                if out.insert(g) {
                    stack.push(g);
                }
            }
        }
        Ok(MonomialSet {
            m: self.m,
            members: out,
        })
    }

    /// `{ ǧ : g ∈ I }`.
    pub fn complements(&self) -> MonomialSet {
        MonomialSet {
            m: self.m,
            members: self.members.iter().map(Monomial::complement).collect(),
        }
    }

    /// `M_m \ self`.
    pub fn complement_in_all(&self) -> Result<MonomialSet> {
        check_exhaustive(self.m)?;
        let members = (0..(1u32 << self.m))
            .map(|bits| Monomial {
                m: self.m as u8,
                bits,
            })
            .filter(|g| !self.members.contains(g))
            .collect();
        Ok(MonomialSet { m: self.m, members })
    }

    pub fn union(&self, other: &MonomialSet) -> Result<MonomialSet> {
        if self.m != other.m {
            return Err(Error::IncompatibleVariableCount(self.m, other.m));
        }
        Ok(MonomialSet {
            m: self.m,
            members: self.members.union(&other.members).copied().collect(),
        })
    }

    pub fn is_subset(&self, other: &MonomialSet) -> bool {
        self.m == other.m && self.members.is_subset(&other.members)
    }
}

impl fmt::Debug for MonomialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, g) in self.members.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}} (m={})", self.m)
    }
}

impl<'a> IntoIterator for &'a MonomialSet {
    type Item = &'a Monomial;
    type IntoIter = std::collections::btree_set::Iter<'a, Monomial>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// The interval `[f, h] = { g : f ≼ g ≼ h }`.
pub fn interval(f: &Monomial, h: &Monomial) -> Result<MonomialSet> {
    if !f.leq(h)? {
        return Err(Error::EmptyInterval {
            lower: f.to_string(),
            upper: h.to_string(),
        });
    }
    let m = f.m();
    check_exhaustive(m)?;
    let bits = (0..(1u32 << m)).filter(|&g| leq_bits(f.bits, g, m) && leq_bits(g, h.bits, m));
    MonomialSet::from_bits(m, bits)
}
