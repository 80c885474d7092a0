//! Binary-input symmetric channels with finite output alphabets and the two
//! Arıkan transforms.
//!
//! A channel is stored as `W(y|0)`, `W(y|1)` and an involution `π` with
//! `W(y|1) = W(π(y)|0)`. After each transform, output symbols whose
//! likelihood pairs are proportional are merged into one; this keeps the
//! Bhattacharyya parameter unchanged and the channel symmetric.

use std::cmp::Ordering;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest output alphabet kept after merging.
pub const ALPHABET_CAP: usize = 1 << 20;

/// Largest product alphabet built before merging.
pub const PRODUCT_CAP: usize = 1 << 24;

/// Tolerance for probability sums and the symmetry check.
pub const CHANNEL_TOLERANCE: f64 = 1e-12;

/// Relative tolerance for merging proportional likelihood pairs.
pub const MERGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelCaps {
    pub alphabet: usize,
    pub product: usize,
}

impl Default for ChannelCaps {
    fn default() -> Self {
        ChannelCaps {
            alphabet: ALPHABET_CAP,
            product: PRODUCT_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricChannel {
    p0: Vec<f64>,
    p1: Vec<f64>,
    involution: Vec<usize>,
}

/// JSON form used by `table:<path>` channel specs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelTable {
    pub alphabet: usize,
    pub p0: Vec<f64>,
    pub p1: Vec<f64>,
    pub involution: Vec<usize>,
}

impl SymmetricChannel {
    /// Validates the table and stores `W(y|1)` as exactly `W(π(y)|0)`.
    pub fn new(p0: Vec<f64>, p1: Vec<f64>, involution: Vec<usize>) -> Result<Self> {
        let n = p0.len();
        if n == 0 || p1.len() != n || involution.len() != n {
            return Err(Error::InvalidChannel(format!(
                "table sizes differ or are empty: p0 {}, p1 {}, involution {}",
                n,
                p1.len(),
                involution.len()
            )));
        }
        if let Some(&p) = p0.iter().chain(&p1).find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        for (name, row) in [("W(.|0)", &p0), ("W(.|1)", &p1)] {
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > CHANNEL_TOLERANCE {
                return Err(Error::InvalidChannel(format!("{name} sums to {sum}")));
            }
        }
        for (y, &z) in involution.iter().enumerate() {
            if z >= n || involution[z] != y {
                return Err(Error::InvalidChannel(format!("involution is not an involution at {y}")));
            }
            if (p1[y] - p0[z]).abs() > CHANNEL_TOLERANCE {
                return Err(Error::InvalidChannel(format!(
                    "W({y}|1) = {} but W(π({y})|0) = {}",
                    p1[y], p0[z]
                )));
            }
        }
        let p1 = involution.iter().map(|&z| p0[z]).collect();
        Ok(SymmetricChannel { p0, p1, involution })
    }

    /// Binary erasure channel; outputs `0`, `?`, `1`.
    pub fn bec(p: f64) -> Result<Self> {
        check_probability(p)?;
        Self::new(vec![1.0 - p, p, 0.0], vec![0.0, p, 1.0 - p], vec![2, 1, 0])
    }

    /// Binary symmetric channel; outputs `0`, `1`.
    pub fn bsc(p: f64) -> Result<Self> {
        check_probability(p)?;
        Self::new(vec![1.0 - p, p], vec![p, 1.0 - p], vec![1, 0])
    }

    pub fn from_table(table: ChannelTable) -> Result<Self> {
        if table.alphabet != table.p0.len() {
            return Err(Error::InvalidChannel(format!(
                "alphabet {} does not match {} probabilities",
                table.alphabet,
                table.p0.len()
            )));
        }
        Self::new(table.p0, table.p1, table.involution)
    }

    pub fn to_table(&self) -> ChannelTable {
        ChannelTable {
            alphabet: self.alphabet_size(),
            p0: self.p0.clone(),
            p1: self.p1.clone(),
            involution: self.involution.clone(),
        }
    }

    /// Parses `bec:<p>`, `bsc:<p>` or `table:<path>`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidChannel(format!("expected kind:argument, got {spec:?}")))?;
        let prob = || {
            arg.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidChannel(format!("bad probability {arg:?}")))
        };
        match kind.trim() {
            "bec" => Self::bec(prob()?),
            "bsc" => Self::bsc(prob()?),
            "table" => {
                let text = std::fs::read_to_string(Path::new(arg))?;
                Self::from_table(serde_json::from_str(&text)?)
            }
            other => Err(Error::InvalidChannel(format!("unknown channel kind {other:?}"))),
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.p0.len()
    }

    pub fn p0(&self) -> &[f64] {
        &self.p0
    }

    pub fn p1(&self) -> &[f64] {
        &self.p1
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    /// `B(W) = Σ_y √(W(y|0) W(y|1))`.
    pub fn bhattacharyya(&self) -> f64 {
        self.p0
            .iter()
            .zip(&self.p1)
            .map(|(a, c)| (a * c).sqrt())
            .sum::<f64>()
            .min(1.0)
    }

    /// `1 - B(W) = ½ Σ_y (√W(y|0) - √W(y|1))²`, accurate when `B` is
    /// close to 1.
    pub fn bhattacharyya_complement(&self) -> f64 {
        let s: f64 = self
            .p0
            .iter()
            .zip(&self.p1)
            .map(|(a, c)| {
                let d = a.sqrt() - c.sqrt();
                d * d
            })
            .sum();
        (0.5 * s).min(1.0)
    }

    pub fn reliability(&self) -> Reliability {
        Reliability {
            value: self.bhattacharyya(),
            complement: self.bhattacharyya_complement(),
        }
    }

    /// `W⁻(y1, y2 | u2) = ½ Σ_{u1} W(y1|u1) W(y2|u1 ⊕ u2)`.
    pub fn minus(&self) -> Result<Self> {
        self.minus_with(&ChannelCaps::default())
    }

    pub fn minus_with(&self, caps: &ChannelCaps) -> Result<Self> {
        let n = self.alphabet_size();
        check_product(n * n, caps)?;
        let mut pairs = Vec::with_capacity(n * n);
        for y1 in 0..n {
            for y2 in 0..n {
                let a = 0.5 * (self.p0[y1] * self.p0[y2] + self.p1[y1] * self.p1[y2]);
                let c = 0.5 * (self.p0[y1] * self.p1[y2] + self.p1[y1] * self.p0[y2]);
                pairs.push((a, c));
            }
        }
        merge(pairs, caps)
    }

    /// `W⁺(y1, y2, u2 | u1) = ½ W(y1|u1) W(y2|u1 ⊕ u2)`.
    pub fn plus(&self) -> Result<Self> {
        self.plus_with(&ChannelCaps::default())
    }

    pub fn plus_with(&self, caps: &ChannelCaps) -> Result<Self> {
        let n = self.alphabet_size();
        check_product(2 * n * n, caps)?;
        let mut pairs = Vec::with_capacity(2 * n * n);
        for y1 in 0..n {
            for y2 in 0..n {
                pairs.push((0.5 * self.p0[y1] * self.p0[y2], 0.5 * self.p1[y1] * self.p1[y2]));
                pairs.push((0.5 * self.p0[y1] * self.p1[y2], 0.5 * self.p1[y1] * self.p0[y2]));
            }
        }
        merge(pairs, caps)
    }

    /// The transform for one sign, `-` being `W⁻`.
    pub fn transform(&self, minus: bool, caps: &ChannelCaps) -> Result<Self> {
        if minus {
            self.minus_with(caps)
        } else {
            self.plus_with(caps)
        }
    }

    /// Merges proportional outputs of this channel without transforming it.
    pub fn merged(&self) -> Result<Self> {
        merge(self.p0.iter().copied().zip(self.p1.iter().copied()).collect(), &ChannelCaps::default())
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    Ok(())
}

fn check_product(size: usize, caps: &ChannelCaps) -> Result<()> {
    if size > caps.product {
        return Err(Error::cap("channel product alphabet", size as u64, caps.product as u64));
    }
    Ok(())
}

/// Merges outputs with proportional `(W(y|0), W(y|1))` and rebuilds the
/// involution.
///
/// Outputs are grouped by `min/max` of their pair, which is shared by `y`
/// and `π(y)`; inside a group, outputs favouring 0 form one symbol and their
/// mirror images the other. Groups with ratio 1 become a fixed point.
fn merge(pairs: Vec<(f64, f64)>, caps: &ChannelCaps) -> Result<SymmetricChannel> {
    let mut keyed: Vec<(f64, f64, f64)> = pairs
        .into_iter()
        .filter(|&(a, c)| a > 0.0 || c > 0.0)
        .map(|(a, c)| (a.min(c) / a.max(c), a, c))
        .collect();
    keyed.sort_unstable_by(|x, y| x.0.total_cmp(&y.0));

    let mut p0 = Vec::new();
    let mut p1 = Vec::new();
    let mut involution = Vec::new();
    let mut i = 0;
    while i < keyed.len() {
        let (lo, hi) = proportional_run(&keyed, i);
        if close(keyed[i].0, 1.0) {
            let mass: f64 = keyed[lo..hi].iter().map(|&(_, a, c)| a + c).sum::<f64>() * 0.5;
            involution.push(p0.len());
            p0.push(mass);
            p1.push(mass);
        } else {
            // Mirror pairs have equal mass on swapped inputs; average them.
            let (mut a0, mut c0, mut a1, mut c1) = (0.0, 0.0, 0.0, 0.0);
            for &(_, a, c) in &keyed[lo..hi] {
                if a >= c {
                    a0 += a;
                    c0 += c;
                } else {
                    a1 += a;
                    c1 += c;
                }
            }
            let strong = 0.5 * (a0 + c1);
            let weak = 0.5 * (c0 + a1);
            let y = p0.len();
            involution.extend([y + 1, y]);
            p0.extend([strong, weak]);
            p1.extend([weak, strong]);
        }
        i = hi;
        if p0.len() > caps.alphabet {
            return Err(Error::cap("merged channel alphabet", p0.len() as u64, caps.alphabet as u64));
        }
    }
    if p0.is_empty() {
        return Err(Error::InvalidChannel("channel has no outputs".into()));
    }
    Ok(SymmetricChannel { p0, p1, involution })
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= MERGE_TOLERANCE * x.abs().max(y.abs())
}

/// The run of entries proportional to `keyed[start]`.
fn proportional_run(keyed: &[(f64, f64, f64)], start: usize) -> (usize, usize) {
    let r = keyed[start].0;
    let mut end = start + 1;
    while end < keyed.len() && close(keyed[end].0, r) {
        end += 1;
    }
    (start, end)
}

/// `B(W)` together with `1 - B(W)`; ordered by `B` using whichever of the
/// two is better conditioned.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Reliability {
    pub value: f64,
    pub complement: f64,
}

impl Reliability {
    pub fn cmp_value(&self, other: &Reliability) -> Ordering {
        if self.value >= 0.5 && other.value >= 0.5 {
            other.complement.total_cmp(&self.complement)
        } else {
            self.value.total_cmp(&other.value)
        }
    }
}
