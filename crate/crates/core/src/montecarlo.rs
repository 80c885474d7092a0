//! Monte-Carlo estimate of `B(W^f)` from an explicit model of the bit
//! channel.
//!
//! One sample draws `a ∈ F_2^{2^m}` uniformly, overwrites `a_f` with the
//! input bit `x`, sends `b = a G_m` through `W` and reveals `y` together with
//! every `a_g` for `g > f` (bit sets compared as integers). The coordinates
//! `a_g`, `g < f`, stay hidden. Since
//! `B = E[√(P(out | x̄) / P(out | x))]`, the sample mean of that ratio
//! estimates `B(W^f)`.
//!
//! Samples are split into fixed substreams of [`SUBSTREAM_SAMPLES`] samples,
//! substream `s` drawing from ChaCha8 seeded with `seed` on stream `s`, so
//! results do not depend on how the work is scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::SymmetricChannel;
use crate::error::{Error, Result};
use crate::monomial::Monomial;

pub const SUBSTREAM_SAMPLES: u64 = 1 << 16;

pub const MONTE_CARLO_MAX_VARIABLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
}

pub fn monte_carlo_bhattacharyya(
    w: &SymmetricChannel,
    f: &Monomial,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if samples == 0 {
        return Err(Error::InvalidSampleCount);
    }
    if f.m() > MONTE_CARLO_MAX_VARIABLES {
        return Err(Error::cap(
            "variable count for simulation",
            f.m() as u64,
            MONTE_CARLO_MAX_VARIABLES as u64,
        ));
    }
    let model = Model::new(w, f);
    let streams = samples.div_ceil(SUBSTREAM_SAMPLES);
    let sums: Vec<(f64, f64)> = (0..streams)
        .into_par_iter()
        .map(|s| {
            let count = SUBSTREAM_SAMPLES.min(samples - s * SUBSTREAM_SAMPLES);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            model.run(&mut rng, count)
        })
        .collect();
    let (sum, sum_sq) = sums
        .iter()
        .fold((0.0, 0.0), |(a, b), &(s, q)| (a + s, b + q));
    let n = samples as f64;
    let mean = sum / n;
    let stderr = if samples > 1 {
        let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloEstimate {
        estimate: mean,
        stderr,
        samples,
    })
}

struct Model {
    m: usize,
    target: usize,
    // Cut points of W(.|0) on a 32-bit scale; draws are below 2^32.
    cuts: Vec<u64>,
    likelihood: Vec<(f64, f64)>,
}

struct Scratch {
    a: Vec<u64>,
    coded: Vec<u64>,
    upper: Vec<u64>,
    llr: Vec<(f64, f64)>,
}

/// Outside this range a likelihood pair is rescaled to sum to 1.
const RESCALE_BELOW: f64 = 1e-200;
const RESCALE_ABOVE: f64 = 1e200;

impl Model {
    fn new(w: &SymmetricChannel, f: &Monomial) -> Self {
        let scale = 4_294_967_296.0;
        let mut acc = 0.0;
        let mut cuts = Vec::with_capacity(w.alphabet_size());
        for p in &w.p0()[..w.alphabet_size() - 1] {
            acc += p;
            cuts.push((acc * scale).round() as u64);
        }
        Model {
            m: f.m(),
            target: f.bits() as usize,
            cuts,
            likelihood: w.p0().iter().copied().zip(w.p1().iter().copied()).collect(),
        }
    }

    /// `(W(y|0), W(y|1))` for an output drawn from `W(.|bit)`. Draws `y'`
    /// from `W(.|0)`; for `bit = 1` the output is `π(y')`, whose pair is
    /// the swapped pair of `y'`.
    fn channel_use(&self, r: u32, bit: bool) -> (f64, f64) {
        let y = self.cuts.partition_point(|&c| c <= r as u64);
        let (l0, l1) = self.likelihood[y];
        if bit {
            (l1, l0)
        } else {
            (l0, l1)
        }
    }

    /// Sum and sum of squares of `count` samples.
    fn run<R: Rng>(&self, rng: &mut R, count: u64) -> (f64, f64) {
        let n = 1usize << self.m;
        let words = n.div_ceil(64);
        let mut s = Scratch {
            a: vec![0; words],
            coded: vec![0; words],
            upper: vec![0; words],
            llr: vec![(0.0, 0.0); n],
        };
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for _ in 0..count {
            let v = self.sample(rng, &mut s);
            sum += v;
            sum_sq += v * v;
        }
        (sum, sum_sq)
    }

    fn sample<R: Rng>(&self, rng: &mut R, s: &mut Scratch) -> f64 {
        let n = s.llr.len();
        for w in s.a.iter_mut() {
            *w = rng.random();
        }
        if n < 64 {
            s.a[0] &= (1u64 << n) - 1;
        }
        let x = bit(&s.a, self.target);
        s.coded.copy_from_slice(&s.a);
        encode_words(&mut s.coded, n);
        let mut u = 0;
        while u < n {
            let r: u64 = rng.random();
            s.llr[u] = self.channel_use(r as u32, bit(&s.coded, u));
            if u + 1 < n {
                s.llr[u + 1] = self.channel_use((r >> 32) as u32, bit(&s.coded, u + 1));
            }
            u += 2;
        }
        let (l0, l1) = self.likelihoods(s);
        let (lx, lbar) = if x { (l1, l0) } else { (l0, l1) };
        (lbar / lx).sqrt()
    }

    /// Likelihoods of the target bit given the outputs and the revealed
    /// coordinates, halving the problem at each step.
    fn likelihoods(&self, s: &mut Scratch) -> (f64, f64) {
        let mut len = s.llr.len();
        let mut offset = 0;
        let mut target = self.target;
        while len > 1 {
            let half = len / 2;
            if target >= half {
                // Lower half of `a` is hidden: c0 is uniform.
                for u in 0..half {
                    let (a0, a1) = s.llr[u];
                    let (b0, b1) = s.llr[u + half];
                    s.llr[u] = rescale(a0 * b0 + a1 * b1, a0 * b1 + a1 * b0);
                }
                offset += half;
                target -= half;
            } else {
                // Upper half of `a` is revealed: c1 is known.
                extract(&s.a, offset + half, half, &mut s.upper);
                encode_words(&mut s.upper, half);
                for u in 0..half {
                    let (a0, a1) = s.llr[u];
                    let (b0, b1) = s.llr[u + half];
                    s.llr[u] = if bit(&s.upper, u) {
                        rescale(a0 * b1, a1 * b0)
                    } else {
                        rescale(a0 * b0, a1 * b1)
                    };
                }
            }
            len = half;
        }
        s.llr[0]
    }
}

fn rescale(q0: f64, q1: f64) -> (f64, f64) {
    let t = q0 + q1;
    if t > 0.0 && !(RESCALE_BELOW..=RESCALE_ABOVE).contains(&t) {
        (q0 / t, q1 / t)
    } else {
        (q0, q1)
    }
}

fn bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

/// Copies bits `start .. start + len` into the front of `out`; `start` is a
/// multiple of `len` and `len` a power of two.
fn extract(words: &[u64], start: usize, len: usize, out: &mut [u64]) {
    if len < 64 {
        out[0] = words[start / 64] >> (start % 64) & ((1u64 << len) - 1);
    } else {
        out[..len / 64].copy_from_slice(&words[start / 64..(start + len) / 64]);
    }
}

/// Masks of the positions whose bit `i` is clear, inside one word.
const CLEAR_BIT: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// `c = a G_m` in place on the first `n` packed bits: `c[u] = Σ_{i ⊆ u} a[i]`.
pub fn encode_words(words: &mut [u64], n: usize) {
    for (i, mask) in CLEAR_BIT.iter().enumerate() {
        let step = 1usize << i;
        if step >= n {
            return;
        }
        for w in words[..n.div_ceil(64)].iter_mut() {
            *w ^= (*w & mask) << step;
        }
    }
    let count = n / 64;
    let mut step = 1;
    while step < count {
        for j in 0..count {
            if j & step != 0 {
                words[j] ^= words[j ^ step];
            }
        }
        step <<= 1;
    }
}

/// `c = a G_m` in place, one bit per byte.
pub fn encode(bits: &mut [u8]) {
    let n = bits.len();
    let mut step = 1;
    while step < n {
        for u in 0..n {
            if u & step != 0 {
                bits[u] ^= bits[u ^ step];
            }
        }
        step <<= 1;
    }
}
