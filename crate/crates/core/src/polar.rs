//! Bit channels `W^g` and polar code construction.
//!
//! The bit channel of `g ∈ M_m` is `W^{u_{m-1} ... u_0}` with `u_i = -` iff
//! `x_i` divides `g`. Signs are applied left to right, so `u_{m-1}` acts
//! first: `W^{+-} = (W^+)^-`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::channel::{ChannelCaps, Reliability, SymmetricChannel};
use crate::code::MonomialCode;
use crate::error::{Error, Result};
use crate::monomial::{check_exhaustive, Monomial, MonomialSet};

/// Sign `u_i` for each variable, `true` meaning `-`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSequence {
    minus: Vec<bool>,
}

impl SignSequence {
    pub fn m(&self) -> usize {
        self.minus.len()
    }

    /// `u_i`.
    pub fn is_minus(&self, i: usize) -> bool {
        self.minus[i]
    }

    /// Signs in application order, `u_{m-1}` first.
    pub fn application_order(&self) -> impl Iterator<Item = bool> + '_ {
        self.minus.iter().rev().copied()
    }
}

/// Written `u_{m-1} ... u_0`.
impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for minus in self.application_order() {
            f.write_str(if minus { "-" } else { "+" })?;
        }
        Ok(())
    }
}

pub fn sign_sequence(g: &Monomial) -> SignSequence {
    SignSequence {
        minus: (0..g.m()).map(|i| g.contains(i)).collect(),
    }
}

pub fn synthesize_bit_channel(w: &SymmetricChannel, g: &Monomial) -> Result<SymmetricChannel> {
    synthesize_bit_channel_with(w, g, &ChannelCaps::default())
}

pub fn synthesize_bit_channel_with(
    w: &SymmetricChannel,
    g: &Monomial,
    caps: &ChannelCaps,
) -> Result<SymmetricChannel> {
    let mut out = w.clone();
    for minus in sign_sequence(g).application_order() {
        out = out.transform(minus, caps)?;
    }
    Ok(out)
}

/// `B(W^g)` for `W` a BEC with erasure probability `p`, through
/// `z ↦ 2z - z²` and `z ↦ z²`.
pub fn bec_bhattacharyya(p: f64, g: &Monomial) -> f64 {
    sign_sequence(g)
        .application_order()
        .fold(p, |z, minus| if minus { 2.0 * z - z * z } else { z * z })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RankedMonomial {
    #[serde(serialize_with = "serialize_monomial")]
    pub monomial: Monomial,
    pub bhattacharyya: f64,
    #[serde(skip)]
    pub reliability: Reliability,
}

fn serialize_monomial<S: serde::Serializer>(g: &Monomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_string())
}

/// Ties in `B` are broken by degree, then by the sorted index tuple, a total
/// order that extends `≼`.
pub fn tie_break(f: &Monomial, g: &Monomial) -> Ordering {
    f.degree()
        .cmp(&g.degree())
        .then_with(|| f.indices().cmp(g.indices()))
}

/// Every monomial of `M_m` with `B(W^g)`, most reliable first.
pub fn rank_monomials(w: &SymmetricChannel, m: usize) -> Result<Vec<RankedMonomial>> {
    rank_monomials_with(w, m, &ChannelCaps::default())
}

pub fn rank_monomials_with(
    w: &SymmetricChannel,
    m: usize,
    caps: &ChannelCaps,
) -> Result<Vec<RankedMonomial>> {
    Monomial::one(m)?;
    check_exhaustive(m)?;
    let mut values = vec![None; 1 << m];
    let leaves = descend(w.clone(), m, 0, caps, &OnceLock::new())?;
    for (bits, r) in leaves {
        values[bits as usize] = Some(r);
    }
    let mut ranked: Vec<RankedMonomial> = values
        .into_iter()
        .enumerate()
        .map(|(bits, r)| {
            let r = r.expect("every leaf visited");
            RankedMonomial {
                monomial: Monomial::new(m, bits as u32).expect("bits below 2^m"),
                bhattacharyya: r.value,
                reliability: r,
            }
        })
        .collect();
    ranked.sort_by(|a, b| {
        a.reliability
            .cmp_value(&b.reliability)
            .then_with(|| tie_break(&a.monomial, &b.monomial))
    });
    Ok(ranked)
}

/// Walks the sign tree, sharing transforms between bit channels with a
/// common prefix. `remaining` variables are still undecided; the next one
/// decided is `x_{remaining-1}`. The first error stops every other branch.
fn descend(
    w: SymmetricChannel,
    remaining: usize,
    prefix: u32,
    caps: &ChannelCaps,
    failed: &OnceLock<Error>,
) -> Result<Vec<(u32, Reliability)>> {
    if let Some(e) = failed.get() {
        return Err(e.clone());
    }
    if remaining == 0 {
        return Ok(vec![(prefix, w.reliability())]);
    }
    let i = remaining - 1;
    let branch = |minus: bool| -> Result<Vec<(u32, Reliability)>> {
        let next = w.transform(minus, caps).inspect_err(|e| {
            let _ = failed.set(e.clone());
        })?;
        descend(next, i, prefix | (minus as u32) << i, caps, failed)
    };
    let (plus, minus) = if w.alphabet_size() > 64 {
        rayon::join(|| branch(false), || branch(true))
    } else {
        (branch(false), branch(true))
    };
    let mut out = plus?;
    out.extend(minus?);
    Ok(out)
}

/// The polar code of length `2^m` and dimension `k`: the `k` bit channels
/// with smallest Bhattacharyya parameter.
pub fn construct_polar(w: &SymmetricChannel, m: usize, k: usize) -> Result<MonomialCode> {
    let n = 1usize << m.min(usize::BITS as usize - 1);
    if k > n {
        return Err(Error::DimensionOutOfRange { k, n });
    }
    let ranked = rank_monomials(w, m)?;
    Ok(construct_from_ranking(&ranked, m, k)?.0)
}

/// The code made of the first `k` entries of a ranking, with the largest
/// selected `B`.
pub fn construct_from_ranking(
    ranked: &[RankedMonomial],
    m: usize,
    k: usize,
) -> Result<(MonomialCode, Option<f64>)> {
    if k > ranked.len() {
        return Err(Error::DimensionOutOfRange { k, n: ranked.len() });
    }
    let set = MonomialSet::from_monomials(m, ranked[..k].iter().map(|r| r.monomial))?;
    let worst = ranked[..k].last().map(|r| r.bhattacharyya);
    Ok((MonomialCode::new(set), worst))
}

/// Bhattacharyya parameters of all bit channels in bit-set order.
pub fn bhattacharyya_table(w: &SymmetricChannel, m: usize) -> Result<Vec<Reliability>> {
    let mut out = vec![None; 1 << m];
    for r in rank_monomials(w, m)? {
        out[r.monomial.bits() as usize] = Some(r.reliability);
    }
    Ok(out.into_iter().map(|r| r.expect("complete")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(m: usize, s: &str) -> Monomial {
        Monomial::parse(s, m).unwrap()
    }

    #[test]
    fn sign_sequence_examples() {
        assert_eq!(sign_sequence(&mono(5, "x3*x1*x0")).to_string(), "+-+--");
        assert_eq!(sign_sequence(&mono(2, "1")).to_string(), "++");
    }

    #[test]
    fn sign_order_convention() {
        let w = SymmetricChannel::bsc(0.1).unwrap();
        assert_eq!(synthesize_bit_channel(&w, &mono(1, "x0")).unwrap(), w.minus().unwrap());
        assert_eq!(synthesize_bit_channel(&w, &mono(1, "1")).unwrap(), w.plus().unwrap());
        // W^{x0} with m = 2 is W^{+-} = (W^+)^-.
        assert_eq!(
            synthesize_bit_channel(&w, &mono(2, "x0")).unwrap(),
            w.plus().unwrap().minus().unwrap()
        );
    }

    #[test]
    fn bec_examples() {
        let w = SymmetricChannel::bec(0.5).unwrap();
        let b = synthesize_bit_channel(&w, &mono(3, "x0*x1*x2")).unwrap().bhattacharyya();
        assert!((b - 0.99609375).abs() < 1e-12);
        let b = synthesize_bit_channel(&w, &mono(2, "1")).unwrap().bhattacharyya();
        assert!((b - 0.0625).abs() < 1e-12);

        let ranked = rank_monomials(&w, 2).unwrap();
        let got: Vec<(String, f64)> = ranked
            .iter()
            .map(|r| (r.monomial.to_string(), r.bhattacharyya))
            .collect();
        let expected = [("1", 0.0625), ("x0", 0.4375), ("x1", 0.5625), ("x0*x1", 0.9375)];
        for ((name, b), (en, eb)) in got.iter().zip(expected) {
            assert_eq!(name, en);
            assert!((b - eb).abs() < 1e-12);
        }
    }

    #[test]
    fn ranking_matches_single_synthesis() {
        let w = SymmetricChannel::bsc(0.11).unwrap();
        for r in rank_monomials(&w, 4).unwrap() {
            let direct = synthesize_bit_channel(&w, &r.monomial).unwrap().bhattacharyya();
            assert_eq!(direct, r.bhattacharyya);
        }
    }

    #[test]
    fn degenerate_channel_uses_tie_break() {
        let w = SymmetricChannel::bec(0.0).unwrap();
        let ranked = rank_monomials(&w, 3).unwrap();
        assert!(ranked.iter().all(|r| r.bhattacharyya == 0.0));
        assert!(ranked[0].monomial.is_one());
        assert!(ranked.windows(2).all(|p| tie_break(&p[0].monomial, &p[1].monomial).is_lt()));
        for k in 0..=8 {
            assert!(construct_polar(&w, 3, k).unwrap().is_decreasing());
        }
    }

    #[test]
    fn construction_examples() {
        let w = SymmetricChannel::bec(0.5).unwrap();
        assert_eq!(construct_polar(&w, 2, 2).unwrap().monomials().bits(), vec![0, 1]);
        assert_eq!(construct_polar(&w, 2, 0).unwrap().dimension(), 0);
        assert_eq!(construct_polar(&w, 2, 4).unwrap().dimension(), 4);
        assert!(construct_polar(&w, 2, 5).is_err());
        let c = construct_polar(&w, 8, 128).unwrap();
        assert!(c.is_decreasing() && c.is_weakly_decreasing());
    }

    #[test]
    fn closed_form_matches_transforms() {
        for p in [0.1, 0.5, 0.9] {
            let w = SymmetricChannel::bec(p).unwrap();
            for bits in 0..16 {
                let g = Monomial::new(4, bits).unwrap();
                let exact = synthesize_bit_channel(&w, &g).unwrap().bhattacharyya();
                assert!((exact - bec_bhattacharyya(p, &g)).abs() < 1e-12);
            }
        }
    }
}
