//! Seeded random inputs for property checks: monomial sets, downsets and
//! decreasing codes.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::code::MonomialCode;
use crate::error::Result;
use crate::monomial::{Monomial, MonomialSet};

/// A uniformly random subset of `M_m`.
pub fn random_monomial_set<R: Rng>(m: usize, rng: &mut R) -> Result<MonomialSet> {
    MonomialSet::from_bits(m, (0..1u32 << m).filter(|_| rng.random::<bool>()))
}

/// A random monomial whose degree is drawn first, uniformly in `0..=m`.
pub fn random_monomial<R: Rng>(m: usize, rng: &mut R) -> Result<Monomial> {
    let d = rng.random_range(0..=m);
    let mut indices: Vec<usize> = (0..m).collect();
    indices.shuffle(rng);
    Monomial::from_indices(m, &indices[..d])
}

/// The decreasing closure of a few degree-biased random monomials.
pub fn random_downset<R: Rng>(m: usize, rng: &mut R) -> Result<MonomialSet> {
    let generators = rng.random_range(1..=m.max(1) + 1);
    let mut seeds = MonomialSet::empty(m)?;
    for _ in 0..generators {
        seeds.insert(random_monomial(m, rng)?)?;
    }
    seeds.decreasing_closure()
}

/// A random decreasing code of dimension at most `max_dimension`.
pub fn random_decreasing_code<R: Rng>(
    m: usize,
    max_dimension: usize,
    rng: &mut R,
) -> Result<MonomialCode> {
    loop {
        let set = random_downset(m, rng)?;
        if set.len() <= max_dimension {
            return Ok(MonomialCode::new(set));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn downsets_are_decreasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..=7 {
            for _ in 0..50 {
                let s = random_downset(m, &mut rng).unwrap();
                assert!(s.is_decreasing() && !s.is_empty());
            }
        }
    }

    #[test]
    fn degrees_cover_the_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = [false; 6];
        for _ in 0..500 {
            seen[random_monomial(5, &mut rng).unwrap().degree()] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn bounded_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            assert!(random_decreasing_code(6, 24, &mut rng).unwrap().dimension() <= 24);
        }
    }
}
