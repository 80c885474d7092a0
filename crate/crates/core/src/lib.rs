//! Decreasing monomial codes: the algebraic setting shared by Reed-Muller
//! and polar codes.
//!
//! A code `C(I)` of length `2^m` is spanned by the evaluations over `F_2^m`
//! of a set `I` of square-free monomials in `x_0, ..., x_{m-1}`. When `I` is
//! closed downward under the monomial order `≼`, the dual, the minimum
//! distance, the number of minimum-weight codewords and part of the
//! permutation group all follow from `I` directly. Polar codes built from
//! the Bhattacharyya parameters of a symmetric channel are always of this
//! kind.
//!
//! Every formula has a brute-force counterpart here so the two can be
//! compared at small sizes.

pub mod channel;
pub mod code;
pub mod error;
pub mod gf2;
pub mod lta;
pub mod monomial;
pub mod montecarlo;
pub mod polar;
pub mod sample;
pub mod young;

pub use channel::{ChannelCaps, ChannelTable, Reliability, SymmetricChannel};
pub use code::{CodeFile, DualParameters, MonomialCode};
pub use error::{Error, Result};
pub use gf2::{
    evaluate, generator_matrix, kronecker_gm, min_weight_bruteforce, BinaryMatrix, BitVector, Caps,
};
pub use lta::{
    lta_action, orbit_enumerate, orbit_evaluations_exhaustive, orbit_size, BooleanPolynomial,
    LowerTriangularAffineMap,
};
pub use monomial::{interval, Monomial, MonomialSet};
pub use montecarlo::{monte_carlo_bhattacharyya, MonteCarloEstimate};
pub use polar::{
    construct_polar, rank_monomials, sign_sequence, synthesize_bit_channel, RankedMonomial,
    SignSequence,
};
pub use young::{gaussian_binomial, monomial_from_partition, partitions_in_grid, young_partition, Partition};
