//! Criterion benchmarks for `monomial-codes`; see `benches/`.
