//! Criterion benchmarks for `generacci-core`; see `benches/`.
