//! Criterion benchmarks for harmony-core live in `benches/`.
