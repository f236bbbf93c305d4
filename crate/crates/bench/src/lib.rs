//! Benchmarks for the symbolic engine live under `benches/`.
