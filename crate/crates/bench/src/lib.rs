//! Benchmarks for the atlas solvers live under `benches/`.
