//! Benchmarks for the layout engine and verifier live in `benches/`.
