//! Criterion benchmarks for the solver, structure scans and classifier; see `benches/`.
