//! Criterion benchmarks for the runlaw core; see the `benches/` directory.
