//! Criterion benchmarks for tracebound-core live in `benches/`.
