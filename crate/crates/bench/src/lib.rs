//! Criterion benchmarks for `qembed-core`; see `benches/kernels.rs`.
