//! Benchmark-only crate; see `benches/metrics.rs`.
