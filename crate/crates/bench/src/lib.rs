//! Criterion benchmarks for orthograph; see `benches/pipeline.rs`.
