//! Criterion benchmarks for `wpc-core`; run with `cargo bench -p wpc-bench`.
