//! Benchmark-only crate; the measurements live in `benches/pipeline.rs` and
//! run with `cargo bench -p cyclepack-bench`.
