//! Benchmarks for the field, character-sum, counting and zeta kernels.
//!
//! Run with `cargo bench -p kleinzeta-bench`.
