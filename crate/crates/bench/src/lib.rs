//! Benchmark-only crate; see benches/measurability.rs.
