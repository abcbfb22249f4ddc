//! Benchmark harness for `mtdehn`; see `benches/`.
