//! Benchmark harness for stringy-core; see benches/.
