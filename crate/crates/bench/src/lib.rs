//! Benchmarks for the treehopf structure maps live in `benches/`.
