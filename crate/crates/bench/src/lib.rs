//! Criterion benches for the estimators live in `benches/`.
