//! Runs the acceptance criteria; see `tests/acceptance.rs`.
