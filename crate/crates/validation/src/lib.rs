//! Holds the `acceptance` test target. The package sorts last in the
//! workspace so `cargo test --workspace` runs every other suite first.
