//! The guide's chapters, re-exposed as doc-tests.
//!
//! mdBook renders `book/` but cannot *execute* its Rust listings, so each
//! chapter is also included here as the documentation of an empty module:
//! `cargo test --doc` then compiles and runs every fenced example exactly as
//! rustdoc would. One module per chapter keeps test failures attributable to
//! the file they came from. Keep this list in sync with `book/src/SUMMARY.md`.

#[doc = include_str!("../../../README.md")]
pub mod readme {}

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/root-systems.md")]
pub mod root_systems {}

#[doc = include_str!("../../../book/src/affine-weyl.md")]
pub mod affine_weyl {}

#[doc = include_str!("../../../book/src/symbolic.md")]
pub mod symbolic {}

#[doc = include_str!("../../../book/src/coefficients.md")]
pub mod coefficients {}

#[doc = include_str!("../../../book/src/loop-products.md")]
pub mod loop_products {}

#[doc = include_str!("../../../book/src/quantum.md")]
pub mod quantum {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
