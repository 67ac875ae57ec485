//! Keeps the mdbook guide honest: every fenced Rust block in `book/src`
//! compiles and runs as a doc-test of this crate via `cargo test --doc`.

#[doc = include_str!("../../../book/src/intro.md")]
mod intro {}

#[doc = include_str!("../../../book/src/rings.md")]
mod rings {}

#[doc = include_str!("../../../book/src/codes.md")]
mod codes {}

#[doc = include_str!("../../../book/src/graphs.md")]
mod graphs {}

#[doc = include_str!("../../../book/src/screening.md")]
mod screening {}

#[doc = include_str!("../../../book/src/search.md")]
mod search {}

#[doc = include_str!("../../../book/src/constructions.md")]
mod constructions {}
