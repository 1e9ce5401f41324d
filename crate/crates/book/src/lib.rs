//! mdbook cannot test snippets that use external crates, so each chapter of
//! `book/src` is mounted here as a module and checked by `cargo test --doc`.
//! A failure names the chapter module it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/linalg.md")]
pub mod linalg {}
#[doc = include_str!("../../../book/src/well.md")]
pub mod well {}
#[doc = include_str!("../../../book/src/encodings.md")]
pub mod encodings {}
#[doc = include_str!("../../../book/src/thermal.md")]
pub mod thermal {}
#[doc = include_str!("../../../book/src/pulses.md")]
pub mod pulses {}
#[doc = include_str!("../../../book/src/parity.md")]
pub mod parity {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
