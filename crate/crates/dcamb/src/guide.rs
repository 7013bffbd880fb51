//! The book's code snippets, compiled and run by `cargo test --doc`.
//!
//! mdbook cannot run snippets against a local crate on its own, so each
//! chapter of `book/src/` is included here as the documentation of an empty
//! module; rustdoc then treats every ```rust fence in the chapter as a
//! doc-test. One module per chapter keeps failures attributable.

#[doc = include_str!("../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../book/src/affine-permutations.md")]
pub mod affine_permutations {}

#[doc = include_str!("../book/src/sortable-elements.md")]
pub mod sortable_elements {}

#[doc = include_str!("../book/src/cyclic-orientations.md")]
pub mod cyclic_orientations {}

#[doc = include_str!("../book/src/gluing.md")]
pub mod gluing {}

#[doc = include_str!("../book/src/framework.md")]
pub mod framework_chapter {}

#[doc = include_str!("../book/src/cluster-algebras.md")]
pub mod cluster_algebras {}

#[doc = include_str!("../book/src/fan.md")]
pub mod fan_chapter {}

#[doc = include_str!("../book/src/cli.md")]
pub mod cli {}
