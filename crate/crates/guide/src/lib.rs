//! Chapters of the guide in `book/src`, compiled as doctests so the
//! snippets stay in sync with the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/metric-spaces.md")]
pub mod metric_spaces {}

#[doc = include_str!("../../../book/src/distortion.md")]
pub mod distortion {}

#[doc = include_str!("../../../book/src/exact-search.md")]
pub mod exact_search {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/topology.md")]
pub mod topology {}

#[doc = include_str!("../../../book/src/geodesics.md")]
pub mod geodesics {}

#[doc = include_str!("../../../book/src/fixtures.md")]
pub mod fixtures {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
