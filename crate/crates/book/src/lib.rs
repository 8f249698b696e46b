//! Runs the code listings of the guide in `book/` as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/objective.md")]
pub mod objective {}

#[doc = include_str!("../../../book/src/local-search.md")]
pub mod local_search {}

#[doc = include_str!("../../../book/src/seeding.md")]
pub mod seeding {}

#[doc = include_str!("../../../book/src/incremental.md")]
pub mod incremental {}

#[doc = include_str!("../../../book/src/sampling.md")]
pub mod sampling {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/benchmarking.md")]
pub mod benchmarking {}

#[doc = include_str!("../../../book/src/datasets.md")]
pub mod datasets {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
