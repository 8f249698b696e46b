//! Incremental k-medoids clustering seeded by k-means++ sampling.
//!
//! The crate grows a medoid set one center at a time: the first medoid is the
//! exact 1-medoid of the data, and every further medoid is drawn with
//! probability proportional to its squared distance from the current centers,
//! after which the whole set is refined by the cluster-wise local search
//! ([`algorithms::fkm`]). A sampled variant runs the same procedure on a
//! random fraction of the points and finishes with a single local search on
//! the full data.
//!
//! Alongside it live the baselines used for comparison (plain local search
//! from random medoids, k-means++ seeding followed by local search, and the
//! variance-thresholded incremental seeding), an exhaustive solver for small
//! instances, and a harness that compares stochastic algorithms under a shared
//! wall-time budget.
//!
//! ```
//! use inckpp::{algorithms, build_dissimilarity, Dataset, MetricKind, RngStream};
//!
//! let ds = Dataset::new(
//!     vec![vec![0.0], vec![1.0], vec![2.0], vec![10.0], vec![11.0], vec![12.0]],
//!     None,
//! )?;
//! let m = build_dissimilarity(&ds, MetricKind::Euclidean)?;
//! let mut rng = RngStream::new(7);
//! let res = algorithms::inckpp(&m, 2, &mut rng)?;
//! assert_eq!(res.se, 4.0);
//! # Ok::<(), inckpp::Error>(())
//! ```

pub mod algorithms;
pub mod bench;
pub mod cli;
pub mod data;
pub mod dissimilarity;
mod error;
pub mod io;
pub mod metrics;
pub mod objective;
pub mod oracle;
pub mod rng;

pub use data::Dataset;
pub use dissimilarity::{build_dissimilarity, DissimilarityMatrix, MetricKind, MAX_POINTS};
pub use error::{Error, Result};
pub use objective::{assign, sum_of_errors, Assignment, ClusteringResult, MedoidSet};
pub use rng::RngStream;
