//! Clustering and seeding procedures.
//!
//! | function | seeding | refinement |
//! |---|---|---|
//! | [`fkm_random`] | K uniform medoids | one local search |
//! | [`kpp`] | k-means++ (D²) | one local search |
//! | [`inckm`] | 1-medoid, then farthest candidate | local search after each new medoid |
//! | [`inckpp`] | 1-medoid, then D² draw | local search after each new medoid |
//! | [`inckpp_sample`], [`kpp_sample`], [`fkm_sample`] | base algorithm on a p% sample | one local search on all points |

mod fkm;
mod inckm;
mod inckpp;
mod sampled;
mod seeding;

pub use fkm::{fkm, fkm_traced, FkmTrace, MAX_ITERATIONS};
pub use inckm::{
    candidate_set, inckm, inckm_seed, inckm_sweep, lambda_sweep, spread, InckmParams, Spread,
};
pub use inckpp::{fkm_random, inckpp, inckpp_traced, kpp, StageRecord};
pub use sampled::{
    fkm_sample, inckpp_sample, kpp_sample, sample_indices, sample_size, SampleParams,
    SampledResult,
};
pub use seeding::{dsquared_sample, kpp_seed, one_medoid, uniform_seed};

use crate::{Error, Result};

pub(crate) fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Contract(format!("K = {k} must lie in 1..={n}")));
    }
    Ok(())
}
