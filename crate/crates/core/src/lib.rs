//! Upper and lower bounds on the Matveev complexity of two-bridge link
//! complements, computed from an explicit pillowcase spine construction.
//!
//! - [`cf`]: continued fractions and normalization of `K(p, q)`
//! - [`spine`]: the true-vertex ledger of the spine and its replacement moves
//! - [`bounds`]: closed-form bounds and the resulting complexity interval
//! - [`census`]: tables over all link classes up to a bound on `p`
//! - [`cli`]: the `twobridge` command-line front end

pub mod bounds;
pub mod census;
pub mod cf;
pub mod cli;
pub mod error;
pub mod spine;

pub use bounds::{
    complexity_interval, cor2_family, cover_bound, lemma1_bound, lower_bound, pretzel_bound,
    sakuma_weeks_bound, theorem1_bound, BoundReport, CoverBound, LowerBound, V3,
};
pub use census::{census_report, enumerate_links, ingest_volumes, CensusRow, VolumeTable};
pub use cf::{
    cf_expand, cf_value, equivalence_class, is_hyperbolic, normalize, reverse, ContinuedFraction,
    NormalizationStep, TwoBridgeLink,
};
pub use error::{Error, Result};
pub use spine::{
    apply_replacement, initial_ledger, run_all_replacements, total_true_vertices, SpineLedger,
};
