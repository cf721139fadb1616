//! Quality checks for RDF ontologies and knowledge graphs.

use std::sync::atomic::{AtomicBool, Ordering};

pub mod cli;
pub mod cluster;
pub mod conflation;
pub mod netqa;
pub mod profiler;
pub mod rdf;
pub mod reporting;
pub mod review;
pub mod xref;

static QUIET: AtomicBool = AtomicBool::new(false);

/// Suppresses progress and warning output on stderr.
pub fn set_quiet(quiet: bool) {
    QUIET.store(quiet, Ordering::Relaxed);
}

pub fn quiet() -> bool {
    QUIET.load(Ordering::Relaxed)
}
