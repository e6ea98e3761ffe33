//! Experiment orchestration around `paes-core`: replicated sweeps with
//! deterministic per-replicate seeds, CSV output, log-log scaling fits, and
//! the named verification suites that check the archive-distribution and
//! runtime claims empirically.

pub mod configfile;
pub mod fit;
pub mod seeds;
pub mod spec;
pub mod sweep;
pub mod trace;
pub mod verify;
