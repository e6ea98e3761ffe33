//! PAES-25: a (1+1) evolution strategy that keeps a bounded archive of
//! mutually incomparable solutions while maximizing a pseudo-Boolean
//! multi-objective function.
//!
//! The crate provides the algorithm itself ([`paes`]), the three bounded
//! archivers it can run with ([`archiver`]), the benchmark functions whose
//! Pareto fronts are known exactly ([`benchmark`]), exact integer
//! hypervolumes ([`hypervolume`]) and independent ground-truth oracles
//! ([`oracle`]) used to cross-check the algorithm's behaviour.

pub mod archiver;
pub mod benchmark;
pub mod bitstring;
pub mod error;
pub mod fitness;
pub mod hypervolume;
pub mod mutation;
pub mod oracle;
pub mod paes;

pub use archiver::{aga_cell, mga_box, mga_level, AgaParams, Archive, Archiver, ArchiverDecision, Member};
pub use benchmark::Benchmark;
pub use bitstring::Bitstring;
pub use error::{ConfigError, DimensionMismatch};
pub use fitness::{compare, Dominance, FitnessVector};
pub use hypervolume::{chain_hv_formula, hv_contribution, hypervolume, ReferencePoint};
pub use mutation::MutationOperator;
pub use paes::{PaesState, RunConfig, RunRecord, StepEvent, StepOutcome, StopRule};

/// The RNG used everywhere: ChaCha12, seeded from a single `u64`. Given the
/// same seed and call sequence a run replays byte-identically within one
/// build of this crate.
pub type RunRng = rand_chacha::ChaCha12Rng;
