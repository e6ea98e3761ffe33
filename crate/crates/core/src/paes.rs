//! The PAES-25 main loop.
//!
//! Each iteration mutates a copy of the current solution into a candidate
//! `c` and updates the archive:
//!
//! 1. if `c` weakly dominates some member (equal fitness counts), every
//!    weakly dominated member is removed, `c` is inserted and becomes the
//!    current solution;
//! 2. else if some member strictly dominates `c`, it is discarded;
//! 3. else (`c` incomparable to all) it is inserted when the archive has
//!    room, otherwise the archiver arbitrates.
//!
//! Accepting an equal-fitness candidate in branch 1 is what lets the
//! current solution keep moving on fitness plateaus even when the archive
//! is full.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use smallvec::SmallVec;

use crate::archiver::{Archive, Archiver, Member};
use crate::benchmark::Benchmark;
use crate::bitstring::Bitstring;
use crate::error::ConfigError;
use crate::fitness::{Dominance, FitnessVector};
use crate::mutation::MutationOperator;
use crate::RunRng;

/// Which branch of the loop body an iteration took.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepEvent {
    DominatesAccepted,
    DominatedRejected,
    IncomparableAddedNotFull,
    IncomparableArchiverAccepted,
    IncomparableArchiverRejected,
}

impl StepEvent {
    pub fn name(&self) -> &'static str {
        match self {
            StepEvent::DominatesAccepted => "dominates_accepted",
            StepEvent::DominatedRejected => "dominated_rejected",
            StepEvent::IncomparableAddedNotFull => "incomparable_added_not_full",
            StepEvent::IncomparableArchiverAccepted => "incomparable_archiver_accepted",
            StepEvent::IncomparableArchiverRejected => "incomparable_archiver_rejected",
        }
    }

    /// Whether the candidate replaced the current solution.
    pub fn accepted(&self) -> bool {
        matches!(
            self,
            StepEvent::DominatesAccepted
                | StepEvent::IncomparableAddedNotFull
                | StepEvent::IncomparableArchiverAccepted
        )
    }
}

/// What one iteration did: the branch taken, the candidate's fitness, and
/// the fitness of every member that left the archive.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub event: StepEvent,
    pub candidate_fitness: FitnessVector,
    pub removed: SmallVec<[FitnessVector; 2]>,
}

/// When a run stops (besides exhausting its budget).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StopRule {
    /// Stop once the archive's fitness set is exactly the Pareto front.
    FullFront,
    /// Stop once coverage reaches the given fraction of the front.
    Coverage(f64),
    /// Run the budget out.
    BudgetOnly,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub benchmark: Benchmark,
    pub mutation: MutationOperator,
    pub archiver: Archiver,
    pub archive_capacity: usize,
    pub seed: u64,
    pub budget: u64,
    pub stop: StopRule,
    /// Re-verify the archive invariants after every step. Expensive;
    /// intended for fuzzing, not sweeps.
    pub check_invariants: bool,
}

impl RunConfig {
    pub fn new(
        benchmark: Benchmark,
        mutation: MutationOperator,
        archiver: Archiver,
        archive_capacity: usize,
        seed: u64,
        budget: u64,
    ) -> Result<Self, ConfigError> {
        let config = RunConfig {
            benchmark,
            mutation,
            archiver,
            archive_capacity,
            seed,
            budget,
            stop: StopRule::FullFront,
            check_invariants: false,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_stop(mut self, stop: StopRule) -> Self {
        self.stop = stop;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.archive_capacity < 1 {
            return Err(ConfigError::InvalidArchiveSize);
        }
        if self.budget < 1 {
            return Err(ConfigError::InvalidBudget);
        }
        match &self.archiver {
            Archiver::Hva(reference) => {
                if reference.m() != self.benchmark.m() as usize {
                    return Err(ConfigError::InvalidReferencePoint {
                        expected: self.benchmark.m() as usize,
                    });
                }
            }
            Archiver::Aga(params) if params.grid_range < self.benchmark.f_max() => {
                return Err(ConfigError::InvalidGridRange {
                    grid_range: params.grid_range,
                    f_max: self.benchmark.f_max(),
                });
            }
            _ => {}
        }
        Ok(())
    }
}

/// Per-run results. `iterations_to_full_front` is `None` when the run was
/// censored by its budget.
#[derive(Clone, Debug)]
pub struct RunRecord {
    pub config: RunConfig,
    pub iterations: u64,
    pub iterations_to_first_pareto: Option<u64>,
    pub iterations_to_full_front: Option<u64>,
    pub censored: bool,
    pub coverage: f64,
    pub hv_fraction: f64,
    pub wall_time: Duration,
}

/// One PAES-25 configuration in flight.
pub struct PaesState {
    config: RunConfig,
    rng: RunRng,
    archive: Archive,
    current: Bitstring,
    current_fitness: FitnessVector,
    t: u64,
    scratch: Bitstring,
    scratch_fitness: FitnessVector,
    removal_buf: Vec<usize>,
    front_size: u64,
    front_in_archive: u64,
    first_pareto_t: Option<u64>,
    full_front_t: Option<u64>,
}

impl PaesState {
    /// Draw the initial solution uniformly at random; the archive starts as
    /// exactly that solution.
    pub fn init(config: &RunConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let mut rng = RunRng::seed_from_u64(config.seed);
        let start = Bitstring::random(config.benchmark.n() as usize, &mut rng);
        Self::build(config, rng, start)
    }

    /// Start from a fixed genotype instead of a random one.
    pub fn init_at(config: &RunConfig, start: Bitstring) -> Result<Self, ConfigError> {
        config.validate()?;
        if start.len() != config.benchmark.n() as usize {
            return Err(ConfigError::InvalidStart {
                got: start.len(),
                expected: config.benchmark.n() as usize,
            });
        }
        let rng = RunRng::seed_from_u64(config.seed);
        Self::build(config, rng, start)
    }

    fn build(config: &RunConfig, rng: RunRng, start: Bitstring) -> Result<Self, ConfigError> {
        let fitness = config.benchmark.evaluate(&start);
        let mut archive = Archive::new(config.archive_capacity);
        archive.insert(Member { genotype: start.clone(), fitness: fitness.clone() });
        let front_size = config.benchmark.front_size();
        let on_front = config.benchmark.is_front_fitness(&fitness);
        Ok(PaesState {
            scratch: start.clone(),
            scratch_fitness: fitness.clone(),
            removal_buf: Vec::new(),
            front_in_archive: on_front as u64,
            first_pareto_t: on_front.then_some(0),
            full_front_t: None,
            config: config.clone(),
            rng,
            archive,
            current: start,
            current_fitness: fitness,
            t: 0,
            front_size,
        })
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn current(&self) -> &Bitstring {
        &self.current
    }

    pub fn current_fitness(&self) -> &FitnessVector {
        &self.current_fitness
    }

    pub fn archive(&self) -> &Archive {
        &self.archive
    }

    pub fn benchmark(&self) -> &Benchmark {
        &self.config.benchmark
    }

    /// Fraction of the Pareto front's fitness vectors present in the archive.
    pub fn coverage(&self) -> f64 {
        self.front_in_archive as f64 / self.front_size as f64
    }

    pub fn front_in_archive(&self) -> u64 {
        self.front_in_archive
    }

    /// True once the archive's fitness set equals the entire front.
    pub fn is_full_front(&self) -> bool {
        self.front_in_archive == self.front_size
    }

    pub fn first_pareto_t(&self) -> Option<u64> {
        self.first_pareto_t
    }

    pub fn full_front_t(&self) -> Option<u64> {
        self.full_front_t
    }

    /// Sum of the current solution's objective values; on m-LOTZ this is the
    /// blockwise leading-ones plus trailing-zeros potential, which one-bit
    /// mutation can never decrease.
    pub fn potential(&self) -> u64 {
        self.current_fitness.sum()
    }

    fn insert_member(&mut self, genotype: Bitstring, fitness: FitnessVector) {
        if self.config.benchmark.is_front_fitness(&fitness) {
            self.front_in_archive += 1;
        }
        self.archive.insert(Member { genotype, fitness });
    }

    fn remove_member(&mut self, index: usize) -> Member {
        let member = self.archive.remove_at(index);
        if self.config.benchmark.is_front_fitness(&member.fitness) {
            self.front_in_archive -= 1;
        }
        member
    }

    /// One iteration of the loop body; `t` advances by one.
    pub fn step(&mut self) -> StepOutcome {
        #[cfg(debug_assertions)]
        let potential_before = self.potential();

        self.scratch.copy_from(&self.current);
        self.config.mutation.mutate_in_place(&mut self.scratch, &mut self.rng);
        self.config
            .benchmark
            .evaluate_into(&self.scratch, &mut self.scratch_fitness);

        let event = self.classify_and_apply();
        self.t += 1;

        if self.first_pareto_t.is_none()
            && self.config.benchmark.is_front_fitness(&self.current_fitness)
        {
            self.first_pareto_t = Some(self.t);
        }
        if self.full_front_t.is_none() && self.is_full_front() {
            self.full_front_t = Some(self.t);
        }

        #[cfg(debug_assertions)]
        if self.config.mutation == MutationOperator::OneBit
            && matches!(self.config.benchmark, Benchmark::MLotz { .. })
        {
            debug_assert!(
                self.potential() >= potential_before,
                "one-bit potential decreased at t={}",
                self.t
            );
        }

        if self.config.check_invariants {
            self.assert_invariants();
        }
        event
    }

    fn classify_and_apply(&mut self) -> StepOutcome {
        let candidate_fitness = self.scratch_fitness.clone();
        let mut removed: SmallVec<[FitnessVector; 2]> = SmallVec::new();

        // Equal fitness is weak dominance, so branch 1 applies; the
        // incomparability invariant means the equal member is the only
        // weakly dominated one, and the genotype swap suffices.
        if let Some(index) = self.archive.position_of_fitness(&self.scratch_fitness) {
            removed.push(self.scratch_fitness.clone());
            self.archive.replace_genotype_at(index, &mut self.scratch);
            // scratch now holds the outgoing genotype; take the member's
            // copy for the current solution.
            self.current
                .copy_from(&self.archive.members()[index].genotype);
            self.current_fitness = self.scratch_fitness.clone();
            return StepOutcome {
                event: StepEvent::DominatesAccepted,
                candidate_fitness,
                removed,
            };
        }

        // Candidates strictly dominated by the current solution are the
        // common case away from plateaus; the current solution's fitness is
        // always in the archive, so this resolves branch 2 in O(m).
        let versus_current = self.scratch_fitness.dominance(&self.current_fitness);
        if versus_current == Dominance::StrictlyDominatedBy {
            return StepOutcome {
                event: StepEvent::DominatedRejected,
                candidate_fitness,
                removed,
            };
        }

        self.removal_buf.clear();
        let mut dominator_found = false;
        for (i, member) in self.archive.members().iter().enumerate() {
            match self.scratch_fitness.dominance(&member.fitness) {
                Dominance::StrictlyDominates | Dominance::Equal => self.removal_buf.push(i),
                Dominance::StrictlyDominatedBy => {
                    dominator_found = true;
                    break;
                }
                Dominance::Incomparable => {}
            }
        }

        if !self.removal_buf.is_empty() {
            debug_assert!(!dominator_found, "archive held comparable members");
            let mut indices = std::mem::take(&mut self.removal_buf);
            indices.sort_unstable_by(|a, b| b.cmp(a));
            for &i in &indices {
                removed.push(self.remove_member(i).fitness);
            }
            indices.clear();
            self.removal_buf = indices;
            self.accept_candidate();
            return StepOutcome {
                event: StepEvent::DominatesAccepted,
                candidate_fitness,
                removed,
            };
        }

        if dominator_found {
            return StepOutcome {
                event: StepEvent::DominatedRejected,
                candidate_fitness,
                removed,
            };
        }

        // Incomparable to every member.
        if !self.archive.is_full() {
            self.accept_candidate();
            return StepOutcome {
                event: StepEvent::IncomparableAddedNotFull,
                candidate_fitness,
                removed,
            };
        }

        let decision =
            self.config
                .archiver
                .decide(&self.archive, &self.scratch_fitness, &mut self.rng);
        if decision.accepted {
            let index = decision
                .remove
                .expect("accepted decision on a full archive names a removal");
            removed.push(self.remove_member(index).fitness);
            self.accept_candidate();
            StepOutcome {
                event: StepEvent::IncomparableArchiverAccepted,
                candidate_fitness,
                removed,
            }
        } else {
            StepOutcome {
                event: StepEvent::IncomparableArchiverRejected,
                candidate_fitness,
                removed,
            }
        }
    }

    fn accept_candidate(&mut self) {
        self.insert_member(self.scratch.clone(), self.scratch_fitness.clone());
        std::mem::swap(&mut self.current, &mut self.scratch);
        self.current_fitness = self.scratch_fitness.clone();
    }

    /// Full invariant re-check; O(|A|^2 m).
    pub fn assert_invariants(&self) {
        assert!(self.archive.len() <= self.archive.capacity());
        assert!(!self.archive.is_empty());
        self.archive.assert_pairwise_incomparable();
        assert!(
            !self.archive.members().iter().any(|member| {
                member.fitness.dominance(&self.current_fitness) == Dominance::StrictlyDominates
            }),
            "current solution strictly dominated by an archive member"
        );
        assert!(
            self.archive.position_of_fitness(&self.current_fitness).is_some(),
            "current solution's fitness missing from the archive"
        );
        let front_count = self
            .archive
            .members()
            .iter()
            .filter(|m| self.config.benchmark.is_front_fitness(&m.fitness))
            .count() as u64;
        assert_eq!(front_count, self.front_in_archive);
    }

    /// Iterate until the stop rule fires or the budget runs out, invoking
    /// `observer` after every step.
    pub fn run_with_observer<F>(&mut self, mut observer: F) -> RunRecord
    where
        F: FnMut(&PaesState, &StepOutcome),
    {
        let start = Instant::now();
        while self.t < self.config.budget && !self.stop_met() {
            let outcome = self.step();
            observer(self, &outcome);
        }
        self.record(start.elapsed())
    }

    pub fn run_to_end(&mut self) -> RunRecord {
        self.run_with_observer(|_, _| {})
    }

    fn stop_met(&self) -> bool {
        match self.config.stop {
            StopRule::FullFront => self.is_full_front(),
            StopRule::Coverage(fraction) => self.coverage() >= fraction,
            StopRule::BudgetOnly => false,
        }
    }

    fn record(&self, wall_time: Duration) -> RunRecord {
        let censored = match self.config.stop {
            StopRule::FullFront => !self.is_full_front(),
            StopRule::Coverage(fraction) => self.coverage() < fraction,
            StopRule::BudgetOnly => false,
        };
        RunRecord {
            config: self.config.clone(),
            iterations: self.t,
            iterations_to_first_pareto: self.first_pareto_t,
            iterations_to_full_front: self.full_front_t,
            censored,
            coverage: self.coverage(),
            hv_fraction: self.hv_fraction(),
            wall_time,
        }
    }

    /// Archive hypervolume relative to the front's, reference (-1, ..., -1).
    pub fn hv_fraction(&self) -> f64 {
        let h = crate::hypervolume::ReferencePoint::minus_ones(self.config.benchmark.m() as usize);
        let archive_hv =
            crate::hypervolume::hypervolume(&self.archive.fitness_values(), &h).expect("same m");
        archive_hv as f64 / self.config.benchmark.front_hypervolume() as f64
    }
}

/// Convenience wrapper: build the state and run it to completion.
pub fn run(config: &RunConfig) -> Result<RunRecord, ConfigError> {
    Ok(PaesState::init(config)?.run_to_end())
}
