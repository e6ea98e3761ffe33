//! Named verification suites. Each suite runs a structural or statistical
//! check of the algorithm against an independent oracle and returns a
//! report with one evidence line per sub-check.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use paes_core::oracle::{
    attainable_fitness, brute_force_front, cover_time, lattice_hypervolume, max_antichain_size,
    GridWalkConfig, WalkMode,
};
use paes_core::{
    aga_cell, chain_hv_formula, hypervolume, mga_box, AgaParams, Archiver, Benchmark, Bitstring,
    Dominance, FitnessVector, MutationOperator, PaesState, ReferencePoint, RunConfig, StepEvent,
    StopRule,
};
use rand::SeedableRng;
use rayon::prelude::*;
use smallvec::SmallVec;

use crate::seeds::replicate_seed;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub lines: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.to_string(), passed: true, lines: Vec::new() }
    }

    fn line(&mut self, text: String) {
        self.lines.push(text);
    }

    fn check(&mut self, ok: bool, text: String) {
        if !ok {
            self.passed = false;
        }
        self.lines.push(format!("{} {text}", if ok { "ok  " } else { "FAIL" }));
    }
}

/// Optional overrides for suite parameters; every suite supplies its own
/// defaults, which are the acceptance-criteria values.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteParams {
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub steps: Option<u64>,
    pub seeds: Option<u64>,
    pub archive_size: Option<usize>,
    pub budget: Option<u64>,
    pub n_max: Option<u32>,
    pub reps: Option<u64>,
    pub base_seed: Option<u64>,
}

pub const SUITE_NAMES: [&str; 10] = [
    "hv-formula",
    "monotone-w",
    "incomparable-archive",
    "hv-monotone",
    "aga-distribution",
    "hva-spread",
    "mga-levels",
    "antichain-bounds",
    "front-oracle",
    "walk-equivalence",
];

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    match name {
        "hv-formula" => Ok(hv_formula(params.n_max.unwrap_or(30))),
        "monotone-w" => Ok(monotone_w(
            params.m.unwrap_or(4),
            params.n.unwrap_or(16),
            params.steps.unwrap_or(100_000),
            params.seeds.unwrap_or(3),
            params.base_seed.unwrap_or(DEFAULT_BASE_SEED),
        )),
        "incomparable-archive" => Ok(incomparable_archive(
            params.steps.unwrap_or(100_000),
            params.base_seed.unwrap_or(DEFAULT_BASE_SEED),
        )),
        "hv-monotone" => Ok(hv_monotone(
            params.n.unwrap_or(24),
            params.steps.unwrap_or(100_000),
            params.seeds.unwrap_or(20),
            params.base_seed.unwrap_or(DEFAULT_BASE_SEED),
        )),
        "aga-distribution" => Ok(aga_distribution(
            params.n.unwrap_or(32),
            params.archive_size.unwrap_or(17),
            params.seeds.unwrap_or(10),
            params.budget,
            params.base_seed.unwrap_or(DEFAULT_BASE_SEED),
        )),
        "hva-spread" => Ok(hva_spread(
            params.n.unwrap_or(30),
            params.archive_size.unwrap_or(12),
            params.seeds.unwrap_or(20),
            params.budget,
            params.base_seed.unwrap_or(DEFAULT_BASE_SEED),
        )),
        "mga-levels" => Ok(mga_levels(
            params.n.unwrap_or(23),
            params.seeds.unwrap_or(10),
            params.budget,
            params.base_seed.unwrap_or(DEFAULT_BASE_SEED),
        )),
        "antichain-bounds" => Ok(antichain_bounds()),
        "front-oracle" => Ok(front_oracle(params.n_max.unwrap_or(14))),
        "walk-equivalence" => Ok(walk_equivalence(
            params.n.unwrap_or(32),
            params.reps.unwrap_or(200),
            params.base_seed.unwrap_or(DEFAULT_BASE_SEED),
        )),
        other => bail!("unknown suite {other:?}, expected one of {SUITE_NAMES:?}"),
    }
}

pub const DEFAULT_BASE_SEED: u64 = 20250810;

/// Exhaustive agreement of the sweep hypervolume, the closed-form chain
/// formula, and the brute-force lattice count on every hole-free chain.
pub fn hv_formula(n_max: u32) -> SuiteReport {
    let mut report = SuiteReport::new("hv-formula");
    let h = ReferencePoint::minus_ones(2);
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for n in 0..=n_max {
        for a in 0..=n {
            for b in a..=n {
                let chain: Vec<FitnessVector> = (a..=b)
                    .map(|i| FitnessVector::new([i, n - i]))
                    .collect();
                let swept = hypervolume(&chain, &h).unwrap();
                let formula = chain_hv_formula(n, a, b).unwrap();
                let lattice = lattice_hypervolume(&chain, &h).unwrap();
                if swept != formula || lattice != formula {
                    mismatches += 1;
                }
                checked += 1;
            }
        }
    }
    report.check(
        mismatches == 0,
        format!("sweep = formula = lattice on {checked} chains up to n={n_max} ({mismatches} mismatches)"),
    );
    report
}

/// The blockwise LO+TZ potential of the current solution never decreases
/// under one-bit mutation on m-LOTZ.
pub fn monotone_w(m: u32, n: u32, steps: u64, seeds: u64, base_seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("monotone-w");
    let bench = match Benchmark::mlotz(m, n) {
        Ok(b) => b,
        Err(e) => {
            report.check(false, format!("invalid benchmark: {e}"));
            return report;
        }
    };
    let capacity = (n as usize + 1).min(64);
    for seed_index in 0..seeds {
        let seed = replicate_seed(base_seed, n as u64, seed_index);
        let config = RunConfig::new(
            bench,
            MutationOperator::OneBit,
            Archiver::Aga(AgaParams::defaults(bench.f_max(), capacity, m)),
            capacity,
            seed,
            steps.max(1),
        )
        .unwrap()
        .with_stop(StopRule::BudgetOnly);
        let mut state = PaesState::init(&config).unwrap();
        let mut decreases = 0u64;
        let mut last = state.potential();
        for _ in 0..steps {
            state.step();
            let now = state.potential();
            if now < last {
                decreases += 1;
            }
            last = now;
        }
        report.check(
            decreases == 0,
            format!("m={m} n={n} seed={seed_index}: {decreases} potential decreases in {steps} steps"),
        );
    }
    report
}

/// Pairwise incomparability of the archive, size bound, and presence of the
/// current solution's fitness, fuzzed across benchmarks, archivers and
/// mutation operators.
pub fn incomparable_archive(steps_per_combo: u64, base_seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("incomparable-archive");
    let benchmarks = [
        Benchmark::lotz(16).unwrap(),
        Benchmark::mlotz(4, 16).unwrap(),
        Benchmark::omm(16).unwrap(),
        Benchmark::cocz(16).unwrap(),
    ];
    let mutations = [MutationOperator::OneBit, MutationOperator::StandardBit];
    let capacity = 8usize;
    let mut combos: Vec<(Benchmark, MutationOperator, &'static str)> = Vec::new();
    for &bench in &benchmarks {
        for &mutation in &mutations {
            for archiver_name in ["aga", "hva", "mga", "none"] {
                combos.push((bench, mutation, archiver_name));
            }
        }
    }
    let results: Vec<(String, u64)> = combos
        .par_iter()
        .map(|&(bench, mutation, archiver_name)| {
            let archiver = match archiver_name {
                "aga" => Archiver::Aga(AgaParams::defaults(bench.f_max(), capacity, bench.m())),
                "hva" => Archiver::Hva(ReferencePoint::minus_ones(bench.m() as usize)),
                "mga" => Archiver::Mga,
                _ => Archiver::None,
            };
            let seed = replicate_seed(base_seed, bench.n() as u64, archiver_name.len() as u64);
            let config = RunConfig::new(bench, mutation, archiver, capacity, seed, steps_per_combo)
                .unwrap()
                .with_stop(StopRule::BudgetOnly);
            let mut state = PaesState::init(&config).unwrap();
            let mut violations = 0u64;
            for _ in 0..steps_per_combo {
                state.step();
                let members = state.archive().members();
                if members.len() > capacity || members.is_empty() {
                    violations += 1;
                    continue;
                }
                let mut ok = true;
                'pairs: for (i, a) in members.iter().enumerate() {
                    for b in &members[i + 1..] {
                        if a.fitness.dominance(&b.fitness) != Dominance::Incomparable {
                            ok = false;
                            break 'pairs;
                        }
                    }
                }
                if !ok
                    || state
                        .archive()
                        .position_of_fitness(state.current_fitness())
                        .is_none()
                {
                    violations += 1;
                }
            }
            (
                format!("{} {} {}", bench, mutation.name(), archiver_name),
                violations,
            )
        })
        .collect();
    for (label, violations) in results {
        report.check(
            violations == 0,
            format!("{label}: {violations} violations in {steps_per_combo} steps"),
        );
    }
    report
}

/// With the archive at least as large as the maximum antichain, the archive
/// hypervolume never decreases, strictly increases when the candidate
/// strictly dominates a removed member, and the archiver is never consulted.
pub fn hv_monotone(n: u32, steps: u64, seeds: u64, base_seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("hv-monotone");
    let bench = Benchmark::lotz(n).unwrap();
    let antichain = max_antichain_size(&bench).unwrap();
    report.check(
        antichain == n as usize + 1,
        format!("oracle antichain size = {antichain}, expected n+1 = {}", n + 1),
    );
    let capacity = antichain;
    let h = ReferencePoint::minus_ones(2);
    let results: Vec<(u64, u64, u64, u64)> = (0..seeds)
        .into_par_iter()
        .map(|seed_index| {
            let seed = replicate_seed(base_seed, n as u64, seed_index);
            let config = RunConfig::new(
                bench,
                MutationOperator::StandardBit,
                Archiver::None,
                capacity,
                seed,
                steps.max(1),
            )
            .unwrap()
            .with_stop(StopRule::BudgetOnly);
            let mut state = PaesState::init(&config).unwrap();
            let mut hv = hypervolume(&state.archive().fitness_values(), &h).unwrap();
            let mut decreases = 0u64;
            let mut strict_failures = 0u64;
            let mut archiver_consultations = 0u64;
            let mut strict_dominations = 0u64;
            for _ in 0..steps {
                let outcome = state.step();
                let now = hypervolume(&state.archive().fitness_values(), &h).unwrap();
                if now < hv {
                    decreases += 1;
                }
                if matches!(
                    outcome.event,
                    StepEvent::IncomparableArchiverAccepted | StepEvent::IncomparableArchiverRejected
                ) {
                    archiver_consultations += 1;
                }
                let strictly_dominated_removal = outcome
                    .removed
                    .iter()
                    .any(|r| outcome.candidate_fitness.dominance(r) == Dominance::StrictlyDominates);
                if strictly_dominated_removal {
                    strict_dominations += 1;
                    if now <= hv {
                        strict_failures += 1;
                    }
                }
                hv = now;
            }
            (decreases, strict_failures, archiver_consultations, strict_dominations)
        })
        .collect();
    let decreases: u64 = results.iter().map(|r| r.0).sum();
    let strict_failures: u64 = results.iter().map(|r| r.1).sum();
    let consultations: u64 = results.iter().map(|r| r.2).sum();
    let strict_events: u64 = results.iter().map(|r| r.3).sum();
    report.check(
        decreases == 0,
        format!("hv never decreased over {seeds} seeds x {steps} steps ({decreases} decreases)"),
    );
    report.check(
        strict_failures == 0,
        format!("hv strictly increased on all {strict_events} strict-domination replacements ({strict_failures} failures)"),
    );
    report.check(
        consultations == 0,
        format!("archiver consulted {consultations} times (capacity = antichain size makes this impossible)"),
    );
    report
}

fn front_lo_values(state: &PaesState) -> Option<Vec<u32>> {
    let mut los = Vec::with_capacity(state.archive().len());
    for member in state.archive().members() {
        if !state.benchmark().is_front_fitness(&member.fitness) {
            return None;
        }
        los.push(member.fitness[0]);
    }
    los.sort_unstable();
    Some(los)
}

/// AGA cell-distribution properties on a small archive: with k archive
/// points in some cell, every cell with at least k front points holds at
/// least k-1, and cells with fewer front points are full.
pub fn aga_distribution(
    n: u32,
    capacity: usize,
    seeds: u64,
    budget: Option<u64>,
    base_seed: u64,
) -> SuiteReport {
    let mut report = SuiteReport::new("aga-distribution");
    let bench = Benchmark::lotz(n).unwrap();
    let params = AgaParams::defaults(bench.f_max(), capacity, bench.m());
    let budget = budget.unwrap_or(10 * 50 * (n as u64).pow(3));
    report.line(format!(
        "n={n} L={capacity} bisections={} budget={budget} seeds={seeds}",
        params.bisections
    ));
    let mut front_cells: BTreeMap<SmallVec<[u32; 8]>, usize> = BTreeMap::new();
    for v in bench.front_fitness() {
        *front_cells.entry(aga_cell(&v, &params)).or_default() += 1;
    }
    type SeedTrace = (u64, bool, usize, Vec<usize>, Vec<String>);
    let outcomes: Vec<SeedTrace> = (0..seeds)
        .into_par_iter()
        .map(|seed_index| {
            let seed = replicate_seed(base_seed, n as u64, seed_index);
            let config = RunConfig::new(
                bench,
                MutationOperator::OneBit,
                Archiver::Aga(params),
                capacity,
                seed,
                budget,
            )
            .unwrap()
            .with_stop(StopRule::BudgetOnly);
            let mut state = PaesState::init(&config).unwrap();
            state.run_to_end();
            let all_front = front_lo_values(&state).is_some();
            let mut occupancy: BTreeMap<SmallVec<[u32; 8]>, usize> = BTreeMap::new();
            for member in state.archive().members() {
                *occupancy.entry(aga_cell(&member.fitness, &params)).or_default() += 1;
            }
            let mut violations = Vec::new();
            for (cell, &k) in &occupancy {
                for (other, &front_cap) in &front_cells {
                    if other == cell {
                        continue;
                    }
                    let other_occ = occupancy.get(other).copied().unwrap_or(0);
                    if front_cap >= k && other_occ + 2 <= k {
                        violations.push(format!(
                            "cell {cell:?} holds {k} while {other:?} caps {front_cap} but holds {other_occ}"
                        ));
                    }
                    if front_cap < k && other_occ < front_cap.min(k - 1) {
                        violations.push(format!(
                            "cell {cell:?} holds {k} while smaller cell {other:?} caps {front_cap} but holds {other_occ}"
                        ));
                    }
                }
            }
            let occs: Vec<usize> = occupancy.values().copied().collect();
            (seed_index, all_front, state.archive().len(), occs, violations)
        })
        .collect();
    for (seed_index, all_front, size, occs, violations) in outcomes {
        report.check(
            all_front && size == capacity && violations.is_empty(),
            format!(
                "seed={seed_index}: all_front={all_front} |A|={size} occupancies={occs:?} violations={violations:?}"
            ),
        );
    }
    report
}

/// HVA spread on bi-objective LOTZ with a small archive. Checks the archive
/// state at the end of the budget against d = L + ceil(L/2) - 2 with
/// ceil(L/2) - 1 pairwise non-adjacent holes and the matching hypervolume
/// bound; also reports the first iteration at which that configuration is
/// hit.
pub fn hva_spread(
    n: u32,
    capacity: usize,
    seeds: u64,
    budget: Option<u64>,
    base_seed: u64,
) -> SuiteReport {
    let mut report = SuiteReport::new("hva-spread");
    let bench = Benchmark::lotz(n).unwrap();
    let budget = budget.unwrap_or(50 * (n as u64).pow(3));
    let half_up = capacity.div_ceil(2);
    let target_d = (capacity + half_up - 2) as u32;
    let target_holes = half_up - 1;
    let hv_bound = (target_d as u64 + 1) * (n as u64 + 1)
        - (target_d as u64) * (target_d as u64 + 1) / 2
        - (target_holes as u64);
    report.line(format!(
        "n={n} L={capacity} budget={budget} seeds={seeds}: expect d={target_d}, holes={target_holes}, no adjacent holes, hv>={hv_bound}"
    ));
    type SeedOutcome = (u64, bool, String);
    let outcomes: Vec<SeedOutcome> = (0..seeds)
        .into_par_iter()
        .map(|seed_index| {
            let seed = replicate_seed(base_seed, n as u64, seed_index);
            let config = RunConfig::new(
                bench,
                MutationOperator::OneBit,
                Archiver::Hva(ReferencePoint::minus_ones(2)),
                capacity,
                seed,
                budget,
            )
            .unwrap()
            .with_stop(StopRule::BudgetOnly);
            let mut state = PaesState::init(&config).unwrap();
            // Track the first iteration at which the archive is full, all on
            // the front, and spread to exactly the target width.
            let mut hit: Option<(u64, usize, bool)> = None;
            while state.t() < budget {
                state.step();
                if hit.is_none() && state.archive().len() == capacity {
                    if let Some(los) = front_lo_values(&state) {
                        let d = los.last().unwrap() - los[0];
                        if d == target_d {
                            let holes = chain_holes(&los);
                            hit = Some((state.t(), holes.len(), adjacent_holes(&holes)));
                        }
                    }
                }
            }
            let los = match front_lo_values(&state) {
                Some(los) => los,
                None => return (seed_index, false, "non-front member at budget end".to_string()),
            };
            let d = los.last().unwrap() - los[0];
            let holes = chain_holes(&los);
            let adjacent = adjacent_holes(&holes);
            let hv = hypervolume(&state.archive().fitness_values(), &ReferencePoint::minus_ones(2))
                .unwrap();
            let ok = d == target_d && holes.len() == target_holes && !adjacent && hv >= hv_bound;
            let hit_line = match hit {
                Some((t, hit_holes, hit_adjacent)) => format!(
                    "first hit t={t} (holes={hit_holes}, adjacent={hit_adjacent})"
                ),
                None => "never hit the target spread".to_string(),
            };
            (
                seed_index,
                ok,
                format!(
                    "end: d={d} holes={} adjacent={adjacent} hv={hv}; {hit_line}",
                    holes.len()
                ),
            )
        })
        .collect();
    for (seed_index, ok, detail) in outcomes {
        report.check(ok, format!("seed={seed_index}: {detail}"));
    }
    report
}

fn chain_holes(sorted_los: &[u32]) -> Vec<u32> {
    let (a, b) = (sorted_los[0], *sorted_los.last().unwrap());
    (a..=b).filter(|i| sorted_los.binary_search(i).is_err()).collect()
}

fn adjacent_holes(holes: &[u32]) -> bool {
    holes.windows(2).any(|w| w[1] == w[0] + 1)
}

/// MGA on bi-objective LOTZ with n = 2^k * l - 1: the final archive's box
/// index vectors are pairwise incomparable at the coarseness level the
/// archive size dictates.
pub fn mga_levels(n: u32, seeds: u64, budget: Option<u64>, base_seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("mga-levels");
    let bench = Benchmark::lotz(n).unwrap();
    let budget = budget.unwrap_or(50 * (n as u64).pow(3));
    // n = 2^k * l - 1 with l odd.
    let mut k = 0u32;
    let mut l = n + 1;
    while l.is_multiple_of(2) {
        l /= 2;
        k += 1;
    }
    report.line(format!("n={n} = 2^{k} * {l} - 1, budget={budget}, seeds={seeds}"));
    // Capacity -> expected coarseness level, from the size brackets
    // (l+1)/2, l, 2l, 4l, ...
    let expected_level = |capacity: usize| -> u32 {
        if capacity as u32 <= l.div_ceil(2) {
            k + 1
        } else if capacity as u32 <= l {
            k
        } else {
            let mut j = 1;
            while capacity as u32 > (1 << j) * l {
                j += 1;
            }
            k - j
        }
    };
    let mut jobs = Vec::new();
    for capacity in 2..=6usize {
        for seed_index in 0..seeds {
            jobs.push((capacity, seed_index));
        }
    }
    type JobOutcome = (usize, u64, u32, bool, String);
    let outcomes: Vec<JobOutcome> = jobs
        .par_iter()
        .map(|&(capacity, seed_index)| {
            let level = expected_level(capacity);
            let seed = replicate_seed(base_seed, (n as u64) * 100 + capacity as u64, seed_index);
            let config = RunConfig::new(
                bench,
                MutationOperator::OneBit,
                Archiver::Mga,
                capacity,
                seed,
                budget,
            )
            .unwrap()
            .with_stop(StopRule::BudgetOnly);
            let mut state = PaesState::init(&config).unwrap();
            state.run_to_end();
            let all_front = front_lo_values(&state).is_some();
            let fits = state.archive().fitness_values();
            let boxes: Vec<SmallVec<[u32; 8]>> = fits.iter().map(|f| mga_box(f, level)).collect();
            let mut comparable_pairs = 0usize;
            for i in 0..boxes.len() {
                for j in i + 1..boxes.len() {
                    let a = FitnessVector::new(boxes[i].iter().copied());
                    let b = FitnessVector::new(boxes[j].iter().copied());
                    if a.dominance(&b) != Dominance::Incomparable {
                        comparable_pairs += 1;
                    }
                }
            }
            let ok = all_front && state.archive().len() == capacity && comparable_pairs == 0;
            let los: Vec<u32> = fits.iter().map(|f| f[0]).collect();
            (
                capacity,
                seed_index,
                level,
                ok,
                format!("all_front={all_front} |A|={} comparable_pairs={comparable_pairs} lo={los:?}", state.archive().len()),
            )
        })
        .collect();
    for (capacity, seed_index, level, ok, detail) in outcomes {
        report.check(ok, format!("L={capacity} level={level} seed={seed_index}: {detail}"));
    }
    report
}

/// The exact maximum antichain matches n+1 for bi-objective LOTZ and lands
/// inside the analytical bracket for four objectives.
pub fn antichain_bounds() -> SuiteReport {
    let mut report = SuiteReport::new("antichain-bounds");
    for n in 2..=16u32 {
        let size = max_antichain_size(&Benchmark::lotz(n).unwrap()).unwrap();
        report.check(
            size == n as usize + 1,
            format!("lotz n={n}: antichain {size}, expected {}", n + 1),
        );
    }
    for n in [4u32, 8, 12] {
        let bench = Benchmark::mlotz(4, n).unwrap();
        let size = max_antichain_size(&bench).unwrap() as f64;
        let k = (2 * n / 4 + 1) as f64;
        let lower = k.powi(3) / 8.0;
        let upper = k.powi(3);
        report.check(
            size >= lower && size <= upper,
            format!("mlotz m=4 n={n}: antichain {size} in [{lower:.3}, {upper:.0}]"),
        );
    }
    report
}

/// The enumerated Pareto fronts match exhaustive search for every
/// benchmark, and the membership predicate agrees on every attainable
/// fitness vector.
pub fn front_oracle(n_max: u32) -> SuiteReport {
    let mut report = SuiteReport::new("front-oracle");
    let mut benchmarks: Vec<Benchmark> = Vec::new();
    for n in 2..=n_max {
        benchmarks.push(Benchmark::lotz(n).unwrap());
    }
    for n in (4..=n_max).step_by(2) {
        benchmarks.push(Benchmark::mlotz(4, n).unwrap());
    }
    for n in (6..=n_max).step_by(3) {
        benchmarks.push(Benchmark::mlotz(6, n).unwrap());
    }
    for n in 1..=n_max {
        benchmarks.push(Benchmark::omm(n).unwrap());
    }
    for n in (2..=n_max).step_by(2) {
        benchmarks.push(Benchmark::cocz(n).unwrap());
    }
    let results: Vec<(String, bool)> = benchmarks
        .par_iter()
        .map(|bench| {
            let brute = brute_force_front(bench).unwrap();
            let mut listed = bench.front_fitness();
            listed.sort_unstable_by(|a, b| a.values().cmp(b.values()));
            let fronts_match = brute == listed;
            let membership_matches = attainable_fitness(bench)
                .iter()
                .all(|v| bench.is_front_fitness(v) == brute.contains(v));
            (format!("{bench}"), fronts_match && membership_matches)
        })
        .collect();
    let failures: Vec<&String> = results.iter().filter(|(_, ok)| !ok).map(|(l, _)| l).collect();
    report.check(
        failures.is_empty(),
        format!(
            "{} benchmarks up to n={n_max}: enumerated front = exhaustive front, membership agrees (failures: {failures:?})",
            results.len()
        ),
    );
    report
}

/// Exact and statistical agreement between the PAES-25 on-front dynamics
/// under one-bit mutation and the lazy grid walk.
pub fn walk_equivalence(stat_n: u32, reps: u64, base_seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("walk-equivalence");

    // Exact part: from every front genotype, the n one-bit flips induce
    // exactly the lazy-walk step law, as rational probabilities with
    // denominator n.
    let mut cases = Vec::new();
    for n in 2..=12u32 {
        cases.push((2u32, n));
    }
    for n in [4u32, 6, 8, 10, 12] {
        cases.push((4u32, n));
    }
    let mut exact_checked = 0u64;
    let mut exact_failures = 0u64;
    for &(m, n) in &cases {
        let bench = Benchmark::mlotz(m, n).unwrap();
        let block = (2 * n / m) as usize;
        let blocks = (m / 2) as usize;
        let mut node = vec![0u32; blocks];
        loop {
            // Build the genotype 1^{v_1} 0^{...} ... and classify each flip.
            let mut genotype = Bitstring::zeros(n as usize);
            for (j, &v) in node.iter().enumerate() {
                for i in 0..v as usize {
                    genotype.set(j * block + i, true);
                }
            }
            let fitness = bench.evaluate(&genotype);
            let mut move_counts: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
            let mut stays = 0u32;
            for flip in 0..n as usize {
                let mut candidate = genotype.clone();
                candidate.flip(flip);
                let cand_fitness = bench.evaluate(&candidate);
                if bench.is_front_fitness(&cand_fitness) {
                    let target: Vec<u32> = (0..blocks).map(|j| cand_fitness[2 * j]).collect();
                    *move_counts.entry(target).or_default() += 1;
                } else {
                    // Off-front candidates must be strictly dominated, so
                    // the walk stays put.
                    if cand_fitness.dominance(&fitness) != Dominance::StrictlyDominatedBy {
                        exact_failures += 1;
                    }
                    stays += 1;
                }
            }
            // The lazy law: every in-range axis neighbour exactly once.
            let mut expected: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
            for (axis, &v) in node.iter().enumerate() {
                for target in [v.checked_sub(1), (v < block as u32).then_some(v + 1)]
                    .into_iter()
                    .flatten()
                {
                    let mut w = node.clone();
                    w[axis] = target;
                    expected.insert(w, 1);
                }
            }
            let expected_moves: u32 = expected.values().sum();
            if move_counts != expected || stays != n - expected_moves {
                exact_failures += 1;
            }
            exact_checked += 1;
            // Next node in the odometer.
            let mut j = blocks;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                if node[j] < block as u32 {
                    node[j] += 1;
                    break;
                }
                node[j] = 0;
            }
            if node.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    report.check(
        exact_failures == 0,
        format!(
            "exact move law at every front genotype, m in {{2,4}}, n <= 12: {exact_checked} genotypes, {exact_failures} mismatches"
        ),
    );

    // Statistical part: mean on-front cover time of PAES-25 against the
    // lazy walk from the matched start node.
    let n = stat_n;
    let bench = Benchmark::lotz(n).unwrap();
    let start_lo = n / 2;
    let paes_times: Vec<u64> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let seed = replicate_seed(base_seed, n as u64, rep);
            let config = RunConfig::new(
                bench,
                MutationOperator::OneBit,
                Archiver::None,
                n as usize + 1,
                seed,
                u64::MAX / 2,
            )
            .unwrap()
            .with_stop(StopRule::BudgetOnly);
            let mut genotype = Bitstring::zeros(n as usize);
            for i in 0..start_lo as usize {
                genotype.set(i, true);
            }
            let mut state = PaesState::init_at(&config, genotype).unwrap();
            let mut visited = vec![false; n as usize + 1];
            let mut remaining = n as usize + 1;
            let mark = |lo: u32, visited: &mut [bool], remaining: &mut usize| {
                if !visited[lo as usize] {
                    visited[lo as usize] = true;
                    *remaining -= 1;
                }
            };
            mark(start_lo, &mut visited, &mut remaining);
            while remaining > 0 {
                state.step();
                mark(state.current_fitness()[0], &mut visited, &mut remaining);
            }
            state.t()
        })
        .collect();
    let lazy_times: Vec<u64> = (0..reps)
        .into_par_iter()
        .map(|rep| {
            let seed = replicate_seed(base_seed ^ 0x5eed_1a2b, n as u64, rep);
            let mut rng = paes_core::RunRng::seed_from_u64(seed);
            let cfg = GridWalkConfig {
                dims: 1,
                axis_nodes: n as usize + 1,
                mode: WalkMode::Lazy { denominator: n as usize },
                start: vec![start_lo as usize],
            };
            cover_time(&cfg, &mut rng)
        })
        .collect();
    let mean = |xs: &[u64]| xs.iter().sum::<u64>() as f64 / xs.len() as f64;
    let paes_mean = mean(&paes_times);
    let lazy_mean = mean(&lazy_times);
    let rel_gap = (paes_mean - lazy_mean).abs() / (0.5 * (paes_mean + lazy_mean));
    report.check(
        rel_gap <= 0.10,
        format!(
            "on-front cover means over {reps} reps at n={n}: paes={paes_mean:.0}, lazy={lazy_mean:.0}, relative gap {:.2}% (tolerance 10%)",
            rel_gap * 100.0
        ),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(hv_formula(10).passed);
        assert!(antichain_bounds().passed);
        assert!(front_oracle(8).passed);
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("no-such-suite", &SuiteParams::default()).is_err());
    }

    #[test]
    fn monotone_w_small() {
        let report = monotone_w(2, 12, 20_000, 2, DEFAULT_BASE_SEED);
        assert!(report.passed, "{:?}", report.lines);
    }
}
