//! Slower cross-checks that back the verification suites but are not part
//! of the numbered acceptance criteria.

use paes_core::{Archiver, Benchmark, MutationOperator, PaesState, RunConfig, StopRule};
use paes_harness::verify;

#[test]
fn front_oracle_matches_exhaustive_up_to_n14() {
    let report = verify::front_oracle(14);
    for line in &report.lines {
        println!("{line}");
    }
    assert!(report.passed, "{:#?}", report.lines);
}

#[test]
fn coverage_is_monotone_with_room_for_the_front() {
    // One-bit m-LOTZ with capacity at least the front size: front points,
    // once archived, are only ever replaced by equal-fitness candidates.
    for (m, n) in [(2u32, 12u32), (4, 8)] {
        let bench = Benchmark::mlotz(m, n).unwrap();
        let config = RunConfig::new(
            bench,
            MutationOperator::OneBit,
            Archiver::None,
            bench.front_size() as usize,
            verify::DEFAULT_BASE_SEED,
            200_000,
        )
        .unwrap()
        .with_stop(StopRule::BudgetOnly);
        let mut state = PaesState::init(&config).unwrap();
        let mut coverage = state.coverage();
        for _ in 0..100_000 {
            state.step();
            let now = state.coverage();
            assert!(now >= coverage, "coverage regressed at t={}", state.t());
            coverage = now;
        }
    }
}

#[test]
fn hva_spread_hits_the_target_configuration_en_route() {
    // Small version of the spread run: every seed must pass through the
    // exact d = L + ceil(L/2) - 2 configuration with ceil(L/2) - 1
    // non-adjacent holes, whatever the terminal state looks like.
    let report = verify::hva_spread(30, 12, 5, None, verify::DEFAULT_BASE_SEED);
    for line in &report.lines {
        println!("{line}");
        if line.contains("seed=") {
            assert!(
                line.contains("first hit t=") && line.contains("(holes=5, adjacent=false)"),
                "hitting configuration missing: {line}"
            );
        }
    }
}
