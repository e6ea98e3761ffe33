//! Line-delimited JSON trace of a run, one record per iteration.

use std::io::Write;

use anyhow::Result;
use paes_core::{hypervolume, PaesState, ReferencePoint, StepOutcome};
use serde::Serialize;

/// One trace line. `w` is the sum of the current solution's objectives,
/// which on m-LOTZ is the blockwise LO+TZ potential; `hv` uses the
/// reference point (-1, ..., -1).
#[derive(Serialize)]
pub struct TraceRecord {
    pub t: u64,
    pub event: &'static str,
    pub candidate_fitness: Vec<u32>,
    pub archive_size: usize,
    pub w: u64,
    pub coverage: f64,
    pub hv: u64,
}

impl TraceRecord {
    pub fn capture(state: &PaesState, outcome: &StepOutcome) -> Self {
        let h = ReferencePoint::minus_ones(state.benchmark().m() as usize);
        let hv = hypervolume(&state.archive().fitness_values(), &h).expect("matching m");
        TraceRecord {
            t: state.t(),
            event: outcome.event.name(),
            candidate_fitness: outcome.candidate_fitness.values().to_vec(),
            archive_size: state.archive().len(),
            w: state.potential(),
            coverage: state.coverage(),
            hv,
        }
    }

    pub fn write_line<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer(&mut out, self)?;
        out.write_all(b"\n")?;
        Ok(())
    }
}
