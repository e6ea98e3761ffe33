//! Replicated runs over a list of problem sizes, with deterministic seeds
//! and a fixed CSV row format.
//!
//! CSV columns, in order:
//! `benchmark,m,n,mutation,archiver,archive_size,budget,seed,replicate,
//! iterations_to_first_pareto,iterations_to_full_front,censored,coverage,
//! hv_fraction`
//!
//! Empty cells mean "never happened". Wall time is deliberately not a
//! column: rows are a pure function of the spec and the build.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use paes_core::{paes, MutationOperator, RunConfig, RunRecord, StopRule};
use rayon::prelude::*;

use crate::seeds::replicate_seed;
use crate::spec::{ArchiverKind, BenchmarkKind, BudgetSpec, SizeSpec};

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub benchmark: BenchmarkKind,
    pub m: u32,
    pub ns: Vec<u32>,
    pub replicates: u32,
    pub base_seed: u64,
    pub mutation: MutationOperator,
    pub archiver: ArchiverKind,
    pub archive_size: SizeSpec,
    pub budget: BudgetSpec,
    pub stop: StopRule,
    pub reference: Option<Vec<i64>>,
    pub grid_range: Option<u32>,
    pub bisections: Option<u32>,
    pub output: Option<PathBuf>,
}

impl SweepSpec {
    /// The concrete run configuration of one replicate.
    pub fn run_config(&self, n: u32, replicate: u32) -> Result<RunConfig> {
        let bench = self.benchmark.build(self.m, n)?;
        let capacity = self.archive_size.resolve(&bench);
        let archiver = self.archiver.build(
            &bench,
            capacity,
            self.reference.as_deref(),
            self.grid_range,
            self.bisections,
        )?;
        let budget = self.budget.resolve(&bench, self.mutation);
        let seed = replicate_seed(self.base_seed, n as u64, replicate as u64);
        Ok(
            RunConfig::new(bench, self.mutation, archiver, capacity, seed, budget)?
                .with_stop(self.stop),
        )
    }
}

/// One output row: the record plus its grid coordinates.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub n: u32,
    pub replicate: u32,
    pub record: RunRecord,
}

/// Runs every (n, replicate) pair, fanning replicates out across worker
/// threads. Row order is (n, replicate) regardless of scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let mut jobs = Vec::new();
    for &n in &spec.ns {
        for replicate in 0..spec.replicates {
            jobs.push((n, replicate));
        }
    }
    // Validate configs up front so errors surface before the fan-out.
    for &(n, replicate) in &jobs {
        spec.run_config(n, replicate)?;
    }
    let rows: Vec<SweepRow> = jobs
        .par_iter()
        .map(|&(n, replicate)| {
            let config = spec.run_config(n, replicate).expect("validated above");
            let record = paes::run(&config).expect("validated above");
            SweepRow { n, replicate, record }
        })
        .collect();
    Ok(rows)
}

pub const CSV_HEADER: [&str; 14] = [
    "benchmark",
    "m",
    "n",
    "mutation",
    "archiver",
    "archive_size",
    "budget",
    "seed",
    "replicate",
    "iterations_to_first_pareto",
    "iterations_to_full_front",
    "censored",
    "coverage",
    "hv_fraction",
];

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        let config = &row.record.config;
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        writer.write_record([
            config.benchmark.name().to_string(),
            config.benchmark.m().to_string(),
            row.n.to_string(),
            config.mutation.name().to_string(),
            config.archiver.name().to_string(),
            config.archive_capacity.to_string(),
            config.budget.to_string(),
            config.seed.to_string(),
            row.replicate.to_string(),
            opt(row.record.iterations_to_first_pareto),
            opt(row.record.iterations_to_full_front),
            row.record.censored.to_string(),
            format!("{:.6}", row.record.coverage),
            format!("{:.6}", row.record.hv_fraction),
        ])?;
        writer.flush()?;
    }
    Ok(())
}

pub fn write_csv_file(rows: &[SweepRow], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)
        .with_context(|| format!("creating sweep output {}", path.display()))?;
    write_csv(rows, file)
}

/// A parsed sweep CSV row, as much of it as the fit needs.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub n: u32,
    pub iterations_to_first_pareto: Option<u64>,
    pub iterations_to_full_front: Option<u64>,
    pub censored: bool,
}

pub fn read_csv_file(path: &Path) -> Result<Vec<TableRow>> {
    let mut reader = csv::Reader::from_path(path)
        .with_context(|| format!("opening sweep table {}", path.display()))?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| anyhow!("missing column {name:?} in {}", path.display()))
    };
    let n_col = col("n")?;
    let first_col = col("iterations_to_first_pareto")?;
    let full_col = col("iterations_to_full_front")?;
    let censored_col = col("censored")?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let parse_opt = |s: &str| -> Result<Option<u64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                Ok(Some(s.parse()?))
            }
        };
        rows.push(TableRow {
            n: record[n_col].parse()?,
            iterations_to_first_pareto: parse_opt(&record[first_col])?,
            iterations_to_full_front: parse_opt(&record[full_col])?,
            censored: record[censored_col].parse()?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_spec() -> SweepSpec {
        SweepSpec {
            benchmark: BenchmarkKind::MLotz,
            m: 2,
            ns: vec![6, 8],
            replicates: 3,
            base_seed: 2024,
            mutation: MutationOperator::OneBit,
            archiver: ArchiverKind::Aga,
            archive_size: SizeSpec::NPlusOne,
            budget: BudgetSpec::Default,
            stop: StopRule::FullFront,
            reference: None,
            grid_range: None,
            bisections: None,
            output: None,
        }
    }

    #[test]
    fn sweep_emits_one_row_per_cell() {
        let rows = run_sweep(&tiny_spec()).unwrap();
        assert_eq!(rows.len(), 6);
        let coords: Vec<(u32, u32)> = rows.iter().map(|r| (r.n, r.replicate)).collect();
        assert_eq!(coords, vec![(6, 0), (6, 1), (6, 2), (8, 0), (8, 1), (8, 2)]);
    }

    #[test]
    fn sweep_is_deterministic() {
        let spec = tiny_spec();
        let mut a = Vec::new();
        write_csv(&run_sweep(&spec).unwrap(), &mut a).unwrap();
        let mut b = Vec::new();
        write_csv(&run_sweep(&spec).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn csv_round_trips_through_reader() {
        let dir = std::env::temp_dir().join("paes-sweep-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("rows.csv");
        let rows = run_sweep(&tiny_spec()).unwrap();
        write_csv_file(&rows, &path).unwrap();
        let table = read_csv_file(&path).unwrap();
        assert_eq!(table.len(), rows.len());
        for (row, parsed) in rows.iter().zip(&table) {
            assert_eq!(row.n, parsed.n);
            assert_eq!(row.record.censored, parsed.censored);
            assert_eq!(
                row.record.iterations_to_full_front,
                parsed.iterations_to_full_front
            );
        }
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn cubic_growth_is_visible_between_doubled_sizes() {
        // Mean full-front time should scale by roughly 8 when n doubles.
        let spec = SweepSpec {
            ns: vec![16, 32],
            replicates: 20,
            ..tiny_spec()
        };
        let rows = run_sweep(&spec).unwrap();
        let mean = |n: u32| {
            let values: Vec<u64> = rows
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.record.iterations_to_full_front.unwrap())
                .collect();
            values.iter().sum::<u64>() as f64 / values.len() as f64
        };
        let ratio = mean(32) / mean(16);
        assert!((4.0..16.0).contains(&ratio), "ratio {ratio}");
    }
}
