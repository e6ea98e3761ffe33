//! Textual run descriptions shared by the CLI and sweep configs, and their
//! resolution into concrete `paes-core` configurations.

use anyhow::{anyhow, bail, Result};
use paes_core::{AgaParams, Archiver, Benchmark, MutationOperator, ReferencePoint, StopRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchmarkKind {
    MLotz,
    Omm,
    Cocz,
}

impl BenchmarkKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "mlotz" | "lotz" => Ok(BenchmarkKind::MLotz),
            "omm" => Ok(BenchmarkKind::Omm),
            "cocz" => Ok(BenchmarkKind::Cocz),
            other => bail!("unknown benchmark {other:?}, expected mlotz | omm | cocz"),
        }
    }

    pub fn build(&self, m: u32, n: u32) -> Result<Benchmark> {
        let bench = match self {
            BenchmarkKind::MLotz => Benchmark::mlotz(m, n)?,
            BenchmarkKind::Omm => {
                if m != 2 {
                    bail!("omm is bi-objective, got m={m}");
                }
                Benchmark::omm(n)?
            }
            BenchmarkKind::Cocz => {
                if m != 2 {
                    bail!("cocz is bi-objective, got m={m}");
                }
                Benchmark::cocz(n)?
            }
        };
        Ok(bench)
    }
}

pub fn parse_mutation(s: &str) -> Result<MutationOperator> {
    match s {
        "one-bit" => Ok(MutationOperator::OneBit),
        "standard-bit" => Ok(MutationOperator::StandardBit),
        other => bail!("unknown mutation {other:?}, expected one-bit | standard-bit"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArchiverKind {
    Aga,
    Hva,
    Mga,
    None,
}

impl ArchiverKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "aga" => Ok(ArchiverKind::Aga),
            "hva" => Ok(ArchiverKind::Hva),
            "mga" => Ok(ArchiverKind::Mga),
            "none" => Ok(ArchiverKind::None),
            other => bail!("unknown archiver {other:?}, expected aga | hva | mga | none"),
        }
    }

    /// Resolve to a concrete archiver for one benchmark and capacity.
    /// `reference` overrides the HVA default of (-1, ..., -1); `grid_range`
    /// and `bisections` override the AGA defaults.
    pub fn build(
        &self,
        bench: &Benchmark,
        capacity: usize,
        reference: Option<&[i64]>,
        grid_range: Option<u32>,
        bisections: Option<u32>,
    ) -> Result<Archiver> {
        Ok(match self {
            ArchiverKind::Aga => {
                let defaults = AgaParams::defaults(bench.f_max(), capacity, bench.m());
                Archiver::Aga(AgaParams::new(
                    grid_range.unwrap_or(defaults.grid_range),
                    bisections.unwrap_or(defaults.bisections),
                    bench.f_max(),
                )?)
            }
            ArchiverKind::Hva => {
                let h = match reference {
                    Some(values) => ReferencePoint::new(values.iter().copied())?,
                    None => ReferencePoint::minus_ones(bench.m() as usize),
                };
                Archiver::Hva(h)
            }
            ArchiverKind::Mga => Archiver::Mga,
            ArchiverKind::None => Archiver::None,
        })
    }
}

/// Archive size in a sweep, possibly depending on `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SizeSpec {
    Fixed(usize),
    /// `n + 1`, the bi-objective front size.
    NPlusOne,
    /// The benchmark's Pareto-front size at that `n`.
    FrontSize,
}

impl SizeSpec {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "n+1" => Ok(SizeSpec::NPlusOne),
            "front" => Ok(SizeSpec::FrontSize),
            other => Ok(SizeSpec::Fixed(other.parse().map_err(|_| {
                anyhow!("archive_size must be an integer, n+1, or front; got {other:?}")
            })?)),
        }
    }

    pub fn resolve(&self, bench: &Benchmark) -> usize {
        match self {
            SizeSpec::Fixed(l) => *l,
            SizeSpec::NPlusOne => bench.n() as usize + 1,
            SizeSpec::FrontSize => bench.front_size() as usize,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetSpec {
    Fixed(u64),
    /// Mutation- and benchmark-dependent default, see [`default_budget`].
    Default,
}

impl BudgetSpec {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(BudgetSpec::Default),
            other => Ok(BudgetSpec::Fixed(other.parse().map_err(|_| {
                anyhow!("budget must be an integer or default; got {other:?}")
            })?)),
        }
    }

    pub fn resolve(&self, bench: &Benchmark, mutation: MutationOperator) -> u64 {
        match self {
            BudgetSpec::Fixed(b) => *b,
            BudgetSpec::Default => default_budget(bench, mutation),
        }
    }
}

/// Default iteration budgets: 50 n^3 for bi-objective one-bit m-LOTZ,
/// 50 n^3 ln^2 n for m = 4, fifty times the grid cover model for m >= 6,
/// 20 n^4 for standard-bit m-LOTZ, and a flat 10^6 for OMM and COCZ.
pub fn default_budget(bench: &Benchmark, mutation: MutationOperator) -> u64 {
    let n = bench.n() as f64;
    match bench {
        Benchmark::MLotz { m, .. } => match mutation {
            MutationOperator::OneBit => {
                let budget = match m {
                    2 => 50.0 * n.powi(3),
                    4 => 50.0 * n.powi(3) * n.ln() * n.ln(),
                    m => {
                        let k = (*m / 2) as i32;
                        50.0 * n * (2.0 * n / *m as f64).powi(k) * (n / *m as f64).ln().max(1.0)
                    }
                };
                budget.ceil() as u64
            }
            MutationOperator::StandardBit => (20.0 * n.powi(4)).ceil() as u64,
        },
        Benchmark::Omm { .. } | Benchmark::Cocz { .. } => 1_000_000,
    }
}

pub fn parse_stop(s: &str) -> Result<StopRule> {
    if s == "full-front" {
        return Ok(StopRule::FullFront);
    }
    if s == "budget" {
        return Ok(StopRule::BudgetOnly);
    }
    if let Some(rest) = s.strip_prefix("coverage:") {
        let fraction: f64 = rest
            .parse()
            .map_err(|_| anyhow!("bad coverage fraction {rest:?}"))?;
        if !(0.0..=1.0).contains(&fraction) {
            bail!("coverage fraction must lie in [0,1], got {fraction}");
        }
        return Ok(StopRule::Coverage(fraction));
    }
    bail!("unknown stop rule {s:?}, expected full-front | budget | coverage:F")
}

pub fn parse_reference(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| anyhow!("bad reference component {part:?}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_and_budget_specs_parse() {
        assert_eq!(SizeSpec::parse("n+1").unwrap(), SizeSpec::NPlusOne);
        assert_eq!(SizeSpec::parse("front").unwrap(), SizeSpec::FrontSize);
        assert_eq!(SizeSpec::parse("17").unwrap(), SizeSpec::Fixed(17));
        assert!(SizeSpec::parse("seven").is_err());
        assert_eq!(BudgetSpec::parse("default").unwrap(), BudgetSpec::Default);
        assert_eq!(BudgetSpec::parse("1000").unwrap(), BudgetSpec::Fixed(1000));
    }

    #[test]
    fn default_budgets_match_formulas() {
        let lotz = Benchmark::lotz(32).unwrap();
        assert_eq!(default_budget(&lotz, MutationOperator::OneBit), 50 * 32u64.pow(3));
        assert_eq!(default_budget(&lotz, MutationOperator::StandardBit), 20 * 32u64.pow(4));
        let omm = Benchmark::omm(200).unwrap();
        assert_eq!(default_budget(&omm, MutationOperator::OneBit), 1_000_000);
        let m4 = Benchmark::mlotz(4, 16).unwrap();
        let expected = (50.0 * 4096.0 * 16f64.ln().powi(2)).ceil() as u64;
        assert_eq!(default_budget(&m4, MutationOperator::OneBit), expected);
    }

    #[test]
    fn stop_rules_parse() {
        assert_eq!(parse_stop("full-front").unwrap(), StopRule::FullFront);
        assert_eq!(parse_stop("budget").unwrap(), StopRule::BudgetOnly);
        assert_eq!(parse_stop("coverage:0.5").unwrap(), StopRule::Coverage(0.5));
        assert!(parse_stop("coverage:1.5").is_err());
        assert!(parse_stop("sometimes").is_err());
    }
}
