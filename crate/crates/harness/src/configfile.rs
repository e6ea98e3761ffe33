//! Flat key=value sweep configs.
//!
//! One `key = value` pair per line; `#` starts a comment; lists are
//! comma-separated. Recognized keys:
//!
//! ```text
//! benchmark    mlotz | omm | cocz            (required)
//! m            objective count               (default 2)
//! n            comma-separated list          (required)
//! replicates   runs per n                    (required)
//! base_seed    u64                           (required)
//! mutation     one-bit | standard-bit        (required)
//! archiver     aga | hva | mga | none        (required)
//! archive_size integer | n+1 | front         (required)
//! budget       integer | default             (default: default)
//! stop         full-front | budget | coverage:F   (default full-front)
//! reference    comma-separated integers <= 0 (HVA only; default -1,...)
//! grid_range   integer >= f_max              (AGA only; default f_max)
//! bisections   integer >= 1                  (AGA only; default from size)
//! output       path for the CSV              (optional)
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use paes_core::StopRule;

use crate::spec::{parse_mutation, parse_reference, parse_stop, ArchiverKind, BenchmarkKind, BudgetSpec, SizeSpec};
use crate::sweep::SweepSpec;

pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {}: expected key = value, got {raw:?}", line_no + 1))?;
        let key = key.trim().to_string();
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            bail!("line {}: duplicate key {key:?}", line_no + 1);
        }
    }
    Ok(map)
}

pub fn sweep_spec_from_text(text: &str) -> Result<SweepSpec> {
    let map = parse_kv(text)?;
    let get = |key: &str| -> Result<&String> {
        map.get(key).ok_or_else(|| anyhow!("missing required key {key:?}"))
    };
    let known = [
        "benchmark", "m", "n", "replicates", "base_seed", "mutation", "archiver",
        "archive_size", "budget", "stop", "reference", "grid_range", "bisections", "output",
    ];
    for key in map.keys() {
        if !known.contains(&key.as_str()) {
            bail!("unknown key {key:?}");
        }
    }
    let ns: Vec<u32> = get("n")?
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .with_context(|| format!("bad n value {part:?}"))
        })
        .collect::<Result<_>>()?;
    if ns.is_empty() {
        bail!("n list must not be empty");
    }
    Ok(SweepSpec {
        benchmark: BenchmarkKind::parse(get("benchmark")?)?,
        m: map.get("m").map(|s| s.parse()).transpose()?.unwrap_or(2),
        ns,
        replicates: get("replicates")?.parse().context("bad replicates")?,
        base_seed: get("base_seed")?.parse().context("bad base_seed")?,
        mutation: parse_mutation(get("mutation")?)?,
        archiver: ArchiverKind::parse(get("archiver")?)?,
        archive_size: SizeSpec::parse(get("archive_size")?)?,
        budget: map
            .get("budget")
            .map(|s| BudgetSpec::parse(s))
            .transpose()?
            .unwrap_or(BudgetSpec::Default),
        stop: map
            .get("stop")
            .map(|s| parse_stop(s))
            .transpose()?
            .unwrap_or(StopRule::FullFront),
        reference: map.get("reference").map(|s| parse_reference(s)).transpose()?,
        grid_range: map.get("grid_range").map(|s| s.parse()).transpose()?,
        bisections: map.get("bisections").map(|s| s.parse()).transpose()?,
        output: map.get("output").map(PathBuf::from),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use paes_core::MutationOperator;

    const SAMPLE: &str = "\
# bi-objective sweep
benchmark = mlotz
m = 2
n = 32, 48, 64
replicates = 50
base_seed = 20250810
mutation = one-bit
archiver = aga
archive_size = n+1
budget = default
stop = full-front
output = out.csv
";

    #[test]
    fn parses_a_full_spec() {
        let spec = sweep_spec_from_text(SAMPLE).unwrap();
        assert_eq!(spec.ns, vec![32, 48, 64]);
        assert_eq!(spec.replicates, 50);
        assert_eq!(spec.mutation, MutationOperator::OneBit);
        assert_eq!(spec.archive_size, SizeSpec::NPlusOne);
        assert_eq!(spec.output, Some(PathBuf::from("out.csv")));
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        assert!(sweep_spec_from_text("benchmark = mlotz\nwat = 1").is_err());
        assert!(parse_kv("a = 1\na = 2").is_err());
    }

    #[test]
    fn missing_required_key_is_an_error() {
        let err = sweep_spec_from_text("benchmark = mlotz").unwrap_err();
        assert!(err.to_string().contains("missing required key"));
    }
}
