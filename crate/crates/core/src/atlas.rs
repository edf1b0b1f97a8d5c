//! Batch verification of every orbit at a fixed rank, persisted as JSON Lines.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::blocks::{
    decompose_valid, is_richardson, is_special, is_special_by_blocks, is_special_by_transpose,
};
use crate::duality::{
    dual_pair, pairing_records, springer_dual, springer_dual_inverse, PairingRecord,
};
use crate::error::{Error, Result};
use crate::ff_oracle::{fiber_point_count_with_budget, realize, CountOutcome};
use crate::levi::{is_richardson_via_induction, polarizations, LeviType};
use crate::min_richardson::{
    minimal_richardson_bruteforce, minimal_richardson_with_witnesses, MinimalRichardson,
};
use crate::partition::{
    dominated_by, enumerate_valid, is_very_even, partition_orbit_dim, Family, Partition,
    VeryEvenLabel,
};
use crate::spaltenstein::{
    component_count, descriptor, dimension, e_polynomial, split_index, uv_degree,
};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_RANK_CEILING: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(String),
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail => f.write_str("fail"),
            Verdict::Skipped(r) => write!(f, "skipped: {r}"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleSettings {
    pub primes: Vec<u32>,
    pub budget: u64,
    /// Realizations above this ambient dimension are skipped.
    pub max_dim: u32,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            primes: vec![3, 5],
            budget: crate::ff_oracle::default_budget(),
            max_dim: 9,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, ok: bool, detail: Option<String>) -> Self {
        Check {
            name: name.into(),
            verdict: Verdict::from_bool(ok),
            detail: if ok { None } else { detail },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRecord {
    pub prime: u32,
    pub expected: i64,
    pub outcome: CountOutcome,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct PseudoPolarizationRecord {
    pub richardson: Partition,
    pub levi: LeviType,
    pub split_index: usize,
    pub fiber: serde_json::Value,
    pub invariants: Verdict,
    pub oracle: Vec<OracleRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DualityRecord {
    pub b_orbit: Partition,
    pub c_orbit: Partition,
    pub pairings: Vec<PairingRecord>,
    pub problems: Vec<String>,
    pub seesaw: Verdict,
    pub e_equality: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct AtlasRecord {
    pub schema: u32,
    pub family: Family,
    pub rank: u32,
    pub orbit: Partition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub very_even_labels: Option<Vec<VeryEvenLabel>>,
    pub dim: i64,
    pub special: bool,
    pub richardson: bool,
    pub minimal_richardson: Vec<MinimalRichardson>,
    pub pseudo_polarizations: Vec<PseudoPolarizationRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualityRecord>,
    pub checks: Vec<Check>,
    pub oracle_settings: OracleSettings,
}

impl AtlasRecord {
    /// Every verdict in the record, checks first.
    pub fn verdicts(&self) -> Vec<&Verdict> {
        let mut v: Vec<&Verdict> = self.checks.iter().map(|c| &c.verdict).collect();
        for pp in &self.pseudo_polarizations {
            v.push(&pp.invariants);
            v.extend(pp.oracle.iter().map(|o| &o.verdict));
        }
        if let Some(d) = &self.duality {
            v.push(&d.seesaw);
            v.push(&d.e_equality);
        }
        v
    }

    pub fn failures(&self) -> usize {
        self.verdicts()
            .iter()
            .filter(|v| ***v == Verdict::Fail)
            .count()
    }

    pub fn passes(&self) -> usize {
        self.verdicts()
            .iter()
            .filter(|v| ***v == Verdict::Pass)
            .count()
    }

    pub fn skips(&self) -> usize {
        self.verdicts()
            .iter()
            .filter(|v| matches!(***v, Verdict::Skipped(_)))
            .count()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// All checks for one orbit.
pub fn atlas_record(p: &Partition, f: Family, oracle: &OracleSettings) -> Result<AtlasRecord> {
    let rank = f.rank_of_dimension(p.size());
    let mut checks = Vec::new();
    let special = is_special(p, f)?;
    checks.push(Check::new(
        "special_criteria_agree",
        is_special_by_transpose(p, f) == is_special_by_blocks(&decompose_valid(p, f)),
        None,
    ));
    let richardson = is_richardson(p, f)?;
    let via_induction = is_richardson_via_induction(p, f);
    checks.push(Check::new(
        "richardson_vs_induction",
        richardson == via_induction,
        Some(format!(
            "blocks say {richardson}, induction says {via_induction}"
        )),
    ));

    let minr = minimal_richardson_with_witnesses(p, f)?;
    let mut constructed: Vec<Partition> = minr.iter().map(|m| m.orbit.clone()).collect();
    constructed.sort_unstable_by(|a, b| b.cmp(a));
    let brute = minimal_richardson_bruteforce(p, f)?;
    checks.push(Check::new(
        "min_richardson_vs_bruteforce",
        constructed == brute,
        Some(format!("constructed {constructed:?}, enumerated {brute:?}")),
    ));
    let incomparable = constructed.iter().enumerate().all(|(i, a)| {
        constructed
            .iter()
            .skip(i + 1)
            .all(|b| !dominated_by(a, b) && !dominated_by(b, a))
    });
    let above = constructed
        .iter()
        .all(|r| dominated_by(p, r) && is_special(r, f).unwrap_or(false));
    checks.push(Check::new(
        "min_richardson_incomparable_special_above",
        incomparable && above,
        None,
    ));
    let fixed = (constructed == vec![p.clone()]) == richardson;
    checks.push(Check::new("min_richardson_fixed_point", fixed, None));

    let dim_p = partition_orbit_dim(p, f);
    let mut pps = Vec::new();
    for m in &minr {
        let r = &m.orbit;
        let dim_r = partition_orbit_dim(r, f);
        for l in polarizations(r, f)? {
            let d = descriptor(p, f, r, &l)?;
            let e = e_polynomial(&d)?;
            let dim = dimension(&d)?;
            let comps = component_count(&d);
            let inv_ok = d.steps().all(|s| s.is_maximal())
                && uv_degree(&e) == 2 * dim as usize
                && e.div_exact(comps as i64).is_some()
                && e.has_nonnegative_coeffs()
                && 2 * dim as i64 <= dim_r - dim_p;
            let mut oracle_records = Vec::new();
            for &prime in &oracle.primes {
                let expected = e.eval(prime as i64);
                let (outcome, verdict) = if p.size() > oracle.max_dim {
                    let reason = "dimension".to_string();
                    (
                        CountOutcome::Skipped {
                            reason: reason.clone(),
                        },
                        Verdict::Skipped(reason),
                    )
                } else {
                    let real = realize(p, f, prime)?;
                    let c = fiber_point_count_with_budget(&real, &l, oracle.budget)?;
                    let v = match c.count() {
                        Some(n) => Verdict::from_bool(n as i64 == expected),
                        None => Verdict::Skipped("budget".into()),
                    };
                    (c.outcome, v)
                };
                oracle_records.push(OracleRecord {
                    prime,
                    expected,
                    outcome,
                    verdict,
                });
            }
            pps.push(PseudoPolarizationRecord {
                richardson: r.clone(),
                levi: l.clone(),
                split_index: split_index(&l),
                fiber: d.to_json()?,
                invariants: Verdict::from_bool(inv_ok),
                oracle: oracle_records,
            });
        }
    }

    let duality = if special && f != Family::D {
        let b = match f {
            Family::B => p.clone(),
            _ => springer_dual_inverse(p)?,
        };
        let c = springer_dual(&b)?;
        checks.push(Check::new(
            "springer_round_trip",
            springer_dual_inverse(&c)? == b,
            None,
        ));
        checks.push(Check::new(
            "springer_dimension",
            partition_orbit_dim(&b, Family::B) == partition_orbit_dim(&c, Family::C),
            None,
        ));
        let dp = dual_pair(&b)?;
        let pairings = pairing_records(&dp)?;
        let consistent = dp.is_consistent();
        Some(DualityRecord {
            seesaw: Verdict::from_bool(consistent && pairings.iter().all(|r| r.seesaw)),
            e_equality: Verdict::from_bool(consistent && pairings.iter().all(|r| r.e_equal)),
            b_orbit: dp.b_orbit,
            c_orbit: dp.c_orbit,
            pairings,
            problems: dp.problems,
        })
    } else {
        None
    };

    Ok(AtlasRecord {
        schema: SCHEMA,
        family: f,
        rank,
        orbit: p.clone(),
        very_even_labels: is_very_even(p, f).then(|| vec![VeryEvenLabel::I, VeryEvenLabel::II]),
        dim: dim_p,
        special,
        richardson,
        minimal_richardson: minr,
        pseudo_polarizations: pps,
        duality,
        checks,
        oracle_settings: oracle.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasSummary {
    pub schema: u32,
    pub family: Family,
    pub rank: u32,
    pub orbits: usize,
    pub richardson: usize,
    pub special: usize,
    pub pseudo_polarizations: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Special dual pairs whose seesaw identity held.
    pub seesaw_pairs: usize,
    /// Orbits carrying at least one failing verdict.
    pub failing_orbits: Vec<Partition>,
}

impl AtlasSummary {
    pub fn is_clean(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for AtlasSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {} rank {}", self.family, self.rank)?;
        writeln!(f, "  orbits                {:>6}", self.orbits)?;
        writeln!(f, "  richardson            {:>6}", self.richardson)?;
        writeln!(f, "  special               {:>6}", self.special)?;
        writeln!(
            f,
            "  pseudo-polarizations  {:>6}",
            self.pseudo_polarizations
        )?;
        writeln!(f, "  checks passed         {:>6}", self.passed)?;
        writeln!(f, "  checks failed         {:>6}", self.failed)?;
        writeln!(f, "  seesaw dual pairs     {:>6}", self.seesaw_pairs)?;
        write!(f, "  oracle skips          {:>6}", self.skipped)?;
        for o in &self.failing_orbits {
            write!(f, "\n  FAIL {o}")?;
        }
        Ok(())
    }
}

pub fn ambient_dim(f: Family, rank: u32) -> u32 {
    f.dimension_at_rank(rank)
}

/// Records for every orbit at `rank`, in enumeration order.
pub fn build_atlas(
    f: Family,
    rank: u32,
    ceiling: u32,
    oracle: &OracleSettings,
) -> Result<Vec<AtlasRecord>> {
    if rank > ceiling {
        return Err(Error::Parse(format!(
            "rank {rank} is above the ceiling {ceiling}"
        )));
    }
    let orbits = enumerate_valid(f.dimension_at_rank(rank), f)?;
    orbits
        .par_iter()
        .map(|p| atlas_record(p, f, oracle))
        .collect()
}

pub fn summarize(f: Family, rank: u32, records: &[AtlasRecord]) -> AtlasSummary {
    AtlasSummary {
        schema: SCHEMA,
        family: f,
        rank,
        orbits: records.len(),
        richardson: records.iter().filter(|r| r.richardson).count(),
        special: records.iter().filter(|r| r.special).count(),
        pseudo_polarizations: records.iter().map(|r| r.pseudo_polarizations.len()).sum(),
        passed: records.iter().map(|r| r.passes()).sum(),
        failed: records.iter().map(|r| r.failures()).sum(),
        skipped: records.iter().map(|r| r.skips()).sum(),
        seesaw_pairs: records
            .iter()
            .filter_map(|r| r.duality.as_ref())
            .filter(|d| d.seesaw == Verdict::Pass)
            .count(),
        failing_orbits: records
            .iter()
            .filter(|r| r.failures() > 0)
            .map(|r| r.orbit.clone())
            .collect(),
    }
}

pub fn jsonl_name(f: Family, rank: u32) -> String {
    format!("atlas-{f}{rank}.jsonl")
}

pub fn csv_name(f: Family, rank: u32) -> String {
    format!("atlas-{f}{rank}.csv")
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

/// Writes the JSONL file and the CSV summary; returns their paths.
pub fn write_atlas(
    dir: &Path,
    f: Family,
    rank: u32,
    records: &[AtlasRecord],
) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let jp = dir.join(jsonl_name(f, rank));
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_json_line());
        out.push('\n');
    }
    fs::write(&jp, out).map_err(|e| io_err(&jp, e))?;

    let cp = dir.join(csv_name(f, rank));
    let mut file = fs::File::create(&cp).map_err(|e| io_err(&cp, e))?;
    let mut csv = String::from(
        "schema,family,rank,orbit,dim,special,richardson,min_richardson,pseudo_polarizations,passed,failed,skipped\n",
    );
    for r in records {
        let minr: Vec<String> = r
            .minimal_richardson
            .iter()
            .map(|m| m.orbit.literal())
            .collect();
        csv.push_str(&format!(
            "{},{},{},\"{}\",{},{},{},\"{}\",{},{},{},{}\n",
            SCHEMA,
            f,
            rank,
            r.orbit.literal(),
            r.dim,
            r.special,
            r.richardson,
            minr.join(" "),
            r.pseudo_polarizations.len(),
            r.passes(),
            r.failures(),
            r.skips()
        ));
    }
    file.write_all(csv.as_bytes()).map_err(|e| io_err(&cp, e))?;
    Ok((jp, cp))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReverifyReport {
    pub records: usize,
    /// 1-based line numbers whose recomputation differs.
    pub mismatched_lines: Vec<usize>,
    pub failed_records: usize,
}

impl ReverifyReport {
    pub fn is_clean(&self) -> bool {
        self.mismatched_lines.is_empty() && self.failed_records == 0
    }
}

/// Recomputes every record of an atlas file from its orbit and settings and
/// compares the result line by line.
pub fn reverify(path: &Path) -> Result<ReverifyReport> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut report = ReverifyReport {
        records: 0,
        mismatched_lines: Vec::new(),
        failed_records: 0,
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value =
            serde_json::from_str(line).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        let field = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::Parse(format!("line {}: missing {k}", i + 1)))
        };
        if field("schema")?.as_u64() != Some(SCHEMA as u64) {
            return Err(Error::Parse(format!("line {}: unsupported schema", i + 1)));
        }
        let fam: Family = field("family")?
            .as_str()
            .ok_or_else(|| Error::Parse("family is not a string".into()))?
            .parse()?;
        let parts: Vec<u32> = serde_json::from_value(field("orbit")?.clone())
            .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        let settings = field("oracle_settings")?;
        let oracle = OracleSettings {
            primes: serde_json::from_value(settings["primes"].clone())
                .map_err(|e| Error::Parse(e.to_string()))?,
            budget: settings["budget"]
                .as_u64()
                .unwrap_or_else(crate::ff_oracle::default_budget),
            max_dim: settings["max_dim"].as_u64().unwrap_or(9) as u32,
        };
        let rec = atlas_record(&Partition::new(parts)?, fam, &oracle)?;
        report.records += 1;
        if rec.failures() > 0 {
            report.failed_records += 1;
        }
        if rec.to_json_line() != line.trim_end() {
            report.mismatched_lines.push(i + 1);
        }
    }
    Ok(report)
}
