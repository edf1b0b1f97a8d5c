use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::bail;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nilorbit::atlas::{
    build_atlas, reverify, summarize, write_atlas, OracleSettings, DEFAULT_RANK_CEILING, SCHEMA,
};
use nilorbit::ff_oracle::default_budget;
use nilorbit::{
    collapse, component_count, decompose, descriptor, dimension, dual_pair, e_polynomial,
    epoly_equality_check, fiber_point_count_with_budget, is_richardson,
    is_richardson_via_induction, is_special, is_valid, minimal_richardson_with_witnesses,
    polarizations, pseudo_polarizations, realize, seesaw_check, springer_dual,
    springer_dual_inverse, Family, LeviType, Partition,
};

#[derive(Parser)]
#[command(
    name = "nilorbit",
    version,
    about = "Nilpotent orbits of types B, C and D"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// B, C or D
    #[arg(long)]
    family: Family,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct Oracle {
    /// Comma-separated odd primes for finite-field point counts
    #[arg(long, value_delimiter = ',')]
    oracle_primes: Option<Vec<u32>>,
    /// Node cap per count (defaults to NILORBIT_ORACLE_BUDGET or a built-in value)
    #[arg(long)]
    oracle_budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a partition labels an orbit of the family
    Validate {
        #[command(flatten)]
        common: Common,
        partition: Partition,
    },
    /// Largest valid partition dominated by the input
    Collapse {
        #[command(flatten)]
        common: Common,
        partition: Partition,
    },
    /// Block decomposition
    Blocks {
        #[command(flatten)]
        common: Common,
        partition: Partition,
    },
    Special {
        #[command(flatten)]
        common: Common,
        partition: Partition,
    },
    Richardson {
        #[command(flatten)]
        common: Common,
        partition: Partition,
    },
    /// Minimal Richardson orbits with their originating block and witness
    MinRichardson {
        #[command(flatten)]
        common: Common,
        partition: Partition,
    },
    /// Flag types inducing a Richardson orbit
    Polarizations {
        #[command(flatten)]
        common: Common,
        partition: Partition,
    },
    /// Spaltenstein fiber descriptors over every pseudo-polarization
    Fiber {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        oracle: Oracle,
        partition: Partition,
        /// Restrict to one flag type, e.g. "2,5;7"
        #[arg(long)]
        levi: Option<String>,
    },
    /// Springer dual (B to C; C inputs are mapped back to B)
    Dual {
        #[command(flatten)]
        common: Common,
        partition: Partition,
    },
    /// Seesaw and E-polynomial identities for a special orbit and its dual
    Seesaw {
        #[command(flatten)]
        common: Common,
        partition: Partition,
    },
    /// Verify every orbit at a rank and write atlas-<family><rank>.jsonl plus a CSV summary
    Atlas {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        oracle: Oracle,
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value_t = DEFAULT_RANK_CEILING)]
        ceiling: u32,
        /// Skip finite-field counts above this ambient dimension
        #[arg(long, default_value_t = 9)]
        oracle_max_dim: u32,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Re-verify an existing atlas file instead of building one
        #[arg(long)]
        verify: Option<PathBuf>,
    },
}

fn require_valid(p: &Partition, f: Family) -> anyhow::Result<()> {
    if !is_valid(p, f) {
        bail!(nilorbit::Error::InvalidPartition {
            partition: p.clone(),
            family: f,
        });
    }
    Ok(())
}

fn print(json: bool, v: Value, human: impl FnOnce() -> String) {
    if json {
        println!("{v}");
    } else {
        println!("{}", human());
    }
}

/// `Ok(true)` when every verification passed.
fn run(cmd: Command) -> anyhow::Result<bool> {
    match cmd {
        Command::Validate {
            common,
            partition: p,
        } => {
            let ok = is_valid(&p, common.family);
            print(
                common.json,
                json!({"schema": SCHEMA, "partition": p, "family": common.family, "valid": ok}),
                || format!("{} {}", p.literal(), if ok { "valid" } else { "invalid" }),
            );
            Ok(ok)
        }
        Command::Collapse {
            common,
            partition: p,
        } => {
            let c = collapse(&p, common.family)?;
            print(
                common.json,
                json!({"schema": SCHEMA, "input": p, "collapse": c}),
                || c.literal(),
            );
            Ok(true)
        }
        Command::Blocks {
            common,
            partition: p,
        } => {
            let d = decompose(&p, common.family)?;
            print(
                common.json,
                json!({"schema": SCHEMA, "partition": p, "blocks": d.blocks(), "rendered": d.to_string()}),
                || d.to_string(),
            );
            Ok(true)
        }
        Command::Special {
            common,
            partition: p,
        } => {
            let s = is_special(&p, common.family)?;
            print(
                common.json,
                json!({"schema": SCHEMA, "partition": p, "special": s}),
                || s.to_string(),
            );
            Ok(true)
        }
        Command::Richardson {
            common,
            partition: p,
        } => {
            let f = common.family;
            let r = is_richardson(&p, f)?;
            let oracle = is_richardson_via_induction(&p, f);
            print(
                common.json,
                json!({"schema": SCHEMA, "partition": p, "richardson": r, "via_induction": oracle}),
                || r.to_string(),
            );
            if r != oracle {
                eprintln!("block criterion and induction disagree on {p}");
            }
            Ok(r == oracle)
        }
        Command::MinRichardson {
            common,
            partition: p,
        } => {
            let ms = minimal_richardson_with_witnesses(&p, common.family)?;
            print(
                common.json,
                json!({"schema": SCHEMA, "partition": p, "minimal_richardson": ms}),
                || {
                    ms.iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
            Ok(true)
        }
        Command::Polarizations {
            common,
            partition: p,
        } => {
            require_valid(&p, common.family)?;
            let ls = polarizations(&p, common.family)?;
            print(
                common.json,
                json!({"schema": SCHEMA, "partition": p, "polarizations": ls}),
                || {
                    ls.iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
            Ok(true)
        }
        Command::Fiber {
            common,
            oracle,
            partition: p,
            levi,
        } => fiber(common, oracle, p, levi),
        Command::Dual {
            common,
            partition: p,
        } => {
            let (b, c) = match common.family {
                Family::B => {
                    let c = springer_dual(&p)?;
                    (p, c)
                }
                Family::C => (springer_dual_inverse(&p)?, p),
                Family::D => bail!(nilorbit::Error::WrongFamily {
                    expected: "B or C",
                    found: Family::D
                }),
            };
            let image = if common.family == Family::B { &c } else { &b };
            print(
                common.json,
                json!({"schema": SCHEMA, "b_orbit": b, "c_orbit": c}),
                || image.literal(),
            );
            Ok(true)
        }
        Command::Seesaw {
            common,
            partition: p,
        } => seesaw(common, p),
        Command::Atlas {
            common,
            oracle,
            rank,
            ceiling,
            oracle_max_dim,
            out,
            verify,
        } => {
            if let Some(path) = verify {
                let rep = reverify(&path)?;
                print(common.json, json!(rep), || {
                    format!(
                        "{} records re-verified, {} mismatched, {} failing",
                        rep.records,
                        rep.mismatched_lines.len(),
                        rep.failed_records
                    )
                });
                return Ok(rep.is_clean());
            }
            let settings = OracleSettings {
                primes: oracle.oracle_primes.unwrap_or_else(|| vec![3, 5]),
                budget: oracle.oracle_budget.unwrap_or_else(default_budget),
                max_dim: oracle_max_dim,
            };
            for &m in &settings.primes {
                nilorbit::field::PrimeField::new(m)?;
            }
            let f = common.family;
            let recs = build_atlas(f, rank, ceiling, &settings)?;
            let (jp, cp) = write_atlas(&out, f, rank, &recs)?;
            let s = summarize(f, rank, &recs);
            print(common.json, json!(s), || {
                format!("{s}\n  wrote {} and {}", jp.display(), cp.display())
            });
            Ok(s.is_clean())
        }
    }
}

fn fiber(
    common: Common,
    oracle: Oracle,
    p: Partition,
    levi: Option<String>,
) -> anyhow::Result<bool> {
    let f = common.family;
    let mut pairs = pseudo_polarizations(&p, f)?;
    if let Some(text) = levi {
        let l = LeviType::parse(&text, f)?;
        pairs.retain(|(_, x)| *x == l);
        if pairs.is_empty() {
            bail!("{l} is not a pseudo-polarization of {p}");
        }
    }
    let budget = oracle.oracle_budget.unwrap_or_else(default_budget);
    let primes = oracle.oracle_primes.unwrap_or_default();
    let mut all_ok = true;
    let mut out = Vec::new();
    let mut lines = Vec::new();
    for (r, l) in pairs {
        let d = descriptor(&p, f, &r, &l)?;
        let e = e_polynomial(&d)?;
        let mut counts = Vec::new();
        for &m in &primes {
            let real = realize(&p, f, m)?;
            let c = fiber_point_count_with_budget(&real, &l, budget)?;
            let expected = e.eval(m as i64);
            let verdict = match c.count() {
                Some(n) if n as i64 == expected => "pass".to_string(),
                Some(_) => {
                    all_ok = false;
                    "fail".to_string()
                }
                None => "skipped: budget".to_string(),
            };
            counts.push(
                json!({"prime": m, "expected": expected, "outcome": c.outcome, "verdict": verdict}),
            );
        }
        lines.push(format!(
            "{} {}: {}  dim={} components={} E={}{}",
            r,
            l,
            d,
            dimension(&d)?,
            component_count(&d),
            e,
            counts
                .iter()
                .map(|c| format!(
                    "  F_{}: {}",
                    c["prime"],
                    c["verdict"].as_str().unwrap_or("")
                ))
                .collect::<String>()
        ));
        out.push(json!({
            "richardson": r,
            "levi": l,
            "fiber": d.to_json()?,
            "oracle": counts,
        }));
    }
    print(
        common.json,
        json!({"schema": SCHEMA, "partition": p, "family": f, "fibers": out}),
        || lines.join("\n"),
    );
    Ok(all_ok)
}

fn seesaw(common: Common, p: Partition) -> anyhow::Result<bool> {
    let b = match common.family {
        Family::B => p,
        Family::C => springer_dual_inverse(&p)?,
        Family::D => bail!(nilorbit::Error::WrongFamily {
            expected: "B or C",
            found: Family::D
        }),
    };
    let dp = dual_pair(&b)?;
    let ss = seesaw_check(&dp)?;
    let ee = epoly_equality_check(&dp)?;
    let pass = ss.pass && ee.pass;
    let pairings: Vec<Value> = ss
        .records
        .iter()
        .map(|r| {
            let ok = r.seesaw && r.e_equal;
            json!({
                "r_b": r.r_b, "r_c": r.r_c, "l_b": r.l_b, "l_c": r.l_c,
                "fiber_b": r.fiber_b, "fiber_c": r.fiber_c,
                "components_b": r.components_b, "components_c": r.components_c,
                "product": r.product, "abar": r.abar,
                "e_b": r.e_b, "e_c": r.e_c,
                "verdict": if ok { "pass" } else { "fail" },
            })
        })
        .collect();
    print(
        common.json,
        json!({
            "schema": SCHEMA,
            "b_orbit": dp.b_orbit,
            "c_orbit": dp.c_orbit,
            "pairings": pairings,
            "problems": dp.problems,
            "verdict": if pass { "pass" } else { "fail" },
        }),
        || {
            let mut s: Vec<String> = ss
                .records
                .iter()
                .map(|r| {
                    format!(
                        "{} {} / {} {}: {} x {} = {} (#A = {}) {}",
                        r.r_b,
                        r.l_b,
                        r.r_c,
                        r.l_c,
                        r.components_b,
                        r.components_c,
                        r.product,
                        r.abar,
                        if r.seesaw && r.e_equal {
                            "pass"
                        } else {
                            "fail"
                        }
                    )
                })
                .collect();
            s.extend(dp.problems.iter().map(|p| format!("problem: {p}")));
            s.join("\n")
        },
    );
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
