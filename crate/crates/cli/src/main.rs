use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use wedderkit::algebra::{e_of, epsilon};
use wedderkit::characters::character_table;
use wedderkit::config::{AnalysisConfig, DEFAULT_CHAIN_BUDGET};
use wedderkit::constructions::{dade_embedding, verify_theorem_suite, Suite};
use wedderkit::group::{DEFAULT_MAX_ORDER, DEFAULT_MAX_SUBGROUP_ENUM};
use wedderkit::shoda::{classify_group, cross_validate_report};
use wedderkit_cli::corpus::{load_corpus, parse_spec_list, run_corpus};
use wedderkit_cli::render::render_text;
use wedderkit_cli::{load_group, DEFAULT_CORPUS};

/// Rational group algebras of finite groups: Shoda pairs, primitive central
/// idempotents and monomiality.
///
/// GROUP is a spec such as `sym:4`, `perm:(1,2,3,4);(1,3)`,
/// `product:sym:3|cyclic:4`, `wreath:sym:3~cyclic:2`, or `table:<file>`.
#[derive(Parser)]
#[command(name = "wedderkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest group order to construct.
    #[arg(long, global = true, env = "WEDDERKIT_BOUND", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    /// Largest group order whose subgroup lattice is enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SUBGROUP_ENUM)]
    max_subgroups: usize,

    /// Chain extensions tried per pair before its verdict becomes "unknown".
    #[arg(long, global = true, default_value_t = DEFAULT_CHAIN_BUDGET)]
    chain_budget: u64,

    /// Cross-check classifications against the character table oracle.
    #[arg(long, global = true)]
    oracle: bool,

    /// Worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print a plain-text summary rendered from the JSON report.
    #[arg(long, global = true)]
    text: bool,

    /// Include wall-clock timings (reports are then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a group by the idempotents of its Shoda pairs.
    Classify { group: String },
    /// List every pair (H, K) up to conjugacy with its verdict.
    Pairs { group: String },
    /// Dump ε(H,K), e(G,H,K) and e_Q for every pair, and the primitive
    /// central idempotents found.
    Idempotents { group: String },
    /// Print the character table computed by the oracle.
    Chars { group: String },
    /// Embed a solvable group into a wreath tower.
    Embed { group: String },
    /// Run a theorem suite (theorem1, proposition1, lemma2, theorem3_sample)
    /// or the oracle comparison (oracle).
    Verify {
        suite: String,
        /// Instances to run instead of the defaults. For `oracle`, group specs.
        instances: Vec<String>,
    },
    /// Classify every group in a directory, table file or spec list.
    Corpus { path: PathBuf },
}

enum Status {
    Ok,
    Unknown,
    Failed,
}

impl Status {
    fn code(self) -> ExitCode {
        match self {
            Status::Ok => ExitCode::SUCCESS,
            Status::Failed => ExitCode::from(1),
            Status::Unknown => ExitCode::from(2),
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(v)?)
}

impl Cli {
    fn config(&self) -> AnalysisConfig {
        AnalysisConfig {
            max_order: self.max_order,
            max_subgroup_enum: self.max_subgroups,
            chain_budget: self.chain_budget,
            timings: self.timings,
            ..AnalysisConfig::default()
        }
    }

    fn run(&self) -> anyhow::Result<(Value, Status)> {
        let config = self.config();
        let load = |spec: &str| load_group(spec, config.max_order).with_context(|| format!("cannot build {spec:?}"));
        match &self.command {
            Command::Classify { group } => {
                let g = load(group)?;
                let report = classify_group(&g, group, &config)?;
                let status = if report.has_unknown() { Status::Unknown } else { Status::Ok };
                let mut v = to_value(&report)?;
                if self.oracle {
                    v["cross_validation"] = to_value(&cross_validate_report(&g, &report, &config)?)?;
                }
                Ok((v, status))
            }
            Command::Pairs { group } => {
                let g = load(group)?;
                let report = classify_group(&g, group, &config)?;
                let pairs: Vec<Value> = report
                    .verdicts
                    .iter()
                    .map(|v| {
                        json!({
                            "H": v.h.describe(&g),
                            "K": v.k.describe(&g),
                            "level": v.level,
                            "chain": v.chain.as_ref().map(|c| c.describe(&g)),
                            "multiple": v.multiple.as_ref().map(|m| m.to_string()),
                        })
                    })
                    .collect();
                let v = json!({ "group": group, "order": g.order(), "pairs": pairs });
                Ok((v, if report.has_unknown() { Status::Unknown } else { Status::Ok }))
            }
            Command::Idempotents { group } => {
                let g = load(group)?;
                let report = classify_group(&g, group, &config)?;
                let mut pairs = Vec::new();
                for v in &report.verdicts {
                    pairs.push(json!({
                        "H": v.h.describe(&g),
                        "K": v.k.describe(&g),
                        "level": v.level,
                        "epsilon": to_value(&epsilon(&g, &v.h, &v.k)?)?,
                        "e": to_value(&e_of(&g, &v.h, &v.k)?)?,
                        "e_Q": v.idempotent.as_ref().map(to_value).transpose()?,
                        "multiple": v.multiple.as_ref().map(|m| m.to_string()),
                    }));
                }
                let pcis: Vec<Value> = report.shoda_idempotents.iter().map(to_value).collect::<anyhow::Result<_>>()?;
                let v = json!({
                    "group": group,
                    "order": g.order(),
                    "pairs": pairs,
                    "primitive_central_idempotents": pcis,
                    "sum_is_one": report.flags.monomial,
                });
                Ok((v, Status::Ok))
            }
            Command::Chars { group } => {
                let g = load(group)?;
                let table = character_table(&g, config.oracle_bound)?;
                Ok((to_value(&table)?, Status::Ok))
            }
            Command::Embed { group } => {
                let g = load(group)?;
                let d = dade_embedding(&g, None, config.max_order)?;
                let mut v = to_value(&d.report(group))?;
                let mut status = Status::Ok;
                if d.tower.order() <= config.max_subgroup_enum {
                    let r = classify_group(&d.tower, &d.tower_spec, &config)?;
                    if r.has_unknown() {
                        status = Status::Unknown;
                    }
                    v["tower_flags"] = to_value(&r.flags)?;
                    v["notice"] = Value::Null;
                } else {
                    v["tower_flags"] = Value::Null;
                    v["notice"] = json!(format!(
                        "embedding only: tower order {} exceeds the classification limit {}",
                        d.tower.order(),
                        config.max_subgroup_enum
                    ));
                }
                Ok((v, status))
            }
            Command::Verify { suite, instances } => {
                if suite == "oracle" {
                    let entries = if instances.is_empty() {
                        parse_spec_list(DEFAULT_CORPUS)
                    } else {
                        parse_spec_list(&instances.join("\n"))
                    };
                    let report = run_corpus(&entries, &config, true);
                    let status = if report.has_errors() { Status::Failed } else { Status::Ok };
                    let instances: Vec<Value> = report
                        .entries
                        .iter()
                        .map(|e| {
                            json!({
                                "construction": e.source,
                                "orders": e.order.into_iter().collect::<Vec<_>>(),
                                "verdict": if e.error.is_none() { "pass" } else { "fail" },
                                "note": e.error,
                                "cross_validation": e.cross_validation,
                            })
                        })
                        .collect();
                    let failed = report.summary.errors;
                    let v = json!({
                        "suite": "oracle",
                        "instances": instances,
                        "passed": report.summary.groups - failed,
                        "failed": failed,
                        "unknown": 0,
                        "skipped": 0,
                    });
                    return Ok((v, status));
                }
                let suite: Suite = suite.parse()?;
                let list = (!instances.is_empty()).then_some(instances.as_slice());
                let report = verify_theorem_suite(suite, list, &config);
                let status = if !report.is_success() {
                    Status::Failed
                } else if report.unknown > 0 {
                    Status::Unknown
                } else {
                    Status::Ok
                };
                Ok((to_value(&report)?, status))
            }
            Command::Corpus { path } => {
                if !path.exists() {
                    bail!("{}: no such file or directory", path.display());
                }
                let entries = load_corpus(path)?;
                let report = run_corpus(&entries, &config, self.oracle);
                let status = if report.has_errors() {
                    Status::Failed
                } else if report.has_unknown() {
                    Status::Unknown
                } else {
                    Status::Ok
                };
                Ok((to_value(&report)?, status))
            }
        }
    }

    fn emit(&self, v: &Value) -> anyhow::Result<()> {
        let mut text = if self.text { render_text(v) } else { serde_json::to_string_pretty(v)? + "\n" };
        if text.is_empty() {
            text.push('\n');
        }
        match &self.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    // usage errors exit 1 like every other error; 2 is reserved for
    // "unknown" verdicts
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        pool = pool.num_threads(jobs as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };
    let result = pool.install(|| cli.run().and_then(|(v, status)| cli.emit(&v).map(|()| status)));
    match result {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
