//! Instance checks of the structural theorems: every completed instance is
//! expected to come out generalized strongly monomial.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{dade_embedding, direct_product, wreath_by_cyclic};
use crate::characters::is_supermonomial_group;
use crate::config::AnalysisConfig;
use crate::dsl::parse_group;
use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::shoda::{classify_group, Flags, Tristate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Solvable groups embed into wreath towers, which classify as generalized.
    Theorem1,
    /// `A ≀ C_p` is generalized whenever `A` is.
    Proposition1,
    /// `A × B` is generalized whenever `A` and `B` are.
    Lemma2,
    /// Groups all of whose irreducibles are supermonomial are generalized.
    Theorem3Sample,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Theorem1, Suite::Proposition1, Suite::Lemma2, Suite::Theorem3Sample];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Proposition1 => "proposition1",
            Suite::Lemma2 => "lemma2",
            Suite::Theorem3Sample => "theorem3_sample",
        }
    }

    /// The default instances, as group specs; pairs are `A|B` or `A~p`.
    pub fn default_instances(self) -> Vec<String> {
        let list: &[&str] = match self {
            Suite::Theorem1 => &["sym:3", "cyclic:6", "dihedral:8", "quaternion:8", "alt:4", "cyclic:5", "cyclic:1"],
            Suite::Proposition1 => {
                &["sym:3~2", "cyclic:2~2", "cyclic:3~2", "cyclic:2~3", "cyclic:4~2", "cyclic:1~2"]
            }
            Suite::Lemma2 => &[
                "sym:3|cyclic:4",
                "dihedral:8|cyclic:3",
                "quaternion:8|cyclic:3",
                "alt:4|cyclic:2",
                "sym:3|sym:3",
                "cyclic:1|cyclic:1",
            ],
            Suite::Theorem3Sample => &[
                "sym:3",
                "sym:4",
                "alt:4",
                "dihedral:8",
                "quaternion:8",
                "dihedral:10",
                "quaternion:12",
                "quaternion:16",
                "product:sym:3|cyclic:3",
                "perm:(3,4,5)(6,8,7);(1,3,2,6)(4,5,8,7)",
                "cyclic:12",
            ],
        };
        list.iter().map(|s| s.to_string()).collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceVerdict {
    Pass,
    Fail,
    /// A chain search ran out of budget before the flag was decided.
    Unknown,
    /// The instance's hypothesis does not hold, or it exceeds the bounds.
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetStatus {
    WithinBudget,
    Exhausted,
    NotRun,
}

#[derive(Serialize)]
pub struct InstanceReport {
    pub construction: String,
    /// Orders of the inputs followed by the order of the constructed group.
    pub orders: Vec<usize>,
    /// Flags of the constructed group, when it was classified.
    pub flags: Option<Flags>,
    pub verdict: InstanceVerdict,
    pub budget_status: BudgetStatus,
    pub note: Option<String>,
    pub elapsed_ms: Option<u128>,
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: Vec<InstanceReport>,
    pub passed: usize,
    pub failed: usize,
    pub unknown: usize,
    pub skipped: usize,
}

impl SuiteReport {
    pub fn is_success(&self) -> bool {
        self.failed == 0
    }
}

struct Outcome {
    orders: Vec<usize>,
    flags: Option<Flags>,
    verdict: InstanceVerdict,
    note: Option<String>,
}

impl Outcome {
    fn skipped(orders: Vec<usize>, note: String) -> Self {
        Outcome { orders, flags: None, verdict: InstanceVerdict::Skipped, note: Some(note) }
    }
}

/// Classify and turn the generalized flag into a verdict.
fn expect_generalized(group: &GroupRef, name: &str, orders: Vec<usize>, config: &AnalysisConfig) -> Result<Outcome> {
    let report = classify_group(group, name, config)?;
    let verdict = match report.flags.generalized_strongly_monomial {
        Tristate::True => InstanceVerdict::Pass,
        Tristate::False => InstanceVerdict::Fail,
        Tristate::Unknown => InstanceVerdict::Unknown,
    };
    let note = (verdict == InstanceVerdict::Fail).then(|| "predicted generalized strongly monomial, classified otherwise".to_string());
    Ok(Outcome { orders, flags: Some(report.flags), verdict, note })
}

/// Checks a factor hypothesis; `Some` short-circuits the instance.
fn hypothesis(group: &GroupRef, name: &str, config: &AnalysisConfig, orders: &[usize]) -> Result<Option<Outcome>> {
    let flags = classify_group(group, name, config)?.flags;
    Ok(match flags.generalized_strongly_monomial {
        Tristate::True => None,
        Tristate::Unknown => Some(Outcome {
            orders: orders.to_vec(),
            flags: None,
            verdict: InstanceVerdict::Unknown,
            note: Some(format!("hypothesis on {name} undecided within the chain budget")),
        }),
        Tristate::False => Some(Outcome::skipped(orders.to_vec(), format!("{name} is not generalized strongly monomial"))),
    })
}

fn split_pair(s: &str, sep: char) -> Result<(&str, &str)> {
    s.rsplit_once(sep).ok_or_else(|| Error::InvalidArgument(format!("instance {s:?} needs '{sep}'")))
}

fn run_instance(suite: Suite, instance: &str, config: &AnalysisConfig) -> Result<Outcome> {
    let bound = config.max_order;
    match suite {
        Suite::Theorem1 => {
            let g = parse_group(instance, bound)?;
            let d = dade_embedding(&g, None, bound)?;
            let orders = vec![g.order(), d.tower.order()];
            if d.tower.order() > config.max_subgroup_enum {
                return Ok(Outcome {
                    orders,
                    flags: None,
                    verdict: InstanceVerdict::Pass,
                    note: Some(format!("embedding into {} verified; tower too large to classify", d.recipe)),
                });
            }
            expect_generalized(&d.tower, &d.tower_spec, orders, config)
        }
        Suite::Proposition1 => {
            let (a, p) = split_pair(instance, '~')?;
            let p: usize = p.parse().map_err(|_| Error::InvalidArgument(format!("bad prime in {instance:?}")))?;
            let a_group = parse_group(a, bound)?;
            let w = wreath_by_cyclic(&a_group, p, bound)?;
            let orders = vec![a_group.order(), w.group.order()];
            if let Some(out) = hypothesis(&a_group, a, config, &orders)? {
                return Ok(out);
            }
            expect_generalized(&w.group, instance, orders, config)
        }
        Suite::Lemma2 => {
            let (a, b) = split_pair(instance, '|')?;
            let (ga, gb) = (parse_group(a, bound)?, parse_group(b, bound)?);
            let prod = direct_product(&ga, &gb, bound)?;
            let orders = vec![ga.order(), gb.order(), prod.group.order()];
            for (g, name) in [(&ga, a), (&gb, b)] {
                if let Some(out) = hypothesis(g, name, config, &orders)? {
                    return Ok(out);
                }
            }
            expect_generalized(&prod.group, instance, orders, config)
        }
        Suite::Theorem3Sample => {
            let g = parse_group(instance, bound)?;
            let orders = vec![g.order()];
            if !is_supermonomial_group(&g, config.supermonomial_bound)? {
                return Ok(Outcome::skipped(orders, "not every irreducible character is supermonomial".into()));
            }
            expect_generalized(&g, instance, orders, config)
        }
    }
}

/// Run a suite over `instances` (the defaults when `None`). Instances run
/// concurrently; the report lists them in input order. A bound violation
/// skips the instance, any other error fails it.
pub fn verify_theorem_suite(suite: Suite, instances: Option<&[String]>, config: &AnalysisConfig) -> SuiteReport {
    let defaults = suite.default_instances();
    let instances = instances.unwrap_or(&defaults);
    let reports: Vec<InstanceReport> = instances
        .par_iter()
        .map(|instance| {
            let start = Instant::now();
            let outcome = match run_instance(suite, instance, config) {
                Ok(o) => o,
                Err(e @ (Error::GroupTooLarge { .. } | Error::ClosureTooLarge { .. })) => {
                    Outcome::skipped(Vec::new(), e.to_string())
                }
                Err(e) => Outcome { orders: Vec::new(), flags: None, verdict: InstanceVerdict::Fail, note: Some(e.to_string()) },
            };
            let budget_status = match (&outcome.flags, outcome.verdict) {
                (_, InstanceVerdict::Unknown) => BudgetStatus::Exhausted,
                (Some(_), _) => BudgetStatus::WithinBudget,
                (None, _) => BudgetStatus::NotRun,
            };
            InstanceReport {
                construction: instance.clone(),
                orders: outcome.orders,
                flags: outcome.flags,
                verdict: outcome.verdict,
                budget_status,
                note: outcome.note,
                elapsed_ms: config.timings.then(|| start.elapsed().as_millis()),
            }
        })
        .collect();
    let count = |v| reports.iter().filter(|r| r.verdict == v).count();
    SuiteReport {
        suite: suite.name().to_string(),
        passed: count(InstanceVerdict::Pass),
        failed: count(InstanceVerdict::Fail),
        unknown: count(InstanceVerdict::Unknown),
        skipped: count(InstanceVerdict::Skipped),
        instances: reports,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(suite: Suite, instances: &[&str]) -> SuiteReport {
        let list: Vec<String> = instances.iter().map(|s| s.to_string()).collect();
        verify_theorem_suite(suite, Some(&list), &AnalysisConfig::default())
    }

    #[test]
    fn trivial_lemma2_instance_passes() {
        let r = run(Suite::Lemma2, &["cyclic:1|cyclic:1"]);
        assert_eq!((r.passed, r.failed), (1, 0));
        assert_eq!(r.instances[0].orders, [1, 1, 1]);
    }

    #[test]
    fn theorem1_on_sym3_classifies_the_tower() {
        let r = run(Suite::Theorem1, &["sym:3", "dihedral:8", "alt:4"]);
        assert_eq!(r.passed, 3);
        assert_eq!(r.instances[0].orders, [6, 18]);
        assert!(r.instances[0].flags.as_ref().unwrap().generalized_strongly_monomial.is_true());
        assert_eq!(r.instances[1].orders, [8, 128]);
        assert!(r.instances[1].flags.is_some());
        // the order-1536 tower is only embedded
        assert!(r.instances[2].flags.is_none());
    }

    #[test]
    fn bad_instances_are_isolated() {
        let r = run(Suite::Theorem3Sample, &["cyclic:x", "sym:9", "cyclic:3"]);
        assert_eq!(r.instances[0].verdict, InstanceVerdict::Fail);
        assert_eq!(r.instances[1].verdict, InstanceVerdict::Skipped);
        assert_eq!(r.instances[2].verdict, InstanceVerdict::Pass);
    }

    #[test]
    fn sl23_is_outside_theorem3() {
        let r = run(Suite::Theorem3Sample, &["perm:(3,4,5)(6,8,7);(1,3,2,6)(4,5,8,7)"]);
        assert_eq!(r.skipped, 1);
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("theorem2".parse::<Suite>().is_err());
    }
}
