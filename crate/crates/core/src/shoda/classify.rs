//! Whole-group classification by the idempotents of Shoda pairs.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::chain::{ChainDescription, ChainSearch};
use super::{evaluate_pair, Level, PairVerdict};
use crate::algebra::AlgebraElement;
use crate::characters::{character_table, is_monomial_in};
use crate::config::AnalysisConfig;
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::group::{normalizer, GroupRef, Subgroup, SubgroupDescription, SubgroupLattice};

/// A verdict that may be undecided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tristate {
    True,
    False,
    Unknown,
}

impl Tristate {
    pub fn is_true(self) -> bool {
        self == Tristate::True
    }
}

impl From<bool> for Tristate {
    fn from(b: bool) -> Self {
        if b {
            Tristate::True
        } else {
            Tristate::False
        }
    }
}

/// `true`, `false`, or the string `"unknown"`.
impl Serialize for Tristate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Tristate::True => serializer.serialize_bool(true),
            Tristate::False => serializer.serialize_bool(false),
            Tristate::Unknown => serializer.serialize_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub monomial: bool,
    pub strongly_monomial: bool,
    pub generalized_strongly_monomial: Tristate,
}

/// One pair standing for one distinct idempotent at some level.
#[derive(Serialize)]
pub struct PairRecord {
    #[serde(rename = "H")]
    pub h: SubgroupDescription,
    #[serde(rename = "K")]
    pub k: SubgroupDescription,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainDescription>,
    pub multiple: Option<String>,
    /// `dim_Q` of the ideal cut out by the pair's idempotent.
    pub dimension: usize,
}

#[derive(Serialize)]
pub struct LevelSet {
    pub level: Level,
    pub pairs: Vec<PairRecord>,
    pub idempotent_sum_is_one: bool,
    pub covered_dimension: usize,
}

#[derive(Serialize)]
pub struct Timings {
    pub total_ms: u128,
}

/// The result of classifying one group.
#[derive(Serialize)]
pub struct CoverageReport {
    pub group: String,
    pub order: usize,
    pub pairs_considered: usize,
    pub level_sets: Vec<LevelSet>,
    pub flags: Flags,
    pub uncovered_dimension: usize,
    /// Shoda pairs whose chain search ran out of budget.
    pub undetermined: Vec<PairRecord>,
    pub timings: Option<Timings>,
    /// Verdicts for all pairs considered, in canonical pair order.
    #[serde(skip)]
    pub verdicts: Vec<PairVerdict>,
    /// Distinct idempotents at the Shoda level, in order of first appearance.
    #[serde(skip)]
    pub shoda_idempotents: Vec<AlgebraElement>,
}

impl CoverageReport {
    /// Some verdict was cut short by the chain budget: the generalized flag
    /// or at least one pair's level.
    pub fn has_unknown(&self) -> bool {
        self.flags.generalized_strongly_monomial == Tristate::Unknown || !self.undetermined.is_empty()
    }

    pub fn level_set(&self, level: Level) -> Option<&LevelSet> {
        self.level_sets.iter().find(|s| s.level == level)
    }
}

/// Pairs `(H, K)` with `K ⊴ H`, `H/K` cyclic, one per `G`-conjugacy class
/// of pairs: `H` runs over subgroup class representatives and `K` over
/// orbits of `N_G(H)`.
pub(crate) fn pair_representatives(group: &GroupRef, lattice: &SubgroupLattice) -> Vec<(Subgroup, Subgroup)> {
    let mut pairs = Vec::new();
    for hi in lattice.class_representatives() {
        let h = lattice.get(hi);
        let n = normalizer(group, h);
        let mut seen = vec![false; lattice.len()];
        for ki in lattice.subgroups_of(hi) {
            if seen[ki] {
                continue;
            }
            let k = lattice.get(ki);
            if !k.is_normal_in(group, h) || h.cyclic_quotient_generator(group, k).is_none() {
                continue;
            }
            let mut orbit = vec![ki];
            seen[ki] = true;
            let mut i = 0;
            while i < orbit.len() {
                for &g in n.generators() {
                    let c = lattice.index_of(&lattice.get(orbit[i]).conjugate(group, g)).expect("subgroup");
                    if !seen[c] {
                        seen[c] = true;
                        orbit.push(c);
                    }
                }
                i += 1;
            }
            pairs.push((h.clone(), k.clone()));
        }
    }
    pairs.sort();
    pairs
}

fn dimension(e: &AlgebraElement) -> usize {
    let d = e.regular_trace();
    d.to_i64().filter(|_| d.is_integer()).expect("dimension of an idempotent ideal is an integer") as usize
}

fn record(group: &GroupRef, v: &PairVerdict) -> PairRecord {
    PairRecord {
        h: v.h.describe(group),
        k: v.k.describe(group),
        chain: v.chain.as_ref().map(|c| c.describe(group)),
        multiple: v.multiple.as_ref().map(Rational::to_string),
        dimension: v.idempotent.as_ref().map_or(0, dimension),
    }
}

/// Distinct idempotents among the verdicts accepted by `keep`, each with the
/// first pair producing it.
fn distinct(verdicts: &[PairVerdict], keep: impl Fn(Level) -> bool) -> Vec<&PairVerdict> {
    let mut out: Vec<&PairVerdict> = Vec::new();
    for v in verdicts.iter().filter(|v| keep(v.level)) {
        if !out.iter().any(|o| o.idempotent == v.idempotent) {
            out.push(v);
        }
    }
    out
}

/// Classify a group: evaluate every pair up to conjugacy, collect the
/// distinct idempotents at each level and test whether they sum to 1.
///
/// Pairs are evaluated in parallel on the current rayon pool; results are
/// collected in canonical pair order, so the report does not depend on
/// scheduling.
pub fn classify_group(group: &GroupRef, name: &str, config: &AnalysisConfig) -> Result<CoverageReport> {
    let start = Instant::now();
    if group.order() > config.max_subgroup_enum {
        return Err(Error::GroupTooLarge { order: group.order(), bound: config.max_subgroup_enum, what: "classification" });
    }
    let lattice = SubgroupLattice::new(group, config.max_subgroup_enum)?;
    let pairs = pair_representatives(group, &lattice);
    let search = ChainSearch::with_subgroups(group, lattice.subgroups().to_vec(), config.chain_budget)?;
    let verdicts: Vec<PairVerdict> =
        pairs.par_iter().map(|(h, k)| evaluate_pair(group, h, k, &search)).collect::<Result<_>>()?;

    let one = AlgebraElement::one(group);
    let shoda = distinct(&verdicts, Level::is_shoda);
    for (i, a) in shoda.iter().enumerate() {
        let ea = a.idempotent.as_ref().expect("Shoda pairs carry idempotents");
        if !ea.is_idempotent() || !ea.is_central() {
            return Err(Error::InvariantViolation("a Shoda idempotent is not a central idempotent".into()));
        }
        for b in &shoda[i + 1..] {
            if !ea.are_orthogonal(b.idempotent.as_ref().unwrap()) {
                return Err(Error::InvariantViolation("distinct Shoda idempotents are not orthogonal".into()));
            }
        }
    }

    let mut level_sets = Vec::new();
    let mut sums = Vec::new();
    let selectors: [(Level, fn(Level) -> bool); 3] = [
        (Level::Shoda, Level::is_shoda),
        (Level::StrongShoda, |l| l == Level::StrongShoda),
        (Level::GeneralizedStrongShoda, Level::is_generalized),
    ];
    for (level, keep) in selectors {
        let reps = distinct(&verdicts, keep);
        let sum = reps.iter().fold(AlgebraElement::zero(group), |acc, v| acc.add(v.idempotent.as_ref().unwrap()));
        let is_one = sum == one;
        sums.push(is_one);
        let pairs: Vec<PairRecord> = reps.iter().map(|v| record(group, v)).collect();
        let covered_dimension = pairs.iter().map(|p| p.dimension).sum();
        level_sets.push(LevelSet { level, pairs, idempotent_sum_is_one: is_one, covered_dimension });
    }

    // Unknown only if the undetermined pairs could still complete the sum.
    let generalized = if sums[2] {
        Tristate::True
    } else {
        let open = distinct(&verdicts, |l| l.is_generalized() || l == Level::Undetermined);
        let best = open.iter().fold(AlgebraElement::zero(group), |acc, v| acc.add(v.idempotent.as_ref().unwrap()));
        if best == one {
            Tristate::Unknown
        } else {
            Tristate::False
        }
    };
    let flags = Flags { monomial: sums[0], strongly_monomial: sums[1], generalized_strongly_monomial: generalized };
    let uncovered_dimension = group.order() - level_sets[0].covered_dimension;
    let undetermined = verdicts.iter().filter(|v| v.level == Level::Undetermined).map(|v| record(group, v)).collect();
    let shoda_idempotents = shoda.iter().map(|v| v.idempotent.clone().unwrap()).collect();
    Ok(CoverageReport {
        group: name.to_string(),
        order: group.order(),
        pairs_considered: verdicts.len(),
        level_sets,
        flags,
        uncovered_dimension,
        undetermined,
        timings: config.timings.then(|| Timings { total_ms: start.elapsed().as_millis() }),
        verdicts,
        shoda_idempotents,
    })
}

/// Agreement between the classification and the character table oracle.
#[derive(Debug, Clone, Serialize)]
pub struct CrossValidation {
    pub group: String,
    pub order: usize,
    pub classes: usize,
    /// Degrees of the table rows, in table order.
    pub row_degrees: Vec<i64>,
    /// Degrees of the rows induced from a linear character of a subgroup.
    pub monomial_degrees: Vec<i64>,
    pub monomial: bool,
    pub agree: bool,
}

fn key(e: &AlgebraElement) -> Vec<(usize, Rational)> {
    e.terms().map(|(g, c)| (g, c.clone())).collect()
}

/// Compare the classification with the oracle: the monomial flag against
/// row-by-row monomiality, the Shoda idempotents against `e_Q` of the
/// monomial rows, and the class count against the row count.
pub fn cross_validate(group: &GroupRef, name: &str, config: &AnalysisConfig) -> Result<CrossValidation> {
    let report = classify_group(group, name, config)?;
    cross_validate_report(group, &report, config)
}

/// [`cross_validate`] against an existing report of `group`.
pub fn cross_validate_report(group: &GroupRef, report: &CoverageReport, config: &AnalysisConfig) -> Result<CrossValidation> {
    let table = character_table(group, config.oracle_bound)?;
    let classes = table.domain().classes().len();
    if classes != table.len() {
        return Err(Error::OracleMismatch(format!("{classes} classes but {} table rows", table.len())));
    }
    let lattice = SubgroupLattice::new(group, config.max_subgroup_enum)?;
    let mut oracle_ids: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut monomial_degrees = Vec::new();
    for (row, degree) in table.rows().iter().zip(table.degrees()) {
        if is_monomial_in(row, lattice.subgroups()).is_some() {
            monomial_degrees.push(degree);
            let k = key(&row.e_q_of_char()?);
            if !oracle_ids.contains(&k) {
                oracle_ids.push(k);
            }
        }
    }
    let monomial = monomial_degrees.len() == table.len();
    if monomial != report.flags.monomial {
        return Err(Error::OracleMismatch(format!(
            "oracle says monomial = {monomial}, classification says {}",
            report.flags.monomial
        )));
    }
    let mut shoda_ids: Vec<Vec<(usize, Rational)>> = report.shoda_idempotents.iter().map(key).collect();
    shoda_ids.sort();
    oracle_ids.sort();
    if shoda_ids != oracle_ids {
        return Err(Error::OracleMismatch(format!(
            "{} Shoda idempotents vs {} from monomial rows",
            shoda_ids.len(),
            oracle_ids.len()
        )));
    }
    Ok(CrossValidation {
        group: report.group.clone(),
        order: group.order(),
        classes,
        row_degrees: table.degrees(),
        monomial_degrees,
        monomial,
        agree: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::perm_group;
    use std::sync::Arc;

    fn classify(gens: &[&[&[usize]]], degree: usize) -> CoverageReport {
        let g: GroupRef = Arc::new(perm_group(gens, degree));
        classify_group(&g, "test", &AnalysisConfig::default()).unwrap()
    }

    #[test]
    fn s3_is_strongly_monomial() {
        let r = classify(&[&[&[1, 2, 3]], &[&[1, 2]]], 3);
        assert!(r.flags.monomial && r.flags.strongly_monomial);
        assert_eq!(r.flags.generalized_strongly_monomial, Tristate::True);
        let dims: Vec<usize> = r.level_set(Level::StrongShoda).unwrap().pairs.iter().map(|p| p.dimension).collect();
        let mut sorted = dims.clone();
        sorted.sort();
        assert_eq!(sorted, [1, 1, 4]);
        assert_eq!(r.uncovered_dimension, 0);
        assert_eq!(r.shoda_idempotents.len(), 3);
    }

    #[test]
    fn sl23_is_not_monomial() {
        let gens: &[&[&[usize]]] = &[&[&[3, 4, 5], &[6, 8, 7]], &[&[1, 3, 2, 6], &[4, 5, 8, 7]]];
        let g: GroupRef = Arc::new(perm_group(gens, 8));
        let cv = cross_validate(&g, "sl23", &AnalysisConfig::default()).unwrap();
        assert_eq!(cv.monomial_degrees, [1, 1, 1, 3]);
        let r = classify(gens, 8);
        assert!(!r.flags.monomial);
        assert!(!r.flags.strongly_monomial);
        assert_eq!(r.flags.generalized_strongly_monomial, Tristate::False);
        assert_eq!(r.level_sets[0].covered_dimension, 12);
        assert_eq!(r.uncovered_dimension, 12);
    }

    #[test]
    fn q8_is_strongly_monomial() {
        let r = classify(&[&[&[1, 2, 5, 6], &[3, 8, 7, 4]], &[&[1, 3, 5, 7], &[2, 4, 6, 8]]], 8);
        assert!(r.flags.strongly_monomial);
        assert_eq!(r.uncovered_dimension, 0);
    }

    #[test]
    fn cross_validation_agrees() {
        for (gens, degree) in [
            (vec![vec![vec![1, 2, 3]], vec![vec![1, 2]]], 3),
            (vec![vec![vec![3, 4, 5], vec![6, 8, 7]], vec![vec![1, 3, 2, 6], vec![4, 5, 8, 7]]], 8),
            (vec![vec![vec![1, 2, 3, 4, 5, 6, 7]]], 7),
            (vec![vec![vec![1, 2, 3, 4]], vec![vec![1, 2]]], 4),
        ] {
            let gens: Vec<Vec<&[usize]>> = gens.iter().map(|g| g.iter().map(Vec::as_slice).collect()).collect();
            let gens: Vec<&[&[usize]]> = gens.iter().map(Vec::as_slice).collect();
            let g: GroupRef = Arc::new(perm_group(&gens, degree));
            let cv = cross_validate(&g, "test", &AnalysisConfig::default()).unwrap();
            assert!(cv.agree);
            assert_eq!(cv.classes, cv.row_degrees.len());
        }
    }

    #[test]
    fn tiny_budget_leaves_no_strong_verdict_changed() {
        let g: GroupRef = Arc::new(perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 2]]], 4));
        let config = AnalysisConfig { chain_budget: 0, ..AnalysisConfig::default() };
        let r = classify_group(&g, "s4", &config).unwrap();
        let full = classify_group(&g, "s4", &AnalysisConfig::default()).unwrap();
        assert_eq!(r.flags.monomial, full.flags.monomial);
        assert_eq!(r.flags.strongly_monomial, full.flags.strongly_monomial);
    }

    #[test]
    fn exhausted_budget_in_a5() {
        let g = crate::constructions::alternating(5, 2000).unwrap();
        let starved = classify_group(&g, "a5", &AnalysisConfig { chain_budget: 0, ..AnalysisConfig::default() }).unwrap();
        assert_eq!(starved.undetermined.len(), 1);
        assert_eq!((starved.undetermined[0].h.order, starved.undetermined[0].k.order), (12, 4));
        // A5 is not monomial, so the flag is decided regardless
        assert_eq!(starved.flags.generalized_strongly_monomial, Tristate::False);
        assert!(starved.has_unknown());
        let full = classify_group(&g, "a5", &AnalysisConfig::default()).unwrap();
        assert!(full.undetermined.is_empty() && !full.has_unknown());
        assert!(full.verdicts.iter().any(|v| v.level == Level::Shoda));
        assert_eq!(full.uncovered_dimension, 34);
    }

    #[test]
    fn json_shape() {
        let r = classify(&[&[&[1, 2, 3]], &[&[1, 2]]], 3);
        let v = serde_json::to_value(&r).unwrap();
        for key in ["group", "order", "level_sets", "flags", "uncovered_dimension", "timings"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert!(v["timings"].is_null());
        assert_eq!(v["flags"]["generalized_strongly_monomial"], serde_json::json!(true));
        let first = &v["level_sets"][0]["pairs"][0];
        assert!(first.get("H").is_some() && first.get("K").is_some() && first.get("multiple").is_some());
    }
}
