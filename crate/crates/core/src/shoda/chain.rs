//! Strong inductive chains `H = H₀ ≤ H₁ ≤ ⋯ ≤ H_n = G`: at every step
//! `H_i ⊴ Cen_{H_{i+1}}(e_Q(λ^{H_i}))` and the distinct `H_{i+1}`-conjugates
//! of `e_Q(λ^{H_i})` are mutually orthogonal.

use std::cell::{Cell, RefCell};
use std::collections::HashMap;

use serde::Serialize;

use super::is_shoda_pair;
use crate::algebra::AlgebraElement;
use crate::characters::{ClassFunction, Domain, LinearCharacter};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, GroupRef, Subgroup, SubgroupDescription, DEFAULT_MAX_SUBGROUP_ENUM};

/// Evidence for one step `H_i ≤ H_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    /// `Cen_{H_{i+1}}(e_Q(λ^{H_i}))`.
    pub centralizer: Subgroup,
    /// Right coset representatives of the centralizer in `H_{i+1}`; the
    /// conjugates of `e_Q(λ^{H_i})` by these are the distinct ones, checked
    /// pairwise orthogonal.
    pub conjugators: Vec<usize>,
}

/// A validated strong inductive chain for a pair `(H, K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCertificate {
    pub chain: Vec<Subgroup>,
    pub steps: Vec<ChainStep>,
}

#[derive(Serialize)]
pub struct StepDescription {
    pub centralizer: SubgroupDescription,
    pub conjugates: usize,
}

#[derive(Serialize)]
pub struct ChainDescription {
    pub chain: Vec<SubgroupDescription>,
    pub steps: Vec<StepDescription>,
}

impl ChainCertificate {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn describe(&self, group: &GroupRef) -> ChainDescription {
        ChainDescription {
            chain: self.chain.iter().map(|s| s.describe(group)).collect(),
            steps: self
                .steps
                .iter()
                .map(|s| StepDescription { centralizer: s.centralizer.describe(group), conjugates: s.conjugators.len() })
                .collect(),
        }
    }
}

/// `e_Q(λ^{T})` for the subgroup `T` containing the domain of `λ`.
fn e_q_induced(group: &GroupRef, lambda: &ClassFunction, t: &Subgroup) -> AlgebraElement {
    lambda.induce_to(&Domain::new(group, t.clone())).e_q_unchecked()
}

/// Step conditions given `e = e_Q(λ^{H_i})` and `Cen_G(e)`; returns the step
/// evidence when both hold.
fn check_step(group: &GroupRef, hi: &Subgroup, next: &Subgroup, e: &AlgebraElement, cen_g: &Subgroup) -> Option<ChainStep> {
    let cen = cen_g.intersection(group, next);
    if !hi.is_normal_in(group, &cen) {
        return None;
    }
    let conjugators = cen.right_transversal(group, next);
    // e^s e^t = (e e^{t s⁻¹})^s, so testing e·e^y for y outside the
    // centralizer covers every pair; e^y depends only on the coset Cen·y
    let orthogonal = conjugators.iter().filter(|&&y| !cen.contains(y)).all(|&y| e.mul(&e.conjugate(y)).is_zero());
    orthogonal.then_some(ChainStep { centralizer: cen, conjugators })
}

/// Chain search over the subgroup lattice of one group.
///
/// Each call to [`ChainSearch::find`] runs its own depth-first search with a
/// fresh extension budget and memo, so results never depend on the order in
/// which pairs are processed.
pub struct ChainSearch {
    group: GroupRef,
    subgroups: Vec<Subgroup>,
    normal: Vec<bool>,
    budget: u64,
}

impl ChainSearch {
    pub fn new(group: &GroupRef, budget: u64) -> Result<Self> {
        Self::with_subgroups(group, all_subgroups(group, DEFAULT_MAX_SUBGROUP_ENUM)?, budget)
    }

    /// Reuse an already computed list of all subgroups.
    pub fn with_subgroups(group: &GroupRef, subgroups: Vec<Subgroup>, budget: u64) -> Result<Self> {
        let whole = group.whole();
        let normal = subgroups.iter().map(|s| s.is_normal_in(group, &whole)).collect();
        Ok(ChainSearch { group: group.clone(), subgroups, normal, budget })
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// The one-step chain `H ≤ G`, if it satisfies the step conditions.
    pub fn one_step(&self, lambda: &LinearCharacter) -> Option<ChainCertificate> {
        let grp = &self.group;
        let h = lambda.domain();
        let whole = grp.whole();
        let cert = if *h == whole {
            ChainCertificate { chain: vec![whole], steps: vec![] }
        } else {
            let lam = lambda.to_class_function(grp);
            let e = e_q_induced(grp, &lam, h);
            let cen_g = e.centralizing_subgroup();
            let step = check_step(grp, h, &whole, &e, &cen_g)?;
            ChainCertificate { chain: vec![h.clone(), whole], steps: vec![step] }
        };
        validate_chain(grp, lambda, &cert).ok()?;
        Some(cert)
    }

    /// Depth-first search for a strong inductive chain from the domain of
    /// `λ` to `G`. `Ok(None)` means the whole search space was exhausted;
    /// running out of budget is an error, never a negative answer.
    pub fn find(&self, lambda: &LinearCharacter) -> Result<Option<ChainCertificate>> {
        let grp = &self.group;
        let state = PairSearch {
            search: self,
            lambda: lambda.to_class_function(grp),
            memo: RefCell::new(HashMap::new()),
            used: Cell::new(0),
        };
        let h = lambda.domain();
        let Some(tail) = state.dfs(h)? else { return Ok(None) };
        let mut chain = vec![h.clone()];
        chain.extend(tail);
        let steps = if chain.len() == 1 { vec![] } else { state.steps_for(&chain) };
        let cert = ChainCertificate { chain, steps };
        validate_chain(grp, lambda, &cert).map_err(|e| Error::InvariantViolation(format!("chain failed validation: {e}")))?;
        Ok(Some(cert))
    }
}

struct PairSearch<'a> {
    search: &'a ChainSearch,
    lambda: ClassFunction,
    /// Within one pair, `e_Q(λ^{T})` is a function of `T`, so the subgroup
    /// alone keys the memo of exhausted subtrees and found tails.
    memo: RefCell<HashMap<Subgroup, Option<Vec<Subgroup>>>>,
    used: Cell<u64>,
}

impl PairSearch<'_> {
    fn dfs(&self, hi: &Subgroup) -> Result<Option<Vec<Subgroup>>> {
        let s = self.search;
        let grp = &s.group;
        if hi.order() == grp.order() {
            return Ok(Some(vec![]));
        }
        if let Some(r) = self.memo.borrow().get(hi) {
            return Ok(r.clone());
        }
        let e = e_q_induced(grp, &self.lambda, hi);
        let cen_g = e.centralizing_subgroup();
        // G first (the one-step chain), then overgroups normal in G, then
        // the rest; within each, smaller index and membership in Cen_G(e) first
        let mut candidates: Vec<usize> = (0..s.subgroups.len())
            .filter(|&j| s.subgroups[j].order() > hi.order() && hi.is_subgroup_of(&s.subgroups[j]))
            .collect();
        candidates.sort_by_key(|&j| {
            let c = &s.subgroups[j];
            (c.order() != grp.order(), !s.normal[j], c.order() / hi.order(), !c.is_subgroup_of(&cen_g), j)
        });
        for j in candidates {
            let used = self.used.get() + 1;
            if used > s.budget {
                return Err(Error::SearchBudgetExceeded { budget: s.budget });
            }
            self.used.set(used);
            let next = &s.subgroups[j];
            if check_step(grp, hi, next, &e, &cen_g).is_some() {
                if let Some(mut tail) = self.dfs(next)? {
                    tail.insert(0, next.clone());
                    self.memo.borrow_mut().insert(hi.clone(), Some(tail.clone()));
                    return Ok(Some(tail));
                }
            }
        }
        self.memo.borrow_mut().insert(hi.clone(), None);
        Ok(None)
    }

    fn steps_for(&self, chain: &[Subgroup]) -> Vec<ChainStep> {
        let grp = &self.search.group;
        chain
            .windows(2)
            .map(|w| {
                let e = e_q_induced(grp, &self.lambda, &w[0]);
                let cen_g = e.centralizing_subgroup();
                check_step(grp, &w[0], &w[1], &e, &cen_g).expect("step found by the search")
            })
            .collect()
    }
}

/// Search for a strong inductive chain for the pair `(H, K)` of `λ`.
/// Non-Shoda pairs have none, which is answered without searching.
pub fn find_strong_inductive_chain(group: &GroupRef, lambda: &LinearCharacter, budget: u64) -> Result<Option<ChainCertificate>> {
    if !is_shoda_pair(group, lambda.domain(), lambda.kernel()) {
        return Ok(None);
    }
    ChainSearch::new(group, budget)?.find(lambda)
}

/// Re-check a certificate from scratch, sharing no code with the search
/// beyond group arithmetic: the induced characters are checked irreducible,
/// centralizers and normality are computed element by element, and every
/// pair of distinct conjugates is multiplied out in both orders.
pub fn validate_chain(group: &GroupRef, lambda: &LinearCharacter, cert: &ChainCertificate) -> std::result::Result<(), String> {
    let chain = &cert.chain;
    if chain.first() != Some(lambda.domain()) {
        return Err("chain does not start at H".into());
    }
    if chain.last().map(Subgroup::order) != Some(group.order()) {
        return Err("chain does not end at G".into());
    }
    if cert.steps.len() + 1 != chain.len() {
        return Err("one step of evidence is required per link".into());
    }
    let lam = lambda.to_class_function(group);
    for (i, w) in chain.windows(2).enumerate() {
        let (hi, next) = (&w[0], &w[1]);
        if !(hi.is_subgroup_of(next) && hi.order() < next.order()) {
            return Err(format!("link {i} is not a proper inclusion"));
        }
        let psi = lam.induce(hi);
        let e = psi.e_q_of_char().map_err(|_| format!("λ induced to H_{i} is reducible"))?;
        let cen_members: Vec<usize> = next.members().iter().copied().filter(|&g| e.conjugate(g) == e).collect();
        if cen_members != cert.steps[i].centralizer.members() {
            return Err(format!("link {i}: recorded centralizer is wrong"));
        }
        let normal = cen_members.iter().all(|&g| hi.members().iter().all(|&x| hi.contains(group.conj(x, g))));
        if !normal {
            return Err(format!("link {i}: H_{i} is not normal in the centralizer"));
        }
        let mut conjugates: Vec<AlgebraElement> = Vec::new();
        for &g in next.members() {
            let c = e.conjugate(g);
            if !conjugates.contains(&c) {
                conjugates.push(c);
            }
        }
        if conjugates.len() != cert.steps[i].conjugators.len() {
            return Err(format!("link {i}: recorded number of conjugates is wrong"));
        }
        for (a, x) in conjugates.iter().enumerate() {
            for y in &conjugates[a + 1..] {
                if !x.are_orthogonal(y) {
                    return Err(format!("link {i}: two conjugates are not orthogonal"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::linear_characters_with_kernel;
    use crate::group::tests::perm_group;
    use crate::group::Permutation;
    use crate::shoda::is_strong_shoda_pair;
    use std::sync::Arc;

    fn el(g: &GroupRef, cycles: &[&[usize]], degree: usize) -> usize {
        let p = Permutation::from_cycles(&cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>(), degree).unwrap();
        g.index_of_permutation(&p).unwrap()
    }

    #[test]
    fn strong_pair_gives_one_step_chain() {
        let g: GroupRef = Arc::new(perm_group(&[&[&[1, 2, 3]], &[&[1, 2]]], 3));
        let c3 = Subgroup::generated(&g, &[el(&g, &[&[1, 2, 3]], 3)]);
        let lam = &linear_characters_with_kernel(&g, &c3, &g.trivial()).unwrap()[0];
        let cert = find_strong_inductive_chain(&g, lam, 1000).unwrap().unwrap();
        assert_eq!(cert.chain, vec![c3.clone(), g.whole()]);
        assert_eq!(cert.steps[0].centralizer, g.whole());
        assert_eq!(cert.steps[0].conjugators.len(), 1);
        assert!(validate_chain(&g, lam, &cert).is_ok());
    }

    #[test]
    fn non_shoda_pair_has_no_chain() {
        let g: GroupRef = Arc::new(perm_group(&[&[&[1, 2, 3]], &[&[1, 2]]], 3));
        let t = Subgroup::generated(&g, &[el(&g, &[&[1, 2]], 3)]);
        let lam = &linear_characters_with_kernel(&g, &t, &g.trivial()).unwrap()[0];
        assert_eq!(find_strong_inductive_chain(&g, lam, 0).unwrap(), None);
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let g: GroupRef = Arc::new(perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 3]]], 4));
        let c4 = Subgroup::generated(&g, &[el(&g, &[&[1, 2, 3, 4]], 4)]);
        let lam = &linear_characters_with_kernel(&g, &c4, &g.trivial()).unwrap()[0];
        let cert = find_strong_inductive_chain(&g, lam, 1000).unwrap().unwrap();
        let mut bad = cert.clone();
        assert_eq!(cert.steps[0].centralizer, g.whole());
        bad.steps[0].centralizer = c4.clone();
        assert!(validate_chain(&g, lam, &bad).is_err());
        let mut bad = cert.clone();
        bad.chain.remove(0);
        assert!(validate_chain(&g, lam, &bad).is_err());
        let mut bad = cert;
        bad.steps[0].conjugators.push(0);
        assert!(validate_chain(&g, lam, &bad).is_err());
    }

    #[test]
    fn every_strong_pair_certifies_with_one_step() {
        let g: GroupRef = Arc::new(perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 2]]], 4));
        let search = ChainSearch::new(&g, 1_000_000).unwrap();
        let subs = all_subgroups(&g, 512).unwrap();
        for h in &subs {
            for k in subs.iter().filter(|k| k.is_normal_in(&g, h)) {
                let lams = linear_characters_with_kernel(&g, h, k).unwrap();
                if let Some(lam) = lams.first() {
                    if is_strong_shoda_pair(&g, h, k) {
                        let cert = search.one_step(lam).expect("strong implies the one-step chain");
                        assert!(cert.len() <= 2);
                        assert_eq!(search.find(lam).unwrap().unwrap().chain, cert.chain);
                    }
                }
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g: GroupRef = Arc::new(perm_group(&[&[&[1, 2, 3]], &[&[1, 2]]], 3));
        let c3 = Subgroup::generated(&g, &[el(&g, &[&[1, 2, 3]], 3)]);
        let lam = &linear_characters_with_kernel(&g, &c3, &g.trivial()).unwrap()[0];
        assert_eq!(
            ChainSearch::new(&g, 0).unwrap().find(lam),
            Err(Error::SearchBudgetExceeded { budget: 0 })
        );
    }
}
