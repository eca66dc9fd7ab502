//! Shoda, strong Shoda and generalized strong Shoda pairs, and the
//! classification of groups by the idempotents these pairs produce.

mod chain;
mod classify;

use serde::{Serialize, Serializer};

use crate::algebra::{e_of, epsilon, AlgebraElement};
use crate::characters::{linear_characters_with_kernel, ClassFunction, Domain, LinearCharacter};
use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::group::{commutator_set, normalizer, GroupRef, Subgroup};

pub use chain::{
    find_strong_inductive_chain, validate_chain, ChainCertificate, ChainDescription, ChainSearch, ChainStep,
};
pub use classify::{
    classify_group, cross_validate, cross_validate_report, CoverageReport, CrossValidation, Flags, LevelSet, PairRecord,
    Tristate,
};

/// How far a pair `(H, K)` gets up the hierarchy of conditions.
///
/// `Undetermined` marks a Shoda pair whose chain search ran out of budget:
/// it is known to be Shoda, and whether it is generalized strong is open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    NotShoda,
    Shoda,
    Undetermined,
    GeneralizedStrongShoda,
    StrongShoda,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::NotShoda => "not_shoda",
            Level::Shoda => "shoda",
            Level::Undetermined => "unknown",
            Level::GeneralizedStrongShoda => "generalized_strong_shoda",
            Level::StrongShoda => "strong_shoda",
        }
    }

    pub fn is_shoda(self) -> bool {
        self >= Level::Shoda
    }

    pub fn is_generalized(self) -> bool {
        self >= Level::GeneralizedStrongShoda
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// `H/K` cyclic with `K ⊴ H`.
fn has_cyclic_quotient(group: &GroupRef, h: &Subgroup, k: &Subgroup) -> bool {
    k.is_normal_in(group, h) && h.cyclic_quotient_generator(group, k).is_some()
}

/// `K ⊴ H`, `H/K` cyclic, and for every `g ∈ G`: `[H,g] ∩ H ⊆ K ⇒ g ∈ H`.
///
/// `[H,g]` is the set of commutators `[h,g]`, not the subgroup they
/// generate: `[h,g] ∈ H \ K` says exactly that `λ` and its `g`-conjugate
/// differ at `h ∈ H ∩ H^{g⁻¹}`, which is Mackey's criterion.
pub fn is_shoda_pair(group: &GroupRef, h: &Subgroup, k: &Subgroup) -> bool {
    if !has_cyclic_quotient(group, h, k) {
        return false;
    }
    (0..group.order()).filter(|&g| !h.contains(g)).all(|g| {
        commutator_set(group, h, g).iter().any(|&x| h.contains(x) && !k.contains(x))
    })
}

/// A Shoda pair with `H ⊴ N_G(K)` and `ε(H,K)·ε(H,K)^g = 0` for every `g`
/// outside `N_G(K)`.
pub fn is_strong_shoda_pair(group: &GroupRef, h: &Subgroup, k: &Subgroup) -> bool {
    if !is_shoda_pair(group, h, k) {
        return false;
    }
    let n = normalizer(group, k);
    if !h.is_normal_in(group, &n) {
        return false;
    }
    let eps = epsilon(group, h, k).expect("K normal in H");
    // ε^g depends only on the coset N g, since N fixes ε
    n.right_transversal(group, &group.whole())
        .into_iter()
        .filter(|&g| !n.contains(g))
        .all(|g| eps.mul(&eps.conjugate(g)).is_zero())
}

/// The unique `q` with `a = q·b`, by comparing coefficients.
pub fn rational_multiple_of(a: &AlgebraElement, b: &AlgebraElement) -> Result<Rational> {
    let Some((x, bx)) = b.terms().next() else {
        return if a.is_zero() { Ok(Rational::zero()) } else { Err(Error::InconsistentMultiple) };
    };
    let ax = a.coefficient(x).cloned().unwrap_or_else(Rational::zero);
    let q = &ax / bx;
    if *a == b.scale(&q) {
        Ok(q)
    } else {
        Err(Error::InconsistentMultiple)
    }
}

/// `q` with `e_Q(λ^G) = q·e(G,H,K)` for a Shoda pair and a linear `λ` with
/// kernel `K`.
pub fn rational_multiple(group: &GroupRef, lambda: &LinearCharacter) -> Result<Rational> {
    let psi = lambda.induce(group, &Domain::whole(group));
    let eq = psi.e_q_of_char()?;
    let e = e_of(group, lambda.domain(), lambda.kernel())?;
    rational_multiple_of(&eq, &e)
}

/// Everything known about one pair `(H, K)` of a group.
#[derive(Debug, Clone)]
pub struct PairVerdict {
    pub h: Subgroup,
    pub k: Subgroup,
    pub level: Level,
    pub chain: Option<ChainCertificate>,
    /// `e_Q(λ^G)` for the first linear character with kernel `K`; present
    /// for Shoda pairs.
    pub idempotent: Option<AlgebraElement>,
    /// `q` with `e_Q(λ^G) = q·e(G,H,K)`; present for Shoda pairs.
    pub multiple: Option<Rational>,
}

/// Evaluate a pair completely. `K ⊴ H` with `H/K` cyclic is required.
///
/// Structural Shoda verdicts are cross-checked against irreducibility of
/// `λ^G`; a disagreement is reported as an invariant violation.
pub fn evaluate_pair(group: &GroupRef, h: &Subgroup, k: &Subgroup, search: &ChainSearch) -> Result<PairVerdict> {
    let lambdas = linear_characters_with_kernel(group, h, k)?;
    let lambda = lambdas.first().ok_or_else(|| Error::InvariantViolation("H/K is not cyclic".into()))?;
    evaluate_pair_with(group, lambda, search)
}

/// [`evaluate_pair`] for a chosen linear character.
pub fn evaluate_pair_with(group: &GroupRef, lambda: &LinearCharacter, search: &ChainSearch) -> Result<PairVerdict> {
    let (h, k) = (lambda.domain().clone(), lambda.kernel().clone());
    let whole = Domain::whole(group);
    let psi: ClassFunction = lambda.induce(group, &whole);
    let shoda = is_shoda_pair(group, &h, &k);
    if shoda != psi.is_irreducible() {
        return Err(Error::InvariantViolation(format!(
            "Shoda condition and irreducibility of the induced character disagree for a pair of orders ({}, {})",
            h.order(),
            k.order()
        )));
    }
    if !shoda {
        return Ok(PairVerdict { h, k, level: Level::NotShoda, chain: None, idempotent: None, multiple: None });
    }
    let eq = psi.e_q_unchecked();
    let multiple = rational_multiple_of(&eq, &e_of(group, &h, &k)?)?;
    let (level, chain) = if is_strong_shoda_pair(group, &h, &k) {
        let cert = search.one_step(lambda).ok_or_else(|| {
            Error::InvariantViolation("strong Shoda pair without a one-step strong inductive chain".into())
        })?;
        (Level::StrongShoda, Some(cert))
    } else {
        match search.find(lambda) {
            Ok(Some(cert)) => (Level::GeneralizedStrongShoda, Some(cert)),
            Ok(None) => (Level::Shoda, None),
            Err(Error::SearchBudgetExceeded { .. }) => (Level::Undetermined, None),
            Err(e) => return Err(e),
        }
    };
    Ok(PairVerdict { h, k, level, chain, idempotent: Some(eq), multiple: Some(multiple) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::perm_group;
    use crate::group::{all_subgroups, Permutation};
    use std::sync::Arc;

    fn el(g: &GroupRef, cycles: &[&[usize]], degree: usize) -> usize {
        let p = Permutation::from_cycles(&cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>(), degree).unwrap();
        g.index_of_permutation(&p).unwrap()
    }

    fn s3() -> GroupRef {
        Arc::new(perm_group(&[&[&[1, 2, 3]], &[&[1, 2]]], 3))
    }

    #[test]
    fn shoda_examples_in_s3() {
        let g = s3();
        let c3 = Subgroup::generated(&g, &[el(&g, &[&[1, 2, 3]], 3)]);
        let t = Subgroup::generated(&g, &[el(&g, &[&[1, 2]], 3)]);
        assert!(is_shoda_pair(&g, &c3, &g.trivial()));
        assert!(!is_shoda_pair(&g, &t, &g.trivial()));
        // the witness: (1,3) ∉ H but [H,(1,3)] ∩ H is trivial
        let w = el(&g, &[&[1, 3]], 3);
        assert!(commutator_set(&g, &t, w).iter().all(|&x| !t.contains(x) || g.trivial().contains(x)));
        assert!(is_shoda_pair(&g, &g.whole(), &g.whole()));
        assert!(is_strong_shoda_pair(&g, &c3, &g.trivial()));
        assert!(is_strong_shoda_pair(&g, &g.whole(), &c3));
        assert!(!is_shoda_pair(&g, &g.whole(), &g.trivial()));
    }

    #[test]
    fn strong_pair_in_d4() {
        let g: GroupRef = Arc::new(perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 3]]], 4));
        let c4 = Subgroup::generated(&g, &[el(&g, &[&[1, 2, 3, 4]], 4)]);
        assert!(is_strong_shoda_pair(&g, &c4, &g.trivial()));
    }

    #[test]
    fn multiples() {
        let g = s3();
        let c3 = Subgroup::generated(&g, &[el(&g, &[&[1, 2, 3]], 3)]);
        let lam = &linear_characters_with_kernel(&g, &c3, &g.trivial()).unwrap()[0];
        assert_eq!(rational_multiple(&g, lam).unwrap(), Rational::one());
        let triv = &linear_characters_with_kernel(&g, &g.whole(), &g.whole()).unwrap()[0];
        assert_eq!(rational_multiple(&g, triv).unwrap(), Rational::one());
        let a = AlgebraElement::one(&g);
        assert_eq!(rational_multiple_of(&a, &AlgebraElement::hat(&g, &c3)), Err(Error::InconsistentMultiple));
    }

    /// Shoda's criterion: the structural condition holds exactly when `λ^G`
    /// is irreducible; and strong pairs give idempotent multiples of e(G,H,K).
    #[test]
    fn shoda_condition_matches_irreducibility() {
        let groups: Vec<GroupRef> = vec![
            s3(),
            Arc::new(perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 2]]], 4)),
            Arc::new(perm_group(&[&[&[3, 4, 5], &[6, 8, 7]], &[&[1, 3, 2, 6], &[4, 5, 8, 7]]], 8)),
            Arc::new(perm_group(&[&[&[1, 2, 3, 4, 5]], &[&[2, 5], &[3, 4]]], 5)),
            Arc::new(perm_group(&[&[&[1, 2, 3]], &[&[4, 5, 6]], &[&[1, 4], &[2, 5], &[3, 6]]], 6)),
        ];
        for g in groups {
            let whole = Domain::whole(&g);
            let subs = all_subgroups(&g, 512).unwrap();
            for h in &subs {
                for k in subs.iter().filter(|k| has_cyclic_quotient(&g, h, k)) {
                    let lams = linear_characters_with_kernel(&g, h, k).unwrap();
                    let irreducible = lams[0].induce(&g, &whole).is_irreducible();
                    assert_eq!(is_shoda_pair(&g, h, k), irreducible);
                    if is_strong_shoda_pair(&g, h, k) {
                        let q = rational_multiple(&g, &lams[0]).unwrap();
                        assert!(e_of(&g, h, k).unwrap().scale(&q).is_idempotent());
                    }
                }
            }
        }
    }

    /// Every λ with kernel K gives the same e_Q(λ^G) and the same verdict.
    #[test]
    fn verdicts_do_not_depend_on_the_character() {
        let g: GroupRef = Arc::new(perm_group(&[&[&[1, 2, 3, 4, 5]], &[&[2, 3, 5, 4]]], 5));
        assert_eq!(g.order(), 20);
        let search = ChainSearch::new(&g, 1_000_000).unwrap();
        let subs = all_subgroups(&g, 512).unwrap();
        for h in &subs {
            for k in subs.iter().filter(|k| has_cyclic_quotient(&g, h, k)) {
                let verdicts: Vec<PairVerdict> = linear_characters_with_kernel(&g, h, k)
                    .unwrap()
                    .iter()
                    .map(|lam| evaluate_pair_with(&g, lam, &search).unwrap())
                    .collect();
                for v in &verdicts[1..] {
                    assert_eq!(v.level, verdicts[0].level);
                    assert_eq!(v.idempotent, verdicts[0].idempotent);
                    assert_eq!(v.multiple, verdicts[0].multiple);
                }
            }
        }
    }
}
