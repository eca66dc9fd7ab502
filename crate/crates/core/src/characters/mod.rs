//! Class functions, linear characters, induction, and the idempotents
//! `e(χ)` and `e_Q(χ)`.
//!
//! Every class function lives on a subgroup `D` of a fixed parent group `G`
//! (possibly `D = G`) and takes values in `Q(ζ_N)` with `N = exp(G)`, so
//! functions on different subgroups of one parent can be compared and
//! induced without changing fields.

mod monomial;
mod table;

use std::sync::Arc;

use num_integer::Integer;

use crate::algebra::{AlgebraElement, GroupAlgebraElement};
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes_of, ConjugacyClassPartition, GroupRef, Subgroup};

pub use monomial::{
    is_monomial_char, is_monomial_in, is_supermonomial_char, is_supermonomial_group, MonomialWitness, SupermonomialChecker,
    DEFAULT_SUPERMONOMIAL_BOUND,
};
pub use table::{character_table, character_table_of, oracle_prime, CharacterTable, DEFAULT_ORACLE_BOUND};

/// A subgroup of the parent group together with its conjugacy classes.
#[derive(Debug, Clone)]
pub struct Domain {
    group: GroupRef,
    subgroup: Subgroup,
    classes: Arc<ConjugacyClassPartition>,
}

impl Domain {
    pub fn new(group: &GroupRef, subgroup: Subgroup) -> Self {
        let classes = Arc::new(conjugacy_classes_of(group, &subgroup));
        Domain { group: group.clone(), subgroup, classes }
    }

    pub fn whole(group: &GroupRef) -> Self {
        Self::new(group, group.whole())
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn classes(&self) -> &ConjugacyClassPartition {
        &self.classes
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    /// Conductor of the value field shared by all class functions of the parent.
    pub fn conductor(&self) -> u32 {
        self.group.exponent()
    }
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.subgroup == other.subgroup
    }
}

/// A function on a [`Domain`] constant on its conjugacy classes.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    domain: Domain,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.values == other.values
    }
}

impl ClassFunction {
    /// Values are given per class of the domain, in class order.
    pub fn new(domain: Domain, values: Vec<Cyclotomic>) -> Self {
        assert_eq!(values.len(), domain.classes.len());
        let n = domain.conductor();
        assert!(values.iter().all(|v| v.conductor() == n), "class function values must lie in Q(ζ_{n})");
        ClassFunction { domain, values }
    }

    pub fn trivial(domain: Domain) -> Self {
        let n = domain.conductor();
        let values = vec![Cyclotomic::one(n); domain.classes.len()];
        ClassFunction { domain, values }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Value at an element of the domain (a parent element index).
    pub fn value_at(&self, x: usize) -> &Cyclotomic {
        &self.values[self.domain.classes.class_of(x)]
    }

    /// `χ(1)`, rational for characters.
    pub fn degree(&self) -> Rational {
        self.values[0].as_rational().expect("value at the identity is rational")
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        assert!(self.domain == other.domain);
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        ClassFunction { domain: self.domain.clone(), values }
    }

    /// `⟨f, g⟩ = (1/|D|) Σ_x f(x) conj(g(x))`.
    pub fn inner_product(&self, other: &ClassFunction) -> Cyclotomic {
        assert!(self.domain == other.domain);
        let n = self.domain.conductor();
        let mut acc = Cyclotomic::zero(n);
        for (c, (a, b)) in self.values.iter().zip(&other.values).enumerate() {
            let size = Rational::from_integer(self.domain.classes.size(c) as i64);
            acc = &acc + &(a * &b.complex_conjugate()).scale(&size);
        }
        acc.scale(&Rational::new(1, self.domain.order() as i64))
    }

    pub fn norm(&self) -> Rational {
        self.inner_product(self).as_rational().expect("⟨χ,χ⟩ is rational")
    }

    /// `⟨χ, χ⟩ = 1`.
    pub fn is_irreducible(&self) -> bool {
        self.norm().is_one()
    }

    /// `σ_k ∘ χ`.
    pub fn galois_twist(&self, k: i64) -> Result<ClassFunction> {
        let values = self.values.iter().map(|v| v.galois_apply(k)).collect::<Result<_>>()?;
        Ok(ClassFunction { domain: self.domain.clone(), values })
    }

    /// The distinct Galois twists `σ∘χ`, starting with `χ` itself.
    pub fn galois_orbit(&self) -> Vec<ClassFunction> {
        let mut orbit: Vec<ClassFunction> = Vec::new();
        for k in Cyclotomic::galois_units(self.domain.conductor()) {
            let t = self.galois_twist(k).expect("unit");
            if !orbit.contains(&t) {
                orbit.push(t);
            }
        }
        orbit
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, to: &Subgroup) -> ClassFunction {
        assert!(to.is_subgroup_of(&self.domain.subgroup));
        let domain = Domain::new(&self.domain.group, to.clone());
        let values = domain.classes.representatives().iter().map(|&x| self.value_at(x).clone()).collect();
        ClassFunction { domain, values }
    }

    /// Induction to an overgroup `T` of the domain:
    /// `f^T(g) = Σ_t f°(t g t⁻¹)` over a right transversal `{t}` of `D` in
    /// `T`, where `f°` vanishes off `D`.
    pub fn induce(&self, to: &Subgroup) -> ClassFunction {
        self.induce_to(&Domain::new(&self.domain.group, to.clone()))
    }

    pub fn induce_to(&self, target: &Domain) -> ClassFunction {
        let grp = &self.domain.group;
        let d = &self.domain.subgroup;
        assert!(d.is_subgroup_of(&target.subgroup), "induction target must contain the domain");
        let n = self.domain.conductor();
        let transversal = d.right_transversal(grp, &target.subgroup);
        let values = target
            .classes
            .representatives()
            .iter()
            .map(|&g| {
                let mut acc = Cyclotomic::zero(n);
                for &t in &transversal {
                    // t g t⁻¹ = conj(g, t⁻¹)
                    let y = grp.conj(g, grp.inv(t));
                    if d.contains(y) {
                        acc = &acc + self.value_at(y);
                    }
                }
                acc
            })
            .collect();
        ClassFunction { domain: target.clone(), values }
    }

    /// `e(χ) = (χ(1)/|D|) Σ_{g∈D} χ(g) g⁻¹`, in the parent's complex group
    /// algebra with cyclotomic coefficients.
    pub fn e_of_char(&self) -> Result<GroupAlgebraElement<Cyclotomic>> {
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let scale = &self.degree() * &Rational::new(1, self.domain.order() as i64);
        let grp = &self.domain.group;
        let terms = self.domain.subgroup.members().iter().map(|&g| (grp.inv(g), self.value_at(g).scale(&scale)));
        Ok(GroupAlgebraElement::from_terms(grp, terms))
    }

    /// `e_Q(χ) = Σ e(σ∘χ)` over the distinct Galois twists; a central
    /// idempotent with rational coefficients.
    pub fn e_q_of_char(&self) -> Result<AlgebraElement> {
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        Ok(self.e_q_unchecked())
    }

    /// `e_Q(χ)` without the irreducibility check, computed per class: the
    /// coefficient of `g` is `(χ(1)/|D|) Σ_σ σ(χ(g⁻¹))`.
    pub(crate) fn e_q_unchecked(&self) -> AlgebraElement {
        let orbit = self.galois_orbit();
        let n = self.domain.conductor();
        let scale = &self.degree() * &Rational::new(1, self.domain.order() as i64);
        let classes = &self.domain.classes;
        let inverse = classes.inverse_classes(&self.domain.group);
        let per_class: Vec<Rational> = (0..classes.len())
            .map(|c| {
                let mut acc = Cyclotomic::zero(n);
                for t in &orbit {
                    acc = &acc + &t.values[inverse[c]];
                }
                &acc.as_rational().expect("a Galois orbit sum is rational") * &scale
            })
            .collect();
        let terms = classes.classes().iter().enumerate().flat_map(|(c, members)| {
            let q = per_class[c].clone();
            members.iter().map(move |&g| (g, q.clone()))
        });
        AlgebraElement::from_terms(&self.domain.group, terms)
    }
}

/// A linear character of `H` with kernel exactly `K`: the coset generator
/// `h₀K` of the cyclic quotient maps to `ζ_m^e` with `m = |H/K|`.
#[derive(Debug, Clone)]
pub struct LinearCharacter {
    domain: Subgroup,
    kernel: Subgroup,
    coset_generator: usize,
    quotient_order: usize,
    exponent: usize,
    /// For each parent element in `H`, the `j` with `h ∈ h₀^j K`.
    coset_index: Vec<u32>,
    conductor: u32,
}

impl LinearCharacter {
    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn coset_generator(&self) -> usize {
        self.coset_generator
    }

    pub fn quotient_order(&self) -> usize {
        self.quotient_order
    }

    /// The exponent `e` in `h₀K ↦ ζ_m^e`.
    pub fn generator_image(&self) -> usize {
        self.exponent
    }

    /// `λ(h)` as a power of `ζ_N`; `None` off the domain.
    pub fn value_exponent(&self, h: usize) -> Option<usize> {
        let j = self.coset_index[h];
        (j != u32::MAX).then(|| {
            let n = self.conductor as usize;
            (j as usize * self.exponent * (n / self.quotient_order)) % n
        })
    }

    pub fn value(&self, h: usize) -> Option<Cyclotomic> {
        self.value_exponent(h).map(|e| Cyclotomic::root_of_unity(self.conductor, e as i64))
    }

    pub fn to_class_function(&self, group: &GroupRef) -> ClassFunction {
        let domain = Domain::new(group, self.domain.clone());
        let values = domain.classes.representatives().iter().map(|&x| self.value(x).expect("in domain")).collect();
        ClassFunction { domain, values }
    }

    /// `λ^T` for an overgroup `T` of the domain.
    pub fn induce(&self, group: &GroupRef, to: &Domain) -> ClassFunction {
        self.to_class_function(group).induce_to(to)
    }
}

/// The `φ(|H/K|)` linear characters of `H` with kernel exactly `K`; empty when
/// `H/K` is not cyclic.
pub fn linear_characters_with_kernel(group: &GroupRef, h: &Subgroup, k: &Subgroup) -> Result<Vec<LinearCharacter>> {
    if !k.is_normal_in(group, h) {
        return Err(Error::NotNormal);
    }
    let Some(h0) = h.cyclic_quotient_generator(group, k) else {
        return Ok(Vec::new());
    };
    let m = h.order() / k.order();
    let mut coset_index = vec![u32::MAX; group.order()];
    let mut x = 0;
    for j in 0..m {
        for &kk in k.members() {
            coset_index[group.mul(x, kk)] = j as u32;
        }
        x = group.mul(x, h0);
    }
    let exponents: Vec<usize> = if m == 1 { vec![0] } else { (1..m).filter(|e| e.gcd(&m) == 1).collect() };
    Ok(exponents
        .into_iter()
        .map(|e| LinearCharacter {
            domain: h.clone(),
            kernel: k.clone(),
            coset_generator: h0,
            quotient_order: m,
            exponent: e,
            coset_index: coset_index.clone(),
            conductor: group.exponent(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::epsilon;
    use crate::group::all_subgroups;
    use crate::group::tests::perm_group;

    pub(crate) fn s3() -> GroupRef {
        Arc::new(perm_group(&[&[&[1, 2, 3]], &[&[1, 2]]], 3))
    }

    fn el(g: &GroupRef, label: &str) -> usize {
        (0..g.order()).find(|&i| g.label(i) == label).unwrap()
    }

    fn ints(n: u32, v: &[i64]) -> Vec<Cyclotomic> {
        v.iter().map(|&x| Cyclotomic::from_rational(n, Rational::from_integer(x))).collect()
    }

    #[test]
    fn linear_character_counts() {
        let g = s3();
        let c3 = Subgroup::generated(&g, &[el(&g, "(1,2,3)")]);
        assert_eq!(linear_characters_with_kernel(&g, &c3, &g.trivial()).unwrap().len(), 2);
        assert_eq!(linear_characters_with_kernel(&g, &c3, &c3).unwrap().len(), 1);
        let t = Subgroup::generated(&g, &[el(&g, "(1,2)")]);
        assert_eq!(linear_characters_with_kernel(&g, &g.whole(), &t).unwrap_err(), Error::NotNormal);

        let c4 = Arc::new(perm_group(&[&[&[1, 2, 3, 4]]], 4));
        let a = el(&c4, "(1,2,3,4)");
        let a2 = Subgroup::generated(&c4, &[c4.mul(a, a)]);
        assert_eq!(linear_characters_with_kernel(&c4, &c4.whole(), &a2).unwrap().len(), 1);

        let v4 = Arc::new(perm_group(&[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]], 4));
        assert!(linear_characters_with_kernel(&v4, &v4.whole(), &v4.trivial()).unwrap().is_empty());
    }

    #[test]
    fn linear_characters_are_homomorphisms_with_the_right_kernel() {
        let g: GroupRef = Arc::new(perm_group(&[&[&[1, 2, 3, 4, 5, 6]], &[&[7, 8, 9]]], 9));
        for k in all_subgroups(&g, 512).unwrap() {
            for lam in linear_characters_with_kernel(&g, &g.whole(), &k).unwrap() {
                let n = g.exponent() as usize;
                for x in 0..g.order() {
                    for y in 0..g.order() {
                        let lhs = lam.value_exponent(g.mul(x, y)).unwrap();
                        assert_eq!(lhs, (lam.value_exponent(x).unwrap() + lam.value_exponent(y).unwrap()) % n);
                    }
                    assert_eq!(lam.value_exponent(x) == Some(0), k.contains(x));
                }
            }
        }
    }

    #[test]
    fn induction_from_c3_to_s3() {
        let g = s3();
        let c3 = Subgroup::generated(&g, &[el(&g, "(1,2,3)")]);
        let lam = &linear_characters_with_kernel(&g, &c3, &g.trivial()).unwrap()[0];
        let psi = lam.induce(&g, &Domain::whole(&g));
        // classes: identity, 3-cycles, transpositions
        assert_eq!(psi.values(), ints(6, &[2, -1, 0]).as_slice());
        assert!(psi.is_irreducible());
        assert_eq!(psi.degree(), Rational::from_integer(2));

        let triv = ClassFunction::trivial(Domain::whole(&g));
        assert_eq!(triv.induce(&g.whole()), triv);
        assert!(triv.is_irreducible());
        assert!(!triv.add(&psi).is_irreducible());

        let t = Subgroup::generated(&g, &[el(&g, "(1,2)")]);
        let from_t = ClassFunction::trivial(Domain::new(&g, t));
        assert_eq!(from_t.induce(&g.whole()).degree(), Rational::from_integer(3));
    }

    #[test]
    fn idempotents_of_characters() {
        let g = s3();
        let c = el(&g, "(1,2,3)");
        let c3 = Subgroup::generated(&g, &[c]);
        let lam = &linear_characters_with_kernel(&g, &c3, &g.trivial()).unwrap()[0];
        let chi = lam.induce(&g, &Domain::whole(&g));
        let e = chi.e_of_char().unwrap().to_rational().unwrap();
        assert_eq!(e, AlgebraElement::one(&g).sub(&AlgebraElement::hat(&g, &c3)));
        assert_eq!(chi.e_q_of_char().unwrap(), e);

        let triv = ClassFunction::trivial(Domain::whole(&g));
        assert_eq!(triv.e_of_char().unwrap().to_rational().unwrap(), AlgebraElement::hat(&g, &g.whole()));

        // sign character
        let sign = ClassFunction::new(Domain::whole(&g), ints(6, &[1, 1, -1]));
        let e_sign = sign.e_of_char().unwrap().to_rational().unwrap();
        assert!(e_sign.terms().all(|(_, q)| q.abs() == Rational::new(1, 6)));
        assert!(e_sign.is_idempotent());

        let reducible = triv.add(&sign);
        assert_eq!(reducible.e_of_char().unwrap_err(), Error::NotIrreducible);
        assert_eq!(reducible.e_q_of_char().unwrap_err(), Error::NotIrreducible);

        // faithful linear character of C3 on its own: e(λ) is not rational,
        // but the Galois orbit sum is e - Ĉ₃
        let lam_c3 = lam.to_class_function(&g);
        assert!(lam_c3.e_of_char().unwrap().to_rational().is_none());
        assert_eq!(lam_c3.e_q_of_char().unwrap(), AlgebraElement::one(&g).sub(&AlgebraElement::hat(&g, &c3)));
    }

    #[test]
    fn eq_of_faithful_character_of_c4() {
        let c4 = Arc::new(perm_group(&[&[&[1, 2, 3, 4]]], 4));
        let lams = linear_characters_with_kernel(&c4, &c4.whole(), &c4.trivial()).unwrap();
        assert_eq!(lams.len(), 2);
        let eps = epsilon(&c4, &c4.whole(), &c4.trivial()).unwrap();
        for lam in lams {
            assert_eq!(lam.to_class_function(&c4).e_q_of_char().unwrap(), eps);
        }
    }

    /// `e_Q(λ) = ε(H, K)` for every `K ⊴ H` with cyclic quotient.
    #[test]
    fn eq_of_linear_equals_epsilon() {
        let groups = [
            s3(),
            Arc::new(perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 2]]], 4)),
            Arc::new(perm_group(&[&[&[1, 2, 5, 6], &[3, 8, 7, 4]], &[&[1, 3, 5, 7], &[2, 4, 6, 8]]], 8)),
            Arc::new(perm_group(&[&[&[1, 2, 3, 4, 5, 6]], &[&[7, 8]]], 8)),
        ];
        for g in groups {
            let subs = all_subgroups(&g, 512).unwrap();
            for h in &subs {
                for k in subs.iter().filter(|k| k.is_normal_in(&g, h)) {
                    let eps = epsilon(&g, h, k).unwrap();
                    for lam in linear_characters_with_kernel(&g, h, k).unwrap() {
                        assert_eq!(lam.to_class_function(&g).e_q_of_char().unwrap(), eps);
                    }
                }
            }
        }
    }

    #[test]
    fn twisting_commutes_with_induction_and_induction_is_transitive() {
        let g: GroupRef = Arc::new(perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 2]]], 4));
        let subs = all_subgroups(&g, 512).unwrap();
        let whole = Domain::whole(&g);
        for h in &subs {
            for k in subs.iter().filter(|k| k.is_normal_in(&g, h)) {
                for lam in linear_characters_with_kernel(&g, h, k).unwrap() {
                    let f = lam.to_class_function(&g);
                    let direct = f.induce_to(&whole);
                    for u in Cyclotomic::galois_units(g.exponent()) {
                        assert_eq!(f.galois_twist(u).unwrap().induce_to(&whole), direct.galois_twist(u).unwrap());
                    }
                    for mid in subs.iter().filter(|m| h.is_subgroup_of(m)) {
                        assert_eq!(f.induce(mid).induce_to(&whole), direct);
                    }
                }
            }
        }
    }
}
