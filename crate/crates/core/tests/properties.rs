//! Structural invariants on random permutation groups of small degree.

use std::sync::Arc;

use proptest::prelude::*;

use wedderkit::algebra::AlgebraElement;
use wedderkit::characters::{character_table, linear_characters_with_kernel, Domain};
use wedderkit::config::AnalysisConfig;
use wedderkit::constructions::{composition_series_prime_factors, dade_embedding, direct_product};
use wedderkit::dsl::parse_group;
use wedderkit::group::{normalizer, FiniteGroup, GroupRef, Permutation, SubgroupLattice};
use wedderkit::shoda::{classify_group, is_shoda_pair, Level, Tristate};
use wedderkit::Error;

fn arb_permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

/// Subgroups of S_d for d ≤ 5, from one to three random generators.
fn arb_group() -> impl Strategy<Value = (Vec<Permutation>, GroupRef)> {
    (1usize..=5)
        .prop_flat_map(|d| prop::collection::vec(arb_permutation(d), 1..=3))
        .prop_map(|gens| {
            let g = FiniteGroup::from_permutation_generators(&gens, 1000).unwrap();
            (gens, Arc::new(g))
        })
}

fn spec_of(gens: &[Permutation]) -> String {
    let parts: Vec<String> = gens.iter().map(ToString::to_string).collect();
    format!("perm:{}", parts.join(";"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn subgroups_obey_lagrange_and_normalizers((_, g) in arb_group()) {
        let lattice = SubgroupLattice::new(&g, 1000).unwrap();
        for s in lattice.subgroups() {
            prop_assert_eq!(g.order() % s.order(), 0);
            let n = normalizer(&g, s);
            prop_assert!(s.is_subgroup_of(&n));
            prop_assert!(s.is_normal_in(&g, &n));
        }
    }

    #[test]
    fn cayley_tables_round_trip((_, g) in arb_group()) {
        let back = FiniteGroup::parse_table(&g.to_table_string()).unwrap();
        prop_assert_eq!(back.order(), g.order());
        for a in 0..g.order() {
            for b in 0..g.order() {
                prop_assert_eq!(back.mul(a, b), g.mul(a, b));
            }
        }
    }

    #[test]
    fn printed_generators_parse_back((gens, g) in arb_group()) {
        let again = parse_group(&spec_of(&gens), 1000).unwrap();
        prop_assert_eq!(again.order(), g.order());
    }

    #[test]
    fn shoda_pairs_induce_irreducibles((_, g) in arb_group()) {
        let lattice = SubgroupLattice::new(&g, 1000).unwrap();
        let whole = Domain::whole(&g);
        for h in lattice.subgroups() {
            for k in lattice.subgroups().iter().filter(|k| k.is_subgroup_of(h) && k.is_normal_in(&g, h)) {
                let lambdas = linear_characters_with_kernel(&g, h, k).unwrap();
                let Some(lambda) = lambdas.first() else { continue };
                let psi = lambda.induce(&g, &whole);
                prop_assert_eq!(is_shoda_pair(&g, h, k), psi.is_irreducible());
            }
        }
    }

    #[test]
    fn character_degrees_square_to_the_order((_, g) in arb_group()) {
        let table = character_table(&g, 1000).unwrap();
        prop_assert_eq!(table.len(), table.domain().classes().len());
        let total: i64 = table.degrees().iter().map(|d| d * d).sum();
        prop_assert_eq!(total, g.order() as i64);
    }

    #[test]
    fn classification_is_coherent((_, g) in arb_group()) {
        let r = classify_group(&g, "random", &AnalysisConfig::default()).unwrap();
        let f = &r.flags;
        if f.strongly_monomial {
            prop_assert_eq!(f.generalized_strongly_monomial, Tristate::True);
        }
        if f.generalized_strongly_monomial == Tristate::True {
            prop_assert!(f.monomial);
        }
        let shoda = r.level_set(Level::Shoda).unwrap();
        prop_assert_eq!(shoda.covered_dimension + r.uncovered_dimension, g.order());
        prop_assert_eq!(shoda.idempotent_sum_is_one, f.monomial);
        let sum = r.shoda_idempotents.iter().fold(AlgebraElement::zero(&g), |acc, e| acc.add(e));
        prop_assert!(sum.is_idempotent());
        prop_assert_eq!(sum == AlgebraElement::one(&g), f.monomial);
        for e in &r.shoda_idempotents {
            prop_assert!(e.is_central() && e.is_idempotent());
        }
    }

    #[test]
    fn dade_embeddings_are_faithful((_, g) in arb_group()) {
        match dade_embedding(&g, None, 2000) {
            Ok(d) => {
                prop_assert!(d.map.is_homomorphism());
                prop_assert!(d.map.is_injective());
                let primes = &d.series.factor_primes;
                prop_assert_eq!(primes.iter().product::<usize>(), g.order());
            }
            Err(Error::NotSolvable) => prop_assert!(composition_series_prime_factors(&g).is_err()),
            Err(Error::GroupTooLarge { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn products_multiply_orders(((_, a), (_, b)) in (arb_group(), arb_group())) {
        prop_assume!(a.order() * b.order() <= 2000);
        let p = direct_product(&a, &b, 2000).unwrap();
        prop_assert_eq!(p.group.order(), a.order() * b.order());
        prop_assert!(p.left.is_homomorphism() && p.left.is_injective());
        prop_assert!(p.right.is_homomorphism() && p.right.is_injective());
    }
}
