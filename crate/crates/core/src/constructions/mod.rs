//! Group constructors: the named families, direct products, wreath products
//! by cyclic groups, and the embedding of a solvable group into an iterated
//! wreath tower.

mod dade;
mod series;
mod suite;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHomomorphism, GroupRef, Permutation, Subgroup};

pub use dade::{dade_embedding, tower_order, DadeEmbedding, EmbeddingReport};
pub use series::{composition_series_prime_factors, derived_series, derived_subgroup, SeriesWithPrimeFactors};
pub use suite::{verify_theorem_suite, InstanceReport, InstanceVerdict, Suite, SuiteReport};

fn perm(cycles: &[Vec<usize>], degree: usize) -> Permutation {
    Permutation::from_cycles(cycles, degree).expect("family generators are valid")
}

fn close(gens: &[Permutation], bound: usize) -> Result<GroupRef> {
    Ok(Arc::new(FiniteGroup::from_permutation_generators(gens, bound)?))
}

/// Like `close`, but keeps the action on all `degree` points even when
/// there are no generators.
fn close_on(mut gens: Vec<Permutation>, degree: usize, bound: usize) -> Result<GroupRef> {
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    close(&gens, bound)
}

fn too_large(order: usize, bound: usize, what: &'static str) -> Result<()> {
    if order > bound {
        return Err(Error::GroupTooLarge { order, bound, what });
    }
    Ok(())
}

fn factorial(n: usize) -> usize {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)).unwrap_or(usize::MAX)
}

/// `C_n` generated by the `n`-cycle; `cyclic(1)` is the trivial group.
pub fn cyclic(n: usize, bound: usize) -> Result<GroupRef> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group of order 0".into()));
    }
    too_large(n, bound, "construction")?;
    if n == 1 {
        return close(&[], bound);
    }
    close(&[perm(&[(1..=n).collect()], n)], bound)
}

/// The dihedral group of order `order` (which must be even).
pub fn dihedral(order: usize, bound: usize) -> Result<GroupRef> {
    if order == 0 || !order.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("dihedral group order {order} must be even and positive")));
    }
    too_large(order, bound, "construction")?;
    let n = order / 2;
    match n {
        1 => cyclic(2, bound),
        // the natural action on 2 points is not faithful
        2 => close(&[perm(&[vec![1, 2], vec![3, 4]], 4), perm(&[vec![1, 3], vec![2, 4]], 4)], bound),
        _ => {
            let reflection: Vec<Vec<usize>> = (1..=n / 2).map(|i| vec![i, n + 1 - i]).collect();
            close(&[perm(&[(1..=n).collect()], n), perm(&reflection, n)], bound)
        }
    }
}

pub fn symmetric(n: usize, bound: usize) -> Result<GroupRef> {
    too_large(factorial(n), bound, "construction")?;
    match n {
        0 | 1 => close(&[], bound),
        2 => close(&[perm(&[vec![1, 2]], 2)], bound),
        _ => close(&[perm(&[(1..=n).collect()], n), perm(&[vec![1, 2]], n)], bound),
    }
}

pub fn alternating(n: usize, bound: usize) -> Result<GroupRef> {
    too_large(factorial(n) / 2, bound, "construction")?;
    match n {
        0..=2 => close(&[], bound),
        3 => close(&[perm(&[vec![1, 2, 3]], 3)], bound),
        _ => {
            let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
            close(&[perm(&[vec![1, 2, 3]], n), perm(&[long], n)], bound)
        }
    }
}

/// The dicyclic group `⟨a, b | a^{2m}, b² = a^m, aᵇ = a⁻¹⟩` of order
/// `4m`, in its regular action; `quaternion(8)` is `Q8` and powers of two
/// give the generalized quaternion groups.
pub fn quaternion(order: usize, bound: usize) -> Result<GroupRef> {
    if order < 8 || !order.is_multiple_of(4) {
        return Err(Error::InvalidArgument(format!("quaternion group order {order} must be a multiple of 4, at least 8")));
    }
    too_large(order, bound, "construction")?;
    let m = order / 4;
    let n = 2 * m;
    // element a^i b^j is point i + n·j
    let mul = |(i, j): (usize, usize), (k, l): (usize, usize)| -> (usize, usize) {
        if j == 0 {
            ((i + k) % n, l)
        } else if l == 0 {
            ((i + n - k) % n, 1)
        } else {
            ((i + n - k + m) % n, 0)
        }
    };
    let regular = |g: (usize, usize)| {
        let images = (0..order).map(|x| {
            let (i, j) = mul((x % n, x / n), g);
            (i + n * j) as u32
        });
        Permutation::from_images(images.collect()).expect("regular action")
    };
    close(&[regular((1, 0)), regular((0, 1))], bound)
}

fn shifted(p: &Permutation, offset: usize, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &j) in p.images().iter().enumerate() {
        images[offset + i] = (offset + j as usize) as u32;
    }
    Permutation::from_images(images).expect("shifted permutation")
}

/// `A × B` acting on the disjoint union of the actions of `A` and `B`.
pub struct DirectProduct {
    pub group: GroupRef,
    pub left: GroupHomomorphism,
    pub right: GroupHomomorphism,
}

pub fn direct_product(a: &GroupRef, b: &GroupRef, bound: usize) -> Result<DirectProduct> {
    let order = a.order().saturating_mul(b.order());
    too_large(order, bound, "direct product")?;
    let da = a.action_degree();
    let degree = da + b.action_degree();
    let gens: Vec<Permutation> = a
        .permutation_generators()
        .iter()
        .map(|p| shifted(p, 0, degree))
        .chain(b.permutation_generators().iter().map(|p| shifted(p, da, degree)))
        .collect();
    let group = close_on(gens, degree, bound)?;
    let inject = |src: &GroupRef, offset: usize| {
        let image = (0..src.order())
            .map(|x| {
                let p = shifted(&src.faithful_permutation(x), offset, group.action_degree());
                group.index_of_permutation(&p).expect("factor element lies in the product")
            })
            .collect();
        GroupHomomorphism::new(src.clone(), group.clone(), image)
    };
    let left = inject(a, 0);
    let right = inject(b, da);
    Ok(DirectProduct { group, left, right })
}

/// `A ≀ C_p` acting imprimitively on `p` blocks of `A`'s points.
pub struct Wreath {
    pub group: GroupRef,
    /// `A × ⋯ × A`, the elements fixing every block.
    pub base: Subgroup,
    pub p: usize,
    /// Points per block.
    pub block_degree: usize,
}

/// `|A|^p · p`, saturating on overflow.
pub fn wreath_order(a_order: usize, p: usize) -> usize {
    (0..p)
        .try_fold(p, |acc, _| acc.checked_mul(a_order))
        .unwrap_or(usize::MAX)
}

pub fn wreath_by_cyclic(a: &GroupRef, p: usize, bound: usize) -> Result<Wreath> {
    if p == 0 {
        return Err(Error::InvalidArgument("wreath product by C_0".into()));
    }
    too_large(wreath_order(a.order(), p), bound, "wreath product")?;
    let m = a.action_degree();
    let degree = m * p;
    let mut gens: Vec<Permutation> = Vec::new();
    for block in 0..p {
        gens.extend(a.permutation_generators().iter().map(|g| shifted(g, block * m, degree)));
    }
    if p > 1 {
        let images = (0..degree).map(|x| ((x + m) % degree) as u32).collect();
        gens.push(Permutation::from_images(images).expect("block cycle"));
    }
    let group = close_on(gens, degree, bound)?;
    let base_members: Vec<u32> = (0..group.order())
        .filter(|&x| {
            let q = group.permutation(x).expect("permutation group");
            (0..p).all(|j| q.apply(j * m) / m == j)
        })
        .map(|x| x as u32)
        .collect();
    let base = Subgroup::from_sorted_members(&group, base_members);
    Ok(Wreath { group, base, p, block_degree: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{find_isomorphism, quotient, SubgroupLattice, DEFAULT_MAX_ORDER};

    const B: usize = DEFAULT_MAX_ORDER;

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(1, B).unwrap().order(), 1);
        assert_eq!(cyclic(7, B).unwrap().order(), 7);
        assert_eq!(dihedral(2, B).unwrap().order(), 2);
        assert_eq!(dihedral(4, B).unwrap().order(), 4);
        assert_eq!(dihedral(10, B).unwrap().order(), 10);
        assert_eq!(symmetric(4, B).unwrap().order(), 24);
        assert_eq!(alternating(4, B).unwrap().order(), 12);
        assert_eq!(alternating(5, B).unwrap().order(), 60);
        assert_eq!(quaternion(8, B).unwrap().order(), 8);
        assert_eq!(quaternion(12, B).unwrap().order(), 12);
        assert!(dihedral(7, B).is_err());
        assert!(matches!(symmetric(7, 1000), Err(Error::GroupTooLarge { order: 5040, .. })));
    }

    #[test]
    fn quaternion_has_one_involution() {
        for n in [8, 16, 12] {
            let q = quaternion(n, B).unwrap();
            assert_eq!((0..n).filter(|&x| q.element_order(x) == 2).count(), 1);
            assert!(!q.is_abelian());
        }
    }

    #[test]
    fn klein_four_product() {
        let c2 = cyclic(2, B).unwrap();
        let v = direct_product(&c2, &c2, B).unwrap();
        assert_eq!(v.group.order(), 4);
        let subs = SubgroupLattice::new(&v.group, 512).unwrap();
        assert_eq!(subs.subgroups().iter().filter(|s| s.order() == 2).count(), 3);
    }

    #[test]
    fn injections_commute() {
        let s3 = symmetric(3, B).unwrap();
        let c4 = cyclic(4, B).unwrap();
        let d = direct_product(&s3, &c4, B).unwrap();
        assert_eq!(d.group.order(), 24);
        assert!(d.left.is_homomorphism() && d.left.is_injective());
        assert!(d.right.is_homomorphism() && d.right.is_injective());
        for x in 0..6 {
            for y in 0..4 {
                let (a, b) = (d.left.apply(x), d.right.apply(y));
                assert_eq!(d.group.mul(a, b), d.group.mul(b, a));
            }
        }
    }

    #[test]
    fn wreath_examples() {
        let c2 = cyclic(2, B).unwrap();
        let w = wreath_by_cyclic(&c2, 2, B).unwrap();
        assert_eq!(w.group.order(), 8);
        assert!(find_isomorphism(&w.group, &dihedral(8, B).unwrap()).is_some());
        assert_eq!(wreath_by_cyclic(&cyclic(3, B).unwrap(), 2, B).unwrap().group.order(), 18);
        let s3w = wreath_by_cyclic(&symmetric(3, B).unwrap(), 2, B).unwrap();
        assert_eq!(s3w.group.order(), 72);
        assert_eq!(s3w.base.order(), 36);
        assert!(wreath_by_cyclic(&symmetric(4, B).unwrap(), 3, B).is_err());
    }

    #[test]
    fn wreath_base_is_normal_with_cyclic_quotient() {
        for (a, p) in [(cyclic(2, B).unwrap(), 3), (symmetric(3, B).unwrap(), 2), (cyclic(1, B).unwrap(), 5)] {
            let w = wreath_by_cyclic(&a, p, B).unwrap();
            assert_eq!(w.base.order(), a.order().pow(p as u32));
            let (q, _) = quotient(&w.group, &w.base).unwrap();
            assert_eq!(q.order(), p);
            assert!(q.is_abelian() && (0..p).any(|x| q.element_order(x) as usize == p));
        }
    }
}
