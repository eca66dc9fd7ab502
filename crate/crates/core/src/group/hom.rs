use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, GroupRef, Subgroup};
use crate::error::{Error, Result};

/// A map between element indices, checked on demand for the homomorphism
/// property.
#[derive(Debug, Clone)]
pub struct GroupHomomorphism {
    source: GroupRef,
    target: GroupRef,
    image: Vec<usize>,
}

impl GroupHomomorphism {
    pub fn new(source: GroupRef, target: GroupRef, image: Vec<usize>) -> Self {
        assert_eq!(image.len(), source.order());
        GroupHomomorphism { source, target, image }
    }

    pub fn source(&self) -> &GroupRef {
        &self.source
    }

    pub fn target(&self) -> &GroupRef {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `φ(xy) = φ(x)φ(y)` on every pair, and `φ(e) = e`.
    pub fn is_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        self.image[0] == 0
            && (0..s.order()).all(|x| (0..s.order()).all(|y| self.image[s.mul(x, y)] == t.mul(self.image[x], self.image[y])))
    }

    pub fn kernel(&self) -> Subgroup {
        let members = (0..self.source.order()).filter(|&x| self.image[x] == 0).map(|x| x as u32).collect();
        Subgroup::from_sorted_members(&self.source, members)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn image_subgroup(&self) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(self.target.order());
        for &y in &self.image {
            bits.insert(y);
        }
        Subgroup::from_sorted_members(&self.target, bits.ones().map(|x| x as u32).collect())
    }

    /// `ψ ∘ φ`: first `self`, then `next`.
    pub fn then(&self, next: &GroupHomomorphism) -> GroupHomomorphism {
        assert!(Arc::ptr_eq(&self.target, &next.source), "composition of mismatched homomorphisms");
        let image = self.image.iter().map(|&y| next.image[y]).collect();
        GroupHomomorphism { source: self.source.clone(), target: next.target.clone(), image }
    }
}

/// `G/N` with cosets numbered by their least element, and the projection.
pub fn quotient(grp: &GroupRef, n: &Subgroup) -> Result<(GroupRef, GroupHomomorphism)> {
    if !n.is_normal_in(grp, &grp.whole()) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; grp.order()];
    let mut reps = Vec::new();
    for x in 0..grp.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &m in n.members() {
            coset_of[grp.mul(m, x)] = id;
        }
    }
    let k = reps.len();
    let mut mul = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            mul.push(coset_of[grp.mul(a, b)] as u32);
        }
    }
    let labels = reps.iter().map(|&r| format!("{}N", grp.label(r))).collect();
    let q = Arc::new(FiniteGroup::from_trusted_table(k, mul, labels));
    let proj = GroupHomomorphism::new(grp.clone(), q.clone(), coset_of);
    Ok((q, proj))
}

/// An isomorphism `a → b` if one exists, by backtracking over images of a
/// generating set. Intended for small groups.
pub fn find_isomorphism(a: &GroupRef, b: &GroupRef) -> Option<GroupHomomorphism> {
    if a.order() != b.order() {
        return None;
    }
    let mut oa: Vec<u32> = (0..a.order()).map(|x| a.element_order(x)).collect();
    let mut ob: Vec<u32> = (0..b.order()).map(|x| b.element_order(x)).collect();
    oa.sort_unstable();
    ob.sort_unstable();
    if oa != ob {
        return None;
    }
    let gens = a.generators().to_vec();
    // BFS words: each element as parent * gens[s]
    let mut parent = vec![(usize::MAX, 0usize); a.order()];
    let mut order = vec![0usize];
    parent[0] = (0, 0);
    let mut i = 0;
    while i < order.len() {
        for (s, &g) in gens.iter().enumerate() {
            let y = a.mul(order[i], g);
            if parent[y].0 == usize::MAX {
                parent[y] = (order[i], s);
                order.push(y);
            }
        }
        i += 1;
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..b.order()).filter(|&y| b.element_order(y) == a.element_order(g)).collect())
        .collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().enumerate().map(|(s, &c)| candidates[s][c]).collect();
        let mut phi = vec![0usize; a.order()];
        let mut hit = FixedBitSet::with_capacity(b.order());
        hit.insert(0);
        let mut ok = true;
        for &x in &order[1..] {
            let (p, s) = parent[x];
            phi[x] = b.mul(phi[p], images[s]);
            if hit.put(phi[x]) {
                ok = false;
                break;
            }
        }
        if ok {
            let hom = GroupHomomorphism::new(a.clone(), b.clone(), phi);
            if hom.is_homomorphism() {
                return Some(hom);
            }
        }
        // advance the odometer
        let mut s = 0;
        loop {
            if s == choice.len() {
                return None;
            }
            choice[s] += 1;
            if choice[s] < candidates[s].len() {
                break;
            }
            choice[s] = 0;
            s += 1;
        }
    }
}
