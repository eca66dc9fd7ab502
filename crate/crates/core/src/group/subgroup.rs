use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use super::FiniteGroup;

/// A subgroup of some parent [`FiniteGroup`], stored as its sorted member
/// indices plus a membership bitset. The parent is not referenced; every
/// operation takes it explicitly.
#[derive(Clone)]
pub struct Subgroup {
    members: Vec<usize>,
    bits: FixedBitSet,
    gens: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

/// Canonical order: by size, then lexicographically by member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members.len().cmp(&other.members.len()).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.members.len(), self.gens)
    }
}

impl Subgroup {
    pub(crate) fn from_sorted_members(g: &FiniteGroup, members: Vec<u32>) -> Subgroup {
        let members: Vec<usize> = members.into_iter().map(|m| m as usize).collect();
        let mut bits = FixedBitSet::with_capacity(g.order());
        for &m in &members {
            bits.insert(m);
        }
        let mut s = Subgroup { members, bits, gens: Vec::new() };
        s.gens = s.greedy_generators(g);
        s
    }

    fn from_bits(g: &FiniteGroup, bits: FixedBitSet, gens: Vec<usize>) -> Subgroup {
        let members = bits.ones().collect();
        let mut s = Subgroup { members, bits, gens };
        if s.gens.len() > 3 {
            s.gens = s.greedy_generators(g);
        }
        s
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
        Self::closure_from(g, &[0], gens)
    }

    fn closure_from(g: &FiniteGroup, start: &[usize], gens: &[usize]) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(g.order());
        let mut list = Vec::with_capacity(start.len() * 2);
        for &x in start {
            if !bits.put(x) {
                list.push(x);
            }
        }
        if !bits.put(0) {
            list.push(0);
        }
        let gens: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in &gens {
                let y = g.mul(x, s);
                if !bits.put(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
        Self::from_bits(g, bits, gens)
    }

    /// `⟨self, x⟩`.
    pub fn join_element(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        if self.contains(x) {
            return self.clone();
        }
        let mut gens = self.gens.clone();
        gens.push(x);
        Self::closure_from(g, &self.members, &gens)
    }

    pub fn join(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().copied().filter(|&x| !self.contains(x)));
        Self::closure_from(g, &self.members, &gens)
    }

    /// A generating set depending only on the member list: elements of
    /// largest order first, ties by index, skipping redundant ones.
    pub fn canonical_generators(&self, g: &FiniteGroup) -> Vec<usize> {
        self.greedy_generators(g)
    }

    /// Order and canonical generator labels, for reports.
    pub fn describe(&self, g: &FiniteGroup) -> SubgroupDescription {
        SubgroupDescription {
            order: self.order(),
            generators: self.greedy_generators(g).into_iter().map(|x| g.label(x).to_string()).collect(),
        }
    }

    fn greedy_generators(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut have = FixedBitSet::with_capacity(g.order());
        have.insert(0);
        let mut list = vec![0usize];
        // prefer elements of large order: fewer generators
        let mut candidates = self.members.clone();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
        for x in candidates {
            if have.contains(x) {
                continue;
            }
            gens.push(x);
            let mut i = 0;
            while i < list.len() {
                for &s in &gens {
                    let y = g.mul(list[i], s);
                    if !have.put(y) {
                        list.push(y);
                    }
                }
                i += 1;
            }
            if list.len() == self.members.len() {
                break;
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.len() <= other.members.len() && self.bits.is_subset(&other.bits)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        let members: Vec<u32> = bits.ones().map(|m| m as u32).collect();
        Subgroup::from_sorted_members(g, members)
    }

    /// `g⁻¹ S g`.
    pub fn conjugate(&self, grp: &FiniteGroup, g: usize) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(grp.order());
        for &m in &self.members {
            bits.insert(grp.conj(m, g));
        }
        let gens = self.gens.iter().map(|&x| grp.conj(x, g)).collect();
        let members = bits.ones().collect();
        Subgroup { members, bits, gens }
    }

    /// Whether `g` normalizes this subgroup.
    pub fn is_normalized_by(&self, grp: &FiniteGroup, g: usize) -> bool {
        self.gens.iter().all(|&k| self.contains(grp.conj(k, g)))
    }

    /// `self ⊴ h`; assumes `self ≤ h`.
    pub fn is_normal_in(&self, grp: &FiniteGroup, h: &Subgroup) -> bool {
        self.is_subgroup_of(h) && h.gens.iter().all(|&x| self.is_normalized_by(grp, x))
    }

    /// Index of `self` in `over` (`self ≤ over`).
    pub fn index_in(&self, over: &Subgroup) -> usize {
        over.order() / self.order()
    }

    /// Representatives of the right cosets `S t` of `self` in `over`, each
    /// the least element index of its coset.
    pub fn right_transversal(&self, grp: &FiniteGroup, over: &Subgroup) -> Vec<usize> {
        let mut seen = FixedBitSet::with_capacity(grp.order());
        let mut reps = Vec::with_capacity(self.index_in(over));
        for &t in over.members() {
            if seen.contains(t) {
                continue;
            }
            reps.push(t);
            for &s in &self.members {
                seen.insert(grp.mul(s, t));
            }
        }
        reps
    }

    /// If `self/k` is cyclic (with `k ⊴ self`), an element of least index whose
    /// coset generates the quotient.
    pub fn cyclic_quotient_generator(&self, grp: &FiniteGroup, k: &Subgroup) -> Option<usize> {
        let m = self.order() / k.order();
        self.members.iter().copied().find(|&h| coset_order(grp, h, k) == m)
    }

    /// Centralizer in `self` of a set of elements.
    pub fn centralizer_of(&self, grp: &FiniteGroup, elements: &[usize]) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&g| elements.iter().all(|&x| grp.mul(g, x) == grp.mul(x, g)))
            .map(|g| g as u32)
            .collect();
        Subgroup::from_sorted_members(grp, members)
    }
}

/// JSON form of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SubgroupDescription {
    pub order: usize,
    pub generators: Vec<String>,
}

/// Order of `hK` in `H/K`: the least `j >= 1` with `h^j ∈ K`.
pub(crate) fn coset_order(grp: &FiniteGroup, h: usize, k: &Subgroup) -> usize {
    let mut j = 1;
    let mut x = h;
    while !k.contains(x) {
        x = grp.mul(x, h);
        j += 1;
    }
    j
}

/// `N_G(K) = {g : g⁻¹Kg = K}`.
pub fn normalizer(grp: &FiniteGroup, k: &Subgroup) -> Subgroup {
    normalizer_in(grp, &grp.whole(), k)
}

/// `N_U(K)` for a subgroup `U`.
pub fn normalizer_in(grp: &FiniteGroup, within: &Subgroup, k: &Subgroup) -> Subgroup {
    let members = within
        .members()
        .iter()
        .copied()
        .filter(|&g| k.is_normalized_by(grp, g))
        .map(|g| g as u32)
        .collect();
    Subgroup::from_sorted_members(grp, members)
}

/// The raw commutator set `{[h, g] : h ∈ H}`, sorted and deduplicated.
pub fn commutator_set(grp: &FiniteGroup, h: &Subgroup, g: usize) -> Vec<usize> {
    let mut v: Vec<usize> = h.members().iter().map(|&x| grp.commutator(x, g)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `[H, g]`: the subgroup generated by `{h⁻¹g⁻¹hg : h ∈ H}`.
pub fn relative_commutator(grp: &FiniteGroup, h: &Subgroup, g: usize) -> Subgroup {
    Subgroup::generated(grp, &commutator_set(grp, h, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::perm_group;

    fn s3() -> FiniteGroup {
        perm_group(&[&[&[1, 2, 3]], &[&[1, 2]]], 3)
    }

    fn find(g: &FiniteGroup, label: &str) -> usize {
        (0..g.order()).find(|&i| g.label(i) == label).unwrap()
    }

    #[test]
    fn normalizers_in_s3() {
        let g = s3();
        let t = Subgroup::generated(&g, &[find(&g, "(1,2)")]);
        assert_eq!(normalizer(&g, &t), t);
        assert_eq!(normalizer(&g, &g.trivial()), g.whole());
        let c3 = Subgroup::generated(&g, &[find(&g, "(1,2,3)")]);
        assert_eq!(normalizer(&g, &c3), g.whole());
        assert!(c3.is_normal_in(&g, &g.whole()));
        assert!(!t.is_normal_in(&g, &g.whole()));
    }

    #[test]
    fn relative_commutators() {
        let g = s3();
        let c3 = Subgroup::generated(&g, &[find(&g, "(1,2,3)")]);
        assert_eq!(relative_commutator(&g, &c3, find(&g, "(1,2)")), c3);
        // g central in H's centralizer
        assert!(relative_commutator(&g, &c3, find(&g, "(1,3,2)")).is_trivial());
        assert!(relative_commutator(&g, &g.trivial(), find(&g, "(1,2)")).is_trivial());
    }

    #[test]
    fn transversals_and_quotient_generators() {
        let g = s3();
        let c3 = Subgroup::generated(&g, &[find(&g, "(1,2,3)")]);
        let reps = c3.right_transversal(&g, &g.whole());
        assert_eq!(reps, vec![0, find(&g, "(1,2)")]);
        assert_eq!(c3.cyclic_quotient_generator(&g, &g.trivial()), Some(1));
        let v4 = perm_group(&[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]], 4);
        assert_eq!(v4.whole().cyclic_quotient_generator(&v4, &v4.trivial()), None);
    }

    #[test]
    fn joins_and_intersections() {
        let g = s3();
        let a = Subgroup::generated(&g, &[find(&g, "(1,2)")]);
        let b = Subgroup::generated(&g, &[find(&g, "(1,3)")]);
        assert_eq!(a.join(&g, &b), g.whole());
        assert!(a.intersection(&g, &b).is_trivial());
        assert_eq!(a.join_element(&g, find(&g, "(1,2,3)")).order(), 6);
    }
}
