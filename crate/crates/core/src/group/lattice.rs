use std::collections::{HashMap, HashSet, VecDeque};

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Every subgroup of a group, in canonical order, with conjugacy classes.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    class_id: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

/// All subgroups, each exactly once, sorted by order then member list.
///
/// Layered generation: start from the cyclic subgroups and keep joining
/// known subgroups with cyclic ones until nothing new appears. Every
/// subgroup is a join of cyclic subgroups, so this is complete.
pub fn all_subgroups(grp: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if grp.order() > bound {
        return Err(Error::GroupTooLarge { order: grp.order(), bound, what: "subgroup enumeration" });
    }
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    for x in 0..grp.order() {
        let c = Subgroup::generated(grp, &[x]);
        if seen.insert(c.clone()) {
            cyclic.push(c);
        }
    }
    // the cyclic generator of each cyclic subgroup, for cheap joins
    let cyclic_gen: Vec<usize> = cyclic
        .iter()
        .map(|c| *c.members().iter().find(|&&x| grp.element_order(x) as usize == c.order()).unwrap())
        .collect();
    let mut queue: VecDeque<Subgroup> = cyclic.iter().cloned().collect();
    while let Some(s) = queue.pop_front() {
        if s.order() == grp.order() {
            continue;
        }
        for &x in &cyclic_gen {
            if s.contains(x) {
                continue;
            }
            let j = s.join_element(grp, x);
            if !seen.contains(&j) {
                seen.insert(j.clone());
                queue.push_back(j);
            }
        }
    }
    let mut all: Vec<Subgroup> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

impl SubgroupLattice {
    pub fn new(grp: &FiniteGroup, bound: usize) -> Result<Self> {
        let subgroups = all_subgroups(grp, bound)?;
        let index: HashMap<Subgroup, usize> =
            subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut class_id = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for i in 0..subgroups.len() {
            if class_id[i] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_id[i] = id;
            let mut orbit = vec![i];
            let mut k = 0;
            while k < orbit.len() {
                for &g in grp.generators() {
                    let c = subgroups[orbit[k]].conjugate(grp, g);
                    let j = index[&c];
                    if class_id[j] == usize::MAX {
                        class_id[j] = id;
                        orbit.push(j);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        Ok(SubgroupLattice { subgroups, index, class_id, classes })
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Conjugacy class id of subgroup `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_id[i]
    }

    /// Subgroup indices grouped by conjugacy class; classes ordered by their
    /// least member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Least subgroup index in each conjugacy class.
    pub fn class_representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    /// Indices of subgroups containing subgroup `i` (including itself).
    pub fn overgroups(&self, i: usize) -> Vec<usize> {
        let s = &self.subgroups[i];
        (i..self.subgroups.len()).filter(|&j| s.is_subgroup_of(&self.subgroups[j])).collect()
    }

    /// Indices of subgroups contained in subgroup `i` (including itself).
    pub fn subgroups_of(&self, i: usize) -> Vec<usize> {
        let s = &self.subgroups[i];
        (0..=i).filter(|&j| self.subgroups[j].is_subgroup_of(s)).collect()
    }

    /// Normal subgroups of the whole group.
    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.subgroups.len()).filter(|&i| self.classes[self.class_id[i]].len() == 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::perm_group;
    use crate::group::DEFAULT_MAX_SUBGROUP_ENUM;

    /// Brute force: close every subset of elements of size <= 3.
    fn brute_force_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        let mut set = std::collections::HashSet::new();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    set.insert(Subgroup::generated(g, &[a, b, c]).members().to_vec());
                }
            }
        }
        set.len()
    }

    #[test]
    fn subgroup_counts() {
        let s3 = perm_group(&[&[&[1, 2, 3]], &[&[1, 2]]], 3);
        let subs = all_subgroups(&s3, DEFAULT_MAX_SUBGROUP_ENUM).unwrap();
        let orders: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(orders, [1, 2, 2, 2, 3, 6]);
        assert_eq!(subs.len(), brute_force_count(&s3));

        let c4 = perm_group(&[&[&[1, 2, 3, 4]]], 4);
        assert_eq!(all_subgroups(&c4, 512).unwrap().len(), 3);

        let q8 = perm_group(&[&[&[1, 2, 5, 6], &[3, 8, 7, 4]], &[&[1, 3, 5, 7], &[2, 4, 6, 8]]], 8);
        assert_eq!(all_subgroups(&q8, 512).unwrap().len(), 6);
        assert_eq!(brute_force_count(&q8), 6);

        let s4 = perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 2]]], 4);
        assert_eq!(all_subgroups(&s4, 512).unwrap().len(), 30);
        assert_eq!(brute_force_count(&s4), 30);
    }

    #[test]
    fn too_large_is_rejected() {
        let s4 = perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 2]]], 4);
        assert!(matches!(all_subgroups(&s4, 10), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn conjugacy_classes_of_subgroups() {
        let s4 = perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 2]]], 4);
        let lat = SubgroupLattice::new(&s4, 512).unwrap();
        assert_eq!(lat.conjugacy_classes().len(), 11);
        assert_eq!(lat.normal_subgroups().len(), 4);
        let top = lat.len() - 1;
        assert_eq!(lat.overgroups(top), vec![top]);
        assert_eq!(lat.subgroups_of(top).len(), 30);
    }
}
