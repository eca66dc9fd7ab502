use super::{FiniteGroup, Subgroup};

/// Conjugacy classes of a group, or of a subgroup acting on itself.
#[derive(Debug, Clone)]
pub struct ConjugacyClassPartition {
    classes: Vec<Vec<usize>>,
    /// Class index per element of the parent group; `usize::MAX` outside the subgroup.
    class_of: Vec<usize>,
}

impl ConjugacyClassPartition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Least element of each class.
    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        let c = self.class_of[x];
        assert!(c != usize::MAX, "element {x} is outside the subgroup");
        c
    }

    pub fn try_class_of(&self, x: usize) -> Option<usize> {
        let c = self.class_of[x];
        (c != usize::MAX).then_some(c)
    }

    /// Class of `g^k` for each class, i.e. the `k`-th power map.
    pub fn power_map(&self, grp: &FiniteGroup, k: i64) -> Vec<usize> {
        self.classes.iter().map(|c| self.class_of(grp.pow(c[0], k))).collect()
    }

    /// Class containing the inverses of each class.
    pub fn inverse_classes(&self, grp: &FiniteGroup) -> Vec<usize> {
        self.classes.iter().map(|c| self.class_of(grp.inv(c[0]))).collect()
    }
}

pub fn conjugacy_classes(grp: &FiniteGroup) -> ConjugacyClassPartition {
    conjugacy_classes_of(grp, &grp.whole())
}

/// Classes of `H` under conjugation by `H`, sorted by size then by least
/// representative; the identity class comes first.
pub fn conjugacy_classes_of(grp: &FiniteGroup, h: &Subgroup) -> ConjugacyClassPartition {
    let mut class_of = vec![usize::MAX; grp.order()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &x in h.members() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[x] = id;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            for &g in h.generators() {
                let y = grp.conj(orbit[i], g);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    classes.sort_by(|a, b| a.len().cmp(&b.len()).then(a[0].cmp(&b[0])));
    for (id, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = id;
        }
    }
    ConjugacyClassPartition { classes, class_of }
}
