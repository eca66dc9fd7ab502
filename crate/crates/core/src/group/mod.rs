//! Finite groups given by full multiplication tables.
//!
//! Elements are indices `0..order`, with `0` the identity. Groups built from
//! permutations keep the permutation of every element, so they can be fed
//! to the wreath-product and embedding constructions.

mod classes;
mod hom;
mod lattice;
mod perm;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

pub use classes::{conjugacy_classes, conjugacy_classes_of, ConjugacyClassPartition};
pub use hom::{find_isomorphism, quotient, GroupHomomorphism};
pub use lattice::{all_subgroups, SubgroupLattice};
pub use perm::Permutation;
pub use subgroup::{commutator_set, normalizer, normalizer_in, relative_commutator, Subgroup, SubgroupDescription};

use crate::error::{Error, Result};

/// Default bound on the order of constructed groups.
pub const DEFAULT_MAX_ORDER: usize = 2000;
/// Default bound on the order of groups whose full subgroup lattice is built.
pub const DEFAULT_MAX_SUBGROUP_ENUM: usize = 512;

pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    exponent: u32,
    element_orders: Vec<u32>,
    generators: Vec<usize>,
    perms: Option<PermData>,
}

/// Two groups are equal when they have the same multiplication table; labels
/// and permutation data are presentation only.
impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

struct PermData {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl FiniteGroup {
    /// Closure of permutation generators. Elements are numbered breadth-first:
    /// the identity, then each queued element multiplied on the right by the
    /// generators in input order.
    pub fn from_permutation_generators(generators: &[Permutation], bound: usize) -> Result<Self> {
        let degree = generators.iter().map(Permutation::degree).max().unwrap_or(1).max(1);
        let gens: Vec<Permutation> = generators.iter().map(|g| g.extend(degree)).collect();
        let mut elements = vec![Permutation::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        // right[x * ngens + s] = index of x * gens[s]
        let mut right: Vec<u32> = Vec::new();
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut head = 0;
        while head < elements.len() {
            for (s, g) in gens.iter().enumerate() {
                let y = elements[head].then(g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= bound {
                            return Err(Error::ClosureTooLarge { bound });
                        }
                        let j = elements.len();
                        index.insert(y.clone(), j);
                        elements.push(y);
                        parent.push((head as u32, s as u32));
                        j
                    }
                };
                right.push(j as u32);
            }
            head += 1;
        }
        let n = elements.len();
        let ng = gens.len();
        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            mul[x * n] = x as u32;
            for y in 1..n {
                let (py, s) = parent[y];
                let xp = mul[x * n + py as usize] as usize;
                mul[x * n + y] = right[xp * ng + s as usize];
            }
        }
        let labels = elements.iter().map(|p| p.to_string()).collect();
        let perms = PermData { degree, elements, index };
        Ok(Self::from_parts(n, mul, labels, Some(perms)))
    }

    /// A group from a validated Cayley table; row `a`, column `b` holds `a*b`.
    pub fn from_table(table: &[Vec<u32>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x as usize >= n || seen[x as usize] {
                    return Err(Error::InvalidTable(format!("row {a} is not a permutation of 0..{n}")));
                }
                seen[x as usize] = true;
            }
            mul.extend_from_slice(row);
        }
        for a in 0..n {
            if mul[a] != a as u32 || mul[a * n] != a as u32 {
                return Err(Error::InvalidTable("index 0 is not a two-sided identity".into()));
            }
        }
        for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                let x = mul[a * n + b] as usize;
                if seen[x] {
                    return Err(Error::InvalidTable(format!("column {b} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(_) => return Err(Error::InvalidTable("label count differs from order".into())),
            None => (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect(),
        };
        let g = Self::from_parts(n, mul, labels, None);
        if !g.check_associativity_light() {
            return Err(Error::InvalidTable("operation is not associative".into()));
        }
        Ok(g)
    }

    /// Parse the text Cayley-table format: the order on the first line, then
    /// one row of space-separated indices per element.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::InvalidTable("missing order line".into()))?
            .parse()
            .map_err(|_| Error::InvalidTable("order line is not an integer".into()))?;
        let mut table = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let row: std::result::Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
            table.push(row.map_err(|_| Error::InvalidTable(format!("row {i} has a non-integer entry")))?);
        }
        if table.len() != n {
            return Err(Error::InvalidTable(format!("expected {n} rows, found {}", table.len())));
        }
        Self::from_table(&table, None)
    }

    pub fn to_table_string(&self) -> String {
        let mut s = format!("{}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    fn from_parts(order: usize, mul: Vec<u32>, labels: Vec<String>, perms: Option<PermData>) -> Self {
        let mut inv = vec![0u32; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let mut element_orders = vec![1u32; order];
        for (a, o) in element_orders.iter_mut().enumerate() {
            let mut x = a;
            while x != 0 {
                x = mul[x * order + a] as usize;
                *o += 1;
            }
        }
        let exponent = element_orders.iter().fold(1u32, |acc, &o| acc.lcm(&o));
        let mut g = FiniteGroup {
            order,
            mul,
            inv,
            labels,
            exponent,
            element_orders,
            generators: Vec::new(),
            perms,
        };
        g.generators = g.greedy_generators();
        g
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut members = vec![false; self.order];
        members[0] = true;
        let mut list = vec![0usize];
        for x in 0..self.order {
            if members[x] {
                continue;
            }
            gens.push(x);
            // re-close with the enlarged generating set
            let mut i = 0;
            while i < list.len() {
                for &s in &gens {
                    let y = self.mul(list[i], s);
                    if !members[y] {
                        members[y] = true;
                        list.push(y);
                    }
                }
                i += 1;
            }
            if list.len() == self.order {
                break;
            }
        }
        gens
    }

    /// Light's test against the generating set: complete for a table with a
    /// two-sided identity whose rows are permutations.
    fn check_associativity_light(&self) -> bool {
        let n = self.order;
        self.generators.iter().all(|&s| {
            (0..n).all(|x| {
                let xs = self.mul(x, s);
                (0..n).all(|y| self.mul(xs, y) == self.mul(x, self.mul(s, y)))
            })
        })
    }

    /// Brute-force associativity over all triples.
    pub fn check_associativity_exhaustive(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[h, g] = h⁻¹ g⁻¹ h g`.
    pub fn commutator(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(h), self.inv(g)), self.mul(h, g))
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let o = self.element_orders[x] as i64;
        let k = k.rem_euclid(o);
        let mut r = 0;
        for _ in 0..k {
            r = self.mul(r, x);
        }
        r
    }

    pub fn element_order(&self, x: usize) -> u32 {
        self.element_orders[x]
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Degree of the permutation representation, if the group has one.
    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p.degree)
    }

    pub fn permutation(&self, x: usize) -> Option<&Permutation> {
        self.perms.as_ref().map(|p| &p.elements[x])
    }

    pub fn index_of_permutation(&self, p: &Permutation) -> Option<usize> {
        self.perms.as_ref().and_then(|d| d.index.get(p).copied())
    }

    /// Generators of a faithful permutation action: the stored permutations
    /// if present, otherwise the right regular representation.
    pub fn permutation_generators(&self) -> Vec<Permutation> {
        match &self.perms {
            Some(p) => self.generators.iter().map(|&g| p.elements[g].clone()).collect(),
            None => self.generators.iter().map(|&g| self.regular_permutation(g)).collect(),
        }
    }

    /// The permutation of `x` in the action used by
    /// [`permutation_generators`](Self::permutation_generators).
    pub fn faithful_permutation(&self, x: usize) -> Permutation {
        match &self.perms {
            Some(p) => p.elements[x].clone(),
            None => self.regular_permutation(x),
        }
    }

    /// Number of points moved by the faithful action.
    pub fn action_degree(&self) -> usize {
        self.perms.as_ref().map_or(self.order, |p| p.degree)
    }

    /// `x ↦ x·g` on the element indices.
    pub fn regular_permutation(&self, g: usize) -> Permutation {
        Permutation::from_images((0..self.order).map(|x| self.mul(x, g) as u32).collect())
            .expect("rows of a group table are bijections")
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted_members(self, (0..self.order as u32).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted_members(self, vec![0])
    }

    /// The subgroup as a standalone group, with the inclusion map (new index
    /// `i` corresponds to `members[i]`).
    pub fn restrict(&self, sub: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let members: Vec<usize> = sub.members().to_vec();
        let mut pos = vec![u32::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i as u32;
        }
        let n = members.len();
        let mut mul = Vec::with_capacity(n * n);
        for &a in &members {
            for &b in &members {
                mul.push(pos[self.mul(a, b)]);
            }
        }
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        let perms = self.perms.as_ref().map(|p| {
            let elements: Vec<Permutation> = members.iter().map(|&m| p.elements[m].clone()).collect();
            let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
            PermData { degree: p.degree, elements, index }
        });
        (FiniteGroup::from_parts(n, mul, labels, perms), members)
    }

    /// Used by constructions that already know the table is a group.
    pub(crate) fn from_trusted_table(order: usize, mul: Vec<u32>, labels: Vec<String>) -> Self {
        Self::from_parts(order, mul, labels, None)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order).field("exponent", &self.exponent).finish()
    }
}

/// Shared handle used by algebra elements and homomorphisms.
pub type GroupRef = Arc<FiniteGroup>;

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn perm_group(gens: &[&[&[usize]]], degree: usize) -> FiniteGroup {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|cs| Permutation::from_cycles(&cs.iter().map(|c| c.to_vec()).collect::<Vec<_>>(), degree).unwrap())
            .collect();
        FiniteGroup::from_permutation_generators(&gens, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn closure_orders() {
        let s3 = perm_group(&[&[&[1, 2, 3]], &[&[1, 2]]], 3);
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.exponent(), 6);
        let c2 = perm_group(&[&[&[1, 2]]], 2);
        assert_eq!(c2.order(), 2);
        let d4 = perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 3]]], 4);
        assert_eq!(d4.order(), 8);
        assert!(d4.check_associativity_exhaustive());
        assert_eq!(d4.exponent(), 4);
    }

    #[test]
    fn breadth_first_numbering() {
        let s3 = perm_group(&[&[&[1, 2, 3]], &[&[1, 2]]], 3);
        let labels: Vec<&str> = (0..6).map(|i| s3.label(i)).collect();
        assert_eq!(labels, ["()", "(1,2,3)", "(1,2)", "(1,3,2)", "(2,3)", "(1,3)"]);
        for x in 0..6 {
            assert_eq!(s3.mul(x, s3.inv(x)), 0);
            assert_eq!(s3.mul(s3.inv(x), x), 0);
            assert_eq!(s3.mul(0, x), x);
        }
        // (1,2,3) then (1,2): 1->2->1, 2->3, 3->1->2
        assert_eq!(s3.label(s3.mul(1, 2)), "(2,3)");
    }

    #[test]
    fn closure_bound_is_enforced() {
        let gens = vec![
            Permutation::from_cycles(&[vec![1, 2, 3, 4, 5]], 5).unwrap(),
            Permutation::from_cycles(&[vec![1, 2]], 5).unwrap(),
        ];
        assert_eq!(FiniteGroup::from_permutation_generators(&gens, 100).unwrap_err(), Error::ClosureTooLarge { bound: 100 });
    }

    #[test]
    fn table_round_trip_and_validation() {
        let d4 = perm_group(&[&[&[1, 2, 3, 4]], &[&[1, 3]]], 4);
        let t = FiniteGroup::parse_table(&d4.to_table_string()).unwrap();
        assert_eq!(t.order(), 8);
        assert_eq!(t.exponent(), 4);
        assert!(FiniteGroup::parse_table("2\n0 1\n1 1\n").is_err());
        assert!(FiniteGroup::parse_table("2\n1 0\n0 1\n").is_err());
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5 = "5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        assert!(matches!(FiniteGroup::parse_table(loop5), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn restriction_keeps_structure() {
        let s3 = perm_group(&[&[&[1, 2, 3]], &[&[1, 2]]], 3);
        let c3 = Subgroup::generated(&s3, &[1]);
        let (g, incl) = s3.restrict(&c3);
        assert_eq!(g.order(), 3);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(incl[g.mul(a, b)], s3.mul(incl[a], incl[b]));
            }
        }
    }
}
