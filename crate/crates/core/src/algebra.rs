//! Sparse exact elements of group algebras and the idempotent calculus
//! built from subgroup averages.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef, Subgroup};

/// Coefficient rings usable in [`GroupAlgebraElement`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coefficient for Rational {
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Coefficient for Cyclotomic {
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// `Σ c_g g` with only nonzero coefficients stored, keyed by element index.
#[derive(Clone)]
pub struct GroupAlgebraElement<C: Coefficient> {
    group: GroupRef,
    coeffs: BTreeMap<usize, C>,
}

/// An element of the rational group algebra `QG`.
pub type AlgebraElement = GroupAlgebraElement<Rational>;

impl<C: Coefficient> PartialEq for GroupAlgebraElement<C> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group) && self.coeffs == other.coeffs
    }
}

impl<C: Coefficient> fmt::Debug for GroupAlgebraElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coeffs.iter().map(|(&g, c)| (self.group.label(g), c))).finish()
    }
}

impl<C: Coefficient> GroupAlgebraElement<C> {
    pub fn zero(group: &GroupRef) -> Self {
        GroupAlgebraElement { group: group.clone(), coeffs: BTreeMap::new() }
    }

    /// `c·g`.
    pub fn monomial(group: &GroupRef, g: usize, c: C) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(g, c);
        }
        GroupAlgebraElement { group: group.clone(), coeffs }
    }

    /// Build from `(element, coefficient)` pairs; repeated elements are summed.
    pub fn from_terms(group: &GroupRef, terms: impl IntoIterator<Item = (usize, C)>) -> Self {
        let mut coeffs: BTreeMap<usize, C> = BTreeMap::new();
        for (g, c) in terms {
            assert!(g < group.order(), "element index {g} out of range");
            match coeffs.get_mut(&g) {
                Some(old) => *old = old.add(&c),
                None => {
                    coeffs.insert(g, c);
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        GroupAlgebraElement { group: group.clone(), coeffs }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, g: usize) -> Option<&C> {
        self.coeffs.get(&g)
    }

    /// Nonzero terms in increasing element order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &C)> {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    fn same_group(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.group, &other.group) || self.group.order() == other.group.order(),
            "group algebra elements over different groups"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_group(other);
        let mut coeffs = self.coeffs.clone();
        for (&g, c) in &other.coeffs {
            match coeffs.get_mut(&g) {
                Some(old) => {
                    let s = old.add(c);
                    if s.is_zero() {
                        coeffs.remove(&g);
                    } else {
                        *old = s;
                    }
                }
                None => {
                    coeffs.insert(g, c.clone());
                }
            }
        }
        GroupAlgebraElement { group: self.group.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        GroupAlgebraElement { group: self.group.clone(), coeffs: self.coeffs.iter().map(|(&g, c)| (g, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        let coeffs = self.coeffs.iter().map(|(&g, x)| (g, x.mul(c))).filter(|(_, x)| !x.is_zero()).collect();
        GroupAlgebraElement { group: self.group.clone(), coeffs }
    }

    /// Sparse convolution through a dense accumulator indexed by element.
    pub fn mul(&self, other: &Self) -> Self {
        self.same_group(other);
        let grp = &self.group;
        let mut acc: Vec<Option<C>> = vec![None; grp.order()];
        for (&x, a) in &self.coeffs {
            for (&y, b) in &other.coeffs {
                let z = grp.mul(x, y);
                let p = a.mul(b);
                acc[z] = Some(match acc[z].take() {
                    Some(old) => old.add(&p),
                    None => p,
                });
            }
        }
        let coeffs = acc
            .into_iter()
            .enumerate()
            .filter_map(|(g, c)| c.filter(|c| !c.is_zero()).map(|c| (g, c)))
            .collect();
        GroupAlgebraElement { group: self.group.clone(), coeffs }
    }

    /// `g⁻¹ a g`: the coefficient of `x` is the coefficient of `g x g⁻¹` in `a`.
    pub fn conjugate(&self, g: usize) -> Self {
        let coeffs = self.coeffs.iter().map(|(&y, c)| (self.group.conj(y, g), c.clone())).collect();
        GroupAlgebraElement { group: self.group.clone(), coeffs }
    }

    fn is_fixed_by(&self, g: usize) -> bool {
        self.coeffs.iter().all(|(&y, c)| self.coeffs.get(&self.group.conj(y, g)) == Some(c))
    }

    /// Exact test of `a·a = a`.
    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// `a·b = 0` and `b·a = 0`.
    pub fn are_orthogonal(&self, other: &Self) -> bool {
        self.mul(other).is_zero() && other.mul(self).is_zero()
    }

    /// Central in the whole group algebra: fixed by conjugation by every
    /// generator.
    pub fn is_central(&self) -> bool {
        self.group.generators().iter().all(|&g| self.is_fixed_by(g))
    }

    /// `{g ∈ G : g⁻¹ a g = a}`.
    pub fn centralizing_subgroup(&self) -> Subgroup {
        self.centralizing_subgroup_in(&self.group.whole())
    }

    /// `Cen_U(a)` for a subgroup `U`.
    pub fn centralizing_subgroup_in(&self, within: &Subgroup) -> Subgroup {
        let members = within.members().iter().copied().filter(|&g| self.is_fixed_by(g)).map(|g| g as u32).collect();
        Subgroup::from_sorted_members(&self.group, members)
    }

    /// The distinct elements of the orbit `{g⁻¹ a g : g ∈ U}`, in orbit
    /// discovery order starting from `a`, with one witness `g` each.
    pub fn conjugates_under(&self, within: &Subgroup) -> Vec<(usize, Self)> {
        let mut orbit = vec![(0usize, self.clone())];
        let mut i = 0;
        while i < orbit.len() {
            for &s in within.generators() {
                let c = orbit[i].1.conjugate(s);
                if !orbit.iter().any(|(_, o)| *o == c) {
                    let w = self.group.mul(orbit[i].0, s);
                    orbit.push((w, c));
                }
            }
            i += 1;
        }
        orbit
    }
}

impl AlgebraElement {
    /// The identity `1·e` of `QG`.
    pub fn one(group: &GroupRef) -> Self {
        Self::monomial(group, 0, Rational::one())
    }

    /// `Ĥ = (1/|H|) Σ_{h∈H} h`.
    pub fn hat(group: &GroupRef, h: &Subgroup) -> Self {
        let c = Rational::new(1, h.order() as i64);
        GroupAlgebraElement { group: group.clone(), coeffs: h.members().iter().map(|&x| (x, c.clone())).collect() }
    }

    /// Lift to an element with cyclotomic coefficients of conductor `n`.
    pub fn to_cyclotomic(&self, n: u32) -> GroupAlgebraElement<Cyclotomic> {
        GroupAlgebraElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|(&g, c)| (g, Cyclotomic::from_rational(n, c.clone()))).collect(),
        }
    }

    /// The trace of left multiplication divided by nothing: `|G|` times the
    /// coefficient of the identity. Equals `dim_Q(QG·e)` for idempotents.
    pub fn regular_trace(&self) -> Rational {
        self.coeffs.get(&0).map_or_else(Rational::zero, |c| c * &Rational::from_integer(self.group.order() as i64))
    }

    /// `dim_Q(QG·e)` for a central idempotent `e`, by exact row reduction of
    /// the vectors `g·e`.
    pub fn ideal_dimension(&self) -> Result<usize> {
        if !self.is_central() || !self.is_idempotent() {
            return Err(Error::NotCentralIdempotent);
        }
        let n = self.group.order();
        let mut rows: Vec<Vec<Rational>> = (0..n)
            .map(|g| {
                let mut row = vec![Rational::zero(); n];
                for (&x, c) in &self.coeffs {
                    row[self.group.mul(g, x)] = c.clone();
                }
                row
            })
            .collect();
        Ok(rank(&mut rows))
    }
}

impl GroupAlgebraElement<Cyclotomic> {
    /// The rational element with the same coefficients, if all are rational.
    pub fn to_rational(&self) -> Option<AlgebraElement> {
        let coeffs: Option<BTreeMap<usize, Rational>> =
            self.coeffs.iter().map(|(&g, c)| c.as_rational().map(|q| (g, q))).collect();
        Some(GroupAlgebraElement { group: self.group.clone(), coeffs: coeffs? })
    }
}

/// Rank by Gaussian elimination; the pivot in each column is the entry of
/// least height, ties broken by row index.
pub(crate) fn rank(rows: &mut [Vec<Rational>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let pivot = (r..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| (rows[i][col].height(), i));
        let Some(p) = pivot else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip().expect("nonzero pivot");
        let pivot_row: Vec<Rational> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

/// The normal closure in `h` of `⟨k, x⟩`.
fn normal_closure_over(grp: &FiniteGroup, h: &Subgroup, k: &Subgroup, x: usize) -> Subgroup {
    let mut n = k.join_element(grp, x);
    loop {
        let extra: Vec<usize> = n
            .generators()
            .iter()
            .flat_map(|&y| h.generators().iter().map(move |&s| (y, s)))
            .map(|(y, s)| grp.conj(y, s))
            .filter(|&z| !n.contains(z))
            .collect();
        if extra.is_empty() {
            return n;
        }
        for z in extra {
            n = n.join_element(grp, z);
        }
    }
}

/// Minimal elements among the normal subgroups of `h` that properly contain
/// `k` (with `k ⊴ h`), sorted canonically.
pub fn minimal_normal_overgroups(grp: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<Subgroup> {
    let mut candidates: Vec<Subgroup> = Vec::new();
    for &x in h.members() {
        if k.contains(x) {
            continue;
        }
        let n = normal_closure_over(grp, h, k, x);
        if !candidates.contains(&n) {
            candidates.push(n);
        }
    }
    let mut minimal: Vec<Subgroup> = candidates
        .iter()
        .filter(|n| !candidates.iter().any(|m| m.order() < n.order() && m.is_subgroup_of(n)))
        .cloned()
        .collect();
    minimal.sort();
    minimal
}

/// `ε(H,K)`: `K̂` when `H = K`, else `Π_L (K̂ − L̂)` over the minimal normal
/// subgroups `L` of `H` properly containing `K`.
pub fn epsilon(group: &GroupRef, h: &Subgroup, k: &Subgroup) -> Result<AlgebraElement> {
    if !k.is_normal_in(group, h) {
        return Err(Error::NotNormal);
    }
    let k_hat = AlgebraElement::hat(group, k);
    if h == k {
        return Ok(k_hat);
    }
    let mut acc = k_hat.clone();
    for l in minimal_normal_overgroups(group, h, k) {
        acc = acc.mul(&k_hat.sub(&AlgebraElement::hat(group, &l)));
    }
    Ok(acc)
}

/// `e(G,H,K)`: the sum of the distinct `G`-conjugates of `ε(H,K)`.
pub fn e_of(group: &GroupRef, h: &Subgroup, k: &Subgroup) -> Result<AlgebraElement> {
    let eps = epsilon(group, h, k)?;
    Ok(sum_of_conjugates(&eps, &group.whole()))
}

/// Sum of the distinct conjugates of `a` under `within`.
///
/// Conjugates are indexed by right cosets of the centralizer, which avoids
/// comparing whole elements pairwise.
pub fn sum_of_conjugates(a: &AlgebraElement, within: &Subgroup) -> AlgebraElement {
    let grp = a.group();
    let cen = a.centralizing_subgroup_in(within);
    let mut acc = AlgebraElement::zero(grp);
    for t in cen.right_transversal(grp, within) {
        acc = acc.add(&a.conjugate(t));
    }
    acc
}

/// One entry of the JSON form of an element of `QG`.
#[derive(Serialize)]
struct Term<'a> {
    element_label: &'a str,
    numerator: String,
    denominator: String,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (&g, c) in &self.coeffs {
            seq.serialize_element(&Term {
                element_label: self.group.label(g),
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            })?;
        }
        seq.end()
    }
}
