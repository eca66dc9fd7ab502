use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef, Subgroup};

/// `[D, D]`, generated by all commutators of members of `d`.
pub fn derived_subgroup(group: &FiniteGroup, d: &Subgroup) -> Subgroup {
    let mut seen = vec![false; group.order()];
    let mut comms = Vec::new();
    for &x in d.members() {
        for &y in d.members() {
            let c = group.commutator(x, y);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    Subgroup::generated(group, &comms)
}

/// `G ≥ G' ≥ G'' ≥ ⋯` down to the point where it stabilizes.
pub fn derived_series(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut series = vec![group.whole()];
    loop {
        let last = series.last().unwrap();
        let next = derived_subgroup(group, last);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// A subnormal series `{e} = G₀ ⊴ G₁ ⊴ ⋯ ⊴ G_n = G` whose factors have
/// prime order.
#[derive(Debug, Clone)]
pub struct SeriesWithPrimeFactors {
    pub group: GroupRef,
    pub terms: Vec<Subgroup>,
    pub factor_primes: Vec<usize>,
}

#[derive(Serialize)]
struct SeriesJson {
    term_orders: Vec<usize>,
    factor_primes: Vec<usize>,
}

impl Serialize for SeriesWithPrimeFactors {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson { term_orders: self.terms.iter().map(Subgroup::order).collect(), factor_primes: self.factor_primes.clone() }
            .serialize(s)
    }
}

impl SeriesWithPrimeFactors {
    /// Checks normality of each term in the next and primality of the
    /// factors; returns a description of the first failure.
    pub fn check(&self) -> std::result::Result<(), String> {
        let g = &self.group;
        if self.terms.first().map(Subgroup::order) != Some(1) || self.terms.last().map(Subgroup::order) != Some(g.order()) {
            return Err("series must run from the trivial group to G".into());
        }
        if self.factor_primes.len() + 1 != self.terms.len() {
            return Err("one prime per factor".into());
        }
        for (i, w) in self.terms.windows(2).enumerate() {
            if !w[0].is_subgroup_of(&w[1]) || !w[0].is_normal_in(g, &w[1]) {
                return Err(format!("term {i} is not normal in term {}", i + 1));
            }
            let p = self.factor_primes[i];
            if w[1].order() != w[0].order() * p || !is_prime(p) {
                return Err(format!("factor {i} does not have prime order {p}"));
            }
        }
        Ok(())
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|d| n.is_multiple_of(*d)).expect("n > 1")
}

/// Refine the derived series from the bottom up. Inside each abelian
/// factor `D_j/D_{j+1}`, the current term `T` is extended by `x^{o/p}`
/// where `x` is the least element of `D_j` outside `T`, `o` its order
/// modulo `T` and `p` the smallest prime dividing `o`. Every term between
/// `D_{j+1}` and `D_j` is normal in `D_j`, so each is normal in the next.
pub fn composition_series_prime_factors(group: &GroupRef) -> Result<SeriesWithPrimeFactors> {
    let derived = derived_series(group);
    if derived.last().unwrap().order() != 1 {
        return Err(Error::NotSolvable);
    }
    let mut terms = vec![group.trivial()];
    let mut factor_primes = Vec::new();
    for d in derived.iter().rev().skip(1) {
        loop {
            let t = terms.last().unwrap();
            let Some(&x) = d.members().iter().find(|&&x| !t.contains(x)) else {
                break;
            };
            let mut o = 1;
            let mut y = x;
            while !t.contains(y) {
                y = group.mul(y, x);
                o += 1;
            }
            let p = smallest_prime_factor(o);
            let next = t.join_element(group, group.pow(x, (o / p) as i64));
            terms.push(next);
            factor_primes.push(p);
        }
    }
    Ok(SeriesWithPrimeFactors { group: group.clone(), terms, factor_primes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{alternating, cyclic, dihedral, quaternion, symmetric};
    use crate::group::DEFAULT_MAX_ORDER;

    fn primes(g: &GroupRef) -> Vec<usize> {
        let s = composition_series_prime_factors(g).unwrap();
        s.check().unwrap();
        assert_eq!(s.factor_primes.iter().product::<usize>(), g.order());
        s.factor_primes
    }

    #[test]
    fn series_examples() {
        let b = DEFAULT_MAX_ORDER;
        assert_eq!(primes(&symmetric(3, b).unwrap()), [3, 2]);
        assert_eq!(primes(&alternating(4, b).unwrap()), [2, 2, 3]);
        assert_eq!(primes(&cyclic(6, b).unwrap()), [2, 3]);
        assert_eq!(primes(&cyclic(1, b).unwrap()), Vec::<usize>::new());
        assert_eq!(primes(&symmetric(4, b).unwrap()).len(), 4);
        assert_eq!(primes(&dihedral(8, b).unwrap()), [2, 2, 2]);
        assert_eq!(primes(&quaternion(8, b).unwrap()), [2, 2, 2]);
    }

    #[test]
    fn non_solvable_is_rejected() {
        let a5 = alternating(5, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(composition_series_prime_factors(&a5).unwrap_err(), Error::NotSolvable);
        assert_eq!(derived_series(&a5).len(), 1);
    }
}
