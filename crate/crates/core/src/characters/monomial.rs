//! Monomiality and supermonomiality of irreducible characters by exhaustive
//! search over subgroups and their linear characters.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::table::{character_table, character_table_of, CharacterTable, DEFAULT_ORACLE_BOUND};
use super::{linear_characters_with_kernel, ClassFunction, LinearCharacter};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{all_subgroups, GroupRef, Subgroup, DEFAULT_MAX_SUBGROUP_ENUM};

/// Default bound on the group order for the supermonomial check.
pub const DEFAULT_SUPERMONOMIAL_BOUND: usize = 100;

/// A linear character `λ` of a subgroup with `λ^D = χ`.
#[derive(Debug, Clone)]
pub struct MonomialWitness {
    pub character: LinearCharacter,
}

impl MonomialWitness {
    pub fn subgroup(&self) -> &Subgroup {
        self.character.domain()
    }

    pub fn kernel(&self) -> &Subgroup {
        self.character.kernel()
    }
}

/// Whether the irreducible `χ` is induced from a linear character of a
/// subgroup of its domain. `subgroups` must contain every subgroup of the
/// domain (extra subgroups of the parent are ignored).
pub fn is_monomial_in(chi: &ClassFunction, subgroups: &[Subgroup]) -> Option<MonomialWitness> {
    let domain = chi.domain();
    let grp = domain.group();
    let d = domain.subgroup();
    let degree = chi.degree().to_i64().expect("integral degree") as usize;
    if degree == 0 || !d.order().is_multiple_of(degree) {
        return None;
    }
    let target = d.order() / degree;
    for h in subgroups.iter().filter(|h| h.order() == target && h.is_subgroup_of(d)) {
        for k in subgroups.iter().filter(|k| k.is_subgroup_of(h) && k.is_normal_in(grp, h)) {
            let lambdas = linear_characters_with_kernel(grp, h, k).expect("normal by construction");
            for lam in lambdas {
                if lam.induce(grp, domain) == *chi {
                    return Some(MonomialWitness { character: lam });
                }
            }
        }
    }
    None
}

/// [`is_monomial_in`] with the subgroup list computed on the spot.
pub fn is_monomial_char(chi: &ClassFunction) -> Result<Option<MonomialWitness>> {
    let subgroups = all_subgroups(chi.domain().group(), DEFAULT_MAX_SUBGROUP_ENUM)?;
    Ok(is_monomial_in(chi, &subgroups))
}

/// Supermonomiality checks sharing subgroup tables and monomiality verdicts.
///
/// The memo is keyed by the exact subgroup and the character's values, so it
/// is valid across all queries on the same parent group.
pub struct SupermonomialChecker {
    group: GroupRef,
    subgroups: Vec<Subgroup>,
    bound: usize,
    tables: Mutex<HashMap<Subgroup, Arc<CharacterTable>>>,
    memo: Mutex<HashMap<(Subgroup, Vec<Cyclotomic>), bool>>,
}

impl SupermonomialChecker {
    pub fn new(group: &GroupRef, bound: usize) -> Result<Self> {
        if group.order() > bound {
            return Err(Error::GroupTooLarge { order: group.order(), bound, what: "supermonomial check" });
        }
        Ok(SupermonomialChecker {
            group: group.clone(),
            subgroups: all_subgroups(group, DEFAULT_MAX_SUBGROUP_ENUM)?,
            bound,
            tables: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    fn table(&self, u: &Subgroup) -> Result<Arc<CharacterTable>> {
        if let Some(t) = self.tables.lock().unwrap().get(u) {
            return Ok(t.clone());
        }
        let t = Arc::new(character_table_of(&self.group, u, DEFAULT_ORACLE_BOUND.max(self.bound))?);
        self.tables.lock().unwrap().entry(u.clone()).or_insert(t.clone());
        Ok(t)
    }

    fn monomial(&self, psi: &ClassFunction) -> bool {
        let key = (psi.domain().subgroup().clone(), psi.values().to_vec());
        if let Some(&v) = self.memo.lock().unwrap().get(&key) {
            return v;
        }
        let v = is_monomial_in(psi, &self.subgroups).is_some();
        self.memo.lock().unwrap().insert(key, v);
        v
    }

    /// Every character `ψ` of a subgroup `U` of the domain with `ψ^D = χ` is
    /// monomial in `U`.
    pub fn is_supermonomial(&self, chi: &ClassFunction) -> Result<bool> {
        let domain = chi.domain();
        assert!(Arc::ptr_eq(domain.group(), &self.group));
        let d = domain.subgroup();
        let degree = chi.degree().to_i64().expect("integral degree") as usize;
        for u in self.subgroups.iter().filter(|u| u.is_subgroup_of(d)) {
            let index = d.order() / u.order();
            if !degree.is_multiple_of(index) {
                continue;
            }
            let table = self.table(u)?;
            for psi in table.rows() {
                if psi.degree().to_i64() != Some((degree / index) as i64) {
                    continue;
                }
                if psi.induce_to(domain) == *chi && !self.monomial(psi) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// One-off supermonomial check of `χ` on the whole group.
pub fn is_supermonomial_char(chi: &ClassFunction, bound: usize) -> Result<bool> {
    SupermonomialChecker::new(chi.domain().group(), bound)?.is_supermonomial(chi)
}

/// Every irreducible character of the group is supermonomial.
pub fn is_supermonomial_group(group: &GroupRef, bound: usize) -> Result<bool> {
    let checker = SupermonomialChecker::new(group, bound)?;
    let table = character_table(group, DEFAULT_ORACLE_BOUND.max(bound))?;
    for chi in table.rows() {
        if !checker.is_supermonomial(chi)? {
            return Ok(false);
        }
    }
    Ok(true)
}
