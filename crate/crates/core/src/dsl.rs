//! The group description language:
//!
//! ```text
//! perm:(1,2,3)(4,5);(1,2)      generators in cycle notation, `;`-separated
//! cyclic:n  dihedral:2n  sym:n  alt:n  quaternion:4m
//! product:A|B                  direct product (splits at the first top-level `|`)
//! wreath:A~cyclic:p            wreath product (splits at the last top-level `~`)
//! [A]                          grouping
//! ```
//!
//! Error positions are byte offsets into the full input.

use crate::constructions::{alternating, cyclic, dihedral, direct_product, quaternion, symmetric, wreath_by_cyclic};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef, Permutation};
use std::sync::Arc;

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

/// Parse and build a group, refusing anything larger than `bound`.
pub fn parse_group(spec: &str, bound: usize) -> Result<GroupRef> {
    Parser { bound }.group(spec, 0)
}

struct Parser {
    bound: usize,
}

/// Index of the first (or last) `sep` outside brackets.
fn top_level(s: &str, sep: char, last: bool) -> Option<usize> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, c) in s.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                found = Some(i);
                if !last {
                    break;
                }
            }
            _ => {}
        }
    }
    found
}

impl Parser {
    fn group(&self, s: &str, at: usize) -> Result<GroupRef> {
        let trimmed = s.trim_start();
        let at = at + (s.len() - trimmed.len());
        let s = trimmed.trim_end();
        if s.is_empty() {
            return err(at, "empty group spec");
        }
        if let Some(inner) = s.strip_prefix('[') {
            return match inner.strip_suffix(']') {
                Some(body) if balanced(body) => self.group(body, at + 1),
                _ => err(at + s.len(), "unbalanced '['"),
            };
        }
        let Some(colon) = s.find(':') else {
            return err(at, format!("expected '<kind>:' in {s:?}"));
        };
        let (kind, rest) = (&s[..colon], &s[colon + 1..]);
        let rest_at = at + colon + 1;
        match kind {
            "perm" => self.perm(rest, rest_at),
            "cyclic" => cyclic(number(rest, rest_at)?, self.bound).map_err(|e| at_pos(e, at)),
            "dihedral" => dihedral(number(rest, rest_at)?, self.bound).map_err(|e| at_pos(e, at)),
            "sym" => symmetric(number(rest, rest_at)?, self.bound).map_err(|e| at_pos(e, at)),
            "alt" => alternating(number(rest, rest_at)?, self.bound).map_err(|e| at_pos(e, at)),
            "quaternion" => quaternion(number(rest, rest_at)?, self.bound).map_err(|e| at_pos(e, at)),
            "product" => {
                let Some(bar) = top_level(rest, '|', false) else {
                    return err(rest_at, "product needs two specs separated by '|'");
                };
                let a = self.group(&rest[..bar], rest_at)?;
                let b = self.group(&rest[bar + 1..], rest_at + bar + 1)?;
                Ok(direct_product(&a, &b, self.bound)?.group)
            }
            "wreath" => {
                let Some(tilde) = top_level(rest, '~', true) else {
                    return err(rest_at, "wreath needs '<spec>~cyclic:p'");
                };
                let a = self.group(&rest[..tilde], rest_at)?;
                let top = rest[tilde + 1..].trim();
                let top_at = rest_at + tilde + 1;
                let Some(p) = top.strip_prefix("cyclic:") else {
                    return err(top_at, "the top group of a wreath product must be 'cyclic:p'");
                };
                let p = number(p, top_at + "cyclic:".len())?;
                Ok(wreath_by_cyclic(&a, p, self.bound)?.group)
            }
            other => err(at, format!("unknown group kind {other:?}")),
        }
    }

    fn perm(&self, s: &str, at: usize) -> Result<GroupRef> {
        let mut cycle_lists = Vec::new();
        let mut degree = 1;
        let mut offset = 0;
        for piece in s.split(';') {
            let cycles = cycles(piece, at + offset)?;
            degree = cycles.iter().flatten().copied().max().unwrap_or(1).max(degree);
            cycle_lists.push(cycles);
            offset += piece.len() + 1;
        }
        let gens = cycle_lists
            .iter()
            .map(|c| Permutation::from_cycles(c, degree))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| at_pos(e, at))?;
        Ok(Arc::new(FiniteGroup::from_permutation_generators(&gens, self.bound)?))
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

fn at_pos(e: Error, pos: usize) -> Error {
    match e {
        Error::InvalidArgument(msg) | Error::InvalidPermutation(msg) => Error::Parse { pos, msg },
        other => other,
    }
}

fn number(s: &str, at: usize) -> Result<usize> {
    let t = s.trim();
    match t.parse::<usize>() {
        Ok(n) => Ok(n),
        Err(_) => err(at + (s.len() - s.trim_start().len()), format!("expected a positive integer, found {t:?}")),
    }
}

/// `(1,2,3)(4,5)` → `[[1,2,3],[4,5]]`; `()` and the empty string are the
/// identity.
fn cycles(s: &str, at: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                let Some(close) = s[i..].find(')') else {
                    return err(at + i, "unclosed '('");
                };
                let body = &s[i + 1..i + close];
                if !body.trim().is_empty() {
                    let mut cycle = Vec::new();
                    let mut off = i + 1;
                    for p in body.split(',') {
                        let n = number(p, at + off)?;
                        if n == 0 {
                            return err(at + off, "points are numbered from 1");
                        }
                        cycle.push(n);
                        off += p.len() + 1;
                    }
                    out.push(cycle);
                }
                i += close + 1;
            }
            c => return err(at + i, format!("unexpected {:?} in cycle notation", c as char)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{find_isomorphism, DEFAULT_MAX_ORDER};

    fn order(s: &str) -> usize {
        parse_group(s, DEFAULT_MAX_ORDER).unwrap().order()
    }

    #[test]
    fn families() {
        assert_eq!(order("perm:(1,2,3)(4,5);(1,2)"), 12);
        assert_eq!(order("perm:(1,2,3,4);(1,3)"), 8);
        assert_eq!(order("perm:()"), 1);
        assert_eq!(order("cyclic:1"), 1);
        assert_eq!(order("dihedral:8"), 8);
        assert_eq!(order("sym:4"), 24);
        assert_eq!(order("alt:5"), 60);
        assert_eq!(order("quaternion:8"), 8);
    }

    #[test]
    fn combinators() {
        assert_eq!(order("product:sym:3|cyclic:4"), 24);
        assert_eq!(order("product:cyclic:2|product:cyclic:2|cyclic:2"), 8);
        assert_eq!(order("product:[product:cyclic:2|cyclic:3]|cyclic:5"), 30);
        assert_eq!(order("wreath:sym:3~cyclic:2"), 72);
        assert_eq!(order("wreath:[wreath:cyclic:1~cyclic:3]~cyclic:2"), 18);
        assert_eq!(order("wreath:wreath:cyclic:2~cyclic:2~cyclic:2"), 128);
        assert_eq!(order(" [ cyclic:6 ] "), 6);
        let d4 = parse_group("dihedral:8", DEFAULT_MAX_ORDER).unwrap();
        let w = parse_group("wreath:cyclic:2~cyclic:2", DEFAULT_MAX_ORDER).unwrap();
        assert!(find_isomorphism(&d4, &w).is_some());
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_group(s, DEFAULT_MAX_ORDER) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: expected a parse error, got {:?}", other.map(|g| g.order())),
        };
        assert_eq!(pos("bogus:3"), 0);
        assert_eq!(pos("cyclic:x"), 7);
        assert_eq!(pos("perm:(1,2;(1,3)"), 5);
        assert_eq!(pos("perm:(1,2);(1,0)"), 14);
        assert_eq!(pos("product:cyclic:2|cyclic:y"), 24);
        assert_eq!(pos("wreath:cyclic:2~sym:2"), 16);
        assert_eq!(pos("dihedral:7"), 0);
        assert_eq!(pos(""), 0);
        assert!(matches!(parse_group("sym:8", DEFAULT_MAX_ORDER), Err(Error::GroupTooLarge { .. })));
    }
}
