//! Character tables by simultaneous diagonalization of the class
//! multiplication operators over a prime field, lifted back to exact
//! cyclotomic values.


use serde::Serialize;

use super::{ClassFunction, Domain};
use crate::cyclotomic::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, FiniteGroup, GroupRef, Subgroup};

/// Default bound on the group order for the table oracle.
pub const DEFAULT_ORACLE_BOUND: usize = 200;

/// The irreducible characters of a domain, rows ordered by degree and then
/// lexicographically descending by values in class order, so the trivial
/// character is row 0.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    domain: Domain,
    rows: Vec<ClassFunction>,
}

impl CharacterTable {
    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.degree().to_i64().expect("small degree")).collect()
    }

    /// Exact check of the row orthogonality relations and `Σ χ(1)² = |G|`.
    pub fn check_orthogonality(&self) -> Result<()> {
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate().skip(i) {
                let ip = a.inner_product(b);
                let expected = if i == j { Rational::one() } else { Rational::zero() };
                if ip.as_rational() != Some(expected) {
                    return Err(Error::OracleMismatch(format!("rows {i} and {j} have inner product {ip}")));
                }
            }
        }
        let sum: i64 = self.degrees().iter().map(|d| d * d).sum();
        if sum as usize != self.domain.order() {
            return Err(Error::OracleMismatch(format!("squared degrees sum to {sum}")));
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TableJson<'a> {
    order: usize,
    conductor: u32,
    class_sizes: Vec<usize>,
    representatives: Vec<&'a str>,
    rows: Vec<&'a [Cyclotomic]>,
}

impl Serialize for CharacterTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let cc = self.domain.classes();
        TableJson {
            order: self.domain.order(),
            conductor: self.domain.conductor(),
            class_sizes: (0..cc.len()).map(|c| cc.size(c)).collect(),
            representatives: cc.representatives().into_iter().map(|x| self.domain.group().label(x)).collect(),
            rows: self.rows.iter().map(ClassFunction::values).collect(),
        }
        .serialize(serializer)
    }
}

pub fn character_table(group: &GroupRef, bound: usize) -> Result<CharacterTable> {
    character_table_of(group, &group.whole(), bound)
}

/// The table of a subgroup, with values in the parent's cyclotomic field.
pub fn character_table_of(group: &GroupRef, sub: &Subgroup, bound: usize) -> Result<CharacterTable> {
    if sub.order() > bound {
        return Err(Error::GroupTooLarge { order: sub.order(), bound, what: "character table" });
    }
    let (local, members) = group.restrict(sub);
    let local_classes = conjugacy_classes(&local);
    let local_rows = modular_table(&local)?;
    let domain = Domain::new(group, sub.clone());
    let n = domain.conductor();
    let mut local_of = vec![usize::MAX; group.order()];
    for (i, &m) in members.iter().enumerate() {
        local_of[m] = i;
    }
    let class_map: Vec<usize> =
        domain.classes().representatives().iter().map(|&x| local_classes.class_of(local_of[x])).collect();
    let mut rows: Vec<ClassFunction> = local_rows
        .into_iter()
        .map(|vals| {
            let values = class_map.iter().map(|&c| vals[c].embed(n)).collect();
            ClassFunction::new(domain.clone(), values)
        })
        .collect();
    // descending on values within a degree puts the trivial character first
    rows.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.values().cmp(a.values())));
    let table = CharacterTable { domain, rows };
    table.check_orthogonality()?;
    Ok(table)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest prime `p ≡ 1 (mod exponent)` with `p > 2√order`.
pub fn oracle_prime(order: usize, exponent: u32) -> u64 {
    let e = exponent as u64;
    let mut p = e + 1;
    while !(is_prime(p) && p * p > 4 * order as u64) {
        p += e;
    }
    p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// A generator of the multiplicative group of `F_p`.
fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).expect("F_p* is cyclic")
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][col], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                let (pivot_row, row) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the null space of a square matrix.
fn null_space(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial (low degree first) via Hessenberg reduction.
fn char_poly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = m.len();
    let mut h = m.to_vec();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for k in j + 2..n {
            let f = h[k][j] * inv % p;
            if f == 0 {
                continue;
            }
            for c in 0..n {
                let sub = f * h[j + 1][c] % p;
                h[k][c] = (h[k][c] + p - sub) % p;
            }
            for row in h.iter_mut() {
                let add = f * row[k] % p;
                row[j + 1] = (row[j + 1] + add) % p;
            }
        }
    }
    // p_{m+1} = (x - h[m][m]) p_m - Σ_{i<m} h[i][m] (Π_{k=i+1}^{m} h[k][k-1]) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 0..n {
        let pm = &polys[mm];
        let mut next = vec![0u64; mm + 2];
        for (d, &c) in pm.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - c * h[mm][mm] % p) % p;
        }
        let mut prod = 1u64;
        for i in (0..mm).rev() {
            prod = prod * h[i + 1][i] % p;
            let coef = h[i][mm] * prod % p;
            if coef != 0 {
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = (next[d] + p - coef * c % p) % p;
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Split an invariant subspace (RREF basis) into eigenspaces of `a`.
fn split(basis: Vec<Vec<u64>>, a: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let r = a.len();
    let mut b = basis;
    let pivots = rref(&mut b, p);
    // restricted[m][l] = coordinate m of a·b_l
    let mut restricted = vec![vec![0u64; d]; d];
    for (l, bl) in b.iter().enumerate() {
        for (m, &pc) in pivots.iter().enumerate() {
            restricted[m][l] = (0..r).fold(0, |acc, k| (acc + a[pc][k] * bl[k]) % p);
        }
    }
    let poly = char_poly(&restricted, p);
    let mut spaces = Vec::new();
    let mut found = 0;
    for lambda in 0..p {
        if found == d {
            break;
        }
        if eval(&poly, lambda, p) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, &x)| if i == j { (x + p - lambda) % p } else { x }).collect())
            .collect();
        let mut space: Vec<Vec<u64>> = null_space(&shifted, p)
            .into_iter()
            .map(|coords| {
                (0..r).map(|k| coords.iter().zip(&b).fold(0, |acc, (&c, bl)| (acc + c * bl[k]) % p)).collect()
            })
            .collect();
        rref(&mut space, p);
        found += space.len();
        spaces.push(space);
    }
    if found != d {
        return Err(Error::OracleMismatch("class operator is not diagonalizable over the chosen prime".into()));
    }
    Ok(spaces)
}

/// Irreducible characters of a standalone group, as values per class in
/// `Q(ζ_exp)`, in no particular order.
fn modular_table(grp: &FiniteGroup) -> Result<Vec<Vec<Cyclotomic>>> {
    let cc = conjugacy_classes(grp);
    let r = cc.len();
    let n = grp.order() as u64;
    let exp = grp.exponent();
    let p = oracle_prime(grp.order(), exp);

    // a[i][j][k] = #{x ∈ C_i : x⁻¹ g_k ∈ C_j}; operator A_i has entries A_i[j][k]
    let reps = cc.representatives();
    let mut ops = vec![vec![vec![0u64; r]; r]; r];
    for (k, &gk) in reps.iter().enumerate() {
        for (i, class) in cc.classes().iter().enumerate() {
            for &x in class {
                let j = cc.class_of(grp.mul(grp.inv(x), gk));
                ops[i][j][k] += 1;
            }
        }
    }
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces = vec![identity];
    for op in ops.iter().skip(1) {
        if spaces.len() == r {
            break;
        }
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
            } else {
                next.extend(split(s, op, p)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::OracleMismatch("class operators did not separate the characters".into()));
    }

    let inverse = cc.inverse_classes(grp);
    let sizes: Vec<u64> = (0..r).map(|c| cc.size(c) as u64).collect();
    let z = pow_mod(primitive_root(p), (p - 1) / exp as u64, p);
    let powers: Vec<Vec<usize>> = reps
        .iter()
        .map(|&g| (0..grp.element_order(g) as i64).map(|t| cc.class_of(grp.pow(g, t))).collect())
        .collect();

    let mut rows = Vec::with_capacity(r);
    for s in spaces {
        let v = &s[0];
        let inv0 = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| x * inv0 % p).collect();
        let sum = (0..r).fold(0, |acc, k| (acc + omega[k] * omega[inverse[k]] % p * inv_mod(sizes[k], p)) % p);
        let d2 = n % p * inv_mod(sum, p) % p;
        let d = (1..=n).take_while(|d| d * d <= n).find(|d| d * d % p == d2).ok_or_else(|| {
            Error::OracleMismatch("no admissible character degree".into())
        })?;
        let chi: Vec<u64> = (0..r).map(|k| d * omega[k] % p * inv_mod(sizes[k], p) % p).collect();
        let mut row = Vec::with_capacity(r);
        for pw in &powers {
            let o = pw.len() as u64;
            let zo = pow_mod(z, exp as u64 / o, p);
            let inv_o = inv_mod(o, p);
            let mut counts = vec![0i64; exp as usize];
            for l in 0..o {
                // m_l = (1/o) Σ_t χ(g^t) ζ_o^{-lt}
                let zi = inv_mod(pow_mod(zo, l, p), p);
                let mut m = 0u64;
                let mut w = 1u64;
                for &c in pw {
                    m = (m + chi[c] * w) % p;
                    w = w * zi % p;
                }
                m = m * inv_o % p;
                if m > d {
                    return Err(Error::OracleMismatch("eigenvalue multiplicity exceeds the degree".into()));
                }
                counts[(l * (exp as u64 / o)) as usize] += m as i64;
            }
            row.push(Cyclotomic::from_exponent_counts(exp, &counts));
        }
        rows.push(row);
    }
    Ok(rows)
}
