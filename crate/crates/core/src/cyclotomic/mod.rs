//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` of
//! `Q[x]/Φ_n(x)`, which makes the representation unique. Everything that
//! touches character values in this crate works with a single conductor per
//! group (its exponent), so no conductor-mixing arithmetic is provided
//! beyond explicit [`Cyclotomic::embed`].

mod rational;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use rational::{ParseRationalError, Rational};

use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Precomputed data for one conductor.
struct FieldData {
    phi: usize,
    /// Φ_n, monic, lowest degree first, length φ(n)+1.
    poly: Vec<i64>,
    /// `x^k mod Φ_n` for `0 <= k < n`.
    powers: Vec<Vec<i64>>,
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn field(n: u32) -> Arc<FieldData> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(f) = field_cache().lock().unwrap().get(&n) {
        return f.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    if phi > 0 {
        cur[0] = 1;
    }
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce with x^φ = -(poly[0] + … + poly[φ-1] x^{φ-1})
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1] - top * poly[i];
        }
        cur[0] = -top * poly[0];
    }
    let data = Arc::new(FieldData { phi, poly, powers });
    field_cache().lock().unwrap().insert(n, data.clone());
    data
}

/// Φ_n by exact division of `x^n - 1` by `Φ_d` for the proper divisors `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = divide_monic(&num, &field(d).poly);
        }
    }
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// An element of `Q(ζ_n)` in reduced power-basis form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        let f = field(n);
        Cyclotomic { conductor: n, coeffs: vec![Rational::zero(); f.phi] }
    }

    pub fn from_rational(n: u32, q: Rational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Rational::one())
    }

    /// Build from power-basis coordinates; `coeffs.len()` must be φ(n).
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Self {
        let f = field(n);
        assert_eq!(coeffs.len(), f.phi, "coordinate vector has wrong length for conductor {n}");
        Cyclotomic { conductor: n, coeffs }
    }

    /// ζ_n^e.
    pub fn root_of_unity(n: u32, e: i64) -> Self {
        let f = field(n);
        let k = e.rem_euclid(n as i64) as usize;
        let coeffs = f.powers[k].iter().map(|&c| Rational::from_integer(c)).collect();
        Cyclotomic { conductor: n, coeffs }
    }

    /// `Σ_k counts[k] ζ_n^k`, with `counts.len() == n`. Integer fast path used
    /// for character values, which are sums of roots of unity.
    pub fn from_exponent_counts(n: u32, counts: &[i64]) -> Self {
        let f = field(n);
        assert_eq!(counts.len(), n as usize);
        let mut acc = vec![0i64; f.phi];
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &p) in acc.iter_mut().zip(&f.powers[k]) {
                    *a += c * p;
                }
            }
        }
        Cyclotomic { conductor: n, coeffs: acc.into_iter().map(Rational::from_integer).collect() }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Apply σ_k : ζ ↦ ζ^k.
    pub fn galois_apply(&self, k: i64) -> Result<Self> {
        let n = self.conductor as i64;
        if k.gcd(&n) != 1 {
            return Err(Error::NotCoprime { k, conductor: self.conductor });
        }
        let f = field(self.conductor);
        let mut acc = vec![Rational::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as i64 * k).rem_euclid(n) as usize;
            for (a, &p) in acc.iter_mut().zip(&f.powers[e]) {
                if p != 0 {
                    *a += &(c * &Rational::from_integer(p));
                }
            }
        }
        Ok(Cyclotomic { conductor: self.conductor, coeffs: acc })
    }

    /// Units `k` with `1 <= k < n`, the index set of the Galois group.
    pub fn galois_units(n: u32) -> Vec<i64> {
        if n == 1 {
            return vec![1];
        }
        (1..n as i64).filter(|k| k.gcd(&(n as i64)) == 1).collect()
    }

    /// `Σ_k σ_k(x)` over the full Galois group of `Q(ζ_n)/Q`.
    pub fn trace_to_rationals(&self) -> Rational {
        let mut acc = Cyclotomic::zero(self.conductor);
        for k in Self::galois_units(self.conductor) {
            acc = &acc + &self.galois_apply(k).expect("unit");
        }
        acc.as_rational().expect("the full Galois trace is rational")
    }

    pub fn complex_conjugate(&self) -> Self {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    /// Field norm to `Q`.
    pub fn norm(&self) -> Rational {
        let mut acc = Cyclotomic::one(self.conductor);
        for k in Self::galois_units(self.conductor) {
            acc = &acc * &self.galois_apply(k).expect("unit");
        }
        acc.as_rational().expect("the norm is rational")
    }

    /// Multiplicative inverse through the norm; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut others = Cyclotomic::one(self.conductor);
        for k in Self::galois_units(self.conductor).into_iter().skip(1) {
            others = &others * &self.galois_apply(k).expect("unit");
        }
        let norm = (self * &others).as_rational().expect("the norm is rational");
        Some(others.scale(&norm.recip().expect("nonzero norm")))
    }

    /// The same number viewed in `Q(ζ_m)`, where `n` divides `m`.
    pub fn embed(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor), "conductor {} does not divide {m}", self.conductor);
        let step = (m / self.conductor) as usize;
        let f = field(m);
        let mut acc = vec![Rational::zero(); f.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (a, &p) in acc.iter_mut().zip(&f.powers[(i * step) % m as usize]) {
                if p != 0 {
                    *a += &(c * &Rational::from_integer(p));
                }
            }
        }
        Cyclotomic { conductor: m, coeffs: acc }
    }

    /// Evaluate a polynomial with integer coefficients at this element.
    pub fn eval_poly(&self, poly: &[i64]) -> Self {
        let mut acc = Cyclotomic::zero(self.conductor);
        for &c in poly.iter().rev() {
            acc = &(&acc * self) + &Cyclotomic::from_rational(self.conductor, Rational::from_integer(c));
        }
        acc
    }

    fn check_conductor(&self, other: &Self) {
        assert_eq!(self.conductor, other.conductor, "conductor mismatch");
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_conductor(rhs);
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_conductor(rhs);
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_conductor(rhs);
        let f = field(self.conductor);
        let phi = f.phi;
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        // reduce from the top with the monic Φ_n
        for d in (phi..prod.len()).rev() {
            let c = std::mem::take(&mut prod[d]);
            if c.is_zero() {
                continue;
            }
            for (j, &p) in f.poly[..phi].iter().enumerate() {
                if p != 0 {
                    prod[d - phi + j] -= &(&c * &Rational::from_integer(p));
                }
            }
        }
        prod.truncate(phi);
        Cyclotomic { conductor: self.conductor, coeffs: prod }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Ord for Cyclotomic {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.conductor.cmp(&other.conductor).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z{}", self.conductor)?,
                _ => write!(f, "{c}*z{}^{i}", self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> =
            self.coeffs.iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect();
        let mut s = serializer.serialize_struct("Cyclotomic", 2)?;
        s.serialize_field("conductor", &self.conductor)?;
        s.serialize_field("coeffs", &pairs)?;
        s.end()
    }
}
