//! Arithmetic in small finite fields `F_q`, `q = p^k`.
//!
//! Elements are encoded as integers in `[0, q)`: the coefficient vector
//! `(c_0, .., c_{k-1})` of the polynomial representative maps to
//! `c_0 + c_1 p + .. + c_{k-1} p^{k-1}`. Prime fields use plain modular
//! arithmetic; extension fields multiply through exp/log tables built from a
//! primitive element at construction.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Default moduli (coefficients least degree first) for small extension fields.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
];

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` when `q = p^k` for a prime `p`.
pub(crate) fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p as u32, k))
}

/// Characteristic, degree and modulus of a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p as u64 > MAX_FIELD_ORDER {
            return Err(Error::CapExceeded { what: "field order", value: p as u64, cap: MAX_FIELD_ORDER });
        }
        Ok(FieldSpec { p, k: 1, modulus: vec![0, 1] })
    }

    /// Extension field `F_p[x]/(modulus)`; `modulus` lists coefficients
    /// least degree first and must be monic and irreducible.
    pub fn extension(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree at least 1".into()));
        }
        let k = (modulus.len() - 1) as u32;
        if k == 1 {
            return Self::prime(p);
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficients must lie in [0,{p})")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::CapExceeded { what: "field order", value: q, cap: MAX_FIELD_ORDER });
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {} is reducible over F_{p}", join(&modulus))));
        }
        Ok(FieldSpec { p, k, modulus })
    }

    /// `F_{p^k}` with the built-in modulus (only for q in {4, 8, 9, 16, 25, 27}).
    pub fn with_default_modulus(p: u32, k: u32) -> Result<Self> {
        if k == 1 {
            return Self::prime(p);
        }
        DEFAULT_MODULI
            .iter()
            .find(|(dp, dk, _)| *dp == p && *dk == k)
            .map(|(_, _, m)| Self::extension(p, m.to_vec()))
            .unwrap_or_else(|| {
                Err(Error::InvalidField(format!("no built-in modulus for {p}^{k}; supply one as {p}^{k}:c0,..,c{k}")))
            })
    }

    pub fn from_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::with_default_modulus(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}:{}", self.p, self.k, join(&self.modulus))
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `p`, a bare prime power `q` with a built-in modulus, `p^k`,
    /// or `p^k:c0,c1,..,ck`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad field spec '{s}'"));
        let (head, modulus) = match s.split_once(':') {
            Some((h, m)) => (h, Some(m)),
            None => (s, None),
        };
        let (p, k): (u64, Option<u32>) = match head.split_once('^') {
            Some((p, k)) => (p.trim().parse().map_err(|_| bad())?, Some(k.trim().parse().map_err(|_| bad())?)),
            None => (head.parse().map_err(|_| bad())?, None),
        };
        match (k, modulus) {
            (None, None) => {
                if is_prime(p) {
                    Self::prime(p as u32)
                } else {
                    Self::from_order(p)
                }
            }
            (Some(k), None) => Self::with_default_modulus(p as u32, k),
            (Some(k), Some(m)) => {
                let coeffs =
                    m.split(',').map(|c| c.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
                if coeffs.len() != k as usize + 1 {
                    return Err(Error::Parse(format!("modulus for degree {k} needs {} coefficients", k + 1)));
                }
                Self::extension(p as u32, coeffs)
            }
            (None, Some(_)) => Err(bad()),
        }
    }
}

/// A finite field with precomputed multiplication tables.
#[derive(Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    /// `exp[i] = g^i` and `log[g^i] = i` for a primitive `g`; empty for prime fields.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let q = spec.order();
        let mut field = Field { spec, q, exp: Vec::new(), log: Vec::new() };
        if field.spec.k > 1 {
            field.build_tables();
        }
        field
    }

    pub fn shared(spec: FieldSpec) -> Arc<Self> {
        Arc::new(Self::new(spec))
    }

    pub fn parse(text: &str) -> Result<Arc<Self>> {
        Ok(Self::shared(text.parse()?))
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        for g in 2..self.q {
            let mut exp = Vec::with_capacity(n);
            let mut x = 1;
            loop {
                exp.push(x);
                x = self.mul_slow(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() == n {
                let mut log = vec![0u32; self.q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.spec.k as usize];
        for slot in d.iter_mut() {
            *slot = a % self.spec.p;
            a /= self.spec.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.spec.p + c)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        let prod = poly::mul(&self.digits(a), &self.digits(b), p);
        let mut r = poly::rem(&prod, &self.spec.modulus, p);
        r.resize(self.spec.k as usize, 0);
        self.undigits(&r)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        if self.spec.k == 1 {
            return (a + b) % p;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.spec.p;
        if p == 2 {
            return a;
        }
        if self.spec.k == 1 {
            return (p - a) % p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.spec.k == 1 {
            return ((a as u64 * b as u64) % self.spec.p as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = (self.log[a as usize] + self.log[b as usize]) % n;
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.spec.k == 1 {
            return Some(self.pow(a, self.spec.p as u64 - 2));
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Coefficient vector (least degree first) of an encoded element.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        self.digits(a)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        if coeffs.len() != self.spec.k as usize || coeffs.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::InvalidArgument(format!(
                "coefficients {coeffs:?} do not describe an element of {}",
                self.spec
            )));
        }
        Ok(self.undigits(coeffs))
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn elem(self: &Arc<Self>, value: u32) -> Result<FieldElem> {
        if !self.contains(value) {
            return Err(Error::InvalidArgument(format!("{value} is not an element of {}", self.spec)));
        }
        Ok(FieldElem { field: Arc::clone(self), value })
    }
}

/// A field element bound to its field; arithmetic checks that both operands
/// live in the same field.
#[derive(Clone, Debug)]
pub struct FieldElem {
    field: Arc<Field>,
    value: u32,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field.spec == other.field.spec
    }
}

impl Eq for FieldElem {}

impl FieldElem {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.spec != other.field.spec {
            return Err(Error::FieldMismatch(self.field.spec.to_string(), other.field.spec.to_string()));
        }
        Ok(())
    }

    fn with(&self, value: u32) -> Self {
        FieldElem { field: Arc::clone(&self.field), value }
    }
}

pub fn ff_add(a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
    a.check(b)?;
    Ok(a.with(a.field.add(a.value, b.value)))
}

pub fn ff_mul(a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
    a.check(b)?;
    Ok(a.with(a.field.mul(a.value, b.value)))
}

pub fn ff_inv(a: &FieldElem) -> Result<FieldElem> {
    a.field.inv(a.value).map(|v| a.with(v)).ok_or(Error::ZeroInverse)
}

/// Dense polynomials over `F_p`, coefficients least degree first.
mod poly {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(*m.last().unwrap(), p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &c) in m.iter().enumerate() {
                let sub = (factor as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut x = idx;
                for _ in 0..d {
                    g.push((x % p as u64) as u32);
                    x /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}
