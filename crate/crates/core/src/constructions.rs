//! Concrete groups and codes: repetition codes and their sums, small group
//! families, groups with a prescribed derived subgroup, and the block
//! structure of `PAut(⊕ Rep_t)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::ffield::{is_prime, Field};
use crate::perm::{CayleyTable, Perm, PermGroup, MAX_GROUP_ORDER};

/// Coordinate layout of `s` blocks of length `t`: pair `(h, i)` (position
/// `h` in block `i`, both 0-based) is coordinate `i·t + h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockIndex {
    pub s: usize,
    pub t: usize,
}

impl BlockIndex {
    pub fn new(s: usize, t: usize) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::InvalidArgument(format!("block layout needs s, t >= 1, got s={s} t={t}")));
        }
        Ok(BlockIndex { s, t })
    }

    pub fn len(&self) -> usize {
        self.s * self.t
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coord(&self, h: usize, i: usize) -> usize {
        i * self.t + h
    }

    /// `(h, i)` for coordinate `r`.
    pub fn pair(&self, r: usize) -> (usize, usize) {
        (r % self.t, r / self.t)
    }
}

/// `Rep_t(F_q)`.
pub fn rep_code(t: usize, field: Arc<Field>) -> Result<LinearCode> {
    rep_sum_code(1, t, field)
}

/// `⊕_{i=1}^s Rep_t(F_q)` in the block layout.
pub fn rep_sum_code(s: usize, t: usize, field: Arc<Field>) -> Result<LinearCode> {
    let b = BlockIndex::new(s, t)?;
    let rows: Vec<Vec<u32>> = (0..s).map(|i| (0..b.len()).map(|r| (b.pair(r).1 == i) as u32).collect()).collect();
    LinearCode::from_rows(field, b.len(), rows)
}

/// `C_m` on `0..m` with `a·b = a + b mod m`.
pub fn build_cyclic(m: usize) -> Result<CayleyTable> {
    if m == 0 {
        return Err(Error::InvalidArgument("cyclic group order must be >= 1".into()));
    }
    CayleyTable::from_fn(m, |a, b| (a + b) % m)
}

/// `D_{2t} = ⟨x, y | x² = 1 = y^t, yxy = x⟩`; element `y^a x^b` has index `b·t + a`.
pub fn build_dihedral(t: usize) -> Result<CayleyTable> {
    if t == 0 {
        return Err(Error::InvalidArgument("dihedral parameter must be >= 1".into()));
    }
    CayleyTable::from_fn(2 * t, |u, v| {
        let (a, b) = (u % t, u / t);
        let (c, d) = (v % t, v / t);
        let e = if b == 0 { (a + c) % t } else { (a + t - c) % t };
        ((b + d) % 2) * t + e
    })
}

/// `T1 × T2`; the pair `(i, j)` has index `i·|T2| + j`.
pub fn direct_product(t1: &CayleyTable, t2: &CayleyTable) -> Result<CayleyTable> {
    let m2 = t2.order();
    let order = t1.order() * m2;
    if order > MAX_GROUP_ORDER {
        return Err(Error::CapExceeded { what: "group order", value: order as u64, cap: MAX_GROUP_ORDER as u64 });
    }
    CayleyTable::from_fn(order, |u, v| t1.mul(u / m2, v / m2) * m2 + t2.mul(u % m2, v % m2))
}

fn pow_mod(base: usize, mut e: usize, m: usize) -> usize {
    let (mut acc, mut b) = (1 % m, base % m);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn check_gpqm(p: usize, q: usize, m: usize) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidArgument(format!("p={p} is not prime")));
    }
    if !is_prime(q as u64) {
        return Err(Error::InvalidArgument(format!("q={q} is not prime")));
    }
    if !(q - 1).is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("p={p} does not divide q-1={}", q - 1)));
    }
    if m % q == 1 {
        return Err(Error::InvalidArgument(format!("m={m} is congruent to 1 mod q={q}")));
    }
    if pow_mod(m, p, q) != 1 {
        return Err(Error::InvalidArgument(format!("m^p = {m}^{p} is not congruent to 1 mod q={q}")));
    }
    Ok(())
}

/// Least `m` in `2..q-1` with `m^p ≡ 1 (mod q)`, for primes `p | q-1`.
pub fn smallest_gpqm_m(p: usize, q: usize) -> Result<usize> {
    if !is_prime(p as u64) || !is_prime(q as u64) || !(q - 1).is_multiple_of(p) {
        check_gpqm(p, q, 2)?;
    }
    (2..q)
        .find(|&m| pow_mod(m, p, q) == 1)
        .ok_or_else(|| Error::InvalidArgument(format!("no valid m for p={p}, q={q}")))
}

/// `G_{p,q,m} = ⟨α, β | α^p = 1 = β^q, αβα⁻¹ = β^m⟩`; element `β^a α^b`
/// has index `a + q·b`.
pub fn build_gpqm(p: usize, q: usize, m: usize) -> Result<CayleyTable> {
    check_gpqm(p, q, m)?;
    let m = m % q;
    let powers: Vec<usize> = (0..p).map(|b| pow_mod(m, b, q)).collect();
    CayleyTable::from_fn(p * q, |u, v| {
        let (a, b) = (u % q, u / q);
        let (c, d) = (v % q, v / q);
        (a + c * powers[b]) % q + q * ((b + d) % p)
    })
}

/// `A_5`, generated by `(1 2 3)` and `(1 2 3 4 5)`.
pub fn build_a5() -> CayleyTable {
    let gens = vec![Perm::parse("(1 2 3)", 5).unwrap(), Perm::parse("(1 2 3 4 5)", 5).unwrap()];
    CayleyTable::from_group(&PermGroup::closure(gens, 5).expect("A5 fits under the cap"))
}

/// Which construction produced a prescribed group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrescribedCase {
    /// `t = 1`: `C_s`.
    Cyclic,
    /// `t` odd, `s` even: `D_{2t} × C_{s/2}`.
    OddDihedral,
    /// `4 | s`: `D_{4t} × C_{s/4}`.
    EvenDihedral,
    /// Products of `G_{p,q,m}` blocks matched prime by prime.
    Metacyclic,
    /// `t = 60`: `A_5 × C_s`.
    Perfect,
}

impl fmt::Display for PrescribedCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PrescribedCase::Cyclic => "cyclic",
            PrescribedCase::OddDihedral => "odd-dihedral",
            PrescribedCase::EvenDihedral => "even-dihedral",
            PrescribedCase::Metacyclic => "metacyclic",
            PrescribedCase::Perfect => "perfect",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub enum Prescribed {
    Built { case: PrescribedCase, description: String, table: CayleyTable },
    Unsupported { reason: String },
}

fn factorize(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Injective assignment of each prime power `q^δ ∥ t` to a prime power
/// `p^γ ∥ s` with `p | q-1` and `δ ≤ γ`.
fn match_primes(s_f: &[(usize, usize)], t_f: &[(usize, usize)]) -> Option<Vec<usize>> {
    fn go(j: usize, s_f: &[(usize, usize)], t_f: &[(usize, usize)], used: &mut [bool], out: &mut Vec<usize>) -> bool {
        if j == t_f.len() {
            return true;
        }
        let (q, delta) = t_f[j];
        for (i, &(p, gamma)) in s_f.iter().enumerate() {
            if !used[i] && (q - 1) % p == 0 && delta <= gamma {
                used[i] = true;
                out.push(i);
                if go(j + 1, s_f, t_f, used, out) {
                    return true;
                }
                out.pop();
                used[i] = false;
            }
        }
        false
    }
    let mut used = vec![false; s_f.len()];
    let mut out = Vec::new();
    go(0, s_f, t_f, &mut used, &mut out).then_some(out)
}

fn product_all(factors: &[CayleyTable]) -> Result<CayleyTable> {
    let mut acc = build_cyclic(1)?;
    for f in factors {
        acc = direct_product(&acc, f)?;
    }
    Ok(acc)
}

/// A group with `|G'| = t` and `[G : G'] = s`, trying the known constructions
/// in a fixed order. Orders above the group cap are an error.
pub fn prescribed_commutator_group(s: usize, t: usize) -> Result<Prescribed> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidArgument(format!("s and t must be >= 1, got s={s} t={t}")));
    }
    let order = s.saturating_mul(t);
    if order > MAX_GROUP_ORDER {
        return Err(Error::CapExceeded { what: "group order", value: order as u64, cap: MAX_GROUP_ORDER as u64 });
    }
    let built = |case, description: String, table| Ok(Prescribed::Built { case, description, table });
    if t == 1 {
        return built(PrescribedCase::Cyclic, format!("C{s}"), build_cyclic(s)?);
    }
    if t % 2 == 1 && s.is_multiple_of(2) {
        let table = direct_product(&build_dihedral(t)?, &build_cyclic(s / 2)?)?;
        return built(PrescribedCase::OddDihedral, format!("D{} x C{}", 2 * t, s / 2), table);
    }
    if s.is_multiple_of(4) {
        let table = direct_product(&build_dihedral(2 * t)?, &build_cyclic(s / 4)?)?;
        return built(PrescribedCase::EvenDihedral, format!("D{} x C{}", 4 * t, s / 4), table);
    }
    let s_f = factorize(s);
    let t_f = factorize(t);
    if let Some(assign) = match_primes(&s_f, &t_f) {
        let mut factors = Vec::new();
        let mut names = Vec::new();
        let mut rest = s;
        for (&(q, delta), &i) in t_f.iter().zip(&assign) {
            let (p, gamma) = s_f[i];
            let m = smallest_gpqm_m(p, q)?;
            for _ in 0..delta {
                factors.push(build_gpqm(p, q, m)?);
                names.push(format!("G({p},{q},{m})"));
            }
            let c = p.pow((gamma - delta) as u32);
            if c > 1 {
                factors.push(build_cyclic(c)?);
                names.push(format!("C{c}"));
            }
            rest /= p.pow(gamma as u32);
        }
        if rest > 1 {
            factors.push(build_cyclic(rest)?);
            names.push(format!("C{rest}"));
        }
        return built(PrescribedCase::Metacyclic, names.join(" x "), product_all(&factors)?);
    }
    if t == 60 {
        let table = direct_product(&build_a5(), &build_cyclic(s)?)?;
        return built(PrescribedCase::Perfect, format!("A5 x C{s}"), table);
    }
    Ok(Prescribed::Unsupported {
        reason: format!(
            "no known construction for s={s}, t={t}: t is not 1, \
             the dihedral cases need t odd with s even or 4 | s, \
             no injective prime matching p | q-1 exists, and t != 60"
        ),
    })
}

/// Block shift `π1: (h, i) ↦ (h, i+1 mod s)`, in-block rotation
/// `π2: (h, i) ↦ (h+1 mod t, i)`, and `G = ⟨π1, π2⟩`.
pub fn repsum_abelian_generators(s: usize, t: usize) -> Result<(Perm, Perm, PermGroup)> {
    let b = BlockIndex::new(s, t)?;
    let map = |f: &dyn Fn(usize, usize) -> usize| {
        Perm::from_images(
            (0..b.len())
                .map(|r| {
                    let (h, i) = b.pair(r);
                    f(h, i) as u32
                })
                .collect(),
        )
    };
    let pi1 = map(&|h, i| b.coord(h, (i + 1) % s))?;
    let pi2 = map(&|h, i| b.coord((h + 1) % t, i))?;
    let g = PermGroup::closure(vec![pi1.clone(), pi2.clone()], b.len())?;
    Ok((pi1, pi2, g))
}

/// `π(h, i) = (τ_i(h), σ(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAutDecomposition {
    pub blocks: BlockIndex,
    pub sigma: Perm,
    pub taus: Vec<Perm>,
}

impl PAutDecomposition {
    pub fn recompose(&self) -> Perm {
        let b = self.blocks;
        let images = (0..b.len())
            .map(|r| {
                let (h, i) = b.pair(r);
                b.coord(self.taus[i].apply(h), self.sigma.apply(i)) as u32
            })
            .collect();
        Perm::from_images(images).expect("blockwise bijection")
    }
}

/// Splits a block-preserving `π` into its block permutation and in-block maps.
pub fn decompose_paut_element(pi: &Perm, s: usize, t: usize) -> Result<PAutDecomposition> {
    let b = BlockIndex::new(s, t)?;
    if pi.degree() != b.len() {
        return Err(Error::DegreeMismatch { expected: b.len(), got: pi.degree() });
    }
    let mut sigma = Vec::with_capacity(s);
    let mut taus = Vec::with_capacity(s);
    for i in 0..s {
        let target = b.pair(pi.apply(b.coord(0, i))).1;
        let mut tau = Vec::with_capacity(t);
        for h in 0..t {
            let (h2, j) = b.pair(pi.apply(b.coord(h, i)));
            if j != target {
                return Err(Error::InvalidArgument(format!(
                    "permutation splits block {} across blocks {} and {}",
                    i + 1,
                    target + 1,
                    j + 1
                )));
            }
            tau.push(h2 as u32);
        }
        sigma.push(target as u32);
        taus.push(Perm::from_images(tau)?);
    }
    Ok(PAutDecomposition { blocks: b, sigma: Perm::from_images(sigma)?, taus })
}

/// Textual group builders: `cyclic:m`, `dihedral:t`, `gpqm:p,q[,m]`, `a5`,
/// `product:<spec>x<spec>[x..]` and `prescribed:s,t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Gpqm { p: usize, q: usize, m: Option<usize> },
    A5,
    Product(Vec<GroupSpec>),
    Prescribed { s: usize, t: usize },
}

fn parse_nums(text: &str, count: std::ops::RangeInclusive<usize>, what: &str) -> Result<Vec<usize>> {
    let nums = text
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(format!("{what}: {e}")))?;
    if !count.contains(&nums.len()) {
        return Err(Error::Parse(format!("{what}: wrong number of parameters in '{text}'")));
    }
    Ok(nums)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, args) = text.split_once(':').unwrap_or((text, ""));
        match name {
            "cyclic" => Ok(GroupSpec::Cyclic(parse_nums(args, 1..=1, "cyclic")?[0])),
            "dihedral" => Ok(GroupSpec::Dihedral(parse_nums(args, 1..=1, "dihedral")?[0])),
            "gpqm" => {
                let v = parse_nums(args, 2..=3, "gpqm")?;
                Ok(GroupSpec::Gpqm { p: v[0], q: v[1], m: v.get(2).copied() })
            }
            "a5" if args.is_empty() => Ok(GroupSpec::A5),
            "prescribed" => {
                let v = parse_nums(args, 2..=2, "prescribed")?;
                Ok(GroupSpec::Prescribed { s: v[0], t: v[1] })
            }
            "product" => {
                let parts = args.split('x').map(str::parse).collect::<Result<Vec<GroupSpec>>>()?;
                if parts.len() < 2 {
                    return Err(Error::Parse(format!("product needs at least two factors: '{text}'")));
                }
                Ok(GroupSpec::Product(parts))
            }
            _ => Err(Error::Parse(format!("unknown group builder '{text}'"))),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(m) => write!(f, "cyclic:{m}"),
            GroupSpec::Dihedral(t) => write!(f, "dihedral:{t}"),
            GroupSpec::Gpqm { p, q, m: Some(m) } => write!(f, "gpqm:{p},{q},{m}"),
            GroupSpec::Gpqm { p, q, m: None } => write!(f, "gpqm:{p},{q}"),
            GroupSpec::A5 => write!(f, "a5"),
            GroupSpec::Prescribed { s, t } => write!(f, "prescribed:{s},{t}"),
            GroupSpec::Product(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "product:{}", names.join("x"))
            }
        }
    }
}

impl GroupSpec {
    pub fn table(&self) -> Result<CayleyTable> {
        match self {
            GroupSpec::Cyclic(m) => build_cyclic(*m),
            GroupSpec::Dihedral(t) => build_dihedral(*t),
            GroupSpec::Gpqm { p, q, m } => {
                let m = match m {
                    Some(m) => *m,
                    None => smallest_gpqm_m(*p, *q)?,
                };
                build_gpqm(*p, *q, m)
            }
            GroupSpec::A5 => Ok(build_a5()),
            GroupSpec::Product(parts) => {
                let tables = parts.iter().map(|p| p.table()).collect::<Result<Vec<_>>>()?;
                product_all(&tables)
            }
            GroupSpec::Prescribed { s, t } => match prescribed_commutator_group(*s, *t)? {
                Prescribed::Built { table, .. } => Ok(table),
                Prescribed::Unsupported { reason } => Err(Error::InvalidArgument(reason)),
            },
        }
    }
}
