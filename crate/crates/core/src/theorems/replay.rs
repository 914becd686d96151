//! Re-evaluation of witness claims from serialized artifacts alone.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::code::{code_to_algebra, paut_enumerate, CoordBijection, LinearCode};
use crate::ffield::Field;
use crate::galg::{CosetProfile, GroupAlgebra, IdealKind, Side};
use crate::linalg::Echelon;
use crate::par::{self, Exec};
use crate::perm::{
    anti_isomorphism_to_centralizer, centralizer_in_symmetric, gcd, is_hall_cocyclic, quotient, Perm, PermGroup,
};

use super::witness::{Artifacts, BijectionArtifact, Witness};

type Eval<T> = std::result::Result<T, String>;

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Parsed artifacts, cached by name.
#[derive(Default)]
pub(crate) struct Context {
    fields: HashMap<String, Arc<Field>>,
    groups: HashMap<String, Arc<PermGroup>>,
    algebras: HashMap<(String, String), Arc<GroupAlgebra>>,
}

struct IdealView {
    alg: Arc<GroupAlgebra>,
    basis: Echelon,
}

fn parse_claim(claim: &str) -> Eval<(&str, Vec<&str>)> {
    let (name, rest) = claim.split_once('(').ok_or_else(|| format!("malformed claim '{claim}'"))?;
    let args = rest.strip_suffix(')').ok_or_else(|| format!("malformed claim '{claim}'"))?;
    let args = if args.is_empty() { Vec::new() } else { args.split(',').map(str::trim).collect() };
    Ok((name, args))
}

fn arity(claim: &str, args: &[&str], n: usize) -> Eval<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(format!("claim '{claim}' expects {n} arguments"))
    }
}

fn num(s: &str) -> Eval<usize> {
    s.parse().map_err(|_| format!("expected a number, got '{s}'"))
}

fn bijective(map: &[usize], n: usize) -> bool {
    let mut hit = vec![false; n];
    map.len() == n && map.iter().all(|&x| x < n && !std::mem::replace(&mut hit[x], true))
}

impl Context {
    fn field(&mut self, spec: &str) -> Eval<Arc<Field>> {
        if let Some(f) = self.fields.get(spec) {
            return Ok(Arc::clone(f));
        }
        let f = Field::parse(spec).map_err(err)?;
        self.fields.insert(spec.to_string(), Arc::clone(&f));
        Ok(f)
    }

    fn group(&mut self, a: &Artifacts, name: &str) -> Eval<Arc<PermGroup>> {
        if let Some(g) = self.groups.get(name) {
            return Ok(Arc::clone(g));
        }
        let art = a.groups.get(name).ok_or_else(|| format!("no group artifact '{name}'"))?;
        let gens = art.generators.iter().map(|s| Perm::parse(s, art.degree)).collect::<crate::Result<Vec<_>>>();
        let g = Arc::new(PermGroup::closure(gens.map_err(err)?, art.degree).map_err(err)?);
        self.groups.insert(name.to_string(), Arc::clone(&g));
        Ok(g)
    }

    fn code(&mut self, a: &Artifacts, name: &str) -> Eval<LinearCode> {
        let art = a.codes.get(name).ok_or_else(|| format!("no code artifact '{name}'"))?;
        let field = self.field(&art.field)?;
        LinearCode::from_rows(field, art.n, &art.rows).map_err(err)
    }

    fn algebra(&mut self, a: &Artifacts, group: &str, field: &str) -> Eval<Arc<GroupAlgebra>> {
        let key = (group.to_string(), field.to_string());
        if let Some(alg) = self.algebras.get(&key) {
            return Ok(Arc::clone(alg));
        }
        let alg = Arc::new(GroupAlgebra::new(self.group(a, group)?, self.field(field)?));
        self.algebras.insert(key, Arc::clone(&alg));
        Ok(alg)
    }

    fn ideal(&mut self, a: &Artifacts, name: &str) -> Eval<IdealView> {
        let art = a.ideals.get(name).ok_or_else(|| format!("no ideal artifact '{name}'"))?;
        let alg = self.algebra(a, &art.group, &art.field)?;
        if art.rows.iter().any(|r| r.len() != alg.dim() || r.iter().any(|&c| !alg.field().contains(c))) {
            return Err(format!("ideal '{name}' has malformed rows"));
        }
        let basis = Echelon::from_rows(alg.field(), alg.dim(), &art.rows);
        Ok(IdealView { alg, basis })
    }

    fn perm(&self, a: &Artifacts, name: &str) -> Eval<Perm> {
        let text = a.perms.get(name).ok_or_else(|| format!("no perm artifact '{name}'"))?;
        let degree =
            text.trim().trim_matches(|c| c == '[' || c == ']').split(',').filter(|x| !x.trim().is_empty()).count();
        Perm::parse(text, degree).map_err(err)
    }

    fn bijection<'a>(&self, a: &'a Artifacts, name: &str) -> Eval<&'a BijectionArtifact> {
        a.bijections.get(name).ok_or_else(|| format!("no bijection artifact '{name}'"))
    }

    fn coord_bijection(&mut self, a: &Artifacts, name: &str) -> Eval<CoordBijection> {
        let b = self.bijection(a, name)?;
        if b.from != "coords" {
            return Err(format!("bijection '{name}' does not start from coordinates"));
        }
        let g = self.group(a, &b.to)?;
        CoordBijection::new(g, b.map.clone()).map_err(err)
    }

    fn side(s: &str) -> Eval<Side> {
        s.parse().map_err(err)
    }

    /// Evaluates one claim. Malformed claims or artifacts are errors.
    pub fn eval(&mut self, a: &Artifacts, claim: &str) -> Eval<bool> {
        let (name, args) = parse_claim(claim)?;
        let want = |n| arity(claim, &args, n);
        match name {
            "regular" => {
                want(1)?;
                Ok(self.group(a, args[0])?.is_regular())
            }
            "abelian" => {
                want(1)?;
                Ok(self.group(a, args[0])?.is_abelian())
            }
            "cyclic" => {
                want(1)?;
                Ok(self.group(a, args[0])?.is_cyclic())
            }
            "nontrivial" => {
                want(1)?;
                Ok(!self.group(a, args[0])?.is_trivial())
            }
            "proper" => {
                want(2)?;
                let (x, g) = (self.group(a, args[0])?, self.group(a, args[1])?);
                Ok(x.is_subgroup_of(&g) && x.order() < g.order())
            }
            "order" => {
                want(2)?;
                Ok(self.group(a, args[0])?.order() == num(args[1])?)
            }
            "subgroup" => {
                want(2)?;
                Ok(self.group(a, args[0])?.is_subgroup_of(&*self.group(a, args[1])?))
            }
            "normal" => {
                want(2)?;
                let (n, g) = (self.group(a, args[0])?, self.group(a, args[1])?);
                Ok(n.is_subgroup_of(&g) && n.is_normal_in(&g))
            }
            "derived" => {
                want(2)?;
                let (d, g) = (self.group(a, args[0])?, self.group(a, args[1])?);
                Ok(*d == g.derived_subgroup())
            }
            "product" => {
                want(3)?;
                let (x, y, g) = (self.group(a, args[0])?, self.group(a, args[1])?, self.group(a, args[2])?);
                Ok(x.is_subgroup_of(&g) && y.is_subgroup_of(&g) && g.product_set(&x, &y).len() == g.order())
            }
            "coprime" => {
                want(2)?;
                Ok(gcd(self.group(a, args[0])?.order(), self.group(a, args[1])?.order()) == 1)
            }
            "hall_cocyclic" => {
                want(2)?;
                let (n, g) = (self.group(a, args[0])?, self.group(a, args[1])?);
                Ok(is_hall_cocyclic(&g, &n).unwrap_or(false))
            }
            "in_paut" => {
                want(2)?;
                let g = self.group(a, args[0])?;
                let c = self.code(a, args[1])?;
                Ok(g.degree() == c.len() && g.generators().iter().all(|p| c.paut_contains(p)))
            }
            "paut" => {
                want(2)?;
                let p = self.group(a, args[0])?;
                let c = self.code(a, args[1])?;
                Ok(*p == paut_enumerate(&c).map_err(err)?)
            }
            "centralizer" => {
                want(2)?;
                let (z, g) = (self.group(a, args[0])?, self.group(a, args[1])?);
                Ok(*z == centralizer_in_symmetric(&g).map_err(err)?)
            }
            "transport" => {
                want(3)?;
                let gphi = self.group(a, args[0])?;
                let g = self.group(a, args[1])?;
                let phi = self.coord_bijection(a, args[2])?;
                if phi.group().as_ref() != g.as_ref() {
                    return Ok(false);
                }
                Ok(*gphi == transported_group(&g, phi.phi()).map_err(err)?)
            }
            "anti_image" => {
                want(4)?;
                let (b1, b, g) = (self.group(a, args[0])?, self.group(a, args[1])?, self.group(a, args[2])?);
                let i0 = num(args[3])?.checked_sub(1).ok_or("base point is 1-based")?;
                if !b.is_subgroup_of(&g) {
                    return Ok(false);
                }
                let sigma = anti_isomorphism_to_centralizer(&g, i0).map_err(err)?;
                let gens = b.generators().iter().map(|x| sigma.sigma(g.index_of(x).unwrap()).clone()).collect();
                Ok(*b1 == PermGroup::closure(gens, g.degree()).map_err(err)?)
            }
            "join" => {
                want(3)?;
                let (k, x, y) = (self.group(a, args[0])?, self.group(a, args[1])?, self.group(a, args[2])?);
                let gens = x.generators().iter().chain(y.generators()).cloned().collect();
                Ok(*k == PermGroup::closure(gens, k.degree()).map_err(err)?)
            }
            "index_eq" => {
                want(3)?;
                let (x, g, k) = (self.group(a, args[0])?, self.group(a, args[1])?, self.group(a, args[2])?);
                Ok(x.is_subgroup_of(&g)
                    && x.is_subgroup_of(&k)
                    && g.order() % x.order() == 0
                    && g.order() / x.order() == k.order() / x.order()
                    && k.order() % x.order() == 0)
            }
            "element_order" => {
                want(3)?;
                let g = self.group(a, args[0])?;
                let p = self.perm(a, args[1])?;
                Ok(g.contains(&p) && p.order() == num(args[2])?)
            }
            "image" => {
                want(3)?;
                let c = self.code(a, args[0])?;
                let phi = self.coord_bijection(a, args[1])?;
                let i = self.ideal(a, args[2])?;
                if phi.group().as_ref() != i.alg.group().as_ref() || c.field() != i.alg.field() {
                    return Ok(false);
                }
                Ok(code_to_algebra(&c, &phi, &i.alg).map_err(err)?.basis == i.basis)
            }
            "ideal" => {
                want(2)?;
                let i = self.ideal(a, args[0])?;
                let kind: IdealKind = args[1].parse().map_err(err)?;
                Ok(i.alg.is_ideal(&i.basis, kind))
            }
            "trivial_action" => {
                want(3)?;
                let n = self.group(a, args[0])?;
                let i = self.ideal(a, args[1])?;
                Ok(i.alg.acts_trivially(&n, &i.basis, Self::side(args[2])?).unwrap_or(false))
            }
            "moves" => {
                want(4)?;
                let p = self.perm(a, args[0])?;
                let i = self.ideal(a, args[1])?;
                let r = num(args[2])?;
                let side = Self::side(args[3])?;
                let row = i.basis.rows().get(r).ok_or_else(|| format!("ideal has no row {r}"))?;
                let g = match i.alg.group().index_of(&p) {
                    Some(g) => g,
                    None => return Ok(false),
                };
                let x = i.alg.element(row.clone()).map_err(err)?;
                Ok(i.alg.mul_elem(g, &x, side).map_err(err)?.coeffs != *row)
            }
            "coset_blocks" => {
                want(4)?;
                let blocks = a.partitions.get(args[0]).ok_or_else(|| format!("no partition '{}'", args[0]))?;
                let n = self.group(a, args[1])?;
                let i = self.ideal(a, args[2])?;
                let side = Self::side(args[3])?;
                Ok(match i.alg.coset_constancy_profile(&i.basis, &n, side) {
                    Ok(CosetProfile::Constant(b)) => b == *blocks,
                    _ => false,
                })
            }
            "divisible" => {
                want(2)?;
                let d = num(args[1])?;
                let c = self.code(a, args[0])?;
                if d < 2 {
                    return Ok(false);
                }
                c.is_divisible(d).map_err(err)
            }
            "min_weight_divisible" => {
                want(2)?;
                let d = num(args[1])?;
                let c = self.code(a, args[0])?;
                Ok(d > 0 && c.min_weight().map_err(err)? % d == 0)
            }
            "perm_image" | "perm_into" => {
                want(3)?;
                let c = self.code(a, args[0])?;
                let p = self.perm(a, args[1])?;
                let d = self.code(a, args[2])?;
                if p.degree() != c.len() || c.field() != d.field() {
                    return Ok(false);
                }
                let pc = c.apply_perm(&p).map_err(err)?;
                Ok(if name == "perm_image" { pc == d } else { d.contains_code(&pc) })
            }
            "rank_union" => {
                want(3)?;
                let (c, d) = (self.code(a, args[0])?, self.code(a, args[1])?);
                if c.len() != d.len() || c.field() != d.field() {
                    return Ok(false);
                }
                Ok(c.basis().union_rank(c.field(), d.basis()) == num(args[2])?)
            }
            "quotient_iso" => {
                want(5)?;
                let iso = self.bijection(a, args[0])?.map.clone();
                let (g, n) = (self.group(a, args[1])?, self.group(a, args[2])?);
                let (h, k) = (self.group(a, args[3])?, self.group(a, args[4])?);
                let (qg, qh) = match (quotient(&g, &n), quotient(&h, &k)) {
                    (Ok(x), Ok(y)) => (x, y),
                    _ => return Ok(false),
                };
                let m = qg.table.order();
                Ok(qh.table.order() == m
                    && bijective(&iso, m)
                    && (0..m).all(|x| (0..m).all(|y| iso[qg.table.mul(x, y)] == qh.table.mul(iso[x], iso[y]))))
            }
            "coset_map" => {
                want(6)?;
                let beta = self.bijection(a, args[0])?.map.clone();
                let (g, n) = (self.group(a, args[1])?, self.group(a, args[2])?);
                let (h, k) = (self.group(a, args[3])?, self.group(a, args[4])?);
                let iso = self.bijection(a, args[5])?.map.clone();
                let (qg, qh) = match (quotient(&g, &n), quotient(&h, &k)) {
                    (Ok(x), Ok(y)) => (x, y),
                    _ => return Ok(false),
                };
                Ok(g.order() == h.order()
                    && bijective(&beta, g.order())
                    && iso.len() == qg.table.order()
                    && (0..g.order()).all(|x| qh.projection[beta[x]] == iso[qg.projection[x]]))
            }
            "transfer" => {
                want(3)?;
                let i = self.ideal(a, args[0])?;
                let beta = self.bijection(a, args[1])?.map.clone();
                let j = self.ideal(a, args[2])?;
                if !bijective(&beta, i.alg.dim()) || j.alg.dim() != i.alg.dim() || j.alg.field() != i.alg.field() {
                    return Ok(false);
                }
                Ok(Echelon::from_rows(j.alg.field(), j.alg.dim(), transfer_rows(i.basis.rows(), &beta)) == j.basis)
            }
            "dim_eq" => {
                want(2)?;
                Ok(self.ideal(a, args[0])?.basis.rank() == self.ideal(a, args[1])?.basis.rank())
            }
            "weights_eq" => {
                want(2)?;
                let (i, j) = (self.ideal(a, args[0])?, self.ideal(a, args[1])?);
                let wi = LinearCode::from_echelon(Arc::clone(i.alg.field()), i.basis).weight_distribution();
                let wj = LinearCode::from_echelon(Arc::clone(j.alg.field()), j.basis).weight_distribution();
                Ok(wi.map_err(err)? == wj.map_err(err)?)
            }
            _ => Err(format!("unknown claim '{name}'")),
        }
    }
}

/// `{φ⁻¹ λ_g φ}`: left multiplication of `G` carried to coordinates.
pub(crate) fn transported_group(g: &PermGroup, phi: &[usize]) -> crate::Result<PermGroup> {
    let mut inv = vec![0; phi.len()];
    for (i, &x) in phi.iter().enumerate() {
        inv[x] = i;
    }
    let gens = g
        .generators()
        .iter()
        .map(|p| {
            let j = g.index_of(p).expect("generator in group");
            Perm::from_images(phi.iter().map(|&x| inv[g.mul(j, x)] as u32).collect())
        })
        .collect::<crate::Result<Vec<_>>>()?;
    PermGroup::closure(gens, phi.len())
}

/// Rows relabeled by `β`: the coefficient of `x` moves to `β(x)`.
pub(crate) fn transfer_rows(rows: &[Vec<u32>], beta: &[usize]) -> Vec<Vec<u32>> {
    rows.iter()
        .map(|r| {
            let mut out = vec![0; r.len()];
            for (x, &c) in r.iter().enumerate() {
                out[beta[x]] = c;
            }
            out
        })
        .collect()
}

/// Outcome of re-evaluating one recorded claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub name: String,
    pub recorded: bool,
    pub replayed: std::result::Result<bool, String>,
}

impl ClaimCheck {
    pub fn agrees(&self) -> bool {
        self.replayed.as_ref() == Ok(&self.recorded)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub kind: String,
    pub checks: Vec<ClaimCheck>,
}

impl ReplayReport {
    /// Every recorded value was reproduced.
    pub fn agrees(&self) -> bool {
        self.checks.iter().all(ClaimCheck::agrees)
    }

    /// Every claim was recorded true and replays true.
    pub fn all_hold(&self) -> bool {
        self.agrees() && self.checks.iter().all(|c| c.recorded)
    }
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let got = match &c.replayed {
                Ok(b) => b.to_string(),
                Err(e) => format!("error: {e}"),
            };
            let tag = if c.agrees() { "ok" } else { "MISMATCH" };
            writeln!(f, "{tag:8} {} recorded={} replayed={got}", c.name, c.recorded)?;
        }
        Ok(())
    }
}

/// Re-checks every claim of `w` against its artifacts.
pub fn replay(w: &Witness) -> ReplayReport {
    let mut ctx = Context::default();
    let checks = w
        .claims
        .iter()
        .map(|c| ClaimCheck { name: c.name.clone(), recorded: c.holds, replayed: ctx.eval(&w.artifacts, &c.name) })
        .collect();
    ReplayReport { kind: w.kind.clone(), checks }
}

/// Replays independent witnesses, possibly in parallel; order is preserved.
pub fn replay_all(witnesses: &[Witness], exec: Exec) -> Vec<ReplayReport> {
    par::map(exec, witnesses.iter().collect(), replay)
}
