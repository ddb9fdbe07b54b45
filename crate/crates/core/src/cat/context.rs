//! Reflective subcategories of finite spaces and the constructions relative
//! to them.

use std::fmt;
use std::sync::Arc;

use super::construct::{
    equalizer, factorize, power_with_budget, product_space, pullback, pushout, quotient, Classes,
    Cospan, Span,
};
use crate::error::{Error, Result};
use crate::hom::{hom_set, MonoCsp};
use crate::map::CMap;
use crate::space::{full_set, point_set, FinSpace, PointSet, Space};

#[derive(Clone, PartialEq, Eq)]
pub enum ContextKind {
    /// All finite spaces.
    Top,
    /// T0 spaces; reflector identifies indistinguishable points.
    Top0,
    /// Sober spaces. Finite sober spaces are exactly the finite T0 spaces.
    Sob,
    /// Indiscrete spaces.
    Ind,
    /// Zero-dimensional spaces; reflector keeps the points and keeps only
    /// the clopen sets.
    ZeroDim,
    /// Zero-dimensional T0 spaces (finite: discrete).
    ZeroDimT0,
    /// Spaces embedded in a power of the given space by their canonical map.
    Hull(Space),
}

#[derive(Clone)]
pub struct SubcatContext {
    name: String,
    kind: ContextKind,
}

impl fmt::Debug for SubcatContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubcatContext({})", self.name)
    }
}

impl SubcatContext {
    pub fn new(name: impl Into<String>, kind: ContextKind) -> SubcatContext {
        SubcatContext {
            name: name.into(),
            kind,
        }
    }

    pub fn top() -> SubcatContext {
        SubcatContext::new("top", ContextKind::Top)
    }

    pub fn top0() -> SubcatContext {
        SubcatContext::new("top0", ContextKind::Top0)
    }

    pub fn sob() -> SubcatContext {
        SubcatContext::new("sob", ContextKind::Sob)
    }

    pub fn ind() -> SubcatContext {
        SubcatContext::new("ind", ContextKind::Ind)
    }

    pub fn zerodim() -> SubcatContext {
        SubcatContext::new("zerodim", ContextKind::ZeroDim)
    }

    pub fn zerodim0() -> SubcatContext {
        SubcatContext::new("zerodim0", ContextKind::ZeroDimT0)
    }

    pub fn hull(a: &Space, space_name: &str) -> SubcatContext {
        SubcatContext::new(format!("hull({space_name})"), ContextKind::Hull(a.clone()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ContextKind {
        &self.kind
    }

    /// Whether the reflection of every finite space is an embedding.
    pub fn m_reflective(&self) -> bool {
        matches!(self.kind, ContextKind::Top)
    }

    pub fn member(&self, x: &FinSpace) -> bool {
        match &self.kind {
            ContextKind::Top => true,
            ContextKind::Top0 | ContextKind::Sob => x.classify().t0,
            ContextKind::Ind => x.classify().indiscrete,
            ContextKind::ZeroDim => x.classify().zero_dimensional,
            ContextKind::ZeroDimT0 => x.classify().discrete,
            ContextKind::Hull(a) => {
                let (e, r) = hull_relations(x, a);
                (0..x.n()).all(|p| e[p] == p && (0..x.n()).all(|q| r[p].contains(q) == x.leq(p, q)))
            }
        }
    }

    /// The reflection `r_X: X -> RX`.
    pub fn reflect(&self, x: &Space) -> Result<(Space, CMap)> {
        let r = match &self.kind {
            ContextKind::Top => CMap::identity(x),
            ContextKind::Top0 | ContextKind::Sob => {
                let mut classes = Classes::new(x.n());
                for p in 0..x.n() {
                    for q in x.class_of(p).ones() {
                        classes.union(p, q);
                    }
                }
                quotient(x, &mut classes)
            }
            ContextKind::Ind => {
                let ind = Arc::new(FinSpace::indiscrete(x.n()));
                CMap::new_unchecked(x.clone(), ind, (0..x.n()).collect())
            }
            ContextKind::ZeroDim => {
                let mut rows = vec![PointSet::with_capacity(x.n()); x.n()];
                for c in x.components() {
                    for p in c.ones() {
                        rows[p] = c.clone();
                    }
                }
                let z = Arc::new(FinSpace::from_up_rows(rows));
                CMap::new_unchecked(x.clone(), z, (0..x.n()).collect())
            }
            ContextKind::ZeroDimT0 => {
                let mut classes = Classes::new(x.n());
                for c in x.components() {
                    let first = c.ones().next().expect("components are nonempty");
                    for p in c.ones() {
                        classes.union(first, p);
                    }
                }
                quotient(x, &mut classes)
            }
            ContextKind::Hull(a) => hull_reflection(x, a),
        };
        Ok((r.cod().clone(), r))
    }

    pub fn require_member(&self, x: &FinSpace, what: &str) -> Result<()> {
        if self.member(x) {
            Ok(())
        } else {
            Err(Error::NotInSubcategory {
                context: self.name.clone(),
                what: what.to_string(),
            })
        }
    }
}

/// For the canonical map `X -> A^Hom(X,A)`: `e[p]` is the least point with the
/// same image as `p`, and `r[p]` is the set of points whose image lies above
/// that of `p`. Separating maps are found by constraint search and reused.
pub(crate) fn hull_relations(x: &FinSpace, a: &FinSpace) -> (Vec<usize>, Vec<PointSet>) {
    let n = x.n();
    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    let not_leq: Vec<(usize, usize)> = (0..a.n())
        .flat_map(|u| (0..a.n()).map(move |v| (u, v)))
        .filter(|&(u, v)| !a.leq(u, v))
        .collect();
    let distinct: Vec<(usize, usize)> = (0..a.n())
        .flat_map(|u| (0..a.n()).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .collect();
    let separate = |p: usize, q: usize, targets: &[(usize, usize)], witnesses: &mut Vec<Vec<usize>>| {
        if witnesses
            .iter()
            .any(|g| targets.contains(&(g[p], g[q])))
        {
            return true;
        }
        for &(u, v) in targets {
            let mut csp = MonoCsp::new(x, a);
            csp.fix(p, u);
            csp.fix(q, v);
            if let Some(g) = csp.solve() {
                witnesses.push(g);
                return true;
            }
        }
        false
    };
    let mut classes = Classes::new(n);
    for p in 0..n {
        for q in p + 1..n {
            if classes.find(p) != classes.find(q) && !separate(p, q, &distinct, &mut witnesses) {
                classes.union(p, q);
            }
        }
    }
    let e: Vec<usize> = (0..n).map(|p| classes.find(p)).collect();
    let mut r = vec![PointSet::with_capacity(n); n];
    for p in 0..n {
        if e[p] != p {
            continue;
        }
        for q in 0..n {
            if e[q] != q {
                continue;
            }
            if x.leq(p, q) || !separate(p, q, &not_leq, &mut witnesses) {
                r[p].insert(q);
            }
        }
    }
    for p in 0..n {
        let row: PointSet = point_set(n, (0..n).filter(|&q| r[e[p]].contains(e[q])));
        r[p] = row;
    }
    (e, r)
}

fn hull_reflection(x: &Space, a: &FinSpace) -> CMap {
    let (e, r) = hull_relations(x, a);
    let mut classes = Classes::new(x.n());
    for p in 0..x.n() {
        classes.union(p, e[p]);
    }
    let (label, count) = classes.labels();
    let mut rows = vec![PointSet::with_capacity(count); count];
    for p in 0..x.n() {
        for q in r[p].ones() {
            rows[label[p]].insert(label[q]);
        }
    }
    let rx = Arc::new(FinSpace::from_up_rows(rows));
    CMap::new_unchecked(x.clone(), rx, label)
}

/// The hull reflection computed literally: the image of the canonical map
/// into `A^Hom(X,A)`. Exponential; kept as an independent check.
pub fn hull_reflect_by_power(x: &Space, a: &Space, budget: usize) -> Result<CMap> {
    let homs = hom_set(x, a)?;
    let p = power_with_budget(a, homs.len(), budget)?;
    let eps = p.tuple_map(x, &homs)?;
    Ok(factorize(&eps).0)
}

/// Pushout in the context: the Top pushout followed by the reflection.
pub fn ctx_pushout(ctx: &SubcatContext, f: &CMap, g: &CMap) -> Result<Cospan> {
    let cs = pushout(f, g)?;
    let (_, r) = ctx.reflect(cs.apex())?;
    Cospan::new(r.compose(cs.left())?, r.compose(cs.right())?)
}

/// Cokernel pair in the context, as the reflected Top cokernel pair.
pub fn ctx_cokernel_pair(ctx: &SubcatContext, m: &CMap) -> Result<Cospan> {
    ctx_pushout(ctx, m, m)
}

pub fn ctx_equalizer(ctx: &SubcatContext, f: &CMap, g: &CMap) -> Result<CMap> {
    let e = equalizer(f, g)?;
    limit_member(ctx, e.dom())?;
    Ok(e)
}

pub fn ctx_pullback(ctx: &SubcatContext, f: &CMap, g: &CMap) -> Result<Span> {
    let s = pullback(f, g)?;
    limit_member(ctx, s.apex())?;
    Ok(s)
}

fn limit_member(ctx: &SubcatContext, x: &FinSpace) -> Result<()> {
    if ctx.member(x) {
        Ok(())
    } else {
        Err(Error::LimitOutsideSubcategory {
            context: ctx.name().to_string(),
        })
    }
}

fn require_map_members(ctx: &SubcatContext, f: &CMap) -> Result<()> {
    ctx.require_member(f.dom(), "domain")?;
    ctx.require_member(f.cod(), "codomain")
}

/// `f` is epi in the context iff the legs of its reflected cokernel pair agree.
pub fn epi_in(ctx: &SubcatContext, f: &CMap) -> Result<bool> {
    require_map_members(ctx, f)?;
    let cp = ctx_cokernel_pair(ctx, f)?;
    Ok(cp.left().table() == cp.right().table())
}

/// `m` is a regular mono in the context iff it is the equalizer of its
/// reflected cokernel pair, as a subobject.
pub fn regular_mono_in(ctx: &SubcatContext, m: &CMap) -> Result<bool> {
    require_map_members(ctx, m)?;
    if !m.is_embedding() {
        return Ok(false);
    }
    if let ContextKind::Hull(a) = &ctx.kind {
        return Ok(hull_separates_complement(m, a));
    }
    regular_mono_by_cokernel_pair(ctx, m)
}

fn regular_mono_by_cokernel_pair(ctx: &SubcatContext, m: &CMap) -> Result<bool> {
    let cp = ctx_cokernel_pair(ctx, m)?;
    let e = ctx_equalizer(ctx, cp.left(), cp.right())?;
    Ok(e.image() == m.image())
}

/// Members of the hull embed in powers of `a`, so an equalizer in the hull is
/// cut out by pairs of maps into `a`. Decides whether every point outside the
/// image of `m` is separated by a map `Y -> a × a` sending the image into the
/// diagonal.
fn hull_separates_complement(m: &CMap, a: &FinSpace) -> bool {
    let y = m.cod();
    let k = a.n();
    let aa = product_space(a, a);
    let diag = point_set(k * k, (0..k).map(|u| u * k + u));
    let mut off = full_set(k * k);
    off.difference_with(&diag);
    let image = m.image();
    let mut separated = image.clone();
    for p in 0..y.n() {
        if separated.contains(p) {
            continue;
        }
        let mut csp = MonoCsp::new(y, &aa);
        for q in image.ones() {
            csp.restrict(q, &diag);
        }
        csp.restrict(p, &off);
        match csp.solve() {
            Some(g) => separated.extend((0..y.n()).filter(|&q| off.contains(g[q]))),
            None => return false,
        }
    }
    true
}
