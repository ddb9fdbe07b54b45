//! Regular and orthogonal closure operators induced by a reflective
//! subcategory, with exhaustive axiom checks.

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::reps_up_to;
use crate::cat::{
    cokernel_pair, ctx_pushout, equalizer, lift_through, pullback, Span, SubcatContext,
};
use crate::error::{Error, Result};
use crate::hom::{hom_set, MonoCsp};
use crate::inject::{pushout_stability, StabilityVerdict};
use crate::map::{same_space, subspace, CMap};
use crate::space::{point_set, PointSet, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureOp {
    Reg,
    Ort,
}

impl ClosureOp {
    pub fn name(self) -> &'static str {
        match self {
            ClosureOp::Reg => "reg",
            ClosureOp::Ort => "ort",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub m: CMap,
    /// `X̄ -> Y`
    pub closure: CMap,
    /// `X -> X̄`, with `closure ∘ dense_part = m`
    pub dense_part: CMap,
    pub is_dense: bool,
    pub is_closed: bool,
    /// Always true for the regular closure; for the orthogonal closure it can
    /// fail when `m` is outside the pushout-stable class.
    pub closure_is_embedding: bool,
}

/// `m ≤ n` as maps into a common codomain: some continuous `h` has `n ∘ h = m`.
pub fn subobject_leq(m: &CMap, n: &CMap) -> bool {
    if !same_space(m.cod(), n.cod()) {
        return false;
    }
    if n.is_injective() {
        return lift_through(n, m).is_some();
    }
    let mut csp = MonoCsp::new(m.dom(), n.dom());
    for x in 0..m.dom().n() {
        let fibre = point_set(n.dom().n(), (0..n.dom().n()).filter(|&z| n.apply(z) == m.apply(x)));
        csp.restrict(x, &fibre);
    }
    csp.solve().is_some()
}

pub fn subobject_iso(m: &CMap, n: &CMap) -> bool {
    subobject_leq(m, n) && subobject_leq(n, m)
}

fn finish(m: &CMap, closure: CMap, dense_part: CMap) -> ClosureResult {
    let full = CMap::identity(m.cod());
    ClosureResult {
        m: m.clone(),
        is_dense: subobject_leq(&full, &closure),
        is_closed: subobject_leq(&closure, m),
        closure_is_embedding: closure.is_embedding(),
        closure,
        dense_part,
    }
}

/// Equalizer of the reflected cokernel pair of `m`.
pub fn regular_closure(ctx: &SubcatContext, m: &CMap) -> Result<ClosureResult> {
    if !m.is_embedding() {
        return Err(Error::NotAnEmbedding);
    }
    let cp = cokernel_pair(m)?;
    let (_, r) = ctx.reflect(cp.apex())?;
    let u = r.compose(cp.left())?;
    let v = r.compose(cp.right())?;
    let closure = equalizer(&u, &v)?;
    let dense = lift_through(&closure, m).expect("m equalizes its cokernel pair");
    Ok(finish(m, closure, dense))
}

/// The map into the pullback induced by a commuting pair of maps.
fn pullback_mediator(pb: &Span, a: &CMap, b: &CMap) -> Option<CMap> {
    let (p1, p2) = (pb.left(), pb.right());
    let table: Option<Vec<usize>> = (0..a.dom().n())
        .map(|x| (0..pb.apex().n()).find(|&q| p1.apply(q) == a.apply(x) && p2.apply(q) == b.apply(x)))
        .collect();
    CMap::new(a.dom().clone(), pb.apex().clone(), table?).ok()
}

/// Pullback, along the reflected pushout leg out of `Y`, of the pushout of
/// `m` along the reflection of its domain.
pub fn orthogonal_closure(ctx: &SubcatContext, m: &CMap) -> Result<ClosureResult> {
    if !m.is_embedding() {
        return Err(Error::NotAnEmbedding);
    }
    let (_, r_x) = ctx.reflect(m.dom())?;
    let po = ctx_pushout(ctx, m, &r_x)?;
    // po.left: Y -> P (the leg r̄), po.right: RX -> P (the leg m̄)
    let pb = pullback(po.left(), po.right())?;
    let closure = pb.left().clone();
    let dense = pullback_mediator(&pb, m, &r_x).expect("square commutes");
    Ok(finish(m, closure, dense))
}

pub fn closure(ctx: &SubcatContext, op: ClosureOp, m: &CMap) -> Result<ClosureResult> {
    match op {
        ClosureOp::Reg => regular_closure(ctx, m),
        ClosureOp::Ort => orthogonal_closure(ctx, m),
    }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub check: &'static str,
    pub maps: Vec<CMap>,
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub checks: u64,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    fn merge(&mut self, other: AxiomReport) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }

    fn check(&mut self, name: &'static str, ok: bool, maps: impl FnOnce() -> Vec<CMap>) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                check: name,
                maps: maps(),
            });
        }
    }
}

fn member_spaces(ctx: &SubcatContext, n_max: usize) -> Result<Vec<Space>> {
    Ok(reps_up_to(n_max)?
        .into_iter()
        .filter(|y| ctx.member(y))
        .collect())
}

fn subsets(n: usize) -> Vec<PointSet> {
    (0u32..1 << n)
        .map(|mask| point_set(n, (0..n).filter(|&i| mask >> i & 1 == 1)))
        .collect()
}

/// Subspace inclusions into `y` whose domain lies in the context; up to
/// isomorphism these are all the subobjects available.
fn member_subobjects(ctx: &SubcatContext, y: &Space) -> Vec<(PointSet, CMap)> {
    subsets(y.n())
        .into_iter()
        .map(|s| {
            let (_, m) = subspace(y, &s);
            (s, m)
        })
        .filter(|(_, m)| ctx.member(m.dom()))
        .collect()
}

/// Extensiveness, monotonicity and continuity of the operator on every
/// subobject of every context space with at most `n_max` points.
pub fn operator_axioms(ctx: &SubcatContext, op: ClosureOp, n_max: usize) -> Result<AxiomReport> {
    let spaces = member_spaces(ctx, n_max)?;
    let per_space: Vec<Result<AxiomReport>> = spaces
        .par_iter()
        .map(|y| {
            let mut rep = AxiomReport::default();
            let subs = member_subobjects(ctx, y);
            let closures: Vec<ClosureResult> = subs
                .iter()
                .map(|(_, m)| closure(ctx, op, m))
                .collect::<Result<_>>()?;
            for ((_, m), c) in subs.iter().zip(&closures) {
                rep.check("extensive", subobject_leq(m, &c.closure), || vec![m.clone()]);
                rep.check(
                    "factorization",
                    c.closure.compose(&c.dense_part)? == *m,
                    || vec![m.clone()],
                );
            }
            for (i, (s, m)) in subs.iter().enumerate() {
                for (j, (t, n)) in subs.iter().enumerate() {
                    if s.is_subset(t) {
                        rep.check(
                            "monotone",
                            subobject_leq(&closures[i].closure, &closures[j].closure),
                            || vec![m.clone(), n.clone()],
                        );
                    }
                }
            }
            // continuity along every map X -> Y with X in the context
            for x in &spaces {
                for f in hom_set(x, y)? {
                    for ((_, m), c) in subs.iter().zip(&closures) {
                        let inv_m = pullback(&f, m)?;
                        if !ctx.member(inv_m.apex()) {
                            continue;
                        }
                        let c_inv = closure(ctx, op, inv_m.left())?;
                        let inv_c = pullback(&f, &c.closure)?;
                        rep.check(
                            "continuity",
                            subobject_leq(&c_inv.closure, inv_c.left()),
                            || vec![f.clone(), m.clone()],
                        );
                    }
                }
            }
            Ok(rep)
        })
        .collect();
    let mut report = AxiomReport::default();
    for r in per_space {
        report.merge(r?);
    }
    Ok(report)
}

/// Idempotence (`c(c(m)) ≅ c(m)`) and weak heredity (the dense part is
/// dense) on every subobject of every context space with at most `n_max`
/// points.
pub fn hereditary_idempotent(ctx: &SubcatContext, op: ClosureOp, n_max: usize) -> Result<AxiomReport> {
    let spaces = member_spaces(ctx, n_max)?;
    let per_space: Vec<Result<AxiomReport>> = spaces
        .par_iter()
        .map(|y| {
            let mut rep = AxiomReport::default();
            for (_, m) in member_subobjects(ctx, y) {
                let c = closure(ctx, op, &m)?;
                if !c.closure_is_embedding {
                    rep.check("closure-embedding", false, || vec![m.clone()]);
                    continue;
                }
                let cc = closure(ctx, op, &c.closure)?;
                rep.check("idempotent", subobject_iso(&cc.closure, &c.closure), || {
                    vec![m.clone()]
                });
                let d = closure(ctx, op, &c.dense_part)?;
                rep.check("weakly-hereditary", d.is_dense, || vec![m.clone()]);
            }
            Ok(rep)
        })
        .collect();
    let mut report = AxiomReport::default();
    for r in per_space {
        report.merge(r?);
    }
    Ok(report)
}

/// Re-evaluates one named check of [`operator_axioms`] or
/// [`hereditary_idempotent`] on the maps a violation carries: `[m]`,
/// `[m, n]` for `monotone` (with `m ≤ n`), `[f, m]` for `continuity`.
pub fn axiom_instance(ctx: &SubcatContext, op: ClosureOp, check: &str, maps: &[CMap]) -> Result<Option<bool>> {
    let c = |m: &CMap| closure(ctx, op, m);
    Ok(Some(match (check, maps) {
        ("extensive", [m]) => subobject_leq(m, &c(m)?.closure),
        ("factorization", [m]) => {
            let r = c(m)?;
            r.closure.compose(&r.dense_part)? == *m
        }
        ("monotone", [m, n]) => !subobject_leq(m, n) || subobject_leq(&c(m)?.closure, &c(n)?.closure),
        ("continuity", [f, m]) => {
            let inv_m = pullback(f, m)?;
            if !ctx.member(inv_m.apex()) {
                return Ok(Some(true));
            }
            let inv_c = pullback(f, &c(m)?.closure)?;
            subobject_leq(&c(inv_m.left())?.closure, inv_c.left())
        }
        ("closure-embedding", [m]) => c(m)?.closure_is_embedding,
        ("idempotent", [m]) => {
            let r = c(m)?;
            r.closure_is_embedding && subobject_iso(&c(&r.closure)?.closure, &r.closure)
        }
        ("weakly-hereditary", [m]) => {
            let r = c(m)?;
            r.closure_is_embedding && c(&r.dense_part)?.is_dense
        }
        _ => return Ok(None),
    }))
}

/// Every embedding of `b` into a context space with at most `bound` points is
/// closed for the orthogonal closure.
pub fn absolutely_closed(ctx: &SubcatContext, b: &Space, bound: usize) -> Result<bool> {
    ctx.require_member(b, "space")?;
    for y in member_spaces(ctx, bound)? {
        for m in hom_set(b, &y)?.into_iter().filter(|m| m.is_embedding()) {
            if !orthogonal_closure(ctx, &m)?.is_closed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct ClosureComparison {
    pub reg: ClosureResult,
    pub ort: ClosureResult,
    /// The two closures are isomorphic subobjects.
    pub agree: bool,
    /// The orthogonal closure factors through the regular one.
    pub ort_le_reg: bool,
    /// Bounded evidence that `m` lies in the pushout-stable class.
    pub stability: StabilityVerdict,
}

pub fn compare_closures(ctx: &SubcatContext, m: &CMap, p_bound: usize) -> Result<ClosureComparison> {
    let stability = pushout_stability(ctx, m, p_bound)?;
    let reg = regular_closure(ctx, m)?;
    let ort = orthogonal_closure(ctx, m)?;
    Ok(ClosureComparison {
        agree: subobject_iso(&reg.closure, &ort.closure),
        ort_le_reg: subobject_leq(&ort.closure, &reg.closure),
        reg,
        ort,
        stability,
    })
}
