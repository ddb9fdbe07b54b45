//! The monad `T(n) = Hom(A^n, A)` on finite sets, its comparison algebras,
//! and the co-unit `ε_B: B -> A^Hom(B,A)`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::reps_up_to;
use crate::cat::{power_with_budget, regular_mono_in, Power, SubcatContext, DEFAULT_SIZE_BUDGET};
use crate::error::{Error, Result};
use crate::hom::{for_each_hom, hom_set, random_hom, search_space, MonoCsp};
use crate::map::CMap;
use crate::space::{FinSpace, Space};

/// `|A|^|T(n)|` above which `monad_at` refuses: codes of points of the double
/// power must stay addressable.
pub const DEFAULT_DOUBLE_POWER_BUDGET: usize = 1 << 16;

/// Continuous maps streamed per exhaustive law check before falling back to
/// sampling.
pub const DEFAULT_STREAM_CAP: u64 = 1 << 20;

/// Random maps drawn when a law check cannot be exhaustive.
pub const DEFAULT_SAMPLES: usize = 2048;

fn too_big(needed: u128, budget: usize) -> Error {
    Error::SizeBudgetExceeded { needed, budget }
}

/// The tuple `(g(x))_g` for every point `x` of `b`, with `g` running over
/// `Hom(b, a)` in sorted order.
pub fn counit_tuples(a: &Space, b: &Space) -> Result<(Vec<CMap>, Vec<Vec<usize>>)> {
    let homs = hom_set(b, a)?;
    let tuples = (0..b.n())
        .map(|x| homs.iter().map(|g| g.apply(x)).collect())
        .collect();
    Ok((homs, tuples))
}

/// Decides whether the co-unit is an embedding from its tuples alone:
/// injective, and componentwise order reflects the order of `b`.
pub fn tuples_form_embedding(a: &FinSpace, b: &FinSpace, tuples: &[Vec<usize>]) -> bool {
    let leq = |s: &[usize], t: &[usize]| s.iter().zip(t).all(|(&u, &v)| a.leq(u, v));
    (0..b.n()).all(|x| {
        (0..b.n()).all(|y| {
            (x == y || tuples[x] != tuples[y]) && (!leq(&tuples[x], &tuples[y]) || b.leq(x, y))
        })
    })
}

#[derive(Clone, Debug)]
pub struct Counit {
    pub homs: Vec<CMap>,
    pub power: Power,
    /// `ε_B: B -> A^Hom(B,A)`
    pub map: CMap,
}

impl Counit {
    /// `π_g ∘ ε_B = g` for every `g`.
    pub fn equations_hold(&self) -> bool {
        self.homs
            .iter()
            .enumerate()
            .all(|(i, g)| self.power.projection(i).compose(&self.map).as_ref() == Ok(g))
    }
}

pub fn counit(a: &Space, b: &Space) -> Result<Counit> {
    counit_with_budget(a, b, DEFAULT_SIZE_BUDGET)
}

pub fn counit_with_budget(a: &Space, b: &Space, budget: usize) -> Result<Counit> {
    let homs = hom_set(b, a)?;
    let power = power_with_budget(a, homs.len(), budget)?;
    let map = power.tuple_map(b, &homs)?;
    Ok(Counit { homs, power, map })
}

/// `T(n)` with its unit and multiplication. Elements of `T(n)` are indexed
/// by their position in the sorted `Hom(A^n, A)`. An element of `T(T(n))` is
/// given as its table over `A^T(n)`, whose points are coded in base `|A|`
/// with the first element of `T(n)` most significant.
#[derive(Clone, Debug)]
pub struct MonadInstance {
    base: Space,
    n: usize,
    power: Power,
    carrier: Vec<CMap>,
    index: HashMap<Vec<usize>, usize>,
    unit: Vec<usize>,
    /// code of `ε(p) = (t(p))_t` in `A^T(n)` for each point `p` of `A^n`
    eps_codes: Vec<usize>,
}

pub fn monad_at(a: &Space, n: usize) -> Result<MonadInstance> {
    monad_at_with_budget(a, n, DEFAULT_SIZE_BUDGET, DEFAULT_DOUBLE_POWER_BUDGET)
}

pub fn monad_at_with_budget(
    a: &Space,
    n: usize,
    budget: usize,
    double_budget: usize,
) -> Result<MonadInstance> {
    let power = power_with_budget(a, n, budget)?;
    let carrier = hom_set(power.space(), a)?;
    let double = search_space(a.n(), carrier.len());
    if double > double_budget as u128 {
        return Err(too_big(double, double_budget));
    }
    let index: HashMap<Vec<usize>, usize> = carrier
        .iter()
        .enumerate()
        .map(|(i, t)| (t.table().to_vec(), i))
        .collect();
    let unit = power
        .projections()
        .iter()
        .map(|p| index[p.table()])
        .collect();
    let m = a.n();
    let eps_codes = (0..power.space().n())
        .map(|p| carrier.iter().fold(0, |acc, t| acc * m + t.apply(p)))
        .collect();
    Ok(MonadInstance {
        base: a.clone(),
        n,
        power,
        carrier,
        index,
        unit,
        eps_codes,
    })
}

impl MonadInstance {
    pub fn base(&self) -> &Space {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn power(&self) -> &Power {
        &self.power
    }

    pub fn carrier(&self) -> &[CMap] {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    /// `η_n(i)`: the index of the `i`-th projection.
    pub fn unit(&self) -> &[usize] {
        &self.unit
    }

    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    /// Number of points of `A^T(n)`.
    pub fn double_power_points(&self) -> usize {
        self.base.n().pow(self.carrier.len() as u32)
    }

    /// `μ(Φ) = Φ ∘ ε`, reading `Φ` through `phi(code)`. `None` if the result
    /// is not continuous, which means `Φ` was not.
    pub fn mult_with(&self, phi: impl Fn(usize) -> usize) -> Option<usize> {
        let table: Vec<usize> = self.eps_codes.iter().map(|&c| phi(c)).collect();
        self.index_of(&table)
    }

    pub fn mult(&self, phi: &[usize]) -> Option<usize> {
        self.mult_with(|c| phi[c])
    }

    /// Digit `s` of a code of `A^T(n)`.
    fn digit(&self, code: usize, s: usize) -> usize {
        let m = self.base.n();
        (code / m.pow((self.carrier.len() - 1 - s) as u32)) % m
    }

    /// `T(f)` for a function `f: n -> target.n`, as an index table
    /// `T(n) -> T(m)`: `t ↦ t ∘ A^f`.
    pub fn t_map(&self, target: &MonadInstance, f: &[usize]) -> Option<Vec<usize>> {
        let tp = &target.power;
        let sp = &self.power;
        let pull: Vec<usize> = (0..tp.space().n())
            .map(|q| {
                let coords: Vec<usize> = f.iter().map(|&j| tp.coord(q, j)).collect();
                sp.encode(&coords)
            })
            .collect();
        self.carrier
            .iter()
            .map(|t| {
                let table: Vec<usize> = pull.iter().map(|&p| t.apply(p)).collect();
                target.index_of(&table)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum LawMode {
    /// Every instance checked.
    Exhaustive { instances: u64 },
    /// Streamed instances up to a cap, then seeded random ones.
    Sampled { instances: u64, seed: u64 },
    /// Not attempted: the structure needed exceeds the size budget.
    SkippedBudget,
}

#[derive(Clone, Debug)]
pub struct MonadReport {
    pub n: usize,
    pub carrier_size: usize,
    pub unit_checks: u64,
    pub associativity: LawMode,
    pub violations: Vec<String>,
}

/// Unit laws exactly over `T(n)`; associativity over all of `T(T(n))`.
///
/// Both sides of the associativity square, applied to `Ψ` and evaluated at
/// `p ∈ A^n`, are `Ψ` evaluated at a point of `A^T(T(n))`: the point
/// `(μ(Φ)(p))_Φ` on one side and `(Φ(ε(p)))_Φ` on the other. The law holds
/// for every `Ψ` iff these points agree, which is checked coordinatewise by
/// streaming `Φ`.
pub fn verify_monad(m: &MonadInstance) -> Result<MonadReport> {
    let mut violations = Vec::new();
    let size = m.size();
    let double = m.double_power_points();
    let mut unit_checks = 0;
    for t in 0..size {
        unit_checks += 2;
        // μ ∘ η_T: the projection at t
        if m.mult_with(|c| m.digit(c, t)) != Some(t) {
            violations.push(format!("mu.eta_T at t={t}"));
        }
        // μ ∘ T(η): a ↦ t((a_{η(i)})_i)
        let lifted = |c: usize| {
            let coords: Vec<usize> = m.unit.iter().map(|&u| m.digit(c, u)).collect();
            m.carrier[t].apply(m.power.encode(&coords))
        };
        if m.mult_with(lifted) != Some(t) {
            violations.push(format!("mu.T(eta) at t={t}"));
        }
    }
    let associativity = if double > DEFAULT_SIZE_BUDGET {
        LawMode::SkippedBudget
    } else {
        let dp = power_with_budget(&m.base, size, DEFAULT_SIZE_BUDGET)?;
        let points: Vec<usize> = (0..m.power.space().n())
            .map(|p| {
                let coords: Vec<usize> = m.carrier.iter().map(|t| t.apply(p)).collect();
                dp.encode(&coords)
            })
            .collect();
        let mut count = 0u64;
        let flow = for_each_hom(dp.space(), &m.base, |phi| {
            count += 1;
            match m.mult(phi) {
                None => violations.push(format!("mu not closed at phi #{count}")),
                Some(r) => {
                    for (p, &code) in points.iter().enumerate() {
                        if m.carrier[r].apply(p) != phi[code] {
                            violations.push(format!("associativity at phi #{count}, p={p}"));
                            return ControlFlow::Break(());
                        }
                    }
                }
            }
            if count >= DEFAULT_STREAM_CAP * 16 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if flow.is_break() && violations.is_empty() {
            return Err(too_big(count as u128, (DEFAULT_STREAM_CAP * 16) as usize));
        }
        LawMode::Exhaustive { instances: count }
    };
    Ok(MonadReport {
        n: m.n,
        carrier_size: size,
        unit_checks,
        associativity,
        violations,
    })
}

/// Naturality of `η` and `μ` along every function between carriers of size
/// at most `n_max`.
pub fn verify_naturality(a: &Space, n_max: usize) -> Result<Vec<String>> {
    let monads: Vec<MonadInstance> = (0..=n_max).map(|n| monad_at(a, n)).collect::<Result<_>>()?;
    let mut violations = Vec::new();
    for src in &monads {
        let dp = power_with_budget(a, src.size(), DEFAULT_SIZE_BUDGET)?;
        for dst in &monads {
            let (n, k) = (src.n, dst.n);
            let functions: Vec<Vec<usize>> = (0..search_space(k, n) as usize)
                .map(|code| {
                    let mut f = vec![0; n];
                    let mut c = code;
                    for slot in f.iter_mut().rev() {
                        *slot = c % k;
                        c /= k;
                    }
                    f
                })
                .collect();
            let maps: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = functions
                .into_iter()
                .map(|f| {
                    let tf = src.t_map(dst, &f).ok_or(Error::NotComposable)?;
                    // A^T(f): A^T(m) -> A^T(n)
                    let pull: Vec<usize> = (0..dst.double_power_points())
                        .map(|c| {
                            let coords: Vec<usize> = tf.iter().map(|&s| dst.digit(c, s)).collect();
                            dp.encode(&coords)
                        })
                        .collect();
                    Ok((f, tf, pull))
                })
                .collect::<Result<_>>()?;
            for (f, tf, _) in &maps {
                for i in 0..n {
                    if tf[src.unit[i]] != dst.unit[f[i]] {
                        violations.push(format!("eta naturality f={f:?} i={i}"));
                    }
                }
            }
            if maps.is_empty() {
                continue;
            }
            let _ = for_each_hom(dp.space(), a, |phi| {
                let lhs = src.mult(phi);
                for (f, tf, pull) in &maps {
                    let rhs = dst.mult_with(|c| phi[pull[c]]);
                    if lhs.map(|r| tf[r]) != rhs {
                        violations.push(format!("mu naturality f={f:?}"));
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            });
        }
    }
    Ok(violations)
}

/// The algebra on `Hom(B, A)` whose structure map sends `Φ` to `Φ ∘ ε_B`.
#[derive(Clone, Debug)]
pub struct EMAlgebra {
    base: Space,
    b: Space,
    carrier: Vec<CMap>,
    index: HashMap<Vec<usize>, usize>,
    /// `A^C` for `C = Hom(B, A)`
    power: Power,
    /// code of `ε_B(x)` in `A^C` for each point `x` of `B`
    eps_codes: Vec<usize>,
}

pub fn comparison_algebra(a: &Space, b: &Space) -> Result<EMAlgebra> {
    let c = counit(a, b)?;
    let index = c
        .homs
        .iter()
        .enumerate()
        .map(|(i, g)| (g.table().to_vec(), i))
        .collect();
    Ok(EMAlgebra {
        base: a.clone(),
        b: b.clone(),
        eps_codes: c.map.table().to_vec(),
        carrier: c.homs,
        index,
        power: c.power,
    })
}

impl EMAlgebra {
    pub fn carrier(&self) -> &[CMap] {
        &self.carrier
    }

    pub fn space(&self) -> &Space {
        &self.b
    }

    pub fn base(&self) -> &Space {
        &self.base
    }

    /// `α(Φ) = Φ ∘ ε_B` for `Φ` given as a table over `A^C`.
    pub fn structure(&self, phi: &[usize]) -> Option<usize> {
        let table: Vec<usize> = self.eps_codes.iter().map(|&c| phi[c]).collect();
        self.index.get(&table).copied()
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraReport {
    pub carrier_size: usize,
    pub unit_checks: u64,
    pub multiplication: LawMode,
    pub violations: Vec<String>,
}

/// Unit law exactly; the multiplication law reduces, as in
/// [`verify_monad`], to `Φ(ε_B(b)) = α(Φ)(b)` for every `Φ ∈ T(C)`, which is
/// streamed exhaustively when `T(C)` is small and sampled otherwise.
pub fn verify_algebra(alg: &EMAlgebra, seed: u64) -> Result<AlgebraReport> {
    let mut violations = Vec::new();
    let p = &alg.power;
    let k = alg.carrier.len();
    for c in 0..k {
        let proj = p.projection(c);
        if alg.structure(proj.table()) != Some(c) {
            violations.push(format!("alpha.eta at c={c}"));
        }
    }
    // points ε_B(b), encoded independently of the stored codes
    let points: Vec<usize> = (0..alg.b.n())
        .map(|x| {
            let coords: Vec<usize> = alg.carrier.iter().map(|g| g.apply(x)).collect();
            p.encode(&coords)
        })
        .collect();
    let check = |phi: &[usize], label: &str, violations: &mut Vec<String>| match alg.structure(phi) {
        None => violations.push(format!("alpha not closed at {label}")),
        Some(r) => {
            if points
                .iter()
                .enumerate()
                .any(|(x, &code)| alg.carrier[r].apply(x) != phi[code])
            {
                violations.push(format!("alpha.mu at {label}"));
            }
        }
    };
    let mut count = 0u64;
    let flow = for_each_hom(p.space(), &alg.base, |phi| {
        count += 1;
        check(phi, &format!("phi #{count}"), &mut violations);
        if count >= DEFAULT_STREAM_CAP {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    let multiplication = if flow.is_continue() {
        LawMode::Exhaustive { instances: count }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..DEFAULT_SAMPLES {
            if let Some(phi) = random_hom(p.space(), &alg.base, &mut rng) {
                check(&phi, &format!("sample #{i}"), &mut violations);
            }
        }
        LawMode::Sampled {
            instances: count + DEFAULT_SAMPLES as u64,
            seed,
        }
    };
    Ok(AlgebraReport {
        carrier_size: k,
        unit_checks: k as u64,
        multiplication,
        violations,
    })
}

/// A retraction `t` with `t ∘ f = id`, if one exists.
pub fn split_mono(f: &CMap) -> Option<CMap> {
    if !f.is_injective() {
        return None;
    }
    let mut csp = MonoCsp::new(f.cod(), f.dom());
    for x in 0..f.dom().n() {
        csp.fix(f.apply(x), x);
    }
    let table = csp.solve()?;
    CMap::new(f.cod().clone(), f.dom().clone(), table).ok()
}

#[derive(Clone, Debug)]
pub struct ProbeRow {
    pub b: Space,
    pub hom_size: usize,
    /// `None` when the power `A^Hom(B,A)` exceeds the size budget.
    pub embedding: Option<bool>,
    pub regular_mono: Option<bool>,
    pub split_mono: Option<bool>,
}

#[derive(Clone, Debug, Default)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    pub skipped_budget: usize,
    pub violations: Vec<String>,
}

/// For every space `B` with at most `n_max` points whose canonical map into
/// a power of `A` is an embedding: `ε_B` is a regular mono in the hull of
/// `A`, and with `require_split` also a split mono. The empty space is
/// exempt from the split requirement since nothing retracts onto it.
pub fn faithfulness_probe(
    a: &Space,
    a_name: &str,
    n_max: usize,
    require_split: bool,
) -> Result<ProbeReport> {
    let hull = SubcatContext::hull(a, a_name);
    let mut report = ProbeReport::default();
    for b in reps_up_to(n_max)? {
        let (homs, tuples) = counit_tuples(a, &b)?;
        if !tuples_form_embedding(a, &b, &tuples) {
            continue;
        }
        let mut row = ProbeRow {
            b: b.clone(),
            hom_size: homs.len(),
            embedding: Some(true),
            regular_mono: None,
            split_mono: None,
        };
        match counit(a, &b) {
            Ok(c) => {
                let emb = c.map.is_embedding();
                let reg = regular_mono_in(&hull, &c.map)?;
                let split = split_mono(&c.map).is_some();
                if !emb || !c.equations_hold() {
                    report.violations.push(format!("counit of {b:?} is not an embedding"));
                }
                if !reg {
                    report.violations.push(format!("counit of {b:?} is not a regular mono"));
                }
                if require_split && b.n() > 0 && !split {
                    report.violations.push(format!("counit of {b:?} is not a split mono"));
                }
                row.embedding = Some(emb);
                row.regular_mono = Some(reg);
                row.split_mono = Some(split);
            }
            Err(Error::SizeBudgetExceeded { .. }) => report.skipped_budget += 1,
            Err(e) => return Err(e),
        }
        report.rows.push(row);
    }
    Ok(report)
}

/// Maps between members of the hull of `A` that are orthogonal to `A` but
/// not homeomorphisms.
pub fn iso_reflection_probe(a: &Space, n_max: usize) -> Result<Vec<CMap>> {
    let hull = SubcatContext::hull(a, "A");
    let members: Vec<Space> = reps_up_to(n_max)?
        .into_iter()
        .filter(|x| hull.member(x))
        .collect();
    let mut bad = Vec::new();
    for x in &members {
        for y in &members {
            for f in hom_set(x, y)? {
                if crate::inject::orthogonal_along(a, &f)? && !f.is_isomorphism() {
                    bad.push(f);
                }
            }
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{mk_space, point_set};
    use std::sync::Arc;

    fn s() -> Space {
        Arc::new(FinSpace::sierpinski())
    }

    fn i2() -> Space {
        Arc::new(FinSpace::indiscrete(2))
    }

    #[test]
    fn carrier_counts() {
        let sizes: Vec<usize> = (0..=2).map(|n| monad_at(&s(), n).unwrap().size()).collect();
        assert_eq!(sizes, vec![2, 3, 6]);
        let sizes: Vec<usize> = (0..=2).map(|n| monad_at(&i2(), n).unwrap().size()).collect();
        assert_eq!(sizes, vec![2, 4, 16]);
        let pt: Space = Arc::new(FinSpace::point());
        for n in 0..=3 {
            assert_eq!(monad_at(&pt, n).unwrap().size(), 1);
        }
        assert!(matches!(monad_at(&s(), 3), Err(Error::SizeBudgetExceeded { .. })));
    }

    #[test]
    fn sierpinski_terms_are_opens() {
        for n in 0..=2 {
            let m = monad_at(&s(), n).unwrap();
            let mut opens: Vec<_> = m
                .carrier()
                .iter()
                .map(|t| t.preimage(&point_set(2, [1])))
                .collect();
            opens.sort_by(crate::space::cmp_sets);
            assert_eq!(opens, m.power().space().opens());
        }
    }

    #[test]
    fn small_monad_laws() {
        for n in 0..=1 {
            let rep = verify_monad(&monad_at(&s(), n).unwrap()).unwrap();
            assert!(rep.violations.is_empty());
            assert!(matches!(rep.associativity, LawMode::Exhaustive { .. }));
        }
        let rep = verify_monad(&monad_at(&i2(), 1).unwrap()).unwrap();
        assert!(rep.violations.is_empty());
        assert_eq!(
            rep.associativity,
            LawMode::Exhaustive { instances: 1 << 16 }
        );
    }

    #[test]
    fn counit_examples() {
        let pt: Space = Arc::new(FinSpace::point());
        let c = counit(&s(), &pt).unwrap();
        assert_eq!(c.power.space().n(), 4);
        assert!(c.equations_hold());
        let c = counit(&s(), &s()).unwrap();
        assert_eq!(c.homs.len(), 3);
        assert!(c.map.is_embedding() && c.equations_hold());
    }

    #[test]
    fn comparison_algebras() {
        let alg = comparison_algebra(&s(), &s()).unwrap();
        assert_eq!(alg.carrier().len(), 3);
        let rep = verify_algebra(&alg, 1).unwrap();
        assert!(rep.violations.is_empty());
        assert!(matches!(rep.multiplication, LawMode::Exhaustive { .. }));
        let alg = comparison_algebra(&i2(), &i2()).unwrap();
        assert_eq!(alg.carrier().len(), 4);
        let rep = verify_algebra(&alg, 1).unwrap();
        assert!(rep.violations.is_empty());
        let empty: Space = Arc::new(FinSpace::empty());
        let alg = comparison_algebra(&s(), &empty).unwrap();
        assert_eq!(alg.carrier().len(), 1);
        assert!(verify_algebra(&alg, 1).unwrap().violations.is_empty());
    }

    #[test]
    fn split_mono_examples() {
        let pt: Space = Arc::new(FinSpace::point());
        let f = CMap::constant(&pt, &s(), 1).unwrap();
        assert!(split_mono(&f).is_some());
        let c = counit(&i2(), &i2()).unwrap();
        let t = split_mono(&c.map).unwrap();
        assert!(t.compose(&c.map).unwrap().is_isomorphism());
        // {a, b} discrete inside ({a,b,c}, opens ∅,{a},{b},{a,b},Y)
        let y: Space = Arc::new(mk_space(3, &[vec![], vec![0], vec![1], vec![0, 1], vec![0, 1, 2]]).unwrap());
        let d2: Space = Arc::new(FinSpace::discrete(2));
        let m = CMap::new(d2, y, vec![0, 1]).unwrap();
        assert!(m.is_embedding());
        assert!(split_mono(&m).is_none());
    }

    #[test]
    fn tuple_route_agrees_with_power_route() {
        for b in reps_up_to(3).unwrap() {
            for a in [s(), i2()] {
                let (_, tuples) = counit_tuples(&a, &b).unwrap();
                let c = counit(&a, &b).unwrap();
                assert_eq!(tuples_form_embedding(&a, &b, &tuples), c.map.is_embedding());
            }
        }
    }

    #[test]
    fn probes_on_small_spaces() {
        let rep = faithfulness_probe(&s(), "S", 2, false).unwrap();
        assert_eq!(rep.rows.len(), 4);
        assert!(rep.violations.is_empty());
        let rep = faithfulness_probe(&i2(), "I2", 2, true).unwrap();
        assert_eq!(rep.rows.len(), 3);
        assert!(rep.violations.is_empty());
        assert!(iso_reflection_probe(&s(), 2).unwrap().is_empty());
    }

    #[test]
    fn naturality_up_to_one() {
        assert!(verify_naturality(&s(), 1).unwrap().is_empty());
    }
}
