//! Injectivity, orthogonality, clopen lifting and bounded pushout stability.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::reps_up_to;
use crate::cat::{ctx_pushout, SubcatContext};
use crate::error::{Error, Result};
use crate::hom::{extend_pinned, for_each_hom, hom_set, search_space, DEFAULT_HOM_BUDGET};
use crate::map::CMap;
use crate::space::{FinSpace, Space};

fn check_hom_budget(x: &FinSpace, a: &FinSpace) -> Result<()> {
    let needed = search_space(a.n(), x.n());
    if needed > DEFAULT_HOM_BUDGET {
        return Err(Error::SizeBudgetExceeded {
            needed,
            budget: DEFAULT_HOM_BUDGET as usize,
        });
    }
    Ok(())
}

/// Every `g: dom f -> A` extends along `f`.
pub fn injective_along(a: &FinSpace, f: &CMap) -> Result<bool> {
    check_hom_budget(f.dom(), a)?;
    check_hom_budget(f.cod(), a)?;
    let mut ok = true;
    let mut pins = Vec::with_capacity(f.dom().n());
    let _ = for_each_hom(f.dom(), a, |g| {
        pins.clear();
        for (x, &v) in g.iter().enumerate() {
            pins.push((f.apply(x), v));
        }
        // two points with one image but different values cannot extend
        let consistent = pins
            .iter()
            .all(|&(p, v)| pins.iter().all(|&(q, w)| p != q || v == w));
        if !consistent || extend_pinned(f.cod(), a, &pins).is_none() {
            ok = false;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(ok)
}

/// Restriction along `f` is a bijection `Hom(cod f, A) -> Hom(dom f, A)`.
pub fn orthogonal_along(a: &FinSpace, f: &CMap) -> Result<bool> {
    check_hom_budget(f.dom(), a)?;
    check_hom_budget(f.cod(), a)?;
    let mut restricted = HashSet::new();
    let mut count = 0u64;
    let _ = for_each_hom(f.cod(), a, |h| {
        count += 1;
        restricted.insert(f.table().iter().map(|&p| h[p]).collect::<Vec<_>>());
        ControlFlow::Continue(())
    });
    let below = crate::hom::hom_count(f.dom(), a);
    Ok(restricted.len() as u64 == count && count == below)
}

/// Every clopen of the domain is the preimage of a clopen of the codomain.
pub fn clopen_lifting(m: &CMap) -> Result<bool> {
    if !m.is_embedding() {
        return Err(Error::NotAnEmbedding);
    }
    let lifted: HashSet<_> = m.cod().clopens().iter().map(|h| m.preimage(h)).collect();
    Ok(m.dom().clopens().iter().all(|g| lifted.contains(g)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityStatus {
    StableUpToBound,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub bound: usize,
    /// `(f, leg)`: the map pushed out along and the leg opposite `m` that is
    /// not an embedding.
    pub witness: Option<(CMap, CMap)>,
    pub pushouts_checked: u64,
}

impl StabilityVerdict {
    pub fn is_stable(&self) -> bool {
        self.status == StabilityStatus::StableUpToBound
    }
}

/// Pushes `m` out along every `f: dom m -> Z` with `Z` in the context and at
/// most `bound` points, and checks that the opposite leg is an embedding.
pub fn pushout_stability(ctx: &SubcatContext, m: &CMap, bound: usize) -> Result<StabilityVerdict> {
    if !m.is_embedding() {
        return Err(Error::NotAnEmbedding);
    }
    ctx.require_member(m.dom(), "domain")?;
    ctx.require_member(m.cod(), "codomain")?;
    let targets: Vec<Space> = reps_up_to(bound)?
        .into_iter()
        .filter(|z| ctx.member(z))
        .collect();
    let mut checked = 0;
    for z in &targets {
        for f in hom_set(m.dom(), z)? {
            checked += 1;
            let po = ctx_pushout(ctx, m, &f)?;
            let leg = po.right().clone();
            if !leg.is_embedding() {
                return Ok(StabilityVerdict {
                    status: StabilityStatus::Counterexample,
                    bound,
                    witness: Some((f, leg)),
                    pushouts_checked: checked,
                });
            }
        }
    }
    Ok(StabilityVerdict {
        status: StabilityStatus::StableUpToBound,
        bound,
        witness: None,
        pushouts_checked: checked,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// `A`-injective iff embedding.
    InjVsEmbedding,
    /// `A`-injective iff embedding with clopen lifting.
    InjVsClopenLifting,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub mode: SweepMode,
    pub n_max: usize,
    pub spaces: usize,
    pub maps_checked: u64,
    pub embeddings: u64,
    /// Maps on which the two predicates disagree.
    pub disagreements: Vec<CMap>,
    /// Embeddings without clopen lifting (recorded in either mode).
    pub embeddings_without_lifting: Vec<CMap>,
}

/// Compares injectivity with the structural predicate of `mode` on every map
/// between context members with at most `n_max` points.
pub fn sweep_equivalence(
    ctx: &SubcatContext,
    a: &FinSpace,
    n_max: usize,
    mode: SweepMode,
) -> Result<SweepReport> {
    let spaces: Vec<Space> = reps_up_to(n_max)?
        .into_iter()
        .filter(|x| ctx.member(x))
        .collect();
    let pairs: Vec<(Space, Space)> = spaces
        .iter()
        .flat_map(|x| spaces.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    type Partial = (u64, u64, Vec<CMap>, Vec<CMap>);
    let parts: Vec<Result<Partial>> = pairs
        .par_iter()
        .map(|(x, y)| {
            let (mut maps, mut embeddings) = (0, 0);
            let (mut bad, mut unlifted) = (Vec::new(), Vec::new());
            for m in hom_set(x, y)? {
                maps += 1;
                let emb = m.is_embedding();
                let lifts = emb && clopen_lifting(&m)?;
                if emb {
                    embeddings += 1;
                    if !lifts {
                        unlifted.push(m.clone());
                    }
                }
                let structural = match mode {
                    SweepMode::InjVsEmbedding => emb,
                    SweepMode::InjVsClopenLifting => lifts,
                };
                if injective_along(a, &m)? != structural {
                    bad.push(m);
                }
            }
            Ok((maps, embeddings, bad, unlifted))
        })
        .collect();
    let mut report = SweepReport {
        mode,
        n_max,
        spaces: spaces.len(),
        maps_checked: 0,
        embeddings: 0,
        disagreements: Vec::new(),
        embeddings_without_lifting: Vec::new(),
    };
    for part in parts {
        let (maps, embs, bad, unlifted) = part?;
        report.maps_checked += maps;
        report.embeddings += embs;
        report.disagreements.extend(bad);
        report.embeddings_without_lifting.extend(unlifted);
    }
    Ok(report)
}

#[derive(Clone, Debug, Default)]
pub struct LemmaReport {
    pub pairs_checked: u64,
    /// `(m, n)` with both `A`-injective but `m ∘ n` not.
    pub composition_violations: Vec<(CMap, CMap)>,
    /// `(m, n)` with `m ∘ n` `A`-injective but `n` not.
    pub cancellation_violations: Vec<(CMap, CMap)>,
}

/// Closure of `A`-injectivity under composition and its left cancellation
/// property, over all composable pairs among spaces with at most `n_max`
/// points.
pub fn injectivity_class_lemma(a: &FinSpace, n_max: usize) -> Result<LemmaReport> {
    let spaces = reps_up_to(n_max)?;
    let maps: Vec<Vec<Vec<CMap>>> = spaces
        .iter()
        .map(|x| spaces.iter().map(|y| hom_set(x, y)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    // injectivity of every map, keyed by (dom index, cod index, table)
    let mut inj: HashMap<(usize, usize, Vec<usize>), bool> = HashMap::new();
    for (i, row) in maps.iter().enumerate() {
        for (j, fs) in row.iter().enumerate() {
            for f in fs {
                inj.insert((i, j, f.table().to_vec()), injective_along(a, f)?);
            }
        }
    }
    let k = spaces.len();
    let triples: Vec<(usize, usize, usize)> = (0..k)
        .flat_map(|i| (0..k).flat_map(move |j| (0..k).map(move |l| (i, j, l))))
        .collect();
    let parts: Vec<LemmaReport> = triples
        .par_iter()
        .map(|&(i, j, l)| {
            let mut part = LemmaReport::default();
            for n in &maps[i][j] {
                for m in &maps[j][l] {
                    part.pairs_checked += 1;
                    let mn = m.compose(n).expect("composable");
                    let inj_m = inj[&(j, l, m.table().to_vec())];
                    let inj_n = inj[&(i, j, n.table().to_vec())];
                    let inj_mn = inj[&(i, l, mn.table().to_vec())];
                    if inj_m && inj_n && !inj_mn {
                        part.composition_violations.push((m.clone(), n.clone()));
                    }
                    if inj_mn && !inj_n {
                        part.cancellation_violations.push((m.clone(), n.clone()));
                    }
                }
            }
            part
        })
        .collect();
    let mut report = LemmaReport::default();
    for p in parts {
        report.pairs_checked += p.pairs_checked;
        report.composition_violations.extend(p.composition_violations);
        report.cancellation_violations.extend(p.cancellation_violations);
    }
    Ok(report)
}

/// Every embedding between the given spaces.
pub fn embeddings_among(spaces: &[Space]) -> Result<Vec<CMap>> {
    let mut out = Vec::new();
    for x in spaces {
        for y in spaces.iter().filter(|y| y.n() >= x.n()) {
            out.extend(hom_set(x, y)?.into_iter().filter(|m| m.is_embedding()));
        }
    }
    Ok(out)
}
