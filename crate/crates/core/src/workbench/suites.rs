//! Named verification suites and replay of their failure witnesses.

use std::sync::Arc;

use thiserror::Error;

use super::dsl::{map_to_dsl, parse_model, space_to_dsl, Builtin, Model, ParseError};
use super::report::{params, Record, Status, SuiteReport};
use crate::canon::{enumerate_spaces, reps_up_to};
use crate::cat::{ctx_pushout, epi_in, regular_mono_in, SubcatContext, DEFAULT_SIZE_BUDGET};
use crate::closure::{
    axiom_instance, compare_closures, hereditary_idempotent, operator_axioms, regular_closure,
    AxiomReport, ClosureOp,
};
use crate::error::Error;
use crate::hom::hom_set;
use crate::inject::{
    clopen_lifting, embeddings_among, injective_along, injectivity_class_lemma, pushout_stability,
    sweep_equivalence, SweepMode,
};
use crate::map::CMap;
use crate::monad::{
    comparison_algebra, counit_with_budget, monad_at_with_budget, split_mono, verify_algebra,
    verify_monad, LawMode, DEFAULT_DOUBLE_POWER_BUDGET,
};
use crate::space::{mk_space, FinSpace, Space};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0}")]
    UnknownSuite(String),
    #[error("cannot replay check {0}")]
    NotReplayable(String),
    #[error("witness does not parse: {0}")]
    Witness(#[from] ParseError),
    #[error("witness lacks {0}")]
    MissingWitness(&'static str),
    #[error(transparent)]
    Core(#[from] Error),
}

pub type SuiteResult<T> = std::result::Result<T, SuiteError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Largest space size swept; `None` uses the suite default.
    pub n_max: Option<usize>,
    /// Largest pushout target tried by stability checks; `None` uses `n_max`.
    pub bound: Option<usize>,
    /// Size budget for powers built by the monad suites.
    pub budget: usize,
    /// Seed for sampled algebra-law checks.
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            n_max: None,
            bound: None,
            budget: DEFAULT_SIZE_BUDGET,
            seed: 0x5eed,
        }
    }
}

/// Suite name, default `n_max`, one-line description.
pub const SUITES: &[(&str, usize, &str)] = &[
    ("enumeration-counts", 4, "labelled, T0 and up-to-iso counts against known sequences"),
    ("top-embeddings-pushout-stable", 4, "opposite pushout legs of embeddings in Top are embeddings"),
    ("top-embeddings-are-A1-injective", 3, "in Top, A1-injective maps are exactly the embeddings"),
    ("top0-embeddings-are-S-injective", 4, "in Top0, S-injective maps are exactly the embeddings"),
    ("zerodim-clopen-lifting", 3, "in 0-dim spaces, injectivity is embedding plus clopen lifting"),
    ("ind-embeddings-are-ind2-injective", 3, "in Ind, indiscrete2-injective maps are the embeddings"),
    ("injectivity-class-lemma", 3, "injectivity classes compose and cancel on the left"),
    ("epi-left-cancellable", 4, "n.m epi with n, m embeddings forces m epi, in Top and Top0"),
    ("closure-axioms", 3, "closure operator axioms, idempotence, weak heredity"),
    ("reg-equals-ort-sober", 3, "regular and orthogonal closures agree on stable embeddings, sober"),
    ("reg-equals-ort-ind", 3, "regular and orthogonal closures agree on stable embeddings, Ind"),
    ("reg-dense-is-epi", 3, "regular-dense embeddings are the epimorphisms in Top0"),
    ("monad-laws-sierpinski", 2, "unit and associativity laws of T over the Sierpinski space"),
    ("monad-laws-indiscrete", 2, "unit and associativity laws of T over indiscrete2"),
    ("monad-laws-point", 2, "unit and associativity laws of T over the point"),
    ("counit-sierpinski", 3, "counit of every T0 space is an embedding and a regular mono"),
    ("counit-indiscrete", 3, "counit of indiscrete spaces splits and gives an algebra"),
];

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(n, _, _)| *n)
}

fn a1() -> Space {
    Arc::new(mk_space(3, &[vec![], vec![0], vec![0, 1, 2]]).expect("valid"))
}

fn a2() -> Space {
    Arc::new(mk_space(3, &[vec![], vec![0], vec![1, 2], vec![0, 1, 2]]).expect("valid"))
}

fn sierpinski() -> Space {
    Arc::new(FinSpace::sierpinski())
}

fn indiscrete2() -> Space {
    Arc::new(FinSpace::indiscrete(2))
}

fn builtin_of(ctx: &SubcatContext) -> Builtin {
    match ctx.name() {
        "top" => Builtin::Top,
        "top0" => Builtin::Top0,
        "ind" => Builtin::Ind,
        "sob" => Builtin::Sob,
        "zerodim" => Builtin::Zerodim,
        "zerodim0" => Builtin::Zerodim0,
        other => Builtin::Hull(other.trim_start_matches("hull(").trim_end_matches(')').to_string()),
    }
}

/// DSL lines declaring the given spaces and maps; structurally equal spaces
/// share one declaration.
#[derive(Default)]
struct Witness {
    spaces: Vec<(String, Space)>,
    lines: Vec<String>,
}

impl Witness {
    fn space(&mut self, name: Option<&str>, x: &Space) -> String {
        if let Some((n, _)) = self.spaces.iter().find(|(_, y)| **y == **x) {
            if name.is_none_or(|want| want == n) {
                return n.clone();
            }
        }
        let n = name.map_or_else(|| format!("X{}", self.spaces.len()), str::to_string);
        self.lines.push(space_to_dsl(&n, x));
        self.spaces.push((n.clone(), x.clone()));
        n
    }

    fn map(&mut self, name: &str, f: &CMap) {
        let d = self.space(None, f.dom());
        let c = self.space(None, f.cod());
        self.lines.push(map_to_dsl(name, &d, &c, f));
    }

    fn context(&mut self, ctx: &SubcatContext) {
        self.lines.push(format!("context C = builtin({})", builtin_of(ctx)));
    }

    fn done(self) -> Vec<String> {
        self.lines
    }
}

fn witness_maps(a: Option<&Space>, ctx: Option<&SubcatContext>, maps: &[(&str, &CMap)]) -> Vec<String> {
    let mut w = Witness::default();
    if let Some(a) = a {
        w.space(Some("A"), a);
    }
    if let Some(ctx) = ctx {
        if let Some(h) = ctx.name().strip_prefix("hull(") {
            if let crate::cat::ContextKind::Hull(a) = ctx.kind() {
                w.space(Some(h.trim_end_matches(')')), a);
            }
        }
    }
    for (name, f) in maps {
        w.map(name, f);
    }
    if let Some(ctx) = ctx {
        w.context(ctx);
    }
    w.done()
}

fn witness_spaces(spaces: &[(&str, &Space)]) -> Vec<String> {
    let mut w = Witness::default();
    for (n, x) in spaces {
        w.space(Some(n), x);
    }
    w.done()
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> SuiteResult<SuiteReport> {
    let Some(&(_, default_n, _)) = SUITES.iter().find(|(n, _, _)| *n == name) else {
        return Err(SuiteError::UnknownSuite(name.to_string()));
    };
    let n = opts.n_max.unwrap_or(default_n);
    let bound = opts.bound.unwrap_or(n);
    let mut r = SuiteReport::new(name);
    match name {
        "enumeration-counts" => enumeration_counts(&mut r, n)?,
        "top-embeddings-pushout-stable" => pushout_stable(&mut r, n, bound)?,
        "top-embeddings-are-A1-injective" => {
            sweep(&mut r, &SubcatContext::top(), "A1", &a1(), n, SweepMode::InjVsEmbedding)?
        }
        "top0-embeddings-are-S-injective" => {
            sweep(&mut r, &SubcatContext::top0(), "S", &sierpinski(), n, SweepMode::InjVsEmbedding)?
        }
        "zerodim-clopen-lifting" => {
            sweep(&mut r, &SubcatContext::zerodim(), "A2", &a2(), n, SweepMode::InjVsClopenLifting)?;
            let d2: Space = Arc::new(FinSpace::discrete(2));
            sweep(&mut r, &SubcatContext::zerodim0(), "discrete2", &d2, n, SweepMode::InjVsClopenLifting)?;
        }
        "ind-embeddings-are-ind2-injective" => {
            sweep(&mut r, &SubcatContext::ind(), "indiscrete2", &indiscrete2(), n, SweepMode::InjVsEmbedding)?
        }
        "injectivity-class-lemma" => class_lemma(&mut r, n)?,
        "epi-left-cancellable" => epi_cancellable(&mut r, n)?,
        "closure-axioms" => closure_axioms(&mut r, n)?,
        "reg-equals-ort-sober" => reg_equals_ort(&mut r, &SubcatContext::sob(), n, bound)?,
        "reg-equals-ort-ind" => reg_equals_ort(&mut r, &SubcatContext::ind(), n, bound)?,
        "reg-dense-is-epi" => dense_is_epi(&mut r, n)?,
        "monad-laws-sierpinski" => monad_laws(&mut r, "S", &sierpinski(), &[2, 3, 6], n, opts)?,
        "monad-laws-indiscrete" => monad_laws(&mut r, "indiscrete2", &indiscrete2(), &[2, 4, 16], n, opts)?,
        "monad-laws-point" => {
            let pt: Space = Arc::new(FinSpace::point());
            monad_laws(&mut r, "point", &pt, &[1; 16], n, opts)?
        }
        "counit-sierpinski" => counit_sierpinski(&mut r, n, opts)?,
        "counit-indiscrete" => counit_indiscrete(&mut r, n, opts)?,
        _ => unreachable!("catalog and dispatch disagree"),
    }
    Ok(r)
}

const LABELLED: [usize; 6] = [1, 1, 4, 29, 355, 6942];
const LABELLED_T0: [usize; 6] = [1, 1, 3, 19, 219, 4231];
const UP_TO_ISO: [usize; 6] = [1, 1, 3, 9, 33, 139];

fn enumeration_counts(r: &mut SuiteReport, n_max: usize) -> SuiteResult<()> {
    for n in 0..=n_max {
        if n >= LABELLED.len() {
            r.push(format!("counts/n={n}"), Status::SkippedBudget, params([("n", n.to_string())]), vec![]);
            continue;
        }
        let labelled = enumerate_spaces(n, false)?;
        let t0 = labelled.iter().filter(|x| x.classify().t0).count();
        let iso = enumerate_spaces(n, true)?.len();
        for (check, got, want) in [
            ("labelled", labelled.len(), LABELLED[n]),
            ("labelled-t0", t0, LABELLED_T0[n]),
            ("up-to-iso", iso, UP_TO_ISO[n]),
        ] {
            r.push(
                format!("{check}/n={n}"),
                Status::from_bool(got == want),
                params([("n", n.to_string()), ("count", got.to_string()), ("expected", want.to_string())]),
                vec![],
            );
        }
    }
    Ok(())
}

fn pushout_stable(r: &mut SuiteReport, n_max: usize, bound: usize) -> SuiteResult<()> {
    use rayon::prelude::*;
    let top = SubcatContext::top();
    let ms = embeddings_among(&reps_up_to(n_max)?)?;
    let verdicts: Vec<_> = ms
        .par_iter()
        .map(|m| pushout_stability(&top, m, bound))
        .collect::<crate::Result<_>>()?;
    let pushouts: u64 = verdicts.iter().map(|v| v.pushouts_checked).sum();
    let bad: Vec<usize> = (0..ms.len()).filter(|&i| !verdicts[i].is_stable()).collect();
    let witness = bad.first().map_or_else(Vec::new, |&i| {
        let (f, _) = verdicts[i].witness.as_ref().expect("counterexample has a witness");
        witness_maps(None, Some(&top), &[("m", &ms[i]), ("f", f)])
    });
    r.push(
        "pushout-stable",
        Status::from_bool(bad.is_empty()),
        params([
            ("n_max", n_max.to_string()),
            ("bound", bound.to_string()),
            ("embeddings", ms.len().to_string()),
            ("pushouts", pushouts.to_string()),
            ("violations", bad.len().to_string()),
        ]),
        witness,
    );
    Ok(())
}

fn sweep(
    r: &mut SuiteReport,
    ctx: &SubcatContext,
    a_name: &str,
    a: &Space,
    n_max: usize,
    mode: SweepMode,
) -> SuiteResult<()> {
    let rep = sweep_equivalence(ctx, a, n_max, mode)?;
    let check = match mode {
        SweepMode::InjVsEmbedding => "inj-vs-embedding",
        SweepMode::InjVsClopenLifting => "inj-vs-clopen-lifting",
    };
    let witness = rep
        .disagreements
        .first()
        .map_or_else(Vec::new, |m| witness_maps(Some(a), Some(ctx), &[("m", m)]));
    r.push(
        format!("{check}/{}", ctx.name()),
        Status::from_bool(rep.disagreements.is_empty()),
        params([
            ("A", a_name.to_string()),
            ("n_max", n_max.to_string()),
            ("spaces", rep.spaces.to_string()),
            ("maps", rep.maps_checked.to_string()),
            ("embeddings", rep.embeddings.to_string()),
            ("disagreements", rep.disagreements.len().to_string()),
            ("embeddings_without_lifting", rep.embeddings_without_lifting.len().to_string()),
        ]),
        witness,
    );
    Ok(())
}

fn class_lemma(r: &mut SuiteReport, n_max: usize) -> SuiteResult<()> {
    let d2: Space = Arc::new(FinSpace::discrete(2));
    for (name, a) in [("A1", a1()), ("S", sierpinski()), ("A2", a2()), ("discrete2", d2), ("indiscrete2", indiscrete2())] {
        let rep = injectivity_class_lemma(&a, n_max)?;
        for (check, viol) in [
            ("composition", &rep.composition_violations),
            ("left-cancellation", &rep.cancellation_violations),
        ] {
            let witness = viol
                .first()
                .map_or_else(Vec::new, |(m, n)| witness_maps(Some(&a), None, &[("m", m), ("n", n)]));
            r.push(
                format!("class-{check}/A={name}"),
                Status::from_bool(viol.is_empty()),
                params([
                    ("A", name.to_string()),
                    ("n_max", n_max.to_string()),
                    ("pairs", rep.pairs_checked.to_string()),
                    ("violations", viol.len().to_string()),
                ]),
                witness,
            );
        }
    }
    Ok(())
}

fn members(ctx: &SubcatContext, n_max: usize) -> SuiteResult<Vec<Space>> {
    Ok(reps_up_to(n_max)?.into_iter().filter(|x| ctx.member(x)).collect())
}

fn epi_cancellable(r: &mut SuiteReport, n_max: usize) -> SuiteResult<()> {
    use rayon::prelude::*;
    for ctx in [SubcatContext::top(), SubcatContext::top0()] {
        let spaces = members(&ctx, n_max)?;
        let emb: Vec<Vec<Vec<CMap>>> = spaces
            .iter()
            .map(|x| {
                spaces
                    .iter()
                    .map(|y| Ok(hom_set(x, y)?.into_iter().filter(CMap::is_embedding).collect()))
                    .collect::<crate::Result<_>>()
            })
            .collect::<crate::Result<_>>()?;
        let k = spaces.len();
        let epi: Vec<Vec<Vec<bool>>> = emb
            .par_iter()
            .map(|row| {
                row.iter()
                    .map(|ms| ms.iter().map(|m| epi_in(&ctx, m)).collect::<crate::Result<_>>())
                    .collect::<crate::Result<_>>()
            })
            .collect::<crate::Result<_>>()?;
        let (mut pairs, mut bad) = (0u64, Vec::new());
        for i in 0..k {
            for j in 0..k {
                for (mi, m) in emb[i][j].iter().enumerate() {
                    for l in 0..k {
                        for n in &emb[j][l] {
                            pairs += 1;
                            let nm = n.compose(m)?;
                            let pos = emb[i][l].iter().position(|e| *e == nm).expect("composite of embeddings");
                            if epi[i][l][pos] && !epi[i][j][mi] {
                                bad.push((m.clone(), n.clone()));
                            }
                        }
                    }
                }
            }
        }
        let witness = bad
            .first()
            .map_or_else(Vec::new, |(m, n)| witness_maps(None, Some(&ctx), &[("m", m), ("n", n)]));
        r.push(
            format!("epi-left-cancellable/{}", ctx.name()),
            Status::from_bool(bad.is_empty()),
            params([
                ("n_max", n_max.to_string()),
                ("pairs", pairs.to_string()),
                ("violations", bad.len().to_string()),
            ]),
            witness,
        );
    }
    Ok(())
}

fn axiom_records(r: &mut SuiteReport, ctx: &SubcatContext, op: ClosureOp, n_max: usize, group: &str, rep: &AxiomReport) {
    let witness = rep.violations.first().map_or_else(Vec::new, |v| {
        let names = ["m0", "m1"];
        let maps: Vec<(&str, &CMap)> = names.iter().copied().zip(&v.maps).collect();
        let mut w = witness_maps(None, Some(ctx), &maps);
        w.insert(0, format!("# {} {}", op.name(), v.check));
        w
    });
    let first = rep.violations.first().map_or("none", |v| v.check);
    r.push(
        format!("{group}/{}/{}", ctx.name(), op.name()),
        Status::from_bool(rep.violations.is_empty()),
        params([
            ("n_max", n_max.to_string()),
            ("checks", rep.checks.to_string()),
            ("violations", rep.violations.len().to_string()),
            ("first", first.to_string()),
        ]),
        witness,
    );
}

fn closure_axioms(r: &mut SuiteReport, n_max: usize) -> SuiteResult<()> {
    for ctx in [SubcatContext::sob(), SubcatContext::ind()] {
        for op in [ClosureOp::Reg, ClosureOp::Ort] {
            let ax = operator_axioms(&ctx, op, n_max)?;
            axiom_records(r, &ctx, op, n_max, "operator-axioms", &ax);
            let hi = hereditary_idempotent(&ctx, op, n_max)?;
            axiom_records(r, &ctx, op, n_max, "hereditary-idempotent", &hi);
        }
    }
    Ok(())
}

fn reg_equals_ort(r: &mut SuiteReport, ctx: &SubcatContext, n_max: usize, bound: usize) -> SuiteResult<()> {
    use rayon::prelude::*;
    let ms = embeddings_among(&members(ctx, n_max)?)?;
    let cmps: Vec<_> = ms
        .par_iter()
        .map(|m| compare_closures(ctx, m, bound))
        .collect::<crate::Result<_>>()?;
    let stable = cmps.iter().filter(|c| c.stability.is_stable()).count();
    let disagree: Vec<usize> = (0..ms.len())
        .filter(|&i| cmps[i].stability.is_stable() && !cmps[i].agree)
        .collect();
    let not_le: Vec<usize> = (0..ms.len()).filter(|&i| !cmps[i].ort_le_reg).collect();
    for (check, bad) in [("reg-equals-ort", &disagree), ("ort-le-reg", &not_le)] {
        let witness = bad
            .first()
            .map_or_else(Vec::new, |&i| witness_maps(None, Some(ctx), &[("m", &ms[i])]));
        r.push(
            format!("{check}/{}", ctx.name()),
            Status::from_bool(bad.is_empty()),
            params([
                ("n_max", n_max.to_string()),
                ("bound", bound.to_string()),
                ("embeddings", ms.len().to_string()),
                ("stable", stable.to_string()),
                ("violations", bad.len().to_string()),
            ]),
            witness,
        );
    }
    Ok(())
}

fn dense_is_epi(r: &mut SuiteReport, n_max: usize) -> SuiteResult<()> {
    let ctx = SubcatContext::top0();
    let ms = embeddings_among(&members(&ctx, n_max)?)?;
    let mut bad = Vec::new();
    for m in &ms {
        if regular_closure(&ctx, m)?.is_dense != epi_in(&ctx, m)? {
            bad.push(m);
        }
    }
    let witness = bad
        .first()
        .map_or_else(Vec::new, |m| witness_maps(None, Some(&ctx), &[("m", m)]));
    r.push(
        "reg-dense-is-epi/top0",
        Status::from_bool(bad.is_empty()),
        params([
            ("n_max", n_max.to_string()),
            ("embeddings", ms.len().to_string()),
            ("violations", bad.len().to_string()),
        ]),
        witness,
    );
    Ok(())
}

fn monad_laws(
    r: &mut SuiteReport,
    a_name: &str,
    a: &Space,
    golden: &[usize],
    n_max: usize,
    opts: &SuiteOptions,
) -> SuiteResult<()> {
    for n in 0..=n_max {
        let base = [("A", a_name.to_string()), ("n", n.to_string())];
        let m = match monad_at_with_budget(a, n, opts.budget, DEFAULT_DOUBLE_POWER_BUDGET) {
            Ok(m) => m,
            Err(Error::SizeBudgetExceeded { needed, .. }) => {
                r.push(
                    format!("monad/n={n}"),
                    Status::SkippedBudget,
                    params([base[0].clone(), base[1].clone(), ("needed", needed.to_string())]),
                    vec![],
                );
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let witness = || witness_spaces(&[("A", a)]);
        let size_ok = golden.get(n).is_none_or(|&g| g == m.size());
        r.push(
            format!("carrier-size/n={n}"),
            Status::from_bool(size_ok),
            params([base[0].clone(), base[1].clone(), ("size", m.size().to_string())]),
            witness(),
        );
        let rep = verify_monad(&m)?;
        let unit_viol = rep.violations.iter().filter(|v| v.starts_with("mu.")).count();
        r.push(
            format!("unit-laws/n={n}"),
            Status::from_bool(unit_viol == 0),
            params([base[0].clone(), base[1].clone(), ("checks", rep.unit_checks.to_string())]),
            witness(),
        );
        let assoc_viol = rep.violations.len() - unit_viol;
        match rep.associativity {
            LawMode::Exhaustive { instances } | LawMode::Sampled { instances, .. } => r.push(
                format!("associativity/n={n}"),
                Status::from_bool(assoc_viol == 0),
                params([base[0].clone(), base[1].clone(), ("instances", instances.to_string())]),
                witness(),
            ),
            LawMode::SkippedBudget => r.push(
                format!("associativity/n={n}"),
                Status::SkippedBudget,
                params([base[0].clone(), base[1].clone(), ("double_power", m.double_power_points().to_string())]),
                vec![],
            ),
        }
    }
    Ok(())
}

fn law_mode_params(mode: &LawMode) -> (String, String) {
    match mode {
        LawMode::Exhaustive { instances } => ("mode".into(), format!("exhaustive:{instances}")),
        LawMode::Sampled { instances, seed } => ("mode".into(), format!("sampled:{instances}:seed={seed}")),
        LawMode::SkippedBudget => ("mode".into(), "skipped".into()),
    }
}

fn counit_sierpinski(r: &mut SuiteReport, n_max: usize, opts: &SuiteOptions) -> SuiteResult<()> {
    let s = sierpinski();
    let hull = SubcatContext::hull(&s, "S");
    for (i, b) in reps_up_to(n_max)?.iter().filter(|b| b.classify().t0).enumerate() {
        let id = format!("counit/B={i}");
        let base = [("A", "S".to_string()), ("points", b.n().to_string())];
        match counit_with_budget(&s, b, opts.budget) {
            Ok(c) => {
                let ok = c.equations_hold() && c.map.is_embedding() && regular_mono_in(&hull, &c.map)?;
                r.push(
                    id,
                    Status::from_bool(ok),
                    params([base[0].clone(), base[1].clone(), ("homs", c.homs.len().to_string())]),
                    witness_spaces(&[("S", &s), ("B", b)]),
                );
            }
            Err(Error::SizeBudgetExceeded { .. }) => {
                r.push(id, Status::SkippedBudget, params(base), vec![])
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn counit_indiscrete(r: &mut SuiteReport, n_max: usize, opts: &SuiteOptions) -> SuiteResult<()> {
    let a = indiscrete2();
    for n in 0..=n_max {
        let b: Space = Arc::new(FinSpace::indiscrete(n));
        let base = [("A", "indiscrete2".to_string()), ("points", n.to_string())];
        let c = match counit_with_budget(&a, &b, opts.budget) {
            Ok(c) => c,
            Err(Error::SizeBudgetExceeded { .. }) => {
                r.push(format!("counit-split/B=ind{n}"), Status::SkippedBudget, params(base), vec![]);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let witness = || witness_spaces(&[("A", &a), ("B", &b)]);
        if n > 0 {
            let ok = c.equations_hold() && split_mono(&c.map).is_some();
            r.push(format!("counit-split/B=ind{n}"), Status::from_bool(ok), params(base.clone()), witness());
        }
        let rep = verify_algebra(&comparison_algebra(&a, &b)?, opts.seed)?;
        let mut p = params(base);
        p.push(law_mode_params(&rep.multiplication));
        r.push(
            format!("algebra-laws/B=ind{n}"),
            Status::from_bool(rep.violations.is_empty()),
            p,
            witness(),
        );
    }
    Ok(())
}

fn witness_model(record: &Record) -> SuiteResult<Model> {
    Ok(parse_model(&record.witness.join("\n"))?)
}

fn need<'m, T>(x: Option<&'m T>, what: &'static str) -> SuiteResult<&'m T> {
    x.ok_or(SuiteError::MissingWitness(what))
}

fn param<'r>(record: &'r Record, key: &str) -> Option<&'r str> {
    record.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

/// Re-runs the named check of `record` on its witness alone.
pub fn replay(record: &Record) -> SuiteResult<Status> {
    let model = witness_model(record)?;
    let family = record.check.split('/').next().unwrap_or("");
    let map = |n: &'static str| need(model.map(n), n).map(|d| &d.map);
    let ctx = || need(model.context("C").as_ref(), "context C").cloned();
    let ok = match family {
        "pushout-stable" => {
            let (m, f) = (map("m")?, map("f")?);
            ctx_pushout(&ctx()?, m, f)?.right().is_embedding()
        }
        "inj-vs-embedding" | "inj-vs-clopen-lifting" => {
            let a = need(model.space("A"), "space A")?;
            let m = map("m")?;
            let structural = if family == "inj-vs-embedding" {
                m.is_embedding()
            } else {
                m.is_embedding() && clopen_lifting(m)?
            };
            injective_along(a, m)? == structural
        }
        "class-composition" | "class-left-cancellation" => {
            let a = need(model.space("A"), "space A")?;
            let (m, n) = (map("m")?, map("n")?);
            let mn = m.compose(n)?;
            if family == "class-composition" {
                !(injective_along(a, m)? && injective_along(a, n)?) || injective_along(a, &mn)?
            } else {
                !injective_along(a, &mn)? || injective_along(a, n)?
            }
        }
        "epi-left-cancellable" => {
            let c = ctx()?;
            let (m, n) = (map("m")?, map("n")?);
            !epi_in(&c, &n.compose(m)?)? || epi_in(&c, m)?
        }
        "operator-axioms" | "hereditary-idempotent" => {
            let c = ctx()?;
            let header = record.witness.first().map(String::as_str).unwrap_or("");
            let mut words = header.trim_start_matches('#').split_whitespace();
            let op = match words.next() {
                Some("reg") => ClosureOp::Reg,
                Some("ort") => ClosureOp::Ort,
                _ => return Err(SuiteError::MissingWitness("operator")),
            };
            let check = words.next().ok_or(SuiteError::MissingWitness("axiom"))?;
            let maps: Vec<CMap> = model.maps.iter().map(|d| d.map.clone()).collect();
            axiom_instance(&c, op, check, &maps)?.ok_or_else(|| SuiteError::NotReplayable(record.check.clone()))?
        }
        "reg-equals-ort" | "ort-le-reg" => {
            let bound = param(record, "bound").and_then(|b| b.parse().ok()).unwrap_or(3);
            let cmp = compare_closures(&ctx()?, map("m")?, bound)?;
            if family == "reg-equals-ort" {
                !cmp.stability.is_stable() || cmp.agree
            } else {
                cmp.ort_le_reg
            }
        }
        "reg-dense-is-epi" => {
            let c = ctx()?;
            let m = map("m")?;
            regular_closure(&c, m)?.is_dense == epi_in(&c, m)?
        }
        _ => return Err(SuiteError::NotReplayable(record.check.clone())),
    };
    Ok(Status::from_bool(ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteOptions {
        SuiteOptions {
            n_max: Some(2),
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &quick()), Err(SuiteError::UnknownSuite(_))));
    }

    #[test]
    fn every_suite_passes_at_two_points() {
        for name in suite_names() {
            let rep = run_suite(name, &quick()).unwrap();
            assert!(rep.all_pass(), "{}", rep.to_text());
            assert!(!rep.records.is_empty(), "{name}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("closure-axioms", &quick()).unwrap();
        let b = run_suite("closure-axioms", &quick()).unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn indiscrete_monad_skips_associativity_at_two() {
        let rep = run_suite("monad-laws-indiscrete", &quick()).unwrap();
        let rec = rep.records.iter().find(|r| r.check == "associativity/n=2").unwrap();
        assert_eq!(rec.status, Status::SkippedBudget);
        let size = rep.records.iter().find(|r| r.check == "carrier-size/n=2").unwrap();
        assert_eq!(size.status, Status::Pass);
    }

    fn forced(check: &str, witness: Vec<String>, p: Vec<(String, String)>) -> Record {
        Record {
            suite: "test".into(),
            check: check.into(),
            status: Status::Fail,
            params: p,
            witness,
        }
    }

    #[test]
    fn replay_of_true_instances_passes() {
        let s = sierpinski();
        let pt: Space = Arc::new(FinSpace::point());
        let m = CMap::new(pt.clone(), s.clone(), vec![1]).unwrap();
        let f = CMap::constant(&pt, &s, 0).unwrap();
        let top = SubcatContext::top();
        let sob = SubcatContext::sob();
        let cases = [
            forced("pushout-stable", witness_maps(None, Some(&top), &[("m", &m), ("f", &f)]), vec![]),
            forced("inj-vs-embedding/top", witness_maps(Some(&a1()), Some(&top), &[("m", &m)]), vec![]),
            forced("reg-equals-ort/sob", witness_maps(None, Some(&sob), &[("m", &m)]), params([("bound", "2".into())])),
            forced("reg-dense-is-epi/top0", witness_maps(None, Some(&SubcatContext::top0()), &[("m", &m)]), vec![]),
        ];
        for rec in cases {
            assert_eq!(replay(&rec).unwrap(), Status::Pass, "{}", rec.check);
        }
    }

    #[test]
    fn replay_detects_a_false_instance() {
        // indiscrete2 -> point is not an embedding and not A1-injective
        let i2 = indiscrete2();
        let pt: Space = Arc::new(FinSpace::point());
        let q = CMap::constant(&i2, &pt, 0).unwrap();
        let rec = forced("inj-vs-embedding/top", witness_maps(Some(&a1()), None, &[("m", &q)]), vec![]);
        let mut with_ctx = rec.clone();
        with_ctx.witness.push("context C = builtin(top)".into());
        assert_eq!(replay(&with_ctx).unwrap(), Status::Pass);
        // every map indiscrete2 -> S is constant, so S is injective along it
        let rec = forced("inj-vs-embedding/top", witness_maps(Some(&sierpinski()), None, &[("m", &q)]), vec![]);
        assert_eq!(replay(&rec).unwrap(), Status::Fail);
    }

    #[test]
    fn witnesses_round_trip_through_the_parser() {
        let s = sierpinski();
        let id = CMap::identity(&s);
        let hull = SubcatContext::hull(&s, "S");
        let lines = witness_maps(Some(&a2()), Some(&hull), &[("m", &id)]);
        let model = parse_model(&lines.join("\n")).unwrap();
        assert_eq!(model.map("m").unwrap().map, id);
        assert_eq!(model.context("C").unwrap().name(), "hull(S)");
    }
}
