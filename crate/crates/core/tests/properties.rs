use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use finspace::canon::{canonical_code, enumerate_spaces, find_homeomorphism};
use finspace::cat::{
    coequalizer, equalizer, factorize, pullback, pushout, verify_couniversal, verify_equalizer,
    verify_reflection, verify_universal, Span, SubcatContext,
};
use finspace::closure::{closure, subobject_leq, ClosureOp};
use finspace::hom::{hom_count, random_hom};
use finspace::map::subspace;
use finspace::space::point_set;
use finspace::workbench::dsl::{parse_model, ContextDecl, MapDecl, Builtin, Model};
use finspace::{CMap, FinSpace, Space};

/// A labelled space on at most `n_max` points, uniform within each size.
fn space(n_max: usize) -> impl Strategy<Value = Space> {
    (0..=n_max).prop_flat_map(|n| {
        let all = enumerate_spaces(n, false).unwrap();
        (0..all.len()).prop_map(move |i| Arc::new(all[i].clone()) as Space)
    })
}

fn random_map(x: &Space, y: &Space, seed: u64) -> Option<CMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = random_hom(x, y, &mut rng)?;
    Some(CMap::new(x.clone(), y.clone(), t).unwrap())
}

fn perm(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

fn contexts() -> Vec<SubcatContext> {
    vec![
        SubcatContext::top(),
        SubcatContext::top0(),
        SubcatContext::ind(),
        SubcatContext::zerodim(),
        SubcatContext::zerodim0(),
        SubcatContext::hull(&Arc::new(FinSpace::sierpinski()), "S"),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn opens_determine_the_space(x in space(5)) {
        prop_assert_eq!(FinSpace::from_opens(x.n(), &x.opens()).unwrap(), (*x).clone());
        let pre = x.specialization();
        prop_assert_eq!(FinSpace::from_preorder(&pre).unwrap(), (*x).clone());
    }

    #[test]
    fn canonical_code_ignores_labels(x in space(5), seed in any::<u64>()) {
        let y = x.relabel(&perm(x.n(), seed));
        prop_assert_eq!(canonical_code(&x).unwrap(), canonical_code(&y).unwrap());
        let h = find_homeomorphism(&x, &Arc::new(y)).unwrap().unwrap();
        prop_assert!(h.is_isomorphism());
    }

    #[test]
    fn random_maps_are_continuous_and_counted(x in space(3), y in space(3), seed in any::<u64>()) {
        let count = hom_count(&x, &y);
        match random_map(&x, &y, seed) {
            Some(f) => prop_assert!(count >= 1 && f.dom().n() == x.n()),
            None => prop_assert_eq!(count, 0),
        }
    }

    #[test]
    fn factorization_is_quotient_then_embedding(x in space(4), y in space(4), seed in any::<u64>()) {
        if let Some(f) = random_map(&x, &y, seed) {
            let (e, m) = factorize(&f);
            prop_assert_eq!(m.compose(&e).unwrap(), f);
            prop_assert!(e.is_surjective());
            prop_assert!(m.is_embedding());
        }
    }

    #[test]
    fn pushouts_are_pushouts(x in space(2), y in space(3), z in space(3), s1 in any::<u64>(), s2 in any::<u64>()) {
        if let (Some(f), Some(g)) = (random_map(&x, &y, s1), random_map(&x, &z, s2)) {
            let po = pushout(&f, &g).unwrap();
            prop_assert_eq!(po.left().compose(&f).unwrap(), po.right().compose(&g).unwrap());
            let span = Span::new(f, g).unwrap();
            prop_assert!(verify_couniversal(&po, &span, 3));
        }
    }

    #[test]
    fn pullbacks_and_equalizers_are_universal(x in space(3), y in space(3), z in space(3), s1 in any::<u64>(), s2 in any::<u64>()) {
        if let (Some(f), Some(g)) = (random_map(&x, &z, s1), random_map(&y, &z, s2)) {
            let pb = pullback(&f, &g).unwrap();
            let cospan = finspace::cat::Cospan::new(f, g).unwrap();
            prop_assert!(verify_universal(&pb, &cospan, 3));
        }
        if let (Some(f), Some(g)) = (random_map(&x, &y, s1), random_map(&x, &y, s2)) {
            let e = equalizer(&f, &g).unwrap();
            prop_assert!(e.is_embedding());
            prop_assert!(verify_equalizer(&e, &f, &g, 3));
            let q = coequalizer(&f, &g).unwrap();
            prop_assert_eq!(q.compose(&f).unwrap(), q.compose(&g).unwrap());
            prop_assert!(q.is_surjective());
        }
    }

    #[test]
    fn reflections_are_universal(x in space(3)) {
        for ctx in contexts() {
            prop_assert!(verify_reflection(&ctx, &x, 3).unwrap(), "{}", ctx.name());
        }
    }

    #[test]
    fn closures_are_extensive_and_idempotent(y in space(3), mask in 0u32..8) {
        let s = point_set(y.n(), (0..y.n()).filter(|&i| mask >> i & 1 == 1));
        let (_, m) = subspace(&y, &s);
        for ctx in [SubcatContext::top(), SubcatContext::sob(), SubcatContext::ind()] {
            if !ctx.member(&y) || !ctx.member(m.dom()) {
                continue;
            }
            for op in [ClosureOp::Reg, ClosureOp::Ort] {
                let c = closure(&ctx, op, &m).unwrap();
                prop_assert!(subobject_leq(&m, &c.closure));
                if c.closure_is_embedding {
                    let cc = closure(&ctx, op, &c.closure).unwrap();
                    prop_assert!(cc.is_closed, "{} {}", ctx.name(), op.name());
                }
            }
        }
    }

    #[test]
    fn models_round_trip(x in space(4), y in space(4), seed in any::<u64>(), ctx in 0usize..7) {
        let mut model = Model::default();
        model.spaces.push(("X".into(), x.clone()));
        model.spaces.push(("Y".into(), y.clone()));
        if let Some(f) = random_map(&x, &y, seed) {
            model.maps.push(MapDecl { name: "f".into(), dom: "X".into(), cod: "Y".into(), map: f });
        }
        let builtin = [Builtin::Top, Builtin::Top0, Builtin::Ind, Builtin::Sob, Builtin::Zerodim, Builtin::Zerodim0, Builtin::Hull("Y".into())][ctx].clone();
        model.contexts.push(ContextDecl { name: "C".into(), builtin });
        let text = model.to_dsl();
        prop_assert_eq!(parse_model(&text).unwrap(), model);
    }
}
