//! Brute-force checks of universal properties against every small test
//! object.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::construct::{Cospan, Span};
use super::context::SubcatContext;
use crate::canon::reps_up_to;
use crate::error::Result;
use crate::hom::for_each_hom;
use crate::map::{same_space, CMap};
use crate::space::{FinSpace, Space};

fn compose_tables(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&p| outer[p]).collect()
}

fn homs(x: &FinSpace, a: &FinSpace) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = for_each_hom(x, a, |t| {
        out.push(t.to_vec());
        ControlFlow::Continue(())
    });
    out
}

fn test_objects(bound: usize) -> Vec<Space> {
    reps_up_to(bound.min(crate::canon::DEFAULT_SWEEP_BOUND)).expect("within sweep bound")
}

/// `c` is a pushout of `over`: the square commutes, and every commuting
/// cocone into a test object with at most `bound` points factors uniquely.
pub fn verify_couniversal(c: &Cospan, over: &Span, bound: usize) -> bool {
    let (f, g) = (over.left(), over.right());
    let (u, v) = (c.left(), c.right());
    if !same_space(u.dom(), f.cod()) || !same_space(v.dom(), g.cod()) {
        return false;
    }
    if u.compose(f).ok() != v.compose(g).ok() {
        return false;
    }
    let p = c.apex();
    test_objects(bound).iter().all(|q| {
        let mut mediators: HashMap<(Vec<usize>, Vec<usize>), u32> = HashMap::new();
        let _ = for_each_hom(p, q, |h| {
            let key = (compose_tables(h, u.table()), compose_tables(h, v.table()));
            *mediators.entry(key).or_default() += 1;
            ControlFlow::Continue(())
        });
        let left = homs(f.cod(), q);
        let right = homs(g.cod(), q);
        left.iter().all(|q1| {
            let q1f = compose_tables(q1, f.table());
            right
                .iter()
                .filter(|q2| compose_tables(q2, g.table()) == q1f)
                .all(|q2| mediators.get(&(q1.clone(), q2.clone())) == Some(&1))
        })
    })
}

/// `s` is a pullback of `over`: dual of [`verify_couniversal`].
pub fn verify_universal(s: &Span, over: &Cospan, bound: usize) -> bool {
    let (f, g) = (over.left(), over.right());
    let (p1, p2) = (s.left(), s.right());
    if !same_space(p1.cod(), f.dom()) || !same_space(p2.cod(), g.dom()) {
        return false;
    }
    if f.compose(p1).ok() != g.compose(p2).ok() {
        return false;
    }
    let p = s.apex();
    test_objects(bound).iter().all(|q| {
        let mut mediators: HashMap<(Vec<usize>, Vec<usize>), u32> = HashMap::new();
        let _ = for_each_hom(q, p, |h| {
            let key = (compose_tables(p1.table(), h), compose_tables(p2.table(), h));
            *mediators.entry(key).or_default() += 1;
            ControlFlow::Continue(())
        });
        let left = homs(q, f.dom());
        let right = homs(q, g.dom());
        left.iter().all(|a| {
            let fa = compose_tables(f.table(), a);
            right
                .iter()
                .filter(|b| compose_tables(g.table(), b) == fa)
                .all(|b| mediators.get(&(a.clone(), b.clone())) == Some(&1))
        })
    })
}

/// `e` equalizes `f` and `g`, and every equalizing map from a test object
/// factors through `e` uniquely.
pub fn verify_equalizer(e: &CMap, f: &CMap, g: &CMap, bound: usize) -> bool {
    if f.compose(e).ok() != g.compose(e).ok() || f.compose(e).is_err() {
        return false;
    }
    let x = f.dom();
    test_objects(bound).iter().all(|q| {
        let mut mediators: HashMap<Vec<usize>, u32> = HashMap::new();
        let _ = for_each_hom(q, e.dom(), |h| {
            *mediators.entry(compose_tables(e.table(), h)).or_default() += 1;
            ControlFlow::Continue(())
        });
        homs(q, x)
            .iter()
            .filter(|k| compose_tables(f.table(), k) == compose_tables(g.table(), k))
            .all(|k| mediators.get(k) == Some(&1))
    })
}

/// Every map from `x` into a member of the context with at most `bound`
/// points factors uniquely through the reflection.
pub fn verify_reflection(ctx: &SubcatContext, x: &Space, bound: usize) -> Result<bool> {
    let (rx, r) = ctx.reflect(x)?;
    Ok(test_objects(bound)
        .iter()
        .filter(|b| ctx.member(b))
        .all(|b| {
            let mut mediators: HashMap<Vec<usize>, u32> = HashMap::new();
            let _ = for_each_hom(&rx, b, |h| {
                *mediators.entry(compose_tables(h, r.table())).or_default() += 1;
                ControlFlow::Continue(())
            });
            homs(x, b).iter().all(|g| mediators.get(g) == Some(&1))
        }))
}
