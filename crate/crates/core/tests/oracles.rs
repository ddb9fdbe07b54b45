//! Definitions straight from open sets, checked against the fast paths.

use std::collections::BTreeSet;
use std::sync::Arc;

use finspace::canon::reps_up_to;
use finspace::cat::{power, SubcatContext};
use finspace::hom::{hom_count, hom_set};
use finspace::inject::{clopen_lifting, injective_along, orthogonal_along};
use finspace::monad::monad_at;
use finspace::space::mk_space;
use finspace::{FinSpace, Space};

type Family = BTreeSet<u32>;

fn opens(x: &FinSpace) -> Family {
    x.opens().iter().map(|o| o.ones().map(|p| 1u32 << p).sum()).collect()
}

fn preimage(t: &[usize], o: u32) -> u32 {
    t.iter().enumerate().filter(|(_, &j)| o >> j & 1 == 1).map(|(i, _)| 1u32 << i).sum()
}

fn continuous(t: &[usize], x: &Family, y: &Family) -> bool {
    y.iter().all(|&o| x.contains(&preimage(t, o)))
}

/// Every function `n -> m`, first coordinate most significant.
fn functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let total = m.pow(n as u32);
    (0..total)
        .map(|mut c| {
            let mut t = vec![0; n];
            for slot in t.iter_mut().rev() {
                *slot = c % m;
                c /= m;
            }
            t
        })
        .collect()
}

fn brute_homs(x: &FinSpace, y: &FinSpace) -> Vec<Vec<usize>> {
    let (ox, oy) = (opens(x), opens(y));
    functions(x.n(), y.n()).into_iter().filter(|t| continuous(t, &ox, &oy)).collect()
}

fn brute_embedding(t: &[usize], x: &FinSpace, y: &FinSpace) -> bool {
    let injective = t.iter().collect::<BTreeSet<_>>().len() == t.len();
    let traces: Family = opens(y).iter().map(|&o| preimage(t, o)).collect();
    injective && traces == opens(x)
}

fn brute_injective(a: &FinSpace, f: &[usize], x: &FinSpace, y: &FinSpace) -> bool {
    let along: BTreeSet<Vec<usize>> = brute_homs(y, a)
        .iter()
        .map(|h| f.iter().map(|&i| h[i]).collect())
        .collect();
    brute_homs(x, a).iter().all(|g| along.contains(g))
}

fn brute_clopen_lifting(t: &[usize], x: &FinSpace, y: &FinSpace) -> bool {
    let clopens = |z: &FinSpace| -> Family {
        let o = opens(z);
        let full = (1u32 << z.n()) - 1;
        o.iter().copied().filter(|&u| o.contains(&(full & !u))).collect()
    };
    let lifted: Family = clopens(y).iter().map(|&h| preimage(t, h)).collect();
    clopens(x).iter().all(|g| lifted.contains(g))
}

fn targets() -> Vec<Space> {
    vec![
        Arc::new(mk_space(3, &[vec![], vec![0], vec![0, 1, 2]]).unwrap()),
        Arc::new(mk_space(3, &[vec![], vec![0], vec![1, 2], vec![0, 1, 2]]).unwrap()),
        Arc::new(FinSpace::sierpinski()),
        Arc::new(FinSpace::discrete(2)),
        Arc::new(FinSpace::indiscrete(2)),
    ]
}

#[test]
fn hom_sets_match_brute_force() {
    let spaces = reps_up_to(3).unwrap();
    for x in &spaces {
        for y in &spaces {
            let brute = brute_homs(x, y);
            let fast: Vec<Vec<usize>> = hom_set(x, y).unwrap().iter().map(|f| f.table().to_vec()).collect();
            assert_eq!(fast, brute);
            assert_eq!(hom_count(x, y), brute.len() as u64);
        }
    }
}

#[test]
fn embeddings_injectivity_and_lifting_match_brute_force() {
    let spaces = reps_up_to(3).unwrap();
    for x in &spaces {
        for y in &spaces {
            for f in hom_set(x, y).unwrap() {
                assert_eq!(f.is_embedding(), brute_embedding(f.table(), x, y));
                if f.is_embedding() {
                    assert_eq!(clopen_lifting(&f).unwrap(), brute_clopen_lifting(f.table(), x, y));
                }
                for a in targets() {
                    assert_eq!(
                        injective_along(&a, &f).unwrap(),
                        brute_injective(&a, f.table(), x, y),
                        "{f:?} into {a:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn orthogonality_is_unique_extension() {
    let spaces = reps_up_to(2).unwrap();
    for x in &spaces {
        for y in &spaces {
            for f in hom_set(x, y).unwrap() {
                for a in targets() {
                    let homs_y = brute_homs(y, &a);
                    let restricted: BTreeSet<Vec<usize>> = homs_y
                        .iter()
                        .map(|h| f.table().iter().map(|&i| h[i]).collect())
                        .collect();
                    let bijective = restricted.len() == homs_y.len() && restricted.len() == brute_homs(x, &a).len();
                    assert_eq!(orthogonal_along(&a, &f).unwrap(), bijective);
                }
            }
        }
    }
}

#[test]
fn monad_carriers_are_brute_force_hom_sets() {
    for a in [FinSpace::sierpinski(), FinSpace::indiscrete(2), FinSpace::point()] {
        let a: Space = Arc::new(a);
        for n in 0..=2 {
            let p = power(&a, n).unwrap();
            let brute = brute_homs(p.space(), &a);
            let m = monad_at(&a, n).unwrap();
            let fast: Vec<Vec<usize>> = m.carrier().iter().map(|t| t.table().to_vec()).collect();
            assert_eq!(fast, brute);
            // the unit is the projections
            for (i, &u) in m.unit().iter().enumerate() {
                let proj: Vec<usize> = (0..p.space().n()).map(|q| p.coord(q, i)).collect();
                assert_eq!(m.carrier()[u].table(), proj.as_slice());
            }
        }
    }
}

#[test]
fn power_opens_are_generated_by_projection_preimages() {
    let a: Space = Arc::new(FinSpace::sierpinski());
    let p = power(&a, 2).unwrap();
    // the product topology: unions of finite intersections of preimages
    let sub: Vec<u32> = (0..2)
        .flat_map(|i| {
            let pi = p.projection(i);
            opens(&a).into_iter().map(move |o| preimage(pi.table(), o)).collect::<Vec<_>>()
        })
        .collect();
    let full = (1u32 << p.space().n()) - 1;
    let mut base: Family = [full].into_iter().collect();
    for &s in &sub {
        let more: Vec<u32> = base.iter().map(|&b| b & s).collect();
        base.extend(more);
    }
    let mut topo: Family = [0].into_iter().collect();
    for _ in 0..base.len() {
        let more: Vec<u32> = topo.iter().flat_map(|&t| base.iter().map(move |&b| t | b)).collect();
        topo.extend(more);
    }
    assert_eq!(topo, opens(p.space()));
}

#[test]
fn t0_reflection_identifies_exactly_the_indistinguishable_points() {
    for x in reps_up_to(4).unwrap() {
        let (_, r) = SubcatContext::top0().reflect(&x).unwrap();
        let o = opens(&x);
        for p in 0..x.n() {
            for q in 0..x.n() {
                let same = o.iter().all(|&u| (u >> p & 1) == (u >> q & 1));
                assert_eq!(r.apply(p) == r.apply(q), same);
            }
        }
    }
}
