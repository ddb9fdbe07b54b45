//! Canonical forms and exhaustive enumeration of small spaces.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::space::{point_set, FinSpace, PointSet, Space};

/// Enumeration refuses to go past this many points unless asked explicitly.
pub const DEFAULT_SWEEP_BOUND: usize = 5;

/// Largest space `canonical_form` will search.
pub const CANONICAL_LIMIT: usize = 10;

/// Relation bits in "growing corner" order: after placing points `0..k`, the
/// code holds exactly the pairs among them, so partial codes compare as
/// prefixes.
#[cfg(test)]
fn corner_code(x: &FinSpace, perm: &[usize]) -> Vec<u8> {
    let mut code = Vec::with_capacity(perm.len() * perm.len());
    for k in 0..perm.len() {
        push_corner(x, perm, k, &mut code);
    }
    code
}

fn push_corner(x: &FinSpace, perm: &[usize], k: usize, code: &mut Vec<u8>) {
    let p = perm[k];
    for &q in &perm[..k] {
        code.push(x.leq(p, q) as u8);
        code.push(x.leq(q, p) as u8);
    }
}

fn invariant(x: &FinSpace, p: usize) -> (usize, usize) {
    (x.up(p).count_ones(..), x.down(p).count_ones(..))
}

struct CanonSearch<'a> {
    x: &'a FinSpace,
    slots: Vec<(usize, usize)>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn run(&mut self, perm: &mut Vec<usize>, used: &mut PointSet, code: &mut Vec<u8>, tight: bool) {
        let k = perm.len();
        if k == self.x.n() {
            let better = match &self.best {
                None => true,
                Some((b, _)) => code.as_slice() < b.as_slice(),
            };
            if better {
                self.best = Some((code.clone(), perm.clone()));
            }
            return;
        }
        for p in 0..self.x.n() {
            if used.contains(p) || invariant(self.x, p) != self.slots[k] {
                continue;
            }
            let mark = code.len();
            perm.push(p);
            push_corner(self.x, perm, k, code);
            let mut still_tight = false;
            let prune = match (&self.best, tight) {
                (Some((b, _)), true) => match code[mark..].cmp(&b[mark..code.len()]) {
                    Ordering::Greater => true,
                    Ordering::Equal => {
                        still_tight = true;
                        false
                    }
                    Ordering::Less => false,
                },
                _ => false,
            };
            if !prune {
                used.insert(p);
                self.run(perm, used, code, still_tight || self.best.is_none());
                used.set(p, false);
            }
            perm.pop();
            code.truncate(mark);
        }
    }
}

/// Minimum code over invariant-respecting relabellings, with the relabelling
/// that attains it (`perm[i]` is the original point placed at `i`).
fn canonical_perm(x: &FinSpace) -> Result<(Vec<u8>, Vec<usize>)> {
    if x.n() > CANONICAL_LIMIT {
        return Err(Error::BoundExceeded {
            n: x.n(),
            bound: CANONICAL_LIMIT,
        });
    }
    let mut slots: Vec<(usize, usize)> = (0..x.n()).map(|p| invariant(x, p)).collect();
    slots.sort();
    let mut search = CanonSearch {
        x,
        slots,
        best: None,
    };
    let mut used = PointSet::with_capacity(x.n());
    search.run(&mut Vec::new(), &mut used, &mut Vec::new(), true);
    Ok(search.best.unwrap_or_default())
}

/// Isomorphism-invariant representative: two spaces are homeomorphic iff
/// their canonical forms are equal.
pub fn canonical_form(x: &FinSpace) -> Result<FinSpace> {
    let (_, perm) = canonical_perm(x)?;
    Ok(x.relabel(&perm))
}

/// Code of the canonical form; equal codes iff homeomorphic (for equal sizes).
pub fn canonical_code(x: &FinSpace) -> Result<Vec<u8>> {
    Ok(canonical_perm(x)?.0)
}

pub fn is_homeomorphic(x: &FinSpace, y: &FinSpace) -> Result<bool> {
    if x.n() != y.n() {
        return Ok(false);
    }
    Ok(canonical_code(x)? == canonical_code(y)?)
}

/// A homeomorphism `x -> y` when one exists.
pub fn find_homeomorphism(x: &Space, y: &Space) -> Result<Option<crate::map::CMap>> {
    if x.n() != y.n() {
        return Ok(None);
    }
    let (cx, px) = canonical_perm(x)?;
    let (cy, py) = canonical_perm(y)?;
    if cx != cy {
        return Ok(None);
    }
    // canonical position i holds px[i] in x and py[i] in y
    let mut table = vec![0; x.n()];
    for i in 0..x.n() {
        table[px[i]] = py[i];
    }
    Ok(Some(crate::map::CMap::new(x.clone(), y.clone(), table)?))
}

/// Row-major relation bits, used to order labelled enumerations.
fn row_code(x: &FinSpace) -> Vec<u8> {
    let n = x.n();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| x.leq(a, b) as u8)
        .collect()
}

/// All preorders on `0..n`, built by adding one point at a time: the new point
/// picks a down-set `D` of points below it and an up-set `U` above it with
/// every member of `D` below every member of `U`.
fn labelled_preorders(n: usize) -> Vec<Vec<PointSet>> {
    let mut layer: Vec<Vec<PointSet>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for rows in &layer {
            let old = FinSpace::from_up_rows(rows.clone());
            let ups = old.opens();
            let downs: Vec<PointSet> = ups
                .iter()
                .map(|u| {
                    let mut c = point_set(k, 0..k);
                    c.difference_with(u);
                    c
                })
                .collect();
            for d in &downs {
                for u in &ups {
                    if !d.ones().all(|a| u.is_subset(old.up(a))) {
                        continue;
                    }
                    let mut new_rows: Vec<PointSet> = rows
                        .iter()
                        .enumerate()
                        .map(|(a, r)| {
                            let mut r2 = point_set(k + 1, r.ones());
                            if d.contains(a) {
                                r2.insert(k);
                                r2.union_with(&point_set(k + 1, u.ones()));
                            }
                            r2
                        })
                        .collect();
                    let mut own = point_set(k + 1, u.ones());
                    own.insert(k);
                    new_rows.push(own);
                    next.push(new_rows);
                }
            }
        }
        layer = next;
    }
    layer
}

pub fn enumerate_spaces(n: usize, up_to_iso: bool) -> Result<Vec<FinSpace>> {
    enumerate_spaces_bounded(n, up_to_iso, DEFAULT_SWEEP_BOUND)
}

/// Deterministic, duplicate-free enumeration. Labelled spaces come in
/// lexicographic order of their relation matrices; isomorphism classes are
/// represented by canonical forms in order of canonical code.
pub fn enumerate_spaces_bounded(n: usize, up_to_iso: bool, bound: usize) -> Result<Vec<FinSpace>> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    let spaces = labelled_preorders(n).into_iter().map(FinSpace::from_up_rows);
    if up_to_iso {
        let mut reps = BTreeMap::new();
        for x in spaces {
            let (code, perm) = canonical_perm(&x)?;
            reps.entry(code).or_insert_with(|| x.relabel(&perm));
        }
        Ok(reps.into_values().collect())
    } else {
        let mut keyed: Vec<(Vec<u8>, FinSpace)> = spaces.map(|x| (row_code(&x), x)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(keyed.into_iter().map(|(_, x)| x).collect())
    }
}

/// Isomorphism representatives with exactly `n` points, cached.
pub fn space_reps(n: usize) -> Result<Arc<Vec<Space>>> {
    static CACHE: [OnceLock<Arc<Vec<Space>>>; DEFAULT_SWEEP_BOUND + 1] =
        [const { OnceLock::new() }; DEFAULT_SWEEP_BOUND + 1];
    if n > DEFAULT_SWEEP_BOUND {
        return Err(Error::BoundExceeded {
            n,
            bound: DEFAULT_SWEEP_BOUND,
        });
    }
    Ok(CACHE[n]
        .get_or_init(|| {
            let reps = enumerate_spaces(n, true).expect("within bound");
            Arc::new(reps.into_iter().map(Arc::new).collect())
        })
        .clone())
}

/// Isomorphism representatives with at most `n_max` points, smallest first.
pub fn reps_up_to(n_max: usize) -> Result<Vec<Space>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        out.extend(space_reps(n)?.iter().cloned());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelled_counts() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| enumerate_spaces(n, false).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn iso_class_counts() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| enumerate_spaces(n, true).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 9, 33]);
    }

    #[test]
    fn bound_is_enforced() {
        assert_eq!(
            enumerate_spaces(6, false).unwrap_err(),
            Error::BoundExceeded { n: 6, bound: 5 }
        );
    }

    #[test]
    fn canonical_form_identifies_the_two_sierpinski_labellings() {
        let s = FinSpace::sierpinski();
        let flipped = s.relabel(&[1, 0]);
        assert_ne!(s, flipped);
        assert_eq!(canonical_form(&s).unwrap(), canonical_form(&flipped).unwrap());
        assert!(!is_homeomorphic(&s, &FinSpace::discrete(2)).unwrap());
    }

    #[test]
    fn returned_code_matches_the_relabelling() {
        for x in enumerate_spaces(4, false).unwrap().iter().step_by(7) {
            let (code, perm) = canonical_perm(x).unwrap();
            assert_eq!(code, corner_code(x, &perm));
            let identity: Vec<usize> = (0..4).collect();
            assert_eq!(corner_code(&x.relabel(&perm), &identity), code);
        }
    }

    #[test]
    fn homeomorphism_is_found() {
        let s: Space = Arc::new(FinSpace::sierpinski());
        let flipped: Space = Arc::new(s.relabel(&[1, 0]));
        let h = find_homeomorphism(&s, &flipped).unwrap().unwrap();
        assert!(h.is_isomorphism());
        assert_eq!(h.table(), &[1, 0]);
    }
}
