//! Limits, colimits and the (surjection, embedding) factorization in the
//! category of finite spaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::{same_space, subspace, CMap};
use crate::space::{point_set, transitive_close, FinSpace, PointSet, Space};

/// Largest carrier a construction may produce unless told otherwise.
pub const DEFAULT_SIZE_BUDGET: usize = 4096;

fn check_budget(needed: u128, budget: usize) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::SizeBudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Two maps out of a common object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    left: CMap,
    right: CMap,
}

impl Span {
    pub fn new(left: CMap, right: CMap) -> Result<Span> {
        if !same_space(left.dom(), right.dom()) {
            return Err(Error::NoCommonDomain);
        }
        Ok(Span { left, right })
    }

    pub fn apex(&self) -> &Space {
        self.left.dom()
    }

    pub fn left(&self) -> &CMap {
        &self.left
    }

    pub fn right(&self) -> &CMap {
        &self.right
    }
}

/// Two maps into a common object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cospan {
    left: CMap,
    right: CMap,
}

impl Cospan {
    pub fn new(left: CMap, right: CMap) -> Result<Cospan> {
        if !same_space(left.cod(), right.cod()) {
            return Err(Error::NoCommonCodomain);
        }
        Ok(Cospan { left, right })
    }

    pub fn apex(&self) -> &Space {
        self.left.cod()
    }

    pub fn left(&self) -> &CMap {
        &self.left
    }

    pub fn right(&self) -> &CMap {
        &self.right
    }

    pub fn into_legs(self) -> (CMap, CMap) {
        (self.left, self.right)
    }
}

pub fn product(x: &Space, y: &Space) -> Result<(Space, CMap, CMap)> {
    product_with_budget(x, y, DEFAULT_SIZE_BUDGET)
}

/// Point `(a, b)` of `x × y` has index `a·|y| + b`.
pub fn product_with_budget(x: &Space, y: &Space, budget: usize) -> Result<(Space, CMap, CMap)> {
    let (n, m) = (x.n(), y.n());
    check_budget(n as u128 * m as u128, budget)?;
    let p = Arc::new(product_space(x, y));
    let p1 = CMap::new_unchecked(p.clone(), x.clone(), (0..n * m).map(|i| i / m).collect());
    let p2 = CMap::new_unchecked(p.clone(), y.clone(), (0..n * m).map(|i| i % m).collect());
    Ok((p, p1, p2))
}

pub(crate) fn product_space(x: &FinSpace, y: &FinSpace) -> FinSpace {
    let (n, m) = (x.n(), y.n());
    let mut up = Vec::with_capacity(n * m);
    for a in 0..n {
        for b in 0..m {
            let mut row = PointSet::with_capacity(n * m);
            for a2 in x.up(a).ones() {
                for b2 in y.up(b).ones() {
                    row.insert(a2 * m + b2);
                }
            }
            up.push(row);
        }
    }
    FinSpace::from_up_rows(up)
}

/// The `k`-fold power of a space. Tuples are numbered in base `|A|` with the
/// first coordinate most significant, so index order is lexicographic order.
#[derive(Clone, Debug)]
pub struct Power {
    base: Space,
    k: usize,
    space: Space,
}

pub fn power(a: &Space, k: usize) -> Result<Power> {
    power_with_budget(a, k, DEFAULT_SIZE_BUDGET)
}

pub fn power_with_budget(a: &Space, k: usize, budget: usize) -> Result<Power> {
    check_budget(crate::hom::search_space(a.n(), k), budget)?;
    let mut acc = FinSpace::point();
    for _ in 0..k {
        acc = product_space(&acc, a);
    }
    Ok(Power {
        base: a.clone(),
        k,
        space: Arc::new(acc),
    })
}

impl Power {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn base(&self) -> &Space {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.k);
        let m = self.base.n();
        coords.iter().fold(0, |acc, &c| acc * m + c)
    }

    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        let m = self.base.n();
        let mut out = vec![0; self.k];
        for slot in out.iter_mut().rev() {
            *slot = idx % m;
            idx /= m;
        }
        out
    }

    pub fn coord(&self, idx: usize, i: usize) -> usize {
        let m = self.base.n();
        (idx / m.pow((self.k - 1 - i) as u32)) % m
    }

    pub fn projection(&self, i: usize) -> CMap {
        let table = (0..self.space.n()).map(|t| self.coord(t, i)).collect();
        CMap::new_unchecked(self.space.clone(), self.base.clone(), table)
    }

    pub fn projections(&self) -> Vec<CMap> {
        (0..self.k).map(|i| self.projection(i)).collect()
    }

    /// The map `x ↦ (f_0(x), ..., f_{k-1}(x))`.
    pub fn tuple_map(&self, dom: &Space, maps: &[CMap]) -> Result<CMap> {
        if maps.len() != self.k {
            return Err(Error::TableLength {
                expected: self.k,
                got: maps.len(),
            });
        }
        for f in maps {
            if !same_space(f.dom(), dom) {
                return Err(Error::NoCommonDomain);
            }
            if !same_space(f.cod(), &self.base) {
                return Err(Error::NotComposable);
            }
        }
        let coords: Vec<Vec<usize>> = (0..dom.n())
            .map(|x| maps.iter().map(|f| f.apply(x)).collect())
            .collect();
        let table = coords.iter().map(|c| self.encode(c)).collect();
        Ok(CMap::new_unchecked(dom.clone(), self.space.clone(), table))
    }
}

pub fn equalizer(f: &CMap, g: &CMap) -> Result<CMap> {
    if !same_space(f.dom(), g.dom()) || !same_space(f.cod(), g.cod()) {
        return Err(Error::NotParallel);
    }
    let agree = point_set(
        f.dom().n(),
        (0..f.dom().n()).filter(|&x| f.apply(x) == g.apply(x)),
    );
    Ok(subspace(f.dom(), &agree).1)
}

/// Carrier `{(x, z) : f(x) = g(z)}` in lexicographic order, with the trace of
/// the product topology.
pub fn pullback(f: &CMap, g: &CMap) -> Result<Span> {
    if !same_space(f.cod(), g.cod()) {
        return Err(Error::NoCommonCodomain);
    }
    let (x, z) = (f.dom(), g.dom());
    let pairs: Vec<(usize, usize)> = (0..x.n())
        .flat_map(|a| (0..z.n()).map(move |b| (a, b)))
        .filter(|&(a, b)| f.apply(a) == g.apply(b))
        .collect();
    let k = pairs.len();
    let up = pairs
        .iter()
        .map(|&(a, b)| {
            point_set(
                k,
                (0..k).filter(|&j| x.leq(a, pairs[j].0) && z.leq(b, pairs[j].1)),
            )
        })
        .collect();
    let p = Arc::new(FinSpace::from_up_rows(up));
    let p1 = CMap::new_unchecked(p.clone(), x.clone(), pairs.iter().map(|q| q.0).collect());
    let p2 = CMap::new_unchecked(p, z.clone(), pairs.iter().map(|q| q.1).collect());
    Span::new(p1, p2)
}

/// Disjoint union with the points of `x` first.
pub fn coproduct(x: &Space, y: &Space) -> (Space, CMap, CMap) {
    let (n, m) = (x.n(), y.n());
    let mut up = Vec::with_capacity(n + m);
    for a in 0..n {
        up.push(point_set(n + m, x.up(a).ones()));
    }
    for b in 0..m {
        up.push(point_set(n + m, y.up(b).ones().map(|c| c + n)));
    }
    let s = Arc::new(FinSpace::from_up_rows(up));
    let i1 = CMap::new_unchecked(x.clone(), s.clone(), (0..n).collect());
    let i2 = CMap::new_unchecked(y.clone(), s.clone(), (n..n + m).collect());
    (s, i1, i2)
}

/// Union-find over `0..n` with path halving.
pub(crate) struct Classes {
    parent: Vec<usize>,
}

impl Classes {
    pub(crate) fn new(n: usize) -> Classes {
        Classes {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Class index of every point; classes are numbered by their least member.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for p in 0..n {
            let r = self.find(p);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            label[p] = label[r];
        }
        (label, count)
    }
}

/// The quotient map onto `y / classes`, with the quotient topology.
pub(crate) fn quotient(y: &Space, classes: &mut Classes) -> CMap {
    let (label, count) = classes.labels();
    let mut rows = vec![PointSet::with_capacity(count); count];
    for p in 0..y.n() {
        for q in y.up(p).ones() {
            rows[label[p]].insert(label[q]);
        }
    }
    transitive_close(&mut rows);
    let q = Arc::new(FinSpace::from_up_rows(rows));
    CMap::new_unchecked(y.clone(), q, label)
}

/// Quotient of the codomain by the least equivalence with `f(x) ~ g(x)`.
pub fn coequalizer(f: &CMap, g: &CMap) -> Result<CMap> {
    if !same_space(f.dom(), g.dom()) || !same_space(f.cod(), g.cod()) {
        return Err(Error::NotParallel);
    }
    let mut classes = Classes::new(f.cod().n());
    for x in 0..f.dom().n() {
        classes.union(f.apply(x), g.apply(x));
    }
    Ok(quotient(f.cod(), &mut classes))
}

/// Pushout of `f: X -> Y` and `g: X -> Z`. The carrier is `Y ⊔ Z` (points of
/// `Y` first) modulo `f(x) ~ g(x)`, classes numbered by least member. The left
/// leg comes out of `Y`, the right leg out of `Z`.
pub fn pushout(f: &CMap, g: &CMap) -> Result<Cospan> {
    if !same_space(f.dom(), g.dom()) {
        return Err(Error::NoCommonDomain);
    }
    let (y, z) = (f.cod(), g.cod());
    let (s, i1, i2) = coproduct(y, z);
    let mut classes = Classes::new(s.n());
    for x in 0..f.dom().n() {
        classes.union(f.apply(x), y.n() + g.apply(x));
    }
    let q = quotient(&s, &mut classes);
    Cospan::new(q.compose(&i1)?, q.compose(&i2)?)
}

pub fn cokernel_pair(m: &CMap) -> Result<Cospan> {
    pushout(m, m)
}

/// `f = m ∘ e` with `e` onto the image (trace topology) and `m` its inclusion.
pub fn factorize(f: &CMap) -> (CMap, CMap) {
    let (img, m) = subspace(f.cod(), &f.image());
    let mut index = vec![usize::MAX; f.cod().n()];
    for (i, &p) in m.table().iter().enumerate() {
        index[p] = i;
    }
    let e = CMap::new_unchecked(
        f.dom().clone(),
        img,
        f.table().iter().map(|&y| index[y]).collect(),
    );
    (e, m)
}

/// The unique `h` with `h ∘ along = f`, when `along` is surjective and `f`
/// is constant on its fibres and the result is continuous.
pub fn descend(along: &CMap, f: &CMap) -> Option<CMap> {
    if !same_space(along.dom(), f.dom()) {
        return None;
    }
    let mut table = vec![usize::MAX; along.cod().n()];
    for x in 0..along.dom().n() {
        let slot = &mut table[along.apply(x)];
        if *slot != usize::MAX && *slot != f.apply(x) {
            return None;
        }
        *slot = f.apply(x);
    }
    if table.contains(&usize::MAX) {
        return None;
    }
    CMap::new(along.cod().clone(), f.cod().clone(), table).ok()
}

/// The unique `h` with `m ∘ h = f` for an injective `m`, if continuous.
pub fn lift_through(m: &CMap, f: &CMap) -> Option<CMap> {
    if !same_space(m.cod(), f.cod()) || !m.is_injective() {
        return None;
    }
    let mut inv = vec![usize::MAX; m.cod().n()];
    for (i, &p) in m.table().iter().enumerate() {
        inv[p] = i;
    }
    let table: Option<Vec<usize>> = f
        .table()
        .iter()
        .map(|&p| (inv[p] != usize::MAX).then_some(inv[p]))
        .collect();
    CMap::new(f.dom().clone(), m.dom().clone(), table?).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::mk_space;

    fn s() -> Space {
        Arc::new(FinSpace::sierpinski())
    }

    fn pt() -> Space {
        Arc::new(FinSpace::point())
    }

    fn opens_of(x: &FinSpace) -> Vec<Vec<usize>> {
        x.opens().iter().map(|o| o.ones().collect()).collect()
    }

    #[test]
    fn product_of_sierpinski_with_itself() {
        let (p, p1, p2) = product(&s(), &s()).unwrap();
        assert_eq!(p.n(), 4);
        assert_eq!(p.opens().len(), 6);
        assert_eq!(p1.table(), &[0, 0, 1, 1]);
        assert_eq!(p2.table(), &[0, 1, 0, 1]);
        let (q, _, _) = product(&s(), &pt()).unwrap();
        assert_eq!(*q, *s());
    }

    #[test]
    fn discrete_power_is_discrete() {
        let d2 = Arc::new(FinSpace::discrete(2));
        let p = power(&d2, 2).unwrap();
        assert_eq!(**p.space(), FinSpace::discrete(4));
        assert_eq!(p.coords(2), vec![1, 0]);
        assert_eq!(p.encode(&[1, 0]), 2);
        assert_eq!(p.projection(0).table(), &[0, 0, 1, 1]);
        let pz = power(&d2, 0).unwrap();
        assert_eq!(**pz.space(), FinSpace::point());
    }

    #[test]
    fn power_budget() {
        let s3 = Arc::new(FinSpace::discrete(3));
        assert_eq!(
            power(&s3, 8).unwrap_err(),
            Error::SizeBudgetExceeded {
                needed: 6561,
                budget: 4096
            }
        );
    }

    #[test]
    fn equalizer_examples() {
        let id = CMap::identity(&s());
        assert_eq!(equalizer(&id, &id).unwrap().table(), &[0, 1]);
        let d2 = Arc::new(FinSpace::discrete(2));
        let c0 = CMap::constant(&d2, &d2, 0).unwrap();
        let c1 = CMap::constant(&d2, &d2, 1).unwrap();
        let e = equalizer(&c0, &c1).unwrap();
        assert_eq!(e.dom().n(), 0);
        let c = CMap::constant(&pt(), &d2, 0).unwrap();
        assert_eq!(equalizer(&c, &c0), Err(Error::NotParallel));
    }

    #[test]
    fn cokernel_pair_of_closed_point() {
        let (_, m) = subspace(&s(), &point_set(2, [0]));
        let cp = cokernel_pair(&m).unwrap();
        assert_eq!(cp.apex().n(), 3);
        assert_eq!(opens_of(cp.apex()), vec![vec![], vec![1], vec![2], vec![1, 2], vec![0, 1, 2]]);
        assert_eq!(cp.left().table(), &[0, 1]);
        assert_eq!(cp.right().table(), &[0, 2]);
        let e = equalizer(cp.left(), cp.right()).unwrap();
        assert_eq!(e.table(), &[0]);
    }

    #[test]
    fn cokernel_pair_of_open_point() {
        let (_, m) = subspace(&s(), &point_set(2, [1]));
        let cp = cokernel_pair(&m).unwrap();
        // classes {0}, {1, 1'}, {0'}
        assert_eq!(cp.left().table(), &[0, 1]);
        assert_eq!(cp.right().table(), &[2, 1]);
        assert_eq!(
            opens_of(cp.apex()),
            vec![vec![], vec![1], vec![0, 1], vec![1, 2], vec![0, 1, 2]]
        );
    }

    #[test]
    fn coequalizer_and_coproduct() {
        let d2 = Arc::new(FinSpace::discrete(2));
        let c0 = CMap::constant(&pt(), &d2, 0).unwrap();
        let c1 = CMap::constant(&pt(), &d2, 1).unwrap();
        let q = coequalizer(&c0, &c1).unwrap();
        assert_eq!(**q.cod(), FinSpace::point());
        let (s2, _, _) = coproduct(&pt(), &pt());
        assert_eq!(*s2, FinSpace::discrete(2));
        let id = CMap::identity(&s());
        assert!(coequalizer(&id, &id).unwrap().is_isomorphism());
    }

    #[test]
    fn pullback_of_inclusions_is_intersection() {
        let a1: Space = Arc::new(mk_space(3, &[vec![], vec![0], vec![0, 1, 2]]).unwrap());
        let (_, i) = subspace(&a1, &point_set(3, [0, 1]));
        let (_, j) = subspace(&a1, &point_set(3, [1, 2]));
        let pb = pullback(&i, &j).unwrap();
        assert_eq!(pb.apex().n(), 1);
        assert_eq!(i.compose(pb.left()).unwrap().table(), &[1]);
    }

    #[test]
    fn factorize_constant() {
        let c = CMap::constant(&s(), &s(), 1).unwrap();
        let (e, m) = factorize(&c);
        assert_eq!(e.table(), &[0, 0]);
        assert_eq!(m.table(), &[1]);
        assert!(m.is_embedding());
        assert_eq!(m.compose(&e).unwrap(), c);
    }
}
