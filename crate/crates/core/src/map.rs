use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::space::{format_set, point_set, FinSpace, PointSet, Space};

/// A continuous map between finite spaces, stored as a point table.
#[derive(Clone)]
pub struct CMap {
    dom: Space,
    cod: Space,
    table: Vec<usize>,
}

impl fmt::Debug for CMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CMap({} -> {}, {:?})", self.dom.n(), self.cod.n(), self.table)
    }
}

impl PartialEq for CMap {
    fn eq(&self, other: &CMap) -> bool {
        self.table == other.table
            && (Arc::ptr_eq(&self.dom, &other.dom) || self.dom == other.dom)
            && (Arc::ptr_eq(&self.cod, &other.cod) || self.cod == other.cod)
    }
}

impl Eq for CMap {}

pub(crate) fn same_space(a: &Space, b: &Space) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl CMap {
    /// Checks totality, range, and continuity.
    pub fn new(dom: Space, cod: Space, table: Vec<usize>) -> Result<CMap> {
        if table.len() != dom.n() {
            return Err(Error::TableLength {
                expected: dom.n(),
                got: table.len(),
            });
        }
        if let Some(&p) = table.iter().find(|&&p| p >= cod.n()) {
            return Err(Error::PointOutOfRange {
                point: p,
                n: cod.n(),
            });
        }
        let map = CMap { dom, cod, table };
        if let Some(open) = map.discontinuity() {
            return Err(Error::ContinuityViolation {
                open: format_set(&open),
            });
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(dom: Space, cod: Space, table: Vec<usize>) -> CMap {
        debug_assert_eq!(table.len(), dom.n());
        let map = CMap { dom, cod, table };
        debug_assert!(map.discontinuity().is_none(), "discontinuous {map:?}");
        map
    }

    /// An open of the codomain whose preimage is not open, if any.
    fn discontinuity(&self) -> Option<PointSet> {
        for x in 0..self.dom.n() {
            let fx = self.table[x];
            for y in self.dom.up(x).ones() {
                if !self.cod.leq(fx, self.table[y]) {
                    return Some(self.cod.up(fx).clone());
                }
            }
        }
        None
    }

    pub fn identity(x: &Space) -> CMap {
        CMap::new_unchecked(x.clone(), x.clone(), (0..x.n()).collect())
    }

    pub fn constant(dom: &Space, cod: &Space, value: usize) -> Result<CMap> {
        CMap::new(dom.clone(), cod.clone(), vec![value; dom.n()])
    }

    /// The unique map out of the empty space.
    pub fn from_empty(cod: &Space) -> CMap {
        CMap::new_unchecked(Arc::new(FinSpace::empty()), cod.clone(), Vec::new())
    }

    pub fn dom(&self) -> &Space {
        &self.dom
    }

    pub fn cod(&self) -> &Space {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self . inner`
    pub fn compose(&self, inner: &CMap) -> Result<CMap> {
        if !same_space(inner.cod(), &self.dom) {
            return Err(Error::NotComposable);
        }
        let table = inner.table.iter().map(|&y| self.table[y]).collect();
        Ok(CMap::new_unchecked(inner.dom.clone(), self.cod.clone(), table))
    }

    /// Same table, viewed between equal spaces held by different handles.
    pub fn retarget(&self, dom: &Space, cod: &Space) -> Result<CMap> {
        if !same_space(dom, &self.dom) || !same_space(cod, &self.cod) {
            return Err(Error::NotComposable);
        }
        Ok(CMap::new_unchecked(dom.clone(), cod.clone(), self.table.clone()))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = PointSet::with_capacity(self.cod.n());
        self.table.iter().all(|&y| !seen.put(y))
    }

    pub fn is_surjective(&self) -> bool {
        self.image().count_ones(..) == self.cod.n()
    }

    pub fn image(&self) -> PointSet {
        point_set(self.cod.n(), self.table.iter().copied())
    }

    pub fn preimage(&self, s: &PointSet) -> PointSet {
        point_set(
            self.dom.n(),
            (0..self.dom.n()).filter(|&x| s.contains(self.table[x])),
        )
    }

    /// Injective, and the domain carries the subspace topology: for finite
    /// spaces this is exactly reflection of the specialization order.
    pub fn is_embedding(&self) -> bool {
        if !self.is_injective() {
            return false;
        }
        let n = self.dom.n();
        (0..n).all(|x| {
            (0..n).all(|y| !self.cod.leq(self.table[x], self.table[y]) || self.dom.leq(x, y))
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_embedding() && self.is_surjective()
    }

    /// Inverse of a homeomorphism.
    pub fn inverse(&self) -> Option<CMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut inv = vec![0; self.cod.n()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Some(CMap::new_unchecked(self.cod.clone(), self.dom.clone(), inv))
    }
}

/// Trace topology on `s` together with its inclusion. Points of the subspace
/// are the members of `s` in increasing order.
pub fn subspace(y: &Space, s: &PointSet) -> (Space, CMap) {
    let pts: Vec<usize> = s.ones().filter(|&p| p < y.n()).collect();
    let k = pts.len();
    let up = pts
        .iter()
        .map(|&p| point_set(k, (0..k).filter(|&j| y.leq(p, pts[j]))))
        .collect();
    let sub = Arc::new(FinSpace::from_up_rows(up));
    let incl = CMap::new_unchecked(sub.clone(), y.clone(), pts);
    (sub, incl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::mk_space;

    fn s() -> Space {
        Arc::new(FinSpace::sierpinski())
    }

    #[test]
    fn continuity_violation_names_the_open() {
        let d = Arc::new(FinSpace::discrete(2));
        let sw = CMap::new(s(), s(), vec![1, 0]).unwrap_err();
        assert_eq!(sw, Error::ContinuityViolation { open: "{1}".into() });
        // identity-on-points from the indiscrete doubleton to the discrete one
        let e = CMap::new(Arc::new(FinSpace::indiscrete(2)), d, vec![0, 1]).unwrap_err();
        assert_eq!(e, Error::ContinuityViolation { open: "{0}".into() });
    }

    #[test]
    fn embedding_examples() {
        let (_, incl) = subspace(&s(), &point_set(2, [1]));
        assert!(incl.is_embedding());
        let d2 = Arc::new(FinSpace::discrete(2));
        let i2 = Arc::new(FinSpace::indiscrete(2));
        let f = CMap::new(d2, i2, vec![0, 1]).unwrap();
        assert!(f.is_injective() && !f.is_embedding());
        let pt = Arc::new(FinSpace::point());
        let q = CMap::new(s(), pt, vec![0, 0]).unwrap();
        assert!(!q.is_embedding());
    }

    #[test]
    fn subspace_examples() {
        let (sub, incl) = subspace(&s(), &point_set(2, [0]));
        assert_eq!(*sub, FinSpace::point());
        assert_eq!(incl.table(), &[0]);

        let a1 = Arc::new(mk_space(3, &[vec![], vec![0], vec![0, 1, 2]]).unwrap());
        let (sub, incl) = subspace(&a1, &point_set(3, [1, 2]));
        assert_eq!(*sub, FinSpace::indiscrete(2));
        assert!(incl.is_embedding());

        let (sub, incl) = subspace(&a1, &point_set(3, [0, 1, 2]));
        assert_eq!(sub, a1);
        assert_eq!(incl, CMap::identity(&a1));
    }

    #[test]
    fn compose_checks_endpoints() {
        let id = CMap::identity(&s());
        let pt = Arc::new(FinSpace::point());
        let c = CMap::constant(&pt, &s(), 1).unwrap();
        assert_eq!(id.compose(&c).unwrap(), c);
        assert_eq!(c.compose(&id), Err(Error::NotComposable));
    }
}
