//! Finite topological spaces.
//!
//! A finite topology is determined by its specialization preorder: `x <= y` iff
//! every open containing `x` also contains `y`, and the opens are exactly the
//! up-sets of that preorder. [`FinSpace`] stores the preorder as bitset rows
//! (the minimal open neighbourhood of every point). Open families are
//! accepted and produced at the edges, in a canonical order.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A subset of the points of a space.
pub type PointSet = FixedBitSet;

/// Spaces are shared between maps, so most APIs pass them around behind an `Arc`.
pub type Space = Arc<FinSpace>;

/// Builds a point set over `n` points.
pub fn point_set<I: IntoIterator<Item = usize>>(n: usize, points: I) -> PointSet {
    let mut s = PointSet::with_capacity(n);
    for p in points {
        s.insert(p);
    }
    s
}

pub fn full_set(n: usize) -> PointSet {
    let mut s = PointSet::with_capacity(n);
    s.insert_range(..);
    s
}

/// Renders a set as `{0 2 3}`.
pub fn format_set(s: &PointSet) -> String {
    let items: Vec<String> = s.ones().map(|p| p.to_string()).collect();
    format!("{{{}}}", items.join(" "))
}

/// Canonical order on subsets: by cardinality, then lexicographically on the
/// sorted point lists.
pub fn cmp_sets(a: &PointSet, b: &PointSet) -> Ordering {
    a.count_ones(..)
        .cmp(&b.count_ones(..))
        .then_with(|| a.ones().cmp(b.ones()))
}

/// A finite topological space on the points `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSpace {
    up: Vec<PointSet>,
    down: Vec<PointSet>,
}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.up.iter().map(format_set).collect();
        write!(f, "FinSpace(n={}, up=[{}])", self.n(), rows.join(", "))
    }
}

impl FinSpace {
    /// Builds a space from already reflexive, transitive rows.
    pub(crate) fn from_up_rows(up: Vec<PointSet>) -> FinSpace {
        let n = up.len();
        let mut down = vec![PointSet::with_capacity(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.ones() {
                down[y].insert(x);
            }
        }
        FinSpace { up, down }
    }

    #[cfg(test)]
    /// Builds a space from any reflexive relation by closing it transitively.
    pub(crate) fn from_relation_closure(mut rows: Vec<PointSet>) -> FinSpace {
        transitive_close(&mut rows);
        FinSpace::from_up_rows(rows)
    }

    /// Validates an open-set family and builds the space it describes.
    pub fn from_opens(n: usize, opens: &[PointSet]) -> Result<FinSpace> {
        for o in opens {
            if let Some(p) = o.ones().find(|&p| p >= n) {
                return Err(Error::PointOutOfRange { point: p, n });
            }
        }
        let mut family: Vec<PointSet> = opens.iter().map(|o| point_set(n, o.ones())).collect();
        family.sort_by(cmp_sets);
        family.dedup();

        let full = full_set(n);
        let empty = PointSet::with_capacity(n);
        if !family.contains(&empty) || !family.contains(&full) {
            return Err(Error::MissingEmptyOrFull);
        }
        let members: HashSet<&PointSet> = family.iter().collect();
        for (i, a) in family.iter().enumerate() {
            for b in &family[i + 1..] {
                let mut u = a.clone();
                u.union_with(b);
                if !members.contains(&u) {
                    return Err(Error::NotClosedUnderUnion {
                        a: format_set(a),
                        b: format_set(b),
                    });
                }
            }
        }
        for (i, a) in family.iter().enumerate() {
            for b in &family[i + 1..] {
                let mut m = a.clone();
                m.intersect_with(b);
                if !members.contains(&m) {
                    return Err(Error::NotClosedUnderIntersection {
                        a: format_set(a),
                        b: format_set(b),
                    });
                }
            }
        }

        // Minimal neighbourhood of x: intersection of the opens containing x.
        let up = (0..n)
            .map(|x| {
                let mut row = full.clone();
                for o in family.iter().filter(|o| o.contains(x)) {
                    row.intersect_with(o);
                }
                row
            })
            .collect();
        Ok(FinSpace::from_up_rows(up))
    }

    pub fn discrete(n: usize) -> FinSpace {
        FinSpace::from_up_rows((0..n).map(|x| point_set(n, [x])).collect())
    }

    pub fn indiscrete(n: usize) -> FinSpace {
        FinSpace::from_up_rows(vec![full_set(n); n])
    }

    pub fn empty() -> FinSpace {
        FinSpace::discrete(0)
    }

    pub fn point() -> FinSpace {
        FinSpace::discrete(1)
    }

    /// The Sierpinski space on `{0, 1}` with `{1}` open.
    pub fn sierpinski() -> FinSpace {
        FinSpace::from_up_rows(vec![point_set(2, [0, 1]), point_set(2, [1])])
    }

    pub fn n(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// Points above `x`, i.e. the smallest open containing `x`.
    pub fn up(&self, x: usize) -> &PointSet {
        &self.up[x]
    }

    /// Points below `x`, i.e. the closure of `{x}`.
    pub fn down(&self, x: usize) -> &PointSet {
        &self.down[x]
    }

    pub fn up_rows(&self) -> &[PointSet] {
        &self.up
    }

    pub fn is_open(&self, s: &PointSet) -> bool {
        s.ones().all(|x| self.up[x].is_subset(s))
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        s.ones().all(|x| self.down[x].is_subset(s))
    }

    pub fn is_clopen(&self, s: &PointSet) -> bool {
        self.is_open(s) && self.is_closed(s)
    }

    /// Points with the same neighbourhoods as `x`.
    pub fn class_of(&self, x: usize) -> PointSet {
        let mut c = self.up[x].clone();
        c.intersect_with(&self.down[x]);
        c
    }

    /// All opens, in canonical order. Exponential in general; meant for
    /// small spaces and for display.
    pub fn opens(&self) -> Vec<PointSet> {
        let n = self.n();
        let mut out = Vec::new();
        // Decide points in an order where everything below x comes first, so the
        // down-closure of the excluded points is always known.
        let order = self.linear_extension();
        let mut chosen = PointSet::with_capacity(n);
        let mut excluded_below = PointSet::with_capacity(n);
        self.collect_upsets(&order, 0, &mut chosen, &mut excluded_below, &mut out);
        out.sort_by(cmp_sets);
        out
    }

    fn collect_upsets(
        &self,
        order: &[usize],
        i: usize,
        chosen: &mut PointSet,
        excluded: &mut PointSet,
        out: &mut Vec<PointSet>,
    ) {
        if i == order.len() {
            out.push(chosen.clone());
            return;
        }
        let x = order[i];
        // x may be excluded unless something below it is already chosen.
        let forced_in = self.down[x].ones().any(|y| y != x && chosen.contains(y));
        // x may be included unless something above it is already excluded.
        let forced_out = self.up[x].ones().any(|y| y != x && excluded.contains(y));
        if !forced_in {
            excluded.insert(x);
            self.collect_upsets(order, i + 1, chosen, excluded, out);
            excluded.set(x, false);
        }
        if !forced_out {
            chosen.insert(x);
            self.collect_upsets(order, i + 1, chosen, excluded, out);
            chosen.set(x, false);
        }
    }

    /// Points sorted so that `y < x` strictly implies `y` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&x| (self.down[x].count_ones(..), x));
        order
    }

    /// A relation whose reflexive-transitive closure is the specialization
    /// preorder: covering pairs between classes plus a cycle through each class.
    pub fn generating_edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut edges = Vec::new();
        let mut rep = vec![usize::MAX; n];
        for x in 0..n {
            if rep[x] != usize::MAX {
                continue;
            }
            let class: Vec<usize> = self.class_of(x).ones().collect();
            for &y in &class {
                rep[y] = x;
            }
            if class.len() > 1 {
                for w in class.windows(2) {
                    edges.push((w[0], w[1]));
                }
                edges.push((class[class.len() - 1], class[0]));
            }
        }
        let reps: Vec<usize> = (0..n).filter(|&x| rep[x] == x).collect();
        for &x in &reps {
            // strictly above x, by class
            let mut above = self.up[x].clone();
            above.difference_with(&self.down[x]);
            for y in above.ones().filter(|&y| rep[y] == y) {
                // y covers x if nothing strictly between
                let mut between = above.clone();
                between.intersect_with(&self.down[y]);
                let mut y_class = self.up[y].clone();
                y_class.intersect_with(&self.down[y]);
                between.difference_with(&y_class);
                if between.is_clear() {
                    edges.push((x, y));
                }
            }
        }
        edges
    }

    pub fn specialization(&self) -> SpecPreorder {
        SpecPreorder {
            rows: self.up.clone(),
        }
    }

    pub fn from_preorder(p: &SpecPreorder) -> Result<FinSpace> {
        let n = p.n();
        for x in 0..n {
            if !p.rows[x].contains(x) {
                return Err(Error::NotReflexive(x));
            }
        }
        for x in 0..n {
            for y in p.rows[x].ones() {
                if !p.rows[y].is_subset(&p.rows[x]) {
                    let z = p.rows[y]
                        .difference(&p.rows[x])
                        .next()
                        .expect("difference is non-empty");
                    return Err(Error::NotTransitive(x, y, z));
                }
            }
        }
        Ok(FinSpace::from_up_rows(p.rows.clone()))
    }

    pub fn classify(&self) -> SpaceClass {
        let n = self.n();
        let mut class = SpaceClass {
            t0: true,
            discrete: true,
            indiscrete: true,
            zero_dimensional: true,
        };
        for x in 0..n {
            let above = self.up[x].count_ones(..);
            if above != 1 {
                class.discrete = false;
            }
            if above != n {
                class.indiscrete = false;
            }
            for y in self.up[x].ones() {
                if y != x && self.leq(y, x) {
                    class.t0 = false;
                }
                if !self.leq(y, x) {
                    class.zero_dimensional = false;
                }
            }
        }
        class
    }

    /// Smallest closed superset of `s`.
    pub fn kuratowski(&self, s: &PointSet) -> PointSet {
        let mut c = PointSet::with_capacity(self.n());
        for x in s.ones() {
            c.union_with(&self.down[x]);
        }
        c
    }

    /// Connected components of the specialization preorder; the clopens are
    /// exactly their unions.
    pub fn components(&self) -> Vec<PointSet> {
        let n = self.n();
        let mut seen = PointSet::with_capacity(n);
        let mut comps = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = PointSet::with_capacity(n);
            let mut stack = vec![start];
            comp.insert(start);
            while let Some(x) = stack.pop() {
                for y in self.up[x].ones().chain(self.down[x].ones()) {
                    if !comp.contains(y) {
                        comp.insert(y);
                        stack.push(y);
                    }
                }
            }
            seen.union_with(&comp);
            comps.push(comp);
        }
        comps
    }

    /// All clopen sets, in canonical order. There are `2^components` of them.
    pub fn clopens(&self) -> Vec<PointSet> {
        let comps = self.components();
        let mut out = Vec::with_capacity(1 << comps.len().min(20));
        for mask in 0u64..(1u64 << comps.len()) {
            let mut s = PointSet::with_capacity(self.n());
            for (i, c) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.union_with(c);
                }
            }
            out.push(s);
        }
        out.sort_by(cmp_sets);
        out
    }

    /// The space with the same points relabelled: new point `i` is old point `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> FinSpace {
        let n = self.n();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let up = perm
            .iter()
            .map(|&p| point_set(n, self.up[p].ones().map(|q| inv[q])))
            .collect();
        FinSpace::from_up_rows(up)
    }
}

/// Warshall closure on bitset rows.
pub(crate) fn transitive_close(rows: &mut [PointSet]) {
    let n = rows.len();
    for k in 0..n {
        let row_k = rows[k].clone();
        for row in rows.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}

/// The specialization preorder of a space, as rows `x -> {y : x <= y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecPreorder {
    rows: Vec<PointSet>,
}

impl SpecPreorder {
    /// A relation given by its pairs. Not validated until [`FinSpace::from_preorder`].
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<SpecPreorder> {
        let mut rows = vec![PointSet::with_capacity(n); n];
        for &(x, y) in pairs {
            for p in [x, y] {
                if p >= n {
                    return Err(Error::PointOutOfRange { point: p, n });
                }
            }
            rows[x].insert(y);
        }
        Ok(SpecPreorder { rows })
    }

    /// Reflexive closure of the given pairs.
    pub fn reflexive_from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<SpecPreorder> {
        let mut p = SpecPreorder::from_pairs(n, pairs)?;
        for (x, row) in p.rows.iter_mut().enumerate() {
            row.insert(x);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n()).all(|x| self.rows[x].ones().all(|y| y == x || !self.leq(y, x)))
    }

    /// Non-reflexive related pairs, in lexicographic order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|x| self.rows[x].ones().filter(move |&y| y != x).map(move |y| (x, y)))
            .collect()
    }
}

pub fn mk_space(n: usize, opens: &[Vec<usize>]) -> Result<FinSpace> {
    let sets: Vec<PointSet> = opens
        .iter()
        .map(|o| {
            let cap = o.iter().copied().max().map_or(n, |m| n.max(m + 1));
            point_set(cap, o.iter().copied())
        })
        .collect();
    FinSpace::from_opens(n, &sets)
}

/// Membership flags of a space in the subcategories the workbench uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct SpaceClass {
    pub t0: bool,
    pub discrete: bool,
    pub indiscrete: bool,
    pub zero_dimensional: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(n: usize, family: &[&[usize]]) -> Vec<PointSet> {
        family.iter().map(|s| point_set(n, s.iter().copied())).collect()
    }

    fn a1() -> FinSpace {
        mk_space(3, &[vec![], vec![0], vec![0, 1, 2]]).unwrap()
    }

    fn a2() -> FinSpace {
        mk_space(3, &[vec![], vec![0], vec![1, 2], vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn sierpinski_from_opens() {
        let s = mk_space(2, &[vec![], vec![1], vec![0, 1]]).unwrap();
        assert_eq!(s, FinSpace::sierpinski());
        assert!(s.leq(0, 1));
        assert!(!s.leq(1, 0));
        assert_eq!(s.opens(), sets(2, &[&[], &[1], &[0, 1]]));
    }

    #[test]
    fn a1_has_one_nontrivial_open() {
        let a = a1();
        assert_eq!(a.opens(), sets(3, &[&[], &[0], &[0, 1, 2]]));
        // 1 and 2 are indistinguishable and sit below 0
        assert!(a.leq(1, 2) && a.leq(2, 1) && a.leq(1, 0));
    }

    #[test]
    fn missing_full_set_is_rejected() {
        assert_eq!(
            mk_space(2, &[vec![], vec![0]]),
            Err(Error::MissingEmptyOrFull)
        );
    }

    #[test]
    fn union_and_intersection_failures_name_the_pair() {
        let e = mk_space(3, &[vec![], vec![0], vec![1], vec![0, 1, 2]]).unwrap_err();
        assert_eq!(
            e,
            Error::NotClosedUnderUnion {
                a: "{0}".into(),
                b: "{1}".into()
            }
        );
        let e = mk_space(3, &[vec![], vec![0, 1], vec![1, 2], vec![0, 1, 2]]).unwrap_err();
        assert_eq!(
            e,
            Error::NotClosedUnderIntersection {
                a: "{0 1}".into(),
                b: "{1 2}".into()
            }
        );
    }

    #[test]
    fn out_of_range_point() {
        assert_eq!(
            mk_space(2, &[vec![], vec![5], vec![0, 1]]),
            Err(Error::PointOutOfRange { point: 5, n: 2 })
        );
    }

    #[test]
    fn empty_space_has_single_open() {
        let e = mk_space(0, &[vec![]]).unwrap();
        assert_eq!(e.n(), 0);
        assert_eq!(e.opens().len(), 1);
        let c = e.classify();
        assert!(c.t0 && c.discrete && c.indiscrete && c.zero_dimensional);
        assert!(e.clopens().len() == 1);
    }

    #[test]
    fn specialization_examples() {
        let ind = FinSpace::indiscrete(2).specialization();
        assert!(ind.leq(0, 1) && ind.leq(1, 0));
        let s = FinSpace::sierpinski().specialization();
        assert_eq!(s.strict_pairs(), vec![(0, 1)]);
        let d = FinSpace::discrete(2).specialization();
        assert!(d.strict_pairs().is_empty());
    }

    #[test]
    fn from_preorder_examples() {
        let chain = SpecPreorder::reflexive_from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(FinSpace::from_preorder(&chain).unwrap(), FinSpace::sierpinski());
        let anti = SpecPreorder::reflexive_from_pairs(2, &[]).unwrap();
        assert_eq!(FinSpace::from_preorder(&anti).unwrap(), FinSpace::discrete(2));
        let total = SpecPreorder::reflexive_from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(FinSpace::from_preorder(&total).unwrap(), FinSpace::indiscrete(2));
    }

    #[test]
    fn from_preorder_rejects_bad_relations() {
        let p = SpecPreorder::from_pairs(2, &[(0, 0)]).unwrap();
        assert_eq!(FinSpace::from_preorder(&p), Err(Error::NotReflexive(1)));
        let p = SpecPreorder::reflexive_from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(FinSpace::from_preorder(&p), Err(Error::NotTransitive(0, 1, 2)));
    }

    #[test]
    fn classify_examples() {
        let s = FinSpace::sierpinski().classify();
        assert!(s.t0 && !s.zero_dimensional && !s.discrete && !s.indiscrete);
        let a = a2().classify();
        assert!(!a.t0 && a.zero_dimensional);
        let d = FinSpace::discrete(2).classify();
        assert!(d.t0 && d.discrete && d.zero_dimensional && !d.indiscrete);
    }

    #[test]
    fn kuratowski_and_clopens() {
        let s = FinSpace::sierpinski();
        assert_eq!(s.kuratowski(&point_set(2, [1])), point_set(2, [0, 1]));
        assert_eq!(s.kuratowski(&point_set(2, [0])), point_set(2, [0]));
        assert_eq!(s.clopens(), sets(2, &[&[], &[0, 1]]));
        assert_eq!(a2().clopens(), sets(3, &[&[], &[0], &[1, 2], &[0, 1, 2]]));
    }

    #[test]
    fn generating_edges_regenerate_the_preorder() {
        let spaces = [
            a1(),
            a2(),
            FinSpace::sierpinski(),
            FinSpace::indiscrete(3),
            mk_space(4, &[vec![], vec![3], vec![2, 3], vec![1, 3], vec![1, 2, 3], vec![0, 1, 2, 3]])
                .unwrap(),
        ];
        for x in spaces {
            let n = x.n();
            let mut rows: Vec<PointSet> = (0..n).map(|i| point_set(n, [i])).collect();
            for (a, b) in x.generating_edges() {
                rows[a].insert(b);
            }
            assert_eq!(FinSpace::from_relation_closure(rows), x);
        }
    }
}
