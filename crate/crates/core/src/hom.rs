//! Continuous maps between finite spaces, enumerated as monotone maps of
//! specialization preorders.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::map::CMap;
use crate::space::{full_set, FinSpace, PointSet, Space};

/// Largest `|A|^|X|` search space `hom_set` accepts by default.
pub const DEFAULT_HOM_BUDGET: u128 = 1 << 24;

/// `base^exp`, saturating at `u128::MAX`.
pub fn search_space(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Position-indexed constraints for a depth-first sweep in a linear extension.
struct Plan {
    order: Vec<usize>,
    /// earlier points below (first) and above (second) the point at each position
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
}

impl Plan {
    fn new(x: &FinSpace) -> Plan {
        let order = x.linear_extension();
        let mut pos = vec![0; x.n()];
        for (i, &p) in order.iter().enumerate() {
            pos[p] = i;
        }
        let mut lower = vec![Vec::new(); x.n()];
        let mut upper = vec![Vec::new(); x.n()];
        for (u, v) in x.generating_edges() {
            // u <= v: checked when the later of the two is placed
            if pos[u] < pos[v] {
                lower[pos[v]].push(u);
            } else {
                upper[pos[u]].push(v);
            }
        }
        Plan {
            order,
            lower,
            upper,
        }
    }
}

/// Calls `visit` with the table of every continuous map `x -> a`. The order is
/// deterministic but not lexicographic; see [`hom_tables`] for sorted output.
pub fn for_each_hom<F>(x: &FinSpace, a: &FinSpace, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = x.n();
    let m = a.n();
    if n == 0 {
        return visit(&[]);
    }
    if m == 0 {
        return ControlFlow::Continue(());
    }
    let plan = Plan::new(x);
    let mut table = vec![0; n];
    let mut cand = vec![PointSet::with_capacity(m); n];
    let mut next = vec![0usize; n];
    let fill = |k: usize, table: &[usize], cand: &mut PointSet| {
        cand.insert_range(..);
        for &q in &plan.lower[k] {
            cand.intersect_with(a.up(table[q]));
        }
        for &q in &plan.upper[k] {
            cand.intersect_with(a.down(table[q]));
        }
    };
    let mut k = 0;
    fill(0, &table, &mut cand[0]);
    loop {
        let from = next[k];
        match cand[k].ones().find(|&v| v >= from) {
            Some(v) => {
                table[plan.order[k]] = v;
                next[k] = v + 1;
                if k + 1 == n {
                    visit(&table)?;
                } else {
                    k += 1;
                    fill(k, &table, &mut cand[k]);
                    next[k] = 0;
                }
            }
            None => {
                if k == 0 {
                    return ControlFlow::Continue(());
                }
                k -= 1;
            }
        }
    }
}

/// A continuous map `x -> a` drawn by a randomized depth-first search: each
/// point tries its admissible values in shuffled order. Not uniform.
pub fn random_hom<R: Rng + ?Sized>(x: &FinSpace, a: &FinSpace, rng: &mut R) -> Option<Vec<usize>> {
    let n = x.n();
    if n == 0 {
        return Some(Vec::new());
    }
    let plan = Plan::new(x);
    let mut table = vec![0; n];
    let mut cand: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut next = vec![0usize; n];
    let fill = |k: usize, table: &[usize], rng: &mut R| -> Vec<usize> {
        let mut c = full_set(a.n());
        for &q in &plan.lower[k] {
            c.intersect_with(a.up(table[q]));
        }
        for &q in &plan.upper[k] {
            c.intersect_with(a.down(table[q]));
        }
        let mut v: Vec<usize> = c.ones().collect();
        v.shuffle(rng);
        v
    };
    let mut k = 0;
    cand[0] = fill(0, &table, rng);
    loop {
        if next[k] < cand[k].len() {
            table[plan.order[k]] = cand[k][next[k]];
            next[k] += 1;
            if k + 1 == n {
                return Some(table);
            }
            k += 1;
            cand[k] = fill(k, &table, rng);
            next[k] = 0;
        } else {
            if k == 0 {
                return None;
            }
            k -= 1;
        }
    }
}

pub fn hom_count(x: &FinSpace, a: &FinSpace) -> u64 {
    let mut count = 0u64;
    let _ = for_each_hom(x, a, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// All continuous maps `x -> a` as tables, sorted lexicographically.
pub fn hom_tables(x: &FinSpace, a: &FinSpace, budget: u128) -> Result<Vec<Vec<usize>>> {
    let needed = search_space(a.n(), x.n());
    if needed > budget {
        return Err(Error::SizeBudgetExceeded {
            needed,
            budget: usize::try_from(budget).unwrap_or(usize::MAX),
        });
    }
    let mut out = Vec::new();
    let _ = for_each_hom(x, a, |t| {
        out.push(t.to_vec());
        ControlFlow::Continue(())
    });
    out.sort();
    Ok(out)
}

pub fn hom_set(x: &Space, a: &Space) -> Result<Vec<CMap>> {
    hom_set_with_budget(x, a, DEFAULT_HOM_BUDGET)
}

pub fn hom_set_with_budget(x: &Space, a: &Space, budget: u128) -> Result<Vec<CMap>> {
    Ok(hom_tables(x, a, budget)?
        .into_iter()
        .map(|t| CMap::new_unchecked(x.clone(), a.clone(), t))
        .collect())
}

/// Search for one monotone map `x -> a` with each point confined to a domain
/// of allowed values. Arc consistency on the generating edges, then
/// backtracking on the smallest open domain.
#[derive(Clone)]
pub struct MonoCsp<'a> {
    a: &'a FinSpace,
    edges: Vec<(usize, usize)>,
    domains: Vec<PointSet>,
}

impl<'a> MonoCsp<'a> {
    pub fn new(x: &FinSpace, a: &'a FinSpace) -> MonoCsp<'a> {
        MonoCsp {
            a,
            edges: x.generating_edges(),
            domains: vec![full_set(a.n()); x.n()],
        }
    }

    pub fn restrict(&mut self, p: usize, allowed: &PointSet) {
        self.domains[p].intersect_with(allowed);
    }

    pub fn fix(&mut self, p: usize, v: usize) {
        let keep = self.domains[p].contains(v);
        self.domains[p].clear();
        if keep {
            self.domains[p].insert(v);
        }
    }

    fn propagate(&self, domains: &mut [PointSet]) -> bool {
        if domains.iter().any(|d| d.is_clear()) {
            return false;
        }
        let m = self.a.n();
        let mut changed = true;
        while changed {
            changed = false;
            for &(u, v) in &self.edges {
                let mut reach = PointSet::with_capacity(m);
                for b in domains[u].ones() {
                    reach.union_with(self.a.up(b));
                }
                if !domains[v].is_subset(&reach) {
                    domains[v].intersect_with(&reach);
                    changed = true;
                    if domains[v].is_clear() {
                        return false;
                    }
                }
                let mut reach = PointSet::with_capacity(m);
                for b in domains[v].ones() {
                    reach.union_with(self.a.down(b));
                }
                if !domains[u].is_subset(&reach) {
                    domains[u].intersect_with(&reach);
                    changed = true;
                    if domains[u].is_clear() {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(&self, mut domains: Vec<PointSet>) -> Option<Vec<usize>> {
        if !self.propagate(&mut domains) {
            return None;
        }
        let open = (0..domains.len())
            .filter(|&p| domains[p].count_ones(..) > 1)
            .min_by_key(|&p| (domains[p].count_ones(..), p));
        match open {
            None => Some(
                domains
                    .iter()
                    .map(|d| d.ones().next().expect("nonempty"))
                    .collect(),
            ),
            Some(p) => domains[p].ones().find_map(|v| {
                let mut trial = domains.clone();
                trial[p].clear();
                trial[p].insert(v);
                self.search(trial)
            }),
        }
    }

    /// A solution table, if any exists.
    pub fn solve(&self) -> Option<Vec<usize>> {
        if self.domains.is_empty() {
            return Some(Vec::new());
        }
        self.search(self.domains.clone())
    }
}

/// Does some continuous `h: y -> a` satisfy `h(pin.0) = pin.1` for all pins?
pub fn extend_pinned(y: &FinSpace, a: &FinSpace, pins: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut csp = MonoCsp::new(y, a);
    for &(p, v) in pins {
        csp.fix(p, v);
    }
    csp.solve()
}
