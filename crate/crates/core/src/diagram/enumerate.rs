//! Exhaustive generation of floor diagrams for a spec.
//!
//! Floors are placed in a topological order. For each ordering of the
//! `(θ, right slope)` pairs, tails are distributed and finite edges are only
//! drawn forward, the outgoing weight of each floor being forced by its
//! divergence. Results are deduplicated by canonical key.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;

use crate::diagram::canon::{next_permutation, CanonKey, Shape};
use crate::diagram::graph::FloorDiagram;
use crate::diagram::spec::DiagramSpec;

struct Search {
    n: usize,
    div: Vec<i64>,
    theta: Vec<i64>,
    edge_budget: usize,
}

/// State threaded through the depth-first search.
struct State {
    minus_left: Vec<(u64, usize)>,
    plus_left: Vec<(u64, usize)>,
    incoming: Vec<i64>,
    minus: Vec<Vec<u64>>,
    plus: Vec<Vec<u64>>,
    finite: Vec<(usize, usize, u64)>,
}

fn multiset(ws: &[u64]) -> Vec<(u64, usize)> {
    ws.iter().copied().dedup_with_count().map(|(c, w)| (w, c)).collect()
}

/// Every sub-multiset of `avail`, as per-weight counts.
fn sub_multisets(avail: &[(u64, usize)]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &(_, c) in avail {
        out = out.into_iter().flat_map(|p: Vec<usize>| (0..=c).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

/// Partitions of `total` into at most `max_parts` parts, parts nonincreasing.
fn partitions(total: u64, max_parts: usize, largest: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if total == 0 {
        out.push(acc.clone());
        return;
    }
    if max_parts == 0 {
        return;
    }
    for p in (1..=largest.min(total)).rev() {
        acc.push(p);
        partitions(total - p, max_parts - 1, p, acc, out);
        acc.pop();
    }
}

impl Search {
    fn run(&self, st: &mut State, j: usize, out: &mut Vec<Shape>) {
        if j == self.n {
            if st.finite.len() == self.edge_budget && connected(self.n, &st.finite) {
                let mut finite = st.finite.clone();
                finite.sort();
                out.push(Shape { theta: self.theta.clone(), minus: st.minus.clone(), plus: st.plus.clone(), finite });
            }
            return;
        }
        let last = j + 1 == self.n;
        let minus_choices = if last {
            vec![st.minus_left.iter().map(|&(_, c)| c).collect_vec()]
        } else {
            sub_multisets(&st.minus_left)
        };
        let plus_choices =
            if last { vec![st.plus_left.iter().map(|&(_, c)| c).collect_vec()] } else { sub_multisets(&st.plus_left) };
        for mc in &minus_choices {
            let in_minus: i64 = mc.iter().zip(&st.minus_left).map(|(&k, &(w, _))| k as i64 * w as i64).sum();
            for pc in &plus_choices {
                let out_plus: i64 = pc.iter().zip(&st.plus_left).map(|(&k, &(w, _))| k as i64 * w as i64).sum();
                let out_fin = in_minus + st.incoming[j] - out_plus - self.div[j];
                if out_fin < 0 || (last && out_fin != 0) {
                    continue;
                }
                // With several floors, a floor without finite edges is isolated.
                if j > 0 && st.incoming[j] == 0 && out_fin == 0 {
                    continue;
                }
                let saved = (st.minus_left.clone(), st.plus_left.clone());
                st.minus[j] = expand(&st.minus_left, mc);
                st.plus[j] = expand(&st.plus_left, pc);
                take(&mut st.minus_left, mc);
                take(&mut st.plus_left, pc);
                self.distribute(st, j, j + 1, out_fin as u64, out);
                st.minus_left = saved.0;
                st.plus_left = saved.1;
                st.minus[j].clear();
                st.plus[j].clear();
            }
        }
    }

    /// Splits the remaining outflow of floor `j` among targets `k, k+1, …`.
    fn distribute(&self, st: &mut State, j: usize, k: usize, remaining: u64, out: &mut Vec<Shape>) {
        if remaining == 0 {
            self.run(st, j + 1, out);
            return;
        }
        if k >= self.n {
            return;
        }
        let budget = self.edge_budget - st.finite.len();
        for amount in (0..=remaining).rev() {
            let mut parts = Vec::new();
            partitions(amount, budget, amount, &mut Vec::new(), &mut parts);
            for p in parts {
                for &w in &p {
                    st.finite.push((j, k, w));
                    st.incoming[k] += w as i64;
                }
                self.distribute(st, j, k + 1, remaining - amount, out);
                for &w in &p {
                    st.finite.pop();
                    st.incoming[k] -= w as i64;
                }
            }
        }
    }
}

fn expand(avail: &[(u64, usize)], counts: &[usize]) -> Vec<u64> {
    avail.iter().zip(counts).flat_map(|(&(w, _), &c)| std::iter::repeat_n(w, c)).collect()
}

fn take(avail: &mut [(u64, usize)], counts: &[usize]) {
    for (a, &c) in avail.iter_mut().zip(counts) {
        a.1 -= c;
    }
}

fn connected(n: usize, finite: &[(usize, usize, u64)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b, _) in finite {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// Distinct multisets of `(θ, right slope)` pairs matching the two lists.
fn pairings(left: &[i64], right: &[i64]) -> BTreeSet<Vec<(i64, i64)>> {
    let mut out = BTreeSet::new();
    let mut perm: Vec<usize> = (0..right.len()).collect();
    loop {
        let mut pairs: Vec<(i64, i64)> = left.iter().zip(&perm).map(|(&l, &p)| (l, right[p])).collect();
        pairs.sort();
        out.insert(pairs);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// Distinct orderings of a multiset.
fn orderings(pairs: &[(i64, i64)]) -> Vec<Vec<(i64, i64)>> {
    let mut v = pairs.to_vec();
    v.sort();
    let mut out = vec![v.clone()];
    // The lexicographic successor skips repeated orders of equal entries.
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

/// Canonical keys of all floor diagrams for the spec, in canonical order.
pub(crate) fn enumerate_keys(spec: &DiagramSpec) -> BTreeMap<CanonKey, Shape> {
    let data = spec.direction_data();
    let n = spec.d_height();
    let edge_budget = (spec.genus() as i64 - 1 + n as i64).max(0) as usize;
    let minus = multiset(&spec.minus_weights());
    let plus = multiset(&spec.plus_weights());
    let tasks: Vec<Vec<(i64, i64)>> =
        pairings(&data.left_slopes(), &data.right_slopes()).into_iter().flat_map(|p| orderings(&p)).collect();
    let found: Vec<Vec<Shape>> = tasks
        .par_iter()
        .map(|order| {
            let search = Search {
                n,
                theta: order.iter().map(|p| p.0).collect(),
                div: order.iter().map(|p| p.1 - p.0).collect(),
                edge_budget,
            };
            let mut st = State {
                minus_left: minus.clone(),
                plus_left: plus.clone(),
                incoming: vec![0; n],
                minus: vec![Vec::new(); n],
                plus: vec![Vec::new(); n],
                finite: Vec::new(),
            };
            let mut out = Vec::new();
            search.run(&mut st, 0, &mut out);
            out
        })
        .collect();
    let mut keys = BTreeMap::new();
    for shape in found.into_iter().flatten() {
        let (key, _) = shape.canonical();
        keys.entry(key).or_insert(shape);
    }
    keys
}

/// All floor diagrams for `spec`, pairwise non-isomorphic, in canonical order.
pub fn enumerate_diagrams(spec: &DiagramSpec) -> Vec<FloorDiagram> {
    enumerate_keys(spec).keys().map(Shape::diagram_from_key).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_helpers() {
        assert_eq!(multiset(&[1, 1, 2]), vec![(1, 2), (2, 1)]);
        assert_eq!(sub_multisets(&[(1, 2), (2, 1)]).len(), 6);
        assert_eq!(sub_multisets(&[]), vec![Vec::<usize>::new()]);
        let mut out = Vec::new();
        partitions(4, 2, 4, &mut Vec::new(), &mut out);
        assert_eq!(out, vec![vec![4], vec![3, 1], vec![2, 2]]);
    }

    #[test]
    fn pairing_and_ordering_counts() {
        assert_eq!(pairings(&[-1, 1], &[-1, 1]).len(), 2);
        assert_eq!(pairings(&[0, 0, 0], &[1, 1, 1]).len(), 1);
        assert_eq!(orderings(&[(0, 1), (0, 1), (1, 2)]).len(), 3);
    }
}
