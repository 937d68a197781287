//! Canonical forms and automorphisms of floor diagrams.
//!
//! Floors are first grouped by a permutation-invariant signature (slope, tail
//! weights, finite in/out weights); only permutations inside a group are
//! searched.

use std::collections::BTreeMap;

use crate::diagram::graph::{DiagramEdge, EdgeKind, Floor, FloorDiagram, Indexed};

/// Per-floor invariant used for partition refinement.
type Signature = (i64, Vec<u64>, Vec<u64>, Vec<u64>, Vec<u64>);

/// Canonical key: floor signatures in canonical order, then the sorted finite
/// edges in canonical positions.
pub type CanonKey = (Vec<(i64, Vec<u64>, Vec<u64>)>, Vec<(usize, usize, u64)>);

/// Compact description of a diagram up to relabeling of edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Shape {
    pub theta: Vec<i64>,
    pub minus: Vec<Vec<u64>>,
    pub plus: Vec<Vec<u64>>,
    /// Sorted finite edges `(from, to, w)`.
    pub finite: Vec<(usize, usize, u64)>,
}

impl Shape {
    pub fn from_indexed(ix: &Indexed) -> Shape {
        let n = ix.n();
        let mut minus = vec![Vec::new(); n];
        let mut plus = vec![Vec::new(); n];
        let mut finite = Vec::new();
        for &(kind, w) in &ix.edges {
            match kind {
                EdgeKind::Finite(a, b) => finite.push((a, b, w)),
                EdgeKind::Minus(b) => minus[b].push(w),
                EdgeKind::Plus(a) => plus[a].push(w),
            }
        }
        for v in minus.iter_mut().chain(plus.iter_mut()) {
            v.sort();
        }
        finite.sort();
        Shape { theta: ix.theta.clone(), minus, plus, finite }
    }

    pub fn n(&self) -> usize {
        self.theta.len()
    }

    fn signatures(&self) -> Vec<Signature> {
        let n = self.n();
        let mut ins = vec![Vec::new(); n];
        let mut outs = vec![Vec::new(); n];
        for &(a, b, w) in &self.finite {
            outs[a].push(w);
            ins[b].push(w);
        }
        (0..n)
            .map(|i| {
                let mut fi = ins[i].clone();
                let mut fo = outs[i].clone();
                fi.sort();
                fo.sort();
                (self.theta[i], self.minus[i].clone(), self.plus[i].clone(), fi, fo)
            })
            .collect()
    }

    /// Floors grouped by signature, groups in signature order.
    fn groups(&self) -> Vec<Vec<usize>> {
        let sigs = self.signatures();
        let mut by_sig: BTreeMap<&Signature, Vec<usize>> = BTreeMap::new();
        for (i, s) in sigs.iter().enumerate() {
            by_sig.entry(s).or_default().push(i);
        }
        by_sig.into_values().collect()
    }

    /// Calls `f` with every position map `pos[floor] = new index`. With
    /// `blocks`, each signature group goes to its block of positions;
    /// otherwise each group is permuted onto itself.
    fn for_each_relabeling(&self, blocks: bool, mut f: impl FnMut(&[usize])) {
        let groups = self.groups();
        let mut pos = vec![usize::MAX; self.n()];
        let mut offsets = Vec::with_capacity(groups.len());
        let mut acc = 0;
        for g in &groups {
            offsets.push(acc);
            acc += g.len();
        }
        fn rec(
            blocks: bool,
            gi: usize,
            groups: &[Vec<usize>],
            offsets: &[usize],
            pos: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]),
        ) {
            if gi == groups.len() {
                f(pos);
                return;
            }
            let g = &groups[gi];
            let mut perm: Vec<usize> = (0..g.len()).collect();
            loop {
                for (k, &floor) in g.iter().enumerate() {
                    pos[floor] = if blocks { offsets[gi] + perm[k] } else { g[perm[k]] };
                }
                rec(blocks, gi + 1, groups, offsets, pos, f);
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        rec(blocks, 0, &groups, &offsets, &mut pos, &mut f);
    }

    fn mapped_edges(&self, pos: &[usize]) -> Vec<(usize, usize, u64)> {
        let mut e: Vec<(usize, usize, u64)> = self.finite.iter().map(|&(a, b, w)| (pos[a], pos[b], w)).collect();
        e.sort();
        e
    }

    /// Canonical key and the position map that realizes it.
    pub fn canonical(&self) -> (CanonKey, Vec<usize>) {
        type Candidate = (Vec<(usize, usize, u64)>, Vec<usize>);
        let mut best: Option<Candidate> = None;
        self.for_each_relabeling(true, |pos| {
            let e = self.mapped_edges(pos);
            if best.as_ref().is_none_or(|(b, _)| e < *b) {
                best = Some((e, pos.to_vec()));
            }
        });
        let (edges, pos) = best.expect("at least the identity relabeling exists");
        let mut floors = vec![(0, Vec::new(), Vec::new()); self.n()];
        for (i, &p) in pos.iter().enumerate() {
            floors[p] = (self.theta[i], self.minus[i].clone(), self.plus[i].clone());
        }
        ((floors, edges), pos)
    }

    /// Floor permutations `σ` (as `σ[floor] = image`) preserving the diagram.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_relabeling(false, |pos| {
            if self.mapped_edges(pos) == self.finite {
                out.push(pos.to_vec());
            }
        });
        out
    }

    /// Rebuilds a diagram from a canonical key: floors `0..n`, then bottom
    /// and top vertices at infinity; finite edges first, then tails.
    pub fn diagram_from_key(key: &CanonKey) -> FloorDiagram {
        let (floors, finite) = key;
        let n = floors.len() as u32;
        let mut next_id = n;
        let mut edges: Vec<DiagramEdge> =
            finite.iter().map(|&(a, b, w)| DiagramEdge { from: a as u32, to: b as u32, w }).collect();
        let mut inf_minus = Vec::new();
        let mut inf_plus = Vec::new();
        for (i, (_, minus, _)) in floors.iter().enumerate() {
            for &w in minus {
                inf_minus.push(next_id);
                edges.push(DiagramEdge { from: next_id, to: i as u32, w });
                next_id += 1;
            }
        }
        for (i, (_, _, plus)) in floors.iter().enumerate() {
            for &w in plus {
                inf_plus.push(next_id);
                edges.push(DiagramEdge { from: i as u32, to: next_id, w });
                next_id += 1;
            }
        }
        FloorDiagram {
            floors: floors.iter().enumerate().map(|(i, f)| Floor { id: i as u32, theta: f.0 }).collect(),
            inf_minus,
            inf_plus,
            edges,
        }
    }
}

/// Lexicographic successor; false when `v` is already the last permutation.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Canonical key of a structurally valid diagram.
pub fn canonical_key(d: &FloorDiagram) -> Option<CanonKey> {
    let ix = d.indexed().ok()?;
    Some(Shape::from_indexed(&ix).canonical().0)
}

/// Isomorphism of weighted oriented graphs preserving `θ`.
pub fn is_isomorphic(a: &FloorDiagram, b: &FloorDiagram) -> bool {
    match (canonical_key(a), canonical_key(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// Order of the automorphism group of `(D, w, θ)` acting on floors and edges.
pub fn automorphism_count(d: &FloorDiagram) -> Option<u128> {
    let ix = d.indexed().ok()?;
    let shape = Shape::from_indexed(&ix);
    let floor_auts = shape.automorphisms().len() as u128;
    let mut classes: BTreeMap<(EdgeKind, u64), u128> = BTreeMap::new();
    for &(kind, w) in &ix.edges {
        *classes.entry((kind, w)).or_default() += 1;
    }
    let edge_perms: u128 = classes.values().map(|&c| (1..=c).product::<u128>()).product();
    Some(floor_auts * edge_perms)
}
