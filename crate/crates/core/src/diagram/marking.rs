//! Markings of a floor diagram up to automorphism.
//!
//! Parallel edges with the same endpoints and weight are interchangeable, so a
//! marking is first recorded as a sequence of floors and edge classes. The
//! floor automorphisms act freely on these sequences; representatives are the
//! lexicographically smallest sequence of each orbit.

use std::collections::{BTreeMap, HashMap};

use crate::diagram::canon::Shape;
use crate::diagram::graph::{EdgeKind, Element, FloorDiagram, Indexed, Marking};
use crate::diagram::spec::{DiagramSpec, LabelKind};
use crate::error::{Error, Result};

/// Floors `0..n` followed by the edge classes.
#[derive(Debug)]
struct Poset {
    n: usize,
    /// `(kind, weight)` of each class.
    classes: Vec<(EdgeKind, u64)>,
    /// Edge indices of each class, increasing.
    members: Vec<Vec<usize>>,
    /// Per floor: classes that must be exhausted before the floor.
    floor_needs: Vec<Vec<usize>>,
    /// Per class: the floor that must precede it.
    class_after: Vec<Option<usize>>,
    labels: Vec<LabelKind>,
    floor_ids: Vec<u32>,
}

impl Poset {
    fn new(ix: &Indexed, spec: &DiagramSpec) -> Self {
        let n = ix.n();
        let mut by_class: BTreeMap<(EdgeKind, u64), Vec<usize>> = BTreeMap::new();
        for (i, &(kind, w)) in ix.edges.iter().enumerate() {
            by_class.entry((kind, w)).or_default().push(i);
        }
        let (classes, members): (Vec<_>, Vec<_>) = by_class.into_iter().unzip();
        let mut floor_needs = vec![Vec::new(); n];
        let mut class_after = Vec::new();
        for (c, &(kind, _)) in classes.iter().enumerate() {
            let (a, b) = match kind {
                EdgeKind::Finite(a, b) => (Some(a), Some(b)),
                EdgeKind::Minus(b) => (None, Some(b)),
                EdgeKind::Plus(a) => (Some(a), None),
            };
            if let Some(b) = b {
                floor_needs[b].push(c);
            }
            class_after.push(a);
        }
        Poset {
            n,
            classes,
            members,
            floor_needs,
            class_after,
            labels: spec.labels().map(|l| spec.label_kind(l)).collect(),
            floor_ids: ix.floor_ids.clone(),
        }
    }

    fn class_allowed(&self, c: usize, label: LabelKind) -> bool {
        let (kind, w) = self.classes[c];
        match label {
            LabelKind::Free => true,
            LabelKind::AlphaMinus(k) => matches!(kind, EdgeKind::Minus(_)) && w == k,
            LabelKind::AlphaPlus(k) => matches!(kind, EdgeKind::Plus(_)) && w == k,
        }
    }

    /// Tokens (floor `i` or class `n + c`) that may take the next label.
    fn available(&self, placed: &[bool], used: &[usize], label: LabelKind) -> Vec<usize> {
        let mut out = Vec::new();
        if label == LabelKind::Free {
            for (f, needs) in self.floor_needs.iter().enumerate() {
                if !placed[f] && needs.iter().all(|&c| used[c] == self.members[c].len()) {
                    out.push(f);
                }
            }
        }
        for (c, members) in self.members.iter().enumerate() {
            if used[c] < members.len() && self.class_after[c].is_none_or(|a| placed[a]) && self.class_allowed(c, label)
            {
                out.push(self.n + c);
            }
        }
        out
    }

    fn total_elements(&self) -> usize {
        self.n + self.members.iter().map(Vec::len).sum::<usize>()
    }

    /// Class index of the image of class `c` under the floor permutation `sigma`.
    fn class_map(&self, sigma: &[usize]) -> Vec<usize> {
        let index: HashMap<(EdgeKind, u64), usize> = self.classes.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        self.classes
            .iter()
            .map(|&(kind, w)| {
                let mapped = match kind {
                    EdgeKind::Finite(a, b) => EdgeKind::Finite(sigma[a], sigma[b]),
                    EdgeKind::Minus(b) => EdgeKind::Minus(sigma[b]),
                    EdgeKind::Plus(a) => EdgeKind::Plus(sigma[a]),
                };
                index[&(mapped, w)]
            })
            .collect()
    }

    /// Token maps induced by the floor automorphisms.
    fn token_maps(&self, ix: &Indexed) -> Vec<Vec<usize>> {
        Shape::from_indexed(ix)
            .automorphisms()
            .into_iter()
            .map(|sigma| {
                let cm = self.class_map(&sigma);
                sigma.iter().copied().chain(cm.into_iter().map(|c| self.n + c)).collect()
            })
            .collect()
    }

    fn to_marking(&self, seq: &[usize], first_label: i64) -> Marking {
        let mut next = vec![0usize; self.classes.len()];
        let labels = seq
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                let el = if t < self.n {
                    Element::Floor(self.floor_ids[t])
                } else {
                    let c = t - self.n;
                    next[c] += 1;
                    Element::Edge(self.members[c][next[c] - 1])
                };
                (first_label + i as i64, el)
            })
            .collect();
        Marking { labels }
    }
}

fn prepare(d: &FloorDiagram, spec: &DiagramSpec) -> Result<(Indexed, Poset)> {
    let ix = d.indexed().map_err(|v| Error::Invalid(format!("malformed diagram: {v:?}")))?;
    let poset = Poset::new(&ix, spec);
    if poset.total_elements() != poset.labels.len() {
        return Err(Error::InvalidMarking(format!(
            "diagram has {} elements but the spec has {} labels",
            poset.total_elements(),
            poset.labels.len()
        )));
    }
    Ok((ix, poset))
}

/// Number of equivalence classes of markings of `d`.
pub fn marking_count(d: &FloorDiagram, spec: &DiagramSpec) -> Result<u128> {
    let (ix, poset) = prepare(d, spec)?;
    let auts = Shape::from_indexed(&ix).automorphisms().len() as u128;
    // State: floors placed (as bools) followed by per-class usage.
    let k = poset.classes.len();
    let mut layer: HashMap<(Vec<bool>, Vec<usize>), u128> = HashMap::new();
    layer.insert((vec![false; poset.n], vec![0; k]), 1);
    for &label in &poset.labels {
        let mut next: HashMap<(Vec<bool>, Vec<usize>), u128> = HashMap::new();
        for ((placed, used), ways) in layer {
            for t in poset.available(&placed, &used, label) {
                let (mut p, mut u) = (placed.clone(), used.clone());
                if t < poset.n {
                    p[t] = true;
                } else {
                    u[t - poset.n] += 1;
                }
                *next.entry((p, u)).or_default() += ways;
            }
        }
        layer = next;
    }
    let sequences: u128 = layer.values().sum();
    debug_assert_eq!(sequences % auts, 0, "automorphisms act freely");
    Ok(sequences / auts)
}

/// One representative marking per equivalence class, in lexicographic order
/// of their floor/class sequences. Stops after `limit` representatives.
pub fn enumerate_markings_limited(d: &FloorDiagram, spec: &DiagramSpec, limit: usize) -> Result<Vec<Marking>> {
    let (ix, poset) = prepare(d, spec)?;
    let maps = poset.token_maps(&ix);
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(poset.labels.len());
    let mut placed = vec![false; poset.n];
    let mut used = vec![0; poset.classes.len()];
    search(&poset, &maps, &mut seq, &mut placed, &mut used, limit, spec.first_label(), &mut out);
    Ok(out)
}

/// One representative marking per equivalence class.
pub fn enumerate_markings(d: &FloorDiagram, spec: &DiagramSpec) -> Result<Vec<Marking>> {
    enumerate_markings_limited(d, spec, usize::MAX)
}

#[allow(clippy::too_many_arguments)]
fn search(
    poset: &Poset,
    maps: &[Vec<usize>],
    seq: &mut Vec<usize>,
    placed: &mut [bool],
    used: &mut [usize],
    limit: usize,
    first_label: i64,
    out: &mut Vec<Marking>,
) {
    if out.len() >= limit {
        return;
    }
    // An image of the prefix that is smaller rules out the whole subtree.
    if maps.iter().any(|m| seq.iter().map(|&t| m[t]).lt(seq.iter().copied())) {
        return;
    }
    if seq.len() == poset.labels.len() {
        out.push(poset.to_marking(seq, first_label));
        return;
    }
    for t in poset.available(placed, used, poset.labels[seq.len()]) {
        if t < poset.n {
            placed[t] = true;
        } else {
            used[t - poset.n] += 1;
        }
        seq.push(t);
        search(poset, maps, seq, placed, used, limit, first_label, out);
        seq.pop();
        if t < poset.n {
            placed[t] = false;
        } else {
            used[t - poset.n] -= 1;
        }
    }
}
