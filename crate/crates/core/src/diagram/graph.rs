use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::spec::{DiagramSpec, LabelKind, NSeq};
use crate::error::{Error, Result};
use crate::lattice::{polygon_from_slopes, LatticeVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Floor {
    pub id: u32,
    pub theta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub from: u32,
    pub to: u32,
    pub w: u64,
}

/// A floor diagram: floors carrying a slope `θ`, 1-valent vertices at
/// infinity below (`inf_minus`) and above (`inf_plus`), and weighted
/// oriented edges. All vertices share one id space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorDiagram {
    pub floors: Vec<Floor>,
    pub inf_minus: Vec<u32>,
    pub inf_plus: Vec<u32>,
    pub edges: Vec<DiagramEdge>,
}

/// An element of `D = floors ∪ edges`: a floor by id or an edge by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Floor(u32),
    Edge(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Floor(id) => write!(f, "F{id}"),
            Element::Edge(i) => write!(f, "E{i}"),
        }
    }
}

impl FromStr for Element {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("bad element id {s:?}"));
        let (head, tail) = s.split_at_checked(1).ok_or_else(bad)?;
        match head {
            "F" => tail.parse().map(Element::Floor).map_err(|_| bad()),
            "E" => tail.parse().map(Element::Edge).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A labeling of the elements of a floor diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marking {
    pub labels: BTreeMap<i64, Element>,
}

/// A reason why a diagram does not fit a spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Violation {
    DuplicateId { id: u32 },
    UnknownVertex { id: u32 },
    ZeroWeight { edge: usize },
    InfiniteVertexValence { id: u32, valence: usize },
    InfiniteOrientation { id: u32 },
    EdgeBetweenInfinite { edge: usize },
    Disconnected,
    Cycle,
    Genus { expected: u32, found: i64 },
    FloorCount { expected: usize, found: usize },
    MinusDivergence { expected: i64, found: i64 },
    PlusDivergence { expected: i64, found: i64 },
    LeftSlopes { expected: Vec<i64>, found: Vec<i64> },
    RightSlopes { expected: Vec<i64>, found: Vec<i64> },
    MinusTailWeights { expected: Vec<u64>, found: Vec<u64> },
    PlusTailWeights { expected: Vec<u64>, found: Vec<u64> },
    PlaneFloorDivergence { floor: u32, div: i64 },
    PlaneTailWeight { expected: i64, found: i64 },
}

/// How an edge of the diagram attaches, in floor indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum EdgeKind {
    Finite(usize, usize),
    Minus(usize),
    Plus(usize),
}

/// Index-based view of a structurally sound diagram.
#[derive(Debug, Clone)]
pub(crate) struct Indexed {
    pub floor_ids: Vec<u32>,
    pub theta: Vec<i64>,
    /// Parallel to `FloorDiagram::edges`.
    pub edges: Vec<(EdgeKind, u64)>,
}

impl Indexed {
    pub fn n(&self) -> usize {
        self.theta.len()
    }

    /// `div(v)` for every floor.
    pub fn divergences(&self) -> Vec<i64> {
        let mut div = vec![0i64; self.n()];
        for &(kind, w) in &self.edges {
            let w = w as i64;
            match kind {
                EdgeKind::Finite(a, b) => {
                    div[a] -= w;
                    div[b] += w;
                }
                EdgeKind::Minus(b) => div[b] += w,
                EdgeKind::Plus(a) => div[a] -= w,
            }
        }
        div
    }

    pub fn floor_index(&self, id: u32) -> Option<usize> {
        self.floor_ids.iter().position(|&f| f == id)
    }

    /// Connectivity of the floors through finite edges (tails hang off floors).
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(kind, _) in &self.edges {
            if let EdgeKind::Finite(a, b) = kind {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        let mut out = vec![Vec::new(); n];
        for &(kind, _) in &self.edges {
            if let EdgeKind::Finite(a, b) = kind {
                indeg[b] += 1;
                out[a].push(b);
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut visited = 0;
        while let Some(v) = queue.pop() {
            visited += 1;
            for &u in &out[v] {
                indeg[u] -= 1;
                if indeg[u] == 0 {
                    queue.push(u);
                }
            }
        }
        visited == n
    }

    /// `b_1` of the diagram: edges − vertices + 1 (vertices at infinity included).
    pub fn genus(&self) -> i64 {
        let tails = self.edges.iter().filter(|(k, _)| !matches!(k, EdgeKind::Finite(..))).count();
        self.edges.len() as i64 - (self.n() + tails) as i64 + 1
    }

    pub fn tail_weights(&self, minus: bool) -> Vec<u64> {
        let mut w: Vec<u64> = self
            .edges
            .iter()
            .filter(|(k, _)| matches!((k, minus), (EdgeKind::Minus(_), true) | (EdgeKind::Plus(_), false)))
            .map(|&(_, w)| w)
            .collect();
        w.sort();
        w
    }
}

impl FloorDiagram {
    /// Structural checks and the index view. Violations are returned when the
    /// diagram is not a well-formed weighted graph with 1-valent infinite vertices.
    pub(crate) fn indexed(&self) -> std::result::Result<Indexed, Vec<Violation>> {
        let mut violations = Vec::new();
        let mut role: HashMap<u32, u8> = HashMap::new();
        let mut floor_index = HashMap::new();
        for (i, f) in self.floors.iter().enumerate() {
            if role.insert(f.id, 0).is_some() {
                violations.push(Violation::DuplicateId { id: f.id });
            }
            floor_index.insert(f.id, i);
        }
        for &id in &self.inf_minus {
            if role.insert(id, 1).is_some() {
                violations.push(Violation::DuplicateId { id });
            }
        }
        for &id in &self.inf_plus {
            if role.insert(id, 2).is_some() {
                violations.push(Violation::DuplicateId { id });
            }
        }
        let mut valence: HashMap<u32, usize> = HashMap::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            *valence.entry(e.from).or_default() += 1;
            *valence.entry(e.to).or_default() += 1;
            if e.w == 0 {
                violations.push(Violation::ZeroWeight { edge: i });
            }
            let (rf, rt) = match (role.get(&e.from), role.get(&e.to)) {
                (Some(&a), Some(&b)) => (a, b),
                (None, _) => {
                    violations.push(Violation::UnknownVertex { id: e.from });
                    continue;
                }
                (_, None) => {
                    violations.push(Violation::UnknownVertex { id: e.to });
                    continue;
                }
            };
            let kind = match (rf, rt) {
                (0, 0) => EdgeKind::Finite(floor_index[&e.from], floor_index[&e.to]),
                (1, 0) => EdgeKind::Minus(floor_index[&e.to]),
                (0, 2) => EdgeKind::Plus(floor_index[&e.from]),
                (0, 1) => {
                    violations.push(Violation::InfiniteOrientation { id: e.to });
                    continue;
                }
                (2, 0) => {
                    violations.push(Violation::InfiniteOrientation { id: e.from });
                    continue;
                }
                _ => {
                    violations.push(Violation::EdgeBetweenInfinite { edge: i });
                    continue;
                }
            };
            edges.push((kind, e.w));
        }
        for &id in self.inf_minus.iter().chain(&self.inf_plus) {
            let v = valence.get(&id).copied().unwrap_or(0);
            if v != 1 {
                violations.push(Violation::InfiniteVertexValence { id, valence: v });
            }
        }
        if violations.is_empty() {
            Ok(Indexed {
                floor_ids: self.floors.iter().map(|f| f.id).collect(),
                theta: self.floors.iter().map(|f| f.theta).collect(),
                edges,
            })
        } else {
            Err(violations)
        }
    }

    /// First Betti number `Card(Edges) − Card(Vert) + 1`.
    pub fn genus(&self) -> Result<i64> {
        let ix = self.indexed().map_err(|v| Error::Invalid(format!("{v:?}")))?;
        if !ix.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(ix.genus())
    }

    /// `div(v)` of the floor with the given id.
    pub fn divergence(&self, id: u32) -> Option<i64> {
        let ix = self.indexed().ok()?;
        let i = ix.floor_index(id)?;
        Some(ix.divergences()[i])
    }

    /// `Card(D)`: floors plus edges.
    pub fn element_count(&self) -> usize {
        self.floors.len() + self.edges.len()
    }

    /// Every element of `D`: floors first, then edges.
    pub fn elements(&self) -> Vec<Element> {
        self.floors.iter().map(|f| Element::Floor(f.id)).chain((0..self.edges.len()).map(Element::Edge)).collect()
    }

    /// The problem this diagram belongs to: the polygon is rebuilt from the
    /// floor slopes and tail weights, bottom and top tails not covered by
    /// `alpha_minus` and `alpha_plus` become the `β` conditions.
    pub fn spec(&self, direction: LatticeVector, alpha_minus: NSeq, alpha_plus: NSeq) -> Result<DiagramSpec> {
        let ix = self.indexed().map_err(|v| Error::Invalid(format!("{v:?}")))?;
        let genus = self.genus()?;
        let div = ix.divergences();
        let left = ix.theta.clone();
        let right: Vec<i64> = ix.theta.iter().zip(&div).map(|(t, d)| t + d).collect();
        let (minus, plus) = (ix.tail_weights(true), ix.tail_weights(false));
        let length = |w: &[u64]| w.iter().sum::<u64>() as i64;
        let polygon = polygon_from_slopes(direction, &left, &right, length(&minus), length(&plus))?;
        let beta = |tails: &[u64], alpha: &NSeq| -> Result<NSeq> {
            let top = tails.iter().copied().max().unwrap_or(0).max(alpha.entries().len() as u64) as usize;
            let mut counts = vec![0i64; top];
            for &w in tails {
                counts[w as usize - 1] += 1;
            }
            for (k, &a) in alpha.entries().iter().enumerate() {
                counts[k] -= a as i64;
            }
            if counts.iter().any(|&c| c < 0) {
                return Err(Error::BoundaryMismatch(format!("tails {tails:?} cannot carry α = {alpha}")));
            }
            Ok(NSeq::new(counts.into_iter().map(|c| c as u32).collect()))
        };
        let beta_minus = beta(&minus, &alpha_minus)?;
        let beta_plus = beta(&plus, &alpha_plus)?;
        DiagramSpec::new(polygon, direction, genus as u32, alpha_plus, alpha_minus, beta_plus, beta_minus)
    }
}

/// All conditions of the floor diagram definition relative to `spec`.
pub fn validate(d: &FloorDiagram, spec: &DiagramSpec) -> Vec<Violation> {
    let ix = match d.indexed() {
        Ok(ix) => ix,
        Err(v) => return v,
    };
    let mut out = Vec::new();
    let connected = ix.is_connected();
    if !connected {
        out.push(Violation::Disconnected);
    }
    if !ix.is_acyclic() {
        out.push(Violation::Cycle);
    }
    if connected && ix.genus() != spec.genus() as i64 {
        out.push(Violation::Genus { expected: spec.genus(), found: ix.genus() });
    }
    if ix.n() != spec.d_height() {
        out.push(Violation::FloorCount { expected: spec.d_height(), found: ix.n() });
    }
    let data = spec.direction_data();
    let minus = ix.tail_weights(true);
    let plus = ix.tail_weights(false);
    let minus_total: i64 = minus.iter().map(|&w| w as i64).sum();
    let plus_total: i64 = plus.iter().map(|&w| w as i64).sum();
    // Σ div over bottom vertices is −(their total weight), over top ones +(total).
    if -minus_total != -data.d_minus {
        out.push(Violation::MinusDivergence { expected: -data.d_minus, found: -minus_total });
    }
    if plus_total != data.d_plus {
        out.push(Violation::PlusDivergence { expected: data.d_plus, found: plus_total });
    }
    let mut thetas = ix.theta.clone();
    thetas.sort();
    if thetas != data.left_slopes() {
        out.push(Violation::LeftSlopes { expected: data.left_slopes(), found: thetas });
    }
    let div = ix.divergences();
    let mut rights: Vec<i64> = ix.theta.iter().zip(&div).map(|(t, d)| t + d).collect();
    rights.sort();
    if rights != data.right_slopes() {
        out.push(Violation::RightSlopes { expected: data.right_slopes(), found: rights });
    }
    if minus != spec.minus_weights() {
        out.push(Violation::MinusTailWeights { expected: spec.minus_weights(), found: minus });
    }
    if plus != spec.plus_weights() {
        out.push(Violation::PlusTailWeights { expected: spec.plus_weights(), found: plus });
    }
    if let Some(deg) = spec.is_plane() {
        for (i, &dv) in div.iter().enumerate() {
            if dv != 1 {
                out.push(Violation::PlaneFloorDivergence { floor: ix.floor_ids[i], div: dv });
            }
        }
        let total = minus_total + plus_total;
        if total != deg {
            out.push(Violation::PlaneTailWeight { expected: deg, found: total });
        }
    }
    out
}

/// Checks that `m` is an order-compatible bijection satisfying the block conditions.
pub fn check_marking(d: &FloorDiagram, spec: &DiagramSpec, m: &Marking) -> Result<()> {
    let bad = |s: String| Err(Error::InvalidMarking(s));
    let ix = d.indexed().map_err(|v| Error::InvalidMarking(format!("diagram is malformed: {v:?}")))?;
    let labels: Vec<i64> = m.labels.keys().copied().collect();
    let expected: Vec<i64> = spec.labels().collect();
    if labels != expected {
        return bad(format!("labels {labels:?} differ from {}..={}", spec.first_label(), spec.last_label()));
    }
    let mut seen = HashSet::new();
    let mut label_of: HashMap<Element, i64> = HashMap::new();
    for (&label, &el) in &m.labels {
        let valid = match el {
            Element::Floor(id) => ix.floor_index(id).is_some(),
            Element::Edge(i) => i < ix.edges.len(),
        };
        if !valid {
            return bad(format!("label {label} points at unknown element {el}"));
        }
        if !seen.insert(el) {
            return bad(format!("element {el} carries two labels"));
        }
        label_of.insert(el, label);
        match spec.label_kind(label) {
            LabelKind::Free => {}
            LabelKind::AlphaMinus(k) | LabelKind::AlphaPlus(k) => {
                let want_minus = matches!(spec.label_kind(label), LabelKind::AlphaMinus(_));
                let ok = match el {
                    Element::Edge(i) => {
                        let (kind, w) = ix.edges[i];
                        w == k && matches!((kind, want_minus), (EdgeKind::Minus(_), true) | (EdgeKind::Plus(_), false))
                    }
                    Element::Floor(_) => false,
                };
                if !ok {
                    return bad(format!("label {label} must mark a tail of weight {k}"));
                }
            }
        }
    }
    if seen.len() != d.element_count() {
        return bad("marking is not surjective".into());
    }
    let floor_label = |i: usize| label_of[&Element::Floor(ix.floor_ids[i])];
    for (e, &(kind, _)) in ix.edges.iter().enumerate() {
        let le = label_of[&Element::Edge(e)];
        let (below, above) = match kind {
            EdgeKind::Finite(a, b) => (Some(a), Some(b)),
            EdgeKind::Minus(b) => (None, Some(b)),
            EdgeKind::Plus(a) => (Some(a), None),
        };
        if below.is_some_and(|a| floor_label(a) >= le) || above.is_some_and(|b| floor_label(b) <= le) {
            return bad(format!("edge E{e} is not ordered between its endpoints"));
        }
    }
    Ok(())
}
