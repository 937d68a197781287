//! Tropical morphisms from abstract curves, and the passage between them and
//! plane curves: taking the image adds crossing vertices, separating nodes
//! removes them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::rational::{Point, Rational};
use crate::tropical::curve::{PlaneTropicalCurve, Ray, Segment};

/// Bounded edge of the source mapped onto the segment `from → to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamEdge {
    pub from: usize,
    pub to: usize,
    pub direction: LatticeVector,
    pub weight: u64,
}

/// Unbounded edge of the source leaving `base`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamEnd {
    pub base: usize,
    pub direction: LatticeVector,
    pub weight: u64,
}

/// An abstract tropical curve together with its map to the plane, stored by
/// the images of its vertices. Edge lengths are the lattice lengths of the
/// image divided by the stretching factors `weight`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParametrizedCurve {
    pub vertices: Vec<Point>,
    pub edges: Vec<ParamEdge>,
    pub ends: Vec<ParamEnd>,
}

impl ParametrizedCurve {
    pub fn stars(&self) -> Vec<Vec<(u64, LatticeVector)>> {
        let mut star = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            star[e.from].push((e.weight, e.direction));
            star[e.to].push((e.weight, -e.direction));
        }
        for r in &self.ends {
            star[r.base].push((r.weight, r.direction));
        }
        star
    }

    pub fn check_balancing(&self) -> bool {
        self.stars()
            .iter()
            .all(|star| star.iter().fold(LatticeVector::zero(), |acc, &(w, u)| acc + (w as i64) * u).is_zero())
    }

    /// Every edge image is a nondegenerate segment in its stated direction.
    pub fn check_geometry(&self) -> bool {
        self.edges.iter().all(|e| {
            e.direction.is_primitive()
                && self.vertices[e.to].param_along(&self.vertices[e.from], e.direction).is_some_and(|t| t.is_positive())
        }) && self.ends.iter().all(|r| r.direction.is_primitive())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|v| find(&mut parent, v) == root)
    }

    /// First Betti number of the source.
    pub fn genus(&self) -> Result<i64> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edges.len() as i64 - self.vertices.len() as i64 + 1)
    }

    /// `Π_v |det(w u, w' u')|` over the trivalent vertices of the source.
    pub fn tropical_multiplicity(&self) -> Result<u128> {
        let mut m: u128 = 1;
        for (v, star) in self.stars().iter().enumerate() {
            if star.len() != 3 {
                return Err(Error::NotTrivalent(v));
            }
            let (a, b) = ((star[0].0 as i64) * star[0].1, (star[1].0 as i64) * star[1].1);
            m *= a.det(b).unsigned_abs() as u128;
        }
        Ok(m)
    }

    /// The plane curve traced by the map: crossings between edge images
    /// become vertices. Overlapping edge images are rejected.
    pub fn image(&self) -> Result<PlaneTropicalCurve> {
        let pieces: Vec<Piece> = self
            .edges
            .iter()
            .map(|e| Piece::segment(&self.vertices[e.from], &self.vertices[e.to], e.direction, e.weight))
            .chain(self.ends.iter().map(|r| Piece::ray(&self.vertices[r.base], r.direction, r.weight)))
            .collect();
        let mut index: BTreeMap<Point, usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        for p in &self.vertices {
            index.entry(p.clone()).or_insert_with(|| {
                vertices.push(p.clone());
                vertices.len() - 1
            });
        }
        let mut extra: BTreeSet<Point> = BTreeSet::new();
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                match pieces[i].meet(&pieces[j]) {
                    Meet::None => {}
                    Meet::Point(p) => {
                        if !index.contains_key(&p) {
                            extra.insert(p);
                        }
                    }
                    Meet::Overlap => {
                        return Err(Error::NonTransverse("edge images overlap".into()));
                    }
                }
            }
        }
        for p in extra {
            index.insert(p.clone(), vertices.len());
            vertices.push(p);
        }
        let mut segments = Vec::new();
        let mut rays = Vec::new();
        for piece in &pieces {
            let mut stops: Vec<(Rational, usize)> =
                index.iter().filter_map(|(p, &i)| piece.param_of(p).map(|t| (t, i))).collect();
            stops.sort();
            for w in stops.windows(2) {
                segments.push(Segment { from: w[0].1, to: w[1].1, weight: piece.weight, direction: piece.dir });
            }
            if piece.end.is_none() {
                let last = stops.last().expect("the base lies on its piece").1;
                rays.push(Ray { base: last, direction: piece.dir, weight: piece.weight });
            }
        }
        Ok(PlaneTropicalCurve { vertices, segments, rays })
    }
}

/// A segment or ray `start + t·dir`, `0 ≤ t ≤ end`.
pub(crate) struct Piece {
    pub start: Point,
    pub dir: LatticeVector,
    pub end: Option<Rational>,
    pub weight: u64,
}

pub(crate) enum Meet {
    None,
    Point(Point),
    Overlap,
}

impl Piece {
    pub fn segment(a: &Point, b: &Point, dir: LatticeVector, weight: u64) -> Piece {
        let end = b.param_along(a, dir).expect("segment endpoints follow the direction");
        Piece { start: a.clone(), dir, end: Some(end), weight }
    }

    pub fn ray(a: &Point, dir: LatticeVector, weight: u64) -> Piece {
        Piece { start: a.clone(), dir, end: None, weight }
    }

    pub fn contains_param(&self, t: &Rational) -> bool {
        !t.is_negative() && self.end.as_ref().is_none_or(|e| t <= e)
    }

    /// Parameter of `p` on the piece, if it lies on it.
    pub fn param_of(&self, p: &Point) -> Option<Rational> {
        p.param_along(&self.start, self.dir).filter(|t| self.contains_param(t))
    }

    /// Is `t` an endpoint parameter?
    pub fn is_end(&self, t: &Rational) -> bool {
        t.is_zero() || self.end.as_ref() == Some(t)
    }

    pub fn point_at(&self, t: &Rational) -> Point {
        self.start.offset(self.dir, t)
    }

    /// Intersection of the two pieces, with parameters on each.
    pub fn meet_params(&self, other: &Piece) -> Option<std::result::Result<(Rational, Rational), ()>> {
        let det = self.dir.det(other.dir);
        let delta = other.start.sub(&self.start);
        if det == 0 {
            if !delta.cross(self.dir).is_zero() {
                return None;
            }
            // Collinear: intersect parameter intervals along `self.dir`;
            // `None` bounds are infinite.
            let dd = Rational::from_integer(self.dir.dot(self.dir).into());
            let o0 = delta.dot(self.dir) / dd;
            let same = self.dir == other.dir;
            let o1 = other.end.as_ref().map(|e| if same { &o0 + e } else { &o0 - e });
            let (lo, hi) = if same { (Some(o0), o1) } else { (o1, Some(o0)) };
            let start = match lo {
                Some(l) if l.is_positive() => l,
                _ => Rational::zero(),
            };
            let end = match (hi, &self.end) {
                (Some(h), Some(e)) => Some(if h < *e { h } else { e.clone() }),
                (Some(h), None) => Some(h),
                (None, e) => e.clone(),
            };
            return match end {
                Some(e) if e < start => None,
                Some(e) if e == start => {
                    let t = other.param_of(&self.point_at(&start)).unwrap_or_else(Rational::zero);
                    Some(Ok((start, t)))
                }
                _ => Some(Err(())),
            };
        }
        let det_r = Rational::from_integer(det.into());
        let s = delta.cross(other.dir) / &det_r;
        let t = delta.cross(self.dir) / &det_r;
        (self.contains_param(&s) && other.contains_param(&t)).then_some(Ok((s, t)))
    }

    pub fn meet(&self, other: &Piece) -> Meet {
        match self.meet_params(other) {
            None => Meet::None,
            Some(Err(())) => Meet::Overlap,
            Some(Ok((s, _))) => Meet::Point(self.point_at(&s)),
        }
    }
}

/// Where a chain of collinear pieces stops.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ChainEnd {
    Vertex(usize),
    Infinity,
}

/// A maximal straight chain through crossing vertices.
#[derive(Debug, Clone)]
pub(crate) struct Chain {
    /// Start and end; the chain runs from `ends.0` to `ends.1` along `direction`.
    pub ends: (ChainEnd, ChainEnd),
    pub direction: LatticeVector,
    pub weight: u64,
}

/// A 4-valent vertex made of two transverse straight lines.
pub(crate) fn is_crossing(star: &[(u64, LatticeVector)]) -> bool {
    star.len() == 4
        && star.iter().all(|&(w, u)| star.iter().filter(|&&(w2, u2)| w2 == w && u2 == -u).count() == 1)
        && star.iter().any(|&(_, u)| u.det(star[0].1) != 0)
}

/// Straight chains of `c`, continuing through crossing vertices.
pub(crate) fn chains(c: &PlaneTropicalCurve) -> Vec<Chain> {
    let stars = c.stars();
    let crossing: Vec<bool> = stars.iter().map(|s| is_crossing(s)).collect();
    // Pieces as (a, b, u): from vertex `a` along `u` to `b` (None: infinity).
    let pieces: Vec<(usize, Option<usize>, LatticeVector, u64)> = c
        .segments
        .iter()
        .map(|s| (s.from, Some(s.to), s.direction, s.weight))
        .chain(c.rays.iter().map(|r| (r.base, None, r.direction, r.weight)))
        .collect();
    let mut leaving: HashMap<(usize, LatticeVector), usize> = HashMap::new();
    for (i, &(a, b, u, _)) in pieces.iter().enumerate() {
        leaving.insert((a, u), i);
        if let Some(b) = b {
            leaving.insert((b, -u), i);
        }
    }
    let mut seen = vec![false; pieces.len()];
    let mut out = Vec::new();
    for start in 0..pieces.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let (a, b, u, w) = pieces[start];
        // Walks from vertex `v` in direction `dir` until a non-crossing vertex or infinity.
        let mut walk = |mut v: Option<usize>, dir: LatticeVector| -> ChainEnd {
            loop {
                match v {
                    None => return ChainEnd::Infinity,
                    Some(x) if !crossing[x] => return ChainEnd::Vertex(x),
                    Some(x) => {
                        let i = leaving[&(x, dir)];
                        seen[i] = true;
                        let (pa, pb, _, _) = pieces[i];
                        v = if pa == x { pb } else { Some(pa) };
                    }
                }
            }
        };
        let head = walk(b, u);
        let tail = walk(Some(a), -u);
        out.push(Chain { ends: (tail, head), direction: u, weight: w });
    }
    out
}

/// The abstract curve obtained by resolving every crossing into two
/// disjoint branches.
pub fn separate_nodes(c: &PlaneTropicalCurve) -> Result<ParametrizedCurve> {
    let stars = c.stars();
    let kept: Vec<usize> = (0..c.vertices.len()).filter(|&v| !is_crossing(&stars[v])).collect();
    let new_index: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    let mut ends = Vec::new();
    for ch in chains(c) {
        match ch.ends {
            (ChainEnd::Vertex(a), ChainEnd::Vertex(b)) => edges.push(ParamEdge {
                from: new_index[&a],
                to: new_index[&b],
                direction: ch.direction,
                weight: ch.weight,
            }),
            (ChainEnd::Vertex(a), ChainEnd::Infinity) => {
                ends.push(ParamEnd { base: new_index[&a], direction: ch.direction, weight: ch.weight })
            }
            (ChainEnd::Infinity, ChainEnd::Vertex(b)) => {
                ends.push(ParamEnd { base: new_index[&b], direction: -ch.direction, weight: ch.weight })
            }
            (ChainEnd::Infinity, ChainEnd::Infinity) => return Err(Error::Reducible),
        }
    }
    Ok(ParametrizedCurve { vertices: kept.iter().map(|&v| c.vertices[v].clone()).collect(), edges, ends })
}
