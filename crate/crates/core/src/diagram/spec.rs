use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{direction_data, DirectionData, LatticePolygon, LatticeVector};

/// A finitely supported sequence `[α_1, α_2, …]` of nonnegative integers;
/// `α_k` counts conditions of order `k`. Trailing zeros are dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NSeq(Vec<u32>);

impl NSeq {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        NSeq(entries)
    }

    pub fn empty() -> Self {
        NSeq(Vec::new())
    }

    /// The sequence with a single nonzero entry `α_k = count`.
    pub fn unit(k: usize, count: u32) -> Self {
        assert!(k >= 1);
        let mut v = vec![0; k];
        v[k - 1] = count;
        NSeq::new(v)
    }

    /// Parses a comma list such as `"0,1"`; the empty string is the zero sequence.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(NSeq::empty());
        }
        t.split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Invalid(format!("bad sequence entry {p:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(NSeq::new)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `α_k`, zero beyond the support.
    pub fn get(&self, k: usize) -> u32 {
        if k == 0 {
            return 0;
        }
        self.0.get(k - 1).copied().unwrap_or(0)
    }

    /// `|α| = Σ α_k`.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    /// `Iα = Σ k·α_k`.
    pub fn weighted(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &a)| (i as u64 + 1) * a as u64).sum()
    }

    /// `I^α = Π k^{α_k}`.
    pub fn power_product(&self) -> u128 {
        self.0.iter().enumerate().map(|(i, &a)| (i as u128 + 1).pow(a)).product()
    }

    /// The weights `k` repeated `α_k` times, in increasing order.
    pub fn weights(&self) -> Vec<u64> {
        self.0.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat_n(i as u64 + 1, a as usize)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for NSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// What a label of a marking is allowed to point at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelKind {
    /// Fixed condition on a bottom tail of the given weight.
    AlphaMinus(u64),
    /// A base point.
    Free,
    /// Fixed condition on a top tail of the given weight.
    AlphaPlus(u64),
}

/// Enumerative problem: polygon, direction, genus and tangency conditions
/// along the bottom (`minus`) and top (`plus`) edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramSpec {
    polygon: LatticePolygon,
    direction: LatticeVector,
    genus: u32,
    alpha_plus: NSeq,
    alpha_minus: NSeq,
    beta_plus: NSeq,
    beta_minus: NSeq,
    data: DirectionData,
}

impl DiagramSpec {
    pub fn new(
        polygon: LatticePolygon,
        direction: LatticeVector,
        genus: u32,
        alpha_plus: NSeq,
        alpha_minus: NSeq,
        beta_plus: NSeq,
        beta_minus: NSeq,
    ) -> Result<Self> {
        let data = direction_data(&polygon, direction)?;
        if data.d_height == 0 {
            return Err(Error::DegeneratePolygon("no floors".into()));
        }
        let max = polygon.interior_points() as u64;
        if genus as u64 > max {
            return Err(Error::GenusOutOfRange { genus, max });
        }
        for (a, b, side, name) in
            [(&alpha_minus, &beta_minus, data.d_minus, "bottom"), (&alpha_plus, &beta_plus, data.d_plus, "top")]
        {
            let total = a.weighted() + b.weighted();
            if side == 0 && total > 0 {
                return Err(Error::SideBoundaryCondition);
            }
            if total != side as u64 {
                return Err(Error::BoundaryMismatch(format!(
                    "{name} conditions have weight {total}, edge length is {side}"
                )));
            }
        }
        Ok(DiagramSpec { polygon, direction, genus, alpha_plus, alpha_minus, beta_plus, beta_minus, data })
    }

    /// Transverse tangency to both horizontal edges: `β^± = [d_±]`, `α^± = 0`.
    pub fn trivial(polygon: LatticePolygon, direction: LatticeVector, genus: u32) -> Result<Self> {
        let data = direction_data(&polygon, direction)?;
        let b_minus = NSeq::new(vec![data.d_minus as u32]);
        let b_plus = NSeq::new(vec![data.d_plus as u32]);
        Self::new(polygon, direction, genus, NSeq::empty(), NSeq::empty(), b_plus, b_minus)
    }

    /// Plane curves of degree `d`: `T_d`, direction `(0, 1)`, conditions on the bottom edge.
    pub fn plane(d: i64, genus: u32, alpha: NSeq, beta: NSeq) -> Result<Self> {
        Self::new(
            LatticePolygon::triangle(d)?,
            LatticeVector::new(0, 1),
            genus,
            NSeq::empty(),
            alpha,
            NSeq::empty(),
            beta,
        )
    }

    pub fn polygon(&self) -> &LatticePolygon {
        &self.polygon
    }

    pub fn direction(&self) -> LatticeVector {
        self.direction
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn alpha_plus(&self) -> &NSeq {
        &self.alpha_plus
    }

    pub fn alpha_minus(&self) -> &NSeq {
        &self.alpha_minus
    }

    pub fn beta_plus(&self) -> &NSeq {
        &self.beta_plus
    }

    pub fn beta_minus(&self) -> &NSeq {
        &self.beta_minus
    }

    pub fn direction_data(&self) -> &DirectionData {
        &self.data
    }

    pub fn d_height(&self) -> usize {
        self.data.d_height as usize
    }

    /// Number of base points `s = g − 1 + 2·d_height + |β^+| + |β^−|`.
    pub fn point_count(&self) -> usize {
        (self.genus as i64 - 1 + 2 * self.data.d_height + self.beta_plus.size() as i64 + self.beta_minus.size() as i64)
            as usize
    }

    /// Smallest label, `−|α^−| + 1`.
    pub fn first_label(&self) -> i64 {
        1 - self.alpha_minus.size() as i64
    }

    /// Largest label, `s + |α^+|`.
    pub fn last_label(&self) -> i64 {
        (self.point_count() as u64 + self.alpha_plus.size()) as i64
    }

    pub fn labels(&self) -> std::ops::RangeInclusive<i64> {
        self.first_label()..=self.last_label()
    }

    /// Constraint attached to a label.
    pub fn label_kind(&self, label: i64) -> LabelKind {
        let s = self.point_count() as i64;
        if label <= 0 {
            let idx = (label - self.first_label()) as usize;
            LabelKind::AlphaMinus(self.alpha_minus.weights()[idx])
        } else if label <= s {
            LabelKind::Free
        } else {
            LabelKind::AlphaPlus(self.alpha_plus.weights()[(label - s - 1) as usize])
        }
    }

    /// Weights of the bottom tails, `α^− ∪ β^−`, sorted.
    pub fn minus_weights(&self) -> Vec<u64> {
        let mut w = self.alpha_minus.weights();
        w.extend(self.beta_minus.weights());
        w.sort();
        w
    }

    /// Weights of the top tails, `α^+ ∪ β^+`, sorted.
    pub fn plus_weights(&self) -> Vec<u64> {
        let mut w = self.alpha_plus.weights();
        w.extend(self.beta_plus.weights());
        w.sort();
        w
    }

    /// `I^{β^+} · I^{β^−}`.
    pub fn beta_factor(&self) -> u128 {
        self.beta_plus.power_product() * self.beta_minus.power_product()
    }

    /// `I^{α^+} · I^{α^−}`.
    pub fn alpha_factor(&self) -> u128 {
        self.alpha_plus.power_product() * self.alpha_minus.power_product()
    }

    /// True when the polygon is a translate of `T_d` and the direction is `(0, 1)`.
    pub fn is_plane(&self) -> Option<i64> {
        let d = self.data.d_height;
        let t = LatticePolygon::triangle(d).ok()?;
        (self.direction == LatticeVector::new(0, 1) && self.polygon.eq_up_to_translation(&t)).then_some(d)
    }
}
