use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::DiagramSpec;
use crate::error::Result;
use crate::lattice::{LatticeVector, Sl2};
use crate::rational::{int, rat, serde_rational, serde_rational_vec, Point, Rational};

/// Denominator of the transverse coordinates.
const GRID: i64 = 1_000_003;

/// Base points and fixed tangency lines for a realization.
///
/// In the frame where `direction` becomes `(0, 1)`, point `i` sits at height
/// `i · spacing`. Lines for the `α` conditions are parallel to `direction`
/// and given by their transverse coordinate in that frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    pub direction: LatticeVector,
    pub points: Vec<Point>,
    #[serde(with = "serde_rational_vec")]
    pub omega_minus: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub omega_plus: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub spacing: Rational,
}

impl PointConfig {
    pub(crate) fn frame(&self) -> Result<Sl2> {
        Sl2::normalizing(self.direction)
    }

    /// Points in the frame where the direction is vertical.
    pub fn normalized_points(&self) -> Result<Vec<Point>> {
        let b = self.frame()?;
        Ok(self.points.iter().map(|p| p.transform(&b.0)).collect())
    }

    /// The same transverse coordinates with heights `i · spacing`.
    pub fn with_spacing(&self, spacing: Rational) -> Result<PointConfig> {
        let b = self.frame()?;
        let back = b.inverse();
        let points = self
            .normalized_points()?
            .into_iter()
            .enumerate()
            .map(|(i, p)| Point::new(p.x, &spacing * int(i as i64 + 1)).transform(&back.0))
            .collect();
        Ok(PointConfig { points, spacing, ..self.clone() })
    }
}

/// Draws pairwise distinct transverse coordinates in `(0, 1)` from a seeded
/// ChaCha stream and stacks the `s` base points at heights `i · M`, with
/// `M = 1 + W` where `W = d_height + d_− + d_+` bounds every elevator weight
/// and the coordinates span less than one unit.
pub fn stretch_points(spec: &DiagramSpec, seed: u64) -> Result<PointConfig> {
    let s = spec.point_count();
    let (am, ap) = (spec.alpha_minus().size() as usize, spec.alpha_plus().size() as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut coords = Vec::with_capacity(s + am + ap);
    while coords.len() < s + am + ap {
        let n: i64 = rng.random_range(1..GRID);
        if seen.insert(n) {
            coords.push(rat(n, GRID));
        }
    }
    let data = spec.direction_data();
    let spacing = int(1 + data.d_height + data.d_minus + data.d_plus);
    let back = Sl2::normalizing(spec.direction())?.inverse();
    let points =
        (0..s).map(|i| Point::new(coords[i].clone(), &spacing * int(i as i64 + 1)).transform(&back.0)).collect();
    Ok(PointConfig {
        direction: spec.direction(),
        points,
        omega_minus: coords[s..s + am].to_vec(),
        omega_plus: coords[s + am..].to_vec(),
        spacing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::NSeq;
    use crate::lattice::LatticePolygon;

    #[test]
    fn point_counts() {
        let line = DiagramSpec::plane(1, 0, NSeq::empty(), NSeq::new(vec![1])).unwrap();
        assert_eq!(stretch_points(&line, 3).unwrap().points.len(), 2);
        let cubic = DiagramSpec::plane(3, 0, NSeq::empty(), NSeq::new(vec![3])).unwrap();
        assert_eq!(stretch_points(&cubic, 9).unwrap().points.len(), 8);
        let octic = LatticePolygon::new(vec![
            LatticeVector::new(0, 0),
            LatticeVector::new(2, -2),
            LatticeVector::new(3, -1),
            LatticeVector::new(1, 1),
        ])
        .unwrap();
        let spec = DiagramSpec::trivial(octic, LatticeVector::new(0, 1), 1).unwrap();
        assert_eq!(stretch_points(&spec, 0).unwrap().points.len(), 6);
    }

    #[test]
    fn deterministic_and_distinct() {
        let spec = DiagramSpec::plane(3, 0, NSeq::new(vec![0, 1]), NSeq::new(vec![1])).unwrap();
        let a = stretch_points(&spec, 42).unwrap();
        assert_eq!(a, stretch_points(&spec, 42).unwrap());
        assert_ne!(a, stretch_points(&spec, 43).unwrap());
        assert_eq!(a.omega_minus.len(), 1);
        let mut xs: Vec<Rational> = a.points.iter().map(|p| p.x.clone()).chain(a.omega_minus.clone()).collect();
        xs.sort();
        xs.dedup();
        assert_eq!(xs.len(), a.points.len() + 1);
        assert!(a.points.windows(2).all(|w| w[0].y < w[1].y));
    }

    #[test]
    fn respacing_keeps_transverse_coordinates() {
        let spec = DiagramSpec::plane(2, 0, NSeq::empty(), NSeq::new(vec![2])).unwrap();
        let a = stretch_points(&spec, 1).unwrap();
        let b = a.with_spacing(int(100)).unwrap();
        assert_eq!(b.points[2].y, int(300));
        assert!(a.points.iter().zip(&b.points).all(|(p, q)| p.x == q.x));
    }
}
