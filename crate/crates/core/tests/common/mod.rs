//! Fixtures shared by the integration suites.
#![allow(dead_code)]

use tropico::diagram::{DiagramSpec, NSeq};
use tropico::rational::int;
use tropico::tropical::TropicalPolynomial;
use tropico::{LatticePolygon, LatticeVector};

pub fn poly(vs: &[(i64, i64)]) -> LatticePolygon {
    LatticePolygon::new(vs.iter().map(|&(x, y)| LatticeVector::new(x, y)).collect()).unwrap()
}

pub fn up() -> LatticeVector {
    LatticeVector::new(0, 1)
}

/// Quadrilateral with one interior point and four boundary points.
pub fn diamond() -> LatticePolygon {
    poly(&[(0, 1), (1, 0), (2, 1), (1, 2)])
}

/// Quadrilateral whose left and right direction lists are both
/// `[(1, −1), (1, 1), (1, 1)]`.
pub fn octic() -> LatticePolygon {
    poly(&[(0, 0), (1, 1), (3, -1), (2, -2)])
}

pub fn seq(v: &[u32]) -> NSeq {
    NSeq::new(v.to_vec())
}

pub fn plane(d: i64, g: u32, alpha: &[u32], beta: &[u32]) -> DiagramSpec {
    DiagramSpec::plane(d, g, seq(alpha), seq(beta)).unwrap()
}

/// The counting problems with known answers, as `(name, spec, count)`.
pub fn golden_specs() -> Vec<(&'static str, DiagramSpec, u128)> {
    vec![
        ("cubic g=0 beta=[3]", plane(3, 0, &[], &[3]), 12),
        ("cubic g=0 beta=[1,1]", plane(3, 0, &[], &[1, 1]), 36),
        ("cubic g=0 alpha=[0,1] beta=[1]", plane(3, 0, &[0, 1], &[1]), 10),
        ("cubic g=1 beta=[3]", plane(3, 1, &[], &[3]), 1),
        ("diamond g=0", DiagramSpec::trivial(diamond(), up(), 0).unwrap(), 4),
        ("octic g=1", DiagramSpec::trivial(octic(), up(), 1).unwrap(), 12),
        ("octic g=0", DiagramSpec::trivial(octic(), up(), 0).unwrap(), 16),
    ]
}

fn terms(entries: impl IntoIterator<Item = ((i64, i64), i64)>) -> TropicalPolynomial {
    TropicalPolynomial::new(entries.into_iter().map(|((x, y), a)| (LatticeVector::new(x, y), int(a)))).unwrap()
}

/// Lift `−(100 j² + q[j][i])`: cells stay between consecutive rows, and an
/// affine row produces edges of lattice length two.
pub fn strips(q: &[&[i64]]) -> TropicalPolynomial {
    terms(q.iter().enumerate().flat_map(|(j, row)| {
        row.iter().enumerate().map(move |(i, &f)| ((i as i64, j as i64), -(100 * (j * j) as i64 + f)))
    }))
}

/// Cubic whose only defect is one bounded edge of weight two.
pub fn weight_two_cubic() -> TropicalPolynomial {
    strips(&[&[0, 1, 3, 7], &[0, 0, 0], &[0, 1], &[0]])
}

/// Cubic whose only defect is a vertex dual to a triangle around `(1, 1)`.
pub fn fat_triangle_cubic() -> TropicalPolynomial {
    terms([
        ((0, 0), -29),
        ((1, 0), -7),
        ((2, 0), -4),
        ((3, 0), -4),
        ((0, 1), -15),
        ((1, 1), -100),
        ((2, 1), -1),
        ((0, 2), -12),
        ((1, 2), -10),
        ((0, 3), -24),
    ])
}

/// Quartic with a vertical weight-two edge crossing a horizontal one.
pub fn crossing_quartic() -> TropicalPolynomial {
    strips(&[&[0, 1, 3, 7, 15], &[0, 0, 0, 5], &[0, 0, 0], &[0, 1], &[0]])
}
