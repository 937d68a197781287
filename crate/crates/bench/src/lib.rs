//! Fixtures shared by the benchmarks.

use tropico::diagram::{DiagramSpec, NSeq};
use tropico::rational::int;
use tropico::tropical::TropicalPolynomial;
use tropico::{LatticePolygon, LatticeVector};

/// Plane curves of degree `d` and genus `g` with transverse tangency to the bottom edge.
pub fn plane(d: i64, g: u32) -> DiagramSpec {
    DiagramSpec::plane(d, g, NSeq::empty(), NSeq::new(vec![d as u32])).expect("valid plane problem")
}

/// The quadrilateral with vertices (0,0), (1,1), (3,−1), (2,−2).
pub fn quadrilateral(g: u32) -> DiagramSpec {
    let vs = [(0, 0), (1, 1), (3, -1), (2, -2)].iter().map(|&(x, y)| LatticeVector::new(x, y)).collect();
    DiagramSpec::trivial(LatticePolygon::new(vs).expect("convex"), LatticeVector::new(0, 1), g).expect("valid problem")
}

/// A polynomial with support `T_d` and pseudo-random coefficients in `[-50, 50]`.
pub fn triangle_polynomial(d: i64, seed: i64) -> TropicalPolynomial {
    let terms = (0..=d).flat_map(|j| (0..=d - j).map(move |i| (i, j))).map(|(i, j)| {
        let a = (i * 37 + j * 101 + seed * 53 + i * j * 17).rem_euclid(101) - 50;
        (LatticeVector::new(i, j), int(a))
    });
    TropicalPolynomial::new(terms).expect("full support")
}
