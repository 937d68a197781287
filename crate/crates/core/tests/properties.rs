mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::*;
use tropico::diagram::{canonical_key, count, enumerate_diagrams, marking_count, Floor, FloorDiagram};
use tropico::lattice::{
    direction_data, integral_length, is_transverse, transverse_directions, vertex_singularity, Sl2,
};
use tropico::rational::{int, Point};
use tropico::tropical::{
    check_duality, corner_locus, geometric_genus, legendre_transform, stable_intersection_generic, TropicalPolynomial,
};
use tropico::{Error, LatticePolygon, LatticeVector, Rational};

fn v(x: i64, y: i64) -> LatticeVector {
    LatticeVector::new(x, y)
}

fn random_polygon() -> impl Strategy<Value = LatticePolygon> {
    prop::collection::vec((-6i64..=6, -6i64..=6), 3..12).prop_filter_map("degenerate hull", |pts| {
        LatticePolygon::hull(&pts.into_iter().map(|(x, y)| v(x, y)).collect::<Vec<_>>()).ok()
    })
}

/// Polynomials with full support `T_d` and random integer coefficients.
fn triangle_polynomial(d: i64) -> impl Strategy<Value = TropicalPolynomial> {
    let n = ((d + 1) * (d + 2) / 2) as usize;
    prop::collection::vec(-30i64..=30, n).prop_map(move |coeffs| {
        let exps = (0..=d).flat_map(|j| (0..=d - j).map(move |i| v(i, j)));
        TropicalPolynomial::new(exps.zip(coeffs).map(|(e, a)| (e, int(a)))).unwrap()
    })
}

fn sl2() -> impl Strategy<Value = Sl2> {
    prop::sample::select(vec![
        Sl2([[1, 1], [0, 1]]),
        Sl2([[1, 0], [1, 1]]),
        Sl2([[0, -1], [1, 0]]),
        Sl2([[2, 1], [1, 1]]),
        Sl2([[1, -2], [0, 1]]),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pick_holds(p in random_polygon()) {
        prop_assert!(p.pick_identity());
        prop_assert_eq!(p.lattice_points().len() as i64, p.interior_points() + p.boundary_points());
    }

    #[test]
    fn boundary_count_identity(p in random_polygon()) {
        for d in transverse_directions(&p, 2) {
            let data = direction_data(&p, d).unwrap();
            prop_assert_eq!(2 * data.d_height + data.d_plus + data.d_minus, p.boundary_points());
            prop_assert!(data.d_left.iter().chain(&data.d_right).all(|u| u.is_primitive()));
        }
    }

    #[test]
    fn direction_data_is_equivariant(p in random_polygon(), m in sl2()) {
        let dual = m.inverse().transpose();
        let q = p.transform(&dual);
        for d in transverse_directions(&p, 2) {
            let md = m.apply(d);
            prop_assert!(is_transverse(&q, md));
            let a = direction_data(&p, d).unwrap();
            let b = direction_data(&q, md).unwrap();
            let mut left: Vec<LatticeVector> = a.d_left.iter().map(|&u| m.apply(u)).collect();
            let mut right: Vec<LatticeVector> = a.d_right.iter().map(|&u| m.apply(u)).collect();
            left.sort();
            right.sort();
            prop_assert_eq!(left, b.d_left);
            prop_assert_eq!(right, b.d_right);
            prop_assert_eq!((a.d_plus, a.d_minus), (b.d_plus, b.d_minus));
        }
    }

    #[test]
    fn integral_length_symmetric_and_additive(x in -20i64..20, y in -20i64..20, u in -5i64..5, w in -5i64..5, s in 0i64..4, t in 0i64..4) {
        let (p, dir) = (v(x, y), v(u, w));
        let (q, r) = (p + s * dir, p + (s + t) * dir);
        prop_assert_eq!(integral_length(p, q), integral_length(q, p));
        prop_assert_eq!(integral_length(p, r), integral_length(p, q) + integral_length(q, r));
    }

    #[test]
    fn order_two_singularities_are_nodes(k in -6i64..6, m in sl2()) {
        let (u, w) = (m.apply(v(1, 0)), m.apply(v(2 * k + 1, 2)));
        prop_assert_eq!(vertex_singularity(u, w).unwrap(), (2, 1));
    }
}

fn corner_locus_properties(p: &TropicalPolynomial) -> Result<(), TestCaseError> {
    let newton = p.newton_polygon().unwrap();
    let (c, sub) = corner_locus(p).unwrap();
    prop_assert!(c.check_balancing());
    prop_assert!(check_duality(&c, &sub, &newton));
    prop_assert!(c.newton_polygon_of().unwrap().eq_up_to_translation(&newton));
    // Rays leaving along each outward normal add up to that edge's length.
    for (a, b) in newton.edges() {
        let e = b - a;
        let normal = v(e.y, -e.x).primitive();
        let weight: u64 = c.rays.iter().filter(|r| r.direction == normal).map(|r| r.weight).sum();
        prop_assert_eq!(weight as i64, e.content());
    }
    // Each vertex is where its cell's terms tie for the maximum.
    for (vertex, cell) in c.vertices.iter().zip(&sub.cells) {
        let top = p.maximizers(vertex);
        prop_assert!(cell.vertices().iter().all(|u| top.contains(u)));
    }
    match geometric_genus(&c) {
        Ok(g) => prop_assert!(0 <= g && g <= newton.interior_points()),
        Err(Error::UnsupportedShape(_) | Error::Reducible | Error::NonReduced) => {}
        Err(e) => prop_assert!(false, "genus failed: {e}"),
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn corner_loci_line(p in triangle_polynomial(1)) { corner_locus_properties(&p)?; }

    #[test]
    fn corner_loci_conic(p in triangle_polynomial(2)) { corner_locus_properties(&p)?; }

    #[test]
    fn corner_loci_cubic(p in triangle_polynomial(3)) { corner_locus_properties(&p)?; }

    #[test]
    fn corner_loci_quartic(p in triangle_polynomial(4)) { corner_locus_properties(&p)?; }

    #[test]
    fn bezout(
        (d, p) in (1i64..=4).prop_flat_map(|d| (Just(d), triangle_polynomial(d))),
        (e, q) in (1i64..=4).prop_flat_map(|e| (Just(e), triangle_polynomial(e))),
    ) {
        let (c1, _) = corner_locus(&p).unwrap();
        let (c2, _) = corner_locus(&q).unwrap();
        let (_, points) = stable_intersection_generic(&c1, &c2).unwrap();
        prop_assert_eq!(points.iter().map(|x| x.1).sum::<u64>() as i64, d * e);
    }

    #[test]
    fn legendre_envelope(vals in prop::collection::vec(-20i64..20, 10)) {
        let pts: Vec<LatticeVector> = (0..=3).flat_map(|j| (0..=3 - j).map(move |i| v(i, j))).collect();
        let f: BTreeMap<LatticeVector, Rational> = pts.iter().copied().zip(vals.iter().map(|&a| int(a))).collect();
        let t = legendre_transform(&f).unwrap();
        // The transform is the polynomial with coefficients −f.
        let poly = TropicalPolynomial::new(f.iter().map(|(&x, a)| (x, -a.clone()))).unwrap();
        for x in -3..=3 {
            for y in -3..=3 {
                let p = Point::from_ints(x, y);
                prop_assert_eq!(t.evaluate(&p), poly.eval(&p));
            }
        }
        // The bi-transform never exceeds f, and it equals f at the pieces.
        for (x, fx) in &f {
            let env = t.bi_transform_at(&Point::from_ints(x.x, x.y)).unwrap();
            prop_assert!(&env <= fx);
        }
        for piece in &t.pieces {
            let at = Point::from_ints(piece.exponent.x, piece.exponent.y);
            prop_assert_eq!(t.bi_transform_at(&at).unwrap(), f[&piece.exponent].clone());
        }
    }

    #[test]
    fn legendre_involutive_on_convex(a in 1i64..5, b in 1i64..5, c in -3i64..3, shift in -5i64..5) {
        // A strictly convex quadratic in convex position is its own envelope.
        let f: BTreeMap<LatticeVector, Rational> = (-2..=2)
            .flat_map(|j| (-2..=2).map(move |i| v(i, j)))
            .map(|u| (u, int(a * u.x * u.x + b * u.y * u.y + c * u.x + shift)))
            .collect();
        let t = legendre_transform(&f).unwrap();
        prop_assert_eq!(t.pieces.len(), f.len());
        for (x, fx) in &f {
            prop_assert_eq!(&t.bi_transform_at(&Point::from_ints(x.x, x.y)).unwrap(), fx);
        }
    }
}

/// Renumbers floors and tails of `d` by a rotation of the ids.
fn relabel(d: &FloorDiagram, k: u32) -> FloorDiagram {
    let total = (d.floors.len() + d.inf_minus.len() + d.inf_plus.len()) as u32;
    let map = |id: u32| (id + k) % total;
    let mut out = FloorDiagram {
        floors: d.floors.iter().map(|f| Floor { id: map(f.id), theta: f.theta }).collect(),
        inf_minus: d.inf_minus.iter().map(|&i| map(i)).collect(),
        inf_plus: d.inf_plus.iter().map(|&i| map(i)).collect(),
        edges: d.edges.clone(),
    };
    for e in &mut out.edges {
        e.from = map(e.from);
        e.to = map(e.to);
    }
    out.edges.reverse();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counts_ignore_labels(spec_ix in 0usize..7, k in 1u32..9) {
        let (_, spec, expected) = golden_specs().swap_remove(spec_ix);
        prop_assert_eq!(count(&spec).unwrap(), expected);
        for d in enumerate_diagrams(&spec) {
            let r = relabel(&d, k);
            prop_assert_eq!(canonical_key(&d), canonical_key(&r));
            prop_assert_eq!(marking_count(&d, &spec).unwrap(), marking_count(&r, &spec).unwrap());
        }
    }
}
