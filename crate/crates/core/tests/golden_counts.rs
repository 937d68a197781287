mod oracle;

use oracle::Severi;
use tropico::diagram::{
    count, count_explain, enumerate_diagrams, lemma_1_5_check, marking_count, validate, weighted_card_check,
    DiagramSpec, NSeq,
};
use tropico::{LatticePolygon, LatticeVector};

fn poly(vs: &[(i64, i64)]) -> LatticePolygon {
    LatticePolygon::new(vs.iter().map(|&(x, y)| LatticeVector::new(x, y)).collect()).unwrap()
}

fn up() -> LatticeVector {
    LatticeVector::new(0, 1)
}

fn plane(d: i64, g: u32) -> DiagramSpec {
    DiagramSpec::plane(d, g, NSeq::empty(), NSeq::new(vec![d as u32])).unwrap()
}

fn sorted_markings(spec: &DiagramSpec) -> Vec<u128> {
    let mut v: Vec<u128> = enumerate_diagrams(spec).iter().map(|d| marking_count(d, spec).unwrap()).collect();
    v.sort();
    v
}

#[test]
fn plane_cubic_marking_tables() {
    assert_eq!(sorted_markings(&plane(3, 0)), vec![1, 3, 5]);
    let s = DiagramSpec::plane(3, 0, NSeq::empty(), NSeq::new(vec![1, 1])).unwrap();
    assert_eq!(sorted_markings(&s), vec![2, 4, 6]);
    let s = DiagramSpec::plane(3, 0, NSeq::new(vec![0, 1]), NSeq::new(vec![1])).unwrap();
    assert_eq!(sorted_markings(&s), vec![1, 3, 3]);
    assert_eq!(enumerate_diagrams(&plane(3, 1)).len(), 1);
}

#[test]
fn plane_counts_match_recursion() {
    let mut oracle = Severi::default();
    for d in 1..=5 {
        let pa = (d - 1) * (d - 2) / 2;
        for g in 0..=pa {
            let expected = oracle.irreducible(d as u32, g);
            assert_eq!(count(&plane(d, g as u32)).unwrap() as i128, expected, "degree {d}, genus {g}");
        }
    }
}

#[test]
fn quartic_rational_count() {
    assert_eq!(count(&plane(4, 0)).unwrap(), 620);
}

#[test]
fn relative_counts_match_recursion() {
    let mut oracle = Severi::default();
    let cases: [(u32, u32, &[u32], &[u32]); 5] =
        [(3, 0, &[], &[1, 1]), (3, 0, &[0, 1], &[1]), (3, 0, &[1], &[2]), (4, 1, &[0, 1], &[2]), (4, 2, &[], &[0, 2])];
    for (d, g, alpha, beta) in cases {
        let spec = DiagramSpec::plane(d as i64, g, NSeq::new(alpha.to_vec()), NSeq::new(beta.to_vec())).unwrap();
        let delta = ((d - 1) * (d - 2) / 2 - g) as i64;
        // Every curve counted here is irreducible: reducible ones have too many nodes.
        let expected = oracle.relative(d, delta, alpha, beta);
        assert_eq!(count(&spec).unwrap() as i128, expected, "d={d} g={g} α={alpha:?} β={beta:?}");
    }
}

#[test]
fn toric_surface_counts() {
    let diamond = poly(&[(0, 1), (1, 0), (2, 1), (1, 2)]);
    let s = DiagramSpec::trivial(diamond.clone(), up(), 0).unwrap();
    assert_eq!(enumerate_diagrams(&s).len(), 1);
    assert_eq!(count(&s).unwrap(), 4);
    assert_eq!(count(&DiagramSpec::trivial(diamond, up(), 1).unwrap()).unwrap(), 1);
    let octic = poly(&[(0, 0), (1, 1), (3, -1), (2, -2)]);
    assert_eq!(count(&DiagramSpec::trivial(octic.clone(), up(), 1).unwrap()).unwrap(), 12);
    assert_eq!(count(&DiagramSpec::trivial(octic, up(), 0).unwrap()).unwrap(), 16);
}

#[test]
fn maximal_genus_has_one_diagram() {
    for d in 1..=5 {
        let pa = ((d - 1) * (d - 2) / 2) as u32;
        let s = plane(d, pa);
        assert_eq!(enumerate_diagrams(&s).len(), 1, "degree {d}");
        assert_eq!(count(&s).unwrap(), 1);
    }
    let tz = LatticePolygon::trapezium(2, 3, 2).unwrap();
    let s = DiagramSpec::trivial(tz, up(), 8).unwrap();
    let ds = enumerate_diagrams(&s);
    assert_eq!(ds.len(), 1);
    assert_eq!(ds[0].genus().unwrap(), 8);
}

#[test]
fn generated_diagrams_satisfy_identities() {
    for d in 1..=4 {
        let pa = (d - 1) * (d - 2) / 2;
        for g in 0..=pa.min(3) {
            let s = plane(d, g as u32);
            for diag in enumerate_diagrams(&s) {
                assert!(validate(&diag, &s).is_empty(), "{diag:?}");
                assert!(lemma_1_5_check(&diag, d, g));
                assert!(weighted_card_check(&diag, &s));
            }
        }
    }
    let octic = poly(&[(0, 0), (1, 1), (3, -1), (2, -2)]);
    for g in 0..=2 {
        let s = DiagramSpec::trivial(octic.clone(), up(), g).unwrap();
        for diag in enumerate_diagrams(&s) {
            assert!(validate(&diag, &s).is_empty());
            assert!(weighted_card_check(&diag, &s));
        }
    }
}

#[test]
fn breakdown_sums_to_total() {
    let s = plane(4, 1);
    let b = count_explain(&s).unwrap();
    assert_eq!(b.rows.iter().map(|r| r.markings * r.multiplicity).sum::<u128>(), b.total);
}
