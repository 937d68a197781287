//! The invariant suite behind `tropico check`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tropico::diagram::{count, enumerate_diagrams, lemma_1_5_check, validate, weighted_card_check, DiagramSpec, NSeq};
use tropico::lattice::{direction_data, transverse_directions};
use tropico::rational::int;
use tropico::realize::{realize_all, verify_realization};
use tropico::tropical::{
    check_duality, corner_locus, geometric_genus, stable_intersection_generic, TropicalPolynomial,
};
use tropico::{Error, LatticePolygon, LatticeVector};

use crate::CliError;

type Outcome = Result<String, String>;

fn v(x: i64, y: i64) -> LatticeVector {
    LatticeVector::new(x, y)
}

fn polygon(vs: &[(i64, i64)]) -> LatticePolygon {
    LatticePolygon::new(vs.iter().map(|&(x, y)| v(x, y)).collect()).expect("fixture polygons are valid")
}

fn plane(d: i64, g: u32, alpha: &[u32], beta: &[u32]) -> DiagramSpec {
    DiagramSpec::plane(d, g, NSeq::new(alpha.to_vec()), NSeq::new(beta.to_vec())).expect("fixture specs are valid")
}

fn trivial(p: LatticePolygon, g: u32) -> DiagramSpec {
    DiagramSpec::trivial(p, v(0, 1), g).expect("fixture specs are valid")
}

/// Problems with known answers.
fn known_counts() -> Vec<(&'static str, DiagramSpec, u128)> {
    let diamond = polygon(&[(0, 1), (1, 0), (2, 1), (1, 2)]);
    let octic = polygon(&[(0, 0), (1, 1), (3, -1), (2, -2)]);
    vec![
        ("cubics, genus 0", plane(3, 0, &[], &[3]), 12),
        ("cubics, genus 0, two free tangencies", plane(3, 0, &[], &[1, 1]), 36),
        ("cubics, genus 0, one fixed tangency", plane(3, 0, &[0, 1], &[1]), 10),
        ("cubics, genus 1", plane(3, 1, &[], &[3]), 1),
        ("diamond, genus 0", trivial(diamond, 0), 4),
        ("quadrilateral, genus 1", trivial(octic.clone(), 1), 12),
        ("quadrilateral, genus 0", trivial(octic, 0), 16),
    ]
}

fn counts() -> Outcome {
    let mut cases = known_counts();
    cases.push(("quartics, genus 0", plane(4, 0, &[], &[4]), 620));
    for (name, spec, expected) in &cases {
        let got = count(spec).map_err(|e| format!("{name}: {e}"))?;
        if got != *expected {
            return Err(format!("{name}: {got}, expected {expected}"));
        }
    }
    Ok(format!("{} known counts", cases.len()))
}

fn diagram_identities() -> Outcome {
    let mut n = 0;
    for d in 1..=4 {
        for g in 0..=((d - 1) * (d - 2) / 2) {
            let spec = plane(d, g as u32, &[], &[d as u32]);
            for diag in enumerate_diagrams(&spec) {
                let bad = validate(&diag, &spec);
                if !bad.is_empty() || !lemma_1_5_check(&diag, d, g) || !weighted_card_check(&diag, &spec) {
                    return Err(format!("degree {d} genus {g}: {bad:?}"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} plane diagrams satisfy the structural identities"))
}

fn lattice(rng: &mut ChaCha8Rng) -> Outcome {
    let mut n = 0;
    while n < 100 {
        let pts: Vec<LatticeVector> =
            (0..rng.random_range(3..10)).map(|_| v(rng.random_range(-6..=6), rng.random_range(-6..=6))).collect();
        let Ok(p) = LatticePolygon::hull(&pts) else { continue };
        if !p.pick_identity() {
            return Err(format!("Pick fails on {:?}", p.vertices()));
        }
        for d in transverse_directions(&p, 2) {
            let data = direction_data(&p, d).map_err(|e| e.to_string())?;
            if 2 * data.d_height + data.d_plus + data.d_minus != p.boundary_points() {
                return Err(format!("boundary count fails on {:?} along {d:?}", p.vertices()));
            }
        }
        n += 1;
    }
    Ok("Pick and boundary counts on 100 random polygons".into())
}

fn random_polynomial(rng: &mut ChaCha8Rng, d: i64) -> TropicalPolynomial {
    let terms: Vec<_> =
        (0..=d).flat_map(|j| (0..=d - j).map(move |i| v(i, j))).map(|e| (e, int(rng.random_range(-30..=30)))).collect();
    TropicalPolynomial::new(terms).expect("full triangle support")
}

fn tropical(rng: &mut ChaCha8Rng) -> Outcome {
    let per_degree = 20;
    for d in 1..=4 {
        for _ in 0..per_degree {
            let (p, q) = (random_polynomial(rng, d), random_polynomial(rng, d));
            let newton = p.newton_polygon().map_err(|e| e.to_string())?;
            let (c, sub) = corner_locus(&p).map_err(|e| e.to_string())?;
            let round_trip = c.newton_polygon_of().is_ok_and(|n| n.eq_up_to_translation(&newton));
            if !c.check_balancing() || !check_duality(&c, &sub, &newton) || !round_trip {
                return Err(format!("corner locus of {p:?}"));
            }
            match geometric_genus(&c) {
                Ok(g) if (0..=newton.interior_points()).contains(&g) => {}
                Ok(g) => return Err(format!("genus {g} out of range")),
                Err(Error::UnsupportedShape(_) | Error::Reducible | Error::NonReduced) => {}
                Err(e) => return Err(format!("genus: {e}")),
            }
            let (c2, _) = corner_locus(&q).map_err(|e| e.to_string())?;
            let (_, points) = stable_intersection_generic(&c, &c2).map_err(|e| e.to_string())?;
            let total: u64 = points.iter().map(|x| x.1).sum();
            if total as i64 != d * d {
                return Err(format!("two curves of degree {d} meet in {total} points"));
            }
        }
    }
    Ok(format!("{per_degree} random curves per degree 1..4: balanced, dual, genus bounded, Bezout"))
}

fn realizations(seed: u64) -> Outcome {
    let mut classes = 0;
    for (name, spec, expected) in known_counts() {
        let (cfg, all) = realize_all(&spec, seed).map_err(|e| format!("{name}: {e}"))?;
        let mut total = 0u128;
        for r in &all {
            let report = verify_realization(&r.realization, &r.diagram, &r.marking, &cfg, &spec);
            if !report.passed() {
                return Err(format!("{name}: {}", report.violations.join("; ")));
            }
            total += r.realization.curve.tropical_multiplicity().map_err(|e| e.to_string())?;
        }
        if total != spec.alpha_factor() * expected {
            return Err(format!("{name}: multiplicities add up to {total}"));
        }
        classes += all.len();
    }
    Ok(format!("{classes} marked diagrams realized and verified"))
}

/// Runs every check; fails with the full report when any of them fails.
pub fn run(seed: u64) -> Result<String, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let results: Vec<(&str, Outcome)> = vec![
        ("counts", counts()),
        ("diagram identities", diagram_identities()),
        ("lattice", lattice(&mut rng)),
        ("tropical", tropical(&mut rng)),
        ("realization", realizations(seed)),
    ];
    let failed = results.iter().filter(|r| r.1.is_err()).count();
    let checks: Vec<Value> = results
        .into_iter()
        .map(|(name, r)| match r {
            Ok(detail) => json!({ "name": name, "passed": true, "detail": detail }),
            Err(detail) => json!({ "name": name, "passed": false, "detail": detail }),
        })
        .collect();
    let report = json!({ "passed": failed == 0, "checks": checks });
    if failed > 0 {
        return Err(CliError::CheckFailed { failed, report });
    }
    crate::commands::to_json(&report)
}
