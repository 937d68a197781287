use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use tropico::diagram::{
    count_explain, enumerate_diagrams, enumerate_markings, marking_count, multiplicity, DiagramSpec, FloorDiagram,
    Marking, NSeq,
};
use tropico::lattice::{direction_data, transverse_directions};
use tropico::realize::{realize_stretched, verify_realization};
use tropico::tropical::{corner_locus, geometric_genus, TropicalPolynomial};
use tropico::{Error, LatticePolygon, LatticeVector};

use crate::svg::{self, RenderStyle, Scene};
use crate::{CliError, ProblemArgs};

/// Directions `(dx, dy)` with `|dx|, |dy| <= PROBE` tried by `polygon report`.
const PROBE: i64 = 2;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Pretty JSON with sorted keys: going through `Value` orders every map.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(serde_json::to_string_pretty(&v).expect("a JSON value always serializes"))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn number(n: u128) -> Result<Value, CliError> {
    serde_json::to_value(n).map_err(|_| Error::Internal(format!("{n} does not fit in JSON")).into())
}

fn seq_json(s: &NSeq) -> Value {
    json!(s.entries())
}

fn spec_json(spec: &DiagramSpec) -> Value {
    json!({
        "polygon": spec.polygon(),
        "direction": spec.direction(),
        "genus": spec.genus(),
        "alpha_minus": seq_json(spec.alpha_minus()),
        "alpha_plus": seq_json(spec.alpha_plus()),
        "beta_minus": seq_json(spec.beta_minus()),
        "beta_plus": seq_json(spec.beta_plus()),
        "points": spec.point_count(),
    })
}

impl ProblemArgs {
    /// Sides without any condition get transverse tangency `β = [d_±]`.
    pub fn spec(&self) -> Result<DiagramSpec, CliError> {
        let polygon = match (&self.polygon, self.degree) {
            (Some(path), _) => read_json::<LatticePolygon>(path)?,
            (None, Some(d)) => LatticePolygon::triangle(d)?,
            (None, None) => return Err(CliError::Parse("either --polygon or --degree is required".into())),
        };
        let data = direction_data(&polygon, self.dir)?;
        let side = |alpha: &Option<NSeq>, beta: &Option<NSeq>, length: i64| match (alpha, beta) {
            (None, None) => (NSeq::empty(), NSeq::new(vec![length as u32])),
            _ => (alpha.clone().unwrap_or_default(), beta.clone().unwrap_or_default()),
        };
        let (alpha_minus, beta_minus) = side(&self.alpha_minus, &self.beta_minus, data.d_minus);
        let (alpha_plus, beta_plus) = side(&self.alpha_plus, &self.beta_plus, data.d_plus);
        Ok(DiagramSpec::new(polygon, self.dir, self.genus, alpha_plus, alpha_minus, beta_plus, beta_minus)?)
    }
}

pub fn polygon_report(file: &Path) -> Result<String, CliError> {
    let p: LatticePolygon = read_json(file)?;
    let pair = |v: &LatticeVector| [v.x, v.y];
    let singularities: Vec<[i64; 2]> = p.singularities().into_iter().map(|(n, k)| [n, k]).collect();
    let directions: Vec<[i64; 2]> = transverse_directions(&p, PROBE).iter().map(pair).collect();
    to_json(&json!({
        "vertices": p.vertices().iter().map(pair).collect::<Vec<_>>(),
        "double_area": p.double_area(),
        "interior": p.interior_points(),
        "boundary": p.boundary_points(),
        "p_a": p.p_a(),
        "singularities": singularities,
        "transverse_directions": directions,
    }))
}

pub fn count(problem: &ProblemArgs, explain: bool) -> Result<String, CliError> {
    let spec = problem.spec()?;
    let breakdown = count_explain(&spec)?;
    if !explain {
        return Ok(breakdown.total.to_string());
    }
    for (i, row) in breakdown.rows.iter().enumerate() {
        eprintln!(
            "diagram {i:>3}: {:>6} markings x multiplicity {:>4} = {}",
            row.markings, row.multiplicity, row.contribution
        );
    }
    eprintln!("total: {}", breakdown.total);
    to_json(&breakdown)
}

pub fn diagrams(problem: &ProblemArgs, with_markings: bool) -> Result<String, CliError> {
    let spec = problem.spec()?;
    let mut out = Vec::new();
    for d in enumerate_diagrams(&spec) {
        let mut entry = json!({
            "diagram": d,
            "markings": number(marking_count(&d, &spec)?)?,
            "multiplicity": number(multiplicity(&d, &spec)?)?,
        });
        if with_markings {
            entry["marked"] =
                serde_json::to_value(enumerate_markings(&d, &spec)?).map_err(|e| Error::Internal(e.to_string()))?;
        }
        out.push(entry);
    }
    to_json(&json!({ "spec": spec_json(&spec), "diagrams": out }))
}

pub fn realize(
    diagram: &Path,
    marking: &Path,
    seed: u64,
    dir: LatticeVector,
    (alpha_minus, alpha_plus): (NSeq, NSeq),
    svg_path: Option<&Path>,
    style: &RenderStyle,
) -> Result<String, CliError> {
    let d: FloorDiagram = read_json(diagram)?;
    let m: Marking = read_json(marking)?;
    let spec = d.spec(dir, alpha_minus, alpha_plus)?;
    let (cfg, r) = realize_stretched(&d, &m, &spec, seed)?;
    let report = verify_realization(&r, &d, &m, &cfg, &spec);
    if !report.passed() {
        return Err(Error::Internal(report.violations.join("; ")).into());
    }
    let image = r.curve.image()?;
    if let Some(path) = svg_path {
        let mut scene = Scene::new(&image);
        scene.points = cfg.points.iter().enumerate().map(|(i, p)| (p.clone(), (i + 1).to_string())).collect();
        scene.lines = svg::alpha_lines(&cfg, &spec)?;
        write_file(path, &svg::render(&scene, style))?;
    }
    to_json(&json!({
        "spec": spec_json(&spec),
        "config": cfg,
        "realization": r,
        "image": image,
        "multiplicity": number(r.curve.tropical_multiplicity()?)?,
        "verification": report,
    }))
}

pub fn tropicalize(
    poly: &Path,
    svg_path: Option<&Path>,
    subdivision: bool,
    style: &RenderStyle,
) -> Result<String, CliError> {
    let p: TropicalPolynomial = read_json(poly)?;
    let (curve, sub) = corner_locus(&p)?;
    let newton = p.newton_polygon()?;
    if let Some(path) = svg_path {
        let mut scene = Scene::new(&curve);
        if subdivision {
            scene.subdivision = Some((&sub, &newton));
        }
        write_file(path, &svg::render(&scene, style))?;
    }
    let genus = match geometric_genus(&curve) {
        Ok(g) => json!(g),
        Err(e) => json!({ "error": e.name(), "message": e.to_string() }),
    };
    let mut out = json!({ "curve": curve, "genus": genus, "p_a": newton.interior_points() });
    if subdivision {
        out["subdivision"] = serde_json::to_value(&sub).map_err(|e| Error::Internal(e.to_string()))?;
    }
    to_json(&out)
}
