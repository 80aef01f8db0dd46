//! The five subcommands.

use std::path::{Path, PathBuf};

use hypcurve_core::classify::{
    normalizing_isometry, region_r, valid_turnings, voidness_report, Voidness, VoidnessOptions, Witness,
};
use hypcurve_core::curves::{CurvatureInterval, IntrinsicCurve, SampledCurve};
use hypcurve_core::homotopy::{
    contract_contained, contract_disjoint, reparam_by_argument, HomotopyFamily, MercatorProfile,
};
use hypcurve_core::interp::{linspace, Pchip};
use hypcurve_core::models::{hyperboloid_distance, ModelId, ModelPoint, ModelVector, Vec3};
use hypcurve_core::transform::{
    classify_interval, normal_translate_intrinsic, reduce, translate_bounds, translate_curvature,
    IntervalClass,
};

use crate::doc::{
    bounds_doc, parse_model, ClassifyReport, ContractReport, CurveDocument, Problem, ProblemDocument, RecipeDocument,
    TangentDocument, TranslateReport, TranslationNode, FORMAT_VERSION,
};
use crate::error::{CliError, CliResult};
use crate::io::{load_json, save_json, write_atomic};
use crate::render;

/// Nodes of the argument grid used by the disjoint contraction.
const ARGUMENT_NODES: usize = 1025;
/// Nodes of the slope grid used by the contained contraction.
const PROFILE_NODES: usize = 1025;

/// Sibling of `out` named `<stem>.<suffix>`.
fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into());
    out.with_file_name(format!("{stem}.{suffix}"))
}

fn file_name(p: &Path) -> String {
    p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn load_curve(path: &Path) -> CliResult<(CurveDocument, IntrinsicCurve<f64>)> {
    let doc: CurveDocument = load_json(path)?;
    let curve = doc.to_curve()?;
    Ok((doc, curve))
}

fn display_model(flag: Option<&str>, fallback: ModelId) -> CliResult<ModelId> {
    flag.map(parse_model).transpose().map(|m| m.unwrap_or(fallback))
}

pub fn render(input: &Path, out: &Path, model: Option<&str>, alpha: bool) -> CliResult<()> {
    let (doc, curve) = load_curve(input)?;
    let model = display_model(model, doc.model_id()?)?;
    let sc = curve.integrate()?;
    let is_csv = out.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let body = if is_csv { render::csv(&sc) } else { render::svg(&sc, model, alpha)? };
    write_atomic(out, body.as_bytes())
}

pub struct ProblemOverrides {
    pub kappa1: Option<f64>,
    pub kappa2: Option<f64>,
    pub turning: Option<f64>,
    pub budget: Option<usize>,
}

fn load_problem(input: &Path, tol: f64, o: &ProblemOverrides) -> CliResult<Problem> {
    let doc: ProblemDocument = load_json(input)?;
    let mut p = doc.parse(tol)?;
    if o.kappa1.is_some() || o.kappa2.is_some() {
        p.bounds = CurvatureInterval::new(o.kappa1.unwrap_or(p.bounds.lo), o.kappa2.unwrap_or(p.bounds.hi))?;
    }
    p.turning = o.turning.or(p.turning);
    p.budget = o.budget.or(p.budget);
    Ok(p)
}

pub fn classify(input: &Path, out: &Path, model: Option<&str>, tol: f64, o: &ProblemOverrides) -> CliResult<()> {
    let p = load_problem(input, tol, o)?;
    let class = classify_interval(&p.bounds);
    let turnings = valid_turnings(&p.u, &p.v)?;
    let tau = p.turning.unwrap_or(turnings.base_turning);
    let index = turnings.index(tau)?;
    let inside_region = match class {
        IntervalClass::Contained | IntervalClass::MinusOneOne => {
            Some(region_r(p.bounds.lo, p.bounds.hi, &p.u)?.contains(&p.v.base)?)
        }
        _ => None,
    };
    let mut opts = VoidnessOptions::default();
    if let Some(b) = p.budget {
        opts.steer.budget = b;
    }
    let verdict = voidness_report(&p.bounds, &p.u, &p.v, tau, &opts)?;
    let mut report = ClassifyReport {
        format_version: FORMAT_VERSION,
        class: class.name().to_string(),
        bounds: bounds_doc(&p.bounds),
        base_turning: turnings.base_turning,
        turning: tau,
        index,
        inside_region,
        verdict: String::new(),
        reason: None,
        lower_bound: None,
        upper_bound: None,
        witness: None,
        witness_turning: None,
    };
    let outcome = match verdict {
        Voidness::NonEmpty(w) => {
            let curve = match &w {
                Witness::Intrinsic(c) => c.clone(),
                Witness::Sampled(sc) => IntrinsicCurve::from_sampled(sc, p.bounds)?,
            };
            let path = sibling(out, "witness.json");
            let model = display_model(model, p.u.model())?;
            save_json(&path, &CurveDocument::from_curve(&curve, model))?;
            report.verdict = "nonempty".into();
            report.witness = Some(file_name(&path));
            report.witness_turning = Some(hypcurve_core::curves::total_turning(&w.sampled()?)?);
            Ok(())
        }
        Voidness::Empty(reason) => {
            report.verdict = "empty".into();
            report.reason = Some(reason.to_string());
            Err(CliError::Empty(reason.to_string()))
        }
        Voidness::UnknownWithinBudget { lower, upper } => {
            report.verdict = "unknown".into();
            report.lower_bound = lower;
            report.upper_bound = upper;
            Err(CliError::Unknown("no witness or certificate found".into()))
        }
    };
    save_json(out, &report)?;
    outcome
}

pub fn reduce_problem(input: &Path, out: &Path, model: Option<&str>, tol: f64, o: &ProblemOverrides) -> CliResult<()> {
    let p = load_problem(input, tol, o)?;
    let model = display_model(model, p.u.model())?;
    let ubar = ModelVector::from_hyperboloid(&Vec3::e0(), &Vec3::e1(), model);
    let recipe = reduce(&p.bounds, &p.u, &p.v, &ubar)?;
    save_json(out, &RecipeDocument::from_recipe(&recipe))?;
    let reduced = ProblemDocument {
        format_version: FORMAT_VERSION,
        bounds: bounds_doc(&recipe.target_bounds),
        u: TangentDocument::from_vector(&recipe.ubar),
        v: TangentDocument::from_vector(&recipe.vbar),
        turning: None,
        budget: p.budget,
    };
    save_json(&sibling(out, "problem.json"), &reduced)
}

pub fn translate(input: &Path, out: &Path, rho: f64) -> CliResult<()> {
    if !rho.is_finite() {
        return Err(CliError::Validation("rho must be finite".into()));
    }
    let (doc, curve) = load_curve(input)?;
    let moved = normal_translate_intrinsic(&curve, rho)?;
    let grid = curve.grid();
    let before = curve.frames_at(grid)?;
    let after = moved.frames_at(grid)?;
    let (kappa, kappa_moved) = (curve.kappa(), moved.kappa());
    let mut nodes = Vec::with_capacity(grid.len());
    let (mut max_formula, mut max_distance) = (0.0f64, 0.0f64);
    for i in 0..grid.len() {
        let formula_residual = kappa_moved[i] - translate_curvature(kappa[i], rho);
        let distance_residual = hyperboloid_distance(&before[i].column(0), &after[i].column(0)) - rho.abs();
        max_formula = max_formula.max(formula_residual.abs());
        max_distance = max_distance.max(distance_residual.abs());
        nodes.push(TranslationNode {
            t: grid[i],
            kappa: kappa[i],
            kappa_translated: kappa_moved[i],
            formula_residual,
            distance_residual,
        });
    }
    let model = doc.model_id()?;
    save_json(out, &CurveDocument::from_curve(&moved, model))?;
    let report = TranslateReport {
        format_version: FORMAT_VERSION,
        rho,
        bounds: bounds_doc(curve.bounds()),
        translated_bounds: bounds_doc(&translate_bounds(curve.bounds(), rho)?),
        max_formula_residual: max_formula,
        max_distance_residual: max_distance,
        nodes,
    };
    save_json(&sibling(out, "report.json"), &report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractCase {
    Disjoint,
    Contained,
}

pub fn contract(case: ContractCase, inputs: &[PathBuf], frames: usize, out: &Path, model: Option<&str>) -> CliResult<()> {
    if frames < 2 {
        return Err(CliError::Validation("at least two frames are needed".into()));
    }
    let s_grid = linspace(0.0, 1.0, frames);
    let loaded = inputs.iter().map(|p| load_curve(p)).collect::<CliResult<Vec<_>>>()?;
    let Some((first_doc, first)) = loaded.first() else {
        return Err(CliError::Validation("no input curves".into()));
    };
    let bounds = *first.bounds();
    if loaded.iter().any(|(_, c)| c.bounds() != &bounds) {
        return Err(CliError::Validation("input curves declare different bounds".into()));
    }
    let class = classify_interval(&bounds);
    let (family, lambda_mu) = match case {
        ContractCase::Disjoint => {
            if class != IntervalClass::Disjoint || bounds.lo < 1.0 {
                return Err(CliError::Validation(format!("bounds of class {} are not disjoint", class.name())));
            }
            if loaded.len() != 2 {
                return Err(CliError::Validation("the disjoint case takes two curves".into()));
            }
            let a0 = reparam_by_argument(&loaded[0].1.integrate()?, ARGUMENT_NODES)?;
            let a1 = reparam_by_argument(&loaded[1].1.integrate()?, ARGUMENT_NODES)?;
            (contract_disjoint(&a0, &a1, &bounds, &s_grid)?, None)
        }
        ContractCase::Contained => {
            if !matches!(class, IntervalClass::Contained | IntervalClass::MinusOneOne) {
                return Err(CliError::Validation(format!("bounds of class {} are not contained", class.name())));
            }
            if loaded.len() != 1 {
                return Err(CliError::Validation("the contained case takes one curve".into()));
            }
            let family = contained_family(&first.integrate()?, &bounds, &s_grid)?;
            let lm = family.lambda_mu.iter().map(|&(l, m)| [l, m]).collect();
            (family, Some(lm))
        }
    };
    let model = display_model(model, first_doc.model_id()?)?;
    let svg_model = if model == ModelId::Hyperboloid { ModelId::Disk } else { model };
    let width = (frames - 1).to_string().len().max(3);
    let mut files = Vec::with_capacity(frames);
    let mut violations = 0;
    for (i, sc) in family.curves.iter().enumerate() {
        violations += sc.curvatures().iter().filter(|&&k| !bounds.contains(k)).count();
        let stem = format!("frame_{i:0width$}");
        let doc = CurveDocument::from_curve(&IntrinsicCurve::from_sampled(sc, bounds)?, model);
        save_json(&out.join(format!("{stem}.json")), &doc)?;
        write_atomic(&out.join(format!("{stem}.svg")), render::svg(sc, svg_model, false)?.as_bytes())?;
        files.push(format!("{stem}.json"));
    }
    let r = family.report()?;
    let report = ContractReport {
        format_version: FORMAT_VERSION,
        case: match case {
            ContractCase::Disjoint => "disjoint".into(),
            ContractCase::Contained => "contained".into(),
        },
        bounds: bounds_doc(&bounds),
        s: family.s.clone(),
        files,
        band_violations: violations,
        min_kappa: r.min_kappa,
        max_kappa: r.max_kappa,
        turning: family.turning,
        max_turning_drift: r.max_turning_drift,
        max_endpoint_drift: r.max_endpoint_drift,
        lambda_mu,
    };
    save_json(&out.join("report.json"), &report)?;
    if violations > 0 {
        return Err(CliError::Validation(format!("{violations} nodes left the curvature bounds")));
    }
    Ok(())
}

/// Moves the curve to start at the Mercator reference vector, reads off its
/// slope profile on a uniform grid and deforms it to the canonical profile.
fn contained_family(
    sc: &SampledCurve<f64>,
    bounds: &CurvatureInterval<f64>,
    s_grid: &[f64],
) -> CliResult<HomotopyFamily<f64>> {
    let q = normalizing_isometry(&sc.unit_tangent(0, ModelId::Hyperboloid))?;
    let moved = sc.transformed(&q);
    let (mut xs, mut fs): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
    for i in 0..moved.len() {
        let v = moved.unit_tangent(i, ModelId::Mercator);
        let (ModelPoint::Mercator(m), Some(d)) = (v.base, v.chart_dir()) else {
            return Err(CliError::Validation("cannot express the curve in the strip".into()));
        };
        if !(d.re > 0.0) {
            return Err(CliError::Validation(format!("curve is not a graph in the strip at node {i}")));
        }
        if let Some(&last) = xs.last() {
            if m.re <= last {
                if i > 0 && moved.params()[i] == moved.params()[i - 1] {
                    continue;
                }
                return Err(CliError::Validation(format!("curve is not a graph in the strip at node {i}")));
            }
        }
        xs.push(m.re);
        fs.push(d.im / d.re);
    }
    if xs.len() < 2 {
        return Err(CliError::Validation("curve has no extent in the strip".into()));
    }
    let grid = linspace(xs[0], xs[xs.len() - 1], PROFILE_NODES);
    let slope = Pchip::new(xs, fs);
    let f: Vec<f64> = grid.iter().map(|&x| slope.eval(x)).collect();
    let profile = MercatorProfile::new(grid, f, (-bounds.hi, -bounds.lo))?;
    let (mut family, _) = contract_contained(&profile, s_grid)?;
    let back = q.inverse();
    for c in family.curves.iter_mut() {
        *c = c.transformed(&back);
    }
    family.bounds = *bounds;
    Ok(family)
}
