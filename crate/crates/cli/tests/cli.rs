mod support;

use std::fs;
use std::path::{Path, PathBuf};

use hypcurve_cli::doc::{ClassifyReport, ContractReport, CurveDocument, ProblemDocument, RecipeDocument, TranslateReport};
use hypcurve_cli::io::{load_json, save_json, to_json};
use hypcurve_core::curves::{CurvatureInterval, SampledCurve};
use hypcurve_core::models::hyperboloid_distance;
use tempfile::TempDir;

use support::*;

fn run_ok(args: &[&str]) {
    let (code, err) = hypcurve(args, &[]);
    assert_eq!(code, 0, "{args:?}: {err}");
}

fn sampled(path: &Path) -> SampledCurve<f64> {
    load_json::<CurveDocument>(path).unwrap().to_curve().unwrap().integrate().unwrap()
}

/// Points of every `<polyline points="...">` in an SVG document.
fn polylines(svg: &str) -> Vec<Vec<(f64, f64)>> {
    svg.split("<polyline").skip(1).map(|chunk| {
        let start = chunk.find("points=\"").unwrap() + 8;
        let body = &chunk[start..start + chunk[start..].find('"').unwrap()];
        body.split_whitespace()
            .map(|pair| {
                let (x, y) = pair.split_once(',').unwrap();
                (x.parse().unwrap(), y.parse().unwrap())
            })
            .collect()
    })
    .collect()
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let classify = |name: &str, env: &[(&str, &str)]| hypcurve(&["classify", "--in", p(&fixture(name)), "--out", p(&out)], env).0;
    assert_eq!(classify("disjoint.json", &[]), 0);
    assert_eq!(classify("disjoint_low.json", &[]), 3);
    assert_eq!(load_json::<ClassifyReport>(&out).unwrap().verdict, "empty");
    assert_eq!(classify("contained_outside.json", &[]), 3);
    assert_eq!(classify("disjoint_base.json", &[]), 4);
    assert_eq!(load_json::<ClassifyReport>(&out).unwrap().verdict, "unknown");
    assert_eq!(classify("non_unit.json", &[]), 2);
    assert_eq!(classify("non_unit.json", &[("HYPCURVE_TOL", "1e-3")]), 0);
    assert_eq!(classify("disjoint.json", &[("HYPCURVE_TOL", "abc")]), 2);
    assert_eq!(classify("missing.json", &[]), 2);
    assert_eq!(classify("circle.json", &[]), 2);
    assert_eq!(hypcurve(&["classify", "--in", p(&fixture("disjoint.json")), "--out", p(&out), "--turning", "0.3"], &[]).0, 2);
    assert_eq!(hypcurve(&["reduce", "--in", p(&fixture("minus_one_one.json")), "--out", p(&out)], &[]).0, 2);
    assert_eq!(hypcurve(&["render", "--bogus"], &[]).0, 2);
    assert_eq!(hypcurve(&["render", "--in", p(&fixture("circle.json")), "--out", p(&out), "--model", "hyperboloid"], &[]).0, 2);
}

#[test]
fn overrides_change_the_problem() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let input = fixture("disjoint_base.json");
    let args = ["classify", "--in", p(&input), "--out", p(&out)];
    let mut with_turning = args.to_vec();
    with_turning.extend(["--turning", "7.853981633974483"]);
    run_ok(&with_turning);
    let report: ClassifyReport = load_json(&out).unwrap();
    assert_eq!((report.index, report.verdict.as_str()), (1, "nonempty"));
    let mut wider = with_turning.clone();
    wider.extend(["--kappa1", "-2", "--kappa2", "2"]);
    run_ok(&wider);
    assert_eq!(load_json::<ClassifyReport>(&out).unwrap().class, "containing");
}

#[test]
fn documents_round_trip_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    run_ok(&["classify", "--in", p(&fixture("disjoint.json")), "--out", p(&dir.path().join("c.json"))]);
    run_ok(&["reduce", "--in", p(&fixture("overlapping.json")), "--out", p(&dir.path().join("r.json"))]);
    let check = |path: PathBuf, bytes: String| assert_eq!(fs::read_to_string(&path).unwrap(), bytes, "{path:?}");
    for name in ["circle.json", "horocycle.json", "hypercircle.json"] {
        check(fixture(name), to_json(&load_json::<CurveDocument>(&fixture(name)).unwrap()).unwrap());
    }
    let w = dir.path().join("c.witness.json");
    check(w.clone(), to_json(&load_json::<CurveDocument>(&w).unwrap()).unwrap());
    let c = dir.path().join("c.json");
    check(c.clone(), to_json(&load_json::<ClassifyReport>(&c).unwrap()).unwrap());
    let r = dir.path().join("r.json");
    check(r.clone(), to_json(&load_json::<RecipeDocument>(&r).unwrap()).unwrap());
    let q = dir.path().join("r.problem.json");
    check(q.clone(), to_json(&load_json::<ProblemDocument>(&q).unwrap()).unwrap());
}

#[test]
fn curve_documents_reject_bad_input() {
    let dir = TempDir::new().unwrap();
    let text = fs::read_to_string(fixture("circle.json")).unwrap();
    let bad = [
        text.replace("\"format_version\": 1", "\"format_version\": 9"),
        text.replacen("1.0\n  ]", "1.0,\n    1.5\n  ]", 1),
        text.replace("\"disk\"", "\"sphere\""),
        text.replace("1.2,", "1.5,"),
        text.replacen("{", "{\n  \"extra\": 1,", 1),
    ];
    for (i, body) in bad.iter().enumerate() {
        assert_ne!(body, &text, "case {i} did not change the document");
        let path = dir.path().join(format!("bad{i}.json"));
        fs::write(&path, body).unwrap();
        let (code, _) = hypcurve(&["render", "--in", p(&path), "--out", p(&dir.path().join("x.svg"))], &[]);
        assert_eq!(code, 2, "case {i}");
    }
}

#[test]
fn render_structure() {
    let dir = TempDir::new().unwrap();
    let svg = |name: &str, model: &str| {
        let out = dir.path().join(format!("{name}.{model}.svg"));
        run_ok(&["render", "--in", p(&fixture(name)), "--out", p(&out), "--model", model]);
        fs::read_to_string(out).unwrap()
    };

    let circle = svg("circle.json", "disk");
    assert!(circle.contains("width=\"1000\"") && circle.contains("height=\"1000\""));
    let lines = polylines(&circle);
    assert_eq!(lines.len(), 1);
    let pts = &lines[0];
    let (first, last) = (pts[0], pts[pts.len() - 1]);
    assert!((first.0 - last.0).abs() < 2e-3 && (first.1 - last.1).abs() < 2e-3);
    assert!(pts.iter().all(|(x, y)| (x - 500.0).hypot(y - 500.0) < 450.0));

    let horo = &polylines(&svg("horocycle.json", "disk"))[0];
    for (x, y) in [horo[0], horo[horo.len() - 1]] {
        assert!(450.0 - (x - 500.0).hypot(y - 500.0) < 0.05 * 450.0);
    }
    // Both ends approach the image of the point at infinity, `1` in the disk.
    for (x, y) in [horo[0], horo[horo.len() - 1]] {
        assert!((x - 950.0).hypot(y - 500.0) < 0.25 * 450.0, "{x} {y}");
    }

    run_ok(&["classify", "--in", p(&fixture("contained.json")), "--out", p(&dir.path().join("k.json"))]);
    let out = dir.path().join("k.svg");
    run_ok(&["render", "--in", p(&dir.path().join("k.witness.json")), "--out", p(&out), "--model", "mercator"]);
    let graph = &polylines(&fs::read_to_string(out).unwrap())[0];
    assert!(graph.windows(2).all(|w| w[1].0 > w[0].0));

    let csv_path = dir.path().join("circle.csv");
    run_ok(&["render", "--in", p(&fixture("circle.json")), "--out", p(&csv_path)]);
    let csv = fs::read_to_string(csv_path).unwrap();
    let mut rows = csv.lines();
    assert_eq!(rows.next(), Some("t,x0,x1,x2,kappa,sigma"));
    for row in rows {
        let v: Vec<f64> = row.split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(v.len(), 6);
        assert!((-v[1] * v[1] + v[2] * v[2] + v[3] * v[3] + 1.0).abs() < 1e-9);
        assert!((v[4] - 1f64.tanh().recip()).abs() < 1e-12);
    }
}

#[test]
fn reduce_lands_in_the_normal_form_ranges() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, &str, fn(f64) -> bool); 3] = [
        ("contained.json", "contained", |k| k > 0.0 && k <= 1.0),
        ("disjoint.json", "disjoint", |k| k >= 1.0 - 1e-12),
        ("overlapping.json", "overlapping", |k| (-1.0..1.0).contains(&k)),
    ];
    for (name, class, in_range) in cases {
        let out = dir.path().join(format!("r.{name}"));
        run_ok(&["reduce", "--in", p(&fixture(name)), "--out", p(&out)]);
        let recipe: RecipeDocument = load_json(&out).unwrap();
        assert_eq!(recipe.class, class);
        assert!(in_range(recipe.kappa0.0), "{name}: {}", recipe.kappa0.0);
        let reduced: ProblemDocument = load_json(&out.with_extension("problem.json")).unwrap();
        assert_eq!(reduced.bounds, recipe.target_bounds);
        assert_eq!((reduced.u, reduced.v), (recipe.ubar, recipe.vbar));
    }
}

#[test]
fn translate_regimes() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("circle.json", 0.5, 0.5f64.tanh().recip()),
        ("hypercircle.json", 0.2, 0.3f64.tanh()),
        ("horocycle.json", 0.3, 1.0),
    ];
    for (name, rho, expect) in cases {
        let out = dir.path().join(format!("t.{name}"));
        run_ok(&["translate", "--in", p(&fixture(name)), "--out", p(&out), "--rho", &rho.to_string()]);
        let report: TranslateReport = load_json(&out.with_extension("report.json")).unwrap();
        assert!(report.max_formula_residual < 1e-6 && report.max_distance_residual < 1e-8, "{name}");
        for n in &report.nodes {
            assert!((n.kappa_translated - expect).abs() < 1e-9, "{name}: {}", n.kappa_translated);
        }
        let back = dir.path().join(format!("b.{name}"));
        run_ok(&["translate", "--in", p(&out), "--out", p(&back), "--rho", &(-rho).to_string()]);
        let (a, b) = (sampled(&fixture(name)), sampled(&back));
        for (x, y) in [(a.point(0), b.point(0)), (a.point(a.len() - 1), b.point(b.len() - 1))] {
            assert!(hyperboloid_distance(&x, &y) < 1e-8);
        }
    }
    let (code, _) = hypcurve(&["translate", "--in", p(&fixture("circle.json")), "--out", p(&dir.path().join("s.json")), "--rho", "1"], &[]);
    assert_eq!(code, 2);
}

/// Two distinct witnesses of the fixture's disjoint space with turning
/// `base + 2 pi`.
fn disjoint_witnesses(dir: &Path) -> (PathBuf, PathBuf) {
    run_ok(&["classify", "--in", p(&fixture("disjoint.json")), "--out", p(&dir.join("a.json"))]);
    run_ok(&["classify", "--in", p(&fixture("disjoint.json")), "--out", p(&dir.join("b.json")), "--kappa1", "1.7"]);
    // Curvature data is stored relative to the bounds, so widen them by
    // re-encoding rather than by editing the text.
    let b = dir.join("b.witness.json");
    let doc: CurveDocument = load_json(&b).unwrap();
    let wide = doc.to_curve().unwrap().with_bounds(CurvatureInterval::new(1.5, f64::INFINITY).unwrap()).unwrap();
    save_json(&b, &CurveDocument::from_curve(&wide, doc.model_id().unwrap())).unwrap();
    (dir.join("a.witness.json"), b)
}

#[test]
fn contract_disjoint_writes_frames_and_report() {
    let dir = TempDir::new().unwrap();
    let (a, b) = disjoint_witnesses(dir.path());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let out = dir.path().join("family");
    run_ok(&["contract", "disjoint", "--in", p(&a), "--in", p(&b), "--frames", "20", "--out", p(&out)]);
    let report: ContractReport = load_json(&out.join("report.json")).unwrap();
    assert_eq!(report.files.len(), 20);
    assert_eq!(report.band_violations, 0);
    assert!(report.min_kappa > 1.5);
    assert!(report.max_turning_drift < 1e-6 && report.max_endpoint_drift < 1e-6, "{report:?}");
    for f in &report.files {
        assert!(out.join(f).exists());
        assert!(out.join(Path::new(f).with_extension("svg")).exists());
    }

    let c = dir.path().join("c.json");
    run_ok(&["classify", "--in", p(&fixture("disjoint.json")), "--out", p(&c), "--turning", "14.137166941154069"]);
    let (code, _) = hypcurve(&["contract", "disjoint", "--in", p(&a), "--in", p(&c.with_extension("witness.json")), "--frames", "3", "--out", p(&out)], &[]);
    assert_eq!(code, 2, "turnings differ");
    let (code, _) = hypcurve(&["contract", "contained", "--in", p(&a), "--frames", "3", "--out", p(&out)], &[]);
    assert_eq!(code, 2, "class mismatch");
}

#[test]
fn contract_contained_ends_at_the_input() {
    let dir = TempDir::new().unwrap();
    run_ok(&["classify", "--in", p(&fixture("contained.json")), "--out", p(&dir.path().join("k.json"))]);
    let w = dir.path().join("k.witness.json");
    let out = dir.path().join("family");
    run_ok(&["contract", "contained", "--in", p(&w), "--frames", "2", "--out", p(&out)]);
    let report: ContractReport = load_json(&out.join("report.json")).unwrap();
    assert_eq!(report.band_violations, 0);
    assert_eq!(report.s, vec![0.0, 1.0]);
    let lm = report.lambda_mu.unwrap();
    assert_eq!(lm[0][0], lm[0][1]);
    let input = sampled(&w);
    let last = sampled(&out.join(&report.files[1]));
    for i in [0, input.len() / 2, input.len() - 1] {
        let x = input.point(i);
        let nearest = (0..last.len()).map(|j| hyperboloid_distance(&x, &last.point(j))).fold(f64::INFINITY, f64::min);
        assert!(nearest < 1e-6, "{i}: {nearest}");
    }
    let first = sampled(&out.join(&report.files[0]));
    assert!(hyperboloid_distance(&first.point(first.len() - 1), &input.point(input.len() - 1)) < 1e-6);
}

#[test]
fn commands_are_deterministic() {
    let run_all = |dir: &Path| {
        run_ok(&["classify", "--in", p(&fixture("containing.json")), "--out", p(&dir.join("c.json"))]);
        run_ok(&["reduce", "--in", p(&fixture("disjoint.json")), "--out", p(&dir.join("r.json"))]);
        run_ok(&["render", "--in", p(&fixture("horocycle.json")), "--out", p(&dir.join("h.svg")), "--alpha"]);
    };
    let (d1, d2) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    run_all(d1.path());
    run_all(d2.path());
    for name in ["c.json", "c.witness.json", "r.json", "r.problem.json", "h.svg"] {
        assert_eq!(fs::read(d1.path().join(name)).unwrap(), fs::read(d2.path().join(name)).unwrap(), "{name}");
    }
}

/// Commands whose outputs are frozen under `tests/golden`, with the output
/// name used for each.
#[test]
fn golden_outputs() {
    let dir = TempDir::new().unwrap();
    let produced = run_golden(dir.path()).unwrap();
    let bless = std::env::var_os(BLESS_ENV).is_some();
    for file in produced {
        let (got, want) = (dir.path().join(&file), golden_dir().join(&file));
        if bless {
            fs::create_dir_all(golden_dir()).unwrap();
            fs::copy(&got, &want).unwrap();
        } else {
            assert_eq!(fs::read(&got).unwrap(), fs::read(&want).unwrap_or_default(), "{file:?} differs from golden; rerun with {BLESS_ENV}=1 after checking the change");
        }
    }
}
