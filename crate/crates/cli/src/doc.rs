//! Versioned JSON documents for curves, problems, recipes and reports.

use std::fmt;

use num_complex::Complex;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use hypcurve_core::curves::{CurvatureInterval, IntrinsicCurve};
use hypcurve_core::models::{Isometry, Mat3, ModelId, ModelPoint, ModelVector, Vec3};
use hypcurve_core::transform::ReductionRecipe;

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

/// A possibly infinite real, written as the string `"inf"` or `"-inf"` when
/// infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtReal(pub f64);

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            x if x.is_finite() => s.serialize_f64(x),
            x if x == f64::INFINITY => s.serialize_str("inf"),
            x if x == f64::NEG_INFINITY => s.serialize_str("-inf"),
            _ => Err(serde::ser::Error::custom("NaN is not representable")),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExtReal;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number, \"inf\" or \"-inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtReal, E> {
                Ok(ExtReal(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtReal, E> {
                match v {
                    "inf" => Ok(ExtReal(f64::INFINITY)),
                    "-inf" => Ok(ExtReal(f64::NEG_INFINITY)),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

pub fn bounds_doc(b: &CurvatureInterval<f64>) -> [ExtReal; 2] {
    [ExtReal(b.lo), ExtReal(b.hi)]
}

pub fn parse_bounds(b: &[ExtReal; 2]) -> CliResult<CurvatureInterval<f64>> {
    Ok(CurvatureInterval::new(b[0].0, b[1].0)?)
}

pub fn parse_model(name: &str) -> CliResult<ModelId> {
    ModelId::from_name(name).ok_or_else(|| CliError::Validation(format!("unknown model {name:?}")))
}

/// Serialized [`IntrinsicCurve`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub format_version: u32,
    /// Model used when the curve is displayed.
    pub model: String,
    pub bounds: [ExtReal; 2],
    /// Initial frame, row major.
    pub frame0: [f64; 9],
    pub grid: Vec<f64>,
    pub sigma_hat: Vec<f64>,
    pub kappa_hat: Vec<f64>,
}

impl CurveDocument {
    pub fn from_curve(c: &IntrinsicCurve<f64>, model: ModelId) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            model: model.name().to_string(),
            bounds: bounds_doc(c.bounds()),
            frame0: c.frame0().matrix().to_row_major(),
            grid: c.grid().to_vec(),
            sigma_hat: c.sigma_hat().to_vec(),
            kappa_hat: c.kappa_hat().to_vec(),
        }
    }

    pub fn to_curve(&self) -> CliResult<IntrinsicCurve<f64>> {
        check_version(self.format_version)?;
        parse_model(&self.model)?;
        let bounds = parse_bounds(&self.bounds)?;
        let frame0 = Isometry::from_matrix(Mat3::from_row_major(&self.frame0))?;
        Ok(IntrinsicCurve::new(frame0, self.grid.clone(), self.sigma_hat.clone(), self.kappa_hat.clone(), bounds)?)
    }

    pub fn model_id(&self) -> CliResult<ModelId> {
        parse_model(&self.model)
    }
}

fn check_version(v: u32) -> CliResult<()> {
    if v != FORMAT_VERSION {
        return Err(CliError::Validation(format!("unsupported format_version {v}")));
    }
    Ok(())
}

/// A unit tangent vector in a named model. Points and directions have two
/// chart coordinates, or three ambient coordinates on the hyperboloid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangentDocument {
    pub model: String,
    pub point: Vec<f64>,
    pub direction: Vec<f64>,
}

impl TangentDocument {
    pub fn from_vector(v: &ModelVector<f64>) -> Self {
        let (point, direction) = match v.base {
            ModelPoint::Hyperboloid(p) => {
                let (_, d) = v.to_hyperboloid().unwrap_or((p, Vec3::default()));
                (p.0.to_vec(), d.0.to_vec())
            }
            _ => {
                let z = v.base.chart().unwrap_or_default();
                let d = v.chart_dir().unwrap_or_default();
                (vec![z.re, z.im], vec![d.re, d.im])
            }
        };
        Self { model: v.model().name().to_string(), point, direction }
    }

    /// Parses and checks that the vector has unit length within `tol`; the
    /// result is rescaled to exact unit length.
    pub fn to_vector(&self, tol: f64) -> CliResult<ModelVector<f64>> {
        let model = parse_model(&self.model)?;
        let want = if model == ModelId::Hyperboloid { 3 } else { 2 };
        if self.point.len() != want || self.direction.len() != want {
            return Err(CliError::Validation(format!("{} tangent needs {want} coordinates", self.model)));
        }
        let (p, d) = (&self.point, &self.direction);
        let v = match model {
            ModelId::Hyperboloid => ModelVector::ambient(Vec3::new(p[0], p[1], p[2]), Vec3::new(d[0], d[1], d[2]))?,
            _ => {
                let base = match model {
                    ModelId::Disk => ModelPoint::disk(Complex::new(p[0], p[1]))?,
                    ModelId::HalfPlane => ModelPoint::half_plane(Complex::new(p[0], p[1]))?,
                    _ => ModelPoint::mercator(p[0], p[1])?,
                };
                ModelVector::planar(base, Complex::new(d[0], d[1]))?
            }
        };
        if !v.is_unit(tol) {
            return Err(CliError::Validation(format!("tangent is not a unit vector (norm {})", v.norm())));
        }
        Ok(v.normalized()?)
    }
}

/// A curve space `C(u, v)` with optional turning.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub format_version: u32,
    pub bounds: [ExtReal; 2],
    pub u: TangentDocument,
    pub v: TangentDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub turning: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
}

pub struct Problem {
    pub bounds: CurvatureInterval<f64>,
    pub u: ModelVector<f64>,
    pub v: ModelVector<f64>,
    pub turning: Option<f64>,
    pub budget: Option<usize>,
}

impl ProblemDocument {
    pub fn parse(&self, tol: f64) -> CliResult<Problem> {
        check_version(self.format_version)?;
        Ok(Problem {
            bounds: parse_bounds(&self.bounds)?,
            u: self.u.to_vector(tol)?,
            v: self.v.to_vector(tol)?,
            turning: self.turning,
            budget: self.budget,
        })
    }
}

/// Serialized [`ReductionRecipe`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeDocument {
    pub format_version: u32,
    pub class: String,
    /// Normal of the reflecting geodesic, when the recipe reflects first.
    pub reflection_normal: Option<[f64; 3]>,
    pub rho: f64,
    pub kappa0: ExtReal,
    pub post_isometry: [f64; 9],
    pub source_bounds: [ExtReal; 2],
    pub target_bounds: [ExtReal; 2],
    pub u: TangentDocument,
    pub v: TangentDocument,
    pub ubar: TangentDocument,
    pub vbar: TangentDocument,
}

impl RecipeDocument {
    pub fn from_recipe(r: &ReductionRecipe<f64>) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            class: r.class.name().to_string(),
            reflection_normal: r.pre_reflection.as_ref().map(|f| f.normal().0),
            rho: r.rho,
            kappa0: ExtReal(r.kappa0),
            post_isometry: r.post_isometry.matrix().to_row_major(),
            source_bounds: bounds_doc(&r.source_bounds),
            target_bounds: bounds_doc(&r.target_bounds),
            u: TangentDocument::from_vector(&r.u),
            v: TangentDocument::from_vector(&r.v),
            ubar: TangentDocument::from_vector(&r.ubar),
            vbar: TangentDocument::from_vector(&r.vbar),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub format_version: u32,
    pub class: String,
    pub bounds: [ExtReal; 2],
    pub base_turning: f64,
    pub turning: f64,
    pub index: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inside_region: Option<bool>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_turning: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslationNode {
    pub t: f64,
    pub kappa: f64,
    pub kappa_translated: f64,
    /// Difference between the translated curvature and the closed form.
    pub formula_residual: f64,
    /// Distance between corresponding points minus `|rho|`.
    pub distance_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslateReport {
    pub format_version: u32,
    pub rho: f64,
    pub bounds: [ExtReal; 2],
    pub translated_bounds: [ExtReal; 2],
    pub max_formula_residual: f64,
    pub max_distance_residual: f64,
    pub nodes: Vec<TranslationNode>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractReport {
    pub format_version: u32,
    pub case: String,
    pub bounds: [ExtReal; 2],
    pub s: Vec<f64>,
    pub files: Vec<String>,
    pub band_violations: usize,
    pub min_kappa: f64,
    pub max_kappa: f64,
    pub turning: f64,
    pub max_turning_drift: f64,
    pub max_endpoint_drift: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_mu: Option<Vec<[f64; 2]>>,
}
